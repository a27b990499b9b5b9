// Gram matrix of P_lambda (|lambda| <= 2) for n = 2 at q0 = 3 on a 64 x 64 grid.
#include <iostream>

#include "hlsph/io/json.hpp"
#include "hlsph/plancherel.hpp"

int main() {
  using namespace hlsph;
  const SpaceConfig cfg = SpaceConfig::make(2, Parity::odd);
  const QuadratureGrid grid = QuadratureGrid::make(cfg, 64, 3.0, default_workers());
  const MatrixReport g = gram_report(cfg, partitions_up_to(2, 2), grid, 1e-10, default_workers());
  std::cout << io::gram_csv(g);
  std::cout << (g.passed ? "diagonal matches W_0/W_lambda" : "mismatch: " + g.detail) << "\n";
}
