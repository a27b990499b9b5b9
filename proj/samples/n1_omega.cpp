// Rank one: compare the general formula with the two closed forms and a Monte Carlo run of the integral.
#include <cstdio>

#include "hlsph/padic.hpp"
#include "hlsph/spherical.hpp"

int main() {
  using namespace hlsph;
  const SpaceConfig cfg = SpaceConfig::make(1, Parity::odd);
  for (int ell = 0; ell <= 3; ++ell) {
    const SphericalValue om = omega_explicit({ell}, cfg);
    std::printf("ell=%d  Q = %s\n", ell, om.poly.str().c_str());
  }
  const double q = 3;
  for (int ell = 0; ell <= 2; ++ell) {
    const double s = 1;
    const MonteCarloResult mc = monte_carlo_omega1(ell, s, 20000, 12, 42, 3, default_workers());
    std::printf("ell=%d s=%.1f  closed %.6f  monte carlo %.6f +- %.6f\n", ell, s, omega_n1_s<double>(ell, q, std::pow(q, s)),
                mc.estimate, mc.stderr_);
  }
}
