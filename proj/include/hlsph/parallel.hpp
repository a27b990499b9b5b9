#pragma once

// Deterministic parallel helpers: seeds derived per index, fixed chunking, ordered reduction.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace hlsph {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// seed for sample `index` of a run seeded with `seed`
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// HLSPH_WORKERS if set and positive, else hardware concurrency
inline unsigned default_workers() {
  if (const char* env = std::getenv("HLSPH_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Run body(chunk_index, begin, end) over [0, count) in fixed-size chunks.
/// Chunk boundaries do not depend on the worker count.
inline void parallel_chunks(std::size_t count, std::size_t chunk, unsigned workers,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(nchunks)));
  auto run = [&](std::size_t c) { body(c, c * chunk, std::min(count, (c + 1) * chunk)); };
  if (workers == 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run(c);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < nchunks; c += workers) run(c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// pairwise summation in a fixed tree order
template <class T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = data[0];
    for (std::size_t i = 1; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace hlsph
