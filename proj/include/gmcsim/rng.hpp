#pragma once

#include <cstdint>
#include <span>

namespace gmc {

// xoshiro256++ seeded via splitmix64. Each (seed, stream) pair yields an
// independent deterministic stream, so replicates can run concurrently and
// still reproduce the sequential results bit for bit.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform on (0, 1].
  double next_unit();

 private:
  std::uint64_t s_[4];
};

// Standard normals via Box-Muller on top of Rng; portable and exactly
// reproducible across platforms (no libm distribution state).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  double next();
  void fill(std::span<double> out);

 private:
  Rng rng_;
  double spare_{0.0};
  bool has_spare_{false};
};

// 64-bit FNV-1a, used for config digests and seed/stream mixing.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64(std::uint64_t h, const void* data, std::size_t n);

}  // namespace gmc
