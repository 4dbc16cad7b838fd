#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qlock/core/density.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// Name recorded in reports so runs can be reproduced elsewhere.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64-streams";

/// SplitMix64 mixing of (seed, stream) into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Portable random source. Only the raw mt19937_64 output is used; all
/// distributions are implemented here so sequences match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream `stream` of a base seed.
  static Rng stream(std::uint64_t seed, std::uint64_t stream) { return Rng(derive_seed(seed, stream)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  double normal();
  cplx complex_normal();  // E|z|^2 = 1
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix haar_unitary(int dim, Rng& rng);
Matrix haar_unitary(int dim, std::uint64_t seed);

/// First `cols` columns of a Haar unitary on `rows` dimensions.
Matrix random_isometry(int rows, int cols, Rng& rng);

/// Haar-random pure state vector.
Vector random_pure_vector(int dim, Rng& rng);
DensityOperator random_pure_state(int dim, Rng& rng);

/// G G^dagger / Tr with G a dim x rank Ginibre matrix (rank <= 0 means full).
DensityOperator random_density(int dim, Rng& rng, int rank = 0);

/// Uniform point on the probability simplex (flat Dirichlet).
std::vector<double> random_probability(int n, Rng& rng);

}  // namespace qlock
