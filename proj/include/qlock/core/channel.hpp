#pragma once

#include <span>
#include <vector>

#include "qlock/core/density.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// V : A -> B (x) E with V^dagger V = I. Row index is b * env_dim + e.
struct IsometricExtension {
  Matrix isometry;
  int out_dim = 0;
  int env_dim = 0;
};

/// Completely positive trace-preserving map stored as Kraus operators.
class KrausChannel {
 public:
  /// Validates completeness within 1e-10. All operators must share a shape.
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  int num_kraus() const { return static_cast<int>(ops_.size()); }
  const std::vector<Matrix>& kraus_ops() const { return ops_; }

  /// Sum_i A_i X A_i^dagger on any in_dim x in_dim matrix.
  Matrix apply(const Matrix& x) const;
  DensityOperator apply(const DensityOperator& rho) const;

  /// Heisenberg picture: Sum_i A_i^dagger Y A_i.
  Matrix adjoint_apply(const Matrix& y) const;

  /// Sum_{ij} |i><j| (x) N(|i><j|), trace = in_dim, input factor first.
  Matrix choi() const;

 private:
  std::vector<Matrix> ops_;
  int in_dim_ = 0;
  int out_dim_ = 0;
};

KrausChannel identity_channel(int dim);

IsometricExtension isometric_extension(const KrausChannel& ch);

/// The map rho -> Tr_B[V rho V^dagger], Kraus ops B_b = Sum_i |i><b| A_i.
KrausChannel complementary_channel(const KrausChannel& ch);

/// Channel to the first factor of an isometry A -> B (x) E.
KrausChannel channel_from_isometry(const Matrix& v, int out_dim, int env_dim);

/// Channel to the second factor.
KrausChannel env_channel_from_isometry(const Matrix& v, int out_dim, int env_dim);

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
KrausChannel tensor_power(const KrausChannel& ch, int n);

/// `second` after `first`.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// Largest entrywise deviation of Sum A^dagger A from the identity.
double completeness_error(std::span<const Matrix> ops);

}  // namespace qlock
