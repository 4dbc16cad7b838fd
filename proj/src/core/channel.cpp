#include "qlock/core/channel.hpp"

#include <limits>
#include <sstream>

#include "qlock/core/linalg.hpp"

namespace qlock {

double completeness_error(std::span<const Matrix> ops) {
  if (ops.empty()) return std::numeric_limits<double>::infinity();
  Matrix s = Matrix::Zero(ops.front().cols(), ops.front().cols());
  for (const auto& a : ops) s += a.adjoint() * a;
  return (s - Matrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  out_dim_ = static_cast<int>(ops_.front().rows());
  in_dim_ = static_cast<int>(ops_.front().cols());
  if (in_dim_ < 1 || out_dim_ < 1) throw ValidationError("Kraus operators must be nonempty");
  if (in_dim_ > kMaxDim || out_dim_ > kMaxDim) throw CapabilityError("channel dimension exceeds supported maximum");
  for (const auto& a : ops_) {
    if (a.rows() != out_dim_ || a.cols() != in_dim_) throw DimensionError("Kraus operators have different shapes");
  }
  const double err = completeness_error(ops_);
  if (err > tol::kKrausCompleteness) {
    std::ostringstream os;
    os << "Kraus operators not trace preserving (deviation " << err << ")";
    throw ValidationError(os.str());
  }
}

Matrix KrausChannel::apply(const Matrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_) throw DimensionError("channel input has wrong dimension");
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& a : ops_) out.noalias() += a * x * a.adjoint();
  return out;
}

DensityOperator KrausChannel::apply(const DensityOperator& rho) const {
  return DensityOperator::from_matrix(hermitian_part(apply(rho.matrix())));
}

Matrix KrausChannel::adjoint_apply(const Matrix& y) const {
  if (y.rows() != out_dim_ || y.cols() != out_dim_) throw DimensionError("channel output has wrong dimension");
  Matrix out = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& a : ops_) out.noalias() += a.adjoint() * y * a;
  return out;
}

Matrix KrausChannel::choi() const {
  Matrix c = Matrix::Zero(in_dim_ * out_dim_, in_dim_ * out_dim_);
  for (int i = 0; i < in_dim_; ++i) {
    for (int j = 0; j < in_dim_; ++j) {
      Matrix block = Matrix::Zero(out_dim_, out_dim_);
      for (const auto& a : ops_) block.noalias() += a.col(i) * a.col(j).adjoint();
      c.block(i * out_dim_, j * out_dim_, out_dim_, out_dim_) = block;
    }
  }
  return c;
}

KrausChannel identity_channel(int dim) { return KrausChannel({Matrix::Identity(dim, dim)}); }

IsometricExtension isometric_extension(const KrausChannel& ch) {
  const int env = ch.num_kraus();
  const int out = ch.out_dim();
  Matrix v = Matrix::Zero(out * env, ch.in_dim());
  for (int i = 0; i < env; ++i) {
    const Matrix& a = ch.kraus_ops()[i];
    for (int b = 0; b < out; ++b) v.row(b * env + i) = a.row(b);
  }
  return {std::move(v), out, env};
}

KrausChannel complementary_channel(const KrausChannel& ch) {
  const int env = ch.num_kraus();
  std::vector<Matrix> ops;
  ops.reserve(ch.out_dim());
  for (int b = 0; b < ch.out_dim(); ++b) {
    Matrix bb(env, ch.in_dim());
    for (int i = 0; i < env; ++i) bb.row(i) = ch.kraus_ops()[i].row(b);
    ops.push_back(std::move(bb));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel channel_from_isometry(const Matrix& v, int out_dim, int env_dim) {
  if (v.rows() != static_cast<Eigen::Index>(out_dim) * env_dim) throw DimensionError("isometry rows do not factor");
  std::vector<Matrix> ops;
  for (int e = 0; e < env_dim; ++e) {
    Matrix a(out_dim, v.cols());
    for (int b = 0; b < out_dim; ++b) a.row(b) = v.row(b * env_dim + e);
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel env_channel_from_isometry(const Matrix& v, int out_dim, int env_dim) {
  if (v.rows() != static_cast<Eigen::Index>(out_dim) * env_dim) throw DimensionError("isometry rows do not factor");
  std::vector<Matrix> ops;
  for (int b = 0; b < out_dim; ++b) ops.push_back(v.middleRows(static_cast<Eigen::Index>(b) * env_dim, env_dim));
  return KrausChannel(std::move(ops));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Matrix> ops;
  ops.reserve(static_cast<size_t>(a.num_kraus()) * b.num_kraus());
  for (const auto& x : a.kraus_ops()) {
    for (const auto& y : b.kraus_ops()) ops.push_back(kron(x, y));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel tensor_power(const KrausChannel& ch, int n) {
  if (n < 1) throw ValidationError("tensor power needs n >= 1");
  KrausChannel out = ch;
  for (int i = 1; i < n; ++i) out = tensor(out, ch);
  return out;
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.in_dim() != first.out_dim()) throw DimensionError("composed channels do not chain");
  std::vector<Matrix> ops;
  for (const auto& x : second.kraus_ops()) {
    for (const auto& y : first.kraus_ops()) ops.push_back(x * y);
  }
  return KrausChannel(std::move(ops));
}

}  // namespace qlock
