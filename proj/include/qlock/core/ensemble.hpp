#pragma once

#include <span>
#include <vector>

#include "qlock/core/channel.hpp"
#include "qlock/core/density.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// Labelled states {p_x, rho_x} of a common dimension.
class Ensemble {
 public:
  /// Probabilities must be nonnegative and sum to one within 1e-12 (a
  /// relative renormalization is applied after the check).
  Ensemble(std::vector<double> probs, std::vector<DensityOperator> states);

  /// Pure-state ensemble from state vectors (normalized on entry).
  static Ensemble from_pure(std::vector<double> probs, std::span<const Vector> vectors);

  /// Uniform prior over the given states.
  static Ensemble uniform(std::vector<DensityOperator> states);

  int size() const { return static_cast<int>(probs_.size()); }
  int dim() const { return states_.front().dim(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<DensityOperator>& states() const { return states_; }
  const DensityOperator& state(int x) const { return states_[x]; }
  double prob(int x) const { return probs_[x]; }

  /// Sum_x p_x rho_x.
  DensityOperator average() const;

  /// Pushes every state through a channel.
  Ensemble through(const KrausChannel& ch) const;

 private:
  std::vector<double> probs_;
  std::vector<DensityOperator> states_;
};

/// Measurement operators on one space. Elements PSD within 1e-10, summing to
/// the identity within 1e-9.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements);

  /// Rank-one POVM from the rows of an isometry W (K x d, W^dagger W = I):
  /// element y is w_y w_y^dagger with w_y = row(y)^dagger.
  static Povm from_isometry_rows(const Matrix& w);

  static Povm standard_basis(int dim);
  static Povm fourier_basis(int dim);
  static Povm trivial(int dim);

  /// Projective measurement in the columns of a unitary.
  static Povm from_unitary_columns(const Matrix& u);

  int size() const { return static_cast<int>(elements_.size()); }
  int dim() const { return static_cast<int>(elements_.front().rows()); }
  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& element(int y) const { return elements_[y]; }

  /// Tr[Gamma_y rho] for every y, clipped at zero.
  std::vector<double> probabilities(const Matrix& rho) const;

  /// Whether every element has rank one (numerical rank at 1e-9 relative).
  bool is_rank_one(double tol = 1e-9) const;

 private:
  std::vector<Matrix> elements_;
};

/// P(x, y) = p_x Tr[Gamma_y rho_x].
RealMatrix joint_distribution(const Ensemble& ens, const Povm& povm);

}  // namespace qlock
