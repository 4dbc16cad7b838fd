#pragma once

#include <span>

#include "qlock/core/density.hpp"
#include "qlock/core/types.hpp"

namespace qlock {

/// Shannon entropy in bits; entries at or below 1e-14 contribute nothing.
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(const RealVector& probs);

/// h2(p). Throws ValidationError outside [0,1].
double binary_entropy(double p);

/// Entropy of a clipped spectrum.
double spectral_entropy(const RealVector& eigenvalues);

double von_neumann_entropy(const DensityOperator& rho);

/// Validates `m` as a density operator first.
double von_neumann_entropy(const Matrix& m);

/// H(A) + H(B) - H(AB) for a state on A (dim_a) tensor B (dim_b).
double mutual_information(const DensityOperator& joint, int dim_a, int dim_b);

/// Classical mutual information of a joint distribution P(x, y) given as a
/// nonnegative matrix summing to one.
double mutual_information(const RealMatrix& joint);

/// Sum of singular values of rho - sigma, no factor 1/2.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double trace_distance(const Matrix& a, const Matrix& b);

/// D(rho || sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Sum_x |p_x - q_x|.
double variational_distance(std::span<const double> p, std::span<const double> q);

}  // namespace qlock
