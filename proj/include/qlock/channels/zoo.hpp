#pragma once

#include <vector>

#include "qlock/core/channel.hpp"
#include "qlock/core/ensemble.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

/// (1-p) rho + p I/d, Kraus ops from the Weyl basis (zero-weight ops dropped).
KrausChannel depolarizing(int d, double p);

/// (1-p) rho (+) p |e><e|; output dimension d+1 with the flag |e> last.
KrausChannel erasure(int d, double p);

/// (1-p) rho + p diag(rho).
KrausChannel dephasing(int d, double p);

/// rho -> sigma for every input of dimension in_dim.
KrausChannel constant_channel(int in_dim, const DensityOperator& sigma);

/// Qubit amplitude damping with decay probability gamma.
KrausChannel amplitude_damping(double gamma);

/// rho -> sum_y Tr[Gamma_y rho] sigma_y, written with rank-one Kraus ops.
KrausChannel measure_prepare(const Povm& povm, const std::vector<DensityOperator>& states);

/// Random channel from a Haar isometry in_dim -> out_dim * num_kraus.
KrausChannel random_channel(int in_dim, int out_dim, int num_kraus, Rng& rng);

/// Measure-prepare channel with a random rank-one POVM of `outcomes`
/// elements and random pure preparations.
KrausChannel random_measure_prepare(int in_dim, int out_dim, int outcomes, Rng& rng);

/// rho -> sum_x A_x rho A_x^dagger (x) |x><x|. Throws ValidationError when
/// sum A_x^dagger A_x != I.
KrausChannel hadamard_qc_channel(const std::vector<Matrix>& ops);

/// Kraus operators recovered from a Choi matrix (input factor first).
std::vector<Matrix> kraus_from_choi(const Matrix& choi, int in_dim, int out_dim, double cutoff = 1e-12);

/// Relabels the output basis: output index i goes to perm[i].
KrausChannel permute_output(const KrausChannel& ch, const std::vector<int>& perm);

}  // namespace qlock
