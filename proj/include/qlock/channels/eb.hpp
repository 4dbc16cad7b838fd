#pragma once

#include <string>
#include <vector>

#include "qlock/core/channel.hpp"
#include "qlock/core/ensemble.hpp"

namespace qlock {

enum class EbKind { EntanglementBreaking, NotEB, Undecided };

std::string to_string(EbKind k);

struct EbVerdict {
  EbKind verdict = EbKind::Undecided;
  /// Smallest eigenvalue of the partially transposed Choi matrix.
  double min_pt_eigenvalue = 0.0;
  /// "ppt-decisive", "npt", "rank-one-kraus", or "ppt-undecided".
  std::string witness;
};

/// PPT test on the Choi matrix. Decisive when in_dim * out_dim <= 6; above
/// that NPT gives NotEB and PPT gives Undecided unless the channel already has
/// a rank-one Kraus representation.
EbVerdict is_entanglement_breaking(const KrausChannel& ch);

/// Qubit depolarizing channel, p >= 2/3, as a mixture of the tetrahedral
/// measure-prepare channel and the constant I/2 channel; all Kraus ops rank one.
KrausChannel qubit_depolarizing_eb_form(double p);

/// A rank-one Kraus representation of the same channel, if one can be found
/// (the given ops, the canonical Choi ops, or the qubit depolarizing form).
/// Throws StructureError otherwise.
KrausChannel rank_one_kraus_form(const KrausChannel& ch);

struct EbCertificate {
  double slack = 0.0;       // I(X;B) - I(X;Y_env)
  double i_xb = 0.0;        // Holevo information of the channel outputs
  double i_x_yenv = 0.0;    // environment's von Neumann measurement {|y>}
  int num_outcomes = 0;
};

/// Builds the environment's measurement {|y>} and preparations |phi_y> from a
/// rank-one Kraus form K_y = |phi_y><psi_y| and returns the data-processing
/// slack, which must be <= 0 up to numerics.
EbCertificate eb_zero_capacity_certificate(const KrausChannel& ch, const Ensemble& ens);

}  // namespace qlock
