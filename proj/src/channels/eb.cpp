#include "qlock/channels/eb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/channels/zoo.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"

namespace qlock {

std::string to_string(EbKind k) {
  switch (k) {
    case EbKind::EntanglementBreaking:
      return "EntanglementBreaking";
    case EbKind::NotEB:
      return "NotEB";
    case EbKind::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

namespace {

bool rank_one(const Matrix& a) {
  if (a.norm() == 0.0) return true;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  return s.size() < 2 || s(1) <= 1e-9 * s(0);
}

bool all_rank_one(const std::vector<Matrix>& ops) {
  for (const auto& a : ops) {
    if (!rank_one(a)) return false;
  }
  return true;
}

}  // namespace

EbVerdict is_entanglement_breaking(const KrausChannel& ch) {
  const int dims[2] = {ch.in_dim(), ch.out_dim()};
  const int which[1] = {1};
  EbVerdict v;
  v.min_pt_eigenvalue = hermitian_eigenvalues(partial_transpose(ch.choi(), dims, which))(0);
  const bool npt = v.min_pt_eigenvalue < -1e-9;
  if (npt) {
    v.verdict = EbKind::NotEB;
    v.witness = "npt";
  } else if (ch.in_dim() * ch.out_dim() <= 6) {
    v.verdict = EbKind::EntanglementBreaking;
    v.witness = "ppt-decisive";
  } else if (all_rank_one(ch.kraus_ops())) {
    v.verdict = EbKind::EntanglementBreaking;
    v.witness = "rank-one-kraus";
  } else {
    v.verdict = EbKind::Undecided;
    v.witness = "ppt-undecided";
  }
  return v;
}

KrausChannel qubit_depolarizing_eb_form(double p) {
  if (!(p >= 2.0 / 3.0 - 1e-12 && p <= 1.0)) throw StructureError("qubit depolarizing is entanglement breaking only for p >= 2/3");
  const double t = std::clamp(3.0 * (1.0 - p), 0.0, 1.0);
  std::vector<Matrix> ops;
  if (t > 0.0) {
    // Tetrahedron on the Bloch sphere: one state at the north pole, three at
    // polar angle acos(-1/3) spaced by 2 pi / 3.
    const double th = std::acos(-1.0 / 3.0);
    std::vector<Vector> psi;
    Vector n(2);
    n << 1.0, 0.0;
    psi.push_back(n);
    for (int j = 0; j < 3; ++j) {
      Vector v(2);
      v << std::cos(th / 2.0), std::polar(std::sin(th / 2.0), 2.0 * std::numbers::pi * j / 3.0);
      psi.push_back(v);
    }
    for (const auto& v : psi) ops.push_back(std::sqrt(t / 2.0) * v * v.adjoint());
  }
  if (t < 1.0) {
    const double w = std::sqrt((1.0 - t) / 2.0);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) ops.push_back(w * unit_matrix(2, j, i));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel rank_one_kraus_form(const KrausChannel& ch) {
  if (all_rank_one(ch.kraus_ops())) return ch;
  const Matrix choi = ch.choi();
  auto canon = kraus_from_choi(choi, ch.in_dim(), ch.out_dim());
  if (all_rank_one(canon)) return KrausChannel(std::move(canon));
  if (ch.in_dim() == 2 && ch.out_dim() == 2) {
    // Depolarizing Choi: (1-p) * 2|Phi><Phi| + p I/2, with |Phi> = (|00>+|11>)/sqrt2.
    const double p = 1.0 - (choi(0, 3).real());
    if (p >= 2.0 / 3.0 - 1e-12 && p <= 1.0 + 1e-12) {
      const KrausChannel form = qubit_depolarizing_eb_form(std::min(p, 1.0));
      if ((form.choi() - choi).cwiseAbs().maxCoeff() < 1e-10) return form;
    }
  }
  throw StructureError("no rank-one Kraus representation found");
}

EbCertificate eb_zero_capacity_certificate(const KrausChannel& ch, const Ensemble& ens) {
  if (ens.dim() != ch.in_dim()) throw DimensionError("ensemble does not match channel input");
  const KrausChannel form = rank_one_kraus_form(ch);
  // Environment of the rank-one form: its diagonal in {|y>} is the outcome
  // distribution of the measurement {|psi_y><psi_y|}.
  const KrausChannel env = complementary_channel(form);
  RealMatrix joint(ens.size(), env.out_dim());
  for (int x = 0; x < ens.size(); ++x) {
    const Matrix e = env.apply(ens.state(x).matrix());
    for (int y = 0; y < env.out_dim(); ++y) joint(x, y) = ens.prob(x) * std::max(0.0, e(y, y).real());
  }
  EbCertificate c;
  c.num_outcomes = env.out_dim();
  c.i_x_yenv = mutual_information(joint / joint.sum());
  c.i_xb = holevo_chi(ens.through(ch));
  c.slack = c.i_xb - c.i_x_yenv;
  return c;
}

}  // namespace qlock
