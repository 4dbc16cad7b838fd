#include "qlock/channels/wiretap.hpp"

#include <algorithm>
#include <cmath>

#include "qlock/accinfo/accinfo.hpp"
#include "qlock/channels/zoo.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"

namespace qlock {

WiretapChannel WiretapChannel::from_isometry(const Matrix& v, int b_dim, int e_dim, int f_dim) {
  if (b_dim < 1 || e_dim < 1 || f_dim < 1 || v.rows() != static_cast<Eigen::Index>(b_dim) * e_dim * f_dim) {
    throw DimensionError("isometry rows must equal b_dim * e_dim * f_dim");
  }
  if (isometry_error(v) > tol::kUnitary) throw ValidationError("wiretap map is not an isometry");
  WiretapChannel w;
  w.v_ = v;
  w.b_dim_ = b_dim;
  w.e_dim_ = e_dim;
  w.f_dim_ = f_dim;
  return w;
}

WiretapChannel WiretapChannel::degraded(const std::vector<std::vector<Matrix>>& instrument,
                                        const std::vector<DensityOperator>& taus) {
  if (instrument.empty() || instrument.size() != taus.size()) {
    throw DimensionError("need one eavesdropper state per instrument outcome");
  }
  const int ny = static_cast<int>(instrument.size());
  int nj = 0;
  std::vector<Matrix> all;
  for (const auto& ops : instrument) {
    if (ops.empty()) throw ValidationError("instrument outcome without Kraus operators");
    nj = std::max(nj, static_cast<int>(ops.size()));
    all.insert(all.end(), ops.begin(), ops.end());
  }
  const KrausChannel flat(all);  // validates shapes and completeness
  const int din = flat.in_dim();
  const int dout = flat.out_dim();
  const int de = taus.front().dim();
  for (const auto& t : taus) {
    if (t.dim() != de) throw DimensionError("eavesdropper states differ in dimension");
  }
  // Purify tau_y on E (x) F1 with F1 of dimension de.
  std::vector<Vector> purif;
  for (const auto& t : taus) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix());
    Vector p = Vector::Zero(de * de);
    for (int k = 0; k < de; ++k) {
      const double lam = std::max(es.eigenvalues()(k), 0.0);
      p += std::sqrt(lam) * kron(Vector(es.eigenvectors().col(k)), Vector(Vector::Unit(de, k)));
    }
    purif.push_back(p);
  }
  const int db = dout * ny;
  const int df = de * ny * nj;
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(db) * de * df, din);
  for (int y = 0; y < ny; ++y) {
    for (int j = 0; j < static_cast<int>(instrument[y].size()); ++j) {
      const Matrix& k = instrument[y][j];
      for (int b = 0; b < dout; ++b) {
        const int bb = b * ny + y;
        for (int e = 0; e < de; ++e) {
          for (int f1 = 0; f1 < de; ++f1) {
            const cplx amp = purif[y](e * de + f1);
            if (amp == cplx(0.0)) continue;
            const int f = (f1 * ny + y) * nj + j;
            v.row((static_cast<Eigen::Index>(bb) * de + e) * df + f) += amp * k.row(b);
          }
        }
      }
    }
  }
  WiretapChannel w = from_isometry(v, db, de, df);
  // Degrading map: read the flag, discard the system, prepare tau_y.
  std::vector<Matrix> dops;
  for (int y = 0; y < ny; ++y) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(taus[y].matrix());
    for (int k = 0; k < de; ++k) {
      const double lam = std::max(es.eigenvalues()(k), 0.0);
      if (lam <= 0.0) continue;
      for (int b = 0; b < dout; ++b) {
        Matrix op = Matrix::Zero(de, db);
        op.col(b * ny + y) = std::sqrt(lam) * es.eigenvectors().col(k);
        dops.push_back(op);
      }
    }
  }
  w.degrading_ = KrausChannel(std::move(dops));
  return w;
}

KrausChannel WiretapChannel::to_b() const {
  const int ef = e_dim_ * f_dim_;
  std::vector<Matrix> ops;
  for (int r = 0; r < ef; ++r) {
    Matrix k(b_dim_, in_dim());
    for (int b = 0; b < b_dim_; ++b) k.row(b) = v_.row(static_cast<Eigen::Index>(b) * ef + r);
    if (k.norm() > 0.0) ops.push_back(k);
  }
  return KrausChannel(std::move(ops));
}

KrausChannel WiretapChannel::to_e() const {
  std::vector<Matrix> ops;
  for (int b = 0; b < b_dim_; ++b) {
    for (int f = 0; f < f_dim_; ++f) {
      Matrix k(e_dim_, in_dim());
      for (int e = 0; e < e_dim_; ++e) k.row(e) = v_.row((static_cast<Eigen::Index>(b) * e_dim_ + e) * f_dim_ + f);
      if (k.norm() > 0.0) ops.push_back(k);
    }
  }
  return KrausChannel(std::move(ops));
}

double private_information(const WiretapChannel& wt, const Ensemble& ens) {
  return holevo_chi(ens.through(wt.to_b())) - holevo_chi(ens.through(wt.to_e()));
}

namespace {

// P(p) = chi_B(p) - chi_E(p) for fixed output states and a variable prior.
class PrivateObjective {
 public:
  PrivateObjective(const Ensemble& ens, const KrausChannel& b, const KrausChannel& e) {
    for (const auto& s : ens.states()) {
      const Matrix rb = b.apply(s.matrix());
      const Matrix re = e.apply(s.matrix());
      b_.push_back(rb);
      e_.push_back(re);
      hb_.push_back(von_neumann_entropy(rb));
      he_.push_back(von_neumann_entropy(re));
    }
  }

  int size() const { return static_cast<int>(b_.size()); }

  double value(const std::vector<double>& p) const {
    Matrix ab = Matrix::Zero(b_[0].rows(), b_[0].cols());
    Matrix ae = Matrix::Zero(e_[0].rows(), e_[0].cols());
    double cond = 0.0;
    for (int x = 0; x < size(); ++x) {
      if (p[x] <= 0.0) continue;
      ab += p[x] * b_[x];
      ae += p[x] * e_[x];
      cond += p[x] * (hb_[x] - he_[x]);
    }
    return von_neumann_entropy(ab) - von_neumann_entropy(ae) - cond;
  }

  // dP/dp_x up to a common constant: D(rho_x^B||avg^B) - D(rho_x^E||avg^E).
  std::vector<double> gradient(const std::vector<double>& p) const {
    Matrix ab = Matrix::Zero(b_[0].rows(), b_[0].cols());
    Matrix ae = Matrix::Zero(e_[0].rows(), e_[0].cols());
    for (int x = 0; x < size(); ++x) {
      ab += p[x] * b_[x];
      ae += p[x] * e_[x];
    }
    const auto lg = [](double v) { return v > 1e-14 ? std::log2(v) : std::log2(1e-14); };
    const Matrix lab = hermitian_function(ab, lg);
    const Matrix lae = hermitian_function(ae, lg);
    std::vector<double> g(size());
    for (int x = 0; x < size(); ++x) {
      const double db = -hb_[x] - (b_[x] * lab).trace().real();
      const double de = -he_[x] - (e_[x] * lae).trace().real();
      g[x] = db - de;
    }
    return g;
  }

 private:
  std::vector<Matrix> b_, e_;
  std::vector<double> hb_, he_;
};

// Exponentiated-gradient ascent on the simplex; only improving steps are kept.
std::pair<double, std::vector<double>> mirror_ascent(const PrivateObjective& obj, std::vector<double> p,
                                                     int iterations) {
  double f = obj.value(p);
  double eta = 1.0;
  for (int it = 0; it < iterations && eta > 1e-8; ++it) {
    const std::vector<double> g = obj.gradient(p);
    std::vector<double> q(p.size());
    double gmax = *std::max_element(g.begin(), g.end());
    double z = 0.0;
    for (size_t x = 0; x < p.size(); ++x) {
      q[x] = p[x] * std::exp(eta * (g[x] - gmax) * std::log(2.0));
      z += q[x];
    }
    for (double& v : q) v /= z;
    const double fq = obj.value(q);
    if (fq > f) {
      const double gain = fq - f;
      p = std::move(q);
      f = fq;
      eta = std::min(eta * 1.5, 64.0);
      if (gain < 1e-13) break;
    } else {
      eta *= 0.5;
    }
  }
  return {f, p};
}

std::pair<double, std::vector<double>> best_prior(const PrivateObjective& obj, int samples, Rng& rng) {
  const int n = obj.size();
  std::vector<double> uniform(n, 1.0 / n);
  auto best = mirror_ascent(obj, uniform, 500);
  for (int s = 0; s < samples; ++s) {
    auto r = mirror_ascent(obj, random_probability(n, rng), 200);
    if (r.first > best.first) best = r;
  }
  for (int x = 0; x < n; ++x) {
    std::vector<double> delta(n, 0.0);
    delta[x] = 1.0;
    const double v = obj.value(delta);
    if (v > best.first) best = {v, delta};
  }
  return best;
}

void require_pure(const Ensemble& ens) {
  for (const auto& s : ens.states()) {
    if (std::abs(s.purity() - 1.0) > 1e-9) throw ValidationError("additivity check needs pure ensemble states");
  }
}

}  // namespace

AdditivityReport degraded_product_additivity_check(const WiretapChannel& wt1, const WiretapChannel& wt2,
                                                   const Ensemble& ens1, const Ensemble& ens2,
                                                   int joint_search_budget, std::uint64_t seed) {
  if (!wt1.is_constructively_degraded() || !wt2.is_constructively_degraded()) {
    throw StructureError("additivity check requires wiretaps built with an explicit degrading map");
  }
  if (joint_search_budget <= 0) throw ValidationError("joint search budget must be positive");
  require_pure(ens1);
  require_pure(ens2);
  if (ens1.dim() != wt1.in_dim() || ens2.dim() != wt2.in_dim()) throw DimensionError("ensemble does not fit wiretap input");

  Rng rng = Rng::stream(seed, 11);
  const PrivateObjective o1(ens1, wt1.to_b(), wt1.to_e());
  const PrivateObjective o2(ens2, wt2.to_b(), wt2.to_e());
  const auto [p1, q1] = best_prior(o1, 8, rng);
  const auto [p2, q2] = best_prior(o2, 8, rng);

  std::vector<DensityOperator> joint_states;
  for (const auto& a : ens1.states()) {
    for (const auto& b : ens2.states()) joint_states.push_back(tensor(a, b));
  }
  const Ensemble joint = Ensemble::uniform(std::move(joint_states));
  const PrivateObjective oj(joint, tensor(wt1.to_b(), wt2.to_b()), tensor(wt1.to_e(), wt2.to_e()));
  const int n = oj.size();

  std::vector<double> product(n);
  for (int a = 0; a < o1.size(); ++a) {
    for (int b = 0; b < o2.size(); ++b) product[a * o2.size() + b] = q1[a] * q2[b];
  }
  double best = oj.value(product);
  int tried = 1;
  for (int s = 0; s < joint_search_budget; ++s, ++tried) best = std::max(best, oj.value(random_probability(n, rng)));
  best = std::max(best, mirror_ascent(oj, product, 300).first);
  best = std::max(best, mirror_ascent(oj, std::vector<double>(n, 1.0 / n), 300).first);
  tried += 2;

  AdditivityReport r;
  r.p1_max = p1;
  r.p2_max = p2;
  r.p_joint_max = best;
  r.slack = best - (p1 + p2);
  r.priors_tried = tried;
  return r;
}

std::vector<std::string> example_wiretap_names() {
  return {"constant-e", "hadamard-flag", "weak-measurement", "amplitude-damping", "random-instrument"};
}

WiretapChannel example_wiretap(const std::string& name, std::uint64_t seed) {
  const Matrix i2 = Matrix::Identity(2, 2);
  const auto ket = [](int k) { return DensityOperator::basis_state(2, k); };
  if (name == "constant-e") {
    return WiretapChannel::degraded({{i2}}, {DensityOperator::maximally_mixed(2)});
  }
  if (name == "hadamard-flag") {
    // Dephasing-style instrument {sqrt(q) I, sqrt(1-q) Z}; E keeps a copy of which.
    const double q = 0.7;
    Matrix z = Matrix::Identity(2, 2);
    z(1, 1) = -1.0;
    return WiretapChannel::degraded({{std::sqrt(q) * i2}, {std::sqrt(1.0 - q) * z}}, {ket(0), ket(1)});
  }
  if (name == "weak-measurement") {
    // Weak Z measurement; E receives the outcome through a binary symmetric flip.
    const double s = 0.8;
    const double eps = 0.1;
    Matrix k0 = Matrix::Zero(2, 2);
    Matrix k1 = Matrix::Zero(2, 2);
    k0(0, 0) = std::sqrt(s);
    k0(1, 1) = std::sqrt(1.0 - s);
    k1(0, 0) = std::sqrt(1.0 - s);
    k1(1, 1) = std::sqrt(s);
    const double p0[2] = {1.0 - eps, eps};
    const double p1[2] = {eps, 1.0 - eps};
    return WiretapChannel::degraded({{k0}, {k1}}, {DensityOperator::diagonal(p0), DensityOperator::diagonal(p1)});
  }
  if (name == "amplitude-damping") {
    const KrausChannel ad = amplitude_damping(0.3);
    Vector plus(2);
    plus << 1.0, 1.0;
    return WiretapChannel::degraded({ad.kraus_ops()}, {DensityOperator::pure(plus)});
  }
  if (name == "random-instrument") {
    Rng rng = Rng::stream(seed, 21);
    const Matrix v = random_isometry(4, 2, rng);
    std::vector<std::vector<Matrix>> inst(2);
    inst[0].push_back(v.topRows(2));
    inst[1].push_back(v.bottomRows(2));
    return WiretapChannel::degraded(inst, {random_density(2, rng), random_density(2, rng)});
  }
  throw ValidationError("unknown wiretap example: " + name);
}

}  // namespace qlock
