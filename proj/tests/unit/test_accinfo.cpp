#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles/oracles.hpp"
#include "qlock/accinfo/accinfo.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"

using namespace qlock;

namespace {

Ensemble basis_ensemble(int d) {
  std::vector<DensityOperator> s;
  for (int i = 0; i < d; ++i) s.push_back(DensityOperator::basis_state(d, i));
  return Ensemble::uniform(std::move(s));
}

// Equiprobable |0> and cos(t)|0> + sin(t)|1>.
Ensemble two_state(double overlap, double p0 = 0.5) {
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << overlap, std::sqrt(1.0 - overlap * overlap);
  const Vector v[2] = {a, b};
  return Ensemble::from_pure({p0, 1.0 - p0}, v);
}

double oracle_for(double overlap, double p0 = 0.5) {
  const oracle::c64 a[2] = {1.0, 0.0};
  const oracle::c64 b[2] = {overlap, std::sqrt(1.0 - overlap * overlap)};
  return oracle::two_state_projective_oracle(a, b, p0);
}

// Key-averaged ensemble rho_m = (1/K) sum_k U_k|m><m|U_k^dagger.
Ensemble locked_ensemble(const std::vector<Matrix>& keys) {
  const int d = static_cast<int>(keys.front().rows());
  std::vector<DensityOperator> s;
  for (int m = 0; m < d; ++m) {
    Matrix r = Matrix::Zero(d, d);
    for (const auto& u : keys) r += u.col(m) * u.col(m).adjoint();
    r /= static_cast<double>(keys.size());
    s.push_back(DensityOperator::from_matrix(hermitian_part(r)));
  }
  return Ensemble::uniform(std::move(s));
}

// Ensemble labelled by (m, k) with states U_k|m>.
Ensemble mk_ensemble(const std::vector<Matrix>& keys) {
  const int d = static_cast<int>(keys.front().rows());
  std::vector<DensityOperator> s;
  for (int m = 0; m < d; ++m) {
    for (const auto& u : keys) s.push_back(DensityOperator::pure(u.col(m)));
  }
  return Ensemble::uniform(std::move(s));
}

std::vector<Matrix> haar_keys(int d, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> keys;
  for (int i = 0; i < k; ++i) keys.push_back(haar_unitary(d, rng));
  return keys;
}

}  // namespace

TEST(AccInfoOfMeasurement, Examples) {
  EXPECT_NEAR(acc_info_of_measurement(basis_ensemble(8), Povm::standard_basis(8)), 3.0, 1e-12);
  EXPECT_NEAR(acc_info_of_measurement(two_state(0.3), Povm::trivial(2)), 0.0, 1e-15);
  EXPECT_THROW(acc_info_of_measurement(basis_ensemble(3), Povm::trivial(2)), DimensionError);
}

TEST(AccInfoOfMeasurement, HelstromAngleMatchesGridOracle) {
  // States at angles 0 and pi/4; the Helstrom basis is symmetric about pi/8.
  const double c = 1.0 / std::numbers::sqrt2;
  const double t = std::numbers::pi / 8.0 - std::numbers::pi / 4.0;
  Matrix u(2, 2);
  u << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const double v = acc_info_of_measurement(two_state(c), Povm::from_unitary_columns(u));
  EXPECT_NEAR(v, oracle_for(c), 1e-9);
  EXPECT_NEAR(v, oracle::two_state_equiprobable_closed_form(c), 1e-9);
  // Frozen oracle output.
  EXPECT_NEAR(v, 0.39912396330651, 1e-10);
}

TEST(AccInfoOfMeasurement, CoarseGrainingNeverHelps) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    std::vector<DensityOperator> s;
    for (int i = 0; i < 4; ++i) s.push_back(random_density(3, rng, 1 + i % 3));
    const Ensemble ens(random_probability(4, rng), s);
    const Matrix w = random_isometry(6, 3, rng);
    const auto fine = Povm::from_isometry_rows(w);
    std::vector<Matrix> merged = {fine.element(0) + fine.element(1) + fine.element(2), fine.element(3),
                                  fine.element(4) + fine.element(5)};
    EXPECT_LE(acc_info_of_measurement(ens, Povm(merged)), acc_info_of_measurement(ens, fine) + 1e-12);
  }
}

TEST(HolevoChi, Examples) {
  Rng rng(3);
  const auto r = random_density(3, rng);
  EXPECT_NEAR(holevo_chi(Ensemble({0.4, 0.6}, {r, r})), 0.0, 1e-12);
  EXPECT_NEAR(holevo_chi(basis_ensemble(5)), std::log2(5.0), 1e-12);
  // BB84: |0>, |1>, |+>, |->; average I/2, pure states.
  Vector v0(2), v1(2), vp(2), vm(2);
  v0 << 1, 0;
  v1 << 0, 1;
  vp << 1, 1;
  vm << 1, -1;
  const Vector vs[4] = {v0, v1, vp, vm};
  const auto bb84 = Ensemble::from_pure({0.25, 0.25, 0.25, 0.25}, vs);
  const double direct = von_neumann_entropy(bb84.average()) - 0.0;
  EXPECT_NEAR(holevo_chi(bb84), direct, 1e-12);
  EXPECT_NEAR(holevo_chi(bb84), 1.0, 1e-12);
}

TEST(AccInfoOptimize, OrthogonalEnsembleReachesLogD) {
  for (int d : {2, 3, 5}) {
    AccInfoOptions o;
    o.restarts = 2;
    o.basis_pool = false;
    o.seed = 4;
    const auto r = acc_info_optimize(basis_ensemble(d), o);
    EXPECT_NEAR(r.lower_bits, std::log2(d), 1e-6) << d;
    EXPECT_NEAR(r.upper_bits, std::log2(d), 1e-9);
  }
}

TEST(AccInfoOptimize, TwoPureStatesMatchOracle) {
  for (double c : {0.1, 0.5, 0.7071, 0.9, 0.99}) {
    AccInfoOptions o;
    o.restarts = 4;
    o.seed = 12;
    o.basis_pool = false;
    const auto ens = two_state(c);
    const auto r = acc_info_optimize(ens, o);
    EXPECT_NEAR(r.lower_bits, oracle_for(c), 1e-4) << c;
    EXPECT_LE(r.lower_bits, r.upper_bits + 1e-9);
  }
  // Unequal priors.
  AccInfoOptions o;
  o.restarts = 4;
  const auto r = acc_info_optimize(two_state(0.6, 0.3), o);
  EXPECT_NEAR(r.lower_bits, oracle_for(0.6, 0.3), 1e-4);
}

TEST(AccInfoOptimize, LockedEnsembleShowsGap) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto keys = haar_keys(16, 4, seed);
    AccInfoOptions o;
    o.restarts = 2;
    o.iterations = 150;
    o.num_elements = 16;
    o.seed = seed;
    const auto r = acc_info_optimize(locked_ensemble(keys), o);
    EXPECT_LE(r.lower_bits, 4.0 - 0.1) << seed;
    EXPECT_LE(r.lower_bits, r.upper_bits - 0.1) << seed;
  }
}

TEST(AccInfoOptimize, InvariantsAndDeterminism) {
  Rng rng(77);
  std::vector<DensityOperator> s;
  for (int i = 0; i < 5; ++i) s.push_back(random_density(3, rng, 1 + i % 2));
  const Ensemble ens(random_probability(5, rng), s);
  const auto pool_povm = Povm::from_isometry_rows(random_isometry(7, 3, rng));
  AccInfoOptions o;
  o.restarts = 3;
  o.seed = 5;
  o.pool.push_back(pool_povm);
  o.pool.push_back(pretty_good_measurement(ens));
  const auto r1 = acc_info_optimize(ens, o);
  const auto r2 = acc_info_optimize(ens, o);
  EXPECT_EQ(r1.lower_bits, r2.lower_bits);
  EXPECT_EQ(r1.history, r2.history);
  EXPECT_LE(acc_info_of_measurement(ens, pool_povm), r1.lower_bits + 1e-6);
  EXPECT_LE(acc_info_of_measurement(ens, pretty_good_measurement(ens)), r1.lower_bits + 1e-6);
  EXPECT_LE(r1.lower_bits, r1.upper_bits + 1e-6);
  EXPECT_LE(r1.lower_bits, std::log2(5.0) + 1e-9);
  EXPECT_LE(r1.achieving_povm.size(), 9);
  for (size_t i = 1; i < r1.history.size(); ++i) EXPECT_GE(r1.history[i], r1.history[i - 1]);
}

TEST(AccInfoOptimize, RejectsLargeDimension) {
  EXPECT_THROW(acc_info_optimize(Ensemble::uniform({DensityOperator::maximally_mixed(65)})), CapabilityError);
}

TEST(EntropyMinObjective, Examples) {
  const std::vector<Matrix> id = {Matrix::Identity(4, 4)};
  EXPECT_NEAR(entropy_min_objective(id, Povm::standard_basis(4)), 2.0, 1e-12);
  EXPECT_NEAR(entropy_min_objective(id, Povm::fourier_basis(4)), 0.0, 1e-12);
  EXPECT_THROW(entropy_min_objective(id, Povm::trivial(4)), ValidationError);
}

TEST(EntropyMinObjective, EqualsMutualInformationOfKeyedEnsemble) {
  Rng rng(99);
  for (int t = 0; t < 10; ++t) {
    const auto keys = haar_keys(4, 2, 100 + t);
    const auto povm = Povm::from_isometry_rows(random_isometry(4 + t % 5, 4, rng));
    const double obj = entropy_min_objective(keys, povm);
    EXPECT_NEAR(obj, acc_info_of_measurement(mk_ensemble(keys), povm), 1e-9);
    // Dropping the key label can only lose information.
    EXPECT_GE(obj + 1e-12, acc_info_of_measurement(locked_ensemble(keys), povm));
  }
}

TEST(PrettyGood, Examples) {
  const auto pg = pretty_good_measurement(basis_ensemble(3));
  ASSERT_EQ(pg.size(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_LT((pg.element(i) - unit_matrix(3, i, i)).norm(), 1e-10);

  Rng rng(6);
  const auto st = random_density(3, rng, 2);
  const auto single = pretty_good_measurement(Ensemble::uniform({st}));
  ASSERT_EQ(single.size(), 2);
  const RealVector ev = hermitian_eigenvalues(single.element(0));
  EXPECT_NEAR(ev(0), 0.0, 1e-9);
  EXPECT_NEAR(ev(1), 1.0, 1e-9);
  EXPECT_NEAR(ev(2), 1.0, 1e-9);

  for (double p0 : {0.5, 0.7, 0.9}) {
    const auto ens = two_state(0.6, p0);
    EXPECT_GE(guessing_probability(ens, pretty_good_measurement(ens)), p0 - 1e-12);
  }
}

TEST(AdversarySuite, ContainsBaselines) {
  AccInfoOptions o;
  o.restarts = 2;
  const auto rep = run_adversary_suite(two_state(0.5), o);
  ASSERT_GE(rep.outcomes.size(), 5u);
  EXPECT_EQ(rep.outcomes[0].name, "standard_basis");
  EXPECT_FALSE(rep.outcomes[3].bits.has_value());
  for (const auto& oc : rep.outcomes) {
    if (oc.bits) {
      EXPECT_LE(*oc.bits, rep.best_bits + 1e-12);
    }
  }
  EXPECT_NEAR(rep.best_bits, oracle_for(0.5), 1e-4);
}
