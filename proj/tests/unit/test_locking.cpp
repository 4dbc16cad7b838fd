#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles/oracles.hpp"
#include "qlock/core/entropy.hpp"
#include "qlock/core/linalg.hpp"
#include "qlock/core/random.hpp"
#include "qlock/locking/protocol.hpp"
#include "qlock/locking/scheme.hpp"

using namespace qlock;

namespace {

Matrix shift(int d, int k) {
  Matrix x = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + k) % d, i) = 1.0;
  return x;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

KrausChannel erasure_inline(int d, double p) {
  Matrix keep = Matrix::Zero(d + 1, d);
  keep.topRows(d) = std::sqrt(1.0 - p) * Matrix::Identity(d, d);
  std::vector<Matrix> ops = {keep};
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d + 1, d);
    e(d, i) = std::sqrt(p);
    ops.push_back(e);
  }
  return KrausChannel(ops);
}

Matrix random_permutation(int d, Rng& rng) {
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) p(perm[i], i) = 1.0;
  return p;
}

AccInfoOptions small_budget(std::uint64_t seed) {
  AccInfoOptions o;
  o.restarts = 1;
  o.iterations = 60;
  o.seed = seed;
  o.num_elements = 0;
  return o;
}

}  // namespace

TEST(Scheme, ValidatesUnitaries) {
  EXPECT_THROW(LockingScheme({}), ValidationError);
  EXPECT_THROW(LockingScheme({Matrix::Identity(2, 2) * 1.1}), ValidationError);
  EXPECT_THROW(LockingScheme({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), DimensionError);
}

TEST(CqState, TrivialSchemeHasOneBit) {
  const LockingScheme s({Matrix::Identity(2, 2)});
  const auto cq = cq_state_with_key(s);
  EXPECT_NEAR(mutual_info_m_kq(cq), 1.0, 1e-12);
  // Cross-check against the dense tripartite state: I(M; KQ) with |K| = 1.
  EXPECT_NEAR(mutual_information(cq.dense(), 2, 2), 1.0, 1e-12);
}

TEST(CqState, QMarginalIsMaximallyMixed) {
  for (int k : {1, 3}) {
    const auto s = LockingScheme::haar(5, k, 10 + k);
    const auto q = cq_state_with_key(s).q_marginal();
    EXPECT_LT((q.matrix() - Matrix::Identity(5, 5) / 5.0).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((cq_state_without_key(s).average().matrix() - Matrix::Identity(5, 5) / 5.0).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(CqState, KeyedInformationIsMaximal) {
  const auto s = LockingScheme::haar(4, 2, 3);
  const auto cq = cq_state_with_key(s);
  EXPECT_NEAR(mutual_info_m_kq(cq), 2.0, 1e-9);
  // Dense check: I(M; KQ) on M (x) (KQ).
  EXPECT_NEAR(mutual_information(cq.dense(), 4, 8), 2.0, 1e-9);
  // Decode-then-measure strategy reaches the same value.
  const auto proto = make_protocol(s, 1, 4);
  EXPECT_NEAR(decoded_mutual_info(proto, identity_channel(4)), 2.0, 1e-9);
}

TEST(CqState, SizeCap) {
  const LockingScheme s(std::vector<Matrix>(65, Matrix::Identity(64, 64)));
  EXPECT_THROW(cq_state_with_key(s), CapabilityError);
  EXPECT_THROW(cq_state_without_key(s), CapabilityError);
}

TEST(CqState, WithoutKeyExamples) {
  const auto s = LockingScheme::haar(3, 1, 8);
  const auto a = cq_state_without_key(s);
  const auto b = cq_state_with_key(s);
  for (int m = 0; m < 3; ++m) EXPECT_LT((a.state(m).matrix() - b.state(m, 0).matrix()).norm(), 1e-12);

  const LockingScheme bb({Matrix::Identity(2, 2), hadamard()});
  const auto e = cq_state_without_key(bb);
  Matrix r0(2, 2), r1(2, 2);
  r0 << 0.75, 0.25, 0.25, 0.25;
  r1 << 0.25, -0.25, -0.25, 0.75;
  EXPECT_LT((e.state(0).matrix() - r0).norm(), 1e-12);
  EXPECT_LT((e.state(1).matrix() - r1).norm(), 1e-12);
}

TEST(Serialization, RoundTripIsExact) {
  const auto s = LockingScheme::haar(6, 3, 1234);
  const auto viaseed = parse_scheme(serialize_scheme(s, false));
  const auto explicit_copy = parse_scheme(serialize_scheme(s, true));
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE((viaseed.key(k) - s.key(k)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((explicit_copy.key(k) - s.key(k)).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_EQ(serialize_scheme(explicit_copy, true), serialize_scheme(s, true));
  EXPECT_THROW(parse_scheme("{\"format\":\"other\"}"), ValidationError);
  EXPECT_THROW(parse_scheme("not json"), ValidationError);
}

TEST(Decode, NoiselessIsPerfect) {
  for (int k : {1, 4}) {
    const auto s = LockingScheme::haar(8, k, 40 + k);
    EXPECT_NEAR(decode_success_probability(make_protocol(s, 1, 8), identity_channel(8)), 1.0, 1e-10);
  }
  // Two uses of a qubit channel.
  const auto s = LockingScheme::haar(4, 2, 5);
  EXPECT_NEAR(decode_success_probability(make_protocol(s, 2, 2), identity_channel(2)), 1.0, 1e-10);
}

TEST(Decode, FullErasureGivesUniformGuess) {
  const auto s = LockingScheme::haar(4, 2, 9);
  const auto proto = with_uniform_guessing(make_protocol(s, 1, 4), Matrix::Identity(5, 4));
  EXPECT_NEAR(decode_success_probability(proto, erasure_inline(4, 1.0)), 0.25, 1e-12);
  EXPECT_NEAR(decode_success_probability(proto, erasure_inline(4, 0.3)), 0.7 + 0.3 * 0.25, 1e-12);
}

TEST(EveSecurity, FullTwirlHidesEverything) {
  const int d = 4;
  std::vector<Matrix> keys;
  for (int k = 0; k < d; ++k) keys.push_back(shift(d, k));
  const LockingScheme s(keys);
  const auto proto = make_protocol(s, 1, d);
  Rng rng(3);
  const auto povm = Povm::from_isometry_rows(random_isometry(7, d, rng));
  const auto f = eve_security_eval(proto, identity_channel(d), povm);
  EXPECT_NEAR(f.max_var_dist, 0.0, 1e-9);
}

TEST(EveSecurity, WeakLockingOverIdentityIsSecret) {
  const auto s = LockingScheme::haar(4, 1, 2);
  const auto proto = make_protocol(s, 1, 4);
  const auto eve = complementary_channel(identity_channel(4));
  const auto f = eve_security_eval(proto, eve, Povm::trivial(1));
  EXPECT_NEAR(f.max_var_dist, 0.0, 1e-12);
  const auto rep = evaluate_protocol(proto, identity_channel(4), LockingMode::Weak, small_budget(1));
  EXPECT_NEAR(rep.max_var_dist, 0.0, 1e-9);
  EXPECT_NEAR(rep.without_key_bits, 0.0, 1e-9);
  EXPECT_NEAR(rep.success_prob, 1.0, 1e-10);
}

TEST(EveSecurity, SkipsZeroProbabilityOutcomes) {
  const LockingScheme s({Matrix::Identity(2, 2)});
  const auto proto = make_protocol(s, 1, 2);
  std::vector<Matrix> el = {unit_matrix(2, 0, 0), unit_matrix(2, 1, 1), Matrix::Zero(2, 2)};
  const auto f = eve_security_eval(proto, identity_channel(2), Povm(el));
  ASSERT_EQ(f.skipped_outcomes.size(), 1u);
  EXPECT_EQ(f.skipped_outcomes[0], 2);
  EXPECT_TRUE(std::isnan(f.per_outcome_var_dist[2]));
  EXPECT_NEAR(f.max_var_dist, 1.0, 1e-12);
}

TEST(EveSecurity, StandardBasisDistanceShrinksWithKeys) {
  const int d = 16;
  std::vector<double> means;
  for (int k : {1, 2, 4, 8, 16}) {
    double sum = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
      const auto s = LockingScheme::haar(d, k, 1000 * k + seed);
      const auto f = eve_security_eval(make_protocol(s, 1, d), identity_channel(d), Povm::standard_basis(d));
      EXPECT_GT(f.max_var_dist, 0.0);
      sum += f.max_var_dist;
    }
    means.push_back(sum / 20.0);
  }
  for (size_t i = 1; i < means.size(); ++i) EXPECT_LT(means[i], means[i - 1]);
}

TEST(EveSecurity, CriterionImpliesFannesAudenaertBound) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + t % 5;
    const auto s = LockingScheme::haar(d, 1 + t % 3, 500 + t);
    const auto proto = make_protocol(s, 1, d);
    const auto povm = Povm::from_isometry_rows(random_isometry(d + t % 4, d, rng));
    const auto f = eve_security_eval(proto, identity_channel(d), povm);
    EXPECT_LE(f.mutual_info_bits, fannes_audenaert_acc_bound(std::min(f.max_var_dist, 2.0), 1, proto.rate()) + 1e-6);
  }
}

TEST(Bounds, FannesAudenaert) {
  EXPECT_EQ(fannes_audenaert_acc_bound(0.0, 5, 1.0), 0.0);
  EXPECT_NEAR(fannes_audenaert_acc_bound(1.0, 1, 1.0), 1.5, 1e-15);
  EXPECT_NEAR(fannes_audenaert_acc_bound(0.01, 100, 1.0), oracle::h2(0.005) + 0.5, 1e-14);
  EXPECT_THROW(fannes_audenaert_acc_bound(2.5, 1, 1.0), ValidationError);
}

TEST(Bounds, Ratios) {
  const auto otp = ratios_r1_r2(0.0, 3.0, 3.0);
  EXPECT_EQ(*otp.r2, 1.0);
  EXPECT_EQ(*otp.r1, 0.0);
  const auto half = ratios_r1_r2(1.5, 3.0, 3.0);
  EXPECT_EQ(*half.r1, 0.5);
  EXPECT_EQ(*half.r2, 2.0);
  const auto bad = ratios_r1_r2(2.0, 2.0, 1.0);
  EXPECT_FALSE(bad.r2.has_value());
  EXPECT_FALSE(ratios_r1_r2(0.0, 0.0, 1.0).r1.has_value());
}

TEST(Bounds, StrongLockingSecurityRatio) {
  // r1 <= h2(eps/2)/(nR) + eps/2 with eps the worst observed distance.
  const auto s = LockingScheme::haar(8, 4, 77);
  const auto proto = make_protocol(s, 1, 8);
  const auto rep = evaluate_protocol(proto, identity_channel(8), LockingMode::Strong, small_budget(2), &s);
  ASSERT_TRUE(rep.ratios.r1.has_value());
  const double eps = std::min(rep.max_var_dist, 2.0);
  EXPECT_LE(*rep.ratios.r1, oracle::h2(std::min(eps / 2.0, 1.0)) / proto.rate() + eps / 2.0 + 1e-9);
  EXPECT_NEAR(rep.with_key_bits, 3.0, 1e-9);
  EXPECT_LE(rep.without_key_bits, rep.suite.holevo_bits + 1e-6);
}

TEST(ClassicalInequality, Examples) {
  // K independent of (M, Y).
  JointMYK j{2, 2, 4, std::vector<double>(16, 0.0)};
  const double pmy[2][2] = {{0.4, 0.1}, {0.2, 0.3}};
  for (int m = 0; m < 2; ++m)
    for (int y = 0; y < 2; ++y)
      for (int k = 0; k < 4; ++k) j.p[(m * 2 + y) * 4 + k] = pmy[m][y] / 4.0;
  const auto r = classical_inequality_check(j);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.slack, 2.0, 1e-12);

  // One-time pad Y = M xor K over d symbols.
  const int d = 4;
  JointMYK otp{d, d, d, std::vector<double>(d * d * d, 0.0)};
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k) otp.p[(m * d + (m ^ k)) * d + k] = 1.0 / (d * d);
  const auto o = classical_inequality_check(otp);
  EXPECT_NEAR(o.slack, 0.0, 1e-9);
  EXPECT_TRUE(o.holds);
}

TEST(ClassicalInequality, RandomStress) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    JointMYK j{2 + t % 3, 2 + t % 4, 1 + t % 5, {}};
    j.p = random_probability(j.m * j.y * j.k, rng);
    EXPECT_TRUE(classical_inequality_check(j).holds);
  }
}

TEST(ClassicalSimulation, EavesdropperReproducesKeyIndependentMeasurement) {
  // Permutation keys: Bob measures the standard basis, then undoes the
  // permutation with the key. Eve performing the same measurement sees the
  // same (M, Y) distribution, and r2 >= 1.
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const int d = 3 + t % 4;
    const int nk = 2 + t % 3;
    std::vector<Matrix> keys;
    for (int k = 0; k < nk; ++k) keys.push_back(random_permutation(d, rng));
    const LockingScheme s(keys);
    const auto proto = make_protocol(s, 1, d);
    RealMatrix bob = RealMatrix::Zero(d, d);
    for (int m = 0; m < d; ++m) {
      for (int k = 0; k < nk; ++k) {
        const auto p = Povm::standard_basis(d).probabilities(proto.encoded(m, k).matrix());
        for (int y = 0; y < d; ++y) bob(m, y) += p[y] / (d * nk);
      }
    }
    const auto eve = eve_security_eval(proto, identity_channel(d), Povm::standard_basis(d));
    EXPECT_LT((eve.joint - bob).cwiseAbs().maxCoeff(), 1e-15);
    const auto ratios = ratios_r1_r2(eve.mutual_info_bits, decoded_mutual_info(proto, identity_channel(d)), s.key_bits());
    if (ratios.r2) {
      EXPECT_GE(*ratios.r2, 1.0 - 1e-9);
    }
  }
}

TEST(Locking, KeyedInformationDominatesUnkeyed) {
  for (int t = 0; t < 10; ++t) {
    const auto s = LockingScheme::haar(2 + t % 5, 1 + t % 4, 300 + t);
    EXPECT_GE(mutual_info_m_kq(cq_state_with_key(s)) + 1e-9, holevo_chi(cq_state_without_key(s)));
  }
}

TEST(Locking, MoreKeysLowerSuiteInformation) {
  // Mean over seeds of the suite's best mutual information, d = 8.
  const int seeds = 8;
  std::vector<double> mean, sem;
  for (int k : {1, 2, 4}) {
    std::vector<double> v;
    for (int s = 0; s < seeds; ++s) {
      const auto sch = LockingScheme::haar(8, k, 7000 + 31 * k + s);
      v.push_back(run_adversary_suite(cq_state_without_key(sch), small_budget(s)).best_bits);
    }
    const double mu = std::accumulate(v.begin(), v.end(), 0.0) / seeds;
    double var = 0.0;
    for (double x : v) var += (x - mu) * (x - mu);
    mean.push_back(mu);
    sem.push_back(std::sqrt(var / (seeds - 1) / seeds));
  }
  for (size_t i = 1; i < mean.size(); ++i) {
    EXPECT_GT(mean[i - 1] - mean[i], 3.0 * std::hypot(sem[i - 1], sem[i]));
  }
}

TEST(Composition, Examples) {
  EXPECT_EQ(parallel_compose_security(0.0, 0.25), 0.25);
  EXPECT_NEAR(parallel_compose_security(0.1, 0.2), 0.3, 1e-15);
  double eps = 0.0;
  for (int i = 0; i < 10; ++i) eps = parallel_compose_security(eps, 0.01);
  EXPECT_NEAR(eps, 0.1, 1e-15);
  EXPECT_NEAR(composed_acc_bound(0.01, 10, 2), 0.1 * 10.0 + oracle::h2(0.1), 1e-12);
  EXPECT_THROW(parallel_compose_security(-0.1, 0.0), ValidationError);
}

TEST(FhsKeyLength, Examples) {
  EXPECT_NEAR(fhs_key_length(1.0 / 16.0, 0.0), 16.0, 1e-12);
  EXPECT_NEAR(fhs_key_length(0.5, 0.0), 4.0, 1e-12);
  EXPECT_NEAR(fhs_key_length(1.0 / 16.0), 16.0 + 2.0, 1e-12);
  double prev = 1e300;
  for (double e = 0.01; e < 0.5; e += 0.01) {
    const double v = fhs_key_length(e, 0.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_THROW(fhs_key_length(1.0), ValidationError);
  EXPECT_THROW(fhs_key_length(0.0), ValidationError);
}
