#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace holodisc;
using testutil::in_disc;
using testutil::uniform;

namespace {

std::array<double, 8> random_pins(double norm) {
  Eigen::VectorXd v(8);
  for (int i = 0; i < 8; ++i) v(i) = std::normal_distribution<double>(0.0, 1.0)(testutil::rng());
  v *= norm / v.norm();
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

LiftedDisc random_lift_near_reference(int N, double size) {
  LiftedDisc l = LiftedDisc::reference();
  l.coeffs.resize(static_cast<std::size_t>(N + 1), {Complex{}, Complex{}, Complex{}, Complex{}});
  for (auto& row : l.coeffs) {
    for (auto& c : row) c += size * in_disc(1.0);
  }
  return l;
}

}  // namespace

TEST(Solver, PackRoundtrip) {
  const LiftedDisc l = random_lift_near_reference(5, 0.1);
  const LiftedDisc back = unpack(pack(l, 5), 5);
  for (std::size_t n = 0; n < l.coeffs.size(); ++n) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(back.coeffs[n][c], l.coeffs[n][c]);
  }
  EXPECT_THROW(pack(l, 3), ValidationError);
}

TEST(Solver, ResidualSystemExamples) {
  for (double lambda : {0.0, 0.5, 1.0}) {
    EXPECT_LT(residual_system({0.01, lambda}, LiftedDisc::reference(), 64).lpNorm<Eigen::Infinity>(), 1e-15);
  }
  LiftedDisc l = LiftedDisc::reference();
  l.coeffs[0][3] = 0.1;
  const int M = 32;
  const Eigen::VectorXd r = residual_system({0.01, 0.5}, l, M);
  for (int j = 0; j < M; ++j) {
    EXPECT_NEAR(r(2 * M + j), 0.2, 1e-15);
    EXPECT_NEAR(r(3 * M + j), 0.0, 1e-15);
  }
}

TEST(Solver, JacobianMatchesFiniteDifferences) {
  const int N = 6, M = default_collocation(N);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const DomainParams d{0.01, uniform(0.0, 1.2)};
    const LiftedDisc l = random_lift_near_reference(N, 0.02);
    const Eigen::MatrixXd J = residual_jacobian(d, l, N, M);
    const Eigen::VectorXd x = pack(l, N);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Random(x.size());
      v.normalize();
      const Eigen::VectorXd fd =
          (residual_system(d, unpack(x + h * v, N), M) - residual_system(d, unpack(x - h * v, N), M)) / (2 * h);
      const Eigen::VectorXd jv = J * v;
      EXPECT_LT((fd - jv).norm() / jv.norm(), 1e-5);
    }
  }
}

TEST(Solver, TangentDimensions) {
  const LiftedDisc ref = LiftedDisc::reference();
  for (double lambda : {0.0, 0.5}) {
    const TangentReport t = tangent_analysis({0.01, lambda}, ref);
    EXPECT_EQ(t.dimension, 8);
    EXPECT_GE(t.gap, 1e3);
    EXPECT_EQ(tangent_dimension({0.01, lambda}, ref), 8);
  }
  const TangentReport t1 = tangent_analysis({0.01, 1.0}, ref);
  EXPECT_EQ(t1.dimension, 9);
  EXPECT_GE(t1.gap, 1e3);
}

// Dimension equals Maslov index + 4 away from lambda = 1 and is stable
// under enlarging the truncation.
TEST(Solver, TangentDimensionStableInDegree) {
  for (double lambda : {0.0, 0.5, 1.0}) {
    const int d12 = tangent_dimension({0.01, lambda}, LiftedDisc::reference(), 12);
    const int d14 = tangent_dimension({0.01, lambda}, LiftedDisc::reference(), 14);
    EXPECT_EQ(d12, d14);
    if (lambda != 1.0) {
      EXPECT_EQ(d12, maslov_index(build_symbol_A(lambda)) + 4);
    }
  }
}

// Scaling of the fibre is one of the kernel directions.
TEST(Solver, KernelContainsFibreScaling) {
  const int N = 12;
  const Eigen::MatrixXd E = pin_basis({0.01, 0.5}, N);
  Eigen::VectorXd scale = pack(LiftedDisc::reference(), N);
  scale.head(2 * 2 * (N + 1)).setZero();
  scale.normalize();
  EXPECT_NEAR((E * (E.transpose() * scale) - scale).norm(), 0.0, 1e-10);
}

TEST(Solver, ZeroPinsReturnReference) {
  const SolveReport r = solve_near({0.01, 0.5}, LiftedDisc::reference(), {});
  EXPECT_EQ(r.iterations, 0);
  EXPECT_LT(r.residual, 1e-15);
  EXPECT_EQ(r.tangent_dim, 8);
}

TEST(Solver, SmallPinConverges) {
  std::array<double, 8> pins{};
  pins[2] = 1e-3;
  const DomainParams d{0.01, 0.5};
  const SolveReport r = solve_near(d, LiftedDisc::reference(), pins);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_LE(r.iterations, 15);
  EXPECT_NEAR(r.pinned[2], 1e-3, 1e-12);
  const int M2 = 2 * default_collocation(12);
  const auto c = conormal_residuals(d, r.solution, M2);
  EXPECT_LT(*std::max_element(c.begin(), c.end()), 1e-9);
}

TEST(Solver, RandomPinsAtZeroGiveBallStationaryDiscs) {
  const DomainParams d{0.01, 0.0};
  for (int i = 0; i < 5; ++i) {
    const SolveReport r = solve_near(d, LiftedDisc::reference(), random_pins(1e-3));
    EXPECT_LT(r.residual, 1e-10);
    const AnalyticDisc base = r.solution.base();
    EXPECT_LT(boundary_residual(d, base, 4 * base.degree() + 64), 1e-9);
    EXPECT_EQ(r.tangent_dim, 8);
  }
}

TEST(Solver, PinsToSolutionIsInjective) {
  const DomainParams d{0.01, 0.5};
  const auto p = random_pins(1e-3);
  auto q = p;
  const auto step = random_pins(1e-3);
  for (std::size_t i = 0; i < 8; ++i) q[i] += step[i];
  const SolveReport a = solve_near(d, LiftedDisc::reference(), p);
  const SolveReport b = solve_near(d, LiftedDisc::reference(), q);
  EXPECT_GE((pack(a.solution, 12) - pack(b.solution, 12)).norm(), 1e-5);
}

TEST(Solver, DegenerateAtOne) {
  std::array<double, 8> pins{};
  pins[0] = 1e-3;
  EXPECT_THROW(solve_near({0.01, 1.0}, LiftedDisc::reference(), pins), NumericalError);
}

TEST(Solver, Preconditions) {
  LiftedDisc far = LiftedDisc::reference();
  far.coeffs[0][3] = 0.5;
  EXPECT_THROW(solve_near({0.01, 0.5}, far, {}), ValidationError);
  SolveOptions o;
  o.collocation = 20;
  EXPECT_THROW(solve_near({0.01, 0.5}, LiftedDisc::reference(), {}, o), ValidationError);
}

TEST(Solver, SweepExamples) {
  EXPECT_TRUE(lambda_sweep(0.01, {}).empty());
  const auto rows = lambda_sweep(0.01, {0.0, 0.5, 1.0});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].tangent_dim, 8);
  EXPECT_EQ(rows[1].tangent_dim, 8);
  EXPECT_EQ(rows[2].tangent_dim, 9);
  EXPECT_EQ(rows[2].min_index, -2);
  EXPECT_GE(*rows[0].min_index, 0);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_LT(r.residual, 1e-15);
  }
  const auto bad = lambda_sweep(0.01, {-1.0});
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_FALSE(bad[0].error.empty());
  EXPECT_FALSE(bad[0].tangent_dim.has_value());
}

TEST(Solver, GeodesicFamilyIsStationary) {
  const GeodesicFamilyReport r = geodesic_family_check({0.01, 1.0}, 3);
  EXPECT_TRUE(r.all_stationary);
  EXPECT_EQ(r.rank, 4);
  EXPECT_EQ(r.samples, 1 + 4 * 2 * 3);
  EXPECT_LT(r.max_attachment, 1e-12);
  EXPECT_TRUE(geodesic_family_is_stationary({0.01, 1.0}));
  EXPECT_THROW(geodesic_family_is_stationary({0.01, 0.5}), ValidationError);
}
