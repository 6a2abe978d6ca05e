#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace holodisc;
using testutil::in_disc;
using testutil::uniform;

namespace {
const double kHalfLog3 = 0.5 * std::log(3.0);
}

TEST(Kobayashi, PoincareDistance) {
  EXPECT_EQ(poincare_distance(0.0, 0.0), 0.0);
  EXPECT_NEAR(poincare_distance(0.0, 0.5), kHalfLog3, 1e-15);
  for (int i = 0; i < 200; ++i) {
    const Complex a = in_disc(0.99), b = in_disc(0.99);
    EXPECT_NEAR(poincare_distance(a, b), poincare_distance(b, a), 1e-13);
    // invariance under the disc automorphism moving a to 0
    const Complex m = (b - a) / (1.0 - std::conj(a) * b);
    EXPECT_NEAR(poincare_distance(a, b), poincare_distance(0.0, m), 1e-12);
  }
  EXPECT_THROW(poincare_distance(1.0, 0.0), ValidationError);
}

TEST(Kobayashi, PoincareMetric) {
  EXPECT_EQ(poincare_metric(0.0, 1.0), 1.0);
  EXPECT_NEAR(poincare_metric(0.5, 1.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(poincare_metric(0.3, Complex(0, -2.5)), 2.5 * poincare_metric(0.3, 1.0), 1e-15);
  EXPECT_THROW(poincare_metric(Complex(0, 1), 1.0), ValidationError);
}

TEST(Kobayashi, DistanceFromOrigin) {
  const DomainParams d{0.01, 1.0};
  EXPECT_NEAR(distance_from_origin(d, 0.5, 0.05), kHalfLog3, 1e-15);
  EXPECT_NEAR(distance_from_origin(d, 0.5, 0.0), kHalfLog3, 1e-15);
  for (int i = 0; i < 100; ++i) {
    const Complex z1 = in_disc(0.25 * d.w_radius() * 0.999);
    EXPECT_NEAR(distance_from_origin(d, std::polar(0.5, uniform(0, kTwoPi)), z1), kHalfLog3, 1e-15);
  }
  EXPECT_THROW(distance_from_origin(d, 0.5, 0.1), ValidationError);
  EXPECT_THROW(distance_from_origin(d, 0.0, 0.0), ValidationError);
  EXPECT_THROW(distance_from_origin({0.01, 0.5}, 0.5, 0.0), ValidationError);
}

TEST(Kobayashi, Bounds) {
  const DomainParams d{0.01, 1.0};
  EXPECT_EQ(bound_via_projection(d, {0.3, 0.01}, {0.3, 0.01}), 0.0);
  EXPECT_NEAR(bound_via_projection(d, {0.0, 0.0}, {0.5, 0.05}), kHalfLog3, 1e-15);
  EXPECT_LT(bound_via_projection(d, {0.0, 0.0}, {0.4, 0.0}), bound_via_projection(d, {0.0, 0.0}, {0.5, 0.0}));
  EXPECT_THROW(bound_via_projection(d, {0.0, 0.0}, {1.0, 0.0}), ValidationError);

  EXPECT_NEAR(bound_via_disc(d, AnalyticDisc::reference(), 0.0, 0.5), kHalfLog3, 1e-15);
  EXPECT_NEAR(bound_via_disc(d, disc_geodesic(0.01, {0.0, 0.5, 0.05, 0.0}), 0.0, 0.5), kHalfLog3, 1e-15);
  EXPECT_EQ(bound_via_disc(d, AnalyticDisc::reference(), 0.2, 0.2), 0.0);
  AnalyticDisc out = AnalyticDisc::reference();
  out.coeffs[1][1] = 0.3;
  EXPECT_THROW(bound_via_disc(d, out, 0.0, 0.5), ValidationError);
}

// Family discs have first coordinate a rotation, so both bounds equal the
// Poincare distance of the preimages.
TEST(Kobayashi, Squeeze) {
  const DomainParams d{0.01, 1.0};
  for (int i = 0; i < 200; ++i) {
    const AnalyticDisc f = disc_leminside(0.01, testutil::random_leminside(0.01));
    const Complex a = in_disc(0.95), b = in_disc(0.95);
    const double lower = bound_via_projection(d, eval(f, a), eval(f, b));
    const double upper = bound_via_disc(d, f, a, b);
    EXPECT_NEAR(upper - lower, 0.0, 1e-12);
  }
}

TEST(Kobayashi, GeodesicThrough) {
  const auto g = geodesic_through(0.01, 0.5, 0.05);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->b, Complex(0.0));
  for (int i = 0; i < 100; ++i) {
    const Complex z0 = std::polar(uniform(0.2, 0.9), uniform(0, kTwoPi));
    const Complex z1 = z0 * z0 * in_disc(0.02 * w_radius_for(0.01));
    const auto p = geodesic_through(0.01, z0, z1);
    ASSERT_TRUE(p.has_value());
    const Point2 at = eval(disc_geodesic(0.01, *p), Complex(p->x0));
    EXPECT_LT(std::abs(at.z - z0), 1e-14);
    EXPECT_LT(std::abs(at.w - z1), 1e-14);
  }
  EXPECT_FALSE(geodesic_through(0.01, 0.5, Complex(0.0, 0.06)).has_value());
}

TEST(Kobayashi, ExtremalSearchTrivialDirection) {
  ExtremalOptions o;
  o.budget = 2000;
  const ExtremalReport r = extremal_search({0.01, 1.0}, 0.0, 0.5, 3, o);
  EXPECT_GE(r.mu_best, 1.0 - 1e-3);
  EXPECT_LE(r.mu_best, 1.0 + 1e-9);
  EXPECT_GE(r.feasibility_margin, o.margin);
  EXPECT_NEAR(std::abs(r.disc.coeffs[1][0] - r.mu_best), 0.0, 1e-15);
}

TEST(Kobayashi, ExtremalSearchShortBudget) {
  ExtremalOptions o;
  o.budget = 20000;
  const ExtremalReport r = extremal_search({0.01, 1.0}, 0.01, 0.5, 4, o);
  EXPECT_GE(r.mu_best, 0.99);
  EXPECT_LE(r.mu_best, 1.0 + 1e-9);
  EXPECT_LE(r.evaluations, o.budget + 1);
  // same seed, same result
  const ExtremalReport again = extremal_search({0.01, 1.0}, 0.01, 0.5, 4, o);
  EXPECT_EQ(r.mu_best, again.mu_best);
}

TEST(Kobayashi, ExtremalSearchValidation) {
  EXPECT_THROW(extremal_search({0.01, 1.0}, 0.2, 0.5, 4), ValidationError);
  EXPECT_THROW(extremal_search({0.01, 1.0}, 0.01, 1.5, 4), ValidationError);
}

// The cubic disc certifies mu = 1 for the direction (1, c z0).
TEST(Kobayashi, CubicDiscIsFeasibleCompetitor) {
  const AnalyticDisc g = disc_cubic_extremal(0.01, 0.01, 0.5);
  EXPECT_TRUE(disc_in_closure({0.01, 1.0}, g));
  const Point2 d0 = eval_derivative(g, 0.0);
  EXPECT_NEAR(std::abs(d0.z - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d0.w - 0.005), 0.0, 1e-16);
}
