// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "holodisc/holodisc.hpp"

using namespace holodisc;

namespace {

std::mt19937_64 gen(20261019);

double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
Complex in_disc(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, kTwoPi)); }

LeminsideParams random_leminside(double eps) {
  const double budget = w_radius_for(eps) * 0.999;
  const double t = uniform(0.0, 1.0);
  LeminsideParams p;
  p.theta = uniform(0.0, kTwoPi);
  p.a1 = in_disc(t * budget / 2.0);
  p.a2 = uniform(-1.0, 1.0) * (1.0 - t) * budget;
  return p;
}

GeodesicParams random_geodesic(double eps) {
  const double wr = w_radius_for(eps);
  for (;;) {
    GeodesicParams p;
    p.theta0 = uniform(0.0, kTwoPi);
    p.x0 = uniform(0.05, 0.95);
    const Complex u = in_disc(0.9 * wr);
    const double radius = geodesic_b_radius(eps, u);
    const double im_b = -u.imag() / (1.0 - std::pow(p.x0, 4));
    if (std::abs(im_b) >= radius) continue;
    const double re_max = std::sqrt(radius * radius - im_b * im_b);
    p.b = Complex(uniform(-0.99, 0.99) * re_max, im_b);
    p.z1 = u * p.z0() * p.z0();
    return p;
  }
}

std::string show(const std::vector<int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || dt < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %-26s %8.2fs  %s%s\n", pass ? "PASS" : "FAIL", id, name, dt, o.detail.c_str(),
              in_time ? "" : "  (over time limit)");
  std::fflush(stdout);
}

}  // namespace

int main() {
  const double eps = 0.01;
  const DomainParams lem{eps, 1.0};

  criterion(1, "attachment identity", 5.0, [&] {
    double worst_res = 0.0, worst_rho = -1.0;
    std::vector<Complex> grid;
    for (int i = 1; i <= 25; ++i) {
      const double r = 0.999 * i / 25.0;
      for (int j = 0; j < 40; ++j) grid.push_back(std::polar(r, kTwoPi * j / 40.0));
    }
    for (int i = 0; i < 1000; ++i) {
      const AnalyticDisc f = disc_leminside(eps, random_leminside(eps));
      worst_res = std::max(worst_res, boundary_residual(lem, f, 64));
      for (const Complex& z : grid) worst_rho = std::max(worst_rho, rho(lem, eval(f, z)));
    }
    std::ostringstream os;
    os << "max residual " << worst_res << ", max interior rho " << worst_rho;
    return Outcome{worst_res < 1e-13 && worst_rho < 0.0, os.str()};
  });

  criterion(2, "geodesic interpolation", 5.0, [&] {
    double at0 = 0.0, interp = 0.0, round = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const GeodesicParams p = random_geodesic(eps);
      const AnalyticDisc g = disc_geodesic(eps, p);
      const Point2 a = eval(g, 0.0);
      at0 = std::max({at0, std::abs(a.z), std::abs(a.w)});
      const Point2 b = eval(g, Complex(p.x0));
      interp = std::max({interp, std::abs(b.z - p.z0()), std::abs(b.w - p.z1)});
      const auto [z1, bb] = recover_params(g, p.z0());
      round = std::max({round, std::abs(z1 - p.z1), std::abs(bb - p.b)});
    }
    std::ostringstream os;
    os << "|f(0)| " << at0 << ", interpolation " << interp << ", roundtrip " << round;
    return Outcome{at0 < 1e-15 && interp < 1e-12 && round < 1e-12, os.str()};
  });

  criterion(3, "distance exactness", 1.0, [&] {
    const double expect = std::atanh(0.5);
    double err = 0.0, squeeze = 0.0;
    int rejected = 0;
    for (int i = 0; i < 100;) {
      // sample until a family geodesic passes through the point
      const Complex z0 = std::polar(0.5, uniform(0.0, kTwoPi));
      const Complex z1 = in_disc(0.25 * lem.w_radius() * 0.999);
      const auto g = geodesic_through(eps, z0, z1);
      if (!g) {
        ++rejected;
        continue;
      }
      ++i;
      err = std::max(err, std::abs(distance_from_origin(lem, z0, z1) - expect));
      const AnalyticDisc f = disc_geodesic(eps, *g);
      const double upper = bound_via_disc(lem, f, 0.0, g->x0);
      const double lower = bound_via_projection(lem, {0.0, 0.0}, {z0, z1});
      squeeze = std::max(squeeze, upper - lower);
    }
    std::ostringstream os;
    os << "max |d - atanh 0.5| " << err << ", max squeeze " << squeeze << ", rejected samples " << rejected;
    return Outcome{err < 1e-9 && squeeze < 1e-12, os.str()};
  });

  criterion(4, "extremality", 60.0, [&] {
    ExtremalOptions o;
    o.budget = 100000;
    const ExtremalReport r = extremal_search(lem, 0.01, 0.5, 6, o);
    std::ostringstream os;
    os.precision(9);
    os << "mu_best " << r.mu_best << ", evaluations " << r.evaluations;
    return Outcome{r.mu_best >= 0.999 && r.mu_best <= 1.0 + 1e-9, os.str()};
  });

  criterion(5, "maslov index", 1.0, [&] {
    bool ok = true;
    std::ostringstream os;
    for (double l : {0.0, 0.25, 0.5, 0.75, 1.0, 1.25}) {
      const int m = maslov_index(build_symbol_A(l));
      ok = ok && m == 4;
      os << m << ' ';
    }
    return Outcome{ok, "indices " + os.str()};
  });

  criterion(6, "partial indices", 30.0, [&] {
    const IndexReport r0 = partial_indices(build_symbol_A(0.0));
    const IndexReport r5 = partial_indices(build_symbol_A(0.5));
    const IndexReport r1 = partial_indices(build_symbol_A(1.0));
    const IndexReport m0 = partial_indices(build_symbol_A(0.0), 128, 1e-8, FactorOrder::minus_left);
    const IndexReport m1 = partial_indices(build_symbol_A(1.0), 128, 1e-8, FactorOrder::minus_left);
    int sum5 = 0;
    for (int k : r5.partial_indices) sum5 += k;
    const bool ok = r0.stable && r5.stable && r1.stable && r0.partial_indices == std::vector<int>{2, 1, 1, 0} &&
                    r5.min_index() >= 0 && sum5 == 4 && r1.partial_indices == std::vector<int>{4, 2, 0, -2};
    std::ostringstream os;
    os << "lambda 0: " << show(r0.partial_indices) << ", 0.5: " << show(r5.partial_indices)
       << ", 1: " << show(r1.partial_indices) << " (stable " << (r0.stable && r5.stable && r1.stable)
       << "); minus-left order: lambda 0 " << show(m0.partial_indices) << ", 1 " << show(m1.partial_indices)
       << "; expected {2,1,1,0}, >=0 sum 4, {4,2,0,-2}";
    return Outcome{ok, os.str()};
  });

  criterion(7, "manifold dimension", 60.0, [&] {
    bool ok = true;
    std::ostringstream os;
    for (auto [l, want] : {std::pair{0.0, 8}, {0.5, 8}, {1.0, 9}}) {
      const TangentReport t = tangent_analysis({eps, l}, LiftedDisc::reference());
      ok = ok && t.determinate && t.dimension == want && t.gap >= 1e3;
      os << "lambda " << l << ": dim " << t.dimension << " gap " << t.gap << "; ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(8, "nonlinear solutions", 60.0, [&] {
    const DomainParams d{eps, 0.5};
    const int M2 = 2 * default_collocation(12);
    int worst_it = 0;
    double worst_res = 0.0, worst_con = 0.0;
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd v(8);
      for (int k = 0; k < 8; ++k) v(k) = std::normal_distribution<double>(0.0, 1.0)(gen);
      v *= 1e-3 / v.norm();
      std::array<double, 8> pins{};
      for (int k = 0; k < 8; ++k) pins[static_cast<std::size_t>(k)] = v(k);
      const SolveReport r = solve_near(d, LiftedDisc::reference(), pins);
      worst_it = std::max(worst_it, r.iterations);
      worst_res = std::max(worst_res, r.residual);
      const auto c = conormal_residuals(d, r.solution, M2);
      worst_con = std::max(worst_con, *std::max_element(c.begin(), c.end()));
    }
    std::ostringstream os;
    os << "max iterations " << worst_it << ", max residual " << worst_res << ", max conormal at 2M " << worst_con;
    return Outcome{worst_it <= 15 && worst_res < 1e-10 && worst_con < 1e-9, os.str()};
  });

  criterion(9, "stationary variety", 30.0, [&] {
    const GeodesicFamilyReport r = geodesic_family_check(lem, 4);
    const bool flag = geodesic_family_is_stationary(lem);
    std::ostringstream os;
    os << "stationary " << r.all_stationary << ", rank " << r.rank << ", samples " << r.samples;
    return Outcome{flag && r.all_stationary && r.rank == 4, os.str()};
  });

  criterion(10, "derivative hygiene", 0.0, [&] {
    const double h = 1e-5;
    double grad_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const DomainParams d{eps, uniform(0.0, 1.5)};
      const Point2 p{in_disc(d.z_radius()), in_disc(d.w_radius())};
      const auto [gz, gw] = rho_gradient(d, p);
      auto partial = [&](bool first) {
        auto at = [&](Complex delta) {
          Point2 q = p;
          (first ? q.z : q.w) += delta;
          return rho(d, q);
        };
        const double dx = (at(h) - at(-h)) / (2 * h);
        const double dy = (at(Complex(0, h)) - at(Complex(0, -h))) / (2 * h);
        return Complex(0.5 * dx, -0.5 * dy);
      };
      const double scale = std::max({std::abs(gz), std::abs(gw), 1e-3});
      grad_err = std::max(grad_err, std::max(std::abs(partial(true) - gz), std::abs(partial(false) - gw)) / scale);
    }
    const int N = 6, M = default_collocation(N);
    const double hj = 1e-6;
    double jac_err = 0.0;
    for (int i = 0; i < 50; ++i) {
      const DomainParams d{eps, uniform(0.0, 1.2)};
      LiftedDisc l = LiftedDisc::reference();
      l.coeffs.resize(static_cast<std::size_t>(N + 1), {Complex{}, Complex{}, Complex{}, Complex{}});
      for (auto& row : l.coeffs)
        for (auto& c : row) c += 0.02 * in_disc(1.0);
      const Eigen::VectorXd x = pack(l, N);
      Eigen::VectorXd v(x.size());
      for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = std::normal_distribution<double>(0.0, 1.0)(gen);
      v.normalize();
      const Eigen::VectorXd jv = residual_jacobian(d, l, N, M) * v;
      const Eigen::VectorXd fd =
          (residual_system(d, unpack(x + hj * v, N), M) - residual_system(d, unpack(x - hj * v, N), M)) / (2 * hj);
      jac_err = std::max(jac_err, (fd - jv).norm() / jv.norm());
    }
    std::ostringstream os;
    os << "gradient rel err " << grad_err << ", jacobian rel err " << jac_err;
    return Outcome{grad_err < 1e-6 && jac_err < 1e-5, os.str()};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
