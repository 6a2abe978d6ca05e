// Command-line front end: every report goes to stdout as JSON (or CSV for
// sweeps), diagnostics to stderr.
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holodisc/holodisc.hpp"
#include "holodisc/io.hpp"

namespace {

using holodisc::Complex;
using holodisc::io::Json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw holodisc::ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw holodisc::ValidationError(path + ": " + e.what());
  }
}

void emit(const Json& j) { std::cout << holodisc::io::dump(j) << '\n'; }

Json complex_pair(Complex c) { return Json::array({c.real(), c.imag()}); }

struct GeodesicArgs {
  double eps = 0.01, theta0 = 0.0, x0 = 0.5, z1_re = 0.0, z1_im = 0.0, b_re = 0.0, b_im = 0.0;
};

void verify_geodesic(const GeodesicArgs& a) {
  const holodisc::GeodesicParams p{a.theta0, a.x0, {a.z1_re, a.z1_im}, {a.b_re, a.b_im}};
  const auto disc = holodisc::disc_geodesic(a.eps, p);
  const holodisc::DomainParams dom{a.eps, 1.0};
  const auto at0 = holodisc::eval(disc, 0.0);
  const auto atx = holodisc::eval(disc, Complex(a.x0));
  const auto [z1, b] = holodisc::recover_params(disc, p.z0());
  const double interp = std::max(std::abs(atx.z - p.z0()), std::abs(atx.w - p.z1));
  const double roundtrip = std::max(std::abs(z1 - p.z1), std::abs(b - p.b));
  emit(Json{{"disc", holodisc::io::to_json(disc)},
            {"boundary_residual", holodisc::boundary_residual(dom, disc, 256)},
            {"f_at_0", Json::array({complex_pair(at0.z), complex_pair(at0.w)})},
            {"f_at_x0", Json::array({complex_pair(atx.z), complex_pair(atx.w)})},
            {"interpolation_error", interp},
            {"recovered", Json{{"z1", complex_pair(z1)}, {"b", complex_pair(b)}}},
            {"roundtrip_error", roundtrip}});
}

void distance(double eps, Complex z0, Complex z1) {
  const holodisc::DomainParams dom{eps, 1.0};
  const double d = holodisc::distance_from_origin(dom, z0, z1);
  const double lower = holodisc::bound_via_projection(dom, {0.0, 0.0}, {z0, z1});
  Json upper = nullptr;
  if (auto g = holodisc::geodesic_through(eps, z0, z1)) {
    const auto disc = holodisc::disc_geodesic(eps, *g);
    upper = holodisc::bound_via_disc(dom, disc, 0.0, Complex(g->x0));
  }
  emit(Json{{"distance", d}, {"lower_bound", lower}, {"upper_bound", upper}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant discs of the domains Omega_lambda"};
  app.require_subcommand(1);

  GeodesicArgs geo;
  auto* vg = app.add_subcommand("verify-geodesic", "Boundary residual, interpolation and parameter roundtrip");
  vg->add_option("--theta0", geo.theta0)->required();
  vg->add_option("--x0", geo.x0)->required();
  vg->add_option("--z1-re", geo.z1_re)->required();
  vg->add_option("--z1-im", geo.z1_im)->required();
  vg->add_option("--b-re", geo.b_re)->required();
  vg->add_option("--b-im", geo.b_im)->required();
  vg->add_option("--eps", geo.eps);

  double eps = 0.01;
  double z0_re = 0, z0_im = 0, z1_re = 0, z1_im = 0;
  auto* dist = app.add_subcommand("distance", "Kobayashi distance from the origin with independent bounds");
  dist->add_option("--z0-re", z0_re)->required();
  dist->add_option("--z0-im", z0_im)->required();
  dist->add_option("--z1-re", z1_re)->required();
  dist->add_option("--z1-im", z1_im)->required();
  dist->add_option("--eps", eps);

  double c = 0.0, lambda = 1.0;
  int degree = 6;
  holodisc::ExtremalOptions xopts;
  auto* ext = app.add_subcommand("extremal", "Numerical extremal disc search");
  ext->add_option("--c", c)->required();
  ext->add_option("--z0-re", z0_re)->required();
  ext->add_option("--z0-im", z0_im)->required();
  ext->add_option("--degree", degree)->required();
  ext->add_option("--budget", xopts.budget)->required();
  ext->add_option("--seed", xopts.seed);
  ext->add_option("--lambda", lambda);
  ext->add_option("--eps", eps);

  std::string disc_file;
  int mult_degree = -1;
  auto* st = app.add_subcommand("stationary-test", "Fourier stationarity test of a disc");
  st->add_option("--disc-file", disc_file)->required();
  st->add_option("--lambda", lambda)->required();
  st->add_option("--multiplier-degree", mult_degree, "default 2N+2");
  st->add_option("--eps", eps);

  int truncation = 128;
  double rank_tol = 1e-8;
  std::string order = "plus-left";
  auto* ix = app.add_subcommand("indices", "Maslov and partial indices of the linearised symbol");
  ix->add_option("--lambda", lambda)->required();
  ix->add_option("--truncation", truncation);
  ix->add_option("--rank-tol", rank_tol);
  ix->add_option("--order", order, "factor order of A = A+ Lambda A- (plus-left) or A- Lambda A+ (minus-left)")
      ->check(CLI::IsMember({"plus-left", "minus-left"}));

  std::string pins_file;
  holodisc::SolveOptions sopts;
  auto* solve = app.add_subcommand("solve", "Pinned Newton solve near the reference lift");
  solve->add_option("--lambda", lambda)->required();
  solve->add_option("--pins-file", pins_file)->required();
  solve->add_option("--degree", sopts.degree);
  solve->add_option("--tol", sopts.tol);
  solve->add_option("--eps", eps);

  double lmin = 0.0, lmax = 1.0;
  int steps = 10, sweep_degree = 12;
  std::string out = "csv";
  auto* sw = app.add_subcommand("sweep", "Tangent dimension and minimal partial index over lambda");
  sw->add_option("--lambda-min", lmin)->required();
  sw->add_option("--lambda-max", lmax)->required();
  sw->add_option("--steps", steps, "number of intervals; steps + 1 values")->required();
  sw->add_option("--out", out)->check(CLI::IsMember({"csv", "json"}));
  sw->add_option("--degree", sweep_degree);
  sw->add_option("--eps", eps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*vg) {
      verify_geodesic(geo);
    } else if (*dist) {
      distance(eps, {z0_re, z0_im}, {z1_re, z1_im});
    } else if (*ext) {
      const auto rep = holodisc::extremal_search({eps, lambda}, c, {z0_re, z0_im}, degree, xopts);
      emit(holodisc::io::to_json(rep));
    } else if (*st) {
      const auto disc = holodisc::io::disc_from_json(read_json_file(disc_file));
      const int K = mult_degree >= 0 ? mult_degree : 2 * disc.degree() + 2;
      const auto r = holodisc::stationarity_test_fourier({eps, lambda}, disc, 8 * (disc.degree() + K), K);
      emit(holodisc::io::to_json(r));
    } else if (*ix) {
      const auto ord = order == "plus-left" ? holodisc::FactorOrder::plus_left : holodisc::FactorOrder::minus_left;
      const auto rep = holodisc::partial_indices(holodisc::build_symbol_A(lambda), truncation, rank_tol, ord);
      Json j = holodisc::io::to_json(rep, lambda);
      j["order"] = order;
      j["globevnik"] = rep.stable ? Json(holodisc::globevnik_criterion(rep)) : Json(nullptr);
      emit(j);
      if (!rep.stable) {
        std::cerr << "partial indices unstable under truncation doubling\n";
        return kExitNumerical;
      }
    } else if (*solve) {
      const Json pj = read_json_file(pins_file);
      const Json& arr = pj.is_object() && pj.contains("pins") ? pj["pins"] : pj;
      if (!arr.is_array() || arr.size() != 8) throw holodisc::ValidationError("pins file must hold 8 numbers");
      std::array<double, 8> pins{};
      for (std::size_t i = 0; i < 8; ++i) {
        if (!arr[i].is_number()) throw holodisc::ValidationError("pins must be numbers");
        pins[i] = arr[i].get<double>();
      }
      const auto rep = holodisc::solve_near({eps, lambda}, holodisc::LiftedDisc::reference(), pins, sopts);
      emit(holodisc::io::to_json(rep));
    } else if (*sw) {
      if (steps < 0) throw holodisc::ValidationError("steps must be nonnegative");
      if (!(lmax >= lmin)) throw holodisc::ValidationError("need lambda-max >= lambda-min");
      std::vector<double> lambdas;
      for (int i = 0; i <= steps; ++i) lambdas.push_back(steps == 0 ? lmin : lmin + (lmax - lmin) * i / steps);
      const auto rows = holodisc::lambda_sweep(eps, lambdas, sweep_degree);
      if (out == "csv") {
        holodisc::io::write_csv(std::cout, rows);
      } else {
        emit(holodisc::io::to_json(rows));
      }
    }
  } catch (const holodisc::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const holodisc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
