#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "holodisc/disc.hpp"
#include "holodisc/kobayashi.hpp"
#include "holodisc/rhfactor.hpp"
#include "holodisc/solver.hpp"
#include "holodisc/stationary.hpp"

namespace holodisc::io {

using Json = nlohmann::ordered_json;

/// Float with 17 significant digits; non-finite values have no JSON form.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(k).dump() << (indent > 0 ? ": " : ":");
        write(os, v, indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      // numeric leaves stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        if (!flat) os << nl << pad;
        write(os, j[i], indent, depth + 1);
      }
      if (!flat) os << nl << close;
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

inline Json pair(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from(const Json& j) {
  ::holodisc::detail::require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                              "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline std::string dump(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write(os, j, indent, 0);
  return os.str();
}

inline Json to_json(const AnalyticDisc& d) {
  Json coeffs = Json::array();
  for (const auto& c : d.coeffs) coeffs.push_back(Json::array({detail::pair(c[0]), detail::pair(c[1])}));
  return Json{{"degree", d.degree()}, {"coeffs", coeffs}};
}

inline Json to_json(const LiftedDisc& d) {
  Json coeffs = Json::array();
  for (const auto& c : d.coeffs) {
    coeffs.push_back(Json::array({detail::pair(c[0]), detail::pair(c[1]), detail::pair(c[2]), detail::pair(c[3])}));
  }
  return Json{{"degree", d.degree()}, {"coeffs", coeffs}};
}

namespace detail {
template <std::size_t K>
std::vector<std::array<Complex, K>> coeffs_from(const Json& j) {
  using ::holodisc::detail::require;
  require(j.is_object() && j.contains("coeffs") && j["coeffs"].is_array(), "disc JSON needs a coeffs array");
  const Json& c = j["coeffs"];
  require(!c.empty(), "disc JSON has no coefficients");
  if (j.contains("degree")) {
    require(j["degree"].is_number_integer() && j["degree"].get<long>() + 1 == static_cast<long>(c.size()),
            "disc JSON degree does not match the coefficient count");
  }
  std::vector<std::array<Complex, K>> out;
  for (const Json& row : c) {
    require(row.is_array() && row.size() == K, "each coefficient row needs one [re, im] pair per component");
    std::array<Complex, K> a{};
    for (std::size_t k = 0; k < K; ++k) a[k] = complex_from(row[k]);
    out.push_back(a);
  }
  return out;
}
}  // namespace detail

inline AnalyticDisc disc_from_json(const Json& j) {
  AnalyticDisc d;
  d.coeffs = detail::coeffs_from<2>(j);
  return d;
}

inline LiftedDisc lifted_from_json(const Json& j) {
  LiftedDisc d;
  d.coeffs = detail::coeffs_from<4>(j);
  return d;
}

inline Json to_json(const ExtremalReport& r) {
  return Json{{"mu_best", r.mu_best},
              {"disc", to_json(r.disc)},
              {"feasibility_margin", r.feasibility_margin},
              {"evaluations", r.evaluations}};
}

inline Json to_json(const IndexReport& r, double lambda) {
  return Json{{"lambda", lambda},
              {"indices", r.partial_indices},
              {"maslov", r.maslov},
              {"stable", r.stable},
              {"truncation", r.truncation},
              {"rank_tolerance", r.rank_tolerance},
              {"kernel_profile", r.kernel_profile}};
}

inline Json to_json(const StationarityResult& r) {
  Json c = Json::array();
  for (const Complex& v : r.c_coeffs) c.push_back(detail::pair(v));
  return Json{{"stationary", r.is_stationary},
              {"verdict", to_string(r.verdict)},
              {"multiplier", c},
              {"residual", r.residual},
              {"attachment", r.attachment},
              {"min_multiplier", r.min_multiplier},
              {"fourier_size", r.fourier_size}};
}

inline Json to_json(const SolveReport& r) {
  return Json{{"solution", to_json(r.solution)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"tangent_dim", r.tangent_dim},
              {"jacobian_gap", r.jacobian_gap},
              {"pinned", r.pinned}};
}

inline Json to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const SweepRow& r : rows) {
    Json row{{"lambda", r.lambda},
             {"tangent_dim", r.tangent_dim ? Json(*r.tangent_dim) : Json(nullptr)},
             {"gap", r.gap},
             {"min_index", r.min_index ? Json(*r.min_index) : Json(nullptr)},
             {"residual", r.residual}};
    if (!r.error.empty()) row["error"] = r.error;
    out.push_back(row);
  }
  return out;
}

/// CSV with header lambda,tangent_dim,gap,min_index,residual; failed
/// diagnostics leave the field empty.
inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string(); };
  os << "lambda,tangent_dim,gap,min_index,residual\n";
  for (const SweepRow& r : rows) {
    os << format_double(r.lambda) << ',' << (r.tangent_dim ? std::to_string(*r.tangent_dim) : "") << ',' << num(r.gap)
       << ',' << (r.min_index ? std::to_string(*r.min_index) : "") << ',' << num(r.residual) << '\n';
  }
}

}  // namespace holodisc::io
