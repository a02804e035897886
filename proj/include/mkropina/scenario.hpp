#pragma once

#include "mkropina/curvature_backends.hpp"
#include "mkropina/flag_curvature.hpp"
#include "mkropina/lie_core.hpp"
#include "mkropina/metric.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mkropina {

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class Method { general, thm31, natred, biinv };

inline constexpr std::array<Method, 4> kAllMethods{Method::general, Method::thm31, Method::natred, Method::biinv};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::general: return "general";
    case Method::thm31: return "thm31";
    case Method::natred: return "natred";
    case Method::biinv: return "biinv";
  }
  return "?";
}

inline Method method_from_string(std::string_view s) {
  for (Method m : kAllMethods)
    if (to_string(m) == s) return m;
  throw ParseError("unknown method '" + std::string(s) + "' (general, thm31, natred, biinv)");
}

/// "general,thm31" -> {general, thm31}; "all" -> every method.
inline std::vector<Method> parse_method_list(std::string_view list) {
  if (list == "all") return {kAllMethods.begin(), kAllMethods.end()};
  std::vector<Method> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = list.substr(0, comma);
    if (!item.empty()) out.push_back(method_from_string(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ParseError("empty method list");
  return out;
}

struct NamedFlag {
  std::string id;
  Vector y;
  Vector u;
};

struct ScanSettings {
  int count = 0;
  std::uint64_t seed = 1;
};

struct Tolerances {
  double closed_form = 1e-10;
  double fd_oracle = 1e-6;
};

/// Which hypotheses of the curvature formulas hold for the scenario.
struct Hypotheses {
  bool parallel = false;
  bool naturally_reductive = false;
  bool trivial_isotropy = false;
  bool bi_invariant = false;

  bool applies(Method m) const {
    switch (m) {
      case Method::general:
      case Method::thm31: return parallel;
      case Method::natred: return parallel && naturally_reductive;
      case Method::biinv: return parallel && trivial_isotropy && bi_invariant;
    }
    return false;
  }
};

/// A fully validated scenario. Construction runs every structural check.
struct Scenario {
  std::string name;
  HomogeneousSpace space;
  MKropinaMetric metric;
  double sigma = -1.0;
  ProductReading reading = ProductReading::mixed;
  CurvatureBackend backend;
  std::vector<NamedFlag> flags;
  ScanSettings scan;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  Tolerances tolerances;
  Hypotheses hypotheses;
  std::vector<std::string> warnings;

  const std::vector<int>& m_indices() const { return space.decomposition.m_indices(); }
};

namespace detail {

/// Parses "3", "-0.25", "1e-3" or "p/q" exactly as written.
inline double parse_number_text(const std::string& text) {
  const auto parse_plain = [&](std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("not a number: '" + text + "'");
    return v;
  };
  std::string_view s(text);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain(s);
  const double den = parse_plain(s.substr(slash + 1));
  if (den == 0.0) throw ParseError("zero denominator in '" + text + "'");
  return parse_plain(s.substr(0, slash)) / den;
}

inline double number(const nlohmann::json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number_text(j.get<std::string>());
  throw ParseError(what + ": expected a number or a rational string");
}

inline Vector vector_field(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], what);
  return v;
}

inline Matrix matrix_field(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = vector_field(j[static_cast<std::size_t>(r)], what);
    if (row.size() != cols) throw ParseError(what + ": ragged rows");
    m.row(r) = row.transpose();
  }
  return m;
}

inline LieAlgebra algebra_field(const nlohmann::json& j) {
  if (j.is_string()) return presets::by_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("dim")) throw ParseError("algebra: expected a preset name or {dim, constants}");
  const int dim = j.at("dim").get<int>();
  std::vector<StructureConstant> constants;
  for (const auto& c : j.value("constants", nlohmann::json::array())) {
    if (!c.is_array() || c.size() != 4) throw ParseError("algebra.constants: entries are [i, j, k, value]");
    constants.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>(), number(c[3], "algebra.constants")});
  }
  std::vector<std::string> labels = j.value("labels", std::vector<std::string>{});
  return LieAlgebra(dim, constants, std::move(labels));
}

inline void require_valid(const ValidationReport& r) {
  if (!r.passed) throw ValidationError(r.detail + " (residual " + std::to_string(r.residual) + ")");
}

}  // namespace detail

inline Scenario load_scenario_json(const nlohmann::json& doc) {
  using detail::number;
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
  if (!doc.contains("algebra")) throw ParseError("scenario: missing 'algebra'");
  LieAlgebra alg = detail::algebra_field(doc.at("algebra"));
  detail::require_valid(check_jacobi(alg));
  const int n = alg.dim();

  auto dec = ReductiveDecomposition::from_h(n, doc.value("h_indices", std::vector<int>{}));
  detail::require_valid(check_ad_invariance(alg, dec));

  const Matrix gram0 = doc.contains("gram0") ? detail::matrix_field(doc.at("gram0"), "gram0") : Matrix::Identity(n, n);
  if (gram0.rows() != n || gram0.cols() != n) throw DimensionError("gram0 must be n x n");
  detail::require_valid(check_bi_invariance(alg, gram0));

  Matrix gram_m;
  const auto& mi = dec.m_indices();
  if (doc.contains("gram_m")) {
    gram_m = detail::matrix_field(doc.at("gram_m"), "gram_m");
  } else {
    gram_m.resize(static_cast<Eigen::Index>(mi.size()), static_cast<Eigen::Index>(mi.size()));
    for (std::size_t a = 0; a < mi.size(); ++a)
      for (std::size_t b = 0; b < mi.size(); ++b) gram_m(a, b) = gram0(mi[a], mi[b]);
  }
  auto pair = InnerProductPair::extend(dec, gram0, gram_m);

  if (!doc.contains("x_vec")) throw ParseError("scenario: missing 'x_vec'");
  const Vector x = detail::vector_field(doc.at("x_vec"), "x_vec");
  detail::require_size(x, n, "x_vec");
  if (dec.h_content(x) != 0.0) throw ValidationError("x_vec must lie in m");
  if (!doc.contains("m_exponent")) throw ParseError("scenario: missing 'm_exponent'");
  const double m = number(doc.at("m_exponent"), "m_exponent");
  const auto bound = doc.value("relax_norm_bound", false) ? NormBound::relaxed : NormBound::strict;

  HomogeneousSpace space(std::move(alg), std::move(dec), std::move(pair));
  MKropinaMetric metric(m, x, space.metric.gram(), bound);
  Scenario s{doc.value("name", std::string("unnamed")), std::move(space), std::move(metric)};
  s.warnings = s.metric.warnings();

  s.sigma = doc.contains("sign_convention") ? number(doc.at("sign_convention"), "sign_convention") : -1.0;
  if (s.sigma != 1.0 && s.sigma != -1.0) throw ValidationError("sign_convention must be +1 or -1");
  s.reading = reading_from_string(doc.value("product_reading", std::string("mixed")));

  if (doc.contains("methods")) {
    s.methods.clear();
    for (const auto& item : doc.at("methods")) s.methods.push_back(method_from_string(item.get<std::string>()));
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc.at("tolerances");
    if (t.contains("closed_form")) s.tolerances.closed_form = number(t.at("closed_form"), "tolerances.closed_form");
    if (t.contains("fd_oracle")) s.tolerances.fd_oracle = number(t.at("fd_oracle"), "tolerances.fd_oracle");
  }
  for (const auto& f : doc.value("flags", nlohmann::json::array())) {
    NamedFlag flag{f.value("id", "flag_" + std::to_string(s.flags.size())), detail::vector_field(f.at("Y"), "flags.Y"),
                   detail::vector_field(f.at("U"), "flags.U")};
    detail::require_size(flag.y, n, "flags.Y");
    detail::require_size(flag.u, n, "flags.U");
    s.flags.push_back(std::move(flag));
  }
  if (doc.contains("scan")) {
    const auto& sc = doc.at("scan");
    s.scan.count = sc.value("count", 0);
    s.scan.seed = sc.value("seed", std::uint64_t{1});
    if (s.scan.count < 0) throw ValidationError("scan.count must be non-negative");
  }

  s.hypotheses.parallel = check_parallel_condition(s.space, s.metric).passed;
  s.hypotheses.naturally_reductive = check_riemannian_natred(s.space).passed();
  s.hypotheses.trivial_isotropy = s.space.decomposition.trivial_isotropy();
  s.hypotheses.bi_invariant = check_bi_invariance(s.space.algebra, s.space.metric.gram()).passed;

  // "auto" takes the bracket formula when it is valid, else the general one.
  const std::string backend = doc.value("backend", std::string("auto"));
  const BackendKind kind = backend == "auto"
                               ? (s.hypotheses.naturally_reductive ? BackendKind::naturally_reductive
                                                                   : BackendKind::puttmann)
                               : backend_from_string(backend);
  s.backend = CurvatureBackend(kind, s.sigma);
  if (!s.hypotheses.parallel) s.warnings.push_back("X is not parallel: curvature formulas are computed outside their hypotheses");
  return s;
}

inline Scenario load_scenario(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    return load_scenario_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario has a malformed field: ") + e.what());
  }
}

}  // namespace mkropina
