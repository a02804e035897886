#pragma once

#include "mkropina/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <limits>
#include <sstream>

namespace mkropina {

/// One evaluated flag.
struct ReportRow {
  std::string flag_id;
  bool admissible = false;
  std::optional<double> k_general;
  std::optional<double> k_thm31;
  std::optional<double> k_natred;
  std::optional<double> k_biinv;
  std::optional<double> g_yy;
  std::optional<double> g_uu;
  std::optional<double> g_uy;
  /// g_Y(Y,Y) g_Y(U,U) - g_Y(U,Y)^2 on the orthonormalized flag.
  std::optional<double> eqn_n;
  /// Largest pairwise gap between the methods whose hypotheses hold.
  std::optional<double> max_residual;
  std::vector<std::string> notes;

  bool operator==(const ReportRow&) const = default;
};

inline std::optional<double>& row_value(ReportRow& row, Method m) {
  switch (m) {
    case Method::general: return row.k_general;
    case Method::thm31: return row.k_thm31;
    case Method::natred: return row.k_natred;
    case Method::biinv: return row.k_biinv;
  }
  return row.k_general;
}

inline double method_curvature(const Scenario& s, Method m, const Flag& flag,
                               TensorSource source = TensorSource::closed_form) {
  switch (m) {
    case Method::general: return flag_curvature_general(s.space, s.metric, s.backend, flag, source).k;
    case Method::thm31: return flag_curvature_thm31(s.space, s.metric, flag, s.sigma, s.reading).k;
    case Method::natred: return flag_curvature_natred(s.space, s.metric, flag).k;
    case Method::biinv: return flag_curvature_biinv(s.space, s.metric, flag).k;
  }
  return 0.0;
}

inline ReportRow evaluate_flag(const Scenario& s, const std::string& id, const Vector& y, const Vector& u,
                               const std::vector<Method>& methods) {
  ReportRow row;
  row.flag_id = id;
  const auto adm = check_flag_admissible(s.metric, y, u, s.m_indices());
  row.admissible = adm.admissible();
  if (!row.admissible) {
    row.notes = adm.reasons;
    return row;
  }
  Flag flag{y, u, is_orthonormal(s.metric.gram(), y, u)};
  if (!flag.orthonormal) {
    flag = orthonormalize_flag(s.metric.gram(), y, u);
    row.notes.push_back("flag orthonormalized by Gram-Schmidt");
  }
  const TensorEvalContext ctx(s.metric, flag.y);
  row.g_yy = g_closed(ctx, flag.y, flag.y);
  row.g_uu = g_closed(ctx, flag.u, flag.u);
  row.g_uy = g_closed(ctx, flag.u, flag.y);
  row.eqn_n = *row.g_yy * *row.g_uu - *row.g_uy * *row.g_uy;

  std::vector<double> trusted;
  for (Method m : methods) {
    row_value(row, m) = method_curvature(s, m, flag);
    if (s.hypotheses.applies(m)) {
      trusted.push_back(*row_value(row, m));
    } else {
      row.notes.push_back(std::string(to_string(m)) + ": hypotheses do not hold for this scenario");
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < trusted.size(); ++a)
    for (std::size_t b = a + 1; b < trusted.size(); ++b)
      worst = std::max(worst, detail::relative_gap(trusted[a], trusted[b]));
  row.max_residual = worst;
  return row;
}

inline std::vector<ReportRow> curvature_rows(const Scenario& s, const std::vector<Method>& methods) {
  std::vector<ReportRow> rows;
  for (const auto& f : s.flags) rows.push_back(evaluate_flag(s, f.id, f.y, f.u, methods));
  return rows;
}

inline std::string scan_id(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scan_%04d", i);
  return buf;
}

inline std::vector<ReportRow> scan_rows(const Scenario& s, const std::vector<Method>& methods, int count,
                                        std::uint64_t seed) {
  const auto flags = sample_flags(s.metric, s.m_indices(), count, seed);
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    rows.push_back(evaluate_flag(s, scan_id(static_cast<int>(i)), flags[i].y, flags[i].u, methods));
  }
  return rows;
}

// ---------------------------------------------------------------- emission

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

/// Quotes text that contains a comma or a quote.
inline std::string csv_text(const std::string& t) {
  if (t.find_first_of(",\"\n") == std::string::npos) return t;
  std::string out = "\"";
  for (char c : t) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* kRowCsvHeader = "flag_id,admissible,K_general,K_thm31,K_natred,K_biinv,g_YY,g_UU,g_UY,eqn_n,max_residual";

inline std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kRowCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_text(r.flag_id) << ',' << (r.admissible ? "true" : "false") << ',' << csv_field(r.k_general) << ','
        << csv_field(r.k_thm31) << ',' << csv_field(r.k_natred) << ',' << csv_field(r.k_biinv) << ','
        << csv_field(r.g_yy) << ',' << csv_field(r.g_uu) << ',' << csv_field(r.g_uy) << ',' << csv_field(r.eqn_n)
        << ',' << csv_field(r.max_residual) << '\n';
  }
  return out.str();
}

namespace detail {

inline nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline std::optional<double> optional_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json row_to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["flag_id"] = r.flag_id;
  j["admissible"] = r.admissible;
  j["K_general"] = detail::optional_json(r.k_general);
  j["K_thm31"] = detail::optional_json(r.k_thm31);
  j["K_natred"] = detail::optional_json(r.k_natred);
  j["K_biinv"] = detail::optional_json(r.k_biinv);
  j["g_YY"] = detail::optional_json(r.g_yy);
  j["g_UU"] = detail::optional_json(r.g_uu);
  j["g_UY"] = detail::optional_json(r.g_uy);
  j["eqn_n"] = detail::optional_json(r.eqn_n);
  j["max_residual"] = detail::optional_json(r.max_residual);
  j["notes"] = r.notes;
  return j;
}

/// {"scenario": name, "rows": [...]}; numbers are written in the shortest
/// form that reads back to the same double.
inline std::string rows_to_json(const std::string& scenario_name, const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario_name;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) doc["rows"].push_back(row_to_json(r));
  return doc.dump(2) + "\n";
}

inline std::vector<ReportRow> rows_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<ReportRow> rows;
  for (const auto& j : doc.at("rows")) {
    ReportRow r;
    r.flag_id = j.at("flag_id").get<std::string>();
    r.admissible = j.at("admissible").get<bool>();
    r.k_general = detail::optional_from_json(j, "K_general");
    r.k_thm31 = detail::optional_from_json(j, "K_thm31");
    r.k_natred = detail::optional_from_json(j, "K_natred");
    r.k_biinv = detail::optional_from_json(j, "K_biinv");
    r.g_yy = detail::optional_from_json(j, "g_YY");
    r.g_uu = detail::optional_from_json(j, "g_UU");
    r.g_uy = detail::optional_from_json(j, "g_UY");
    r.eqn_n = detail::optional_from_json(j, "eqn_n");
    r.max_residual = detail::optional_from_json(j, "max_residual");
    r.notes = j.value("notes", std::vector<std::string>{});
    rows.push_back(std::move(r));
  }
  return rows;
}

// ------------------------------------------------------------ check / verify

/// One line of the `check` or `verify` tables.
struct CheckRow {
  std::string check;
  bool passed = true;
  std::optional<double> residual;
  std::optional<double> tolerance;
  int samples = 0;
  std::string witness;
};

inline std::vector<CheckRow> structural_checks(const Scenario& s, const LatifiSampling& latifi = {}) {
  const auto& alg = s.space.algebra;
  std::vector<CheckRow> rows;
  const auto add = [&](const std::string& name, const ValidationReport& r, double tol) {
    rows.push_back({name, r.passed, r.residual, tol, 0, r.passed ? "" : alg.describe(r.witness)});
  };
  add("jacobi", check_jacobi(alg), kStructureTolerance);
  add("ad_invariance", check_ad_invariance(alg, s.space.decomposition), kStructureTolerance);
  add("gram0_bi_invariant", check_bi_invariance(alg, s.space.metric.gram0()), kStructureTolerance);
  rows.push_back({"norm_bound", s.metric.x_norm() < 1.0, s.metric.x_norm(), 1.0, 0,
                  s.metric.norm_bound() == NormBound::relaxed ? "relaxed" : ""});

  const auto reduct = theorem41_report(s.space, s.metric, latifi);
  add("parallel_bracket_orthogonality", reduct.parallel.bracket_orthogonality, kStructureTolerance);
  add("parallel_skew_adjoint", reduct.parallel.skew_adjoint, kStructureTolerance);
  add("parallel_isotropy_fixed", reduct.parallel.isotropy, kStructureTolerance);
  add("riemannian_natred", reduct.riemannian.standard, kRiemannianNatredTolerance);
  rows.push_back({"riemannian_natred_alternate_form", reduct.riemannian.alternate_residual <= kRiemannianNatredTolerance,
                  reduct.riemannian.alternate_residual, kRiemannianNatredTolerance, 0,
                  reduct.riemannian.alternate_residual <= kRiemannianNatredTolerance
                      ? ""
                      : alg.describe(reduct.riemannian.alternate_witness)});
  rows.push_back({"latifi_natred", reduct.latifi.passed, reduct.latifi.residual, kLatifiTolerance, reduct.latifi.poles,
                  reduct.latifi.passed ? "" : alg.describe(reduct.latifi.witness)});
  rows.push_back({"reductivity_equivalence", reduct.equivalence != Equivalence::inconsistent, std::nullopt, std::nullopt, 0,
                  std::string(to_string(reduct.equivalence))});

  const double b0 = s.metric.x_norm();
  if (b0 > 0.0 && b0 < 1.0) {
    const auto conv = check_strong_convexity(s.metric.exponent(), b0, ConvexityGrid::uniform(b0, 100));
    std::string witness;
    if (conv.first_failure) {
      witness = "s=" + format_double(conv.first_failure->s) + " b=" + format_double(conv.first_failure->b);
    }
    rows.push_back({"strong_convexity_grid", conv.valid, conv.form_discrepancy, std::nullopt, conv.nodes_checked,
                    witness});
  }
  return rows;
}

namespace detail {

/// Keeps the worst value of one verify check and the sample count.
struct Tracker {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  int samples = 0;
  bool forced_failure = false;
  std::string witness;

  void offer(double v, const std::string& where = {}) {
    ++samples;
    if (!(v <= worst)) {  // also catches NaN
      worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
      witness = where;
    }
  }

  CheckRow row() const {
    return {name, !forced_failure && worst <= tolerance, worst, tolerance, samples, worst <= tolerance ? "" : witness};
  }
};

/// Largest entry of g_Y over the basis of m; the size against which
/// finite-difference Cartan values are compared.
inline double tensor_scale(const Scenario& s, const Vector& y) {
  return hessian_matrix(s.metric, y, s.m_indices()).cwiseAbs().maxCoeff();
}

}  // namespace detail

inline constexpr double kCartanSymmetryTolerance = 1e-8;
inline constexpr double kCartanPatternTolerance = 1e-7;
inline constexpr double kBackendTolerance = 1e-12;

/// Oracle cross-checks on `count` seeded flags. Every check reports its worst
/// residual, its tolerance and how many evaluations it covered.
inline std::vector<CheckRow> verify_checks(const Scenario& s, int count, std::uint64_t seed) {
  using detail::Tracker;
  const auto& mi = s.m_indices();
  const auto& alg = s.space.algebra;
  const double tol_closed = s.tolerances.closed_form;
  const double tol_fd = s.tolerances.fd_oracle;

  Tracker fd{"g_fd_oracle", tol_fd}, homog{"homogeneity", tol_closed}, ident{"identity_suite", tol_closed},
      agree{"method_agreement", tol_closed}, general_fd{"general_fd", tol_fd},
      cartan_sym{"cartan_symmetry", kCartanSymmetryTolerance}, pattern{"cartan_pattern", kCartanPatternTolerance},
      orth{"curvature_pole_orthogonal", kBackendTolerance};

  const auto flags = sample_flags(s.metric, mi, count, seed);
  SphereSampler extra(s.metric.gram(), mi, seed ^ 0x9e3779b97f4a7c15ULL);
  const auto id = [](std::size_t i) { return scan_id(static_cast<int>(i)); };

  for (std::size_t i = 0; i < flags.size(); ++i) {
    const Flag& f = flags[i];
    const Vector v = extra.next();
    const Vector z = extra.next();
    const TensorEvalContext ctx(s.metric, f.y);

    for (const auto& [a, b] : {std::pair{&f.u, &v}, std::pair{&f.y, &f.y}, std::pair{&f.u, &f.u}}) {
      const double closed = g_closed(ctx, *a, *b);
      fd.offer(std::abs(closed - g_fd_oracle(s.metric, f.y, *a, *b)) / (1.0 + std::abs(closed)), id(i));
    }
    for (double lambda : {1.0, 0.37, 2.9}) {
      const Vector y = lambda * f.y;
      const double f2 = s.metric.norm_squared(y);
      homog.offer(std::abs(g_closed(TensorEvalContext(s.metric, y), y, y) - f2) / f2, id(i));
    }
    const auto suite = eqn_identity_suite(ctx, f.u);
    ident.offer(suite.max(), id(i));
    if (!(suite.det_value > 0.0)) {
      ident.forced_failure = true;
      ident.witness = id(i) + " non-positive determinant";
    }

    std::vector<double> closed_values;
    for (Method m : kAllMethods) {
      if (s.hypotheses.applies(m)) closed_values.push_back(method_curvature(s, m, f));
    }
    for (std::size_t a = 1; a < closed_values.size(); ++a) {
      agree.offer(detail::relative_gap(closed_values[a], closed_values[0]), id(i));
    }
    if (s.hypotheses.parallel) {
      const double k_closed = method_curvature(s, Method::general, f);
      const double k_fd = method_curvature(s, Method::general, f, TensorSource::fd_oracle);
      general_fd.offer(detail::relative_gap(k_fd, k_closed), id(i));
    }

    // Cartan values are compared against the size of g_Y at the pole.
    const double scale = 1.0 + detail::tensor_scale(s, f.y);
    const double c = cartan(s.metric, f.y, z, f.u, v);
    double sym = 0.0;
    sym = std::max(sym, std::abs(c - cartan(s.metric, f.y, f.u, z, v)));
    sym = std::max(sym, std::abs(c - cartan(s.metric, f.y, z, v, f.u)));
    sym = std::max(sym, std::abs(c - cartan(s.metric, f.y, v, f.u, z)));
    sym = std::max(sym, std::abs(cartan(s.metric, f.y, f.y, f.u, v)));
    cartan_sym.offer(sym / scale, id(i));

    const auto p = cartan_pattern_closed(s.space, s.metric, z, f.y, f.u, v);
    if (p.preconditions_met()) {
      const double direct = 2.0 * cartan(s.metric, f.y, s.space.bracket_m(z, f.y), f.u, v);
      pattern.offer(std::abs(p.value - direct) / scale, id(i));
    }

    const Vector r = curvature_vector(s.space, s.backend, f.u, f.y);
    orth.offer(std::abs(s.space.inner(r, f.y)), id(i));
  }

  // Backend agreement on basis 4-tuples of m wherever two backends are valid.
  Tracker backends{"backend_agreement", kBackendTolerance};
  if (s.hypotheses.naturally_reductive) {
    const bool with_biinv = s.hypotheses.trivial_isotropy && s.hypotheses.bi_invariant;
    for (int x : mi)
      for (int y : mi) {
        const Vector ex = alg.basis(x), ey = alg.basis(y);
        const Vector nat = natred_curvature(s.space, ex, ey);
        const Vector bi = biinv_curvature(alg, ex, ey);
        for (int w : mi) {
          const Vector ew = alg.basis(w);
          const double putt = puttmann_scalar(s.space, ex, ey, ey, ew, s.sigma);
          double gap = std::abs(putt - s.space.inner(nat, ew));
          if (with_biinv) gap = std::max(gap, std::abs(putt - s.space.inner(bi, ew)));
          backends.offer(gap, alg.describe({x, y, y, w}));
        }
      }
  }

  const auto reduct = theorem41_report(s.space, s.metric);
  CheckRow equivalence{"reductivity_equivalence", reduct.equivalence != Equivalence::inconsistent, reduct.latifi.residual, kLatifiTolerance,
                     reduct.latifi.poles, std::string(to_string(reduct.equivalence))};
  if (reduct.parallel.passed && reduct.riemannian.passed() && !reduct.latifi.passed) equivalence.passed = false;

  return {fd.row(),         homog.row(),   ident.row(),    agree.row(),    general_fd.row(),
          cartan_sym.row(), pattern.row(), equivalence,      backends.row(), orth.row()};
}

inline std::string checks_to_csv(const std::vector<CheckRow>& rows, bool with_tolerance) {
  std::ostringstream out;
  out << (with_tolerance ? "check,max_residual,tolerance,passed,samples\n" : "check,passed,residual,witness\n");
  for (const auto& r : rows) {
    if (with_tolerance) {
      out << r.check << ',' << csv_field(r.residual) << ',' << csv_field(r.tolerance) << ','
          << (r.passed ? "true" : "false") << ',' << r.samples << '\n';
    } else {
      out << r.check << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.residual) << ',' << csv_text(r.witness)
          << '\n';
    }
  }
  return out.str();
}

inline std::string checks_to_json(const std::string& scenario_name, const std::vector<CheckRow>& rows) {
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario_name;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["passed"] = r.passed;
    j["residual"] = detail::optional_json(r.residual);
    j["tolerance"] = detail::optional_json(r.tolerance);
    j["samples"] = r.samples;
    j["witness"] = r.witness;
    doc["checks"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace mkropina
