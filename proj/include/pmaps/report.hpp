#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pmaps/decomposition.hpp"
#include "pmaps/det_identities.hpp"
#include "pmaps/errors.hpp"
#include "pmaps/formal_inverse.hpp"
#include "pmaps/line_analysis.hpp"
#include "pmaps/numeric_roots.hpp"
#include "pmaps/parser.hpp"
#include "pmaps/symbolic.hpp"

namespace pmaps {

using Json = nlohmann::ordered_json;

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_parse = 2, exit_precondition = 3, exit_resource = 4 };

struct CommandOptions {
  std::optional<Vector> beta;
  std::optional<Vector> gamma;
  std::optional<std::size_t> m;
  std::string kind = "det";
  std::size_t s_max = 3;
  std::optional<unsigned> max_degree;
  int digits = 6;  // precision of the floating-point node approximations; 0 omits them
};

struct CommandResult {
  int exit_code = exit_ok;
  Json report;
};

namespace report_detail {

inline Json str(const Scalar& c) { return c.to_string(); }

inline Json vec(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

inline Json polys(const std::vector<UniPoly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

inline Json map_json(const PolyMap& f) {
  Json a = Json::array();
  for (const auto& c : f.components()) a.push_back(c.to_string());
  return a;
}

inline Json matrix_json(const ScalarMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json roots_json(const UniPoly& g, int digits) {
  if (digits <= 0) return nullptr;
  Json a = Json::array();
  for (const auto& z : approximate_roots(g)) a.push_back(format_complex(z, digits));
  return a;
}

inline const Vector& need(const std::optional<Vector>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing --") + flag);
  return *v;
}

inline Json analyze(const MapDocument& doc, const CommandOptions& opt) {
  const PolyMap& f = doc.map;
  Json out;
  out["command"] = "analyze";
  out["name"] = doc.name;
  out["n"] = f.n();
  out["m"] = f.m();
  out["degree"] = f.degree();
  out["map"] = map_json(f);
  if (f.is_square()) {
    const KellerVerdict keller = keller_check(f);
    out["keller"] = keller.holds;
    out["jacobian_determinant"] = keller.determinant.to_string();
    out["keller_constant"] = keller.constant ? str(*keller.constant) : Json(nullptr);

    const SumInvertibilityVerdict sum = invertible_sum_check(f, opt.m.value_or(f.n()));
    Json s;
    s["m"] = sum.m;
    s["holds"] = sum.holds;
    s["mu"] = sum.mu ? str(*sum.mu) : Json(nullptr);
    s["determinant"] = sum.determinant.to_string();
    if (sum.mu && keller.constant) {
      Scalar expected = Scalar(static_cast<long>(sum.m)).pow(static_cast<unsigned>(f.n())) * *keller.constant;
      s["mu_equals_m_pow_n_det"] = expected == *sum.mu;
    }
    out["sum_invertible"] = std::move(s);

    const Classification cls = classify(f);
    out["classification"] = cls.positive ? "dth3-positive" : "dth3-negative";
    out["verdict"] = cls.verdict;
    if (cls.decomposition) {
      const Decomposition& d = *cls.decomposition;
      Json dj;
      dj["L"] = matrix_json(d.L);
      dj["c"] = vec(d.c);
      dj["H"] = map_json(d.H);
      dj["H_conj"] = map_json(d.H_conj);
      dj["H_additive_nilpotent"] = d.H_additive_nilpotent;
      dj["H_strongly_nilpotent"] = is_strongly_nilpotent(d.H);
      dj["recomposes"] = d.recompose_left() == f && d.recompose_right() == f;
      out["decomposition"] = std::move(dj);
    } else {
      out["decomposition"] = nullptr;
    }
  } else {
    out["keller"] = nullptr;
    out["sum_invertible"] = nullptr;
    out["classification"] = nullptr;
    out["decomposition"] = nullptr;
  }
  const InjectivityVerdict inj = injectivity_verdict(f);
  Json ij;
  ij["injective"] = inj.injective;
  ij["invertible"] = inj.invertible;
  ij["blocks"] = inj.blocks;
  ij["constant"] = inj.constant ? str(*inj.constant) : Json(nullptr);
  ij["reason"] = inj.reason;
  out["injectivity"] = std::move(ij);
  return out;
}

inline Json line(const MapDocument& doc, const CommandOptions& opt) {
  const PolyMap& f = doc.map;
  const Vector& beta = need(opt.beta, "beta");
  const Vector& gamma = need(opt.gamma, "gamma");
  require_line(f, beta, gamma);
  Json out;
  out["command"] = "line";
  out["name"] = doc.name;
  out["beta"] = vec(beta);
  out["gamma"] = vec(gamma);
  const LineRestriction lr = restrict_to_line(f, beta, gamma);
  out["restriction"] = polys(lr.g);
  out["degree_bound_d"] = line_degree_bound(f);

  const auto witness = rectifiability_witness(f, beta, gamma);
  out["rectifiable"] = witness.has_value();
  out["witness"] = witness ? vec(witness->v) : Json(nullptr);
  if (witness) {
    out["collapse_certificate"] = nullptr;
    out["cubic_probe"] = nullptr;
    return out;
  }
  const CollapseCertificate cert = collapse_certificate(f, beta, gamma);
  Json cj;
  cj["d"] = cert.d;
  cj["lambda"] = vec(cert.lambda);
  cj["power_sums"] = vec(cert.p);
  cj["node_poly"] = cert.node_poly.to_string();
  cj["node_roots_approx"] = roots_json(cert.node_poly, opt.digits);
  cj["basis"] = polys(cert.basis);
  cj["residuals"] = vec(cert.residuals);
  cj["component_residuals"] = vec(cert.component_residuals);
  cj["degenerate"] = cert.degenerate;
  out["collapse_certificate"] = std::move(cj);

  if (f.degree() <= 3) {
    const CubicProbe probe = cubic_probe(f, beta, gamma);
    Json pj;
    pj["kind"] = probe.kind == CubicProbe::Kind::collision ? "collision" : "degenerate";
    pj["shifted_beta"] = vec(probe.shifted_beta);
    pj["u1"] = probe.u1.to_string();
    pj["u2"] = probe.u2.to_string();
    pj["u20"] = str(probe.u20);
    if (probe.kind == CubicProbe::Kind::collision) {
      pj["t_squared"] = str(probe.t_squared);
      pj["ideal"] = probe.ideal.to_string();
    }
    pj["odd_parts"] = polys(probe.odd_parts);
    out["cubic_probe"] = std::move(pj);
  } else {
    out["cubic_probe"] = nullptr;
  }
  return out;
}

inline Json meanvalue(const MapDocument& doc, const CommandOptions& opt) {
  const Vector& beta = need(opt.beta, "beta");
  const Vector& gamma = need(opt.gamma, "gamma");
  const MeanValueCertificate cert = mean_value_certificate(doc.map, beta, gamma);
  Json out;
  out["command"] = "meanvalue";
  out["name"] = doc.name;
  out["beta"] = vec(beta);
  out["gamma"] = vec(gamma);
  out["d"] = cert.d;
  out["power_sums"] = vec(cert.p);
  out["node_poly"] = cert.node_poly.to_string();
  out["node_roots_approx"] = roots_json(cert.node_poly, opt.digits);
  out["lhs"] = vec(cert.lhs);
  out["rhs"] = vec(cert.rhs);
  out["residuals"] = vec(cert.residuals);
  out["holds"] = cert.holds;
  return out;
}

inline Json identities(const MapDocument& doc, const CommandOptions& opt) {
  const PolyMap& f = doc.map;
  const MatrixInvariant inv = MatrixInvariant::parse(opt.kind);
  const InvariantIdentityReport r = invariant_identity_check(f, inv, opt.m.value_or(f.n()), opt.s_max);
  Json out;
  out["command"] = "identities";
  out["name"] = doc.name;
  out["invariant"] = inv.name();
  out["blocks"] = r.blocks;
  out["invariant_degree"] = r.invariant_degree;
  out["hypothesis_holds"] = r.hypothesis_holds;
  out["hypothesis_value"] = r.hypothesis_value.to_string();
  out["mu"] = r.mu ? str(*r.mu) : Json(nullptr);
  out["propagation_guaranteed"] = r.propagation_guaranteed;
  out["s_max"] = opt.s_max;
  out["conclusion"] = r.conclusion;
  out["conclusion_holds"] = r.conclusion_holds;
  if (f.degree() <= 2 && keller_check(f).holds) {
    const QuadraticIdentityReport q = quadratic_identity_check(f, opt.s_max);
    Json qj;
    qj["jacobian_determinant"] = str(q.jacobian_determinant);
    qj["per_s"] = q.per_s;
    qj["holds"] = q.holds;
    out["quadratic_identity"] = std::move(qj);
  } else {
    out["quadratic_identity"] = nullptr;
  }
  return out;
}

inline Json inverse(const MapDocument& doc, const CommandOptions& opt) {
  const InverseResult r = truncated_inverse(doc.map, opt.max_degree);
  Json out;
  out["command"] = "inverse";
  out["name"] = doc.name;
  out["max_degree"] = r.max_degree;
  out["degree_bound_note"] = opt.max_degree ? "user supplied"
                                             : "default (deg F)^(n-1), the classical bound for polynomial automorphisms";
  out["reached_degree"] = r.reached_degree;
  out["polynomial"] = r.polynomial;
  out["inverse"] = r.inverse ? map_json(*r.inverse) : Json(nullptr);
  out["verified"] = r.inverse.has_value();
  out["reason"] = r.reason;
  return out;
}

inline Json error_json(std::string_view kind, const std::string& message) {
  Json e;
  e["error"] = {{"kind", kind}, {"message", message}};
  return e;
}

}  // namespace report_detail

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"analyze", "line", "meanvalue", "identities", "inverse"};
  return names;
}

inline CommandResult run_command(std::string_view command, const MapDocument& doc, const CommandOptions& opt = {}) {
  using namespace report_detail;
  CommandResult res;
  try {
    if (command == "analyze") {
      res.report = analyze(doc, opt);
    } else if (command == "line") {
      res.report = line(doc, opt);
    } else if (command == "meanvalue") {
      res.report = meanvalue(doc, opt);
    } else if (command == "identities") {
      res.report = identities(doc, opt);
    } else if (command == "inverse") {
      res.report = inverse(doc, opt);
    } else {
      throw PreconditionError("unknown command '" + std::string(command) + "'");
    }
  } catch (const ParseError& e) {
    res = {exit_parse, error_json("parse", e.what())};
  } catch (const PreconditionError& e) {
    res = {exit_precondition, error_json("precondition", e.what())};
  } catch (const ResourceError& e) {
    res = {exit_resource, error_json("resource", e.what())};
  } catch (const InternalError& e) {
    res = {exit_internal, error_json("internal", e.what())};
  }
  return res;
}

inline CommandResult run_command(std::string_view command, std::string_view text, const CommandOptions& opt = {}) {
  try {
    return run_command(command, parse_document(text), opt);
  } catch (const ParseError& e) {
    return {exit_parse, report_detail::error_json("parse", e.what())};
  } catch (const PreconditionError& e) {
    return {exit_precondition, report_detail::error_json("precondition", e.what())};
  }
}

}  // namespace pmaps
