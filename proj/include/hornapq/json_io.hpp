#pragma once

// JSON encodings shared by the CLI and the tests. Object keys come out
// sorted (nlohmann::json's default map); rationals are "num/den" strings.
// Inequality coefficients are integers when integral.

#include <json.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apqcone.hpp"
#include "combinat.hpp"
#include "horncone.hpp"
#include "numerics.hpp"
#include "polyhedra.hpp"
#include "rational.hpp"

namespace hornapq {

using Json = nlohmann::json;

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

inline Json coefficient_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

inline Rational coefficient_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("coefficient must be an integer or a \"num/den\" string");
}

inline Json subset_json(const IndexSubset& s) { return s.elems(); }

inline Json triple_json(const HornTriple& t) {
  return {{"n", t.n}, {"r", t.r}, {"I", subset_json(t.I)}, {"J", subset_json(t.J)}, {"K", subset_json(t.K)}};
}

namespace detail {

inline std::string coeff_key(const std::string& block) { return block + "_coeffs"; }

}  // namespace detail

/// {source, label, n, r, I, J, K, <block>_coeffs...}; triple fields are null
/// for forms without a triple. Systems without a layout use "coeffs".
inline Json form_json(const LinearForm& f, const std::vector<LayoutBlock>& layout) {
  Json j;
  j["source"] = f.source;
  j["label"] = f.label;
  if (f.triple) {
    j["n"] = f.triple->n;
    j["r"] = f.triple->r;
    j["I"] = subset_json(f.triple->I);
    j["J"] = subset_json(f.triple->J);
    j["K"] = subset_json(f.triple->K);
  } else {
    for (const char* key : {"n", "r", "I", "J", "K"}) j[key] = nullptr;
  }
  if (layout.empty()) {
    Json c = Json::array();
    for (const auto& q : f.coeffs) c.push_back(coefficient_json(q));
    j["coeffs"] = std::move(c);
    return j;
  }
  std::size_t offset = 0;
  for (const auto& block : layout) {
    Json c = Json::array();
    for (int k = 0; k < block.size; ++k) c.push_back(coefficient_json(f.coeffs[offset + static_cast<std::size_t>(k)]));
    j[detail::coeff_key(block.name)] = std::move(c);
    offset += static_cast<std::size_t>(block.size);
  }
  return j;
}

inline Json system_json(const ConeSystem& sys) {
  Json j;
  j["dim"] = sys.dim;
  Json layout = Json::array();
  for (const auto& b : sys.layout) {
    layout.push_back(b.name);
    layout.push_back(b.size);
  }
  j["layout"] = std::move(layout);
  j["forms"] = Json::array();
  for (const auto& f : sys.forms) j["forms"].push_back(form_json(f, sys.layout));
  j["equalities"] = Json::array();
  for (const auto& f : sys.equalities) j["equalities"].push_back(form_json(f, sys.layout));
  return j;
}

namespace detail {

inline LinearForm form_from_json(const Json& j, const ConeSystem& sys) {
  LinearForm f;
  f.source = j.value("source", std::string("input"));
  f.label = j.value("label", std::string());
  f.background = f.source == "background";
  if (j.contains("coeffs")) {
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(coefficient_from_json(c));
  } else {
    if (sys.layout.empty()) throw std::invalid_argument("form has no \"coeffs\" and the system has no layout");
    for (const auto& block : sys.layout) {
      const auto& arr = j.at(coeff_key(block.name));
      if (arr.size() != static_cast<std::size_t>(block.size))
        throw std::invalid_argument("form block '" + block.name + "' has the wrong length");
      for (const auto& c : arr) f.coeffs.push_back(coefficient_from_json(c));
    }
  }
  if (f.coeffs.size() != sys.dim) throw std::invalid_argument("form has the wrong dimension");
  auto has = [&](const char* key) { return j.contains(key) && !j.at(key).is_null(); };
  if (has("I") && has("J") && has("K") && has("n")) {
    const int n = j.at("n").get<int>();
    f.triple = HornTriple(IndexSubset(n, j.at("I").get<std::vector<int>>()), IndexSubset(n, j.at("J").get<std::vector<int>>()),
                          IndexSubset(n, j.at("K").get<std::vector<int>>()));
  }
  return f;
}

}  // namespace detail

/// Accepts the output of system_json; unknown keys are ignored.
inline ConeSystem system_from_json(const Json& j) {
  ConeSystem sys;
  try {
    sys.dim = j.at("dim").get<std::size_t>();
    if (j.contains("layout")) {
      const auto& layout = j.at("layout");
      if (layout.size() % 2 != 0) throw std::invalid_argument("layout must alternate names and sizes");
      for (std::size_t k = 0; k < layout.size(); k += 2)
        sys.layout.push_back({layout[k].get<std::string>(), layout[k + 1].get<int>()});
    }
    for (const auto& f : j.at("forms")) sys.forms.push_back(detail::form_from_json(f, sys));
    if (j.contains("equalities"))
      for (const auto& f : j.at("equalities")) sys.equalities.push_back(detail::form_from_json(f, sys));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed system JSON: ") + e.what());
  }
  sys.validate();
  return sys;
}

inline Json verdict_json(const MembershipVerdict<Rational>& v) {
  Json j;
  j["member"] = v.member;
  if (v.member) return j;
  Json cert;
  cert["lhs"] = rational_json(v.lhs);
  cert["rhs"] = rational_json(v.rhs);
  if (v.kind == VerdictKind::equality_failure) {
    cert["kind"] = "equality-failure";
  } else {
    cert["kind"] = "violation";
    cert["triple"] = triple_json(*v.triple);
  }
  j["certificate"] = std::move(cert);
  return j;
}

inline Json sparse_json(const std::vector<std::pair<std::size_t, Rational>>& entries) {
  Json out = Json::array();
  for (const auto& [i, q] : entries) out.push_back({{"index", i}, {"value", rational_json(q)}});
  return out;
}

inline Json implication_json(const ImplicationResult& r) {
  Json j;
  j["implied"] = r.implied;
  if (r.implied) {
    j["multipliers"] = sparse_json(r.form_multipliers);
    j["equality_multipliers"] = sparse_json(r.equality_multipliers);
  } else {
    j["witness"] = rationals_json(r.witness);
  }
  return j;
}

inline Json prune_json(const ConeSystem& input, const PruneResult& pr, bool certificates) {
  Json j;
  const std::size_t bg_in = input.background_count();
  const std::size_t bg_out = pr.system.background_count();
  j["input_forms"] = input.forms.size();
  j["input_nontrivial"] = input.forms.size() - bg_in;
  j["kept_forms"] = pr.system.forms.size();
  j["kept_nontrivial"] = pr.system.forms.size() - bg_out;
  j["background"] = bg_out;
  j["removed"] = pr.removed_count();
  if (certificates) {
    Json certs = Json::array();
    for (std::size_t i = 0; i < pr.verdicts.size(); ++i) {
      if (!pr.verdicts[i]) continue;
      Json c = implication_json(*pr.verdicts[i]);
      c["form"] = i;
      c["label"] = input.forms[i].label;
      certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);
  }
  return j;
}

inline Json cone_equal_json(const ConeEqualResult& r, bool certificates) {
  Json j;
  j["equal"] = r.equal;
  j["checked_a_in_b"] = r.a_in_b.size();
  j["checked_b_in_a"] = r.b_in_a.size();
  if (r.separation) {
    const auto& s = *r.separation;
    j["separation"] = {{"system", std::string(1, s.system)},
                       {"index", s.index},
                       {"equality", s.equality},
                       {"negated", s.negated},
                       {"witness", rationals_json(s.witness)}};
  }
  if (certificates) {
    Json a = Json::array(), b = Json::array();
    for (const auto& c : r.a_in_b) a.push_back(implication_json(c));
    for (const auto& c : r.b_in_a) b.push_back(implication_json(c));
    j["certificates_a_in_b"] = std::move(a);
    j["certificates_b_in_a"] = std::move(b);
  }
  return j;
}

inline Json real_json(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

inline Json sample_report_json(const SampleReport& r) {
  Json j;
  j["p"] = r.p;
  j["q"] = r.q;
  j["count"] = r.count;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["min_slack"] = real_json(r.min_slack);
  j["violations"] = Json::array();
  for (const auto& v : r.violations) j["violations"].push_back({{"sample", v.sample}, {"form", v.form}, {"slack", v.slack}});
  return j;
}

inline Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json realize_json(const RealizeResult& r) {
  Json j;
  j["status"] = r.success ? "success" : "unknown";
  j["iterations"] = r.iterations;
  j["eigen_residual"] = real_json(r.eigen_residual);
  j["singular_residual"] = real_json(r.singular_residual);
  if (r.witness) j["matrix"] = matrix_json(r.witness->matrix());
  return j;
}

inline Json apq_inequality_json(const ApqInequality& f) {
  Json j;
  j["source"] = to_string(f.source);
  j["label"] = f.label;
  j["lambda_coeffs"] = f.lambda_coeffs;
  j["s_coeffs"] = f.s_coeffs;
  if (f.triple) {
    j["r"] = f.triple->r;
    j["I"] = subset_json(f.triple->I);
    j["J"] = subset_json(f.triple->J);
    j["K"] = subset_json(f.triple->K);
  } else {
    for (const char* key : {"r", "I", "J", "K"}) j[key] = nullptr;
  }
  return j;
}

inline Json partition_json(const Partition& p) { return p.parts(); }

inline Json audit_json(const AuditReport& a) {
  Json j;
  j["point"] = {{"p", a.point.p()}, {"q", a.point.q()}, {"lambda", rationals_json(a.point.lambda().entries())},
                {"s", rationals_json(a.point.s().entries())}};
  j["disputed_triples"] = Json::array();
  for (const auto& d : a.disputed) {
    Json t = triple_json(d.triple);
    t["id"] = d.id;
    t["member"] = d.in_lr_table;
    t["mu"] = {partition_json(d.mu_I), partition_json(d.mu_J), partition_json(d.mu_K)};
    t["horn3_verdict"] = verdict_json(d.horn3);
    t["inequality"] = apq_inequality_json(d.form);
    j["disputed_triples"].push_back(std::move(t));
  }
  j["counterexample_slacks"] = Json::array();
  for (const auto& s : a.counterexample_slacks)
    j["counterexample_slacks"].push_back({{"id", s.id}, {"inequality", apq_inequality_json(s.form)}, {"slack", rational_json(s.slack)}});
  j["membership"] = {{"direct", verdict_json(a.direct)}, {"reduction", verdict_json(a.reduction)}};
  const auto& c = a.conclusion;
  j["conclusion"] = {{"disputed_triples_in_lr", c.disputed_triples_in_lr},
                     {"point_violates_line_1", c.point_violates_line1},
                     {"point_violates_line_2", c.point_violates_line2},
                     {"point_satisfies_all_fflp", c.point_satisfies_all_fflp},
                     {"point_in_cone_direct", c.point_in_cone_direct},
                     {"point_in_cone_reduction", c.point_in_cone_reduction},
                     {"counterexample_refuted", c.counterexample_refuted},
                     {"summary", c.summary}};
  return j;
}

}  // namespace hornapq
