#pragma once

// The cone A(p,q) of pairs (spectrum of X, singular spectrum of the
// off-diagonal p x q block of X): its competing inequality systems, exact
// membership through two independent routes, and the audit of the disputed
// A(3,3) example.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "horncone.hpp"
#include "polyhedra.hpp"
#include "rational.hpp"

namespace hornapq {

/// (lambda, s) with lambda in R^{p+q} weakly decreasing and s in R^q weakly
/// decreasing and nonnegative; p >= q >= 1.
class SpectrumPair {
 public:
  SpectrumPair(int p, int q, RatTuple lambda, RatTuple s) : p_(p), q_(q), lambda_(std::move(lambda)), s_(std::move(s)) {
    if (q < 1 || p < q) throw std::invalid_argument("SpectrumPair: need p >= q >= 1");
    if (lambda_.size() != static_cast<std::size_t>(p + q))
      throw std::invalid_argument("SpectrumPair: lambda must have length p+q");
    if (s_.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("SpectrumPair: s must have length q");
    if (s_[s_.size() - 1] < 0) throw std::invalid_argument("SpectrumPair: s must be nonnegative");
  }

  SpectrumPair(int p, int q, std::vector<Rational> lambda, std::vector<Rational> s)
      : SpectrumPair(p, q, RatTuple(std::move(lambda)), RatTuple(std::move(s))) {}

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_; }
  const RatTuple& lambda() const { return lambda_; }
  const RatTuple& s() const { return s_; }

  /// Coordinates in the (lambda_1..lambda_n, s_1..s_q) layout.
  std::vector<Rational> point() const {
    std::vector<Rational> v = lambda_.entries();
    v.insert(v.end(), s_.entries().begin(), s_.entries().end());
    return v;
  }

 private:
  int p_, q_;
  RatTuple lambda_, s_;
};

/// nu(s) = (s_1, ..., s_q, 0 (p - q times), -s_q, ..., -s_1).
template <class T>
Decreasing<T> nu(const Decreasing<T>& s, int p, int q) {
  if (q < 1 || p < q) throw std::invalid_argument("nu: need p >= q >= 1");
  if (s.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("nu: s must have length q");
  if (s[s.size() - 1] < T(0)) throw std::invalid_argument("nu: s must be nonnegative");
  std::vector<T> out(static_cast<std::size_t>(p + q), T(0));
  for (int k = 0; k < q; ++k) {
    out[k] = s[k];
    out[p + q - 1 - k] = -s[k];
  }
  return Decreasing<T>(std::move(out));
}

/// lambda* = (-lambda_n, ..., -lambda_1).
template <class T>
Decreasing<T> lambda_star(const Decreasing<T>& lambda) {
  std::vector<T> out(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) out[i] = -lambda[lambda.size() - 1 - i];
  return Decreasing<T>(std::move(out));
}

enum class ApqSource { oshea_sjamaar, restricted, fflp, background };

inline std::string to_string(ApqSource s) {
  switch (s) {
    case ApqSource::oshea_sjamaar: return "oshea-sjamaar";
    case ApqSource::restricted: return "restricted";
    case ApqSource::fflp: return "fflp";
    case ApqSource::background: return "background";
  }
  return "?";
}

enum class ApqVariant { full, restricted, fflp };

inline ApqVariant parse_variant(const std::string& name) {
  if (name == "full") return ApqVariant::full;
  if (name == "restricted") return ApqVariant::restricted;
  if (name == "fflp") return ApqVariant::fflp;
  throw std::invalid_argument("unknown variant '" + name + "' (expected full, restricted or fflp)");
}

/// lambda_coeffs . lambda + s_coeffs . s >= 0, integer coefficients.
struct ApqInequality {
  ApqSource source = ApqSource::oshea_sjamaar;
  std::optional<HornTriple> triple;
  std::vector<int> lambda_coeffs;
  std::vector<int> s_coeffs;
  std::string label;

  LinearForm to_form() const {
    LinearForm f;
    for (int c : lambda_coeffs) f.coeffs.emplace_back(c);
    for (int c : s_coeffs) f.coeffs.emplace_back(c);
    f.label = label;
    f.source = to_string(source);
    f.triple = triple;
    f.background = source == ApqSource::background;
    return f;
  }
};

namespace detail {

inline std::string describe(const std::vector<int>& lc, const std::vector<int>& sc) {
  std::string out;
  auto term = [&out](int c, const char* name, std::size_t idx) {
    if (c == 0) return;
    int mag = c < 0 ? -c : c;
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mag != 1) out += std::to_string(mag);
    out += name + std::to_string(idx + 1);
  };
  for (std::size_t i = 0; i < lc.size(); ++i) term(lc[i], "l", i);
  for (std::size_t k = 0; k < sc.size(); ++k) term(sc[k], "s", k);
  if (out.empty()) out = "0";
  return out + " >= 0";
}

}  // namespace detail

/// Instantiates |lambda|_I - |lambda|_{J°} >= 2|s|_{K∩[q]} - 2|s|_{K°∩[q]}
/// for a triple of subsets of [n].
inline ApqInequality apq_inequality(const HornTriple& t, int q) {
  if (q < 1 || 2 * q > t.n) throw std::invalid_argument("apq_inequality: need 1 <= q <= n/2");
  ApqInequality ineq;
  ineq.source = ApqSource::oshea_sjamaar;
  ineq.triple = t;
  ineq.lambda_coeffs.assign(static_cast<std::size_t>(t.n), 0);
  ineq.s_coeffs.assign(static_cast<std::size_t>(q), 0);
  for (int i : t.I) ineq.lambda_coeffs[i - 1] += 1;
  for (int j : reflect(t.J)) ineq.lambda_coeffs[j - 1] -= 1;
  auto split = split_k(t.K, q);
  if (split.positive)
    for (int k : *split.positive) ineq.s_coeffs[k - 1] -= 2;
  if (split.negative)
    for (int k : *split.negative) ineq.s_coeffs[k - 1] += 2;
  ineq.label = "(" + to_string(t) + ") " + detail::describe(ineq.lambda_coeffs, ineq.s_coeffs);
  return ineq;
}

/// The Fomin-Fulton-Li-Poon form for a triple of subsets of [q]:
/// |lambda|_I - |lambda|_{J°} >= 2|s|_K with J° reflected inside [p+q].
inline ApqInequality fflp_inequality(const HornTriple& t, int p, int q) {
  if (t.n != q || p < q) throw std::invalid_argument("fflp_inequality: triple must live in [q] with p >= q");
  const int n = p + q;
  ApqInequality ineq;
  ineq.source = ApqSource::fflp;
  ineq.triple = t;
  ineq.lambda_coeffs.assign(static_cast<std::size_t>(n), 0);
  ineq.s_coeffs.assign(static_cast<std::size_t>(q), 0);
  for (int i : t.I) ineq.lambda_coeffs[i - 1] += 1;
  for (int j : t.J) ineq.lambda_coeffs[n - j] -= 1;
  for (int k : t.K) ineq.s_coeffs[k - 1] -= 2;
  ineq.label = "(" + to_string(t) + ") " + detail::describe(ineq.lambda_coeffs, ineq.s_coeffs);
  return ineq;
}

/// lambda_i >= lambda_{i+1}, s_k >= s_{k+1}, s_q >= 0.
inline std::vector<ApqInequality> apq_background(int p, int q) {
  const int n = p + q;
  std::vector<ApqInequality> out;
  auto blank = [&] {
    ApqInequality b;
    b.source = ApqSource::background;
    b.lambda_coeffs.assign(static_cast<std::size_t>(n), 0);
    b.s_coeffs.assign(static_cast<std::size_t>(q), 0);
    return b;
  };
  for (int i = 0; i + 1 < n; ++i) {
    auto b = blank();
    b.lambda_coeffs[i] = 1;
    b.lambda_coeffs[i + 1] = -1;
    b.label = "l" + std::to_string(i + 1) + " >= l" + std::to_string(i + 2);
    out.push_back(std::move(b));
  }
  for (int k = 0; k + 1 < q; ++k) {
    auto b = blank();
    b.s_coeffs[k] = 1;
    b.s_coeffs[k + 1] = -1;
    b.label = "s" + std::to_string(k + 1) + " >= s" + std::to_string(k + 2);
    out.push_back(std::move(b));
  }
  auto b = blank();
  b.s_coeffs[q - 1] = 1;
  b.label = "s" + std::to_string(q) + " >= 0";
  out.push_back(std::move(b));
  return out;
}

/// The restricted-triple filter: r <= q, I ∩ J° = ∅, and K = K+ ∪ (K-)°
/// with K+, K- disjoint subsets of [q].
inline bool is_restricted_triple(const HornTriple& t, int q) {
  if (t.r > q) return false;
  const auto jo = reflect(t.J);
  for (int i : t.I)
    if (jo.contains(i)) return false;
  const int n = t.n;
  for (int k : t.K) {
    if (k > q && k < n + 1 - q) return false;
    if (k <= q && t.K.contains(n + 1 - k)) return false;
  }
  return true;
}

inline std::vector<ApqInequality> apq_inequalities(int p, int q, ApqVariant variant) {
  if (q < 1 || p < q) throw std::invalid_argument("apq_system: need p >= q >= 1");
  const int n = p + q;
  std::vector<ApqInequality> out;
  switch (variant) {
    case ApqVariant::full:
      for (const auto& t : lr_union(n, 1, n - 1)) out.push_back(apq_inequality(t, q));
      break;
    case ApqVariant::restricted:
      for (const auto& t : lr_union(n, 1, std::min(q, n - 1))) {
        if (!is_restricted_triple(t, q)) continue;
        auto ineq = apq_inequality(t, q);
        ineq.source = ApqSource::restricted;
        out.push_back(std::move(ineq));
      }
      break;
    case ApqVariant::fflp:
      for (const auto& t : lr_union(q, 1, q)) out.push_back(fflp_inequality(t, p, q));
      break;
  }
  auto bg = apq_background(p, q);
  out.insert(out.end(), bg.begin(), bg.end());
  return out;
}

/// The chosen inequality system over (lambda_1..lambda_n, s_1..s_q), with the
/// background constraints appended and flagged.
inline ConeSystem apq_system(int p, int q, ApqVariant variant) {
  ConeSystem sys;
  sys.dim = static_cast<std::size_t>(p + 2 * q);
  sys.layout = {{"lambda", p + q}, {"s", q}};
  for (const auto& ineq : apq_inequalities(p, q, variant)) sys.forms.push_back(ineq.to_form());
  return sys;
}

/// lambda_coeffs . lambda + s_coeffs . s.
inline Rational evaluate_slack(const ApqInequality& f, const SpectrumPair& sp) {
  if (f.lambda_coeffs.size() != static_cast<std::size_t>(sp.n()) || f.s_coeffs.size() != static_cast<std::size_t>(sp.q()))
    throw std::invalid_argument("evaluate_slack: layout mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < f.lambda_coeffs.size(); ++i)
    if (f.lambda_coeffs[i] != 0) acc += f.lambda_coeffs[i] * sp.lambda()[i];
  for (std::size_t k = 0; k < f.s_coeffs.size(); ++k)
    if (f.s_coeffs[k] != 0) acc += f.s_coeffs[k] * sp.s()[k];
  return acc;
}

enum class MembershipMethod { direct, reduction };

inline std::string to_string(MembershipMethod m) { return m == MembershipMethod::direct ? "direct" : "reduction"; }

inline MembershipMethod parse_method(const std::string& name) {
  if (name == "direct") return MembershipMethod::direct;
  if (name == "reduction") return MembershipMethod::reduction;
  throw std::invalid_argument("unknown method '" + name + "' (expected direct or reduction)");
}

/// Exact membership in A(p,q).
///
/// `direct` evaluates every inequality of the full system; its certificate
/// reports lhs = |lambda|_I - |lambda|_{J°} and rhs = 2|s|_{K∩[q]} -
/// 2|s|_{K°∩[q]}. `reduction` tests (lambda, lambda*, 2 nu(s)) in Horn(p+q).
/// Both scan triples in the same order, so they flag the same first triple.
inline MembershipVerdict<Rational> apq_membership(const SpectrumPair& sp, MembershipMethod method) {
  if (method == MembershipMethod::reduction) {
    RatTuple twice_nu = nu(sp.s(), sp.p(), sp.q());
    std::vector<Rational> z = twice_nu.entries();
    for (auto& e : z) e *= 2;
    return horn_membership(sp.lambda(), lambda_star(sp.lambda()), RatTuple(std::move(z)));
  }
  MembershipVerdict<Rational> v;
  const int n = sp.n();
  for (int r = 1; r < n; ++r)
    for (const auto& t : lr_triples(n, r)) {
      auto ineq = apq_inequality(t, sp.q());
      Rational lhs = 0, rhs = 0;
      for (std::size_t i = 0; i < ineq.lambda_coeffs.size(); ++i) lhs += ineq.lambda_coeffs[i] * sp.lambda()[i];
      for (std::size_t k = 0; k < ineq.s_coeffs.size(); ++k) rhs -= ineq.s_coeffs[k] * sp.s()[k];
      if (lhs < rhs) {
        v.member = false;
        v.kind = VerdictKind::violation;
        v.lhs = lhs;
        v.rhs = rhs;
        v.triple = t;
        return v;
      }
    }
  return v;
}

struct SlackEntry {
  std::string id;
  ApqInequality form;
  Rational slack;
};

struct DisputedTriple {
  std::string id;
  HornTriple triple;
  ApqInequality form;                           // rebuilt from the triple
  bool in_lr_table = false;                     // found in lr_triples(6, 3)
  Partition mu_I, mu_J, mu_K;
  MembershipVerdict<Rational> horn3;            // (mu_I, mu_J, mu_K) in Horn(3)
};

struct AuditConclusion {
  bool disputed_triples_in_lr = false;          // both triples belong to LR^6_3
  bool point_violates_line1 = false;
  bool point_violates_line2 = false;
  bool point_satisfies_all_fflp = false;
  bool point_in_cone_direct = false;
  bool point_in_cone_reduction = false;
  bool counterexample_refuted = false;          // the point lies in A(3,3)
  std::string summary;
};

struct AuditReport {
  SpectrumPair point;
  std::vector<DisputedTriple> disputed;
  std::vector<SlackEntry> counterexample_slacks;
  MembershipVerdict<Rational> direct, reduction;
  AuditConclusion conclusion;
};

/// Rebuilds the two disputed A(3,3) inequalities from their triples, decides
/// whether those triples are genuine members of LR^6_3, and evaluates them
/// together with every FFLP(3,3) form at lambda0 = (1,1,1,1,-1,-1),
/// s0 = (1,0,0).
inline AuditReport audit_withdrawal() {
  const int p = 3, q = 3, n = 6;
  auto ints = [](std::vector<long> v) {
    std::vector<Rational> out;
    for (long e : v) out.emplace_back(e);
    return out;
  };
  SpectrumPair point(p, q, ints({1, 1, 1, 1, -1, -1}), ints({1, 0, 0}));
  AuditReport report{point, {}, {}, {}, {}, {}};

  const std::vector<std::pair<std::string, HornTriple>> triples = {
      {"disputed-line-1", make_triple(n, {1, 3, 4}, {1, 2, 5}, {1, 4, 5})},
      {"disputed-line-2", make_triple(n, {1, 2, 5}, {1, 3, 4}, {1, 4, 5})},
  };
  const auto& table = lr_triples(n, 3);
  bool all_in = true;
  for (const auto& [id, t] : triples) {
    DisputedTriple d{id, t, apq_inequality(t, q), false, mu(t.I), mu(t.J), mu(t.K), {}};
    d.in_lr_table = std::binary_search(table.begin(), table.end(), t);
    d.horn3 = horn_membership(to_tuple(d.mu_I), to_tuple(d.mu_J), to_tuple(d.mu_K));
    all_in = all_in && d.in_lr_table;
    report.counterexample_slacks.push_back({id, d.form, evaluate_slack(d.form, point)});
    report.disputed.push_back(std::move(d));
  }

  bool fflp_ok = true;
  for (const auto& f : apq_inequalities(p, q, ApqVariant::fflp)) {
    if (f.source == ApqSource::background) continue;
    Rational slack = evaluate_slack(f, point);
    fflp_ok = fflp_ok && slack >= 0;
    report.counterexample_slacks.push_back({"fflp " + to_string(*f.triple), f, slack});
  }

  report.direct = apq_membership(point, MembershipMethod::direct);
  report.reduction = apq_membership(point, MembershipMethod::reduction);

  auto& c = report.conclusion;
  c.disputed_triples_in_lr = all_in;
  c.point_violates_line1 = report.counterexample_slacks[0].slack < 0;
  c.point_violates_line2 = report.counterexample_slacks[1].slack < 0;
  c.point_satisfies_all_fflp = fflp_ok;
  c.point_in_cone_direct = report.direct.member;
  c.point_in_cone_reduction = report.reduction.member;
  c.counterexample_refuted = report.direct.member && report.reduction.member;
  c.summary = std::string(all_in ? "both disputed triples lie in LR^6_3" : "the disputed triples are not in LR^6_3") +
              "; the point " + (c.point_satisfies_all_fflp ? "satisfies" : "violates") + " every FFLP(3,3) form and " +
              (c.counterexample_refuted ? "belongs to A(3,3)" : "lies outside A(3,3)");
  return report;
}

}  // namespace hornapq
