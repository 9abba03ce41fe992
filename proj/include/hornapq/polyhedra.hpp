#pragma once

// Homogeneous inequality systems over exact rationals: Farkas implication
// tests by exact phase-one simplex, greedy redundancy pruning, and cone
// equality.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "parallel.hpp"
#include "rational.hpp"

namespace hornapq {

/// The inequality coeffs · v >= 0 (or = 0 when stored as an equality).
struct LinearForm {
  std::vector<Rational> coeffs;
  std::string label;
  std::string source;
  std::optional<HornTriple> triple;
  bool background = false;

  std::size_t dim() const { return coeffs.size(); }

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  }
};

struct LayoutBlock {
  std::string name;
  int size = 0;
  friend bool operator==(const LayoutBlock&, const LayoutBlock&) = default;
};

/// A finite system of forms (>= 0) and equalities (= 0) sharing one layout.
struct ConeSystem {
  std::size_t dim = 0;
  std::vector<LayoutBlock> layout;
  std::vector<LinearForm> forms;
  std::vector<LinearForm> equalities;

  void validate() const {
    std::size_t total = 0;
    for (const auto& b : layout) total += static_cast<std::size_t>(b.size);
    if (!layout.empty() && total != dim) throw std::invalid_argument("ConeSystem: layout does not cover dim");
    for (const auto& f : forms)
      if (f.dim() != dim) throw std::invalid_argument("ConeSystem: form '" + f.label + "' has wrong dimension");
    for (const auto& f : equalities)
      if (f.dim() != dim) throw std::invalid_argument("ConeSystem: equality '" + f.label + "' has wrong dimension");
  }

  std::size_t background_count() const {
    return static_cast<std::size_t>(std::count_if(forms.begin(), forms.end(), [](const LinearForm& f) { return f.background; }));
  }
};

inline Rational evaluate(const LinearForm& f, const std::vector<Rational>& point) {
  if (point.size() != f.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  Rational acc = 0;
  for (std::size_t k = 0; k < point.size(); ++k)
    if (f.coeffs[k] != 0) acc += f.coeffs[k] * point[k];
  return acc;
}

inline double evaluate(const LinearForm& f, const std::vector<double>& point) {
  if (point.size() != f.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < point.size(); ++k)
    if (f.coeffs[k] != 0) acc += f.coeffs[k].get_d() * point[k];
  return acc;
}

/// Outcome of asking whether a system implies f >= 0.
///
/// When implied, `form_multipliers` (nonnegative) and `equality_multipliers`
/// (free) satisfy  sum mu_i g_i + sum nu_k h_k = f  exactly; only nonzero
/// entries are listed, indexed into the system. Otherwise `witness` is a ray
/// x with g_i x >= 0 for every active form, h_k x = 0, and f x < 0.
struct ImplicationResult {
  bool implied = false;
  std::vector<std::pair<std::size_t, Rational>> form_multipliers;
  std::vector<std::pair<std::size_t, Rational>> equality_multipliers;
  std::vector<Rational> witness;
  std::size_t pivots = 0;
};

namespace detail {

struct SparseColumn {
  std::vector<std::pair<int, BigInt>> entries;
  Rational scale;  // entries = scale * original coefficients
};

/// Positive rescaling of v to a primitive integer vector.
inline SparseColumn primitive_column(const std::vector<Rational>& v) {
  SparseColumn col;
  BigInt l = lcm_of_denominators(v);
  BigInt g = 0;
  std::vector<BigInt> ints(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    ints[k] = v[k].get_num() * (l / v[k].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[k].get_mpz_t());
  }
  if (g == 0) {
    col.scale = 1;
    return col;
  }
  for (std::size_t k = 0; k < v.size(); ++k)
    if (ints[k] != 0) col.entries.emplace_back(static_cast<int>(k), ints[k] / g);
  col.scale = Rational(l, g);
  col.scale.canonicalize();
  return col;
}

}  // namespace detail

/// Decides implication over a fixed system by searching for Farkas
/// multipliers with an exact phase-one simplex under Bland's rule. Columns
/// are normalized once; each check may deactivate a subset of forms.
class FarkasSolver {
 public:
  explicit FarkasSolver(const ConeSystem& system) : dim_(system.dim) {
    system.validate();
    forms_.reserve(system.forms.size());
    for (const auto& f : system.forms) forms_.push_back(detail::primitive_column(f.coeffs));
    for (const auto& h : system.equalities) equalities_.push_back(detail::primitive_column(h.coeffs));
  }

  std::size_t dim() const { return dim_; }
  std::size_t form_count() const { return forms_.size(); }

  ImplicationResult check(const std::vector<Rational>& target) const {
    return check(target, std::vector<char>(forms_.size(), 1));
  }

  ImplicationResult check(const std::vector<Rational>& target, const std::vector<char>& active) const;

 private:
  std::size_t dim_;
  std::vector<detail::SparseColumn> forms_;
  std::vector<detail::SparseColumn> equalities_;
};

inline ImplicationResult FarkasSolver::check(const std::vector<Rational>& target, const std::vector<char>& active) const {
  if (target.size() != dim_) throw std::invalid_argument("implies: dimension mismatch");
  if (active.size() != forms_.size()) throw std::invalid_argument("implies: active mask has wrong size");

  ImplicationResult result;
  const detail::SparseColumn rhs = detail::primitive_column(target);
  if (rhs.entries.empty()) {
    result.implied = true;
    return result;
  }

  const std::size_t d = dim_;
  const std::size_t nf = forms_.size();
  const std::size_t ne = equalities_.size();
  // Column ids: [0, nf) forms, [nf, nf+ne) +equalities, [nf+ne, nf+2ne) -equalities,
  // then d artificials. Artificials never re-enter once they leave.
  const std::size_t artificial0 = nf + 2 * ne;

  std::vector<int> row_sign(d, 1);
  std::vector<Rational> xb(d);
  for (const auto& [k, v] : rhs.entries) {
    row_sign[k] = v < 0 ? -1 : 1;
    xb[k] = abs(v);
  }

  auto column_of = [&](std::size_t id, int& negate) -> const detail::SparseColumn& {
    negate = 1;
    if (id < nf) return forms_[id];
    if (id < nf + ne) return equalities_[id - nf];
    negate = -1;
    return equalities_[id - nf - ne];
  };

  std::vector<std::vector<Rational>> binv(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i) binv[i][i] = 1;
  std::vector<std::size_t> head(d);
  for (std::size_t i = 0; i < d; ++i) head[i] = artificial0 + i;
  std::vector<char> basic(artificial0 + d, 0);
  for (std::size_t i = 0; i < d; ++i) basic[artificial0 + i] = 1;

  std::vector<Rational> y(d);
  std::vector<BigInt> y_int(d);
  std::vector<Rational> u(d);
  BigInt dot;

  while (true) {
    bool feasible = true;
    for (std::size_t i = 0; i < d; ++i)
      if (head[i] >= artificial0 && xb[i] != 0) {
        feasible = false;
        break;
      }
    if (feasible) break;

    // Phase-one prices: y = c_B^T B^{-1} with unit cost on artificials.
    for (std::size_t k = 0; k < d; ++k) y[k] = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (head[i] >= artificial0)
        for (std::size_t k = 0; k < d; ++k)
          if (binv[i][k] != 0) y[k] += binv[i][k];
    BigInt l = lcm_of_denominators(y);
    for (std::size_t k = 0; k < d; ++k) y_int[k] = y[k].get_num() * (l / y[k].get_den()) * row_sign[k];

    // Bland: first column (by id) with negative reduced cost, i.e. y . a_j > 0.
    std::size_t entering = artificial0;
    int entering_negate = 1;
    for (std::size_t id = 0; id < artificial0; ++id) {
      if (basic[id]) continue;
      if (id < nf && !active[id]) continue;
      int negate;
      const auto& col = column_of(id, negate);
      dot = 0;
      for (const auto& [k, v] : col.entries) mpz_addmul(dot.get_mpz_t(), y_int[k].get_mpz_t(), v.get_mpz_t());
      if (negate * sgn(dot) > 0) {
        entering = id;
        entering_negate = negate;
        break;
      }
    }

    if (entering == artificial0) {
      // Optimal with positive infeasibility: x = -D y separates f from the cone.
      result.implied = false;
      std::vector<Rational> w(d);
      for (std::size_t k = 0; k < d; ++k) w[k] = -Rational(y_int[k]);
      auto prim = detail::primitive_column(w);
      result.witness.assign(d, Rational(0));
      for (const auto& [k, v] : prim.entries) result.witness[k] = v;
      return result;
    }

    int dummy;
    const auto& col = column_of(entering, dummy);
    for (std::size_t i = 0; i < d; ++i) {
      u[i] = 0;
      for (const auto& [k, v] : col.entries)
        if (binv[i][k] != 0) u[i] += binv[i][k] * Rational(v * (row_sign[k] * entering_negate));
    }

    std::size_t leave = d;
    Rational best;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(u[i]) <= 0) continue;
      Rational ratio = xb[i] / u[i];
      if (leave == d || ratio < best || (ratio == best && head[i] < head[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == d) throw std::logic_error("phase-one simplex reported an unbounded ray");

    const Rational pivot = u[leave];
    for (std::size_t k = 0; k < d; ++k)
      if (binv[leave][k] != 0) binv[leave][k] /= pivot;
    xb[leave] /= pivot;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || u[i] == 0) continue;
      const Rational factor = u[i];
      for (std::size_t k = 0; k < d; ++k)
        if (binv[leave][k] != 0) binv[i][k] -= factor * binv[leave][k];
      xb[i] -= factor * xb[leave];
    }
    basic[head[leave]] = 0;
    head[leave] = entering;
    basic[entering] = 1;
    ++result.pivots;
  }

  result.implied = true;
  std::vector<Rational> eq_net(ne);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t id = head[i];
    if (id >= artificial0 || xb[i] == 0) continue;
    if (id < nf) {
      Rational m = xb[i] * forms_[id].scale / rhs.scale;
      result.form_multipliers.emplace_back(id, m);
    } else if (id < nf + ne) {
      eq_net[id - nf] += xb[i] * equalities_[id - nf].scale / rhs.scale;
    } else {
      eq_net[id - nf - ne] -= xb[i] * equalities_[id - nf - ne].scale / rhs.scale;
    }
  }
  std::sort(result.form_multipliers.begin(), result.form_multipliers.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < ne; ++k)
    if (eq_net[k] != 0) result.equality_multipliers.emplace_back(k, eq_net[k]);
  return result;
}

/// Does the system imply f >= 0 on its whole cone?
inline ImplicationResult implies(const ConeSystem& system, const LinearForm& f) {
  if (f.dim() != system.dim) throw std::invalid_argument("implies: dimension mismatch");
  return FarkasSolver(system).check(f.coeffs);
}

/// Re-derives sum mu_i g_i + sum nu_k h_k; used to audit certificates.
inline std::vector<Rational> combine(const ConeSystem& system, const ImplicationResult& cert) {
  std::vector<Rational> out(system.dim);
  for (const auto& [i, m] : cert.form_multipliers)
    for (std::size_t k = 0; k < system.dim; ++k) out[k] += m * system.forms[i].coeffs[k];
  for (const auto& [i, m] : cert.equality_multipliers)
    for (std::size_t k = 0; k < system.dim; ++k) out[k] += m * system.equalities[i].coeffs[k];
  return out;
}

struct PruneResult {
  ConeSystem system;               // survivors, input order preserved
  std::vector<std::size_t> kept;   // indices of survivors in the input
  // One entry per input form; nullopt for protected forms. Removed forms carry
  // their multipliers (indexed into the input), survivors their witness ray.
  std::vector<std::optional<ImplicationResult>> verdicts;

  std::size_t removed_count() const {
    std::size_t c = 0;
    for (const auto& v : verdicts)
      if (v && v->implied) ++c;
    return c;
  }
};

/// Greedy single pass in input order: a form is dropped iff the forms still
/// present (minus itself, plus protected ones and all equalities) imply it.
/// `protect` defaults to each form's background flag. Independent checks are
/// evaluated speculatively in batches; verdicts that follow an earlier removal
/// in the same batch are recomputed, so verdicts and certificates equal the
/// serial pass for every thread count.
inline PruneResult prune(const ConeSystem& system, std::optional<std::vector<char>> protect = std::nullopt) {
  system.validate();
  const std::size_t m = system.forms.size();
  std::vector<char> is_protected(m);
  if (protect) {
    if (protect->size() != m) throw std::invalid_argument("prune: protected mask has wrong size");
    is_protected = *protect;
  } else {
    for (std::size_t i = 0; i < m; ++i) is_protected[i] = system.forms[i].background ? 1 : 0;
  }

  FarkasSolver solver(system);
  PruneResult out;
  out.verdicts.resize(m);
  std::vector<char> present(m, 1);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_protected[i]) order.push_back(i);

  const std::size_t batch = std::max<std::size_t>(1, 2 * static_cast<std::size_t>(thread_cap()));
  for (std::size_t start = 0; start < order.size(); start += batch) {
    const std::size_t stop = std::min(order.size(), start + batch);
    std::vector<ImplicationResult> speculative(stop - start);
    const std::vector<char> snapshot = present;
    parallel_for(stop - start, [&](std::size_t b) {
      std::size_t i = order[start + b];
      auto mask = snapshot;
      mask[i] = 0;
      speculative[b] = solver.check(system.forms[i].coeffs, mask);
    });
    bool removed_in_batch = false;
    for (std::size_t b = 0; b < stop - start; ++b) {
      std::size_t i = order[start + b];
      ImplicationResult verdict = std::move(speculative[b]);
      if (removed_in_batch) {
        auto mask = present;
        mask[i] = 0;
        verdict = solver.check(system.forms[i].coeffs, mask);
      }
      if (verdict.implied) {
        present[i] = 0;
        removed_in_batch = true;
      }
      out.verdicts[i] = std::move(verdict);
    }
  }

  out.system.dim = system.dim;
  out.system.layout = system.layout;
  out.system.equalities = system.equalities;
  for (std::size_t i = 0; i < m; ++i)
    if (present[i]) {
      out.kept.push_back(i);
      out.system.forms.push_back(system.forms[i]);
    }
  return out;
}

struct Separation {
  char system = 'a';        // the side whose constraint is not implied by the other
  bool equality = false;    // true when the constraint is an equality (sign in `negated`)
  bool negated = false;
  std::size_t index = 0;
  std::vector<Rational> witness;  // satisfies the other side, violates this constraint
};

struct ConeEqualResult {
  bool equal = false;
  std::vector<ImplicationResult> a_in_b;  // a's forms, then a's equalities as (h, -h)
  std::vector<ImplicationResult> b_in_a;
  std::optional<Separation> separation;
};

namespace detail {

inline bool contained(const ConeSystem& inner, const FarkasSolver& outer, char side, std::vector<ImplicationResult>& certs,
                      std::optional<Separation>& separation) {
  auto record = [&](ImplicationResult r, bool equality, bool negated, std::size_t index) {
    bool ok = r.implied;
    if (!ok) separation = Separation{side, equality, negated, index, r.witness};
    certs.push_back(std::move(r));
    return ok;
  };
  for (std::size_t i = 0; i < inner.forms.size(); ++i)
    if (!record(outer.check(inner.forms[i].coeffs), false, false, i)) return false;
  for (std::size_t i = 0; i < inner.equalities.size(); ++i) {
    std::vector<Rational> neg = inner.equalities[i].coeffs;
    for (auto& c : neg) c = -c;
    if (!record(outer.check(inner.equalities[i].coeffs), true, false, i)) return false;
    if (!record(outer.check(neg), true, true, i)) return false;
  }
  return true;
}

}  // namespace detail

/// True iff both systems cut out the same cone. Every constraint of each side
/// is tested for implication by the other; the first failure stops the scan
/// and carries a separating ray.
inline ConeEqualResult cone_equal(const ConeSystem& a, const ConeSystem& b) {
  if (a.dim != b.dim) throw std::invalid_argument("cone_equal: dimension mismatch");
  ConeEqualResult out;
  FarkasSolver sa(a), sb(b);
  out.equal = detail::contained(a, sb, 'a', out.a_in_b, out.separation) &&
              detail::contained(b, sa, 'b', out.b_in_a, out.separation);
  return out;
}

}  // namespace hornapq
