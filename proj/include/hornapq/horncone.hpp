#pragma once

// Horn's recursive triples LR^n_r and exact membership in Horn(n).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "parallel.hpp"
#include "polyhedra.hpp"
#include "rational.hpp"

namespace hornapq {

/// A weakly decreasing tuple of scalars.
template <class T>
class Decreasing {
 public:
  Decreasing() = default;
  explicit Decreasing(std::vector<T> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i] > entries_[i - 1]) throw std::invalid_argument("tuple is not weakly decreasing");
  }
  const std::vector<T>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const T& operator[](std::size_t i) const { return entries_[i]; }
  T sum() const {
    T s = T(0);
    for (const auto& e : entries_) s += e;
    return s;
  }
  friend bool operator==(const Decreasing&, const Decreasing&) = default;

 private:
  std::vector<T> entries_;
};

using RatTuple = Decreasing<Rational>;

inline RatTuple to_tuple(const Partition& p) {
  std::vector<Rational> v;
  for (auto e : p.parts()) v.emplace_back(static_cast<long>(e));
  return RatTuple(std::move(v));
}

enum class VerdictKind { member, equality_failure, violation };

/// Result of a membership test. For `violation`, lhs = |x|_I + |y|_J and
/// rhs = |z|_K of the first violated triple (lhs < rhs); for
/// `equality_failure`, lhs = |x| + |y| and rhs = |z|.
template <class T>
struct MembershipVerdict {
  bool member = true;
  VerdictKind kind = VerdictKind::member;
  T lhs = T(0);
  T rhs = T(0);
  std::optional<HornTriple> triple;
};

const std::vector<HornTriple>& lr_triples(int n, int r);

namespace detail {

template <class T>
T subset_sum(const std::vector<T>& v, const IndexSubset& s) {
  T acc = T(0);
  for (int e : s) acc += v[static_cast<std::size_t>(e - 1)];
  return acc;
}

template <class T>
MembershipVerdict<T> horn_scan(const std::vector<T>& x, const std::vector<T>& y, const std::vector<T>& z) {
  MembershipVerdict<T> v;
  T sx = T(0), sy = T(0), sz = T(0);
  for (const auto& e : x) sx += e;
  for (const auto& e : y) sy += e;
  for (const auto& e : z) sz += e;
  if (sx + sy != sz) {
    v.member = false;
    v.kind = VerdictKind::equality_failure;
    v.lhs = sx + sy;
    v.rhs = sz;
    return v;
  }
  const int n = static_cast<int>(x.size());
  for (int r = 1; r < n; ++r) {
    for (const auto& t : lr_triples(n, r)) {
      T lhs = subset_sum(x, t.I) + subset_sum(y, t.J);
      T rhs = subset_sum(z, t.K);
      if (lhs < rhs) {
        v.member = false;
        v.kind = VerdictKind::violation;
        v.lhs = std::move(lhs);
        v.rhs = std::move(rhs);
        v.triple = t;
        return v;
      }
    }
  }
  return v;
}

}  // namespace detail

/// Exact membership of (x, y, z) in Horn(n): the trace equality plus every
/// inequality |x|_I + |y|_J >= |z|_K over LR^n_r, r < n, scanned by r and
/// then lexicographically. The first failure becomes the certificate.
template <class T>
MembershipVerdict<T> horn_membership(const Decreasing<T>& x, const Decreasing<T>& y, const Decreasing<T>& z) {
  if (x.size() == 0 || x.size() != y.size() || x.size() != z.size())
    throw std::invalid_argument("horn_membership: tuples must share a positive length");
  return detail::horn_scan(x.entries(), y.entries(), z.entries());
}

namespace detail {

inline std::vector<std::int64_t> mu_parts(const IndexSubset& s) { return mu(s).parts(); }

inline std::vector<HornTriple> compute_lr_triples(int n, int r) {
  const auto subs = subsets(n, r);
  std::vector<std::vector<std::int64_t>> mus;
  mus.reserve(subs.size());
  for (const auto& s : subs) mus.push_back(mu_parts(s));

  // Group K candidates by element sum; sum(I) + sum(J) = sum(K) + r(r+1)/2.
  std::map<int, std::vector<std::size_t>> by_sum;
  for (std::size_t k = 0; k < subs.size(); ++k) by_sum[subs[k].sum()].push_back(k);
  const int shift = r * (r + 1) / 2;
  for (int rr = 1; rr < r; ++rr) lr_triples(r, rr);

  std::vector<std::vector<HornTriple>> per_i(subs.size());
  parallel_for(subs.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < subs.size(); ++j) {
      auto it = by_sum.find(subs[i].sum() + subs[j].sum() - shift);
      if (it == by_sum.end()) continue;
      for (std::size_t k : it->second) {
        if (r > 1 && !horn_scan(mus[i], mus[j], mus[k]).member) continue;
        per_i[i].emplace_back(subs[i], subs[j], subs[k]);
      }
    }
  });

  std::vector<HornTriple> out;
  for (auto& bucket : per_i)
    for (auto& t : bucket) out.push_back(std::move(t));
  return out;
}

struct LrMemo {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::unique_ptr<const std::vector<HornTriple>>> table;
};

inline LrMemo& lr_memo() {
  static LrMemo memo;
  return memo;
}

}  // namespace detail

/// All (I, J, K) in (P^n_r)^3 with (mu(I), mu(J), mu(K)) in Horn(r), in
/// lexicographic order. r = n yields the single triple ([n], [n], [n]).
/// Results are memoized for the life of the process; the returned reference
/// stays valid.
inline const std::vector<HornTriple>& lr_triples(int n, int r) {
  if (n < 1 || r < 1 || r > n) throw std::invalid_argument("lr_triples: need 1 <= r <= n");
  auto& memo = detail::lr_memo();
  const auto key = std::make_pair(n, r);
  {
    std::lock_guard lock(memo.mutex);
    if (auto it = memo.table.find(key); it != memo.table.end()) return *it->second;
  }
  // Computed outside the lock: the recursion re-enters lr_triples for r' < r.
  auto computed = std::make_unique<const std::vector<HornTriple>>(detail::compute_lr_triples(n, r));
  std::lock_guard lock(memo.mutex);
  auto [it, inserted] = memo.table.try_emplace(key, std::move(computed));
  return *it->second;
}

/// Every triple of LR^n_r for r in [r_min, r_max], by r then lexicographic.
inline std::vector<HornTriple> lr_union(int n, int r_min, int r_max) {
  std::vector<HornTriple> out;
  for (int r = r_min; r <= r_max; ++r) {
    const auto& part = lr_triples(n, r);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// The Horn inequalities |x|_I + |y|_J - |z|_K >= 0 over (x, y, z), one per
/// triple of LR^n_r with r < n, followed by the weak-decrease constraints of
/// each block (background) and the trace equality.
inline ConeSystem horn_inequality_forms(int n) {
  if (n < 2) throw std::invalid_argument("horn_inequality_forms: need n >= 2");
  const std::size_t un = static_cast<std::size_t>(n);
  ConeSystem sys;
  sys.dim = 3 * un;
  sys.layout = {{"x", n}, {"y", n}, {"z", n}};
  for (const auto& t : lr_union(n, 1, n - 1)) {
    LinearForm f;
    f.coeffs.assign(sys.dim, Rational(0));
    for (int e : t.I) f.coeffs[e - 1] += 1;
    for (int e : t.J) f.coeffs[un + e - 1] += 1;
    for (int e : t.K) f.coeffs[2 * un + e - 1] -= 1;
    f.label = "horn " + to_string(t);
    f.source = "horn";
    f.triple = t;
    sys.forms.push_back(std::move(f));
  }
  const char* names[] = {"x", "y", "z"};
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t i = 0; i + 1 < un; ++i) {
      LinearForm f;
      f.coeffs.assign(sys.dim, Rational(0));
      f.coeffs[b * un + i] = 1;
      f.coeffs[b * un + i + 1] = -1;
      f.label = std::string(names[b]) + std::to_string(i + 1) + " >= " + names[b] + std::to_string(i + 2);
      f.source = "background";
      f.background = true;
      sys.forms.push_back(std::move(f));
    }
  LinearForm trace;
  trace.coeffs.assign(sys.dim, Rational(0));
  for (std::size_t i = 0; i < un; ++i) {
    trace.coeffs[i] = 1;
    trace.coeffs[un + i] = 1;
    trace.coeffs[2 * un + i] = -1;
  }
  trace.label = "|x| + |y| = |z|";
  trace.source = "background";
  trace.background = true;
  sys.equalities.push_back(std::move(trace));
  return sys;
}

}  // namespace hornapq
