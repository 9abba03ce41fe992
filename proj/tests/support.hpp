#pragma once

// Independent oracles and random generators shared by the test binaries.
// Nothing here calls into the LR recursion or the simplex: the closed forms
// and the tableau count below are separate routes to the same sets.

#include <hornapq/hornapq.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace testing_support {

using hornapq::HornTriple;
using hornapq::IndexSubset;
using hornapq::Rational;

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return b;
}

/// {(i, j, k) in [n]^3 : i + j = k + 1}.
inline std::set<HornTriple> closed_form_r1(int n) {
  std::set<HornTriple> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int k = i + j - 1;
      if (k <= n) out.insert(hornapq::make_triple(n, {i}, {j}, {k}));
    }
  return out;
}

/// Pairs satisfying i1+i2+j1+j2 = k1+k2+3, i1+j1 <= k1+1, i1+j2 <= k2+1,
/// i2+j1 <= k2+1.
inline std::set<HornTriple> closed_form_r2(int n) {
  std::set<HornTriple> out;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
  for (auto [i1, i2] : pairs)
    for (auto [j1, j2] : pairs)
      for (auto [k1, k2] : pairs) {
        if (i1 + i2 + j1 + j2 != k1 + k2 + 3) continue;
        if (i1 + j1 > k1 + 1 || i1 + j2 > k2 + 1 || i2 + j1 > k2 + 1) continue;
        out.insert(hornapq::make_triple(n, {i1, i2}, {j1, j2}, {k1, k2}));
      }
  return out;
}

namespace detail {

// Backtracking search for one Littlewood-Richardson tableau of shape
// outer/inner and content `content`: rows weakly increase, columns strictly
// increase, and the reverse reading word is a lattice word.
struct LrSearch {
  std::vector<int> inner, outer, content;
  std::vector<std::vector<int>> fill;  // fill[row][col], 0 = outside skew shape
  std::vector<int> used;
  std::vector<std::pair<int, int>> cells;  // reverse reading order

  bool run(std::size_t idx) {
    if (idx == cells.size()) return true;
    const auto [row, col] = cells[idx];
    const int rows = static_cast<int>(content.size());
    for (int v = 1; v <= rows; ++v) {
      if (used[v - 1] >= content[v - 1]) continue;
      if (v > 1 && used[v - 1] + 1 > used[v - 2]) continue;
      if (col + 1 < outer[row] && fill[row][col + 1] != 0 && v > fill[row][col + 1]) continue;
      if (row > 0 && col >= inner[row - 1] && col < outer[row - 1] && v <= fill[row - 1][col]) continue;
      fill[row][col] = v;
      ++used[v - 1];
      if (run(idx + 1)) return true;
      --used[v - 1];
      fill[row][col] = 0;
    }
    return false;
  }
};

}  // namespace detail

/// c^gamma_{alpha, beta} > 0, by the Littlewood-Richardson rule.
inline bool lr_coefficient_positive(std::vector<int> alpha, std::vector<int> beta, std::vector<int> gamma) {
  const std::size_t len = std::max({alpha.size(), beta.size(), gamma.size()});
  alpha.resize(len, 0);
  beta.resize(len, 0);
  gamma.resize(len, 0);
  if (std::accumulate(alpha.begin(), alpha.end(), 0) + std::accumulate(beta.begin(), beta.end(), 0) !=
      std::accumulate(gamma.begin(), gamma.end(), 0))
    return false;
  for (std::size_t i = 0; i < len; ++i)
    if (alpha[i] > gamma[i]) return false;
  detail::LrSearch s;
  s.inner = alpha;
  s.outer = gamma;
  s.content = beta;
  s.used.assign(len, 0);
  s.fill.assign(len, std::vector<int>(gamma.empty() ? 0 : static_cast<std::size_t>(gamma[0]) + 1, 0));
  for (std::size_t row = 0; row < len; ++row)
    for (int col = gamma[row] - 1; col >= alpha[row]; --col) s.cells.emplace_back(static_cast<int>(row), col);
  return s.run(0);
}

inline std::vector<int> mu_ints(const IndexSubset& s) {
  const auto m = hornapq::mu(s);
  std::vector<int> out;
  for (auto e : m.parts()) out.push_back(static_cast<int>(e));
  return out;
}

/// LR^n_r via c^{mu(K)}_{mu(I), mu(J)} > 0.
inline std::set<HornTriple> tableau_oracle(int n, int r) {
  std::set<HornTriple> out;
  const auto subs = hornapq::subsets(n, r);
  for (const auto& I : subs)
    for (const auto& J : subs)
      for (const auto& K : subs)
        if (lr_coefficient_positive(mu_ints(I), mu_ints(J), mu_ints(K))) out.insert(HornTriple(I, J, K));
  return out;
}

/// Weakly decreasing rationals with small numerators and denominators.
inline std::vector<Rational> random_decreasing(std::mt19937_64& rng, std::size_t len, int span = 6,
                                               int max_den = 4) {
  std::uniform_int_distribution<int> num(-span * max_den, span * max_den), den(1, max_den);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < len; ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    v.push_back(x);
  }
  std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return v;
}

inline std::vector<Rational> random_nonnegative_decreasing(std::mt19937_64& rng, std::size_t len, int span = 3,
                                                           int max_den = 4) {
  auto v = random_decreasing(rng, len, span, max_den);
  for (auto& x : v) x = abs(x);
  std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return v;
}

/// A mix of arbitrary points and points near the cone: (nu(s) + c, s)
/// nudged by a small decreasing perturbation, so both verdicts occur.
inline hornapq::SpectrumPair random_spectrum_pair(std::mt19937_64& rng, int p, int q) {
  const std::size_t n = static_cast<std::size_t>(p + q);
  auto s = random_nonnegative_decreasing(rng, static_cast<std::size_t>(q));
  if (rng() % 2 == 0) return hornapq::SpectrumPair(p, q, random_decreasing(rng, n), s);
  auto lambda = hornapq::nu(hornapq::RatTuple(s), p, q).entries();
  const auto shift = random_decreasing(rng, 1)[0];
  const auto nudge = random_decreasing(rng, n, 1, 8);
  for (std::size_t i = 0; i < n; ++i) lambda[i] += shift + nudge[i];
  return hornapq::SpectrumPair(p, q, lambda, s);
}

inline Rational subset_sum(const std::vector<Rational>& v, const IndexSubset& s) {
  Rational acc = 0;
  for (int e : s) acc += v[static_cast<std::size_t>(e - 1)];
  return acc;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Coefficient vector (lambda_1..lambda_n, s_1..s_q) from integer lists.
inline std::vector<Rational> coeffs(std::initializer_list<int> lambda, std::initializer_list<int> s) {
  std::vector<Rational> v;
  for (int c : lambda) v.emplace_back(c);
  for (int c : s) v.emplace_back(c);
  return v;
}

inline std::set<std::vector<Rational>> nontrivial_coeff_set(const hornapq::ConeSystem& sys) {
  std::set<std::vector<Rational>> out;
  for (const auto& f : sys.forms)
    if (!f.background) out.insert(f.coeffs);
  return out;
}

/// The A(2,2) list: l1-l4 >= 2s1, l2-l4 >= 2s2, l1-l3 >= 2s2,
/// l1+l2-l3-l4 >= 2(s1+s2).
inline std::set<std::vector<Rational>> a22_reference() {
  return {coeffs({1, 0, 0, -1}, {-2, 0}), coeffs({0, 1, 0, -1}, {0, -2}), coeffs({1, 0, -1, 0}, {0, -2}),
          coeffs({1, 1, -1, -1}, {-2, -2})};
}

/// The published A(3,3) list: six r=1 forms, six r=2 forms and three r=3
/// forms, the first two of the r=3 forms being the disputed ones.
inline std::vector<std::vector<Rational>> a33_published() {
  return {
      coeffs({1, 0, 0, 0, 0, -1}, {-2, 0, 0}),    coeffs({1, 0, 0, 0, -1, 0}, {0, -2, 0}),
      coeffs({0, 1, 0, 0, 0, -1}, {0, -2, 0}),    coeffs({1, 0, 0, -1, 0, 0}, {0, 0, -2}),
      coeffs({0, 1, 0, 0, -1, 0}, {0, 0, -2}),    coeffs({0, 0, 1, 0, 0, -1}, {0, 0, -2}),
      coeffs({1, 1, 0, 0, -1, -1}, {-2, -2, 0}),  coeffs({1, 1, 0, -1, 0, -1}, {-2, 0, -2}),
      coeffs({1, 0, 1, 0, -1, -1}, {-2, 0, -2}),  coeffs({1, 1, 0, -1, -1, 0}, {0, -2, -2}),
      coeffs({1, 0, 1, -1, 0, -1}, {0, -2, -2}),  coeffs({0, 1, 1, 0, -1, -1}, {0, -2, -2}),
      coeffs({1, -1, 1, 1, -1, -1}, {-2, 2, 2}),  coeffs({1, 1, -1, -1, 1, -1}, {-2, 2, 2}),
      coeffs({1, 1, 1, -1, -1, -1}, {-2, -2, -2}),
  };
}

}  // namespace testing_support
