#pragma once

// Index-set combinatorics on [n] = {1, ..., n}. Everything is 1-based.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hornapq {

/// A nonempty subset of [n], stored as strictly increasing 1-based indices.
class IndexSubset {
 public:
  IndexSubset(int n, std::vector<int> elems) : n_(n), elems_(std::move(elems)) {
    if (n_ < 1) throw std::invalid_argument("IndexSubset: ambient size must be positive");
    if (elems_.empty()) throw std::invalid_argument("IndexSubset: subsets must be nonempty");
    for (std::size_t a = 0; a < elems_.size(); ++a) {
      if (elems_[a] < 1 || elems_[a] > n_)
        throw std::invalid_argument("IndexSubset: element " + std::to_string(elems_[a]) + " outside [1," +
                                    std::to_string(n_) + "]");
      if (a > 0 && elems_[a] <= elems_[a - 1])
        throw std::invalid_argument("IndexSubset: elements must be strictly increasing");
    }
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& elems() const { return elems_; }
  int operator[](std::size_t a) const { return elems_[a]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(int i) const {
    for (int e : elems_)
      if (e == i) return true;
    return false;
  }

  int sum() const {
    int s = 0;
    for (int e : elems_) s += e;
    return s;
  }

  friend auto operator<=>(const IndexSubset&, const IndexSubset&) = default;
  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;

 private:
  int n_;
  std::vector<int> elems_;
};

/// Weakly decreasing nonnegative integers.
class Partition {
 public:
  explicit Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("Partition: parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
  const std::vector<std::int64_t>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  std::int64_t operator[](std::size_t i) const { return parts_[i]; }
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::int64_t> parts_;
};

inline std::string to_string(const IndexSubset& s) {
  std::string out;
  for (int e : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

/// All r-subsets of [n] in lexicographic order.
inline std::vector<IndexSubset> subsets(int n, int r) {
  if (n < 1) throw std::invalid_argument("subsets: n must be positive");
  if (r < 1 || r > n) throw std::invalid_argument("subsets: need 1 <= r <= n");
  std::vector<IndexSubset> out;
  std::vector<int> cur(r);
  for (int a = 0; a < r; ++a) cur[a] = a + 1;
  while (true) {
    out.emplace_back(n, cur);
    int a = r - 1;
    while (a >= 0 && cur[a] == n - r + a + 1) --a;
    if (a < 0) break;
    ++cur[a];
    for (int b = a + 1; b < r; ++b) cur[b] = cur[b - 1] + 1;
  }
  return out;
}

/// mu(I) = (i_r - r, ..., i_1 - 1), the partition attached to I.
inline Partition mu(const IndexSubset& I) {
  std::vector<std::int64_t> parts(I.size());
  for (int a = 0; a < I.size(); ++a) parts[I.size() - 1 - a] = I[a] - (a + 1);
  return Partition(std::move(parts));
}

/// J -> {n + 1 - l : l in J}.
inline IndexSubset reflect(const IndexSubset& J) {
  std::vector<int> out(J.size());
  for (int a = 0; a < J.size(); ++a) out[J.size() - 1 - a] = J.n() + 1 - J[a];
  return IndexSubset(J.n(), std::move(out));
}

struct KSplit {
  std::optional<IndexSubset> positive;  // K ∩ [q]
  std::optional<IndexSubset> negative;  // K° ∩ [q]
};

/// Splits K ⊂ [n] into K ∩ [q] and K° ∩ [q]; empty parts come back as nullopt.
inline KSplit split_k(const IndexSubset& K, int q) {
  if (q < 1 || q > K.n()) throw std::invalid_argument("split_k: need 1 <= q <= n");
  auto clip = [q](const IndexSubset& s) -> std::optional<IndexSubset> {
    std::vector<int> kept;
    for (int e : s)
      if (e <= q) kept.push_back(e);
    if (kept.empty()) return std::nullopt;
    return IndexSubset(q, std::move(kept));
  };
  return {clip(K), clip(reflect(K))};
}

/// A triple (I, J, K) of r-subsets of [n].
struct HornTriple {
  int n = 0;
  int r = 0;
  IndexSubset I, J, K;

  HornTriple(IndexSubset i, IndexSubset j, IndexSubset k)
      : n(i.n()), r(i.size()), I(std::move(i)), J(std::move(j)), K(std::move(k)) {
    if (J.n() != n || K.n() != n) throw std::invalid_argument("HornTriple: ambient sizes differ");
    if (J.size() != r || K.size() != r) throw std::invalid_argument("HornTriple: cardinalities differ");
  }

  friend auto operator<=>(const HornTriple& a, const HornTriple& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    if (auto c = a.r <=> b.r; c != 0) return c;
    if (auto c = a.I <=> b.I; c != 0) return c;
    if (auto c = a.J <=> b.J; c != 0) return c;
    return a.K <=> b.K;
  }
  friend bool operator==(const HornTriple&, const HornTriple&) = default;
};

/// "I;J;K" with comma-separated elements, e.g. "1,4;1,2;2,3".
inline std::string to_string(const HornTriple& t) {
  return to_string(t.I) + ";" + to_string(t.J) + ";" + to_string(t.K);
}

inline HornTriple make_triple(int n, std::vector<int> I, std::vector<int> J, std::vector<int> K) {
  return HornTriple(IndexSubset(n, std::move(I)), IndexSubset(n, std::move(J)), IndexSubset(n, std::move(K)));
}

}  // namespace hornapq
