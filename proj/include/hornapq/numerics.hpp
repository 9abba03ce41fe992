#pragma once

// Floating-point oracle for A(p,q): complex Hermitian eigenvalues by cyclic
// Jacobi rotations, singular values of the off-diagonal block, Gaussian
// sampling of (lambda(X), s(pi(X))), and an alternating-projection search for
// a matrix realizing a prescribed pair.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apqcone.hpp"
#include "parallel.hpp"
#include "polyhedra.hpp"

namespace hornapq {

using Complex = std::complex<double>;

/// Raised when an iterative method fails to converge.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  double frobenius_norm() const {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return std::sqrt(acc);
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

/// Square complex matrix equal to its conjugate transpose within
/// 1e-12 * max(1, ||X||_F).
class HermitianMatrix {
 public:
  static constexpr double tolerance = 1e-12;

  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("HermitianMatrix: matrix must be square");
    const double bound = tolerance * std::max(1.0, m_.frobenius_norm());
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i; j < m_.cols(); ++j)
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > bound)
          throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian");
  }

  /// (M + M^H) / 2, for inputs that are Hermitian up to rounding.
  static HermitianMatrix hermitize(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitize: matrix must be square");
    ComplexMatrix h(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return HermitianMatrix(std::move(h));
  }

  std::size_t n() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n(); ++i) t += m_(i, i).real();
    return t;
  }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // weakly decreasing
  ComplexMatrix vectors;       // column k pairs with values[k]
  int sweeps = 0;
  double off_diagonal = 0.0;   // Frobenius norm of the off-diagonal part at exit
};

/// Cyclic row-wise Jacobi: every nonzero off-diagonal entry is rotated away
/// (threshold 0) until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||X||_F. Throws numeric_error after max_sweeps.
inline EigenDecomposition eigen_decompose(const HermitianMatrix& x, int max_sweeps = 60) {
  const std::size_t n = x.n();
  ComplexMatrix a = x.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  const double norm = a.frobenius_norm();

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  EigenDecomposition out;
  double off = off_norm();
  while (off >= 1e-13 * norm && norm > 0.0) {
    if (out.sweeps == max_sweeps)
      throw numeric_error("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
        const Complex upq = s, uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    off = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  out.off_diagonal = off;
  return out;
}

inline std::vector<double> eigenvalues_desc(const HermitianMatrix& x) { return eigen_decompose(x).values; }

/// Thin SVD Y = U diag(values) V^H of a p x q matrix, p >= q.
struct SingularDecomposition {
  std::vector<double> values;  // weakly decreasing, nonnegative
  ComplexMatrix u;             // p x q, orthonormal columns
  ComplexMatrix v;             // q x q unitary
};

/// Right singular vectors from the Hermitian eigensolve of Y^H Y; each
/// singular value is then the norm of Y v_k, which keeps small values
/// accurate to ~eps * ||Y||. Left vectors for vanishing values are completed
/// by Gram-Schmidt against the standard basis.
inline SingularDecomposition singular_decompose(const ComplexMatrix& y) {
  const std::size_t p = y.rows(), q = y.cols();
  if (p < q) throw std::invalid_argument("singular values: need rows >= cols");
  SingularDecomposition out;
  out.values.assign(q, 0.0);
  out.u = ComplexMatrix(p, q);
  out.v = ComplexMatrix(q, q);
  if (q == 0) return out;

  auto gram = HermitianMatrix::hermitize(y.adjoint() * y);
  auto eig = eigen_decompose(gram);
  ComplexMatrix yv = y * eig.vectors;
  std::vector<double> norms(q);
  for (std::size_t k = 0; k < q; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) acc += std::norm(yv(i, k));
    norms[k] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  const double floor = 1e-14 * std::max(1.0, y.frobenius_norm());
  std::size_t filled = 0;
  for (std::size_t k = 0; k < q; ++k) {
    const std::size_t src = order[k];
    out.values[k] = norms[src];
    for (std::size_t i = 0; i < q; ++i) out.v(i, k) = eig.vectors(i, src);
    if (norms[src] > floor) {
      for (std::size_t i = 0; i < p; ++i) out.u(i, k) = yv(i, src) / norms[src];
      filled = k + 1;
    }
  }
  // Complete the left factor with an orthonormal basis of the remaining span.
  std::size_t next_basis = 0;
  for (std::size_t k = filled; k < q; ++k) {
    while (next_basis < p) {
      std::vector<Complex> cand(p, Complex(0.0));
      cand[next_basis++] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < k; ++c) {
          Complex dot = 0.0;
          for (std::size_t i = 0; i < p; ++i) dot += std::conj(out.u(i, c)) * cand[i];
          for (std::size_t i = 0; i < p; ++i) cand[i] -= dot * out.u(i, c);
        }
      double nrm = 0.0;
      for (const auto& z : cand) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-6) {
        for (std::size_t i = 0; i < p; ++i) out.u(i, k) = cand[i] / nrm;
        break;
      }
    }
  }
  return out;
}

inline std::vector<double> singular_values_desc(const ComplexMatrix& y) { return singular_decompose(y).values; }

/// Rows 1..p, columns p+1..p+q of X.
inline ComplexMatrix block_of(const HermitianMatrix& x, int p, int q) {
  if (p < 1 || q < 1 || x.n() != static_cast<std::size_t>(p + q)) throw std::invalid_argument("block_of: size mismatch");
  ComplexMatrix b(p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) b(i, j) = x(i, p + j);
  return b;
}

/// The canonical matrix Y(s): the antidiagonal M(s) (M_{i, q+1-i} = s_i) in
/// the top-right q x q corner, its adjoint bottom-left, zeros elsewhere. Its
/// spectrum is nu(s).
inline HermitianMatrix seed_matrix(const std::vector<double>& s, int p, int q) {
  if (q < 1 || p < q || s.size() != static_cast<std::size_t>(q)) throw std::invalid_argument("seed_matrix: bad shape");
  const std::size_t n = static_cast<std::size_t>(p + q);
  ComplexMatrix y(n, n);
  for (int i = 0; i < q; ++i) {
    const std::size_t row = static_cast<std::size_t>(i);
    const std::size_t col = static_cast<std::size_t>(p + q - 1 - i);
    y(row, col) = s[i];
    y(col, row) = s[i];
  }
  return HermitianMatrix(std::move(y));
}

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; derives independent per-sample streams from a seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Standard normal deviates by the Box-Muller transform over a 64-bit engine.
class GaussianSource {
 public:
  explicit GaussianSource(Engine& engine) : engine_(engine) {}

  double next() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Engine& engine_;
  std::optional<double> spare_;
};

/// GUE-style draw: real N(0,1) diagonal, complex off-diagonal entries with
/// independent N(0, 1/2) real and imaginary parts.
inline HermitianMatrix random_hermitian(std::size_t n, Engine& engine) {
  GaussianSource g(engine);
  ComplexMatrix x(n, n);
  const double half = std::sqrt(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, i) = g.next();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = g.next() * half;
      const double im = g.next() * half;
      x(i, j) = Complex(re, im);
      x(j, i) = Complex(re, -im);
    }
  }
  return HermitianMatrix(std::move(x));
}

struct FloatSpectrumPair {
  std::vector<double> lambda;
  std::vector<double> s;

  std::vector<double> point() const {
    std::vector<double> v = lambda;
    v.insert(v.end(), s.begin(), s.end());
    return v;
  }
};

/// (lambda(X), s(pi(X))) for one random Hermitian X; advances the engine.
inline FloatSpectrumPair sample_spectrum_pair(int p, int q, Engine& engine) {
  if (q < 1 || p < q) throw std::invalid_argument("sample_spectrum_pair: need p >= q >= 1");
  auto x = random_hermitian(static_cast<std::size_t>(p + q), engine);
  return {eigenvalues_desc(x), singular_values_desc(block_of(x, p, q))};
}

struct SampleViolation {
  std::size_t sample = 0;
  std::string form;
  double slack = 0.0;
};

struct SampleReport {
  int p = 0, q = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  double min_slack = std::numeric_limits<double>::infinity();
  std::vector<SampleViolation> violations;
};

/// Draws `count` samples (sample i uses the stream stream_seed(seed, i)),
/// evaluates every form of `system` on each, and lists each (sample, form)
/// whose slack falls below -tolerance. Output is independent of thread count.
inline SampleReport soundness_scan(int p, int q, std::size_t count, std::uint64_t seed, const ConeSystem& system,
                                   double tolerance = 1e-8) {
  if (q < 1 || p < q) throw std::invalid_argument("soundness_scan: need p >= q >= 1");
  if (system.dim != static_cast<std::size_t>(p + 2 * q))
    throw std::invalid_argument("soundness_scan: system layout does not match (lambda, s)");
  SampleReport report;
  report.p = p;
  report.q = q;
  report.count = count;
  report.seed = seed;
  report.tolerance = tolerance;

  std::vector<std::vector<double>> dense;
  for (const auto& f : system.forms) {
    std::vector<double> c;
    for (const auto& r : f.coeffs) c.push_back(r.get_d());
    dense.push_back(std::move(c));
  }

  std::vector<double> mins(count, std::numeric_limits<double>::infinity());
  std::vector<std::vector<SampleViolation>> found(count);
  parallel_for(count, [&](std::size_t i) {
    Engine engine(stream_seed(seed, i));
    const auto point = sample_spectrum_pair(p, q, engine).point();
    for (std::size_t f = 0; f < dense.size(); ++f) {
      double slack = 0.0;
      for (std::size_t k = 0; k < point.size(); ++k) slack += dense[f][k] * point[k];
      mins[i] = std::min(mins[i], slack);
      if (slack < -tolerance) found[i].push_back({i, system.forms[f].label, slack});
    }
  });
  for (std::size_t i = 0; i < count; ++i) {
    report.min_slack = std::min(report.min_slack, mins[i]);
    for (auto& v : found[i]) report.violations.push_back(std::move(v));
  }
  return report;
}

struct RealizeOptions {
  int max_iters = 10000;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  /// Step length of the reflect-reflect update; must lie in (0, 2).
  double relaxation = 1.0;
};

struct RealizeResult {
  bool success = false;
  std::optional<HermitianMatrix> witness;
  int iterations = 0;
  double eigen_residual = std::numeric_limits<double>::infinity();
  double singular_residual = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline void check_decreasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) throw std::invalid_argument(std::string(what) + " must be weakly decreasing");
}

// Nearest matrix with spectrum lambda: keep the eigenvectors.
inline ComplexMatrix project_orbit(const ComplexMatrix& c, const std::vector<double>& lambda) {
  auto eig = eigen_decompose(HermitianMatrix::hermitize(c));
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t k = 0; k < scaled.cols(); ++k) scaled(i, k) *= lambda[k];
  return scaled * eig.vectors.adjoint();
}

// Nearest matrix whose off-diagonal block has singular values s: keep the
// diagonal blocks and the singular vectors.
inline ComplexMatrix project_block(ComplexMatrix c, int p, int q, const std::vector<double>& s) {
  auto svd = singular_decompose(block_of(HermitianMatrix::hermitize(c), p, q));
  ComplexMatrix us = svd.u;
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < q; ++k) us(i, k) *= s[k];
  ComplexMatrix block = us * svd.v.adjoint();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      c(i, p + j) = block(i, j);
      c(p + j, i) = std::conj(block(i, j));
    }
  return c;
}

inline ComplexMatrix axpby(double a, const ComplexMatrix& x, double b, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = a * x(i, j) + b * y(i, j);
  return out;
}

}  // namespace detail

/// Searches for Hermitian X with lambda(X) = lambda and s(pi(X)) = s using the
/// two nearest-point maps P_orbit (impose the spectrum) and P_block (impose the
/// off-diagonal singular values). Plain alternating projections stall near
/// the boundary of the cone, where the two sets meet tangentially, so the
/// iterate Z is driven by the relaxed reflect-reflect update
///   Z <- Z + beta * (P_orbit(2 P_block Z - Z) - P_block Z)
/// and each step tests the alternating-projection candidate
/// P_block(P_orbit(P_block Z)). Starts from Y(s), which is returned untouched
/// when it already fits; otherwise random Hermitian diagonal blocks are added
/// first. Failure means "unknown", never "non-member".
inline RealizeResult realize(int p, int q, const std::vector<double>& lambda, const std::vector<double>& s,
                             const RealizeOptions& opts = {}) {
  if (q < 1 || p < q) throw std::invalid_argument("realize: need p >= q >= 1");
  if (lambda.size() != static_cast<std::size_t>(p + q) || s.size() != static_cast<std::size_t>(q))
    throw std::invalid_argument("realize: lambda must have length p+q and s length q");
  detail::check_decreasing(lambda, "lambda");
  detail::check_decreasing(s, "s");
  if (s.back() < 0.0) throw std::invalid_argument("realize: s must be nonnegative");
  if (opts.max_iters < 0 || !(opts.tol > 0.0)) throw std::invalid_argument("realize: need iters >= 0 and tol > 0");
  if (!(opts.relaxation > 0.0 && opts.relaxation < 2.0))
    throw std::invalid_argument("realize: relaxation must lie in (0, 2)");

  RealizeResult result;
  auto measure = [&](const HermitianMatrix& x) {
    result.eigen_residual = detail::max_abs_diff(eigenvalues_desc(x), lambda);
    result.singular_residual = detail::max_abs_diff(singular_values_desc(block_of(x, p, q)), s);
    return result.eigen_residual <= opts.tol && result.singular_residual <= opts.tol;
  };

  HermitianMatrix x = seed_matrix(s, p, q);
  if (measure(x)) {
    result.success = true;
    result.witness = x;
    return result;
  }

  Engine engine(opts.seed);
  double scale = 1.0;
  for (double l : lambda) scale = std::max(scale, std::abs(l));
  ComplexMatrix z = x.matrix();
  {
    auto top = random_hermitian(static_cast<std::size_t>(p), engine);
    auto bottom = random_hermitian(static_cast<std::size_t>(q), engine);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) z(i, j) += scale * top(i, j);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) z(p + i, p + j) += scale * bottom(i, j);
  }

  for (int it = 1; it <= opts.max_iters; ++it) {
    const ComplexMatrix pb = detail::project_block(z, p, q, s);
    auto candidate = HermitianMatrix::hermitize(detail::project_block(detail::project_orbit(pb, lambda), p, q, s));
    result.iterations = it;
    if (measure(candidate)) {
      result.success = true;
      result.witness = std::move(candidate);
      return result;
    }
    const ComplexMatrix pa = detail::project_orbit(detail::axpby(2.0, pb, -1.0, z), lambda);
    z = detail::axpby(1.0, z, opts.relaxation, detail::axpby(1.0, pa, -1.0, pb));
  }
  return result;
}

inline RealizeResult realize(const SpectrumPair& sp, const RealizeOptions& opts = {}) {
  std::vector<double> l, s;
  for (const auto& e : sp.lambda().entries()) l.push_back(e.get_d());
  for (const auto& e : sp.s().entries()) s.push_back(e.get_d());
  return realize(sp.p(), sp.q(), l, s, opts);
}

}  // namespace hornapq
