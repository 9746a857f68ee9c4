#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace topocrystal {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using LVec = std::vector<long long>;
using LMat = std::vector<LVec>;
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

// Canonical rational rendering: "num/den" with den >= 1, gcd-reduced.
inline std::string rat_str(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline int rat_sign(const Rat& r) { return r.sign(); }

// Exact determinant by fraction-free (Bareiss) elimination.  Every division
// in the recurrence is exact, so intermediates stay integral and bounded by
// minors of the input.
inline Int bareiss_determinant(const LMat& in) {
  const std::size_t n = in.size();
  if (n == 0) return 1;
  IMat m(n, IVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i].size() != n) throw std::invalid_argument("bareiss_determinant: not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = in[i][j];
  }
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Exact inverse over the rationals by Gauss-Jordan elimination.
// Throws if the matrix is singular.
inline RMat rational_inverse(const LMat& in) {
  const std::size_t n = in.size();
  RMat a(n, RVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i].size() != n) throw std::invalid_argument("rational_inverse: not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = in[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw std::domain_error("rational_inverse: singular matrix");
    std::swap(a[k], a[piv]);
    const Rat d = a[k][k];
    for (std::size_t j = k; j < 2 * n; ++j) a[k][j] /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rat f = a[i][k];
      for (std::size_t j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  RMat inv(n, RVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][j + n];
  return inv;
}

// 64-bit FNV-1a; used to derive deterministic per-graph seeds.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64: small deterministic generator for property checks.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace topocrystal
