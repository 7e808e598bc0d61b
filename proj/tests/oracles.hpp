#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here is deliberately written in the most literal way possible, independent
// of the decompositions the library uses.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "rotspin/pauli.hpp"

namespace oracles {

using rotspin::cplx;
using rotspin::CVec3;
using rotspin::PauliCoeff;
using rotspin::Vec3;

// Dense 2x2 complex matrix in the standard basis.
struct Mat2 {
  std::array<std::array<cplx, 2>, 2> a{};
};

inline Mat2 to_mat(const PauliCoeff& p) {
  const cplx i(0.0, 1.0);
  Mat2 m;
  m.a[0][0] = p.c0 + p.cv[2];
  m.a[0][1] = p.cv[0] - i * p.cv[1];
  m.a[1][0] = p.cv[0] + i * p.cv[1];
  m.a[1][1] = p.c0 - p.cv[2];
  return m;
}

inline PauliCoeff from_mat(const Mat2& m) {
  const cplx i(0.0, 1.0);
  PauliCoeff p;
  p.c0 = 0.5 * (m.a[0][0] + m.a[1][1]);
  p.cv[2] = 0.5 * (m.a[0][0] - m.a[1][1]);
  p.cv[0] = 0.5 * (m.a[0][1] + m.a[1][0]);
  p.cv[1] = 0.5 * i * (m.a[0][1] - m.a[1][0]);
  return p;
}

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r.a[i][j] += x.a[i][k] * y.a[k][j];
  return r;
}

inline Mat2 add(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = x.a[i][j] + y.a[i][j];
  return r;
}

inline Mat2 sub(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = x.a[i][j] - y.a[i][j];
  return r;
}

inline cplx trace(const Mat2& m) { return m.a[0][0] + m.a[1][1]; }

inline double max_abs_diff(const Mat2& x, const Mat2& y) {
  double r = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(x.a[i][j] - y.a[i][j]));
  return r;
}

// Spin coherent state pointing along the unit vector n with projection
// zeta = +-1; used to check scalarization as a genuine expectation value.
inline std::array<cplx, 2> spinor(const Vec3& n, int zeta) {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  const cplx i(0.0, 1.0);
  std::array<cplx, 2> up{std::cos(0.5 * theta),
                         std::exp(i * phi) * std::sin(0.5 * theta)};
  if (zeta > 0) return up;
  return {-std::exp(-i * phi) * std::sin(0.5 * theta), cplx(std::cos(0.5 * theta))};
}

inline cplx expectation(const Mat2& m, const std::array<cplx, 2>& chi) {
  cplx r = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r += std::conj(chi[i]) * m.a[i][j] * chi[j];
  return r;
}

// Pfaffian by cofactor expansion along the first row; exponential cost, so
// only usable for the small matrices the tests feed it.
inline double pfaffian_recursive(const std::vector<std::vector<double>>& A) {
  const std::size_t n = A.size();
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  if (n == 0) return 1.0;
  if (n == 2) return A[0][1];
  double sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::vector<double>> sub;
    sub.reserve(n - 2);
    for (std::size_t r = 1; r < n; ++r) {
      if (r == j) continue;
      std::vector<double> row;
      row.reserve(n - 2);
      for (std::size_t c = 1; c < n; ++c) {
        if (c == j) continue;
        row.push_back(A[r][c]);
      }
      sub.push_back(std::move(row));
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    sum += sign * A[0][j] * pfaffian_recursive(sub);
  }
  return sum;
}

// Deterministic random draws for the property tests.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uni(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng);
  }
  Vec3 vec(double a, double b) { return {uni(a, b), uni(a, b), uni(a, b)}; }
  Vec3 unit() {
    Vec3 v;
    do v = vec(-1.0, 1.0);
    while (rotspin::norm(v) < 1e-2);
    return rotspin::normalized(v);
  }
  cplx c(double a, double b) { return {uni(a, b), uni(a, b)}; }
  PauliCoeff pauli(double a, double b) {
    PauliCoeff p;
    p.c0 = c(a, b);
    p.cv = {c(a, b), c(a, b), c(a, b)};
    return p;
  }
};

}  // namespace oracles
