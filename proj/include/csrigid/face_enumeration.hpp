#pragma once

#include "csrigid/rational.hpp"
#include "csrigid/simplicial_complex.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csrigid {

/// Face counts: counts[j] = f_{j-1}, j = 0..d, with f_{-1} = 1.
struct FVector {
  std::vector<long long> counts;

  int d() const { return static_cast<int>(counts.size()) - 1; }

  friend bool operator==(const FVector& a, const FVector& b) = default;

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i) os << ',';
      os << counts[i];
    }
    os << ')';
    return os.str();
  }
};

inline FVector f_vector(const SimplicialComplex& c) {
  FVector fv;
  fv.counts.push_back(1);
  for (int i = 0; i <= c.dim(); ++i) fv.counts.push_back(c.face_count(i));
  return fv;
}

/// Integer polynomial, coefficient of x^i at index i, trailing zeros trimmed.
struct IntPolynomial {
  std::vector<long long> c;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<long long> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  long long coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0;
  }

  long long eval(long long x) const {
    long long acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c[i];
    return acc;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c == b.c; }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(r));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c.empty() || b.c.empty()) return IntPolynomial();
    std::vector<long long> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPolynomial(std::move(r));
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (!first) os << (c[i] > 0 ? " + " : " - ");
      else if (c[i] < 0) os << "-";
      long long mag = c[i] > 0 ? c[i] : -c[i];
      if (i == 0) os << mag;
      else {
        if (mag != 1) os << mag;
        os << "x";
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    return os.str();
  }
};

/// h-numbers h_0..h_D of a complex of dimension <= D-1, from the defining
/// transform sum_j f_{j-1} (x-1)^{D-j} = sum_i h_i x^{D-i}.
inline std::vector<long long> h_vector(const SimplicialComplex& c, int ambient_d) {
  if (ambient_d < c.dim() + 1)
    throw std::invalid_argument("h_vector: ambient d below complex dimension");
  int D = ambient_d;
  std::vector<long long> p(D + 1, 0);  // p[k] = coefficient of x^k
  for (int j = 0; j <= D; ++j) {
    long long fj = c.face_count(j - 1);
    if (fj == 0) continue;
    int m = D - j;
    for (int t = 0; t <= m; ++t) {
      long long sign = ((m - t) % 2 == 0) ? 1 : -1;
      p[t] += fj * sign * binomial(m, t);
    }
  }
  std::vector<long long> h(D + 1);
  for (int i = 0; i <= D; ++i) h[i] = p[D - i];
  return h;
}

/// h-polynomial with coefficient of x^i equal to h_i. For spheres the h-vector
/// is symmetric so this matches the reversed reading as well; the ascending
/// order is the one under which the local-h decomposition is an identity.
inline IntPolynomial h_polynomial_with_ambient(const SimplicialComplex& c, int ambient_d) {
  return IntPolynomial(h_vector(c, ambient_d));
}

inline IntPolynomial h_polynomial(const SimplicialComplex& c) {
  if (!c.is_pure()) throw std::invalid_argument("h_polynomial: complex is not pure");
  return h_polynomial_with_ambient(c, c.dim() + 1);
}

/// g_r = h_r - h_{r-1}; cross-checked against the alternating binomial sum.
inline long long g_number(const SimplicialComplex& c, int r) {
  int d = c.dim() + 1;
  if (r < 0 || r > d) throw std::invalid_argument("g_number: r out of range");
  std::vector<long long> h = h_vector(c, d);
  long long g = h[r] - (r > 0 ? h[r - 1] : 0);
  long long alt = 0;
  for (int j = 0; j <= r; ++j) {
    long long sign = ((r - j) % 2 == 0) ? 1 : -1;
    alt += sign * c.face_count(j - 1) * binomial(d - j + 1, r - j);
  }
  assert(g == alt);
  (void)alt;
  return g;
}

inline long long g2_from_counts(long long f0, long long f1, int d) {
  if (d < 1) throw std::invalid_argument("g2_from_counts: d must be >= 1");
  return f1 - static_cast<long long>(d) * f0 + binomial(d + 1, 2);
}

/// Reduced Euler relation for boundary spheres:
/// sum_{i=-1}^{dim} (-1)^i f_i = (-1)^{dim}.
inline bool euler_relation_holds(const SimplicialComplex& c) {
  long long acc = -1;  // i = -1 term
  long long sign = 1;
  for (int i = 0; i <= c.dim(); ++i, sign = -sign) acc += sign * c.face_count(i);
  long long expected = (c.dim() % 2 == 0) ? 1 : -1;
  return acc == expected;
}

}  // namespace csrigid
