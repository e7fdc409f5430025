#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"

namespace coble {

/// Dense univariate polynomial, coefficients lowest-degree first, trailing
/// zeros trimmed. The zero polynomial has an empty coefficient list.
template <class K>
struct UniPoly {
  std::vector<K> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
  static UniPoly constant(const K& x) {
    UniPoly f;
    if (!is_zero(x)) f.c = {x};
    return f;
  }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  int degree() const { return int(c.size()) - 1; }  // -1 for zero
  const K& coeff(int i) const {
    static const K zero{};
    return (i >= 0 && i < int(c.size())) ? c[std::size_t(i)] : zero;
  }

  friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
    UniPoly h;
    h.c.resize(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < h.c.size(); ++i) {
      if (i < f.c.size()) h.c[i] += f.c[i];
      if (i < g.c.size()) h.c[i] += g.c[i];
    }
    h.trim();
    return h;
  }
  friend UniPoly operator-(const UniPoly& f) {
    UniPoly h = f;
    for (auto& x : h.c) x = -x;
    return h;
  }
  friend UniPoly operator-(const UniPoly& f, const UniPoly& g) { return f + (-g); }
  friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
    if (f.c.empty() || g.c.empty()) return UniPoly{};
    UniPoly h;
    h.c.resize(f.c.size() + g.c.size() - 1);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      if (is_zero(f.c[i])) continue;
      for (std::size_t j = 0; j < g.c.size(); ++j) h.c[i + j] += f.c[i] * g.c[j];
    }
    h.trim();
    return h;
  }
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  friend bool operator==(const UniPoly& f, const UniPoly& g) { return f.c == g.c; }
  friend bool operator!=(const UniPoly& f, const UniPoly& g) { return !(f == g); }

  friend bool is_zero(const UniPoly& f) { return f.c.empty(); }
  friend bool is_unit(const UniPoly& f) { return f.degree() == 0 && is_unit(f.c[0]); }

  K eval(const K& t) const {
    K acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

template <class K>
UniPoly<K> scalar_like_impl(std::int64_t n, const UniPoly<K>& like) {
  if (like.c.empty())
    throw std::domain_error("scalar_like: cannot infer coefficient field");
  return UniPoly<K>::constant(scalar_like(n, like.c[0]));
}

/// Quotient and remainder; requires the leading coefficient of g invertible.
template <class K>
std::pair<UniPoly<K>, UniPoly<K>> divrem(UniPoly<K> f, const UniPoly<K>& g) {
  if (is_zero(g)) throw std::domain_error("divrem: division by zero polynomial");
  const K lead_inv = inv(g.c.back());
  int dg = g.degree();
  UniPoly<K> q;
  if (f.degree() >= dg) q.c.resize(std::size_t(f.degree() - dg) + 1);
  while (f.degree() >= dg) {
    int shift = f.degree() - dg;
    K factor = f.c.back() * lead_inv;
    q.c[std::size_t(shift)] = factor;
    for (int i = 0; i <= dg; ++i)
      f.c[std::size_t(i + shift)] -= factor * g.c[std::size_t(i)];
    f.trim();
  }
  q.trim();
  return {std::move(q), std::move(f)};
}

/// Exact polynomial division; throws if the remainder is nonzero.
template <class K>
UniPoly<K> exact_div(const UniPoly<K>& f, const UniPoly<K>& g) {
  auto [q, r] = divrem(f, g);
  if (!is_zero(r)) throw std::domain_error("exact_div: inexact polynomial division");
  return q;
}

template <class K>
UniPoly<K> gcd(UniPoly<K> f, UniPoly<K> g) {
  while (!is_zero(g)) {
    auto [q, r] = divrem(std::move(f), g);
    f = std::move(g);
    g = std::move(r);
  }
  if (!is_zero(f)) {
    K lead_inv = inv(f.c.back());
    for (auto& x : f.c) x = x * lead_inv;
  }
  return f;
}

template <class K>
UniPoly<K> derivative(const UniPoly<K>& f) {
  UniPoly<K> d;
  for (int i = 1; i <= f.degree(); ++i)
    d.c.push_back(scalar_like<K>(i, f.c[std::size_t(i)]) * f.c[std::size_t(i)]);
  d.trim();
  return d;
}

constexpr int ORDER_INFINITE = std::numeric_limits<int>::max();

/// Order of vanishing at t = 0; ORDER_INFINITE for the zero polynomial.
template <class K>
int vanishing_order(const UniPoly<K>& f) {
  if (is_zero(f)) return ORDER_INFINITE;
  for (std::size_t i = 0; i < f.c.size(); ++i)
    if (!is_zero(f.c[i])) return int(i);
  return ORDER_INFINITE;  // unreachable
}

inline boost::multiprecision::cpp_int icbrt_exact(
    const boost::multiprecision::cpp_int& n, bool& ok) {
  using boost::multiprecision::cpp_int;
  if (n < 0) {
    cpp_int r = icbrt_exact(-n, ok);
    return -r;
  }
  cpp_int lo = 0, hi = n + 1;
  while (lo < hi) {  // least r with r^3 >= n
    cpp_int mid = (lo + hi) / 2;
    if (mid * mid * mid < n)
      lo = mid + 1;
    else
      hi = mid;
  }
  ok = (lo * lo * lo == n);
  return lo;
}

inline std::optional<Rat> cube_root_scalar(const Rat& x) {
  using boost::multiprecision::cpp_int;
  bool okn = false, okd = false;
  cpp_int rn = icbrt_exact(numerator(x), okn);
  cpp_int rd = icbrt_exact(denominator(x), okd);
  if (!okn || !okd) return std::nullopt;
  return Rat(rn, rd);
}

inline std::optional<Fp> cube_root_scalar(const Fp& x) {
  if (!x.p || x.v == 0) return x;
  if (x.p % 3 == 2) return cube_root(x);
  Fp r = pow(x, (x.p - 1) / 3);  // cube residues are the kernel of this map
  if (!(r == Fp(1, x.p))) return std::nullopt;
  // p = 1 (mod 3): search (fields used here are small).
  for (std::uint64_t g = 1; g < x.p; ++g) {
    Fp cand = Fp(std::int64_t(g), x.p);
    if (cand * cand * cand == x) return cand;
  }
  return std::nullopt;
}

/// Whether f = g^3 for some polynomial g; if so returns g. Determined by
/// top-down undetermined coefficients, so it works in any characteristic
/// except 3.
template <class K>
std::optional<UniPoly<K>> cube_root_poly(const UniPoly<K>& f) {
  if (is_zero(f)) return UniPoly<K>{};
  int d = f.degree();
  if (d % 3 != 0) return std::nullopt;
  int e = d / 3;
  auto lead = cube_root_scalar(f.c.back());
  if (!lead) return std::nullopt;
  UniPoly<K> g;
  g.c.assign(std::size_t(e) + 1, scalar_like(0, f.c.back()));
  g.c[std::size_t(e)] = *lead;
  K three_g2 = scalar_like(3, *lead) * (*lead) * (*lead);
  if (is_zero(three_g2)) throw std::domain_error("cube_root_poly: characteristic 3");
  K inv3g2 = inv(three_g2);
  for (int k = 1; k <= e; ++k) {
    // Coefficient of x^{3e-k} in g^3 equals 3*g_e^2*g_{e-k} + (terms in
    // already-known g_{e-1}..g_{e-k+1}).
    K acc{};
    for (int i = e - k + 1; i <= e; ++i)
      for (int j = e - k + 1; j <= e; ++j) {
        int l = 3 * e - k - i - j;
        if (l < e - k + 1 || l > e) continue;
        acc += g.c[std::size_t(i)] * g.c[std::size_t(j)] * g.c[std::size_t(l)];
      }
    g.c[std::size_t(e - k)] = (f.coeff(3 * e - k) - acc) * inv3g2;
  }
  g.trim();
  if (g * g * g == f) return g;
  return std::nullopt;
}

template <class K>
bool is_perfect_cube(const UniPoly<K>& f) {
  return cube_root_poly(f).has_value();
}

}  // namespace coble
