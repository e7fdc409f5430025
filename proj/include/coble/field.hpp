#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coble {

/// Arbitrary-precision rational scalar.
using Rat = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_unit(const Rat& x) { return x != 0; }
inline Rat inv(const Rat& x) {
  if (x == 0) throw std::domain_error("inv: division by zero");
  return Rat(1) / x;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime-field scalar. The modulus travels with the value; a
/// default-constructed element is an absorbing zero that unifies with any
/// modulus, so empty sums work in generic code.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;  // 0 = modulus not yet bound

  Fp() = default;
  Fp(std::int64_t x, std::uint64_t prime) : p(prime) {
    static thread_local std::uint64_t checked = 0;
    if (prime != checked) {
      if (prime < 3 || prime % 2 == 0 || !is_prime_u64(prime))
        throw std::invalid_argument("Fp: modulus must be an odd prime");
      checked = prime;
    }
    std::int64_t r = x % static_cast<std::int64_t>(prime);
    if (r < 0) r += static_cast<std::int64_t>(prime);
    v = static_cast<std::uint64_t>(r);
  }

  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp x;
    x.v = v;
    x.p = p;
    return x;
  }

  friend std::uint64_t common_mod(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) throw std::invalid_argument("Fp: modulus mismatch");
    return a.p ? a.p : b.p;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = common_mod(a, b);
    if (!m) return Fp{};
    std::uint64_t s = a.v + b.v;
    if (s >= m) s -= m;
    return raw(s, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = common_mod(a, b);
    if (!m) return Fp{};
    return raw(a.v >= b.v ? a.v - b.v : a.v + m - b.v, m);
  }
  friend Fp operator-(const Fp& a) {
    if (!a.p) return a;
    return raw(a.v ? a.p - a.v : 0, a.p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = common_mod(a, b);
    if (!m) return Fp{};
    return raw((a.v * b.v) % m, m);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * inv(b); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) return false;
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend Fp pow(Fp a, std::uint64_t e) {
    if (!a.p) return a;
    Fp r = raw(1, a.p);
    while (e) {
      if (e & 1) r *= a;
      a *= a;
      e >>= 1;
    }
    return r;
  }

  friend bool is_zero(const Fp& a) { return a.v == 0; }
  friend bool is_unit(const Fp& a) { return a.v != 0; }
  friend Fp inv(const Fp& a) {
    if (!a.p || a.v == 0) throw std::domain_error("Fp: division by zero");
    return pow(a, a.p - 2);
  }
};

/// Unique cube root in F_p for p = 2 (mod 3), where cubing is a bijection.
inline Fp cube_root(const Fp& a) {
  if (!a.p) return a;
  if (a.p % 3 != 2) throw std::domain_error("cube_root: need p = 2 (mod 3)");
  return pow(a, (2 * a.p - 1) / 3);
}

/// Degree-1 truncated polynomial a + b*eps, eps^2 = 0. Used for exact
/// first-order derivatives through otherwise field-generic code.
template <class K>
struct Jet {
  K a{};  // value
  K b{};  // derivative

  Jet() = default;
  Jet(K value) : a(std::move(value)) {}
  Jet(K value, K deriv) : a(std::move(value)), b(std::move(deriv)) {}

  friend Jet operator+(const Jet& x, const Jet& y) { return {x.a + y.a, x.b + y.b}; }
  friend Jet operator-(const Jet& x, const Jet& y) { return {x.a - y.a, x.b - y.b}; }
  friend Jet operator-(const Jet& x) { return {-x.a, -x.b}; }
  friend Jet operator*(const Jet& x, const Jet& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend Jet operator/(const Jet& x, const Jet& y) { return x * inv(y); }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  friend bool operator==(const Jet& x, const Jet& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Jet& x, const Jet& y) { return !(x == y); }

  friend bool is_zero(const Jet& x) { return is_zero(x.a) && is_zero(x.b); }
  friend bool is_unit(const Jet& x) { return is_unit(x.a); }
  friend Jet inv(const Jet& x) {
    K ia = inv(x.a);
    return {ia, -(ia * ia * x.b)};
  }
};

/// Builds the scalar n*1 in the same field/ring as `like`.
template <class K>
K scalar_like(std::int64_t n, const K& like);

inline Rat scalar_like_impl(std::int64_t n, const Rat&) { return Rat(n); }
inline Fp scalar_like_impl(std::int64_t n, const Fp& like) {
  if (!like.p) throw std::domain_error("scalar_like: unbound Fp");
  return Fp(n, like.p);
}
template <class K>
Jet<K> scalar_like_impl(std::int64_t n, const Jet<K>& like) {
  return Jet<K>(scalar_like(n, like.a));
}
template <class K>
K scalar_like(std::int64_t n, const K& like) {
  return scalar_like_impl(n, like);
}

}  // namespace coble
