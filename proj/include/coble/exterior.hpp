#pragma once

#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "multiindex.hpp"

namespace coble {

/// Variance of an alternating tensor: element of Wedge^k V or Wedge^k V^dual.
enum class Var { Vec, Cov };

inline Var dual_var(Var v) { return v == Var::Vec ? Var::Cov : Var::Vec; }

/// Sparse-friendly dense alternating tensor over a fixed n-dimensional space,
/// coefficients indexed by lex-ordered k-subsets.
template <class K>
struct AltTensor {
  int n = 0, k = 0;
  Var var = Var::Vec;
  std::vector<K> c;

  AltTensor() = default;
  AltTensor(int n_, int k_, Var v) : n(n_), k(k_), var(v) {
    c.assign(index_table(n, k).size(), K{});
  }

  const IndexTable& table() const { return index_table(n, k); }

  K& coeff(Mask m) { return c[std::size_t(table().rank(m))]; }
  const K& coeff(Mask m) const { return c[std::size_t(table().rank(m))]; }

  void add_term(Mask m, const K& x) { coeff(m) += x; }

  bool zero() const {
    for (const auto& x : c)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const AltTensor& a, const AltTensor& b) {
    return a.n == b.n && a.k == b.k && a.var == b.var && a.c == b.c;
  }

  friend AltTensor operator+(const AltTensor& a, const AltTensor& b) {
    if (a.n != b.n || a.k != b.k || a.var != b.var)
      throw std::invalid_argument("AltTensor: shape mismatch");
    AltTensor r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend AltTensor operator-(const AltTensor& a, const AltTensor& b) {
    if (a.n != b.n || a.k != b.k || a.var != b.var)
      throw std::invalid_argument("AltTensor: shape mismatch");
    AltTensor r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend AltTensor operator*(const K& s, const AltTensor& a) {
    AltTensor r = a;
    for (auto& x : r.c) x = s * x;
    return r;
  }
};

template <class K>
AltTensor<K> wedge(const AltTensor<K>& a, const AltTensor<K>& b) {
  if (a.n != b.n || a.var != b.var)
    throw std::invalid_argument("wedge: incompatible tensors");
  AltTensor<K> r(a.n, a.k + b.k, a.var);
  if (a.k + b.k > a.n) return r;  // identically zero
  const auto& ta = a.table();
  const auto& tb = b.table();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    Mask ma = ta.masks[i];
    for (std::size_t j = 0; j < tb.size(); ++j) {
      if (is_zero(b.c[j])) continue;
      Mask mb = tb.masks[j];
      if (ma & mb) continue;
      int s = sign_merge(ma, mb);
      K term = a.c[i] * b.c[j];
      if (s < 0) term = -term;
      r.coeff(ma | mb) += term;
    }
  }
  return r;
}

/// Degree-1 tensor from coordinates.
template <class K>
AltTensor<K> vec_tensor(const std::vector<K>& x, Var var = Var::Vec) {
  AltTensor<K> r(int(x.size()), 1, var);
  for (std::size_t i = 0; i < x.size(); ++i) r.c[i] = x[i];
  return r;
}

/// Interior product x -| phi where the coordinates x pair with phi's first
/// slot: (x -| phi)_J = sum_i x_i * sign(i into J) * phi_{J + i}.
template <class K>
AltTensor<K> contract(const std::vector<K>& x, const AltTensor<K>& phi) {
  if (int(x.size()) != phi.n) throw std::invalid_argument("contract: dim mismatch");
  if (phi.k == 0) throw std::invalid_argument("contract: degree-0 tensor");
  AltTensor<K> r(phi.n, phi.k - 1, phi.var);
  const auto& tr = r.table();
  for (std::size_t jr = 0; jr < tr.size(); ++jr) {
    Mask J = tr.masks[jr];
    K acc{};
    for (int i = 0; i < phi.n; ++i) {
      Mask bi = Mask(1) << i;
      if (J & bi) continue;
      if (is_zero(x[std::size_t(i)])) continue;
      K term = x[std::size_t(i)] * phi.coeff(J | bi);
      if (sign_insert_front(i, J) < 0) term = -term;
      acc += term;
    }
    r.c[jr] = acc;
  }
  return r;
}

/// Hodge-style duality from the standard volume form scaled by `scale`:
/// for vectors, e_I -> eps(I, comp I) * scale * e^dual_{comp I}; the map on
/// covectors uses the same coefficients, landing back in vectors.
template <class K>
AltTensor<K> hodge_dual(const AltTensor<K>& a, const K& scale) {
  AltTensor<K> r(a.n, a.n - a.k, dual_var(a.var));
  Mask full = (Mask(1) << a.n) - 1;
  const auto& ta = a.table();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    Mask I = ta.masks[i];
    Mask J = full & ~I;
    K term = scale * a.c[i];
    if (sign_merge(I, J) < 0) term = -term;
    r.coeff(J) = term;
  }
  return r;
}

template <class K>
AltTensor<K> hodge_dual(const AltTensor<K>& a) {
  K one{};
  for (const auto& x : a.c)
    if (!is_zero(x)) {
      one = scalar_like(1, x);
      break;
    }
  if (is_zero(one)) throw std::domain_error("hodge_dual: zero tensor, field unknown");
  return hodge_dual(a, one);
}

/// Full coordinate pairing of a covariant and a contravariant tensor of the
/// same degree.
template <class K>
K full_pair(const AltTensor<K>& a, const AltTensor<K>& b) {
  if (a.n != b.n || a.k != b.k || a.var == b.var)
    throw std::invalid_argument("full_pair: incompatible tensors");
  K acc{};
  for (std::size_t i = 0; i < a.c.size(); ++i) acc += a.c[i] * b.c[i];
  return acc;
}

/// Subspace of K^n stored as a row-reduced echelon basis (d x n).
template <class K>
struct Subspace {
  int n = 0;
  Mat<K> rows;               // RREF, one basis vector per row
  std::vector<int> pivots;   // pivot column of each row

  Subspace() = default;

  static Subspace from_vectors(int n, const std::vector<std::vector<K>>& gens) {
    Mat<K> m(int(gens.size()), n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (int(gens[i].size()) != n)
        throw std::invalid_argument("Subspace: wrong vector length");
      for (int j = 0; j < n; ++j) m.at(int(i), j) = gens[i][std::size_t(j)];
    }
    auto piv = rref_inplace(m);
    Subspace s;
    s.n = n;
    s.pivots = piv;
    s.rows = Mat<K>(int(piv.size()), n);
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (int j = 0; j < n; ++j) s.rows.at(int(r), j) = m.at(int(r), j);
    return s;
  }

  int dim() const { return rows.nr; }

  std::vector<int> nonpivots() const {
    std::vector<bool> p(n, false);
    for (int c : pivots) p[std::size_t(c)] = true;
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
      if (!p[std::size_t(j)]) out.push_back(j);
    return out;
  }

  std::vector<K> basis_vector(int r) const {
    std::vector<K> v(std::size_t(n), K{});
    for (int j = 0; j < n; ++j) v[std::size_t(j)] = rows.at(r, j);
    return v;
  }

  bool contains(std::vector<K> x) const {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      K f = x[std::size_t(pivots[r])];
      if (is_zero(f)) continue;
      for (int j = 0; j < n; ++j) x[std::size_t(j)] -= f * rows.at(int(r), j);
    }
    for (const auto& xi : x)
      if (!is_zero(xi)) return false;
    return true;
  }

  bool contains_subspace(const Subspace& other) const {
    for (int r = 0; r < other.dim(); ++r)
      if (!contains(other.basis_vector(r))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n == b.n && a.rows == b.rows;
  }

  /// Annihilator in the dual space: vectors of functionals killing this
  /// subspace (a (n-d)-dim subspace of coordinates of V^dual).
  Subspace annihilator(const K& like) const {
    auto ker = kernel_basis(rows, like);
    return from_vectors(n, ker);
  }
};

/// Pushes a tensor through the linear map e_i -> sum_j images[i] (pairs of
/// target coordinate and coefficient), into an m-dimensional target.
template <class K>
AltTensor<K> linear_substitute(const AltTensor<K>& v,
                               const std::vector<std::vector<std::pair<int, K>>>& images,
                               int m) {
  AltTensor<K> out(m, v.k, v.var);
  if (v.k > m) return out;
  const auto& tv = v.table();
  for (std::size_t ti = 0; ti < tv.size(); ++ti) {
    if (is_zero(v.c[ti])) continue;
    std::vector<std::pair<Mask, K>> acc{{Mask(0), v.c[ti]}};
    for (int i : mask_bits(tv.masks[ti])) {
      std::vector<std::pair<Mask, K>> next;
      for (auto& [mask, cval] : acc)
        for (auto& [q, e] : images[std::size_t(i)]) {
          Mask bq = Mask(1) << q;
          if (mask & bq) continue;
          K t = cval * e;
          if (sign_append(mask, q) < 0) t = -t;
          next.emplace_back(mask | bq, t);
        }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (auto& [mask, cval] : acc) out.coeff(mask) += cval;
  }
  return out;
}

/// Image of a tensor under the projection V -> V/U in the canonical
/// complement coordinates (the non-pivot standard coordinates of U's RREF).
template <class K>
AltTensor<K> quotient_reduce(const AltTensor<K>& v, const Subspace<K>& U) {
  if (v.var != Var::Vec) throw std::invalid_argument("quotient_reduce: need vectors");
  if (U.n != v.n) throw std::invalid_argument("quotient_reduce: dim mismatch");
  int nq = v.n - U.dim();
  std::vector<int> np = U.nonpivots();
  std::vector<int> pos(std::size_t(v.n), -1);  // ambient index -> quotient coord
  for (std::size_t q = 0; q < np.size(); ++q) pos[std::size_t(np[q])] = int(q);

  // images of pivot basis vectors in quotient coordinates (non-pivot e_j maps
  // to its own coordinate and is handled directly in the expansion below)
  std::vector<std::vector<std::pair<int, K>>> img(std::size_t(v.n));
  for (std::size_t r = 0; r < U.pivots.size(); ++r)
    for (int j : np) {
      const K& e = U.rows.at(int(r), j);
      if (!is_zero(e)) img[std::size_t(U.pivots[r])].emplace_back(pos[std::size_t(j)], -e);
    }

  AltTensor<K> out(nq, v.k, Var::Vec);
  if (v.k > nq) return out;
  const auto& tv = v.table();
  for (std::size_t ti = 0; ti < tv.size(); ++ti) {
    if (is_zero(v.c[ti])) continue;
    std::vector<std::pair<Mask, K>> acc{{Mask(0), v.c[ti]}};
    for (int i : mask_bits(tv.masks[ti])) {
      std::vector<std::pair<Mask, K>> next;
      if (pos[std::size_t(i)] >= 0) {
        int q = pos[std::size_t(i)];
        for (auto& [m, cval] : acc) {
          Mask bq = Mask(1) << q;
          if (m & bq) continue;
          K t = cval;
          if (sign_append(m, q) < 0) t = -t;
          next.emplace_back(m | bq, t);
        }
      } else {
        for (auto& [m, cval] : acc)
          for (auto& [q, e] : img[std::size_t(i)]) {
            Mask bq = Mask(1) << q;
            if (m & bq) continue;
            K t = cval * e;
            if (sign_append(m, q) < 0) t = -t;
            next.emplace_back(m | bq, t);
          }
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (auto& [m, cval] : acc) out.coeff(m) += cval;
  }
  return out;
}

/// Skew 6x6 matrix A on V/U2 (canonical complement coordinates) defined by
/// vbar ^ f_a ^ f_b = A_{ab} * vol_6, where vbar is v mod U2.
template <class K>
Mat<K> induced_two_form(const AltTensor<K>& v, const Subspace<K>& U2) {
  if (U2.dim() != 2 || v.k != 4 || v.n != 8)
    throw std::invalid_argument("induced_two_form: need a 4-form on V8 and dim-2 U");
  AltTensor<K> vbar = quotient_reduce(v, U2);
  Mat<K> A(6, 6);
  Mask full = (Mask(1) << 6) - 1;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      Mask mab = (Mask(1) << a) | (Mask(1) << b);
      Mask I = full & ~mab;
      K val = vbar.coeff(I);
      if (sign_merge(I, mab) < 0) val = -val;
      A.at(a, b) = val;
      A.at(b, a) = -val;
    }
  return A;
}

/// One summand of a wedge pattern: wedge of (degree, space) factors, where
/// space < 0 denotes the ambient V.
struct PatternFactor {
  int degree;
  int space;
};
using WedgePattern = std::vector<std::vector<PatternFactor>>;

/// Row-reduced span of vectors in a big coordinate space, with membership.
template <class K>
struct LinSpan {
  int N = 0;
  Mat<K> rows;  // RREF r x N
  std::vector<int> pivots;

  static LinSpan from_rows(int N, const std::vector<std::vector<K>>& gens) {
    Subspace<K> s = Subspace<K>::from_vectors(N, gens);
    LinSpan l;
    l.N = N;
    l.rows = s.rows;
    l.pivots = s.pivots;
    return l;
  }

  int dim() const { return rows.nr; }

  bool contains(std::vector<K> x) const {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      K f = x[std::size_t(pivots[r])];
      if (is_zero(f)) continue;
      for (int j = 0; j < N; ++j) x[std::size_t(j)] -= f * rows.at(int(r), j);
    }
    for (const auto& xi : x)
      if (!is_zero(xi)) return false;
    return true;
  }
};

/// Span, inside Wedge^k V, of a sum of wedge patterns over given subspaces.
/// `k` is the common total degree of all summands.
template <class K>
LinSpan<K> wedge_pattern_subspace(int n, int k, const WedgePattern& pattern,
                                  const std::vector<Subspace<K>>& spaces,
                                  const K& like) {
  std::vector<std::vector<K>> gens;
  for (const auto& term : pattern) {
    int total = 0;
    for (const auto& f : term) total += f.degree;
    if (total != k) throw std::invalid_argument("wedge_pattern: degree mismatch");

    // one generator per choice of basis subsets in each factor
    std::vector<std::vector<AltTensor<K>>> factor_choices;
    for (const auto& f : term) {
      std::vector<AltTensor<K>> choices;
      if (f.space < 0) {
        const auto& tab = index_table(n, f.degree);
        for (Mask m : tab.masks) {
          AltTensor<K> t(n, f.degree, Var::Vec);
          t.coeff(m) = scalar_like(1, like);
          choices.push_back(std::move(t));
        }
      } else {
        const Subspace<K>& W = spaces[std::size_t(f.space)];
        if (W.n != n) throw std::invalid_argument("wedge_pattern: ambient mismatch");
        const auto& tab = index_table(W.dim(), f.degree);
        for (Mask m : tab.masks) {
          AltTensor<K> t(n, 0, Var::Vec);
          t.coeff(0) = scalar_like(1, like);
          for (int r : mask_bits(m)) t = wedge(t, vec_tensor(W.basis_vector(r)));
          choices.push_back(std::move(t));
        }
      }
      factor_choices.push_back(std::move(choices));
    }

    std::vector<std::size_t> idx(factor_choices.size(), 0);
    while (true) {
      AltTensor<K> g(n, 0, Var::Vec);
      g.coeff(0) = scalar_like(1, like);
      for (std::size_t f = 0; f < idx.size(); ++f)
        g = wedge(g, factor_choices[f][idx[f]]);
      if (!g.zero()) gens.push_back(g.c);
      // advance multi-index
      std::size_t f = 0;
      while (f < idx.size()) {
        if (++idx[f] < factor_choices[f].size()) break;
        idx[f] = 0;
        ++f;
      }
      if (f == idx.size()) break;
    }
  }
  return LinSpan<K>::from_rows(int(index_table(n, k).size()), gens);
}

}  // namespace coble
