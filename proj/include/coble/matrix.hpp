#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace coble {

template <class K>
struct Mat {
  int nr = 0, nc = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : nr(r), nc(c), a(std::size_t(r) * c) {}

  K& at(int i, int j) { return a[std::size_t(i) * nc + j]; }
  const K& at(int i, int j) const { return a[std::size_t(i) * nc + j]; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.nr == y.nr && x.nc == y.nc && x.a == y.a;
  }

  static Mat identity(int n, const K& like) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scalar_like(1, like);
    return m;
  }

  Mat transposed() const {
    Mat t(nc, nr);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.nc != y.nr) throw std::invalid_argument("Mat: shape mismatch");
    Mat z(x.nr, y.nc);
    for (int i = 0; i < x.nr; ++i)
      for (int l = 0; l < x.nc; ++l) {
        if (is_zero(x.at(i, l))) continue;
        for (int j = 0; j < y.nc; ++j) z.at(i, j) += x.at(i, l) * y.at(l, j);
      }
    return z;
  }
};

/// In-place row-reduced echelon form; returns the pivot columns.
/// Requires invertible pivots (fields, or jets with unit value part when the
/// pivot pattern stays on unit entries).
template <class K>
std::vector<int> rref_inplace(Mat<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.nc && row < m.nr; ++col) {
    int sel = -1;
    for (int i = row; i < m.nr; ++i)
      if (is_unit(m.at(i, col))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.nc; ++j) std::swap(m.at(sel, j), m.at(row, j));
    K piv = inv(m.at(row, col));
    for (int j = 0; j < m.nc; ++j) m.at(row, j) = m.at(row, j) * piv;
    for (int i = 0; i < m.nr; ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = 0; j < m.nc; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank(Mat<K> m) {
  return int(rref_inplace(m).size());
}

/// Basis of the right kernel {x : Mx = 0}.
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> m, const K& like) {
  std::vector<int> piv = rref_inplace(m);
  std::vector<bool> is_piv(m.nc, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<K>> out;
  for (int free = 0; free < m.nc; ++free) {
    if (is_piv[free]) continue;
    std::vector<K> x(m.nc);
    x[free] = scalar_like(1, like);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m.at(int(r), free);
    out.push_back(std::move(x));
  }
  return out;
}

/// Exact solve of Mx = b; nullopt if inconsistent. Free variables are set to 0.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b,
                                    const K& like) {
  if (int(b.size()) != m.nr) throw std::invalid_argument("solve: shape mismatch");
  Mat<K> aug(m.nr, m.nc + 1);
  for (int i = 0; i < m.nr; ++i) {
    for (int j = 0; j < m.nc; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.nc) = b[i];
  }
  std::vector<int> piv = rref_inplace(aug);
  if (!piv.empty() && piv.back() == m.nc) return std::nullopt;
  std::vector<K> x(m.nc, K{});
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(int(r), m.nc);
  for (auto& xi : x)
    if (is_zero(xi)) xi = scalar_like(0, like);
  return x;
}

/// Division hook for Bareiss elimination: must be exact in the coefficient
/// ring. Fields use ordinary division; rings (e.g. univariate polynomials)
/// overload exact_div.
template <class K>
K exact_div(const K& a, const K& b) {
  return a / b;
}

/// Fraction-free determinant (Bareiss). Works over any integral domain with
/// exact_div; with all-field entries it is just a determinant.
template <class R>
R det_bareiss(Mat<R> m, const R& one) {
  if (m.nr != m.nc) throw std::invalid_argument("det: square matrix required");
  int n = m.nr;
  if (n == 0) return one;
  R prev = one;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(m.at(k, k))) {
      int sel = -1;
      for (int i = k + 1; i < n; ++i)
        if (!is_zero(m.at(i, k))) {
          sel = i;
          break;
        }
      if (sel < 0) return scalar_like(0, one);
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        R num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = exact_div(num, prev);
      }
    prev = m.at(k, k);
  }
  R d = m.at(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

/// Determinant of the minor obtained by deleting row i and column j.
template <class R>
R minor_det(const Mat<R>& m, int di, int dj, const R& one) {
  Mat<R> s(m.nr - 1, m.nc - 1);
  for (int i = 0, si = 0; i < m.nr; ++i) {
    if (i == di) continue;
    for (int j = 0, sj = 0; j < m.nc; ++j) {
      if (j == dj) continue;
      s.at(si, sj) = m.at(i, j);
      ++sj;
    }
    ++si;
  }
  return det_bareiss(std::move(s), one);
}

/// Adjugate via cofactors: adj(M)_{ij} = (-1)^{i+j} det(M with row j, col i
/// deleted), so M * adj(M) = det(M) * I.
template <class R>
Mat<R> adjugate(const Mat<R>& m, const R& one) {
  if (m.nr != m.nc) throw std::invalid_argument("adjugate: square matrix required");
  Mat<R> out(m.nr, m.nc);
  for (int i = 0; i < m.nr; ++i)
    for (int j = 0; j < m.nc; ++j) {
      R c = minor_det(m, j, i, one);
      out.at(i, j) = ((i + j) & 1) ? -c : c;
    }
  return out;
}

/// Pfaffian of a skew matrix by recursive expansion along the first row.
/// Division-free, so jets and polynomial entries are fine. Intended for
/// sizes up to 8.
template <class R>
R pfaffian(const Mat<R>& m, const R& one) {
  if (m.nr != m.nc) throw std::invalid_argument("pfaffian: square matrix required");
  int n = m.nr;
  for (int i = 0; i < n; ++i) {
    if (!is_zero(m.at(i, i))) throw std::invalid_argument("pfaffian: nonzero diagonal");
    for (int j = i + 1; j < n; ++j)
      if (m.at(i, j) != -m.at(j, i))
        throw std::invalid_argument("pfaffian: matrix not skew");
  }
  if (n % 2 != 0) return scalar_like(0, one);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;

  struct Rec {
    const Mat<R>& m;
    const R& one;
    R run(std::vector<int> rows) {
      int k = int(rows.size());
      if (k == 0) return one;
      if (k == 2) return m.at(rows[0], rows[1]);
      R acc = scalar_like(0, one);
      for (int j = 1; j < k; ++j) {
        const R& e = m.at(rows[0], rows[j]);
        if (is_zero(e)) continue;
        std::vector<int> rest;
        rest.reserve(k - 2);
        for (int t = 1; t < k; ++t)
          if (t != j) rest.push_back(rows[t]);
        R sub = run(std::move(rest));
        if (j % 2 == 1)
          acc += e * sub;
        else
          acc -= e * sub;
      }
      return acc;
    }
  } rec{m, one};
  return rec.run(idx);
}

}  // namespace coble
