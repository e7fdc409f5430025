#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "strata.hpp"

namespace coble {

enum class QuadricTag { Raw, S22 };

/// A quadratic form on Wedge2(V8): symmetric 28x28 matrix over the sorted
/// pair basis (order of index_table(8,2)).
template <class K>
struct QuadricOnG {
  Mat<K> m;  // 28x28, symmetric
  QuadricTag tag = QuadricTag::Raw;

  K value(const AltTensor<K>& omega) const {
    if (omega.n != 8 || omega.k != 2)
      throw std::invalid_argument("QuadricOnG::value: Wedge2(V8) expected");
    K acc{};
    for (int i = 0; i < 28; ++i) {
      if (is_zero(omega.c[std::size_t(i)])) continue;
      for (int j = 0; j < 28; ++j) {
        if (is_zero(omega.c[std::size_t(j)])) continue;
        acc += omega.c[std::size_t(i)] * m.at(i, j) * omega.c[std::size_t(j)];
      }
    }
    return acc;
  }

  bool operator==(const QuadricOnG& o) const { return m == o.m && tag == o.tag; }
};

/// Entry of the quadric read as a 4-index tensor, antisymmetric inside each
/// pair: hatB(a,b,c,d) = sgn * m(rank{a,b}, rank{c,d}).
template <class K>
K quadric_4index(const Mat<K>& m, int a, int b, int c, int d) {
  const auto& t2 = index_table(8, 2);
  int s = 1;
  if (a > b) {
    std::swap(a, b);
    s = -s;
  }
  if (c > d) {
    std::swap(c, d);
    s = -s;
  }
  K x = m.at(t2.rank((Mask(1) << a) | (Mask(1) << b)),
             t2.rank((Mask(1) << c) | (Mask(1) << d)));
  return s < 0 ? -x : x;
}

template <class K>
struct QuadricSplit {
  QuadricOnG<K> s22;        // S22 component
  QuadricOnG<K> w4;         // embedded Wedge4 (Pluecker) component
  AltTensor<K> four_form;   // the Wedge4 component as a four-form
};

/// Split S^2(Wedge2 V8) = S22 + Wedge4: the Wedge4 part is the full
/// alternation T_{abcd} = (B(ab,cd) - B(ac,bd) + B(ad,bc)) / 3, embedded back
/// entrywise; the S22 part is the difference.
template <class K>
QuadricSplit<K> s22_wedge4_split(const QuadricOnG<K>& q, const K& one) {
  const auto& t4 = index_table(8, 4);
  const auto& t2 = index_table(8, 2);
  AltTensor<K> T(8, 4, Var::Cov);
  K third = inv(scalar_like(3, one));
  for (Mask M : t4.masks) {
    auto b = mask_bits(M);
    K t = quadric_4index(q.m, b[0], b[1], b[2], b[3]) -
          quadric_4index(q.m, b[0], b[2], b[1], b[3]) +
          quadric_4index(q.m, b[0], b[3], b[1], b[2]);
    T.coeff(M) = t * third;
  }
  QuadricOnG<K> w4{Mat<K>(28, 28), QuadricTag::Raw};
  for (int i = 0; i < 28; ++i)
    for (int j = 0; j < 28; ++j) {
      Mask A = t2.masks[std::size_t(i)], C = t2.masks[std::size_t(j)];
      if (A & C) continue;
      K t = T.coeff(A | C);
      if (sign_merge(A, C) < 0) t = -t;
      w4.m.at(i, j) = t;
    }
  QuadricOnG<K> s22{q.m, QuadricTag::S22};
  for (int i = 0; i < 28; ++i)
    for (int j = 0; j < 28; ++j) s22.m.at(i, j) -= w4.m.at(i, j);
  return {std::move(s22), std::move(w4), std::move(T)};
}

template <class K>
QuadricOnG<K> s22_project(const QuadricOnG<K>& q, const K& one) {
  return s22_wedge4_split(q, one).s22;
}

/// Exact interpolation of the quadric equation from Pfaffian values on random
/// decomposables. The linear system for the 406 symmetric unknowns has rank
/// exactly 336 (the Pluecker quadrics are the 70-dim ambiguity); the S22
/// projection of any particular solution is the canonical representative.
template <class K, class Gen>
QuadricOnG<K> quadric_equation(const AltTensor<K>& v, Gen&& rand_scalar, const K& one,
                               int samples = 500) {
  const auto& t2 = index_table(8, 2);
  // column order: pairs (i <= j) over the 28 Wedge2 coordinates
  std::vector<std::pair<int, int>> cols;
  for (int i = 0; i < 28; ++i)
    for (int j = i; j < 28; ++j) cols.emplace_back(i, j);
  K two = scalar_like(2, one);

  for (int attempt = 0; attempt < 2; ++attempt) {
    Mat<K> aug(samples, 407);
    int got = 0;
    int guard = 0;
    while (got < samples && guard < 20 * samples) {
      ++guard;
      std::vector<K> x(8), y(8);
      for (auto& c : x) c = rand_scalar();
      for (auto& c : y) c = rand_scalar();
      AltTensor<K> omega = wedge(vec_tensor<K>(x, Var::Vec), vec_tensor<K>(y, Var::Vec));
      bool zero = true;
      for (const auto& c : omega.c) zero = zero && is_zero(c);
      if (zero) continue;
      K rhs = quadric_value(v, omega, one);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        auto [i, j] = cols[c];
        K coef = omega.c[std::size_t(i)] * omega.c[std::size_t(j)];
        if (i != j) coef *= two;
        aug.at(got, int(c)) = coef;
      }
      aug.at(got, 406) = rhs;
      ++got;
    }
    if (got < samples) throw std::runtime_error("quadric_equation: sampling failed");
    auto piv = rref_inplace(aug);
    bool consistent = true;
    for (int c : piv) consistent = consistent && c != 406;
    if (!consistent || int(piv.size()) != 336) continue;  // one retry batch
    std::vector<K> sol(406, scalar_like(0, one));          // free unknowns zero
    for (std::size_t r = 0; r < piv.size(); ++r)
      sol[std::size_t(piv[r])] = aug.at(int(r), 406);
    QuadricOnG<K> q{Mat<K>(28, 28), QuadricTag::Raw};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto [i, j] = cols[c];
      q.m.at(i, j) = sol[c];
      q.m.at(j, i) = sol[c];
    }
    (void)t2;
    return s22_project(q, one);
  }
  throw std::runtime_error("quadric_equation: interpolation rank defect persisted");
}

/// The degree-1 skew gadget used by both covariant chains: omega |-> the
/// complement dual of v ^ omega, a two-form on the dual side.
template <class K>
std::vector<AltTensor<K>> pair_duals_of(const AltTensor<K>& v, const K& one) {
  const auto& t2 = index_table(8, 2);
  std::vector<AltTensor<K>> h;
  for (Mask B : t2.masks) {
    AltTensor<K> eB(8, 2, Var::Vec);
    eB.coeff(B) = one;
    h.push_back(hodge_dual(wedge(v, eB), one));
  }
  return h;
}

/// Cubic covariant chain: split v into Wedge2 x Wedge2, wedge three
/// two-form factors to a six-form, dualize and contract back against v:
/// M_{A,C} = < (v^e_A)-dual ^ (v^e_C)-dual , v >. Proportional to the
/// interpolated quadric modulo the Pluecker component.
template <class K>
QuadricOnG<K> cubic_covariant_chain(const AltTensor<K>& v, const K& one) {
  auto h = pair_duals_of(v, one);
  QuadricOnG<K> q{Mat<K>(28, 28), QuadricTag::Raw};
  for (int i = 0; i < 28; ++i)
    for (int j = i; j < 28; ++j) {
      K t = full_pair(wedge(h[std::size_t(i)], h[std::size_t(j)]), v);
      q.m.at(i, j) = t;
      q.m.at(j, i) = t;
    }
  return q;
}

/// Quintic covariant: the S221111 projection of the degree-2 morphism
/// psi = sum_A e_A (x) W_A with W_A = sum_{B disjoint} sgn(A,B) v_{A u B}
/// (v^e_B)-dual, trace part removed; its square pairs the two dual-side
/// two-forms into a four-form and contracts with v:
/// M_{A,C} = < Wtilde_A ^ Wtilde_C , v >. S22-projected on return.
template <class K>
QuadricOnG<K> quintic_covariant(const AltTensor<K>& v, const K& one) {
  // The free Wedge2 leg of the morphism sits on the side of the input form,
  // so the construction is applied to the complement dual of v: the result
  // then carries two lower Wedge2 indices and is a genuine quadric on the
  // Grassmannian of two-planes of V.
  AltTensor<K> vd = dualize(v, one);
  vd.var = Var::Vec;
  const auto& t2 = index_table(8, 2);
  auto h = pair_duals_of(vd, one);
  std::vector<AltTensor<K>> W;
  for (Mask A : t2.masks) {
    AltTensor<K> w(8, 2, Var::Cov);
    for (std::size_t b = 0; b < t2.size(); ++b) {
      Mask B = t2.masks[b];
      if (A & B) continue;
      K c = vd.coeff(A | B);
      if (is_zero(c)) continue;
      if (sign_merge(A, B) < 0) c = -c;
      for (std::size_t t = 0; t < 28; ++t) w.c[t] += c * h[b].c[t];
    }
    W.push_back(std::move(w));
  }
  // remove the det (identity) component of psi
  K tr{};
  for (std::size_t a = 0; a < 28; ++a) tr += W[a].c[a];
  K shift = tr * inv(scalar_like(28, one));
  for (std::size_t a = 0; a < 28; ++a) W[a].c[a] -= shift;

  QuadricOnG<K> q{Mat<K>(28, 28), QuadricTag::Raw};
  for (int i = 0; i < 28; ++i)
    for (int j = i; j < 28; ++j) {
      K t = full_pair(wedge(W[std::size_t(i)], W[std::size_t(j)]), vd);
      q.m.at(i, j) = t;
      q.m.at(j, i) = t;
    }
  return s22_project(q, one);
}

/// Second exterior power of an 8x8 matrix on the sorted-pair basis.
template <class K>
Mat<K> wedge2_matrix(const Mat<K>& g) {
  const auto& t2 = index_table(8, 2);
  Mat<K> G(28, 28);
  for (int col = 0; col < 28; ++col) {
    auto kl = mask_bits(t2.masks[std::size_t(col)]);
    for (int row = 0; row < 28; ++row) {
      auto ij = mask_bits(t2.masks[std::size_t(row)]);
      G.at(row, col) = g.at(ij[0], kl[0]) * g.at(ij[1], kl[1]) -
                       g.at(ij[0], kl[1]) * g.at(ij[1], kl[0]);
    }
  }
  return G;
}

/// Global proportionality of two matrices; returns the scalar M = lambda * N.
template <class K>
std::optional<K> proportionality(const Mat<K>& M, const Mat<K>& N, const K& one) {
  int ri = -1, rj = -1;
  for (int i = 0; i < M.nr && ri < 0; ++i)
    for (int j = 0; j < M.nc; ++j)
      if (!is_zero(N.at(i, j))) {
        ri = i;
        rj = j;
        break;
      }
  if (ri < 0) {
    for (const auto& x : M.a)
      if (!is_zero(x)) return std::nullopt;
    return scalar_like(0, one);
  }
  K lam = M.at(ri, rj) / N.at(ri, rj);
  for (int i = 0; i < M.nr; ++i)
    for (int j = 0; j < M.nc; ++j)
      if (!(M.at(i, j) == lam * N.at(i, j))) return std::nullopt;
  return lam;
}

}  // namespace coble
