#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "exterior.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "multiindex.hpp"
#include "poly.hpp"
#include "rng.hpp"
#include "theta.hpp"

namespace coble {

enum class StratumP7 { OFF, QUARTIC, KUMMER, DEGENERATE };
enum class StratumG28 { DEGENERATE, MODULI, QUADRIC, GENERIC };

inline const char* to_string(StratumP7 s) {
  switch (s) {
    case StratumP7::OFF: return "OFF";
    case StratumP7::QUARTIC: return "QUARTIC";
    case StratumP7::KUMMER: return "KUMMER";
    default: return "DEGENERATE";
  }
}
inline const char* to_string(StratumG28 s) {
  switch (s) {
    case StratumG28::GENERIC: return "GENERIC";
    case StratumG28::QUADRIC: return "QUADRIC";
    case StratumG28::MODULI: return "MODULI";
    default: return "DEGENERATE";
  }
}

/// Coefficient of the wedge a^b^c (degrees 2+2+3) at the 7-index set J.
template <class K>
K wedge223_coeff(const AltTensor<K>& a, const AltTensor<K>& b, const AltTensor<K>& c,
                 Mask J) {
  K acc{};
  const auto& t2 = index_table(8, 2);
  for (Mask P : t2.masks) {
    if ((P & J) != P) continue;
    const K& ap = a.coeff(P);
    if (is_zero(ap)) continue;
    Mask J1 = J & ~P;
    for (Mask Q : t2.masks) {
      if ((Q & J1) != Q) continue;
      const K& bq = b.coeff(Q);
      if (is_zero(bq)) continue;
      Mask R = J1 & ~Q;
      const K& cr = c.coeff(R);
      if (is_zero(cr)) continue;
      K t = ap * bq * cr;
      if (sign_merge(P, Q) * sign_merge(P | Q, R) < 0) t = -t;
      acc += t;
    }
  }
  return acc;
}

/// The symmetric 8x8 form q at x: with omega = x -| v^dual,
/// (a -| omega)^(b -| omega)^omega = q(a,b) * (x -| vol^dual).
/// Entries are quadratic in x and cubic in v; q(x,.) = 0.
/// Works over fields and over univariate-polynomial entries (exact division).
template <class K>
Mat<K> q_form(const AltTensor<K>& v, const std::vector<K>& x, const K& one) {
  if (v.n != 8 || v.k != 4) throw std::invalid_argument("q_form: need a 4-form on V8");
  AltTensor<K> vdual = hodge_dual(v, one);
  AltTensor<K> omega = contract(x, vdual);
  int kpiv = -1;
  for (int i = 0; i < 8; ++i)
    if (!is_zero(x[std::size_t(i)])) {
      kpiv = i;
      break;
    }
  if (kpiv < 0) throw std::invalid_argument("q_form: x = 0");
  Mask J = Mask(0xFF) & ~(Mask(1) << kpiv);
  K denom = x[std::size_t(kpiv)];
  if (sign_insert_front(kpiv, J) < 0) denom = -denom;

  std::vector<AltTensor<K>> ca;
  ca.reserve(8);
  std::vector<K> unit(8, scalar_like(0, one));
  for (int a = 0; a < 8; ++a) {
    unit[std::size_t(a)] = one;
    ca.push_back(contract(unit, omega));
    unit[std::size_t(a)] = scalar_like(0, one);
  }

  Mat<K> q(8, 8);
  for (int a = 0; a < 8; ++a)
    for (int b = a; b < 8; ++b) {
      K w = wedge223_coeff(ca[std::size_t(a)], ca[std::size_t(b)], omega, J);
      K val = exact_div(w, denom);
      q.at(a, b) = val;
      q.at(b, a) = val;
    }
  return q;
}

/// mu(x) = adj(q)_{ii} / x_i^2 for any i with x_i invertible; zero iff x lies
/// on the Coble quartic.
template <class K>
K mu_value(const AltTensor<K>& v, const std::vector<K>& x, const K& one) {
  Mat<K> q = q_form(v, x, one);
  int i = -1;
  for (int t = 0; t < 8; ++t)
    if (!is_zero(x[std::size_t(t)])) {
      i = t;
      break;
    }
  if (i < 0) throw std::invalid_argument("mu_value: x = 0");
  K m = minor_det(q, i, i, one);  // adj(q)_{ii}
  K x2 = x[std::size_t(i)] * x[std::size_t(i)];
  return exact_div(m, x2);
}

template <class K>
bool quartic_member(const AltTensor<K>& v, const std::vector<K>& x, const K& one) {
  return is_zero(mu_value(v, x, one));
}

/// Exhaustive well-definedness check: adj(q)_{ij} / (x_i x_j) agrees over all
/// index pairs with invertible denominators.
template <class K>
bool mu_consistent(const AltTensor<K>& v, const std::vector<K>& x, const K& one) {
  Mat<K> q = q_form(v, x, one);
  Mat<K> adj = adjugate(q, one);
  std::optional<K> ref;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (is_zero(x[std::size_t(i)]) || is_zero(x[std::size_t(j)])) continue;
      K val = adj.at(i, j) / (x[std::size_t(i)] * x[std::size_t(j)]);
      if (!ref)
        ref = val;
      else if (!(*ref == val))
        return false;
    }
  return true;
}

/// mu restricted to the line x + t d, as an exact polynomial in t.
template <class K>
UniPoly<K> mu_on_line(const AltTensor<K>& v, const std::vector<K>& x,
                      const std::vector<K>& d, const K& one) {
  using P = UniPoly<K>;
  AltTensor<P> vp(8, 4, Var::Vec);
  for (std::size_t i = 0; i < v.c.size(); ++i) vp.c[i] = P::constant(v.c[i]);
  std::vector<P> xt(8);
  for (int i = 0; i < 8; ++i)
    xt[std::size_t(i)] = P(std::vector<K>{x[std::size_t(i)], d[std::size_t(i)]});
  return mu_value(vp, xt, P::constant(one));
}

/// Kummer order test at a quartic member x: the vanishing order of mu along
/// random lines through x. Order 3 (majority) -> smooth quartic point; order
/// >= 6 on every valid line -> Kummer. Lines inside the quartic (order
/// infinite) are redrawn.
template <class K>
StratumP7 kummer_test(const AltTensor<K>& v, const std::vector<K>& x, int m, Rng& rng,
                      const K& one, std::uint64_t p) {
  int votes3 = 0, votes6 = 0, infinite = 0;
  int valid = 0, attempts = 0;
  while (valid < m && attempts < 4 * m) {
    ++attempts;
    std::vector<K> d(8);
    for (auto& di : d) di = scalar_like(std::int64_t(rng.below(p)), one);
    bool dz = true;
    for (const auto& di : d) dz = dz && is_zero(di);
    if (dz) continue;
    UniPoly<K> mu = mu_on_line(v, x, d, one);
    int ord = vanishing_order(mu);
    if (ord == ORDER_INFINITE) {
      ++infinite;
      continue;  // line inside the quartic, excluded from the vote
    }
    ++valid;
    if (ord >= 6)
      ++votes6;
    else if (ord == 3)
      ++votes3;
    else if (ord < 3)
      return StratumP7::OFF;  // not even a quartic member along this probe
  }
  if (valid == 0) return StratumP7::DEGENERATE;
  if (votes6 == valid) return StratumP7::KUMMER;
  if (2 * votes3 > valid) return StratumP7::QUARTIC;
  return StratumP7::DEGENERATE;
}

template <class K>
StratumG28 rank_stratum_G28(const AltTensor<K>& v, const Subspace<K>& U2) {
  int r = rank(induced_two_form(v, U2));
  switch (r) {
    case 6: return StratumG28::GENERIC;
    case 4: return StratumG28::QUADRIC;
    case 2: return StratumG28::MODULI;
    case 0: return StratumG28::DEGENERATE;
    default: throw std::logic_error("rank_stratum_G28: odd rank of a skew form");
  }
}

/// Value of the Coble quadric at a decomposable omega = u ^ u', rescaled by
/// the square of the leading Plucker pivot: homogeneous of degree 2 in omega.
template <class K>
K quadric_value(const AltTensor<K>& v, const AltTensor<K>& omega, const K& one) {
  if (omega.k != 2 || omega.var != Var::Vec)
    throw std::invalid_argument("quadric_value: need a 2-vector");
  if (omega.zero()) throw std::invalid_argument("quadric_value: omega = 0");
  if (!wedge(omega, omega).zero())
    throw std::invalid_argument("quadric_value: omega not decomposable");
  // support plane = row space of the skew coefficient matrix
  std::vector<std::vector<K>> rows;
  for (int i = 0; i < 8; ++i) {
    std::vector<K> r(8, scalar_like(0, one));
    for (int j = 0; j < 8; ++j) {
      if (i == j) continue;
      Mask mij = (Mask(1) << i) | (Mask(1) << j);
      K c = omega.coeff(mij);
      if (i > j) c = -c;
      r[std::size_t(j)] = c;
    }
    rows.push_back(std::move(r));
  }
  Subspace<K> U2 = Subspace<K>::from_vectors(8, rows);
  if (U2.dim() != 2) throw std::invalid_argument("quadric_value: support not a 2-plane");
  K piv = omega.coeff((Mask(1) << U2.pivots[0]) | (Mask(1) << U2.pivots[1]));
  return pfaffian(induced_two_form(v, U2), one) * piv * piv;
}

/// The 12 partial derivatives of the Pfaffian quadric in the standard chart
/// at U2 (echelon rows perturbed into the canonical complement, directions in
/// lexicographic (row, complement-coordinate) order), via degree-1 jets.
template <class K>
std::vector<K> chart_gradient(const AltTensor<K>& v, const Subspace<K>& U2,
                              const K& one) {
  if (U2.dim() != 2) throw std::invalid_argument("chart_gradient: dim U2 != 2");
  using J = Jet<K>;
  AltTensor<J> vj(8, 4, Var::Vec);
  for (std::size_t i = 0; i < v.c.size(); ++i) vj.c[i] = J(v.c[i]);
  std::vector<int> np = U2.nonpivots();
  std::vector<K> grad;
  for (int r = 0; r < 2; ++r)
    for (int j : np) {
      Subspace<J> Ue;
      Ue.n = 8;
      Ue.pivots = U2.pivots;
      Ue.rows = Mat<J>(2, 8);
      for (int rr = 0; rr < 2; ++rr)
        for (int cc = 0; cc < 8; ++cc) Ue.rows.at(rr, cc) = J(U2.rows.at(rr, cc));
      Ue.rows.at(r, j) += J(scalar_like(0, one), one);
      // Plucker pivot of the perturbed plane stays exactly 1, so the chart
      // value is just the Pfaffian of the induced form.
      J pf = pfaffian(induced_two_form(vj, Ue), J(one));
      grad.push_back(pf.b);
    }
  return grad;
}

template <class K>
bool singular_along_D(const AltTensor<K>& v, const Subspace<K>& U2, const K& one) {
  for (const K& g : chart_gradient(v, U2, one))
    if (!is_zero(g)) return false;
  return true;
}

/// Membership of v in a wedge pattern over concrete subspaces.
template <class K>
bool flag_condition_check(const AltTensor<K>& v, const WedgePattern& pattern,
                          const std::vector<Subspace<K>>& spaces, const K& one) {
  if (v.k != 4) throw std::invalid_argument("flag_condition_check: degree 4 expected");
  auto span = wedge_pattern_subspace(8, 4, pattern, spaces, one);
  return span.contains(v.c);
}

/// U4 over a rank-4 point of G(2,8): preimage of the kernel of the induced
/// two-form; asserts v in U2 ^ Wedge3(V8) + Wedge2(U4) ^ Wedge2(V8).
template <class K>
Subspace<K> U4_witness_G28(const AltTensor<K>& v, const Subspace<K>& U2, const K& one) {
  Mat<K> A = induced_two_form(v, U2);
  auto ker = kernel_basis(A, one);
  if (ker.size() != 2)
    throw std::invalid_argument("U4_witness_G28: induced form rank is not 4");
  std::vector<int> np = U2.nonpivots();
  std::vector<std::vector<K>> gens;
  for (int r = 0; r < 2; ++r) gens.push_back(U2.basis_vector(r));
  for (const auto& kv : ker) {
    std::vector<K> lift(8, scalar_like(0, one));
    for (int q = 0; q < 6; ++q) lift[std::size_t(np[std::size_t(q)])] = kv[std::size_t(q)];
    gens.push_back(std::move(lift));
  }
  Subspace<K> U4 = Subspace<K>::from_vectors(8, gens);
  if (U4.dim() != 4) throw std::logic_error("U4_witness_G28: lift collapsed");
  if (!U4.contains_subspace(U2)) throw std::logic_error("U4_witness_G28: U2 not inside");
  WedgePattern pat = {{{1, 0}, {3, -1}}, {{2, 1}, {2, -1}}};
  if (!flag_condition_check(v, pat, std::vector<Subspace<K>>{U2, U4}, one))
    throw std::logic_error("U4_witness_G28: flag condition failed");
  return U4;
}

/// Change-of-basis matrix with columns: U2 basis, completion of U2 inside U4,
/// then the canonical complement coordinates of U4.
template <class K>
Mat<K> adapted_basis_U2_U4(const Subspace<K>& U2, const Subspace<K>& U4, const K& one) {
  std::vector<std::vector<K>> cols;
  for (int r = 0; r < 2; ++r) cols.push_back(U2.basis_vector(r));
  for (int r = 0; r < 4 && int(cols.size()) < 4; ++r) {
    auto cand = U4.basis_vector(r);
    auto test = cols;
    test.push_back(cand);
    if (Subspace<K>::from_vectors(8, test).dim() == int(cols.size()) + 1)
      cols.push_back(cand);
  }
  if (cols.size() != 4) throw std::logic_error("adapted basis: U4 completion failed");
  for (int j : U4.nonpivots()) {
    std::vector<K> z(8, scalar_like(0, one));
    z[std::size_t(j)] = one;
    cols.push_back(std::move(z));
  }
  Mat<K> g(8, 8);
  for (int c = 0; c < 8; ++c)
    for (int r = 0; r < 8; ++r) g.at(r, c) = cols[std::size_t(c)][std::size_t(r)];
  return g;
}

template <class K>
Mat<K> inverse(const Mat<K>& g, const K& one) {
  Mat<K> aug(g.nr, 2 * g.nc);
  for (int i = 0; i < g.nr; ++i) {
    for (int j = 0; j < g.nc; ++j) aug.at(i, j) = g.at(i, j);
    aug.at(i, g.nc + i) = one;
  }
  auto piv = rref_inplace(aug);
  if (int(piv.size()) != g.nr || piv.back() != g.nr - 1)
    throw std::invalid_argument("inverse: singular matrix");
  Mat<K> inv_(g.nr, g.nc);
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < g.nc; ++j) inv_.at(i, j) = aug.at(i, g.nc + j);
  return inv_;
}

/// U6 over a rank-4 point: kernel of the induced morphism V8/U4 -> U2 read
/// from v mod Wedge2(U4) ^ Wedge2(V8); asserts the (dec1)-type membership
/// v in U2 ^ Wedge2(U6) ^ V8 + Wedge2(U4) ^ Wedge2(V8).
template <class K>
Subspace<K> U6_witness_G28(const AltTensor<K>& v, const Subspace<K>& U2,
                           const Subspace<K>& U4, const K& one) {
  Mat<K> g = adapted_basis_U2_U4(U2, U4, one);
  Mat<K> gi = inverse(g, one);
  AltTensor<K> vp = gl_action(gi, v, false);
  // in adapted coordinates: U2 = <f0,f1>, U4 = <f0..f3>, W = <f4..f7>;
  // the morphism phi: W -> U2 comes from coefficients with exactly one
  // adapted index below 4 (which must lie in {0,1}).
  const auto& t3 = index_table(4, 3);
  Mat<K> phi(2, 4);  // phi(w_b) = sum_r phi(r,b) u_r
  for (int r = 0; r < 4; ++r)
    for (Mask S3 : t3.masks) {
      Mask I = (Mask(1) << r) | (Mask(S3) << 4);
      const K& c = vp.coeff(I);
      if (is_zero(c)) continue;
      if (r >= 2) throw std::logic_error("U6_witness_G28: U4 membership violated");
      // [T_r ^ w_b] with T_r supported on S3, b the missing W-coordinate
      int b = mask_bits(Mask(0xF) & ~S3)[0];
      K t = c;
      if (sign_merge(S3, Mask(1) << b) < 0) t = -t;
      phi.at(r, b) += t;
    }
  auto ker = kernel_basis(phi, one);
  if (ker.size() != 2)
    throw std::runtime_error("U6_witness_G28: induced morphism not of rank 2");
  std::vector<std::vector<K>> gens;
  for (int r = 0; r < 4; ++r) gens.push_back(U4.basis_vector(r));
  for (const auto& kv : ker) {
    // kernel vector in W coordinates -> ambient via columns 4..7 of g
    std::vector<K> lift(8, scalar_like(0, one));
    for (int b = 0; b < 4; ++b)
      for (int r = 0; r < 8; ++r) lift[std::size_t(r)] += g.at(r, 4 + b) * kv[std::size_t(b)];
    gens.push_back(std::move(lift));
  }
  Subspace<K> U6 = Subspace<K>::from_vectors(8, gens);
  if (U6.dim() != 6) throw std::logic_error("U6_witness_G28: lift collapsed");
  WedgePattern pat = {{{1, 0}, {2, 2}, {1, -1}}, {{2, 1}, {2, -1}}};
  if (!flag_condition_check(v, pat, std::vector<Subspace<K>>{U2, U4, U6}, one))
    throw std::logic_error("U6_witness_G28: flag condition failed");
  return U6;
}

/// Adapted basis for a flag U1 in U7: columns x, completion of U7, complement.
template <class K>
Mat<K> adapted_basis_U1_U7(const Subspace<K>& U1, const Subspace<K>& U7, const K& one) {
  std::vector<K> x = U1.basis_vector(0);
  int drop = -1;
  for (std::size_t r = 0; r < U7.pivots.size(); ++r)
    if (!is_zero(x[std::size_t(U7.pivots[r])])) {
      drop = int(r);
      break;
    }
  if (drop < 0) throw std::invalid_argument("adapted basis: U1 not inside U7");
  std::vector<std::vector<K>> cols;
  cols.push_back(x);
  for (int r = 0; r < 7; ++r)
    if (r != drop) cols.push_back(U7.basis_vector(r));
  {
    std::vector<K> z(8, scalar_like(0, one));
    z[std::size_t(U7.nonpivots()[0])] = one;
    cols.push_back(std::move(z));
  }
  Mat<K> g(8, 8);
  for (int c = 0; c < 8; ++c)
    for (int r = 0; r < 8; ++r) g.at(r, c) = cols[std::size_t(c)][std::size_t(r)];
  return g;
}

/// The induced three-form in Wedge3(U7/U1) at a flag U1 in U7 (adapted
/// coordinates: component of v mod U1 along the complement line).
template <class K>
AltTensor<K> induced_three_form(const AltTensor<K>& v, const Mat<K>& g_inv) {
  AltTensor<K> vp = gl_action(g_inv, v, false);
  AltTensor<K> v3(6, 3, Var::Vec);
  const auto& t3 = index_table(6, 3);
  for (Mask S : t3.masks) {
    // adapted coordinates 1..6 carry U7/U1; coordinate 7 is the complement
    Mask I = (Mask(S) << 1) | (Mask(1) << 7);
    v3.coeff(S) = vp.coeff(I);
  }
  return v3;
}

enum class ACStatus { Member, NotMember, Degenerate };

template <class K>
struct ACResult {
  ACStatus status;
  Subspace<K> U4;  // valid when status == Member
};

/// Membership of (U1 in U7) in the ruling threefold: the induced three-form
/// must be decomposable; on success returns U4 = lift of its support.
template <class K>
ACResult<K> ac_member(const AltTensor<K>& v, const Subspace<K>& U1,
                      const Subspace<K>& U7, const K& one, bool check_flag = true) {
  Mat<K> g = adapted_basis_U1_U7(U1, U7, one);
  Mat<K> gi = inverse(g, one);
  AltTensor<K> v3 = induced_three_form(v, gi);
  if (v3.zero()) return {ACStatus::Degenerate, {}};
  // support: kernel of u -> u ^ v3 (3-dimensional iff decomposable)
  const auto& t4 = index_table(6, 4);
  Mat<K> L(int(t4.size()), 6);
  for (int b = 0; b < 6; ++b) {
    std::vector<K> unit(6, scalar_like(0, one));
    unit[std::size_t(b)] = one;
    AltTensor<K> w = wedge(vec_tensor(unit), v3);
    for (std::size_t r = 0; r < t4.size(); ++r) L.at(int(r), b) = w.c[r];
  }
  auto ker = kernel_basis(L, one);
  if (ker.size() != 3) return {ACStatus::NotMember, {}};
  std::vector<std::vector<K>> gens;
  gens.push_back(U1.basis_vector(0));
  for (const auto& kv : ker) {
    std::vector<K> lift(8, scalar_like(0, one));
    for (int b = 0; b < 6; ++b)
      for (int r = 0; r < 8; ++r)
        lift[std::size_t(r)] += g.at(r, 1 + b) * kv[std::size_t(b)];
    gens.push_back(std::move(lift));
  }
  Subspace<K> U4 = Subspace<K>::from_vectors(8, gens);
  if (U4.dim() != 4) throw std::logic_error("ac_member: support lift collapsed");
  if (check_flag) {
    WedgePattern pat = {{{3, 1}, {1, -1}}, {{4, 2}}, {{3, -1}, {1, 0}}};
    if (!flag_condition_check(v, pat, std::vector<Subspace<K>>{U1, U4, U7}, one))
      throw std::logic_error("ac_member: flag condition (defA) failed");
  }
  return {ACStatus::Member, U4};
}

/// The classical quartic invariant of a three-form on a 6-dimensional space:
/// lambda = tr(K^2)/6 with K(u) = (u -| hodge(v3)) -| v3. Vanishes exactly on
/// degenerate (in particular decomposable) forms.
template <class K>
K three_form_quartic_invariant(const AltTensor<K>& v3, const K& one) {
  if (v3.n != 6 || v3.k != 3)
    throw std::invalid_argument("three_form_quartic_invariant: need a 3-form on 6 dims");
  if (v3.zero()) return scalar_like(0, one);
  AltTensor<K> v3d = hodge_dual(v3, one);
  Mat<K> Km(6, 6);
  for (int a = 0; a < 6; ++a) {
    std::vector<K> unit(6, scalar_like(0, one));
    unit[std::size_t(a)] = one;
    AltTensor<K> psi = contract(unit, v3d);  // 2-covector
    // contract psi fully against v3 -> vector
    const auto& t2 = index_table(6, 2);
    for (int b = 0; b < 6; ++b) {
      K acc{};
      Mask bb = Mask(1) << b;
      for (Mask Q : t2.masks) {
        if (Q & bb) continue;
        const K& pq = psi.coeff(Q);
        if (is_zero(pq)) continue;
        K t = pq * v3.coeff(Q | bb);
        if (sign_merge(Q, bb) < 0) t = -t;
        acc += t;
      }
      Km.at(b, a) = acc;  // K(e_a) = sum_b (..) e_b
    }
  }
  Mat<K> K2 = Km * Km;
  K tr{};
  for (int i = 0; i < 6; ++i) tr += K2.at(i, i);
  return tr * inv(scalar_like(6, one));
}

/// The (2,2)-hypersurface value at a flag given by an adapted frame g
/// (columns: U1 generator, completion of U7, complement). Keeping the frame
/// fixed while one column moves along a line keeps the chart trivialization
/// polynomial, which is what the degree probes rely on.
template <class K>
K bidegree22_from_frame(const AltTensor<K>& v, const Mat<K>& g, const K& one) {
  return three_form_quartic_invariant(induced_three_form(v, inverse(g, one)), one);
}

template <class K>
K bidegree22_value(const AltTensor<K>& v, const Subspace<K>& U1, const Subspace<K>& U7,
                   const K& one) {
  return bidegree22_from_frame(v, adapted_basis_U1_U7(U1, U7, one), one);
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

struct SampleReport {
  std::string locus;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::vector<std::vector<std::int64_t>> witnesses;  // echelon rows, row-major
  std::uint64_t degenerate_hits = 0;
  double runtime_ms = 0.0;
  bool inconclusive = false;
  std::string note;
};

inline std::vector<std::int64_t> witness_rows(const Subspace<Fp>& s) {
  std::vector<std::int64_t> out;
  for (int r = 0; r < s.dim(); ++r)
    for (int j = 0; j < s.n; ++j) out.push_back(std::int64_t(s.rows.at(r, j).v));
  return out;
}

inline std::vector<std::int64_t> witness_vector(const std::vector<Fp>& x) {
  std::vector<std::int64_t> out;
  for (const auto& c : x) out.push_back(std::int64_t(c.v));
  return out;
}

struct ChunkResult {
  std::vector<std::vector<std::int64_t>> witnesses;
  std::uint64_t degenerate = 0;
};

/// Deterministic parallel trial driver: fixed-size chunks with derived seeds,
/// computed in parallel waves but merged strictly in chunk order. Merging
/// stops at the first chunk reaching `target` cumulative hits, so the output
/// is identical for every thread count.
inline void run_chunked(SampleReport& rep, std::uint64_t budget, std::uint64_t chunk_size,
                        std::uint64_t target, unsigned nthreads,
                        const std::function<ChunkResult(std::uint64_t chunk_seed,
                                                        std::uint64_t ntrials)>& work) {
  if (nthreads == 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t nchunks = (budget + chunk_size - 1) / chunk_size;
  std::uint64_t next = 0;
  bool done = false;
  while (next < nchunks && !done) {
    std::uint64_t wave = std::min<std::uint64_t>(nthreads, nchunks - next);
    std::vector<ChunkResult> results(wave);
    std::vector<std::thread> threads;
    for (std::uint64_t w = 0; w < wave; ++w) {
      std::uint64_t ci = next + w;
      std::uint64_t ntr = std::min(chunk_size, budget - ci * chunk_size);
      threads.emplace_back([&, w, ci, ntr] {
        results[w] = work(Rng::derive(rep.seed, ci), ntr);
      });
    }
    for (auto& t : threads) t.join();
    for (std::uint64_t w = 0; w < wave && !done; ++w) {
      std::uint64_t ci = next + w;
      rep.trials += std::min(chunk_size, budget - ci * chunk_size);
      rep.degenerate_hits += results[w].degenerate;
      for (auto& wt : results[w].witnesses) {
        rep.witnesses.push_back(std::move(wt));
        ++rep.hits;
      }
      if (rep.hits >= target) done = true;
    }
    next += wave;
  }
  if (rep.hits < target) {
    rep.inconclusive = true;
    rep.note = "budget exhausted before reaching the requested hit count";
  }
}

inline std::vector<Fp> random_vector8(Rng& rng, std::uint64_t p) {
  std::vector<Fp> x(8, Fp(0, p));
  bool nz = false;
  while (!nz)
    for (auto& c : x) {
      c = Fp(std::int64_t(rng.below(p)), p);
      nz = nz || !is_zero(c);
    }
  return x;
}

inline Subspace<Fp> random_plane(Rng& rng, std::uint64_t p) {
  while (true) {
    std::vector<std::vector<Fp>> g = {random_vector8(rng, p), random_vector8(rng, p)};
    Subspace<Fp> s = Subspace<Fp>::from_vectors(8, g);
    if (s.dim() == 2) return s;
  }
}

/// Allocation-free inner trial for the moduli sampler: draws a random plane
/// in echelon form and returns the rank of the induced two-form (or -1 if the
/// draw collapses). On return `rows` holds the plane's echelon basis.
inline int moduli_trial(const std::vector<std::pair<Mask, Fp>>& terms, Rng& rng,
                        std::uint64_t p, Fp rows[2][8], int piv[2]) {
  // two random vectors, reduced to echelon form in place
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 8; ++j) rows[r][j] = Fp(std::int64_t(rng.below(p)), p);
  piv[0] = -1;
  for (int j = 0; j < 8 && piv[0] < 0; ++j)
    for (int r = 0; r < 2; ++r)
      if (!is_zero(rows[r][j])) {
        if (r != 0)
          for (int c = 0; c < 8; ++c) std::swap(rows[0][c], rows[1][c]);
        piv[0] = j;
        break;
      }
  if (piv[0] < 0) return -1;
  {
    Fp s = inv(rows[0][piv[0]]);
    for (int c = piv[0]; c < 8; ++c) rows[0][c] *= s;
    Fp f = rows[1][piv[0]];
    if (!is_zero(f))
      for (int c = piv[0]; c < 8; ++c) rows[1][c] -= f * rows[0][c];
  }
  piv[1] = -1;
  for (int j = piv[0] + 1; j < 8; ++j)
    if (!is_zero(rows[1][j])) {
      piv[1] = j;
      break;
    }
  if (piv[1] < 0) return -1;
  {
    Fp s = inv(rows[1][piv[1]]);
    for (int c = piv[1]; c < 8; ++c) rows[1][c] *= s;
    Fp f = rows[0][piv[1]];
    if (!is_zero(f))
      for (int c = piv[1]; c < 8; ++c) rows[0][c] -= f * rows[1][c];
  }

  // The induced two-form on V/U2 has the same rank as the skew form
  // phi(x, y) = [v ^ u1 ^ u2 ^ x ^ y]_vol on V (U2 lies in its radical), so
  // two wedge passes and an early-exit rank suffice.
  const auto& t5 = index_table(8, 5);
  const auto& t6 = index_table(8, 6);
  Fp w5[56] = {};
  for (const auto& [M, cv] : terms)
    for (int a = 0; a < 8; ++a) {
      Mask ba = Mask(1) << a;
      if (M & ba) continue;
      if (is_zero(rows[0][a])) continue;
      Fp c = cv * rows[0][a];
      if (sign_append(M, a) < 0) c = -c;
      w5[t5.rank(M | ba)] += c;
    }
  Fp w6[28] = {};
  for (std::size_t s = 0; s < 56; ++s) {
    if (is_zero(w5[s])) continue;
    Mask S = t5.masks[s];
    for (int b = 0; b < 8; ++b) {
      Mask bb = Mask(1) << b;
      if (S & bb) continue;
      if (is_zero(rows[1][b])) continue;
      Fp c = w5[s] * rows[1][b];
      if (sign_append(S, b) < 0) c = -c;
      w6[t6.rank(S | bb)] += c;
    }
  }

  Fp A[8][8] = {};
  bool any = false;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      Mask mab = (Mask(1) << a) | (Mask(1) << b);
      Mask I = 0xFFu & ~mab;
      Fp val = w6[t6.rank(I)];
      if (sign_merge(I, mab) < 0) val = -val;
      A[a][b] = val;
      A[b][a] = -val;
      any = any || !is_zero(val);
    }
  if (!any) return 0;
  // column-space rank with early exit at 3 (skew ranks are even)
  int rk = 0;
  int lead[3];
  Fp basis[3][8];
  for (int a = 0; a < 8 && rk < 3; ++a) {
    Fp w[8];
    for (int j = 0; j < 8; ++j) w[j] = A[a][j];
    for (int t = 0; t < rk; ++t) {
      Fp f = w[lead[t]];
      if (is_zero(f)) continue;
      for (int j = 0; j < 8; ++j) w[j] -= f * basis[t][j];
    }
    int l = -1;
    for (int j = 0; j < 8; ++j)
      if (!is_zero(w[j])) {
        l = j;
        break;
      }
    if (l < 0) continue;
    Fp s = inv(w[l]);
    for (int j = 0; j < 8; ++j) basis[rk][j] = w[j] * s;
    lead[rk] = l;
    ++rk;
  }
  if (rk >= 3) return 4;  // rank at least 4
  return rk;              // column-space dimension equals the rank (0 or 2)
}

/// Rejection sampler for the moduli locus D (rank-exactly-2 planes).
inline SampleReport sample_moduli(const AltTensor<Fp>& v, std::uint64_t seed,
                                  std::uint64_t target, std::uint64_t budget,
                                  unsigned nthreads = 0) {
  std::uint64_t p = 0;
  for (const auto& c : v.c)
    if (c.p) p = c.p;
  std::vector<std::pair<Mask, Fp>> terms;
  {
    const auto& t4 = index_table(8, 4);
    for (std::size_t i = 0; i < t4.size(); ++i)
      if (!is_zero(v.c[i])) terms.emplace_back(t4.masks[i], v.c[i]);
  }
  SampleReport rep;
  rep.locus = "moduli";
  rep.prime = p;
  rep.seed = seed;
  run_chunked(rep, budget, 100000, target, nthreads,
              [&](std::uint64_t cseed, std::uint64_t ntr) {
                ChunkResult out;
                Rng rng(cseed);
                Fp rows[2][8];
                int piv[2];
                for (std::uint64_t t = 0; t < ntr; ++t) {
                  int r = moduli_trial(terms, rng, p, rows, piv);
                  if (r == 2) {
                    std::vector<std::int64_t> w;
                    for (int rr = 0; rr < 2; ++rr)
                      for (int j = 0; j < 8; ++j) w.push_back(std::int64_t(rows[rr][j].v));
                    out.witnesses.push_back(std::move(w));
                  } else if (r == 0) {
                    ++out.degenerate;
                  }
                }
                return out;
              });
  return rep;
}

/// Rejection sampler for Coble-quartic members in P^7.
inline SampleReport sample_quartic(const AltTensor<Fp>& v, std::uint64_t seed,
                                   std::uint64_t target, std::uint64_t budget,
                                   unsigned nthreads = 0) {
  std::uint64_t p = 0;
  for (const auto& c : v.c)
    if (c.p) p = c.p;
  Fp one(1, p);
  SampleReport rep;
  rep.locus = "quartic";
  rep.prime = p;
  rep.seed = seed;
  run_chunked(rep, budget, 64, target, nthreads,
              [&](std::uint64_t cseed, std::uint64_t ntr) {
                ChunkResult out;
                Rng rng(cseed);
                for (std::uint64_t t = 0; t < ntr; ++t) {
                  std::vector<Fp> x = random_vector8(rng, p);
                  if (quartic_member(v, x, one)) out.witnesses.push_back(witness_vector(x));
                }
                return out;
              });
  return rep;
}

/// Rejection sampler for Kummer points (quartic members with order >= 6 along
/// every probed line).
inline SampleReport sample_kummer(const AltTensor<Fp>& v, std::uint64_t seed,
                                  std::uint64_t target, std::uint64_t budget,
                                  unsigned nthreads = 0, int lines = 8) {
  std::uint64_t p = 0;
  for (const auto& c : v.c)
    if (c.p) p = c.p;
  Fp one(1, p);
  SampleReport rep;
  rep.locus = "kummer";
  rep.prime = p;
  rep.seed = seed;
  run_chunked(rep, budget, 2000, target, nthreads,
              [&](std::uint64_t cseed, std::uint64_t ntr) {
                ChunkResult out;
                Rng rng(cseed);
                for (std::uint64_t t = 0; t < ntr; ++t) {
                  std::vector<Fp> x = random_vector8(rng, p);
                  if (!quartic_member(v, x, one)) continue;
                  StratumP7 s = kummer_test(v, x, lines, rng, one, p);
                  if (s == StratumP7::KUMMER)
                    out.witnesses.push_back(witness_vector(x));
                  else if (s == StratumP7::DEGENERATE)
                    ++out.degenerate;
                }
                return out;
              });
  return rep;
}

/// Pencil sampler for smooth points of the Coble quadric Q: restrict the
/// quadric to random pencils in G(2,8) and keep roots that are GENERIC-free
/// rank-4 points (i.e. lie on Q but not deeper).
inline SampleReport sample_quadric(const AltTensor<Fp>& v, std::uint64_t seed,
                                   std::uint64_t target, std::uint64_t budget,
                                   unsigned nthreads = 0) {
  std::uint64_t p = 0;
  for (const auto& c : v.c)
    if (c.p) p = c.p;
  Fp one(1, p);
  SampleReport rep;
  rep.locus = "quadric";
  rep.prime = p;
  rep.seed = seed;
  run_chunked(rep, budget, 16, target, nthreads,
              [&](std::uint64_t cseed, std::uint64_t ntr) {
                ChunkResult out;
                Rng rng(cseed);
                for (std::uint64_t t = 0; t < ntr; ++t) {
                  // pencil U2(s) = <u, w0 + s w1>
                  std::vector<Fp> u = random_vector8(rng, p);
                  std::vector<Fp> w0 = random_vector8(rng, p);
                  std::vector<Fp> w1 = random_vector8(rng, p);
                  for (std::uint64_t s = 0; s < p; ++s) {
                    std::vector<Fp> w(8, Fp(0, p));
                    Fp fs(std::int64_t(s), p);
                    for (int i = 0; i < 8; ++i)
                      w[std::size_t(i)] = w0[std::size_t(i)] + fs * w1[std::size_t(i)];
                    Subspace<Fp> U2 = Subspace<Fp>::from_vectors(
                        8, std::vector<std::vector<Fp>>{u, w});
                    if (U2.dim() != 2) continue;
                    if (rank_stratum_G28(v, U2) == StratumG28::QUADRIC) {
                      out.witnesses.push_back(witness_rows(U2));
                      break;  // at most one witness per pencil
                    }
                  }
                }
                return out;
              });
  return rep;
}

/// Exhaustive fiber of the ruling threefold over a point of P^7: all
/// hyperplanes U7 containing U1 whose induced three-form is decomposable.
/// Streams over all (p^7-1)/(p-1) projective classes of covectors killing U1;
/// the induced three-form is computed directly in the 7-dimensional quotient
/// V/U1 as the covector contraction of v mod U1, so no basis change per
/// hyperplane is needed. Hits are re-verified with the full flag condition.
inline std::vector<Subspace<Fp>> ac_fiber_over_kummer(const AltTensor<Fp>& v,
                                                      const Subspace<Fp>& U1,
                                                      unsigned nthreads = 0) {
  std::uint64_t p = 0;
  for (const auto& c : v.c)
    if (c.p) p = c.p;
  Fp one(1, p);
  if (p > 13)
    throw std::invalid_argument("ac_fiber_over_kummer: exhaustive scan needs p <= 13");
  if (U1.dim() != 1) throw std::invalid_argument("ac_fiber_over_kummer: dim U1 != 1");
  std::vector<Fp> x = U1.basis_vector(0);
  // covectors with l(x) = 0, spanning the hyperplanes through U1
  Mat<Fp> xrow(1, 8);
  for (int i = 0; i < 8; ++i) xrow.at(0, i) = x[std::size_t(i)];
  std::vector<std::vector<Fp>> ann = kernel_basis(xrow, one);  // 7 covectors
  AltTensor<Fp> vbar = quotient_reduce(v, U1);                 // in Wedge4(F^7)
  std::vector<int> np = U1.nonpivots();

  // projective classes: leading annihilator coordinate `pos` normalized to 1,
  // p^(6-pos) choices of trailing digits; flat index -> (pos, digits)
  std::vector<std::uint64_t> block(8, 0);  // block[pos] = first index of pos-block
  {
    std::uint64_t off = 0;
    for (int pos = 0; pos <= 6; ++pos) {
      block[std::size_t(pos)] = off;
      std::uint64_t sz = 1;
      for (int q = 0; q < 6 - pos; ++q) sz *= p;
      off += sz;
    }
    block[7] = off;
  }
  const std::uint64_t total = block[7];

  auto covector_at = [&](std::uint64_t idx) {
    int pos = 0;
    while (idx >= block[std::size_t(pos + 1)]) ++pos;
    std::uint64_t rem = idx - block[std::size_t(pos)];
    std::vector<Fp> l(8, Fp(0, p));
    for (int i = 0; i < 8; ++i) l[std::size_t(i)] = ann[std::size_t(pos)][std::size_t(i)];
    for (int q = pos + 1; q < 7; ++q) {
      Fp cq(std::int64_t(rem % p), p);
      rem /= p;
      if (is_zero(cq)) continue;
      for (int i = 0; i < 8; ++i)
        l[std::size_t(i)] += cq * ann[std::size_t(q)][std::size_t(i)];
    }
    return l;
  };

  const auto& t3 = index_table(7, 3);
  const auto& t4 = index_table(7, 4);
  auto decomposable_fiber_point = [&](const std::vector<Fp>& l) {
    std::vector<Fp> lbar(7);
    for (int q = 0; q < 7; ++q) lbar[std::size_t(q)] = l[std::size_t(np[std::size_t(q)])];
    AltTensor<Fp> v3 = contract(lbar, vbar);
    if (v3.zero()) return false;  // degenerate, not counted as a fiber point
    // u ^ v3 = 0 has a 3-dimensional solution space iff v3 is decomposable
    Mat<Fp> L(int(t4.size()), 7);
    for (std::size_t s = 0; s < t3.size(); ++s) {
      if (is_zero(v3.c[s])) continue;
      Mask S = t3.masks[s];
      for (int b = 0; b < 7; ++b) {
        Mask bb = Mask(1) << b;
        if (S & bb) continue;
        Fp val = v3.c[s];
        if (sign_insert_front(b, S) < 0) val = -val;
        L.at(t4.rank(S | bb), b) += val;
      }
    }
    return rank(std::move(L)) == 4;
  };

  if (nthreads == 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<std::uint64_t>> found(nthreads);
  std::atomic<std::uint64_t> cursor{0};
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < nthreads; ++w)
    threads.emplace_back([&, w] {
      while (true) {
        std::uint64_t i = cursor.fetch_add(1024);
        if (i >= total) break;
        std::uint64_t end = std::min(total, i + 1024);
        for (std::uint64_t r = i; r < end; ++r)
          if (decomposable_fiber_point(covector_at(r))) found[w].push_back(r);
      }
    });
  for (auto& t : threads) t.join();
  std::vector<std::uint64_t> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());

  std::vector<Subspace<Fp>> out;
  for (std::uint64_t r : all) {
    std::vector<Fp> l = covector_at(r);
    Mat<Fp> row(1, 8);
    for (int c = 0; c < 8; ++c) row.at(0, c) = l[std::size_t(c)];
    Subspace<Fp> U7 = Subspace<Fp>::from_vectors(8, kernel_basis(row, one));
    if (ac_member(v, U1, U7, one).status != ACStatus::Member)
      throw std::logic_error("ac_fiber_over_kummer: scan/member disagreement");
    out.push_back(std::move(U7));
  }
  return out;
}

}  // namespace coble
