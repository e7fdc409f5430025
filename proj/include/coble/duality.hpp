#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "strata.hpp"

namespace coble {

/// Reinterpret a four-form on V as a four-form on the dual space (covector
/// coordinates become the vector coordinates of V^dual), so the quartic and
/// quadric machinery applies verbatim on the dual side.
template <class K>
AltTensor<K> dual_as_form(const AltTensor<K>& v, const K& like) {
  AltTensor<K> d = dualize(v, like);
  d.var = Var::Vec;
  return d;
}

template <class K>
struct QuarticTangent {
  std::vector<K> ell;  ///< tangent covector, first nonzero entry normalized to 1
  Subspace<K> U7;      ///< its kernel, the tangent hyperplane
};

/// Tangent hyperplane of the quartic at a smooth member x, by cube
/// extraction: the t^3-coefficient of mu(x + t d) is a cubic g(d) = c*ell(d)^3,
/// and ell is recovered from unique cube roots of the ratios g(e_i)/g(e_i0)
/// (exact for p = 2 mod 3 and over Q). Returns nullopt when the cube
/// structure fails to certify (degenerate point, re-sample upstream).
template <class K>
std::optional<QuarticTangent<K>> tangent_hyperplane_quartic(const AltTensor<K>& v,
                                                            const std::vector<K>& x,
                                                            const K& one) {
  auto g3 = [&](const std::vector<K>& d) -> std::optional<K> {
    UniPoly<K> m = mu_on_line(v, x, d, one);
    int ord = vanishing_order(m);
    if (ord != ORDER_INFINITE && ord < 3) return std::nullopt;  // x not on the quartic
    if (m.c.size() > 3) return m.c[3];
    return scalar_like(0, one);
  };

  std::vector<K> g(8, scalar_like(0, one));
  int i0 = -1;
  for (int i = 0; i < 8; ++i) {
    std::vector<K> d(8, scalar_like(0, one));
    d[std::size_t(i)] = one;
    auto gi = g3(d);
    if (!gi) return std::nullopt;
    g[std::size_t(i)] = *gi;
    if (i0 < 0 && !is_zero(*gi)) i0 = i;
  }
  if (i0 < 0) return std::nullopt;  // zero differential: not a smooth point

  const K& c = g[std::size_t(i0)];
  std::vector<K> ell(8, scalar_like(0, one));
  ell[std::size_t(i0)] = one;
  for (int i = 0; i < 8; ++i) {
    if (i == i0 || is_zero(g[std::size_t(i)])) continue;
    auto r = cube_root_scalar(g[std::size_t(i)] / c);
    if (!r) return std::nullopt;
    ell[std::size_t(i)] = *r;
  }
  // certify the cube structure on mixed directions e_i + e_i0
  for (int i = 0; i < 8; ++i) {
    if (i == i0) continue;
    std::vector<K> d(8, scalar_like(0, one));
    d[std::size_t(i)] = one;
    d[std::size_t(i0)] = one;
    auto gm = g3(d);
    if (!gm) return std::nullopt;
    K s = ell[std::size_t(i)] + one;
    if (!(*gm == c * s * s * s)) return std::nullopt;
  }
  // ell(x) = 0 must hold (mu(x + t x) vanishes identically)
  K lx = scalar_like(0, one);
  for (int i = 0; i < 8; ++i) lx += ell[std::size_t(i)] * x[std::size_t(i)];
  if (!is_zero(lx)) return std::nullopt;

  Mat<K> L(1, 8);
  for (int i = 0; i < 8; ++i) L.at(0, i) = ell[std::size_t(i)];
  auto ker = kernel_basis(L, one);
  Subspace<K> U7 = Subspace<K>::from_vectors(8, ker);
  if (U7.dim() != 7) throw std::logic_error("tangent_hyperplane_quartic: kernel dim");
  return QuarticTangent<K>{std::move(ell), std::move(U7)};
}

/// One step of quartic projective duality at a smooth member x: the tangent
/// covector ell, viewed as a point of the dual projective space, must lie on
/// the quartic of the dual form.
template <class K>
bool quartic_dual_membership(const AltTensor<K>& v, const std::vector<K>& x,
                             const K& one) {
  auto tan = tangent_hyperplane_quartic(v, x, one);
  if (!tan) return false;
  return quartic_member(dual_as_form(v, one), tan->ell, one);
}

/// Biduality round trip on the quartic: the tangent covector of the dual
/// quartic at ell recovers x exactly (both normalized to leading entry 1).
template <class K>
bool quartic_biduality(const AltTensor<K>& v, const std::vector<K>& x, const K& one) {
  auto tan = tangent_hyperplane_quartic(v, x, one);
  if (!tan) return false;
  auto back = tangent_hyperplane_quartic(dual_as_form(v, one), tan->ell, one);
  if (!back) return false;
  int i0 = -1;
  for (int i = 0; i < 8 && i0 < 0; ++i)
    if (!is_zero(x[std::size_t(i)])) i0 = i;
  if (i0 < 0 || is_zero(x[std::size_t(i0)])) return false;
  K s = inv(x[std::size_t(i0)]);
  for (int i = 0; i < 8; ++i)
    if (!(back->ell[std::size_t(i)] == x[std::size_t(i)] * s)) return false;
  return true;
}

template <class K>
struct GrassDualWitness {
  Subspace<K> U2, U4, U6;
  Subspace<K> dual;  ///< annihilator of U6, a 2-plane in V^dual (echelon form)
  StratumG28 dual_stratum;
};

/// Grassmannian duality at a smooth quadric point: extract the flag
/// U2 in U4 in U6 and return the annihilator of U6 as the dual point, which
/// must land on the dual quadric (stratum at most QUADRIC for the dual form).
template <class K>
GrassDualWitness<K> grassmann_dual_point(const AltTensor<K>& v, const Subspace<K>& U2,
                                         const K& one) {
  if (rank_stratum_G28(v, U2) != StratumG28::QUADRIC)
    throw std::invalid_argument("grassmann_dual_point: not a smooth quadric point");
  Subspace<K> U4 = U4_witness_G28(v, U2, one);
  Subspace<K> U6 = U6_witness_G28(v, U2, U4, one);
  Subspace<K> dual = U6.annihilator(one);
  if (dual.dim() != 2) throw std::logic_error("grassmann_dual_point: annihilator dim");
  StratumG28 ds = rank_stratum_G28(dual_as_form(v, one), dual);
  if (ds == StratumG28::GENERIC)
    throw std::runtime_error("grassmann_dual_point: dual point misses the dual quadric");
  return GrassDualWitness<K>{U2, std::move(U4), std::move(U6), std::move(dual), ds};
}

/// Full biduality round trip; equality is exact on canonical echelon forms.
template <class K>
bool grassmann_biduality(const AltTensor<K>& v, const Subspace<K>& U2, const K& one) {
  auto w = grassmann_dual_point(v, U2, one);
  auto back = grassmann_dual_point(dual_as_form(v, one), w.dual, one);
  return back.dual == U2;
}

/// The differential of the quadric at a smooth point, read as a morphism
/// V/U2 -> U2: it must have rank exactly 2 with kernel the image of U6.
template <class K>
bool tangent_check_quadric(const AltTensor<K>& v, const Subspace<K>& U2,
                           const Subspace<K>& U6, const K& one) {
  std::vector<K> grad = chart_gradient(v, U2, one);
  Mat<K> psi(2, 6);
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 6; ++j) psi.at(r, j) = grad[std::size_t(6 * r + j)];
  if (rank(psi) != 2) return false;
  auto ker = kernel_basis(psi, one);
  if (ker.size() != 4) return false;
  std::vector<int> np = U2.nonpivots();
  for (const auto& kv : ker) {
    std::vector<K> lift(8, scalar_like(0, one));
    for (int q = 0; q < 6; ++q) lift[std::size_t(np[std::size_t(q)])] = kv[std::size_t(q)];
    // U2 lies in U6, so membership of the lift is equivalent to membership of
    // its class in U6/U2
    if (!U6.contains(lift)) return false;
  }
  return true;
}

}  // namespace coble
