#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "exterior.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "multiindex.hpp"
#include "rng.hpp"

namespace coble {

/// The seven complementary index-set pairs of the Cartan generators
/// (1-based sets {K, L}, stored as 0-based masks, sorted representatives).
inline const std::array<std::pair<Mask, Mask>, 7>& cartan_pairs() {
  static const std::array<std::pair<Mask, Mask>, 7> pairs = [] {
    auto mk = [](std::initializer_list<int> l) {
      Mask m = 0;
      for (int i : l) m |= Mask(1) << (i - 1);
      return m;
    };
    return std::array<std::pair<Mask, Mask>, 7>{{
        {mk({1, 2, 3, 4}), mk({5, 6, 7, 8})},
        {mk({1, 3, 5, 7}), mk({2, 4, 6, 8})},
        {mk({1, 2, 5, 6}), mk({3, 4, 7, 8})},
        {mk({1, 3, 6, 8}), mk({2, 4, 5, 7})},
        {mk({1, 4, 5, 8}), mk({2, 3, 6, 7})},
        {mk({1, 4, 6, 7}), mk({2, 3, 5, 8})},
        {mk({1, 2, 7, 8}), mk({3, 4, 5, 6})},
    }};
  }();
  return pairs;
}

/// Cartan generators h_1..h_7: sums of two complementary elementary wedges,
/// signs normalized to +1 on the sorted index representatives.
template <class K>
std::vector<AltTensor<K>> cartan_basis(const K& like) {
  std::vector<AltTensor<K>> out;
  for (const auto& [km, lm] : cartan_pairs()) {
    AltTensor<K> h(8, 4, Var::Vec);
    h.coeff(km) = scalar_like(1, like);
    h.coeff(lm) = scalar_like(1, like);
    out.push_back(std::move(h));
  }
  return out;
}

/// The seven Fano-plane lines on generator indices 1..7.
inline const std::array<std::array<int, 3>, 7>& fano_triples() {
  static const std::array<std::array<int, 3>, 7> t{{{1, 2, 4},
                                                    {1, 3, 7},
                                                    {1, 5, 6},
                                                    {2, 3, 5},
                                                    {2, 6, 7},
                                                    {3, 4, 6},
                                                    {4, 5, 7}}};
  return t;
}

/// Pairs of indices (0-based masks of size 2) contained, for each generator of
/// the triple, in one of its two fourtuples.
inline std::vector<Mask> shared_pairs(const std::array<int, 3>& triple) {
  std::vector<Mask> out;
  const auto& cp = cartan_pairs();
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      Mask pm = (Mask(1) << a) | (Mask(1) << b);
      bool ok = true;
      for (int gi : triple) {
        const auto& [km, lm] = cp[std::size_t(gi - 1)];
        if ((pm & km) != pm && (pm & lm) != pm) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(pm);
    }
  return out;
}

template <class K>
AltTensor<K> cartan_sample(const std::vector<K>& coords, const K& like) {
  if (coords.size() != 7) throw std::invalid_argument("cartan_sample: need 7 coords");
  bool all_zero = true;
  for (const auto& c : coords) all_zero = all_zero && is_zero(c);
  if (all_zero) throw std::invalid_argument("cartan_sample: all-zero coordinates");
  AltTensor<K> v(8, 4, Var::Vec);
  const auto& cp = cartan_pairs();
  for (int i = 0; i < 7; ++i) {
    v.coeff(cp[std::size_t(i)].first) += coords[std::size_t(i)];
    v.coeff(cp[std::size_t(i)].second) += coords[std::size_t(i)];
  }
  (void)like;
  return v;
}

template <class K>
AltTensor<K> gl_action(const Mat<K>& g, const AltTensor<K>& v, bool check = true) {
  if (g.nr != v.n || g.nc != v.n) throw std::invalid_argument("gl_action: shape");
  if (check && rank(g) < v.n) throw std::invalid_argument("gl_action: singular g");
  std::vector<std::vector<std::pair<int, K>>> img(std::size_t(v.n));
  for (int i = 0; i < v.n; ++i)
    for (int j = 0; j < v.n; ++j)
      if (!is_zero(g.at(j, i))) img[std::size_t(i)].emplace_back(j, g.at(j, i));
  return linear_substitute(v, img, v.n);
}

template <class K>
AltTensor<K> dualize(const AltTensor<K>& v, const K& like) {
  return hodge_dual(v, scalar_like(1, like));
}

/// Random SL_8 matrix over F_p (det normalized to 1).
inline Mat<Fp> random_sl8(Rng& rng, std::uint64_t p) {
  while (true) {
    Mat<Fp> g(8, 8);
    for (auto& x : g.a) x = Fp(std::int64_t(rng.below(p)), p);
    Fp d = det_bareiss(g, Fp(1, p));
    if (is_zero(d)) continue;
    Fp di = inv(d);
    for (int j = 0; j < 8; ++j) g.at(0, j) *= di;
    return g;
  }
}

enum class RandomFormMode { CartanConjugate, FullRandom };

/// Default: random Cartan combination pushed around by a random SL_8 element.
inline AltTensor<Fp> random_form(std::uint64_t seed, std::uint64_t p,
                                 RandomFormMode mode = RandomFormMode::CartanConjugate) {
  Rng rng(seed);
  Fp one(1, p);
  if (mode == RandomFormMode::FullRandom) {
    AltTensor<Fp> v(8, 4, Var::Vec);
    for (auto& c : v.c) c = Fp(std::int64_t(rng.below(p)), p);
    return v;
  }
  std::vector<Fp> coords(7);
  bool nz = false;
  while (!nz) {
    for (auto& c : coords) {
      c = Fp(std::int64_t(rng.below(p)), p);
      nz = nz || !is_zero(c);
    }
  }
  AltTensor<Fp> v = cartan_sample(coords, one);
  return gl_action(random_sl8(rng, p), v, false);
}

/// Three-index contraction of u in Wedge4 V against phi in Wedge4 V^dual:
/// E(u,phi)_{ab} = sum_{|S|=3} sgn(a,S) sgn(b,S) u_{S+a} phi_{S+b}.
template <class K>
Mat<K> three_contract(const AltTensor<K>& u, const AltTensor<K>& phi) {
  if (u.var != Var::Vec || phi.var != Var::Cov)
    throw std::invalid_argument("three_contract: variance mismatch");
  Mat<K> E(8, 8);
  const auto& t3 = index_table(8, 3);
  for (Mask S : t3.masks) {
    for (int a = 0; a < 8; ++a) {
      Mask ba = Mask(1) << a;
      if (S & ba) continue;
      const K& uc = u.coeff(S | ba);
      if (is_zero(uc)) continue;
      int sa = sign_insert_front(a, S);
      for (int b = 0; b < 8; ++b) {
        Mask bb = Mask(1) << b;
        if (S & bb) continue;
        const K& pc = phi.coeff(S | bb);
        if (is_zero(pc)) continue;
        K t = uc * pc;
        if (sa * sign_insert_front(b, S) < 0) t = -t;
        E.at(a, b) += t;
      }
    }
  }
  return E;
}

/// Bracket of two four-forms, landing in traceless endomorphisms of V8:
/// antisymmetrization of the three-index contraction u x w^dual, with the
/// trace removed. Matches the unique equivariant morphism up to scalar.
template <class K>
Mat<K> e7_bracket(const AltTensor<K>& u, const AltTensor<K>& w, const K& like) {
  Mat<K> E = three_contract(u, dualize(w, like));
  Mat<K> F = three_contract(w, dualize(u, like));
  Mat<K> B(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) B.at(i, j) = E.at(i, j) - F.at(i, j);
  K tr{};
  for (int i = 0; i < 8; ++i) tr += B.at(i, i);
  K eighth = tr * inv(scalar_like(8, like));
  for (int i = 0; i < 8; ++i) B.at(i, i) -= eighth;
  return B;
}

}  // namespace coble
