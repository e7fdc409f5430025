#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "multiindex.hpp"
#include "rep.hpp"
#include "rng.hpp"

namespace coble {

/// A torus fixed point of a flag variety: a chain of coordinate subspaces,
/// stored as nested sorted index subsets (sizes = FlagType::dims).
using FixedPoint = std::vector<std::vector<int>>;

inline std::vector<FixedPoint> fixed_points(const FlagType& fl) {
  std::vector<FixedPoint> out;
  FixedPoint chain;
  std::function<void(std::size_t, std::vector<int>)> rec =
      [&](std::size_t level, std::vector<int> avail) {
        if (level == fl.dims.size()) {
          out.push_back(chain);
          return;
        }
        int need = fl.dims[level] - (level == 0 ? 0 : fl.dims[level - 1]);
        // choose `need` new indices from avail
        std::vector<int> pick;
        std::function<void(std::size_t)> choose = [&](std::size_t from) {
          if (int(pick.size()) == need) {
            std::vector<int> s = level == 0 ? std::vector<int>{} : chain.back();
            s.insert(s.end(), pick.begin(), pick.end());
            std::sort(s.begin(), s.end());
            std::vector<int> rest;
            for (int a : avail)
              if (std::find(pick.begin(), pick.end(), a) == pick.end()) rest.push_back(a);
            chain.push_back(std::move(s));
            rec(level + 1, std::move(rest));
            chain.pop_back();
            return;
          }
          for (std::size_t i = from; i < avail.size(); ++i) {
            pick.push_back(avail[i]);
            choose(i + 1);
            pick.pop_back();
          }
        };
        choose(0);
      };
  std::vector<int> all;
  for (int i = 0; i < fl.n; ++i) all.push_back(i);
  rec(0, all);
  return out;
}

inline bool fp_contains(const std::vector<int>& s, int i) {
  return std::find(s.begin(), s.end(), i) != s.end();
}

/// Tangent weights at a fixed point: t_b - t_a over pairs with a in an
/// earlier block than b.
inline std::vector<Rat> tangent_weights(const FlagType& fl, const FixedPoint& fp,
                                        const std::vector<Rat>& t) {
  auto level_of = [&](int i) {
    for (std::size_t l = 0; l < fp.size(); ++l)
      if (fp_contains(fp[l], i)) return int(l);
    return int(fp.size());
  };
  std::vector<Rat> w;
  for (int a = 0; a < fl.n; ++a)
    for (int b = 0; b < fl.n; ++b)
      if (level_of(a) < level_of(b)) w.push_back(t[std::size_t(b)] - t[std::size_t(a)]);
  if (int(w.size()) != fl.dimension()) throw std::logic_error("tangent_weights: count");
  return w;
}

/// Chern roots of the tautological subbundle U_{dims[level]} at a fixed point.
inline std::vector<Rat> taut_weights(const FixedPoint& fp, std::size_t level,
                                     const std::vector<Rat>& t) {
  std::vector<Rat> w;
  for (int i : fp[level]) w.push_back(t[std::size_t(i)]);
  return w;
}

inline std::vector<Rat> negated(std::vector<Rat> w) {
  for (auto& x : w) x = -x;
  return w;
}

/// Elementary symmetric polynomial e_k of the Chern roots: the k-th Chern class.
inline Rat chern(int k, const std::vector<Rat>& roots) {
  std::vector<Rat> e(std::size_t(k) + 1, Rat(0));
  e[0] = Rat(1);
  for (const Rat& x : roots)
    for (int j = k; j >= 1; --j) e[std::size_t(j)] += e[std::size_t(j - 1)] * x;
  return e[std::size_t(k)];
}

/// Segre class s_k with the enumerative convention s(E) c(E-dual) = 1: the
/// complete homogeneous polynomial h_k of the Chern roots.
inline Rat segre(int k, const std::vector<Rat>& roots) {
  std::vector<Rat> h(std::size_t(k) + 1, Rat(0));
  h[0] = Rat(1);
  for (const Rat& x : roots)
    for (int j = 1; j <= k; ++j) h[std::size_t(j)] += h[std::size_t(j - 1)] * x;
  return h[std::size_t(k)];
}

inline Rat sum_of(const std::vector<Rat>& w) {
  Rat s(0);
  for (const auto& x : w) s += x;
  return s;
}

/// Weights of the rank-19 quotient of Wedge4(V8) on Fl(1,4,7;8) killing
/// Wedge3(U4)^V8, Wedge4(U7) and Wedge3(V8)^U1: kept index sets I meet U4 in
/// at most two indices, leave U7, and avoid the U1 index.
inline std::vector<Rat> bundle_G_weights(const FixedPoint& fp, const std::vector<Rat>& t) {
  const auto& S1 = fp[0];
  const auto& S4 = fp[1];
  const auto& S7 = fp[2];
  const auto& t4 = index_table(8, 4);
  std::vector<Rat> w;
  for (Mask I : t4.masks) {
    auto b = mask_bits(I);
    int in4 = 0, in7 = 0;
    bool has1 = false;
    for (int i : b) {
      if (fp_contains(S4, i)) ++in4;
      if (fp_contains(S7, i)) ++in7;
      if (fp_contains(S1, i)) has1 = true;
    }
    if (in4 >= 3 || in7 == 4 || has1) continue;
    Rat s(0);
    for (int i : b) s += t[std::size_t(i)];
    w.push_back(s);
  }
  if (w.size() != 19) throw std::logic_error("bundle_G_weights: rank");
  return w;
}

/// Weights of the rank-14 quotient of Wedge4(V8) on a flag containing U2 and
/// U6 (levels passed in): kept index sets avoid U2 and are not inside U6.
inline std::vector<Rat> bundle_P_weights(const FixedPoint& fp, std::size_t lvl2,
                                         std::size_t lvl6, const std::vector<Rat>& t) {
  const auto& S2 = fp[lvl2];
  const auto& S6 = fp[lvl6];
  const auto& t4 = index_table(8, 4);
  std::vector<Rat> w;
  for (Mask I : t4.masks) {
    auto b = mask_bits(I);
    bool meets2 = false;
    int in6 = 0;
    for (int i : b) {
      if (fp_contains(S2, i)) meets2 = true;
      if (fp_contains(S6, i)) ++in6;
    }
    if (meets2 || in6 == 4) continue;
    Rat s(0);
    for (int i : b) s += t[std::size_t(i)];
    w.push_back(s);
  }
  if (w.size() != 14) throw std::logic_error("bundle_P_weights: rank");
  return w;
}

/// Atiyah-Bott localization: sum the evaluator over fixed points divided by
/// the tangent weight product, with torus parameters specialized to distinct
/// random integers in [-10^4, 10^4]. Two independent specializations must
/// agree and the result must be an integer.
inline Big integrate(
    const FlagType& fl,
    const std::function<Rat(const FixedPoint&, const std::vector<Rat>&)>& expr,
    std::uint64_t seed) {
  auto fps = fixed_points(fl);
  Rat vals[2];
  Rng rng(seed);
  for (int draw = 0; draw < 2; ++draw) {
    std::vector<Rat> t;
    while (int(t.size()) < fl.n) {
      Rat c(std::int64_t(rng.below(20001)) - 10000);
      bool dup = false;
      for (const auto& x : t) dup = dup || x == c;
      if (!dup) t.push_back(c);
    }
    Rat acc(0);
    for (const auto& fp : fps) {
      Rat den(1);
      for (const auto& w : tangent_weights(fl, fp, t)) den *= w;
      acc += expr(fp, t) / den;
    }
    vals[draw] = acc;
  }
  if (!(vals[0] == vals[1])) throw std::runtime_error("integrate: specializations differ");
  Big num = numerator(vals[0]), den = denominator(vals[0]);
  if (den != 1) throw std::runtime_error("integrate: non-integer result");
  return num;
}

inline Rat rat_pow(const Rat& z, int e) {
  Rat r(1);
  Rat b = e >= 0 ? z : Rat(1) / z;
  for (int k = 0; k < (e >= 0 ? e : -e); ++k) r *= b;
  return r;
}

/// Holomorphic Lefschetz fixed point formula for a line bundle
/// (det block_1)^{m_1} (x) (det block_2)^{m_2} (x) ... on a flag variety,
/// evaluated at the torus element diag(z):
///   L(z) = sum_fp z^{weight(fp)} / prod_alpha (1 - z^{-alpha})
/// equals the alternating sum of the characters of the cohomology groups.
inline Rat lefschetz_character(const FlagType& fl, const std::vector<int>& m,
                               const std::vector<Rat>& z) {
  auto sizes = fl.block_sizes();
  if (m.size() != sizes.size())
    throw std::invalid_argument("lefschetz_character: block count");
  Rat acc(0);
  for (const auto& fp : fixed_points(fl)) {
    auto level_of = [&](int i) {
      for (std::size_t l = 0; l < fp.size(); ++l)
        if (fp_contains(fp[l], i)) return int(l);
      return int(fp.size());
    };
    Rat num(1);
    for (int i = 0; i < fl.n; ++i)
      num *= rat_pow(z[std::size_t(i)], m[std::size_t(level_of(i))]);
    Rat den(1);
    for (int a = 0; a < fl.n; ++a)
      for (int b = 0; b < fl.n; ++b)
        if (level_of(a) < level_of(b))
          den *= Rat(1) - z[std::size_t(a)] / z[std::size_t(b)];  // 1 - z^{-(t_b - t_a)}
    acc += num / den;
  }
  return acc;
}

/// Character of the Schur module S_lam(V_n) at diag(z).
inline Rat schur_char_value(const Part& lam, const std::vector<Rat>& z) {
  Rat acc(0);
  for (const auto& [e, c] : schur_char(lam, int(z.size()))) {
    Rat mono(std::int64_t(0));
    mono = Rat(1);
    for (std::size_t i = 0; i < z.size(); ++i) mono *= rat_pow(z[i], e[i]);
    Rat coef(0);
    coef = Rat(c);
    acc += coef * mono;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// The named enumerative integrals.
// ---------------------------------------------------------------------------

/// Degree of the ruling family: the expected number of four-planes of the
/// ruling through a general point, c19(G) s3(U4-dual) on Fl(1,4,7;8).
inline Big ruling_family_degree(std::uint64_t seed = 1) {
  FlagType fl{8, {1, 4, 7}};
  return integrate(
      fl,
      [](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        auto g = bundle_G_weights(fp, t);
        Rat c19(1);
        for (const auto& w : g) c19 *= w;
        return c19 * segre(3, negated(taut_weights(fp, 1, t)));
      },
      seed);
}

/// Pluecker degree of the rank-two locus: c14(P) c1(det U2-dual)^6 on the
/// birational model in Fl(2,6;8).
inline Big moduli_locus_degree(std::uint64_t seed = 1) {
  FlagType fl{8, {2, 6}};
  return integrate(
      fl,
      [](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        auto p = bundle_P_weights(fp, 0, 1, t);
        Rat c14(1);
        for (const auto& w : p) c14 *= w;
        Rat s1 = -sum_of(taut_weights(fp, 0, t));
        Rat pow(1);
        for (int i = 0; i < 6; ++i) pow *= s1;
        return c14 * pow;
      },
      seed);
}

/// Schubert class of the locus of two-planes inside a fixed codimension-two
/// subspace, by Giambelli: sigma_{2,2} = c2(Q)^2 - c1(Q) c3(Q), Q = V/U2.
inline Rat sigma_22_at(const FixedPoint& fp, const std::vector<Rat>& t) {
  std::vector<Rat> q;
  for (int i = 0; i < int(t.size()); ++i)
    if (!fp_contains(fp[0], i)) q.push_back(t[std::size_t(i)]);
  Rat c1 = chern(1, q), c2 = chern(2, q), c3 = chern(3, q);
  return c2 * c2 - c1 * c3;
}

/// Pluecker degree of the K3 surface cut on the rank-two locus by a general
/// sub-Grassmannian G(2,6): c14(P) sigma_22 c1(det U2-dual)^2 on Fl(2,6;8);
/// the genus-13 check reads 2g - 2 = 24.
inline Big k3_slice_degree(std::uint64_t seed = 1) {
  FlagType fl{8, {2, 6}};
  return integrate(
      fl,
      [](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        auto p = bundle_P_weights(fp, 0, 1, t);
        Rat c14(1);
        for (const auto& w : p) c14 *= w;
        Rat s1 = -sum_of(taut_weights(fp, 0, t));
        return c14 * sigma_22_at(fp, t) * s1 * s1;
      },
      seed);
}

/// Non-vanishing certificate for the Hecke family: on the line incidence
/// model Fl(1,2,6;8) over the rank-two locus, the integral
/// c14(P) c1(U1-dual)^6 c1(det U2-dual) is nonzero, so c1(U1-dual)^6 does not
/// die on the family of lines.
inline Big hecke_family_integral(std::uint64_t seed = 1) {
  FlagType fl{8, {1, 2, 6}};
  return integrate(
      fl,
      [](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        auto p = bundle_P_weights(fp, 1, 2, t);
        Rat c14(1);
        for (const auto& w : p) c14 *= w;
        Rat h = -t[std::size_t(fp[0][0])];
        Rat pow(1);
        for (int i = 0; i < 6; ++i) pow *= h;
        return c14 * pow * (-sum_of(taut_weights(fp, 1, t)));
      },
      seed);
}

}  // namespace coble
