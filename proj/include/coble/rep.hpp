#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coble {

using Big = boost::multiprecision::cpp_int;
using Part = std::vector<int>;  // weakly decreasing integer weight

inline void check_dominant(const Part& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i - 1] < p[i]) throw std::invalid_argument("weight not weakly decreasing");
}

/// Negated reversal: the weight of the dual Schur functor.
inline Part negrev(Part p) {
  std::reverse(p.begin(), p.end());
  for (int& x : p) x = -x;
  return p;
}

inline Part padded(Part p, int n) {
  if (int(p.size()) > n) {
    for (std::size_t i = std::size_t(n); i < p.size(); ++i)
      if (p[i] != 0) throw std::invalid_argument("weight longer than rank");
    p.resize(std::size_t(n));
  }
  p.resize(std::size_t(n), 0);
  return p;
}

/// Weyl dimension formula for GL_n: prod_{i<j} (l_i - l_j + j - i) / (j - i).
inline Big schur_dim(const Part& lam, int n) {
  Part l = padded(lam, n);
  check_dominant(l);
  Big num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= l[std::size_t(i)] - l[std::size_t(j)] + j - i;
      den *= j - i;
    }
  return num / den;
}

/// Hook content formula (partitions only): an independent dimension oracle.
inline Big hook_content_dim(const Part& lam, int n) {
  for (int x : lam)
    if (x < 0) throw std::invalid_argument("hook_content_dim: partition expected");
  check_dominant(lam);
  Part conj;  // column lengths
  if (!lam.empty())
    for (int c = 0; c < lam[0]; ++c) {
      int h = 0;
      for (int x : lam)
        if (x > c) ++h;
      conj.push_back(h);
    }
  Big num = 1, den = 1;
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (int j = 0; j < lam[i]; ++j) {
      num *= n + j - int(i);
      den *= (lam[i] - j) + (conj[std::size_t(j)] - int(i)) - 1;  // hook length
    }
  return num / den;
}

// ---------------------------------------------------------------------------
// Characters on few variables: exponent-vector dictionaries, used for exact
// Littlewood-Richardson products and small plethysms.
// ---------------------------------------------------------------------------

using SymChar = std::map<std::vector<int>, Big>;

namespace detail {

/// Semistandard tableaux enumeration, filling cells in column-reading order.
inline void ssyt_rec(const Part& lam, int n, std::size_t row, int col,
                     std::vector<std::vector<int>>& fill, std::vector<int>& expo,
                     SymChar& out) {
  // advance to next unfilled cell (row-major)
  std::size_t r = row;
  int c = col;
  while (r < lam.size() && c >= lam[r]) {
    ++r;
    c = 0;
  }
  if (r == lam.size()) {
    out[expo] += 1;
    return;
  }
  int lo = 1;
  if (c > 0) lo = std::max(lo, fill[r][std::size_t(c - 1)]);
  if (r > 0) lo = std::max(lo, fill[r - 1][std::size_t(c)] + 1);
  for (int v = lo; v <= n; ++v) {
    fill[r][std::size_t(c)] = v;
    ++expo[std::size_t(v - 1)];
    ssyt_rec(lam, n, r, c + 1, fill, expo, out);
    --expo[std::size_t(v - 1)];
  }
}

}  // namespace detail

/// Character of the Schur functor S_lam on n variables (lam may have negative
/// entries; a determinant power shift is applied and undone).
inline SymChar schur_char(Part lam, int n) {
  lam = padded(lam, n);
  check_dominant(lam);
  int shift = 0;
  if (!lam.empty() && lam.back() < 0) shift = -lam.back();
  for (int& x : lam) x += shift;
  while (!lam.empty() && lam.back() == 0) lam.pop_back();
  SymChar raw;
  if (lam.empty()) {
    raw[std::vector<int>(std::size_t(n), 0)] = 1;
  } else {
    std::vector<std::vector<int>> fill;
    for (int r : lam) fill.emplace_back(std::size_t(r), 0);
    std::vector<int> expo(std::size_t(n), 0);
    detail::ssyt_rec(lam, n, 0, 0, fill, expo, raw);
  }
  if (shift == 0) return raw;
  SymChar out;
  for (auto& [e, c] : raw) {
    std::vector<int> e2 = e;
    for (int& x : e2) x -= shift;
    out[e2] = c;
  }
  return out;
}

inline SymChar char_mul(const SymChar& a, const SymChar& b) {
  SymChar out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out[e] += ca * cb;
    }
  return out;
}

/// Decompose a genuine character into Schur terms by repeatedly stripping the
/// dominant leading monomial.
inline std::map<Part, Big> char_decompose(SymChar ch, int n) {
  std::map<Part, Big> out;
  while (true) {
    while (!ch.empty() && ch.rbegin()->second == 0) ch.erase(std::prev(ch.end()));
    if (ch.empty()) break;
    auto it = std::prev(ch.end());  // lex-greatest exponent = highest weight
    Part hw = it->first;
    check_dominant(hw);  // fails if the input was not a character
    Big mult = it->second;
    if (mult < 0) throw std::logic_error("char_decompose: negative multiplicity");
    Part key = hw;
    while (!key.empty() && key.back() == 0) key.pop_back();
    out[key] += mult;
    for (const auto& [e, c] : schur_char(hw, n)) {
      ch[e] -= mult * c;
      if (ch[e] == 0) ch.erase(e);
    }
  }
  return out;
}

/// Littlewood-Richardson product of two GL_n Schur functors.
inline std::map<Part, Big> lr_multiply(const Part& lam, const Part& mu, int n) {
  return char_decompose(char_mul(schur_char(lam, n), schur_char(mu, n)), n);
}

/// Cauchy formula for wedge powers: Wedge^k(A (x) B) = sum over |lam| = k of
/// S_lam(A) (x) S_lam'(B), lam inside the a x b box.
inline std::vector<std::pair<Part, Part>> cauchy_wedge(int k, int a, int b) {
  std::vector<std::pair<Part, Part>> out;
  Part lam;
  auto conj = [](const Part& l) {
    Part c;
    if (!l.empty())
      for (int j = 0; j < l[0]; ++j) {
        int h = 0;
        for (int x : l)
          if (x > j) ++h;
        c.push_back(h);
      }
    return c;
  };
  std::function<void(int, int)> rec = [&](int rem, int maxpart) {
    if (rem == 0) {
      out.emplace_back(lam, conj(lam));
      return;
    }
    if (int(lam.size()) == a) return;
    for (int x = std::min(rem, maxpart); x >= 1; --x) {
      lam.push_back(x);
      rec(rem - x, x);
      lam.pop_back();
    }
  };
  rec(k, b);
  return out;
}

/// Wedge powers of Wedge2(C^4), computed from the character e_b of the six
/// pair products x_i x_j.
inline const std::vector<std::map<Part, Big>>& wedge_of_wedge2_C4() {
  static const std::vector<std::map<Part, Big>> table = [] {
    std::vector<SymChar> e(8);  // e[b] on the six pair variables
    std::vector<std::vector<int>> pairs;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::vector<int> v(4, 0);
        v[std::size_t(i)] = v[std::size_t(j)] = 1;
        pairs.push_back(v);
      }
    e[0][std::vector<int>(4, 0)] = 1;
    for (int b = 1; b <= 6; ++b) {
      SymChar acc;
      // elementary symmetric: sum over b-subsets of the six pair monomials
      for (unsigned s = 0; s < 64; ++s) {
        if (__builtin_popcount(s) != b) continue;
        std::vector<int> ex(4, 0);
        for (int t = 0; t < 6; ++t)
          if (s & (1u << t))
            for (int q = 0; q < 4; ++q) ex[std::size_t(q)] += pairs[std::size_t(t)][std::size_t(q)];
        acc[ex] += 1;
      }
      e[std::size_t(b)] = std::move(acc);
    }
    std::vector<std::map<Part, Big>> out;
    for (int b = 0; b <= 6; ++b) out.push_back(char_decompose(e[std::size_t(b)], 4));
    return out;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Bott-Borel-Weil on GL flag varieties of subspaces U_{d1} < ... < V_n.
// ---------------------------------------------------------------------------

struct FlagType {
  int n = 0;
  std::vector<int> dims;  // strictly increasing proper subspace dimensions

  std::vector<int> block_sizes() const {
    std::vector<int> b;
    int prev = 0;
    for (int d : dims) {
      if (d <= prev || d >= n) throw std::invalid_argument("FlagType: bad dims");
      b.push_back(d - prev);
      prev = d;
    }
    b.push_back(n - prev);
    return b;
  }

  int dimension() const {
    auto b = block_sizes();
    int d = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) d += b[i] * b[j];
    return d;
  }
};

struct BBWResult {
  bool zero = true;
  int degree = -1;
  Part module;  // GL_n highest weight of H^degree
  Big dim = 0;
};

/// Bott-Borel-Weil: the bundle is S_{lam_1}(U_{d1}) (x) S_{lam_2}(U_{d2}/U_{d1})
/// (x) ... (x) S_{lam_k}(V/U_{dk}); each lam block weakly decreasing, negative
/// entries meaning duals. Calibration: on P(V) = Fl(1;n), O(d) = S_{(-d)}(U_1)
/// has H^0 = S_{(0,..,0,-d)}V of dimension C(n-1+d, d) for d >= 0.
inline BBWResult bbw(const FlagType& fl, const std::vector<Part>& lam_blocks) {
  auto sizes = fl.block_sizes();
  if (lam_blocks.size() != sizes.size())
    throw std::invalid_argument("bbw: block count mismatch");
  std::vector<int> w;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    Part blk = padded(lam_blocks[b], sizes[b]);
    check_dominant(blk);
    for (int x : negrev(blk)) w.push_back(x);
  }
  int n = fl.n;
  for (int i = 0; i < n; ++i) w[std::size_t(i)] += n - 1 - i;  // add rho
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w[std::size_t(i)] == w[std::size_t(j)]) return {};  // singular: acyclic
  int inv = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w[std::size_t(i)] < w[std::size_t(j)]) ++inv;
  std::sort(w.begin(), w.end(), std::greater<int>());
  for (int i = 0; i < n; ++i) w[std::size_t(i)] -= n - 1 - i;  // subtract rho
  BBWResult r;
  r.zero = false;
  r.degree = inv;
  r.module = negrev(w);
  r.dim = schur_dim(r.module, n);
  return r;
}

// ---------------------------------------------------------------------------
// The fixed cohomology computations of the verification suite.
// ---------------------------------------------------------------------------

/// One factor of a twisted resolution on G(2,8): Schur weights on U2 and on
/// the rank-6 quotient, with an O(t) twist (O(-1) = det U2).
inline BBWResult bbw_G28(const Part& lamU, const Part& lamQ, int twist) {
  Part u = padded(lamU, 2);
  u[0] -= twist;
  u[1] -= twist;
  return bbw(FlagType{8, {2}}, {u, lamQ});
}

struct ResolutionFactor {
  std::string name;
  int step = 0;  // homological degree in the resolution
  BBWResult coh;
};

/// The resolution of the twisted ideal sheaf of D on G(2,8): a self-dual
/// complex whose factors are all acyclic except the leading Wedge4(Q)
/// (70 sections) and S^2 Q^dual(-1) (one class in degree two).
inline std::vector<ResolutionFactor> ideal_D_resolution_cohomology() {
  std::vector<ResolutionFactor> out;
  auto add = [&](const std::string& name, int step, const Part& lu, const Part& lq,
                 int tw) { out.push_back({name, step, bbw_G28(lu, lq, tw)}); };
  add("wedge4_Q", 0, {}, {1, 1, 1, 1}, 0);
  add("sl_Q", 1, {}, {1, 0, 0, 0, 0, -1}, 0);
  add("S2_Qdual(-1)", 2, {}, {0, 0, 0, 0, 0, -2}, -1);
  add("S2_Q(-1)", 2, {}, {2}, -1);
  add("sl_Q(-2)", 3, {}, {1, 0, 0, 0, 0, -1}, -2);
  add("wedge2_Q(-3)", 4, {}, {1, 1}, -3);
  add("O(-4)", 5, {}, {}, -4);
  return out;
}

/// The equivariant resolution of the module M of non-Pfaffian quartics, as
/// factors S_lam(Q) (x) O(t) on G(2,8); internal degree = -t.
inline const std::vector<std::pair<Part, int>>& m_resolution_factors() {
  static const std::vector<std::pair<Part, int>> f = {
      {{2, 2, 2, 2}, -4},
      {{3, 2, 2, 2, 1}, -5},    {{2, 2, 2, 2, 1, 1}, -5},
      {{4, 2, 2, 2, 1, 1}, -6}, {{3, 3, 2, 2, 2}, -6},  {{3, 2, 2, 2, 2, 1}, -6},
      {{4, 3, 2, 2, 2, 1}, -7}, {{4, 2, 2, 2, 2, 2}, -7}, {{3, 3, 3, 3, 3, 1}, -8},
      {{4, 4, 2, 2, 2, 2}, -8}, {{4, 3, 3, 3, 3, 2}, -9},
      {{4, 4, 3, 3, 3, 3}, -10},
  };
  return f;
}

/// Homological step of each factor above, aligned with the Betti table.
inline const std::vector<int>& m_resolution_steps() {
  static const std::vector<int> s = {0, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 5};
  return s;
}

/// Cohomology of the Koszul complex computing the normal module of the
/// rank-two locus inside the flag variety Fl(2,6;8). The zero locus Z of the
/// rank-14 bundle V (extension of P1 = Wedge3(A) (x) B by P2 = Wedge2(A) (x)
/// det B, with A = U6/U2 of rank 4 and B = V8/U6 of rank 2) maps to the
/// moduli locus; the table maps (k, q) to dim H^q(Wedge^k(V-dual) (x) N)
/// with N = P2, filtration pieces summed.
inline std::map<std::pair<int, int>, Big> normal_koszul_table() {
  std::map<std::pair<int, int>, Big> out;
  const FlagType fl{8, {2, 6}};
  const auto& pleth = wedge_of_wedge2_C4();
  const SymChar n_char = schur_char({1, 1}, 4);  // Wedge2(A) factor of N
  for (int k = 0; k <= 14; ++k) {
    for (int a = std::max(0, k - 6); a <= std::min(8, k); ++a) {
      int b = k - a;
      // Wedge^a(P1-dual) via Cauchy on (A (x) det A-dual) (x) B-dual
      for (const auto& [lam, lamc] : cauchy_wedge(a, 4, 2)) {
        Part A1 = padded(lam, 4);
        for (int& x : A1) x -= a;  // (det A)^(-a)
        Part cpad = padded(lamc, 2);
        Part Bw = {-cpad[1] - b + 1, -cpad[0] - b + 1};  // + (det B)^(-b) + det B
        SymChar left = char_mul(schur_char(A1, 4), n_char);
        for (const auto& [tau, mt] : pleth[std::size_t(b)]) {
          SymChar full = char_mul(left, schur_char(negrev(padded(tau, 4)), 4));
          for (const auto& [alpha, ma] : char_decompose(full, 4)) {
            BBWResult r = bbw(fl, {{0, 0}, alpha, Bw});
            if (!r.zero) out[{k, r.degree}] += mt * ma * r.dim;
          }
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Euler characteristic of the normal module from the Koszul table.
inline Big normal_euler_char(const std::map<std::pair<int, int>, Big>& table) {
  Big chi = 0;
  for (const auto& [kq, d] : table)
    chi += ((kq.first + kq.second) % 2 == 0) ? d : -d;
  return chi;
}

/// Classical minimal resolution of the Pfaffian ideal of G(2,6) in S(W2V6):
/// (weight over V6-dual, internal degree).
inline const std::vector<std::pair<Part, int>>& pfaffian_ideal_resolution() {
  static const std::vector<std::pair<Part, int>> f = {
      {{1, 1, 1, 1}, -2},       {{2, 1, 1, 1, 1}, -3},
      {{3, 1, 1, 1, 1, 1}, -4}, {{2, 2, 2, 2, 2}, -5},
      {{3, 2, 2, 2, 2, 1}, -6}, {{3, 3, 2, 2, 2, 2}, -7},
      {{3, 3, 3, 3, 3, 3}, -9},
  };
  return f;
}

}  // namespace coble
