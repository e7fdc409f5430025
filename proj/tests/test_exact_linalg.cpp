#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "coble/field.hpp"
#include "coble/matrix.hpp"
#include "coble/poly.hpp"
#include "coble/rng.hpp"
#include "test_helpers.hpp"

using namespace coble;
using namespace coble::testing;

namespace {

/// Rank oracle: largest k such that some k x k minor has nonzero determinant.
template <class K>
int rank_by_minors(const Mat<K>& m, const K& one) {
  int best = 0;
  int maxk = std::min(m.nr, m.nc);
  for (int k = 1; k <= maxk; ++k) {
    bool found = false;
    // iterate over all k-subsets of rows and columns
    std::vector<int> rsel(k, 0);
    std::iota(rsel.begin(), rsel.end(), 0);
    while (!found) {
      std::vector<int> csel(k, 0);
      std::iota(csel.begin(), csel.end(), 0);
      while (true) {
        Mat<K> sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            sub.at(i, j) = m.at(rsel[std::size_t(i)], csel[std::size_t(j)]);
        if (!is_zero(det_cofactor(sub, one))) {
          found = true;
          break;
        }
        int t = k - 1;
        while (t >= 0 && csel[std::size_t(t)] == m.nc - k + t) --t;
        if (t < 0) break;
        ++csel[std::size_t(t)];
        for (int u = t + 1; u < k; ++u) csel[std::size_t(u)] = csel[std::size_t(u - 1)] + 1;
      }
      if (found) break;
      int t = k - 1;
      while (t >= 0 && rsel[std::size_t(t)] == m.nr - k + t) --t;
      if (t < 0) break;
      ++rsel[std::size_t(t)];
      for (int u = t + 1; u < k; ++u) rsel[std::size_t(u)] = rsel[std::size_t(u - 1)] + 1;
    }
    if (found)
      best = k;
    else
      break;
  }
  return best;
}

/// Permutation-sum Pfaffian oracle: (1/(2^m m!)) sum over all permutations.
Rat pfaffian_perm_oracle(const Mat<Rat>& m) {
  int n = m.nr;
  std::vector<int> perm(n, 0);
  std::iota(perm.begin(), perm.end(), 0);
  Rat acc = 0;
  do {
    // sign of perm
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[std::size_t(i)] > perm[std::size_t(j)]) ++inv;
    Rat term = (inv % 2) ? Rat(-1) : Rat(1);
    for (int i = 0; i < n; i += 2)
      term *= m.at(perm[std::size_t(i)], perm[std::size_t(i + 1)]);
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  int half = n / 2;
  Rat denom = 1;
  for (int i = 1; i <= half; ++i) denom *= 2 * i;  // 2^m * m!
  return acc / denom;
}

}  // namespace

TEST_CASE("rank: identity, zero, minor oracle") {
  Rat one(1);
  Mat<Rat> id = Mat<Rat>::identity(6, one);
  CHECK(rank(id) == 6);
  Mat<Rat> z(6, 6);
  CHECK(rank(z) == 0);

  Rng rng(42);
  std::uint64_t p = 11;
  for (int t = 0; t < 10; ++t) {
    auto m = rand_mat<Fp>(6, 6, [&] { return rand_fp(rng, p); });
    // make some matrices singular on purpose
    if (t % 2 == 0)
      for (int j = 0; j < 6; ++j) m.at(5, j) = m.at(0, j) + m.at(1, j);
    CHECK(rank(m) == rank_by_minors(m, Fp(1, p)));
  }
}

TEST_CASE("rank over Q agrees with rank over F_p for large primes") {
  Rng rng(7);
  auto mq = rand_mat<Rat>(7, 5, [&] { return rand_rat(rng); });
  for (int j = 0; j < 5; ++j) mq.at(6, j) = mq.at(0, j) - mq.at(2, j);
  int rq = rank(mq);
  for (std::uint64_t p : {1000000007ULL, 998244353ULL, 2147483629ULL}) {
    Mat<Fp> mp(7, 5);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 5; ++j)
        mp.at(i, j) = Fp(std::int64_t(numerator(mq.at(i, j))), p);
    CHECK(rank(mp) == rq);
  }
}

TEST_CASE("kernel_basis") {
  Rat one(1);
  CHECK(kernel_basis(Mat<Rat>::identity(5, one), one).empty());

  Mat<Rat> z(4, 4);
  auto kz = kernel_basis(z, one);
  CHECK(kz.size() == 4);

  // rank-4 skew 6x6 built as P * J4 * P^T (J4 = symplectic on first 4 coords)
  Rng rng(3);
  std::uint64_t p = 101;
  Mat<Fp> J(6, 6);
  J.at(0, 1) = Fp(1, p);
  J.at(1, 0) = Fp(-1, p);
  J.at(2, 3) = Fp(1, p);
  J.at(3, 2) = Fp(-1, p);
  Mat<Fp> P;
  do {
    P = rand_mat<Fp>(6, 6, [&] { return rand_fp(rng, p); });
  } while (rank(P) < 6);
  Mat<Fp> B = P * J * P.transposed();
  auto kb = kernel_basis(B, Fp(1, p));
  REQUIRE(kb.size() == 2);
  for (const auto& b : kb)
    for (int i = 0; i < 6; ++i) {
      Fp acc;
      for (int j = 0; j < 6; ++j) acc += B.at(i, j) * b[std::size_t(j)];
      CHECK(is_zero(acc));
    }
}

TEST_CASE("adjugate") {
  Rat one(1);
  CHECK(adjugate(Mat<Rat>::identity(4, one), one) == Mat<Rat>::identity(4, one));

  Mat<Rat> d(2, 2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  Mat<Rat> ad = adjugate(d, one);
  CHECK(ad.at(0, 0) == 3);
  CHECK(ad.at(1, 1) == 2);
  CHECK(is_zero(ad.at(0, 1)));

  // M * adj(M) = det(M) * I on random matrices, both fields
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    auto m = rand_mat<Rat>(5, 5, [&] { return rand_rat(rng, 6); });
    Rat det = det_bareiss(m, one);
    Mat<Rat> prod = m * adjugate(m, one);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(prod.at(i, j) == (i == j ? det : Rat(0)));
  }
  std::uint64_t p = 13;
  for (int t = 0; t < 100; ++t) {
    auto m = rand_mat<Fp>(5, 5, [&] { return rand_fp(rng, p); });
    Fp det = det_bareiss(m, Fp(1, p));
    Mat<Fp> prod = m * adjugate(m, Fp(1, p));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(prod.at(i, j) == (i == j ? det : Fp(0, p)));
  }
}

TEST_CASE("pfaffian: anchors and oracles") {
  Rat one(1);
  // standard symplectic pairs (1,2),(3,4),(5,6) -> +1
  Mat<Rat> J(6, 6);
  for (int i = 0; i < 6; i += 2) {
    J.at(i, i + 1) = 1;
    J.at(i + 1, i) = -1;
  }
  CHECK(pfaffian(J, one) == 1);
  CHECK(is_zero(pfaffian(Mat<Rat>(6, 6), one)));

  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto s = rand_skew<Rat>(6, [&] { return rand_rat(rng, 9); });
    CHECK(pfaffian(s, one) == pfaffian_perm_oracle(s));
  }
  // Pf^2 = det on 200 skew matrices of sizes 4 and 6
  for (int t = 0; t < 100; ++t) {
    auto s4 = rand_skew<Rat>(4, [&] { return rand_rat(rng, 9); });
    Rat pf = pfaffian(s4, one);
    CHECK(pf * pf == det_bareiss(s4, one));
    auto s6 = rand_skew<Rat>(6, [&] { return rand_rat(rng, 9); });
    pf = pfaffian(s6, one);
    CHECK(pf * pf == det_bareiss(s6, one));
  }
  // Pf(P^T S P) = det(P) Pf(S)
  for (int t = 0; t < 10; ++t) {
    auto s = rand_skew<Rat>(6, [&] { return rand_rat(rng, 5); });
    auto p = rand_mat<Rat>(6, 6, [&] { return rand_rat(rng, 5); });
    CHECK(pfaffian(p.transposed() * s * p, one) == det_bareiss(p, one) * pfaffian(s, one));
  }
}

TEST_CASE("odd-size pfaffian is zero, non-skew rejected") {
  Rat one(1);
  Mat<Rat> m(3, 3);
  m.at(0, 1) = 1;
  m.at(1, 0) = -1;
  CHECK(is_zero(pfaffian(m, one)));
  Mat<Rat> bad(2, 2);
  bad.at(0, 1) = 1;
  bad.at(1, 0) = 1;
  CHECK_THROWS(pfaffian(bad, one));
}

TEST_CASE("vanishing_order") {
  Rat one(1);
  UniPoly<Rat> f(std::vector<Rat>{0, 0, 0, 1, 0, 1});  // t^3 + t^5
  CHECK(vanishing_order(f) == 3);
  CHECK(vanishing_order(UniPoly<Rat>::constant(one)) == 0);
  CHECK(vanishing_order(UniPoly<Rat>{}) == ORDER_INFINITE);

  // (t-a)^3 q(t), shifted to a, has order 3
  Rat a(5);
  UniPoly<Rat> lin(std::vector<Rat>{-a, 1});
  UniPoly<Rat> q(std::vector<Rat>{3, 1, 2});
  UniPoly<Rat> g = lin * lin * lin * q;
  // substitute t -> t + a
  UniPoly<Rat> shifted = UniPoly<Rat>::constant(g.c.back());
  UniPoly<Rat> tpa(std::vector<Rat>{a, 1});
  for (int i = g.degree() - 1; i >= 0; --i)
    shifted = shifted * tpa + UniPoly<Rat>::constant(g.coeff(i));
  CHECK(vanishing_order(shifted) == 3);
}

TEST_CASE("is_perfect_cube") {
  UniPoly<Rat> s(std::vector<Rat>{1, 0, 1});  // t^2 + 1
  auto r = cube_root_poly(s * s * s);
  REQUIRE(r.has_value());
  CHECK(*r == s);

  UniPoly<Rat> notc(std::vector<Rat>{0, 0, 1});  // t^2
  notc = notc * UniPoly<Rat>(std::vector<Rat>{1, 1});
  CHECK(!is_perfect_cube(notc));

  // cube of a random quartic over F_101, recovered up to scalar
  Rng rng(21);
  std::uint64_t p = 101;
  for (int t = 0; t < 10; ++t) {
    UniPoly<Fp> g;
    g.c.resize(5);
    for (auto& c : g.c) c = rand_fp(rng, p);
    g.c[4] = Fp(1 + std::int64_t(rng.below(p - 1)), p);
    Fp scale = Fp(1 + std::int64_t(rng.below(p - 1)), p);
    UniPoly<Fp> f = UniPoly<Fp>::constant(scale) * g * g * g;
    auto back = cube_root_poly(f);
    REQUIRE(back.has_value());
    // equality up to scalar
    Fp ratio = back->c.back() / g.c.back();
    UniPoly<Fp> scaled = UniPoly<Fp>::constant(ratio) * g;
    CHECK(*back == scaled);
  }
}

TEST_CASE("jets flow through elimination") {
  // rank of a jet matrix with unit pivots; derivative of det via jets
  std::uint64_t p = 11;
  using J = Jet<Fp>;
  Rng rng(5);
  auto m = rand_mat<Fp>(4, 4, [&] { return rand_fp(rng, p); });
  auto d = rand_mat<Fp>(4, 4, [&] { return rand_fp(rng, p); });
  Mat<J> jm(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) jm.at(i, j) = J(m.at(i, j), d.at(i, j));
  J dj = det_bareiss(jm, J(Fp(1, p)));
  // compare against finite difference in the formal sense: det(m + t d)
  // expanded to first order via cofactor trace formula tr(adj(m) d)
  Fp lin;
  Mat<Fp> adj = adjugate(m, Fp(1, p));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) lin += adj.at(j, i) * d.at(j, i);
  Fp lin2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) lin2 += adj.at(i, j) * d.at(j, i);
  CHECK(dj.a == det_bareiss(m, Fp(1, p)));
  CHECK((dj.b == lin || dj.b == lin2));
}
