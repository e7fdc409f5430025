#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coble/theta.hpp"
#include "test_helpers.hpp"

using namespace coble;
using namespace coble::testing;

namespace {

Mask mk(std::initializer_list<int> idx1based) {
  Mask m = 0;
  for (int i : idx1based) m |= Mask(1) << (i - 1);
  return m;
}

AltTensor<Rat> elem4(std::initializer_list<int> idx) {
  AltTensor<Rat> t(8, 4, Var::Vec);
  t.coeff(mk(idx)) = 1;
  return t;
}

/// Independent bracket oracle: enumerate support pairs (P of u, Q of w-dual)
/// with |P cap Q| = 3 and accumulate entries the long way.
template <class K>
Mat<K> bracket_oracle(const AltTensor<K>& u, const AltTensor<K>& w, const K& like) {
  auto term = [&](const AltTensor<K>& x, const AltTensor<K>& phi) {
    Mat<K> E(8, 8);
    const auto& t4 = index_table(8, 4);
    for (Mask P : t4.masks)
      for (Mask Q : t4.masks) {
        if (popcount(P & Q) != 3) continue;
        if (is_zero(x.coeff(P)) || is_zero(phi.coeff(Q))) continue;
        Mask S = P & Q;
        int a = mask_bits(P & ~S)[0];
        int b = mask_bits(Q & ~S)[0];
        K t = x.coeff(P) * phi.coeff(Q);
        if (sign_insert_front(a, S) * sign_insert_front(b, S) < 0) t = -t;
        E.at(a, b) += t;
      }
    // diagonal part: P == Q contributes with every common 3-subset
    for (Mask P : t4.masks) {
      if (is_zero(x.coeff(P))) continue;
      if (is_zero(phi.coeff(P))) continue;
      for (int a : mask_bits(P)) {
        K t = x.coeff(P) * phi.coeff(P);
        E.at(a, a) += t;  // signs square to +1
      }
    }
    return E;
  };
  Mat<K> E = term(u, dualize(w, like));
  Mat<K> F = term(w, dualize(u, like));
  Mat<K> B(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) B.at(i, j) = E.at(i, j) - F.at(i, j);
  K tr{};
  for (int i = 0; i < 8; ++i) tr += B.at(i, i);
  K eighth = tr * inv(scalar_like(8, like));
  for (int i = 0; i < 8; ++i) B.at(i, i) -= eighth;
  return B;
}

template <class K>
bool mat_zero(const Mat<K>& m) {
  for (const auto& x : m.a)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("cartan_basis anchors") {
  auto hs = cartan_basis(Rat(1));
  REQUIRE(hs.size() == 7);
  CHECK(hs[0].coeff(mk({1, 2, 3, 4})) == 1);
  CHECK(hs[0].coeff(mk({5, 6, 7, 8})) == 1);
  CHECK(hs[1].coeff(mk({1, 3, 5, 7})) == 1);
  CHECK(hs[1].coeff(mk({2, 4, 6, 8})) == 1);
  for (const auto& h : hs) {
    int nz = 0;
    bool all_one = true;
    for (const auto& c : h.c)
      if (!is_zero(c)) {
        ++nz;
        all_one = all_one && c == 1;
      }
    CHECK(nz == 2);
    CHECK(all_one);
  }
  // the two fourtuples are complementary
  for (const auto& [km, lm] : cartan_pairs()) CHECK((km | lm) == 0xFF);
}

TEST_CASE("cartan self-duality") {
  auto hs = cartan_basis(Rat(1));
  for (const auto& h : hs) {
    auto hd = dualize(h, Rat(1));
    CHECK(hd.var == Var::Cov);
    CHECK(hd.c == h.c);
  }
  // double dual is the identity on (k,n) = (4,8)
  Rng rng(2);
  AltTensor<Rat> v(8, 4, Var::Vec);
  for (auto& c : v.c) c = rand_rat(rng);
  CHECK(dualize(dualize(v, Rat(1)), Rat(1)).c == v.c);
}

TEST_CASE("e7 bracket commutation on the Cartan subspace") {
  auto hs = cartan_basis(Rat(1));
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) CHECK(mat_zero(e7_bracket(hs[i], hs[j], Rat(1))));
}

TEST_CASE("e7 bracket nonzero case and oracle") {
  auto u = elem4({1, 2, 3, 4});
  auto w = elem4({1, 5, 6, 7});
  auto B = e7_bracket(u, w, Rat(1));
  CHECK(!mat_zero(B));
  CHECK(B == bracket_oracle(u, w, Rat(1)));
  // trace zero and antisymmetry in (u,w)
  Rat tr;
  for (int i = 0; i < 8; ++i) tr += B.at(i, i);
  CHECK(is_zero(tr));
  auto Bn = e7_bracket(w, u, Rat(1));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(Bn.at(i, j) == -B.at(i, j));
  CHECK(mat_zero(e7_bracket(u, u, Rat(1))));

  // oracle agreement on random forms
  Rng rng(5);
  std::uint64_t p = 101;
  for (int t = 0; t < 5; ++t) {
    AltTensor<Fp> a(8, 4, Var::Vec), b(8, 4, Var::Vec);
    for (auto& c : a.c) c = rand_fp(rng, p);
    for (auto& c : b.c) c = rand_fp(rng, p);
    CHECK(e7_bracket(a, b, Fp(1, p)) == bracket_oracle(a, b, Fp(1, p)));
  }
}

TEST_CASE("e7 bracket equivariance under SL8") {
  Rng rng(13);
  std::uint64_t p = 101;
  Fp one(1, p);
  for (int t = 0; t < 20; ++t) {
    AltTensor<Fp> u(8, 4, Var::Vec), w(8, 4, Var::Vec);
    for (auto& c : u.c) c = rand_fp(rng, p);
    for (auto& c : w.c) c = rand_fp(rng, p);
    Mat<Fp> g = random_sl8(rng, p);
    Mat<Fp> ginv = adjugate(g, one);  // det = 1
    auto lhs = e7_bracket(gl_action(g, u), gl_action(g, w), one);
    auto rhs = g * e7_bracket(u, w, one) * ginv;
    CHECK(lhs == rhs);
  }
  // conjugated Cartan pairs still commute
  auto hs = cartan_basis(Fp(1, p));
  Mat<Fp> g = random_sl8(rng, p);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      CHECK(mat_zero(e7_bracket(gl_action(g, hs[std::size_t(i)]),
                                gl_action(g, hs[std::size_t(j)]), one)));
}

TEST_CASE("gl_action") {
  Rng rng(3);
  std::uint64_t p = 11;
  Fp one(1, p);
  AltTensor<Fp> v(8, 4, Var::Vec);
  for (auto& c : v.c) c = rand_fp(rng, p);

  CHECK(gl_action(Mat<Fp>::identity(8, one), v) == v);

  // diagonal action scales each coefficient by a 4-fold product
  Mat<Fp> d(8, 8);
  std::vector<Fp> ds(8);
  for (int i = 0; i < 8; ++i) {
    ds[std::size_t(i)] = Fp(1 + std::int64_t(rng.below(p - 1)), p);
    d.at(i, i) = ds[std::size_t(i)];
  }
  auto dv = gl_action(d, v);
  const auto& t4 = index_table(8, 4);
  for (std::size_t i = 0; i < t4.size(); ++i) {
    Fp prod = one;
    for (int b : mask_bits(t4.masks[i])) prod *= ds[std::size_t(b)];
    CHECK(dv.c[i] == prod * v.c[i]);
  }

  // transposition (12) flips the sign of e1^e2^e3^e4
  Mat<Fp> s = Mat<Fp>::identity(8, one);
  s.at(0, 0) = s.at(1, 1) = Fp(0, p);
  s.at(0, 1) = s.at(1, 0) = one;
  AltTensor<Fp> e1234(8, 4, Var::Vec);
  e1234.coeff(0b1111) = one;
  auto se = gl_action(s, e1234);
  CHECK(se.coeff(0b1111) == -one);

  // functoriality
  Mat<Fp> g1 = random_sl8(rng, p), g2 = random_sl8(rng, p);
  CHECK(gl_action(g1 * g2, v) == gl_action(g1, gl_action(g2, v)));

  // singular matrix rejected
  Mat<Fp> z(8, 8);
  CHECK_THROWS(gl_action(z, v));
}

TEST_CASE("fano combinatorics") {
  const auto& triples = fano_triples();
  REQUIRE(triples.size() == 7);
  CHECK(triples[0] == std::array<int, 3>{1, 2, 4});

  auto sp = shared_pairs({1, 2, 4});
  std::vector<Mask> expect = {mk({1, 3}), mk({2, 4}), mk({5, 7}), mk({6, 8})};
  CHECK(sp == expect);

  // each triple shares exactly 4 disjoint pairs partitioning 1..8
  for (const auto& tr : triples) {
    auto pairs = shared_pairs(tr);
    REQUIRE(pairs.size() == 4);
    Mask un = 0;
    for (Mask m : pairs) {
      CHECK((un & m) == 0);
      un |= m;
    }
    CHECK(un == 0xFF);
  }

  // every index pair occurs in exactly 3 of the 14 fourtuples
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      Mask pm = (Mask(1) << a) | (Mask(1) << b);
      int count = 0;
      for (const auto& [km, lm] : cartan_pairs()) {
        if ((pm & km) == pm) ++count;
        if ((pm & lm) == pm) ++count;
      }
      CHECK(count == 3);
    }

  // triples pairwise meet in exactly one generator index
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      int common = 0;
      for (int a : triples[std::size_t(i)])
        for (int b : triples[std::size_t(j)])
          if (a == b) ++common;
      CHECK(common == 1);
    }
}

TEST_CASE("cartan_sample and random_form") {
  std::vector<Rat> c(7, Rat(0));
  c[0] = 1;
  auto v = cartan_sample(c, Rat(1));
  auto hs = cartan_basis(Rat(1));
  CHECK(v == hs[0]);
  CHECK_THROWS(cartan_sample(std::vector<Rat>(7, Rat(0)), Rat(1)));

  auto a = random_form(99, 11);
  auto b = random_form(99, 11);
  CHECK(a == b);
  auto d = random_form(100, 11);
  CHECK(!(a == d));
}
