#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coble/covariants.hpp"
#include "test_helpers.hpp"

using namespace coble;
using namespace coble::testing;

namespace {

Mask mk(std::initializer_list<int> idx1based) {
  Mask m = 0;
  for (int i : idx1based) m |= Mask(1) << (i - 1);
  return m;
}

AltTensor<Fp> rand_decomposable(Rng& rng, std::uint64_t p) {
  while (true) {
    std::vector<Fp> x(8), y(8);
    for (auto& c : x) c = rand_fp(rng, p);
    for (auto& c : y) c = rand_fp(rng, p);
    AltTensor<Fp> w = wedge(vec_tensor(x, Var::Vec), vec_tensor(y, Var::Vec));
    for (const auto& c : w.c)
      if (!is_zero(c)) return w;
  }
}

/// Pure Pluecker-relation quadric: B(omega, omega) = coefficient of
/// omega ^ omega at the four-index set M.
QuadricOnG<Fp> pluecker_quadric(Mask M, std::uint64_t p) {
  const auto& t2 = index_table(8, 2);
  QuadricOnG<Fp> q{Mat<Fp>(28, 28), QuadricTag::Raw};
  for (int i = 0; i < 28; ++i)
    for (int j = 0; j < 28; ++j) {
      Mask A = t2.masks[std::size_t(i)], C = t2.masks[std::size_t(j)];
      if ((A & C) || (A | C) != M) continue;
      q.m.at(i, j) = Fp(sign_merge(A, C), p);
    }
  return q;
}

bool mat_is_zero(const Mat<Fp>& m) {
  for (const auto& x : m.a)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("S22 / Wedge4 split of quadrics on Wedge2(V8)") {
  std::uint64_t p = 101;
  Fp one(1, p);
  Rng rng(3);

  // a pure Pluecker quadric is pure Wedge4: S22 part vanishes, and the
  // four-form component recovers the defining index set
  for (Mask M : {mk({1, 2, 3, 4}), mk({1, 3, 5, 8}), mk({2, 4, 6, 7})}) {
    auto q = pluecker_quadric(M, p);
    auto sp = s22_wedge4_split(q, one);
    CHECK(mat_is_zero(sp.s22.m));
    CHECK(sp.w4.m == q.m);
    int nz = 0;
    for (const auto& c : sp.four_form.c)
      if (!is_zero(c)) ++nz;
    CHECK(nz == 1);
    CHECK(!is_zero(sp.four_form.coeff(M)));
  }

  // the Wedge4 projector hits all 70 basis four-forms: surjective onto a
  // 70-dim target, and 406 = 336 + 70 is certified by the interpolation rank
  const auto& t4 = index_table(8, 4);
  CHECK(t4.size() == 70);

  // idempotency on random symmetric quadrics
  for (int t = 0; t < 10; ++t) {
    QuadricOnG<Fp> q{Mat<Fp>(28, 28), QuadricTag::Raw};
    for (int i = 0; i < 28; ++i)
      for (int j = i; j < 28; ++j) {
        Fp x = rand_fp(rng, p);
        q.m.at(i, j) = x;
        q.m.at(j, i) = x;
      }
    auto sp = s22_wedge4_split(q, one);
    // the two parts sum back
    for (int i = 0; i < 28; ++i)
      for (int j = 0; j < 28; ++j)
        CHECK(sp.s22.m.at(i, j) + sp.w4.m.at(i, j) == q.m.at(i, j));
    auto again = s22_wedge4_split(sp.s22, one);
    CHECK(mat_is_zero(again.w4.m));
    CHECK(again.s22.m == sp.s22.m);
    auto w4split = s22_wedge4_split(sp.w4, one);
    CHECK(mat_is_zero(w4split.s22.m));

    // the Wedge4 part never changes values on decomposables
    for (int s = 0; s < 5; ++s) {
      auto w = rand_decomposable(rng, p);
      CHECK(is_zero(sp.w4.value(w)));
      CHECK(sp.s22.value(w) == q.value(w));
    }
  }
}

TEST_CASE("interpolated quadric equation reproduces Pfaffian values") {
  std::uint64_t p = 101;
  Fp one(1, p);
  AltTensor<Fp> v = random_form(6, p, RandomFormMode::FullRandom);
  Rng rng(11);
  auto gen = [&] { return rand_fp(rng, p); };
  auto q = quadric_equation(v, gen, one);
  CHECK(q.tag == QuadricTag::S22);

  // held-out decomposables
  Rng rng2(555);
  for (int t = 0; t < 100; ++t) {
    auto w = rand_decomposable(rng2, p);
    CHECK(q.value(w) == quadric_value(v, w, one));
  }

  // adding a Pluecker quadric changes nothing on decomposables
  auto pl = pluecker_quadric(mk({1, 2, 5, 6}), p);
  QuadricOnG<Fp> shifted{q.m, QuadricTag::Raw};
  for (int i = 0; i < 28; ++i)
    for (int j = 0; j < 28; ++j) shifted.m.at(i, j) += pl.m.at(i, j);
  for (int t = 0; t < 10; ++t) {
    auto w = rand_decomposable(rng2, p);
    CHECK(shifted.value(w) == q.value(w));
  }

  // equivariance: the equation of g.v is the Wedge2(g)-transform of the
  // equation of v, up to a global scalar, after S22 projection
  for (int t = 0; t < 3; ++t) {
    Mat<Fp> g = random_sl8(rng, p);
    auto qg = quadric_equation(gl_action(g, v), gen, one);
    Mat<Fp> G2i = wedge2_matrix(inverse(g, one));
    Mat<Fp> transformed = G2i.transposed() * q.m * G2i;
    auto tr22 = s22_project(QuadricOnG<Fp>{transformed, QuadricTag::Raw}, one);
    CHECK(proportionality(qg.m, tr22.m, one).has_value());
  }
}

TEST_CASE("cubic covariant chain matches the interpolated equation") {
  std::uint64_t p = 101;
  Fp one(1, p);
  Rng rng(21);
  auto gen = [&] { return rand_fp(rng, p); };
  for (int t = 0; t < 10; ++t) {
    AltTensor<Fp> v = random_form(300 + std::uint64_t(t), p, RandomFormMode::FullRandom);
    auto chain = s22_project(cubic_covariant_chain(v, one), one);
    auto q = quadric_equation(v, gen, one);
    auto lam = proportionality(chain.m, q.m, one);
    REQUIRE(lam.has_value());
    CHECK(!is_zero(*lam));
  }

  // decomposable v: every induced two-form has rank <= 2, the chain's
  // restriction to the Grassmannian vanishes identically
  AltTensor<Fp> e1234(8, 4, Var::Vec);
  e1234.coeff(mk({1, 2, 3, 4})) = one;
  auto chain0 = s22_project(cubic_covariant_chain(e1234, one), one);
  CHECK(mat_is_zero(chain0.m));
}

TEST_CASE("quintic covariant: vanishes on the moduli locus, independent of the Pfaffian quadric") {
  std::uint64_t p = 11;
  Fp one(1, p);
  AltTensor<Fp> v = random_form(42, p, RandomFormMode::FullRandom);
  auto q5 = quintic_covariant(v, one);
  CHECK(q5.tag == QuadricTag::S22);

  Rng rng(77);
  auto gen = [&] { return rand_fp(rng, p); };
  auto q = quadric_equation(v, gen, one);

  // sampled rank-two planes: both quadrics vanish there
  SampleReport rep = sample_moduli(v, 2024, 3, 8000000);
  REQUIRE(rep.hits >= 3);
  for (std::size_t h = 0; h < 3; ++h) {
    std::vector<Fp> u1(8), u2(8);
    for (int j = 0; j < 8; ++j) {
      u1[std::size_t(j)] = Fp(rep.witnesses[h][std::size_t(j)], p);
      u2[std::size_t(j)] = Fp(rep.witnesses[h][std::size_t(8 + j)], p);
    }
    AltTensor<Fp> w = wedge(vec_tensor(u1, Var::Vec), vec_tensor(u2, Var::Vec));
    CHECK(is_zero(q.value(w)));
    CHECK(is_zero(q5.value(w)));
  }

  // but the quintic is not a multiple of the Pfaffian quadric
  CHECK(!mat_is_zero(q5.m));
  CHECK(!proportionality(q5.m, q.m, one).has_value());

  // generic decomposables do not satisfy the quintic (it cuts a hypersurface)
  int nonzero = 0;
  Rng rng3(99);
  for (int t = 0; t < 10; ++t)
    if (!is_zero(q5.value(rand_decomposable(rng3, p)))) ++nonzero;
  CHECK(nonzero >= 8);

  // equivariance up to scalar at a larger prime
  std::uint64_t pp = 101;
  Fp pone(1, pp);
  AltTensor<Fp> vv = random_form(9, pp, RandomFormMode::FullRandom);
  auto qq5 = quintic_covariant(vv, pone);
  Rng rng4(13);
  Mat<Fp> g = random_sl8(rng4, pp);
  auto qg5 = quintic_covariant(gl_action(g, vv), pone);
  Mat<Fp> G2i = wedge2_matrix(inverse(g, pone));
  Mat<Fp> transformed = G2i.transposed() * qq5.m * G2i;
  auto tr22 = s22_project(QuadricOnG<Fp>{transformed, QuadricTag::Raw}, pone);
  CHECK(proportionality(qg5.m, tr22.m, pone).has_value());
}
