#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "covariants.hpp"
#include "duality.hpp"
#include "io.hpp"
#include "rep.hpp"
#include "schubert.hpp"
#include "strata.hpp"
#include "theta.hpp"

namespace coble {

struct VerifyOptions {
  std::uint64_t prime = 11;
  std::uint64_t seed = 7;
  std::uint64_t trials = 20;
  std::uint64_t budget = 10000000;
  AltTensor<Fp> v{8, 4, Var::Vec};
  std::string form_hash_hex;
  std::string form_source;

  json base_params() const {
    json j;
    j["prime"] = prime;
    j["seed"] = seed;
    j["trials"] = trials;
    j["budget"] = budget;
    j["form_hash"] = form_hash_hex;
    j["form_source"] = form_source;
    return j;
  }
};

namespace detail_verify {

inline Certificate make_cert(const VerifyOptions& o, const std::string& id) {
  const ClaimInfo* info = find_claim(id);
  if (!info) throw std::logic_error("unregistered claim id: " + id);
  Certificate c;
  c.claim_id = info->id;
  c.claim = info->statement;
  c.params = o.base_params();
  c.verdict = "pass";
  return c;
}

inline void fail(Certificate& c, const std::string& why) {
  c.verdict = "fail";
  c.notes.push_back(why);
}

inline void inconclusive(Certificate& c, const std::string& why) {
  if (c.verdict != "fail") c.verdict = "inconclusive";
  c.notes.push_back(why);
}

inline Subspace<Fp> subspace2_from_witness(const std::vector<std::int64_t>& w,
                                           std::uint64_t p) {
  std::vector<std::vector<Fp>> gens(2, std::vector<Fp>(8));
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 8; ++j)
      gens[std::size_t(r)][std::size_t(j)] = Fp(std::uint64_t(w[std::size_t(8 * r + j)]), p);
  return Subspace<Fp>::from_vectors(8, gens);
}

inline std::vector<Fp> vector_from_witness(const std::vector<std::int64_t>& w,
                                           std::uint64_t p) {
  std::vector<Fp> x(8);
  for (int j = 0; j < 8; ++j) x[std::size_t(j)] = Fp(std::uint64_t(w[std::size_t(j)]), p);
  return x;
}

/// All F_p-points of the projectivization of a subspace, as coordinate
/// vectors with leading coefficient one in the generator expansion.
inline std::vector<std::vector<Fp>> projective_points(const Subspace<Fp>& U,
                                                      std::uint64_t p) {
  std::vector<std::vector<Fp>> out;
  int d = U.dim();
  std::vector<std::uint64_t> coef(std::size_t(d), 0);
  // leading index runs over the generator made monic
  for (int lead = 0; lead < d; ++lead) {
    for (std::size_t t = 0; t < std::size_t(lead); ++t) coef[t] = 0;
    // enumerate all tails
    std::vector<std::uint64_t> tail(std::size_t(d - lead - 1), 0);
    bool done = false;
    while (!done) {
      std::vector<Fp> x(8, Fp(0, p));
      for (int j = 0; j < 8; ++j) {
        Fp acc(0, p);
        acc += U.basis_vector(lead)[std::size_t(j)];
        for (int r = lead + 1; r < d; ++r)
          acc += Fp(tail[std::size_t(r - lead - 1)], p) * U.basis_vector(r)[std::size_t(j)];
        x[std::size_t(j)] = acc;
      }
      out.push_back(std::move(x));
      done = true;
      for (std::size_t t = 0; t < tail.size(); ++t) {
        if (++tail[t] < p) {
          done = false;
          break;
        }
        tail[t] = 0;
      }
      if (tail.empty()) done = true;
    }
  }
  return out;
}

inline json witness_json(const std::vector<std::vector<std::int64_t>>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(w);
  return arr;
}

}  // namespace detail_verify

// ---------------------------------------------------------------------------
// Suite: cartan  (exact, over Q, form-independent)
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_cartan(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;
  Rat one(1);
  auto hs = cartan_basis(one);

  Certificate cb = make_cert(o, "cartan.bracket-commutes");
  int zero_pairs = 0;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Mat<Rat> br = e7_bracket(hs[i], hs[j], one);
      bool z = true;
      for (const auto& x : br.a) z = z && is_zero(x);
      if (z)
        ++zero_pairs;
      else
        fail(cb, "nonzero bracket at pair (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + ")");
    }
  cb.witnesses.push_back({{"commuting_pairs", zero_pairs}, {"total_pairs", 21}});
  out.push_back(std::move(cb));

  Certificate cd = make_cert(o, "cartan.dualize-fixed");
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (!(dualize(hs[i], one).c == hs[i].c))
      fail(cd, "generator " + std::to_string(i + 1) + " not self-dual");
  out.push_back(std::move(cd));

  Certificate cf = make_cert(o, "cartan.fano-structure");
  for (const auto& tr : fano_triples()) {
    auto pairs = shared_pairs(tr);
    Mask un = 0;
    bool ok = pairs.size() == 4;
    for (Mask m : pairs) {
      ok = ok && (un & m) == 0;
      un |= m;
    }
    ok = ok && un == 0xFF;
    json w;
    w["triple"] = std::vector<int>(tr.begin(), tr.end());
    json pj = json::array();
    for (Mask m : pairs) pj.push_back(mask_indices1(m));
    w["shared_pairs"] = pj;
    cf.witnesses.push_back(w);
    if (!ok) fail(cf, "triple does not share a partition into four pairs");
  }
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b) {
      Mask pm = (Mask(1) << a) | (Mask(1) << b);
      int count = 0;
      for (const auto& [km, lm] : cartan_pairs()) {
        if ((pm & km) == pm) ++count;
        if ((pm & lm) == pm) ++count;
      }
      if (count != 3)
        fail(cf, "pair {" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                     "} lies in " + std::to_string(count) + " supports, expected 3");
    }
  out.push_back(std::move(cf));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: moduli
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_moduli(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;
  Fp one(1, o.prime);

  SampleReport rep = sample_moduli(o.v, o.seed, 5, o.budget);

  Certificate cr = make_cert(o, "moduli.rank-two-points");
  Certificate cl = make_cert(o, "moduli.lines-in-quartic");
  Certificate cs = make_cert(o, "moduli.quadric-singular");
  cr.params["target"] = 5;
  std::string stats = "trials=" + std::to_string(rep.trials) +
                      " hits=" + std::to_string(rep.hits) +
                      " degenerate=" + std::to_string(rep.degenerate_hits);
  if (rep.hits == 0) {
    for (Certificate* c : {&cr, &cl, &cs})
      inconclusive(*c, "no rank-two planes found within budget (" + stats + ")");
  } else {
    cr.notes.push_back(stats);
    cr.witnesses = witness_json(rep.witnesses);
    for (const auto& w : rep.witnesses) {
      Subspace<Fp> U2 = subspace2_from_witness(w, o.prime);
      if (U2.dim() != 2) {
        fail(cr, "witness rows do not span a plane");
        continue;
      }
      if (rank_stratum_G28(o.v, U2) != StratumG28::MODULI)
        fail(cr, "induced skew form does not have rank exactly two");
      for (const auto& x : projective_points(U2, o.prime))
        if (!quartic_member(o.v, x, one)) {
          fail(cl, "a point of a sampled line misses the quartic");
          break;
        }
      if (!singular_along_D(o.v, U2, one))
        fail(cs, "a chart partial derivative of the quadric is nonzero");
    }
    cl.notes.push_back("checked " + std::to_string(o.prime + 1) +
                       " projective points on each of " + std::to_string(rep.hits) +
                       " lines");
    cs.notes.push_back("checked 12 chart partials at each of " +
                       std::to_string(rep.hits) + " planes");
  }
  out.push_back(std::move(cr));
  out.push_back(std::move(cl));
  out.push_back(std::move(cs));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: quadric-duality
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_quadric_duality(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;
  Fp one(1, o.prime);

  SampleReport rep = sample_quadric(o.v, o.seed, o.trials, o.budget);

  Certificate cg = make_cert(o, "quadric.smooth-gradient");
  Certificate cd = make_cert(o, "quadric.self-dual");
  Certificate cb = make_cert(o, "quadric.biduality");
  std::string stats = "trials=" + std::to_string(rep.trials) +
                      " hits=" + std::to_string(rep.hits);
  if (rep.hits == 0) {
    for (Certificate* c : {&cg, &cd, &cb})
      inconclusive(*c, "no rank-four planes found within budget (" + stats + ")");
  } else {
    cd.notes.push_back(stats);
    std::size_t used = 0, deeper = 0, round_trips = 0, skipped_trips = 0;
    for (const auto& w : rep.witnesses) {
      if (used >= o.trials) break;
      Subspace<Fp> U2 = subspace2_from_witness(w, o.prime);
      // the sampler can also land on the deeper rank-two stratum; those
      // points are singular on the quadric and belong to the moduli suite
      if (rank_stratum_G28(o.v, U2) != StratumG28::QUADRIC) {
        ++deeper;
        continue;
      }
      ++used;
      cd.witnesses.push_back(w);
      bool grad_nonzero = false;
      for (const Fp& g : chart_gradient(o.v, U2, one)) grad_nonzero = grad_nonzero || !is_zero(g);
      if (!grad_nonzero) fail(cg, "vanishing gradient at a sampled rank-four plane");
      try {
        GrassDualWitness<Fp> dw = grassmann_dual_point(o.v, U2, one);
        if (dw.dual_stratum == StratumG28::GENERIC)
          fail(cd, "dual point misses the dual quadric");
        if (!tangent_check_quadric(o.v, U2, dw.U6, one))
          fail(cg, "gradient kernel does not match the six-space witness");
        // the reverse construction is only defined when the dual point is a
        // smooth point of the dual quadric
        if (dw.dual_stratum == StratumG28::QUADRIC) {
          ++round_trips;
          if (!grassmann_biduality(o.v, U2, one))
            fail(cb, "biduality round trip did not return the original plane");
        } else {
          ++skipped_trips;
        }
      } catch (const std::exception& e) {
        fail(cd, std::string("dual-point extraction failed: ") + e.what());
      }
    }
    cd.notes.push_back(std::to_string(used) + " smooth points checked, " +
                       std::to_string(deeper) + " deeper-stratum hits skipped");
    cb.notes.push_back(std::to_string(round_trips) + " round trips completed, " +
                       std::to_string(skipped_trips) +
                       " skipped at dual deeper-stratum points");
    if (round_trips == 0)
      inconclusive(cb, "no point had a smooth dual point at this prime");
    if (used == 0)
      for (Certificate* c : {&cg, &cd, &cb})
        inconclusive(*c, "no smooth quadric points among the sampled hits");
  }
  out.push_back(std::move(cg));
  out.push_back(std::move(cd));
  out.push_back(std::move(cb));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: quartic-duality
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_quartic_duality(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;
  Fp one(1, o.prime);

  SampleReport rep = sample_quartic(o.v, o.seed, 6 * o.trials, o.budget);
  // keep only smooth points: singular ones have no cube-root tangent
  Rng vote_rng(Rng::derive(o.seed, 0xF1));
  std::vector<std::vector<Fp>> smooth;
  for (const auto& w : rep.witnesses) {
    if (smooth.size() >= o.trials) break;
    std::vector<Fp> x = vector_from_witness(w, o.prime);
    if (kummer_test(o.v, x, 8, vote_rng, one, o.prime) == StratumP7::QUARTIC)
      smooth.push_back(std::move(x));
  }

  Certificate cd = make_cert(o, "quartic.self-dual");
  Certificate cb = make_cert(o, "quartic.biduality");
  if (smooth.empty()) {
    std::string why = "no smooth quartic points found within budget (hits=" +
                      std::to_string(rep.hits) + ")";
    inconclusive(cd, why);
    inconclusive(cb, why);
  } else {
    cd.notes.push_back("checked " + std::to_string(smooth.size()) + " smooth points");
    AltTensor<Fp> vd = dual_as_form(o.v, one);
    std::size_t round_trips = 0, skipped = 0;
    for (const auto& x : smooth) {
      std::vector<std::int64_t> w;
      for (const auto& c : x) w.push_back(std::int64_t(c.v));
      cd.witnesses.push_back(w);
      if (!quartic_dual_membership(o.v, x, one))
        fail(cd, "tangent covector misses the quartic of the dual form");
      // the round trip is only defined when the dual point is itself smooth
      // on the dual quartic; at a small prime a few sampled points land on
      // its singular locus and are skipped
      auto tan = tangent_hyperplane_quartic(o.v, x, one);
      if (!tan || !tangent_hyperplane_quartic(vd, tan->ell, one)) {
        ++skipped;
        continue;
      }
      ++round_trips;
      if (!quartic_biduality(o.v, x, one))
        fail(cb, "biduality round trip did not return the original point");
    }
    cb.notes.push_back(std::to_string(round_trips) + " round trips completed, " +
                       std::to_string(skipped) + " skipped at dual singular points");
    if (round_trips == 0)
      inconclusive(cb, "no point had a smooth dual point at this prime");
  }
  out.push_back(std::move(cd));
  out.push_back(std::move(cb));

  Certificate cc = make_cert(o, "quartic.cube-lines");
  Rng rng(Rng::derive(o.seed, 0xC3));
  std::uint64_t lines_checked = 0;
  for (std::uint64_t t = 0; t < o.trials + 8 && lines_checked < o.trials; ++t) {
    std::vector<Fp> x = random_vector8(rng, o.prime);
    std::vector<Fp> d = random_vector8(rng, o.prime);
    UniPoly<Fp> mu = mu_on_line(o.v, x, d, one);
    if (is_zero(mu)) continue;
    ++lines_checked;
    auto g = cube_root_poly(mu);
    if (!g || !(*g * *g * *g == mu))
      fail(cc, "restriction to a random line is not a perfect cube");
    else if (g->degree() * 3 != mu.degree())
      fail(cc, "cube root degree mismatch");
  }
  if (lines_checked < o.trials)
    inconclusive(cc, "only " + std::to_string(lines_checked) + " nonzero lines probed");
  else
    cc.notes.push_back("checked " + std::to_string(lines_checked) + " random lines");
  out.push_back(std::move(cc));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: ruling
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_ruling(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;
  Fp one(1, o.prime);

  std::uint64_t budget = std::max<std::uint64_t>(o.budget, 500000);
  SampleReport rep = sample_kummer(o.v, o.seed, 3, budget);

  Certificate ck = make_cert(o, "ruling.kummer-points");
  Certificate cf = make_cert(o, "ruling.fiber-two");
  Certificate cp = make_cert(o, "ruling.plane-in-quartic");
  if (rep.hits == 0) {
    std::string why = "no singular quartic points found within budget (trials=" +
                      std::to_string(rep.trials) + ")";
    for (Certificate* c : {&ck, &cf, &cp}) inconclusive(*c, why);
    out.push_back(std::move(ck));
    out.push_back(std::move(cf));
    out.push_back(std::move(cp));
    return out;
  }

  ck.witnesses = witness_json(rep.witnesses);
  Rng vote_rng(Rng::derive(o.seed, 0xAB));
  for (const auto& w : rep.witnesses) {
    std::vector<Fp> x = vector_from_witness(w, o.prime);
    if (kummer_test(o.v, x, 8, vote_rng, one, o.prime) != StratumP7::KUMMER)
      fail(ck, "re-vote did not confirm order at least six on all lines");
  }
  ck.notes.push_back("hits=" + std::to_string(rep.hits) +
                     " trials=" + std::to_string(rep.trials));
  out.push_back(std::move(ck));

  // exhaustive fiber scan over the first sampled point (the scan is the
  // expensive half; one point suffices for the certificate)
  std::vector<Fp> x0 = vector_from_witness(rep.witnesses.front(), o.prime);
  Subspace<Fp> U1 = Subspace<Fp>::from_vectors(8, {x0});
  try {
    std::vector<Subspace<Fp>> fiber = ac_fiber_over_kummer(o.v, U1);
    cf.notes.push_back("fiber size " + std::to_string(fiber.size()));
    if (fiber.size() != 2) fail(cf, "fiber is not a double cover at this point");
    for (const auto& U7 : fiber) {
      cf.witnesses.push_back(witness_rows(U7));
      ACResult<Fp> res = ac_member(o.v, U1, U7, one);
      if (res.status != ACStatus::Member) {
        fail(cp, "scanned hyperplane fails the membership certificate");
        continue;
      }
      cp.witnesses.push_back(witness_rows(res.U4));
      for (const auto& y : projective_points(res.U4, o.prime))
        if (!quartic_member(o.v, y, one)) {
          fail(cp, "a point of the certified three-space misses the quartic");
          break;
        }
    }
    if (cp.verdict == "pass")
      cp.notes.push_back("checked all projective points of each four-space at p=" +
                         std::to_string(o.prime));
  } catch (const std::exception& e) {
    inconclusive(cf, std::string("fiber scan unavailable: ") + e.what());
    inconclusive(cp, std::string("fiber scan unavailable: ") + e.what());
  }
  out.push_back(std::move(cf));
  out.push_back(std::move(cp));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: cohomology  (exact, form-independent)
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_cohomology(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;

  Certificate ci = make_cert(o, "cohomology.ideal-quadrics");
  {
    auto factors = ideal_D_resolution_cohomology();
    Big chi = 0;
    for (const auto& f : factors) {
      json w;
      w["factor"] = f.name;
      w["step"] = f.step;
      if (f.coh.zero) {
        w["cohomology"] = "acyclic";
      } else {
        w["degree"] = f.coh.degree;
        w["dim"] = f.coh.dim.convert_to<std::int64_t>();
        chi += ((f.step + f.coh.degree) % 2 == 0) ? f.coh.dim : -f.coh.dim;
      }
      ci.witnesses.push_back(w);
      if (f.name == "wedge4_Q") {
        if (f.coh.zero || f.coh.degree != 0 || f.coh.dim != 70)
          fail(ci, "leading factor does not contribute 70 sections");
      } else if (f.name == "S2_Qdual(-1)") {
        if (f.coh.zero || f.coh.degree != 2 || f.coh.dim != 1)
          fail(ci, "distinguished factor does not contribute one degree-two class");
      } else if (!f.coh.zero) {
        fail(ci, "factor " + f.name + " is unexpectedly non-acyclic");
      }
    }
    if (chi != 71) fail(ci, "hypercohomology count differs from 71");
  }
  out.push_back(std::move(ci));

  Certificate cn = make_cert(o, "cohomology.normal-euler");
  {
    auto table = normal_koszul_table();
    static const std::map<std::pair<int, int>, Big> expect = {
        {{0, 0}, 70}, {{1, 0}, 1},  {{3, 2}, 1},  {{3, 3}, 2},   {{4, 4}, 70},
        {{4, 5}, 70}, {{5, 4}, 66}, {{5, 5}, 67}, {{5, 6}, 1},   {{7, 6}, 1},
        {{7, 7}, 1},  {{9, 8}, 1},  {{9, 9}, 1},  {{13, 12}, 1}, {{13, 13}, 1},
    };
    for (const auto& [kq, d] : table) {
      json w;
      w["k"] = kq.first;
      w["q"] = kq.second;
      w["dim"] = d.convert_to<std::int64_t>();
      cn.witnesses.push_back(w);
      auto it = expect.find(kq);
      if (it == expect.end() || it->second != d)
        fail(cn, "unexpected table entry at (" + std::to_string(kq.first) + "," +
                     std::to_string(kq.second) + ")");
      if (kq.second - kq.first > 1) fail(cn, "collapse bound q <= k+1 violated");
    }
    for (const auto& [kq, d] : expect)
      if (!table.count(kq))
        fail(cn, "missing table entry at (" + std::to_string(kq.first) + "," +
                     std::to_string(kq.second) + ")");
    if (normal_euler_char(table) != 70) fail(cn, "Euler characteristic differs from 70");
  }
  out.push_back(std::move(cn));

  Certificate cm = make_cert(o, "cohomology.module-table");
  Certificate ct = make_cert(o, "cohomology.twist-acyclic");
  {
    const auto& fac = m_resolution_factors();
    const auto& steps = m_resolution_steps();
    std::vector<Big> col(6, 0);
    for (std::size_t i = 0; i < fac.size(); ++i)
      col[std::size_t(steps[i])] += schur_dim(fac[i].first, 6);
    static const std::vector<Big> expect_col = {105, 399, 595, 426, 140, 15};
    for (std::size_t s = 0; s < 6; ++s) {
      json w;
      w["step"] = s;
      w["dim"] = col[s].convert_to<std::int64_t>();
      cm.witnesses.push_back(w);
      if (col[s] != expect_col[s])
        fail(cm, "column sum at step " + std::to_string(s) + " differs");
    }
    for (const auto& [lam, tw] : fac)
      if (!bbw_G28({}, lam, tw + 2).zero) {
        std::string name;
        for (int x : lam) name += std::to_string(x);
        fail(ct, "twisted factor " + name + " is not acyclic");
      }
    if (ct.verdict == "pass")
      ct.notes.push_back("all 12 factors acyclic after the degree-two twist");
  }
  out.push_back(std::move(cm));
  out.push_back(std::move(ct));
  return out;
}

// ---------------------------------------------------------------------------
// Suite: enumerative  (exact, form-independent)
// ---------------------------------------------------------------------------

inline std::vector<Certificate> verify_enumerative(const VerifyOptions& o) {
  using namespace detail_verify;
  std::vector<Certificate> out;

  auto record = [&](const std::string& id, const Big& got, const Big& want,
                    std::vector<std::string> notes) {
    Certificate c = make_cert(o, id);
    json w;
    w["value"] = got.convert_to<std::int64_t>();
    c.witnesses.push_back(w);
    if (got != want)
      fail(c, "computed value differs from the expected " + want.str());
    for (auto& n : notes) c.notes.push_back(std::move(n));
    out.push_back(std::move(c));
  };

  record("enumerative.ruling-degree", ruling_family_degree(o.seed), 32,
         {"equals 8 four-spaces times hypersurface degree 4",
          "two independent torus specializations agreed"});

  Big s12 = integrate(
      FlagType{8, {2}},
      [](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        Rat s1 = -sum_of(taut_weights(fp, 0, t));
        Rat pow(1);
        for (int i = 0; i < 12; ++i) pow *= s1;
        return pow;
      },
      o.seed + 1);
  record("enumerative.pluecker-132", s12, 132, {});

  record("enumerative.moduli-degree", moduli_locus_degree(o.seed + 2), 224, {});
  record("enumerative.k3-degree", k3_slice_degree(o.seed + 3), 24,
         {"equals 2g - 2 for genus g = 13"});

  Big h = hecke_family_integral(o.seed + 4);
  Certificate ch = make_cert(o, "enumerative.hecke-nonzero");
  json w;
  w["value"] = h.convert_to<std::int64_t>();
  ch.witnesses.push_back(w);
  if (h == 0) fail(ch, "the sixth power of the marked hyperplane class vanishes");
  ch.notes.push_back(
      "computed on the (1,2,6) flag model carrying the rank-fourteen bundle, "
      "with one factor of the line-bundle class absorbing the hypersurface "
      "sweep; a (2,4) flag model would phrase the same family differently");
  out.push_back(std::move(ch));
  return out;
}

// ---------------------------------------------------------------------------
// verify all: fixed suite order
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "cartan",  "moduli",     "quadric-duality", "quartic-duality",
      "ruling",  "cohomology", "enumerative"};
  return names;
}

inline std::vector<Certificate> run_suite(const std::string& name,
                                          const VerifyOptions& o) {
  if (name == "cartan") return verify_cartan(o);
  if (name == "moduli") return verify_moduli(o);
  if (name == "quadric-duality") return verify_quadric_duality(o);
  if (name == "quartic-duality") return verify_quartic_duality(o);
  if (name == "ruling") return verify_ruling(o);
  if (name == "cohomology") return verify_cohomology(o);
  if (name == "enumerative") return verify_enumerative(o);
  throw std::invalid_argument("unknown suite: " + name);
}

inline std::vector<Certificate> verify_all(const VerifyOptions& o) {
  std::vector<Certificate> out;
  for (const auto& name : suite_names()) {
    auto certs = run_suite(name, o);
    for (auto& c : certs) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace coble
