#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exterior.hpp"
#include "field.hpp"
#include "multiindex.hpp"

namespace coble {

using json = nlohmann::json;
using Big = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Four-form files
//
// Format: a header line `field: Q` or `field: Fp <p>`, followed by coefficient
// lines `i j k l : coeff` with 1 <= i < j < k < l <= 8. Blank lines and lines
// starting with `#` are ignored; anything else is rejected.
// ---------------------------------------------------------------------------

struct FormSpec {
  bool modular = false;
  std::uint64_t p = 0;                         // only when modular
  std::vector<std::pair<Mask, Rat>> terms;     // sorted by mask, nonzero
};

inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Big(s));
    Big num(s.substr(0, slash));
    Big den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("form file: bad coefficient '" + s + "'");
  }
}

inline FormSpec read_form(std::istream& in) {
  FormSpec spec;
  std::string line;
  bool have_header = false;
  std::vector<std::pair<Mask, Rat>> terms;
  while (std::getline(in, line)) {
    // strip comments and surrounding whitespace
    auto hashpos = line.find('#');
    if (hashpos != std::string::npos) line.resize(hashpos);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (!have_header) {
      if (tok != "field:") throw std::invalid_argument("form file: missing field header");
      std::string f;
      if (!(ls >> f)) throw std::invalid_argument("form file: missing field name");
      if (f == "Q") {
        spec.modular = false;
      } else if (f == "Fp") {
        spec.modular = true;
        if (!(ls >> spec.p) || spec.p < 2)
          throw std::invalid_argument("form file: bad prime in header");
      } else {
        throw std::invalid_argument("form file: unknown field '" + f + "'");
      }
      if (ls >> f) throw std::invalid_argument("form file: trailing tokens in header");
      have_header = true;
      continue;
    }
    std::array<int, 4> idx{};
    idx[0] = std::stoi(tok);
    std::string colon, coeff;
    if (!(ls >> idx[1] >> idx[2] >> idx[3] >> colon >> coeff) || colon != ":")
      throw std::invalid_argument("form file: malformed line '" + line + "'");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("form file: trailing tokens on line");
    Mask m = 0;
    for (int t = 0; t < 4; ++t) {
      if (idx[std::size_t(t)] < 1 || idx[std::size_t(t)] > 8 ||
          (t > 0 && idx[std::size_t(t)] <= idx[std::size_t(t - 1)]))
        throw std::invalid_argument("form file: indices must satisfy 1 <= i<j<k<l <= 8");
      m |= Mask(1) << (idx[std::size_t(t)] - 1);
    }
    for (const auto& [pm, pc] : terms)
      if (pm == m) throw std::invalid_argument("form file: duplicate index set");
    Rat c = parse_rational(coeff);
    if (c != 0) terms.emplace_back(m, std::move(c));
  }
  if (!have_header) throw std::invalid_argument("form file: empty input");
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  spec.terms = std::move(terms);
  return spec;
}

inline std::vector<int> mask_indices1(Mask m) {
  std::vector<int> out;
  for (int i : mask_bits(m)) out.push_back(i + 1);
  return out;
}

inline void write_form(std::ostream& os, const FormSpec& spec) {
  if (spec.modular)
    os << "field: Fp " << spec.p << "\n";
  else
    os << "field: Q\n";
  for (const auto& [m, c] : spec.terms) {
    auto idx = mask_indices1(m);
    os << idx[0] << " " << idx[1] << " " << idx[2] << " " << idx[3] << " : " << c
       << "\n";
  }
}

inline FormSpec form_spec_of(const AltTensor<Fp>& v) {
  FormSpec spec;
  spec.modular = true;
  for (const auto& c : v.c)
    if (c.p) spec.p = c.p;
  const auto& t4 = index_table(8, 4);
  for (std::size_t i = 0; i < t4.size(); ++i)
    if (!is_zero(v.c[i]))
      spec.terms.emplace_back(t4.masks[i], Rat(std::int64_t(v.c[i].v)));
  std::sort(spec.terms.begin(), spec.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return spec;
}

/// Reduce the spec to a form over F_p. If the spec is already modular its own
/// prime must match (or p = 0 to accept it); rational coefficients are reduced
/// and must have denominators prime to p.
inline AltTensor<Fp> form_fp(const FormSpec& spec, std::uint64_t p) {
  if (spec.modular) {
    if (p != 0 && p != spec.p)
      throw std::invalid_argument("form_fp: file prime differs from requested prime");
    p = spec.p;
  }
  if (p < 2) throw std::invalid_argument("form_fp: no prime available");
  AltTensor<Fp> v(8, 4, Var::Vec);
  for (auto& c : v.c) c = Fp(0, p);
  for (const auto& [m, q] : spec.terms) {
    Big num = numerator(q) % Big(p);
    Big den = denominator(q) % Big(p);
    if (den == 0) throw std::invalid_argument("form_fp: denominator divisible by p");
    if (num < 0) num += Big(p);
    Fp val = Fp(num.convert_to<std::uint64_t>(), p) *
             inv(Fp(den.convert_to<std::uint64_t>(), p));
    v.coeff(m) = val;
  }
  return v;
}

inline AltTensor<Rat> form_rat(const FormSpec& spec) {
  if (spec.modular) throw std::invalid_argument("form_rat: modular form file");
  AltTensor<Rat> v(8, 4, Var::Vec);
  for (const auto& [m, q] : spec.terms) v.coeff(m) = q;
  return v;
}

// ---------------------------------------------------------------------------
// Canonical serialization and hashing
// ---------------------------------------------------------------------------

inline std::string canonical_text(const FormSpec& spec) {
  std::ostringstream os;
  write_form(os, spec);
  return os.str();
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string form_hash(const FormSpec& spec) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << fnv1a64(canonical_text(spec));
  return os.str();
}

inline std::string form_hash(const AltTensor<Fp>& v) { return form_hash(form_spec_of(v)); }

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct Certificate {
  std::string claim_id;
  std::string claim;       // human-readable statement of what was checked
  json params;             // prime / seed / trials / budget / form hash+source
  std::string verdict;     // "pass" | "fail" | "inconclusive"
  json witnesses = json::array();
  std::vector<std::string> notes;

  json to_json() const {
    json j;
    j["claim_id"] = claim_id;
    j["claim"] = claim;
    j["params"] = params;
    j["verdict"] = verdict;
    j["witnesses"] = witnesses;
    j["notes"] = notes;
    return j;
  }
};

inline json bundle_json(const std::vector<Certificate>& certs) {
  json arr = json::array();
  for (const auto& c : certs) arr.push_back(c.to_json());
  return arr;
}

// ---------------------------------------------------------------------------
// Claims registry: stable claim ids with their statements and the library
// operation that decides them. Every certificate id must appear here.
// ---------------------------------------------------------------------------

struct ClaimInfo {
  std::string id;
  std::string statement;
  std::string op;
};

inline const std::vector<ClaimInfo>& claims_registry() {
  static const std::vector<ClaimInfo> reg = {
      {"cartan.bracket-commutes",
       "The seven standard four-forms built from the Fano-plane pairings commute "
       "pairwise under the exceptional bracket, so they span an abelian (Cartan) "
       "subspace.",
       "theta::e7_bracket"},
      {"cartan.dualize-fixed",
       "Each of the seven standard generators is fixed by the complement duality "
       "on four-forms.",
       "theta::dualize"},
      {"cartan.fano-structure",
       "The seven generator supports realize the Fano plane: each triple of "
       "lines through a point shares four disjoint index pairs partitioning "
       "{1..8}, and every index pair lies in exactly three supports.",
       "theta::fano_triples / theta::shared_pairs"},
      {"moduli.rank-two-points",
       "Random two-planes landing on the degeneracy locus of the four-form have "
       "induced skew form of rank exactly two, never zero.",
       "strata::sample_moduli / strata::rank_stratum_G28"},
      {"moduli.lines-in-quartic",
       "For every sampled rank-two plane, the whole projective line it spans "
       "lies inside the degree-four hypersurface cut out by the form.",
       "strata::quartic_member"},
      {"moduli.quadric-singular",
       "All twelve affine-chart partial derivatives of the Pfaffian quadric "
       "vanish at every sampled rank-two plane: the quadric is singular along "
       "the rank-two locus.",
       "strata::singular_along_D"},
      {"quadric.smooth-gradient",
       "At sampled rank-four planes the Pfaffian quadric has nonzero gradient, "
       "and the gradient kernel coincides with the endomorphisms carrying the "
       "plane into its canonical six-space witness.",
       "strata::chart_gradient / duality::tangent_check_quadric"},
      {"quadric.self-dual",
       "For each sampled smooth point of the Pfaffian quadric, the annihilator "
       "of its six-space witness is a degenerate plane for the dual form: the "
       "quadric maps into the quadric of the dual form.",
       "duality::grassmann_dual_point"},
      {"quadric.biduality",
       "Applying the six-space-annihilator construction twice returns the "
       "original two-plane exactly.",
       "duality::grassmann_biduality"},
      {"quartic.self-dual",
       "At each sampled smooth point of the quartic, the tangent hyperplane is "
       "recovered as the cube root of the third-order jet, and its annihilator "
       "satisfies the quartic equation of the dual form.",
       "duality::tangent_hyperplane_quartic / duality::quartic_dual_membership"},
      {"quartic.biduality",
       "The tangent-hyperplane construction applied on the dual side returns a "
       "hyperplane whose annihilator is the original point.",
       "duality::quartic_biduality"},
      {"quartic.cube-lines",
       "The degree-twelve restriction of the defining invariant to random lines "
       "is the perfect cube of a degree-four polynomial.",
       "strata::mu_on_line / poly::cube_root_poly"},
      {"ruling.kummer-points",
       "Sampled singular points of the quartic are confirmed by unanimous "
       "order-at-least-six votes along random probing lines.",
       "strata::sample_kummer / strata::kummer_test"},
      {"ruling.fiber-two",
       "The exhaustive scan of hyperplanes through a sampled singular point "
       "finds exactly two members of the ruling-threefold incidence condition: "
       "the family is a double cover.",
       "strata::ac_fiber_over_kummer"},
      {"ruling.plane-in-quartic",
       "Each hyperplane found by the fiber scan certifies the flag condition "
       "and produces a four-space whose projective three-space lies entirely "
       "inside the quartic.",
       "strata::ac_member / strata::quartic_member"},
      {"cohomology.ideal-quadrics",
       "In the resolution of the twisted ideal sheaf of the rank-two locus, the "
       "leading factor contributes a seventy-dimensional space of sections, one "
       "factor contributes a single class in degree two, all other factors are "
       "acyclic, and the Euler characteristic gives seventy-one quadrics "
       "through the locus.",
       "rep::ideal_D_resolution_cohomology"},
      {"cohomology.normal-euler",
       "The Koszul-type double complex computing the normal sheaf cohomology of "
       "the rank-two locus matches the expected table entry by entry and has "
       "Euler characteristic seventy.",
       "rep::normal_koszul_table"},
      {"cohomology.module-table",
       "The equivariant resolution of the quadric-hypersurface module has "
       "column dimension sums 105, 399, 595, 426, 140, 15 over the "
       "six-dimensional auxiliary space.",
       "rep::m_resolution_factors"},
      {"cohomology.twist-acyclic",
       "Every factor of that resolution becomes acyclic after twisting by the "
       "square of the hyperplane bundle.",
       "rep::bbw_G28"},
      {"enumerative.ruling-degree",
       "The ruling family has degree thirty-two: the top Chern class of the "
       "rank-nineteen bundle against the third Segre class of the dual "
       "four-space bundle on the (1,4,7) flag variety, equal to eight "
       "four-spaces times hypersurface degree four.",
       "schubert::ruling_family_degree"},
      {"enumerative.pluecker-132",
       "The Pluecker degree of the Grassmannian of planes in eight-space is "
       "one hundred thirty-two.",
       "schubert::integrate"},
      {"enumerative.moduli-degree",
       "The rank-two locus has Pluecker degree two hundred twenty-four as a "
       "six-fold in the Grassmannian.",
       "schubert::moduli_locus_degree"},
      {"enumerative.k3-degree",
       "Slicing the rank-two locus by a general sub-Grassmannian of planes in a "
       "six-space gives a surface of degree twenty-four, consistent with a K3 "
       "surface of genus thirteen.",
       "schubert::k3_slice_degree"},
      {"enumerative.hecke-nonzero",
       "On the pointed-line incidence model, the sixth power of the hyperplane "
       "class of the marked point survives against the top Chern class of the "
       "rank-fourteen bundle.",
       "schubert::hecke_family_integral"},
  };
  return reg;
}

inline const ClaimInfo* find_claim(const std::string& id) {
  for (const auto& c : claims_registry())
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace coble
