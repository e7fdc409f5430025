// coble: command-line front end for the four-form verification toolkit.
//
// Subcommands:
//   verify <suite>     run a certificate suite (or `all`) and write JSON
//   sample             rejection samplers / exhaustive fiber scan
//   equation quadric   emit the interpolated 28x28 quadric matrix
//   bbw                sheaf cohomology of an equivariant bundle on a flag
//   integrate          torus-localization intersection numbers
//
// Exit codes: 0 pass, 1 fail, 2 inconclusive / zero hits, 3 usage error.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coble/io.hpp"
#include "coble/verify.hpp"

namespace fs = std::filesystem;
using namespace coble;

namespace {

struct GlobalOpts {
  std::string form_file;
  std::string cartan;
  std::uint64_t prime = 11;
  std::uint64_t seed = 7;
  std::uint64_t trials = 20;
  std::uint64_t budget = 10000000;
  bool as_json = false;
  bool as_text = false;
};

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

VerifyOptions resolve_form(const GlobalOpts& g) {
  VerifyOptions o;
  o.prime = g.prime;
  o.seed = g.seed;
  o.trials = g.trials;
  o.budget = g.budget;
  if (!g.form_file.empty()) {
    std::ifstream in(g.form_file);
    if (!in) throw std::invalid_argument("cannot open form file: " + g.form_file);
    FormSpec spec = read_form(in);
    o.v = form_fp(spec, spec.modular ? 0 : g.prime);
    std::uint64_t p = 0;
    for (const auto& c : o.v.c)
      if (c.p) p = c.p;
    o.prime = p ? p : g.prime;
    o.form_source = "file:" + g.form_file;
  } else if (!g.cartan.empty()) {
    auto cs = parse_int_list(g.cartan);
    if (cs.size() != 7) throw std::invalid_argument("--cartan needs 7 coordinates");
    std::vector<Fp> coords;
    for (std::int64_t c : cs) {
      std::int64_t r = c % std::int64_t(g.prime);
      if (r < 0) r += std::int64_t(g.prime);
      coords.push_back(Fp(std::uint64_t(r), g.prime));
    }
    o.v = cartan_sample(coords, Fp(1, g.prime));
    o.form_source = "cartan:" + g.cartan;
  } else {
    o.v = random_form(g.seed, g.prime, RandomFormMode::FullRandom);
    o.form_source = "generated:seed=" + std::to_string(g.seed);
  }
  o.form_hash_hex = form_hash(o.v);
  return o;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int run_verify(const GlobalOpts& g, const std::string& suite, const std::string& outdir) {
  VerifyOptions o = resolve_form(g);
  std::vector<std::string> suites;
  if (suite == "all")
    suites = suite_names();
  else
    suites.push_back(suite);

  bool any_fail = false, any_inc = false;
  json full = json::object();
  for (const auto& name : suites) {
    auto certs = run_suite(name, o);
    json bundle = bundle_json(certs);
    full[name] = bundle;
    if (!outdir.empty()) {
      fs::create_directories(outdir);
      std::ofstream os(fs::path(outdir) / (name + ".json"), std::ios::binary);
      os << dump(bundle);
    }
    for (const auto& c : certs) {
      if (c.verdict == "fail") any_fail = true;
      if (c.verdict == "inconclusive") any_inc = true;
      if (!g.as_json)
        std::cout << "[" << c.verdict << "] " << c.claim_id << "\n";
    }
  }
  if (g.as_json) std::cout << dump(full);
  return any_fail ? 1 : (any_inc ? 2 : 0);
}

json report_json(const SampleReport& rep) {
  json j;
  j["locus"] = rep.locus;
  j["prime"] = rep.prime;
  j["seed"] = rep.seed;
  j["trials"] = rep.trials;
  j["hits"] = rep.hits;
  j["witnesses"] = rep.witnesses;
  j["degenerate_hits"] = rep.degenerate_hits;
  j["runtime_ms"] = rep.runtime_ms;
  return j;
}

int run_sample(const GlobalOpts& g, const std::string& locus, std::uint64_t target,
               const std::string& witness, const std::string& outfile) {
  VerifyOptions o = resolve_form(g);
  json j;
  std::uint64_t hits = 0;
  if (locus == "moduli" || locus == "quartic" || locus == "kummer" ||
      locus == "quadric") {
    SampleReport rep;
    if (locus == "moduli") rep = sample_moduli(o.v, o.seed, target, o.budget);
    if (locus == "quartic") rep = sample_quartic(o.v, o.seed, target, o.budget);
    if (locus == "kummer") rep = sample_kummer(o.v, o.seed, target, o.budget);
    if (locus == "quadric") rep = sample_quadric(o.v, o.seed, target, o.budget);
    j = report_json(rep);
    hits = rep.hits;
  } else if (locus == "ac-fiber") {
    if (witness.empty())
      throw std::invalid_argument("--locus ac-fiber requires --witness x1,...,x8");
    auto xs = parse_int_list(witness);
    if (xs.size() != 8) throw std::invalid_argument("--witness needs 8 coordinates");
    std::vector<Fp> x(8);
    for (int i = 0; i < 8; ++i) {
      std::int64_t r = xs[std::size_t(i)] % std::int64_t(o.prime);
      if (r < 0) r += std::int64_t(o.prime);
      x[std::size_t(i)] = Fp(std::uint64_t(r), o.prime);
    }
    Subspace<Fp> U1 = Subspace<Fp>::from_vectors(8, {x});
    if (U1.dim() != 1) throw std::invalid_argument("--witness must be nonzero");
    auto fiber = ac_fiber_over_kummer(o.v, U1);
    j["locus"] = "ac-fiber";
    j["prime"] = o.prime;
    j["point"] = xs;
    json hy = json::array();
    for (const auto& U7 : fiber) hy.push_back(witness_rows(U7));
    j["hyperplanes"] = hy;
    hits = fiber.size();
  } else {
    throw std::invalid_argument("unknown locus: " + locus);
  }
  j["form_hash"] = o.form_hash_hex;
  j["form_source"] = o.form_source;
  std::string text = dump(j);
  if (!outfile.empty()) {
    std::ofstream os(outfile, std::ios::binary);
    os << text;
  } else {
    std::cout << text;
  }
  return hits == 0 ? 2 : 0;
}

int run_equation(const GlobalOpts& g, const std::string& outfile) {
  VerifyOptions o = resolve_form(g);
  Fp one(1, o.prime);
  Rng rng(Rng::derive(o.seed, 0xE9));
  auto gen = [&] { return Fp(rng.below(o.prime), o.prime); };
  QuadricOnG<Fp> q = quadric_equation(o.v, gen, one);
  const auto& t2 = index_table(8, 2);
  json j;
  j["prime"] = o.prime;
  j["form_hash"] = o.form_hash_hex;
  j["form_source"] = o.form_source;
  j["component"] = "S22";
  json labels = json::array();
  for (Mask m : t2.masks) labels.push_back(mask_indices1(m));
  j["labels"] = labels;
  json rows = json::array();
  for (int r = 0; r < 28; ++r) {
    json row = json::array();
    for (int c = 0; c < 28; ++c) row.push_back(q.m.at(r, c).v);
    rows.push_back(row);
  }
  j["matrix"] = rows;
  std::string text = dump(j);
  if (!outfile.empty()) {
    std::ofstream os(outfile, std::ios::binary);
    os << text;
  } else {
    std::cout << text;
  }
  return 0;
}

FlagType parse_space(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--space format is n:d1,d2,... e.g. 8:2,6");
  FlagType fl;
  fl.n = std::stoi(s.substr(0, colon));
  for (std::int64_t d : parse_int_list(s.substr(colon + 1))) fl.dims.push_back(int(d));
  (void)fl.block_sizes();  // validates
  return fl;
}

int run_bbw(const std::string& space, const std::string& weights) {
  FlagType fl = parse_space(space);
  std::vector<Part> blocks;
  std::stringstream ss(weights);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    Part p;
    if (!tok.empty())
      for (std::int64_t x : parse_int_list(tok)) p.push_back(int(x));
    blocks.push_back(std::move(p));
  }
  if (blocks.size() != fl.dims.size() + 1)
    throw std::invalid_argument("--weights needs one block per flag step plus the quotient");
  BBWResult r = bbw(fl, blocks);
  json j;
  j["zero"] = r.zero;
  if (!r.zero) {
    j["degree"] = r.degree;
    j["module"] = r.module;
    j["dim"] = r.dim.str();
  }
  std::cout << dump(j);
  return 0;
}

// ---------------------------------------------------------------------------
// integrate expression grammar:
//   expr   := factor ('*' factor)*
//   factor := ('c'|'s') K '(' bundle ')' ('^' N)?
//   bundle := 'G' | 'P' | 'U'd | 'dual(' bundle ')'
// ---------------------------------------------------------------------------

struct Factor {
  char kind;          // 'c' or 's'
  int k = 0;
  int power = 1;
  bool dual = false;
  char bundle = 'U';  // 'U', 'G', 'P'
  int udim = 0;
};

std::vector<Factor> parse_expr(const std::string& expr) {
  std::vector<Factor> out;
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::size_t i = 0;
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c)
      throw std::invalid_argument("--expr: expected '" + std::string(1, c) +
                                  "' at position " + std::to_string(i));
    ++i;
  };
  auto read_int = [&]() {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw std::invalid_argument("--expr: number expected at position " +
                                            std::to_string(i));
    int v = std::stoi(s.substr(i, j - i));
    i = j;
    return v;
  };
  while (i < s.size()) {
    Factor f;
    if (s[i] != 'c' && s[i] != 's')
      throw std::invalid_argument("--expr: factor must start with c or s");
    f.kind = s[i++];
    f.k = read_int();
    expect('(');
    if (s.compare(i, 5, "dual(") == 0) {
      f.dual = true;
      i += 5;
    }
    if (i >= s.size()) throw std::invalid_argument("--expr: truncated bundle");
    if (s[i] == 'G' || s[i] == 'P') {
      f.bundle = s[i++];
    } else if (s[i] == 'U') {
      ++i;
      f.bundle = 'U';
      f.udim = read_int();
    } else {
      throw std::invalid_argument("--expr: unknown bundle");
    }
    if (f.dual) expect(')');
    expect(')');
    if (i < s.size() && s[i] == '^') {
      ++i;
      f.power = read_int();
    }
    out.push_back(f);
    if (i < s.size()) expect('*');
  }
  if (out.empty()) throw std::invalid_argument("--expr: empty expression");
  return out;
}

int run_integrate(const GlobalOpts& g, const std::string& space, const std::string& expr) {
  FlagType fl = parse_space(space);
  std::vector<Factor> factors = parse_expr(expr);
  long total = 0;
  for (const auto& f : factors) total += long(f.k) * f.power;
  if (total != long(fl.dimension()))
    throw std::invalid_argument("--expr: total degree " + std::to_string(total) +
                                " differs from dim " + std::to_string(fl.dimension()));
  // locate levels for the special bundles
  auto level_of = [&](int d) {
    for (std::size_t l = 0; l < fl.dims.size(); ++l)
      if (fl.dims[l] == d) return l;
    throw std::invalid_argument("--expr: U" + std::to_string(d) +
                                " is not a step of the flag");
  };
  if (std::any_of(factors.begin(), factors.end(),
                  [](const Factor& f) { return f.bundle == 'G'; }) &&
      !(fl.n == 8 && fl.dims == std::vector<int>{1, 4, 7}))
    throw std::invalid_argument("--expr: G lives on the space 8:1,4,7");
  std::size_t lvl2 = 0, lvl6 = 0;
  if (std::any_of(factors.begin(), factors.end(),
                  [](const Factor& f) { return f.bundle == 'P'; })) {
    lvl2 = level_of(2);
    lvl6 = level_of(6);
  }
  Big result = integrate(
      fl,
      [&](const FixedPoint& fp, const std::vector<Rat>& t) -> Rat {
        Rat acc(1);
        for (const auto& f : factors) {
          std::vector<Rat> roots;
          if (f.bundle == 'G')
            roots = bundle_G_weights(fp, t);
          else if (f.bundle == 'P')
            roots = bundle_P_weights(fp, lvl2, lvl6, t);
          else
            roots = taut_weights(fp, level_of(f.udim), t);
          if (f.dual) roots = negated(roots);
          Rat val = f.kind == 'c' ? chern(f.k, roots) : segre(f.k, roots);
          for (int e = 0; e < f.power; ++e) acc *= val;
        }
        return acc;
      },
      g.seed);
  json j;
  j["space"] = space;
  j["expr"] = expr;
  j["value"] = result.str();
  std::cout << dump(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for four-forms in eight variables"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--form", g.form_file, "four-form file (header `field: Q` or `field: Fp <p>`)");
  app.add_option("--cartan", g.cartan, "seven comma-separated coordinates in the standard basis");
  app.add_option("--prime", g.prime, "working prime")->envname("COBLE_PRIME");
  app.add_option("--seed", g.seed, "random seed")->envname("COBLE_SEED");
  app.add_option("--trials", g.trials, "points per duality check / sampler target");
  app.add_option("--budget", g.budget, "sampler trial budget");
  app.add_flag("--json", g.as_json, "machine-readable stdout");
  app.add_flag("--text", g.as_text, "human-readable stdout (default)");

  auto* sub_verify = app.add_subcommand("verify", "run a certificate suite");
  std::string suite;
  std::string verify_out;
  sub_verify->add_option("suite", suite, "cartan | moduli | quadric-duality | quartic-duality | ruling | cohomology | enumerative | all")
      ->required()
      ->check(CLI::IsMember({"cartan", "moduli", "quadric-duality", "quartic-duality",
                             "ruling", "cohomology", "enumerative", "all"}));
  sub_verify->add_option("--out", verify_out, "directory for per-suite certificate files");

  auto* sub_sample = app.add_subcommand("sample", "run a sampler");
  std::string locus, witness, sample_out;
  std::uint64_t target = 0;
  sub_sample->add_option("--locus", locus, "moduli | quartic | kummer | quadric | ac-fiber")
      ->required();
  sub_sample->add_option("--target", target, "stop after this many hits (default: --trials)");
  sub_sample->add_option("--witness", witness, "point coordinates for ac-fiber");
  sub_sample->add_option("--out", sample_out, "output file (default: stdout)");

  auto* sub_eq = app.add_subcommand("equation", "emit an equation");
  std::string eq_what, eq_out;
  sub_eq->add_option("what", eq_what, "quadric")->required()->check(CLI::IsMember({"quadric"}));
  sub_eq->add_option("--out", eq_out, "output file (default: stdout)");

  auto* sub_bbw = app.add_subcommand("bbw", "sheaf cohomology of an equivariant bundle");
  std::string bbw_space, bbw_weights;
  sub_bbw->add_option("--space", bbw_space, "flag variety, e.g. 8:2,6")->required();
  sub_bbw->add_option("--weights", bbw_weights,
                      "semicolon-separated weight blocks, e.g. 0,0;1,1,1,1,0,0")
      ->required();

  auto* sub_int = app.add_subcommand("integrate", "torus-localization integral");
  std::string int_space, int_expr;
  sub_int->add_option("--space", int_space, "flag variety, e.g. 8:1,4,7")->required();
  sub_int->add_option("--expr", int_expr, "e.g. c19(G)*s3(dual(U4))")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (sub_verify->parsed()) return run_verify(g, suite, verify_out);
    if (sub_sample->parsed())
      return run_sample(g, locus, target ? target : g.trials, witness, sample_out);
    if (sub_eq->parsed()) return run_equation(g, eq_out);
    if (sub_bbw->parsed()) return run_bbw(bbw_space, bbw_weights);
    if (sub_int->parsed()) return run_integrate(g, int_space, int_expr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
