#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "coble/io.hpp"
#include "coble/verify.hpp"

using namespace coble;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(COBLE_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

VerifyOptions cheap_options() {
  VerifyOptions o;
  o.prime = 11;
  o.seed = 7;
  o.trials = 4;
  o.budget = 200000;
  o.v = random_form(7, 11, RandomFormMode::FullRandom);
  o.form_hash_hex = form_hash(o.v);
  o.form_source = "generated:seed=7";
  return o;
}

}  // namespace

TEST_CASE("four-form files round trip and reject malformed input") {
  AltTensor<Fp> v = random_form(3, 11, RandomFormMode::FullRandom);
  FormSpec spec = form_spec_of(v);
  std::ostringstream os;
  write_form(os, spec);
  std::istringstream is(os.str());
  FormSpec back = read_form(is);
  CHECK(back.modular);
  CHECK(back.p == 11);
  CHECK(form_fp(back, 0).c == v.c);
  CHECK(form_hash(back) == form_hash(spec));

  // rational header, fractions, comments and blank lines
  std::istringstream good(
      "# a comment\n"
      "field: Q\n"
      "\n"
      "1 2 3 4 : 3/4\n"
      "5 6 7 8 : -2\n");
  FormSpec q = read_form(good);
  CHECK(!q.modular);
  REQUIRE(q.terms.size() == 2);
  CHECK(q.terms[0].second == Rat(3, 4));
  AltTensor<Rat> vq = form_rat(q);
  CHECK(vq.coeff(0b11110000) == Rat(-2));
  // reduction mod p inverts the denominator
  AltTensor<Fp> vp = form_fp(q, 11);
  CHECK(vp.coeff(0b00001111) == Fp(3, 11) * inv(Fp(4, 11)));

  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS((void)read_form(in), std::invalid_argument);
  };
  reject("");                                       // no header
  reject("field: R\n");                             // unknown field
  reject("field: Fp\n");                            // missing prime
  reject("field: Q\n1 2 3 : 5\n");                  // not four indices
  reject("field: Q\n1 2 3 9 : 5\n");                // out of range
  reject("field: Q\n1 3 2 4 : 5\n");                // not increasing
  reject("field: Q\n1 2 3 4 : 5 extra\n");          // trailing tokens
  reject("field: Q\nhello world\n");                // junk line
  reject("field: Q\n1 2 3 4 : 1\n1 2 3 4 : 2\n");   // duplicate support
  reject("field: Q\n1 2 3 4 : x\n");                // bad coefficient
}

TEST_CASE("canonical hash separates forms and ignores nothing") {
  AltTensor<Fp> a = random_form(1, 11, RandomFormMode::FullRandom);
  AltTensor<Fp> b = random_form(2, 11, RandomFormMode::FullRandom);
  CHECK(form_hash(a) != form_hash(b));
  CHECK(form_hash(a) == form_hash(a));
  CHECK(form_hash(a).size() == 16);
}

TEST_CASE("claims registry covers every certificate and is well formed") {
  std::set<std::string> ids;
  for (const auto& c : claims_registry()) {
    CHECK(!c.id.empty());
    CHECK(!c.statement.empty());
    CHECK(!c.op.empty());
    CHECK(ids.insert(c.id).second);  // unique
  }
  VerifyOptions o = cheap_options();
  auto certs = verify_all(o);
  CHECK(certs.size() == 24);
  for (const auto& c : certs) {
    const ClaimInfo* info = find_claim(c.claim_id);
    REQUIRE(info != nullptr);
    CHECK(c.claim == info->statement);
    CHECK((c.verdict == "pass" || c.verdict == "fail" || c.verdict == "inconclusive"));
  }
}

TEST_CASE("certificate bundles are deterministic") {
  VerifyOptions o = cheap_options();
  std::string a = bundle_json(verify_cartan(o)).dump(2);
  std::string b = bundle_json(verify_cartan(o)).dump(2);
  CHECK(a == b);
  std::string c = bundle_json(verify_quartic_duality(o)).dump(2);
  std::string d = bundle_json(verify_quartic_duality(o)).dump(2);
  CHECK(c == d);
  // certificates carry no timing fields
  CHECK(a.find("runtime") == std::string::npos);
  CHECK(c.find("runtime") == std::string::npos);
}

TEST_CASE("cli: verify exit codes and byte-identical reruns") {
  fs::path tmp = fs::temp_directory_path() / "coble_cli_test";
  fs::remove_all(tmp);

  RunResult r1 = run_cli("verify cartan --out " + (tmp / "a").string());
  CHECK(r1.code == 0);
  CHECK(r1.out.find("[pass] cartan.bracket-commutes") != std::string::npos);

  RunResult r2 = run_cli("verify cartan --out " + (tmp / "b").string());
  CHECK(r2.code == 0);
  CHECK(slurp(tmp / "a" / "cartan.json") == slurp(tmp / "b" / "cartan.json"));
  CHECK(!slurp(tmp / "a" / "cartan.json").empty());

  // cohomology and enumerative suites are exact and fast
  CHECK(run_cli("verify cohomology").code == 0);
  CHECK(run_cli("verify enumerative").code == 0);

  fs::remove_all(tmp);
}

TEST_CASE("cli: usage errors exit 3") {
  CHECK(run_cli("frobnicate").code == 3);
  CHECK(run_cli("verify no-such-suite").code == 3);
  CHECK(run_cli("verify").code == 3);
  CHECK(run_cli("sample --locus nowhere").code == 3);
  CHECK(run_cli("sample --locus ac-fiber").code == 3);  // missing witness
  CHECK(run_cli("bbw --space 8:2").code == 3);          // missing weights
  CHECK(run_cli("bbw --space 8:2 --weights \"0,0;1,1;0\"").code == 3);  // extra block
  CHECK(run_cli("integrate --space 8:1 --expr \"c1(U1)^3\"").code == 3);  // degree
  CHECK(run_cli("integrate --space 8:2 --expr \"c19(G)\"").code == 3);  // wrong space
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("cli: samplers stream witnesses and signal zero hits") {
  // a tiny budget cannot hit the codimension-six moduli locus
  RunResult zero = run_cli("sample --locus moduli --budget 500 --target 1 --json");
  CHECK(zero.code == 2);
  json jz = json::parse(zero.out);
  CHECK(jz["hits"] == 0);

  RunResult q = run_cli("sample --locus quartic --target 5 --budget 100000 --json");
  CHECK(q.code == 0);
  json jq = json::parse(q.out);
  CHECK(jq["locus"] == "quartic");
  CHECK(jq["hits"].get<std::uint64_t>() >= 5);
  CHECK(jq["witnesses"].size() == jq["hits"].get<std::size_t>());
  // sampler reports carry timing; hashes tie them to the form
  CHECK(jq.contains("runtime_ms"));
  CHECK(jq["form_hash"].get<std::string>().size() == 16);
}

TEST_CASE("cli: form file, cartan shorthand, env prime") {
  fs::path tmp = fs::temp_directory_path() / "coble_cli_form";
  fs::create_directories(tmp);
  fs::path ff = tmp / "h1.4form";
  {
    std::ofstream os(ff);
    os << "field: Fp 11\n1 2 5 6 : 1\n3 4 7 8 : 1\n";
  }
  // h1-type form: e1 is a quartic member, so a tiny quartic sample succeeds
  RunResult r = run_cli("sample --locus quartic --target 2 --budget 5000 --form " +
                        ff.string() + " --json");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["prime"] == 11);

  RunResult c = run_cli("verify cartan --cartan 1,2,3,4,5,6,0 --json");
  CHECK(c.code == 0);
  json jc = json::parse(c.out);
  CHECK(jc["cartan"][0]["params"]["form_source"] == "cartan:1,2,3,4,5,6,0");

  // env var goes before the binary, so build this command manually
  std::string cmd = "COBLE_PRIME=13 " + std::string(COBLE_BIN) +
                    " sample --locus quartic --target 1 --budget 50000 --json 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(json::parse(out)["prime"] == 13);
  fs::remove_all(tmp);
}

TEST_CASE("cli: bbw and integrate answer the classical checks") {
  RunResult b = run_cli("bbw --space 8:2 --weights \"0,0;1,1,1,1,0,0\"");
  CHECK(b.code == 0);
  json jb = json::parse(b.out);
  CHECK(jb["zero"] == false);
  CHECK(jb["degree"] == 0);
  CHECK(jb["dim"] == "70");

  RunResult z = run_cli("bbw --space 8:2 --weights \"4,4;0,0,0,0,0,0\"");
  CHECK(z.code == 0);
  CHECK(json::parse(z.out)["zero"] == true);

  RunResult i = run_cli("integrate --space 8:1 --expr \"c1(dual(U1))^7\"");
  CHECK(i.code == 0);
  CHECK(json::parse(i.out)["value"] == "1");

  RunResult s = run_cli("integrate --space 8:2 --expr \"c1(dual(U2))^12\"");
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["value"] == "132");

  RunResult g = run_cli("integrate --space 8:1,4,7 --expr \"c19(G)*s3(dual(U4))\"");
  CHECK(g.code == 0);
  CHECK(json::parse(g.out)["value"] == "32");
}

TEST_CASE("cli: equation quadric emits a labeled 28x28 matrix") {
  fs::path tmp = fs::temp_directory_path() / "coble_cli_eq";
  fs::create_directories(tmp);
  fs::path out = tmp / "q.json";
  RunResult r = run_cli("equation quadric --seed 5 --out " + out.string());
  CHECK(r.code == 0);
  json j = json::parse(slurp(out));
  CHECK(j["component"] == "S22");
  CHECK(j["labels"].size() == 28);
  CHECK(j["labels"][0] == json::array({1, 2}));
  CHECK(j["matrix"].size() == 28);
  CHECK(j["matrix"][0].size() == 28);

  // the emitted matrix reproduces the Pfaffian quadric on a decomposable
  std::uint64_t p = 11;
  Fp one(1, p);
  AltTensor<Fp> v = random_form(5, p, RandomFormMode::FullRandom);
  QuadricOnG<Fp> q{Mat<Fp>(28, 28), QuadricTag::S22};
  for (int a = 0; a < 28; ++a)
    for (int b = 0; b < 28; ++b)
      q.m.at(a, b) = Fp(j["matrix"][std::size_t(a)][std::size_t(b)].get<std::uint64_t>(), p);
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    std::vector<Fp> x = random_vector8(rng, p), y = random_vector8(rng, p);
    AltTensor<Fp> omega = wedge(vec_tensor<Fp>(x, Var::Vec), vec_tensor<Fp>(y, Var::Vec));
    CHECK(q.value(omega) == quadric_value(v, omega, one));
  }
  fs::remove_all(tmp);
}
