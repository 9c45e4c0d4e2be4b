#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "kcomm/cli.hpp"
#include "kcomm/json_io.hpp"
#include "test_util.hpp"

using namespace kcomm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("kcomm_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = (path / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kPeriodicUt =
    R"({"kind":"tri-oracle","diag":{"prefix":[],"period":["1"]},"superdiag":{"prefix":["2"],"period":["1","0"]},)"
    R"("bands":[{"offset":2,"prefix":[],"period":["5"]}]})";

}  // namespace

TEST_CASE("factor identity with k = 2 gives two trivial commutators") {
  TempDir d;
  const auto in = d.file("id.json", R"({"kind":"dense","n":3,"rows":[["1","0","0"],["0","1","0"],["0","0","1"]]})");
  const auto r = run({"factor", "--k", "2", "--input", in, "--out", d.name("c.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("word length: 2") != std::string::npos);
  CHECK(r.out.find("claimed bound: 2") != std::string::npos);
  CHECK(certificate_header(parse_json(slurp(d.name("c.json")))).k == 2);
  CHECK(run({"verify", "--cert", d.name("c.json"), "--input", in}).code == 0);
}

TEST_CASE("factor periodic input with k = 3 and verify") {
  TempDir d;
  const auto in = d.file("ut.json", kPeriodicUt);
  const auto r = run({"factor", "--ring", "cyclo:3", "--k", "3", "--input", in, "--out", d.name("c.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("word length: 6") != std::string::npos);
  CHECK(r.out.find("verification window: 16") != std::string::npos);
  CHECK(run({"verify", "--cert", d.name("c.json"), "--input", in}).code == 0);
  CHECK(run({"verify", "--cert", d.name("c.json"), "--input", in, "--window", "25"}).code == 0);
}

TEST_CASE("certificate goes to stdout without --out") {
  TempDir d;
  const auto in = d.file("ut.json", R"({"kind":"dense","n":2,"rows":[["1","4"],["0","1"]]})");
  const auto r = run({"factor", "--input", in});
  REQUIRE(r.code == 0);
  CHECK(parse_json(r.out).at("k") == 2);
  CHECK(r.err.find("verified") != std::string::npos);
}

TEST_CASE("json report") {
  TempDir d;
  const auto in = d.file("ut.json", kPeriodicUt);
  const auto r = run({"factor", "--k", "4", "--ring", "cyclo:4", "--input", in, "--out", d.name("c.json"),
                      "--report", "json"});
  REQUIRE(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j.at("word_length") == 10);
  CHECK(j.at("bound") == 10);
  CHECK(j.at("passed") == true);
  const auto v = run({"verify", "--cert", d.name("c.json"), "--input", in, "--report", "json"});
  CHECK(parse_json(v.out).at("checks").size() == 3);
}

TEST_CASE("sl and vk modes") {
  TempDir d;
  const auto sl = d.file("sl.json", R"({"kind":"dense","n":2,"rows":[["2","1"],["1","1"]]})");
  const auto r = run({"factor", "--mode", "sl", "--ring", "cyclo:3", "--k", "3", "--input", sl, "--out", d.name("s.json")});
  CHECK(r.code == 0);
  CHECK(run({"verify", "--cert", d.name("s.json"), "--input", sl}).code == 0);

  const auto vk = d.file("vk.json", R"({"n":2,"m1":{"kind":"dense","n":2,"rows":[["0","1"],["-1","0"]]},)"
                                    R"("m2":{"prefix_cols":[],"period_cols":[["1","2"]]},)"
                                    R"("m3":{"kind":"tri-oracle","diag":{"prefix":[],"period":["1"]},"superdiag":{"prefix":[],"period":["1"]}}})");
  const auto v = run({"factor", "--mode", "vk", "--ring", "cyclo:3", "--k", "3", "--input", vk, "--window", "14",
                      "--out", d.name("v.json")});
  REQUIRE(v.code == 0);
  CHECK(v.out.find("word length: 6") != std::string::npos);
  CHECK(run({"verify", "--cert", d.name("v.json"), "--input", vk, "--window", "14"}).code == 0);
}

TEST_CASE("random factor-verify round trips") {
  TempDir d;
  std::mt19937_64 rng(77);
  const auto ctx = testing::cyclo_ring(3, 3);
  for (int t = 0; t < 8; ++t) {
    const Index n = 2 + t % 4;
    const auto a = testing::random_unitriangular(ctx, n, rng);
    const auto in = d.file("in.json", canonical_dump(dense_to_json(ctx, a)));
    REQUIRE(run({"factor", "--ring", "cyclo:3", "--k", "3", "--input", in, "--out", d.name("c.json")}).code == 0);
    CHECK(run({"verify", "--cert", d.name("c.json"), "--input", in}).code == 0);
  }
}

TEST_CASE("tampering is detected and named") {
  TempDir d;
  const auto in = d.file("ut.json", R"({"kind":"dense","n":3,"rows":[["1","2","3"],["0","1","5"],["0","0","1"]]})");
  REQUIRE(run({"factor", "--ring", "cyclo:3", "--k", "3", "--input", in, "--out", d.name("c.json")}).code == 0);
  const Json cert = parse_json(slurp(d.name("c.json")));

  SUBCASE("swapped generators keep orders but break the product") {
    Json t = cert;
    std::swap(t["generators"]["g1"], t["generators"]["g2"]);
    const auto r = run({"verify", "--cert", d.file("t.json", canonical_dump(t)), "--input", in});
    CHECK(r.code == 1);
    CHECK(r.out.find("order: pass") != std::string::npos);
    CHECK(r.out.find("product mismatch at (") != std::string::npos);
  }
  SUBCASE("wrong target") {
    const auto other = d.file("o.json", R"({"kind":"dense","n":3,"rows":[["1","3","3"],["0","1","5"],["0","0","1"]]})");
    const auto r = run({"verify", "--cert", d.name("c.json"), "--input", other});
    CHECK(r.code == 1);
    CHECK(r.out.find("product mismatch at (1,2)") != std::string::npos);
  }
  SUBCASE("wrong k in the header") {
    Json t = cert;
    t["k"] = 2;
    const auto r = run({"verify", "--cert", d.file("t.json", canonical_dump(t)), "--input", in});
    CHECK(r.code == 1);
    CHECK(r.out.find("order check failed") != std::string::npos);
  }
  SUBCASE("claimed length") {
    Json t = cert;
    t["claimed_length"] = 5;
    const auto r = run({"verify", "--cert", d.file("t.json", canonical_dump(t)), "--input", in});
    CHECK(r.code == 1);
    CHECK(r.out.find("length: FAIL") != std::string::npos);
  }
}

TEST_CASE("wrong k on an infinite certificate fails the order check") {
  TempDir d;
  const auto in = d.file("ut.json", kPeriodicUt);
  REQUIRE(run({"factor", "--ring", "cyclo:4", "--k", "2", "--input", in, "--out", d.name("c.json")}).code == 0);
  Json t = parse_json(slurp(d.name("c.json")));
  t["k"] = 3;
  const auto r = run({"verify", "--cert", d.file("t.json", canonical_dump(t)), "--input", in});
  CHECK(r.code == 1);
  CHECK(r.out.find("order check failed") != std::string::npos);
  CHECK(r.out.find("product: pass") != std::string::npos);
}

TEST_CASE("certificate files are canonical") {
  TempDir d;
  const auto in = d.file("ut.json", kPeriodicUt);
  REQUIRE(run({"factor", "--ring", "cyclo:4", "--k", "4", "--input", in, "--out", d.name("c.json")}).code == 0);
  const std::string text = slurp(d.name("c.json"));
  CHECK(canonical_dump(parse_json(text)) == text);
  const auto ctx = testing::cyclo_ring(4, 4);
  CHECK(canonical_dump(certificate_to_json(certificate_from_json(ctx, parse_json(text)))) == text);
}

TEST_CASE("error exit codes") {
  TempDir d;
  const auto neg = d.file("neg.json", R"({"kind":"dense","n":2,"rows":[["-1","0"],["0","-1"]]})");
  const auto r = run({"factor", "--mode", "sl", "--k", "2", "--input", neg});
  CHECK(r.code == 3);
  CHECK(r.err.find("k=2 scalar case out of scope") != std::string::npos);

  const auto bad = d.file("bad.json", "{not json");
  CHECK(run({"factor", "--input", bad}).code == 2);
  CHECK(run({"factor", "--input", d.name("missing.json")}).code == 2);
  CHECK(run({"factor", "--bogus"}).code == 2);
  CHECK(run({"factor", "--input", bad, "--mode", "xx"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const auto lower = d.file("low.json", R"({"kind":"dense","n":2,"rows":[["1","0"],["1","1"]]})");
  CHECK(run({"factor", "--input", lower}).code == 3);
  const auto sing = d.file("sing.json", R"({"kind":"dense","n":2,"rows":[["1","0"],["0","0"]]})");
  CHECK(run({"factor", "--mode", "sl", "--input", sing}).code == 3);
  CHECK(run({"factor", "--ring", "Fp:9", "--input", neg}).code != 0);
}

TEST_CASE("demos") {
  const auto six = run({"demo", "lemma6-k4"});
  CHECK(six.code == 0);
  CHECK(six.out.find("[B,C][C,B^2][B^2,C^2][C^2,B^3][B^3,C^3]") != std::string::npos);
  const auto five = run({"demo", "lemma5-k2"});
  CHECK(five.code == 0);
  CHECK(five.out.find("D_2 = sum of E_{2i,2i}: holds") != std::string::npos);
  const auto sc = run({"demo", "scalar-even-n2"});
  CHECK(sc.code == 0);
  CHECK(sc.out.find("F G = -I: holds") != std::string::npos);
  CHECK(run({"demo", "nope"}).code == 3);
}

TEST_CASE("default window") {
  CHECK(cli::default_window(kPeriodicUt, 3) == 2 * (1 + 2 * 2 + 3));
  CHECK(cli::default_window(R"({"kind":"dense","n":9,"rows":[]})", 2) == 9);
  CHECK(cli::default_window(R"({"kind":"identity"})", 2) == 4);
}
