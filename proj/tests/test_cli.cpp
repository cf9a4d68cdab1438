#include "affleib/json_io.hpp"
#include "cli.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace affleib;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("affleib_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
  auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("classify") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--jobs", "0", "catalog", "list"}).code == 2);
  CHECK(run({"check", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("catalog list and emit") {
  auto l = run({"catalog", "list"});
  REQUIRE(l.code == 0);
  auto j = parse_json(l.out);
  CHECK(j["algebras"].size() >= 6);
  CHECK(j["families"].size() == family_names().size());
  bool saw_c01 = false;
  for (const auto& fam : j["families"])
    for (const auto& c : fam["constraints"]) saw_c01 = saw_c01 || c.get<std::string>().find("c01") != std::string::npos;
  CHECK(saw_c01);

  auto e = run({"catalog", "emit", "--name", "L2_homogeneous", "--bind", "alpha=2,mu1=1,mu2=0"});
  REQUIRE(e.code == 0);
  auto K = datum_from_json(parse_json(e.out));
  CHECK(K.s() == Vec::from_ints(FieldSpec::rationals(), {0, -1}));
  auto a = run({"--field", "gf:5", "catalog", "emit", "--name", "L4"});
  REQUIRE(a.code == 0);
  CHECK(algebra_from_json(parse_json(a.out)).field().modulus() == 5);

  auto bad = run({"catalog", "emit", "--name", "L7_F5", "--bind",
                  "lambda2=0,lambda3=0,lambda5=0,lambda6=0,mu2=1,mu3=1,mu5=2,mu6=1,s1=0,s2=0,s3=0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("c01") != std::string::npos);
  CHECK(run({"catalog", "emit", "--name", "L2_homogeneous", "--bind", "alpha"}).code == 2);
  CHECK(run({"catalog", "emit", "--name", "L2_homogeneous"}).code == 2);
  CHECK(run({"catalog", "emit", "--name", "L2_homogeneous", "--bind", "alpha=1/0,mu1=0,mu2=0"}).code == 2);
}

TEST_CASE("check exit codes and JSON report") {
  TempDir dir;
  auto Q = FieldSpec::rationals();
  auto L3 = algebra("L3", Q);
  auto hom = BiAffineBracket::from_algebra(L3, Mat::identity(Q, 2), Mat::zero(Q, 2, 2), Vec(Q, 2));
  auto f = dir.file("hom.json", datum_to_json(hom).dump());
  auto r = run({"check", f, "--type", "homogeneous"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: holds") != std::string::npos);
  CHECK(run({"check", f, "--type", "lie"}).code == 1);
  auto rep = dir.path("rep.json");
  auto all = run({"-o", rep, "check", "-i", f});
  CHECK(all.code == 0);
  auto j = parse_json(slurp(rep));
  CHECK(j["verdicts"]["homogeneous"] == true);
  CHECK(j["verdicts"]["lie-type"] == false);
  CHECK(j["conditions"].contains("general.const"));
  CHECK(j["conditions"].contains("derivative.mu_s"));

  // A non-Leibniz bracket on an abelian fibre.
  Tensor3 c = zero_tensor(Q, 2);
  c[0][0] = Vec::from_ints(Q, {0, 1});
  c[1][0] = Vec::from_ints(Q, {1, 0});
  auto nl = BiAffineBracket(Q, 2, c, Mat::zero(Q, 2, 2), Mat::zero(Q, 2, 2), Vec(Q, 2));
  REQUIRE_FALSE(is_affine_leibniz(nl));
  CHECK(run({"check", dir.file("nl.json", datum_to_json(nl).dump()), "--type", "general"}).code == 1);
  CHECK(run({"--field", "gf:5", "check", f}).code == 2);
  CHECK(run({"check", dir.file("broken.json", "{\"field\":\"Q\"")}).code == 2);
  CHECK(run({"check", f, "--type", "weird"}).code == 2);
}

TEST_CASE("fibre") {
  TempDir dir;
  auto Q = FieldSpec::rationals();
  auto K = BiAffineBracket::from_algebra(algebra("L2", Q), Mat::identity(Q, 2), Mat::identity(Q, 2),
                                         Vec::from_ints(Q, {1, 2}));
  auto f = dir.file("k.json", datum_to_json(K).dump());
  auto r = run({"fibre", f, "--at", "1,-1/2"});
  REQUIRE(r.code == 0);
  Vec o = Vec::from_ints(Q, {1, 0});
  o[1] = Q.from_rational(mpq_class(-1, 2));
  auto F = fibre_at(K, o);
  CHECK(datum_from_json(parse_json(r.out)) == BiAffineBracket::from_algebra(F.algebra, F.lambda, F.mu, F.s));
  CHECK(run({"fibre", f, "--at", "1"}).code == 2);
  CHECK(run({"fibre", f, "--at", "1,x"}).code == 2);
}

TEST_CASE("iso verify and search") {
  TempDir dir;
  auto F = FieldSpec::prime(3);
  std::mt19937 g(95);
  auto L = algebra("L4", F);
  auto K = testing::rand_datum(g, L);
  Mat psi = automorphisms(L).back();
  Vec q = Vec::from_ints(F, {1, 2});
  auto Kp = apply_iso(K, psi, q);
  auto a = dir.file("a.json", datum_to_json(K).dump());
  auto b = dir.file("b.json", datum_to_json(Kp).dump());
  auto w = dir.file("w.json", witness_to_json({psi, q}).dump());
  auto v = run({"iso", a, b, "--witness", w});
  CHECK(v.code == 0);
  CHECK(v.out.find("result: verified") != std::string::npos);
  REQUIRE_FALSE(K == Kp);
  auto id = dir.file("id.json", witness_to_json({Mat::identity(F, 2), Vec(F, 2)}).dump());
  CHECK(run({"iso", a, b, "--witness", id}).code == 1);
  auto out = dir.path("s.json");
  auto s = run({"--jobs", "3", "-o", out, "iso", a, b, "--search"});
  CHECK(s.code == 0);
  auto j = parse_json(slurp(out));
  CHECK(j["found"] == true);
  auto found = witness_from_json(j["witness"], F, 2);
  CHECK(is_affgebra_iso(K, Kp, found.psi, found.q));
  CHECK(run({"iso", a, b}).code == 2);
  CHECK(run({"iso", a, b, "--search", "--witness", w}).code == 2);
  auto Q = FieldSpec::rationals();
  auto kq = dir.file("q.json", datum_to_json(BiAffineBracket::from_algebra(algebra("L2", Q), Mat::identity(Q, 2),
                                                                           Mat::zero(Q, 2, 2), Vec(Q, 2)))
                                   .dump());
  auto qs = run({"iso", kq, kq, "--search"});
  CHECK(qs.code == 2);
  CHECK(qs.err.find("prime fields") != std::string::npos);
  CHECK(run({"iso", a, kq, "--search"}).code == 2);
}

TEST_CASE("classify") {
  TempDir dir;
  auto out = dir.path("c.json");
  auto r = run({"--field", "gf:3", "-o", out, "classify", "--fibre", "L4", "--type", "lie", "--list"});
  REQUIRE(r.code == 0);
  auto j = parse_json(slurp(out));
  CHECK(j["candidates"] == 2187);
  CHECK(j["solutions"] == 162);
  CHECK(j["orbits"].size() == 12);
  CHECK(j["data"].size() == 162);
  std::uint64_t total = 0;
  for (const auto& o : j["orbits"]) {
    total += o["size"].get<std::uint64_t>();
    CHECK(is_lie_type(datum_from_json(o["representative"])));
  }
  CHECK(total == 162);
  auto l3 = run({"--field", "gf:3", "classify", "--fibre", "L3", "--type", "lie", "--no-orbits"});
  CHECK(l3.code == 0);
  CHECK(l3.out.find("solutions   0") != std::string::npos);
  CHECK(run({"classify", "--fibre", "L4", "--type", "lie"}).code == 2);
  CHECK(run({"--field", "Q", "classify", "--fibre", "L4", "--type", "lie"}).code == 2);
  CHECK(run({"--field", "gf:5", "classify", "--fibre", "L7", "--type", "general", "--cap", "100"}).code == 2);
}
