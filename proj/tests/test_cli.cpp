#include "support.hpp"

#include "minspace/io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace minspace;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

std::string data(const char* name) { return std::string(MINSPACE_DATA_DIR) + "/" + name; }

/// Runs the CLI through the shell; stderr is folded into `out` when asked.
Run cli(const std::string& args, bool with_stderr = false, const std::string& env = "") {
  const std::string cmd = env + " " + MINSPACE_CLI + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Json json(const Run& r) { return Json::parse(r.out); }

} // namespace

TEST_CASE("structure files") {
  const auto pres = parse_structure("const c; fn f/1;\natom f(f(c)) = c;\nnot c = f(c);\n");
  CHECK(pres.backend == "presented");
  CHECK(pres.literals.size() == 2);
  REQUIRE(pres.structure);

  const auto clash = load_structure(data("clash.pres"));
  CHECK_FALSE(clash.structure);
  CHECK_CODE(load_model(data("clash.pres")), "inconsistent");

  const auto tab = load_structure(data("s3.pres"));
  CHECK(tab.backend == "table");
  REQUIRE(tab.table);
  CHECK(tab.table->size() == 6);

  const auto rel = parse_structure("backend table;\nconst c; rel P/2; rel Q/1;\nsize 2;\nc = 0;\nP = (0,1) (1,1);\nQ = 1;\n");
  REQUIRE(rel.table);
  CHECK(rel.table->related(rel.signature.symbols(SymbolKind::Relation)[0], std::vector<std::size_t>{0, 1}));
  CHECK_FALSE(rel.table->related(rel.signature.symbols(SymbolKind::Relation)[0], std::vector<std::size_t>{1, 0}));

  CHECK(load_structure(data("z3.pres")).backend == "abelian");
  CHECK(load_structure(data("free2.pres")).backend == "free_group");

  try {
    (void)parse_structure("const c; fn f/1;\natom f(c) = ;\n");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(is_signature_text("const c; # comment\nfn f/1;"));
  CHECK_FALSE(is_signature_text("const c;\natom c = c;"));
}

TEST_CASE("metric files") {
  const auto x = parse_metric_csv(",a,b\na,0,1/2\nb,0.5,0\n");
  CHECK(x.labels() == std::vector<std::string>{"a", "b"});
  CHECK(x.d(0, 1) == Extended(Rational(1, 2)));
  CHECK(parse_metric_csv(to_csv(x)) == x);
  CHECK(parse_metric_csv(",a,b\na,0,inf\nb,inf,0\n").d(0, 1).is_infinite());
  CHECK_CODE(parse_metric_csv(",a,b\na,0,x\nb,1,0\n"), "syntax-error");
  CHECK_CODE(parse_metric_csv(",a,b\na,0,1\n"), "syntax-error");
  CHECK_CODE(parse_metric_csv(",a,b\na,0,1\nb,2,0\n").require_valid(), "not-semi-metric");
  CHECK(resolve_labels(x, "b,a") == std::vector<std::size_t>{1, 0});
  CHECK_CODE(resolve_labels(x, "z"), "unknown-label");
  CHECK(parse_rational_list("1/2, 1 ,2") == std::vector<Rational>{Rational(1, 2), 1, 2});
}

TEST_CASE("cli reference outputs") {
  const Run d = cli("dist --a " + data("z3.pres") + " --b " + data("z.pres") + " --cap 12");
  REQUIRE(d.status == 0);
  CHECK(json(d)["distance"] == "1/5");
  CHECK(json(d)["witness_length"] == 6);

  const Run g = cli("gh --x " + data("point.csv") + " --y " + data("pair.csv"));
  REQUIRE(g.status == 0);
  CHECK(json(g)["gh"] == "1/2");
  CHECK(json(g)["correspondence"].size() == 2);

  const Run bad = cli("check " + data("bad.sig"), true);
  CHECK(bad.status == 2);
  const Json err = json(bad);
  CHECK(err["error"]["code"] == "syntax-error");
  CHECK(err["error"]["line"] == 2);
}

TEST_CASE("cli exit codes") {
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("dist --a " + data("z3.pres")).status == 2);
  CHECK(cli("check /nonexistent/file.pres").status == 2);
  CHECK(cli("dist --a " + data("clash.pres") + " --b " + data("free_f.pres")).status == 1);
  CHECK(cli("cover " + data("omega.sig") + " --m 3").status == 1);
  CHECK(cli("check " + data("clash.pres")).status == 0);
  CHECK(cli("net --x " + data("line3.csv") + " --eps x").status == 2);
  const std::string line = data("line3.csv");
  CHECK(cli("netcmp --x " + line + " --y " + line + " --eps 3 --n0 2").status == 1);
  const Run e = cli("eval " + data("magma.pres") + " 'forall x y z: mul(mul(x, y), z) = mul(x, mul(y, z))'");
  REQUIRE(e.status == 0);
  CHECK(json(e)["value"] == false);
}

TEST_CASE("cli determinism across worker counts") {
  const std::string cover = "cover " + data("succ.sig") + " --m 6";
  const Run c1 = cli(cover + " --jobs 1"), c4 = cli(cover + " --jobs 4");
  REQUIRE(c1.status == 0);
  CHECK(c1.out == c4.out);
  CHECK(c1.out == cli(cover + " --jobs 1").out);

  const std::string conv = "converge " + data("free_f.pres") + " " + data("f2collapse.pres") + " " + data("clash.pres");
  CHECK(cli(conv + " --jobs 1").status == 1);
  const std::string seq = "converge " + data("z3.pres") + " " + data("z.pres") + " " + data("z3.pres");
  const Run s1 = cli(seq + " --jobs 1"), s3 = cli(seq + " --jobs 3");
  REQUIRE(s1.status == 0);
  CHECK(s1.out == s3.out);

  const std::string gh = "gh --x " + data("square.csv") + " --y " + data("line3.csv");
  CHECK(cli(gh + " --jobs 1").out == cli(gh + " --jobs 4").out);
}

TEST_CASE("cli output file and pretty printing") {
  const auto path = std::filesystem::temp_directory_path() / "minspace_cli_out.json";
  std::filesystem::remove(path);
  const Run r = cli("net --x " + data("line3.csv") + " --eps 1 --pretty --out " + path.string());
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  const std::string text = read_file(path);
  CHECK(text.find("\n  ") != std::string::npos);
  CHECK(Json::parse(text)["centers"] == Json::array({"x0", "x2"}));
  std::filesystem::remove(path);
}

TEST_CASE("cli selftest is seeded") {
  const Run a = cli("selftest --count 5", false, "MINSPACE_SEED=77");
  REQUIRE(a.status == 0);
  CHECK(json(a)["seed"] == 77);
  CHECK(json(a)["ok"] == true);
  CHECK(a.out == cli("selftest --count 5", false, "MINSPACE_SEED=77").out);
}
