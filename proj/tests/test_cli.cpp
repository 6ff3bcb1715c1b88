#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "treespan/io.hpp"

using namespace treespan;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path sandbox() {
  fs::path dir = fs::temp_directory_path() / "treespan-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string file(const std::string& name, const std::string& content) {
  fs::path p = sandbox() / name;
  std::ofstream(p) << content;
  return p.string();
}

struct ScopedEnv {
  std::string key;
  bool had;
  std::string old;
  ScopedEnv(const std::string& k, const char* value) : key(k) {
    const char* prev = std::getenv(k.c_str());
    had = prev != nullptr;
    if (had) old = prev;
    if (value)
      setenv(k.c_str(), value, 1);
    else
      unsetenv(k.c_str());
  }
  ~ScopedEnv() {
    if (had)
      setenv(key.c_str(), old.c_str(), 1);
    else
      unsetenv(key.c_str());
  }
};

std::string tree_S() { return file("S.tree", "root r\narc r x\narc r y\n"); }

std::string tree_T() {
  return file("T.tree",
              "root 1\narc 1 2\narc 1 3\narc 3 4\narc 4 5\narc 4 6\n");
}

}  // namespace

TEST_CASE("verify: positive answers name the next stronger kind") {
  std::string f1 = file("f1.map", "map r 1\nmap x 5\nmap y 6\n");
  CliResult r = run({"verify", "--kind", "minor", tree_S(), tree_T(), f1});
  CHECK(r.exit == 0);
  CHECK(r.out == "minor: yes; topological: no\n");

  std::string f4 = file("f4.map", "map r 1\nmap x 2\nmap y 3\n");
  CliResult iso = run({"verify", "--kind", "isomorphic", tree_S(), tree_T(), f4});
  CHECK(iso.exit == 0);
  CHECK(iso.out == "isomorphic: yes\n");
}

TEST_CASE("verify: negative answers carry the violation and exit 1") {
  std::string f0 = file("f0.map", "map r 1\nmap x 3\nmap y 4\n");
  CliResult r = run({"verify", "--kind", "minor", tree_S(), tree_T(), f0});
  CHECK(r.exit == 1);
  CHECK(r.out ==
        "minor: no (arc (r, y): target path contains image node '3')\n");
}

TEST_CASE("classify prints the strongest kind or none") {
  std::string f2 = file("f2.map", "map r 1\nmap x 2\nmap y 6\n");
  CliResult r = run({"classify", tree_S(), tree_T(), f2});
  CHECK(r.exit == 0);
  CHECK(r.out == "topological\n");

  std::string f0 = file("f0.map", "map r 1\nmap x 3\nmap y 4\n");
  CliResult none = run({"classify", tree_S(), tree_T(), f0});
  CHECK(none.exit == 1);
  CHECK(none.out == "none\n");
}

TEST_CASE("intersect reproduces the forest example") {
  std::string big = file("big.tree", "root a1\narc a1 a2\narc a2 b\narc a2 c\n");
  std::string t1 = file("t1.tree", "root a1\narc a1 b\narc a1 c\n");
  std::string t2 = file("t2.tree", "root a2\narc a2 b\narc a2 c\n");
  std::string i1 = file("i1.map", "map a1 a1\nmap b b\nmap c c\n");
  std::string i2 = file("i2.map", "map a2 a2\nmap b b\nmap c c\n");
  CliResult r = run({"intersect", "--kind", "minor", t1, t2, i1, i2, big});
  CHECK(r.exit == 0);
  CHECK(r.out ==
        "# intersection graph\n"
        "node b\n"
        "node c\n"
        "shape forest\n"
        "# tree\n"
        "root \xE2\x8A\xA5\n"
        "arc \xE2\x8A\xA5 b\n"
        "arc \xE2\x8A\xA5 c\n"
        "# left inclusion\n"
        "map b b\nmap c c\nmap \xE2\x8A\xA5 a1\n"
        "# right inclusion\n"
        "map b b\nmap c c\nmap \xE2\x8A\xA5 a2\n");
}

TEST_CASE("join and sum print the quotient and the glued tree") {
  std::string mu = file("mu.tree", "root x\narc x y\n");
  std::string a2 = file("a2.tree", "root x1\narc x1 y1\n");
  std::string p3 = file("p3.tree", "root x2\narc x2 c\narc c y2\n");
  std::string n1 = file("n1.map", "map x x1\nmap y y1\n");
  std::string n2 = file("n2.map", "map x x2\nmap y y2\n");

  CliResult j = run({"join", "--kind", "homeo", a2, p3, mu, n1, n2});
  CHECK(j.exit == 0);
  CHECK(j.out ==
        "class 2:c = 2:c\n"
        "class x1 = 1:x1 2:x2\n"
        "class y1 = 1:y1 2:y2\n"
        "edge 2:c y1\n"
        "edge x1 2:c\n"
        "edge x1 y1\n");

  CliResult s = run({"sum", "--kind", "homeo", a2, p3, mu, n1, n2});
  CHECK(s.exit == 0);
  CHECK(s.out ==
        "# apex\n"
        "root x1\narc 2:c y1\narc x1 2:c\n"
        "# left embedding\n"
        "map x1 x1\nmap y1 y1\n"
        "# right embedding\n"
        "map c 2:c\nmap x2 x1\nmap y2 y1\n");

  CliResult plain = run({"sum", "--kind", "homeo", "--plain", a2, p3, mu, n1, n2});
  CHECK(plain.exit == 0);
  CHECK(plain.out.find("arc c y1") != std::string::npos);
  CHECK(plain.out.find("2:c") == std::string::npos);
}

TEST_CASE("plain output refuses to merge distinct labels") {
  // both sides contribute an unmatched node called c
  std::string mu = file("mu.tree", "root x\narc x y\n");
  std::string t1 = file("c1.tree", "root x1\narc x1 y1\narc x1 c\n");
  std::string t2 = file("c2.tree", "root x2\narc x2 y2\narc x2 c\n");
  std::string n1 = file("n1.map", "map x x1\nmap y y1\n");
  std::string n2 = file("n2.map", "map x x2\nmap y y2\n");
  CliResult r = run({"sum", "--kind", "minor", "--plain", t1, t2, mu, n1, n2});
  CHECK(r.exit == 3);
  CHECK(r.err.find("InvalidLabel") != std::string::npos);
  CHECK(r.err.find("merge") != std::string::npos);
}

TEST_CASE("lcst prints the apex and both witnesses") {
  CliResult r = run({"lcst", "--kind", "iso", tree_S(), tree_T()});
  CHECK(r.exit == 0);
  CHECK(r.out ==
        "# apex\n"
        "root 1\narc 1 2\narc 1 3\n"
        "# left embedding\n"
        "map 1 r\nmap 2 x\nmap 3 y\n"
        "# right embedding\n"
        "map 1 1\nmap 2 2\nmap 3 3\n");
}

TEST_CASE("scst respects the size law on the reference pair") {
  CliResult r = run({"scst", "--kind", "iso", tree_S(), tree_T()});
  CHECK(r.exit == 0);
  CHECK(r.out.find("# apex\n") == 0);
  // 6 nodes: one root line plus five arc lines
  int arcs = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("arc ", 0) == 0) ++arcs;
  CHECK(arcs == 5);
}

TEST_CASE("conversion commands run from files") {
  std::string mu = file("mu.tree", "root x\narc x y\n");
  std::string a2 = file("a2.tree", "root x1\narc x1 y1\n");
  std::string p3 = file("p3.tree", "root x2\narc x2 c\narc c y2\n");
  std::string n1 = file("n1.map", "map x x1\nmap y y1\n");
  std::string n2 = file("n2.map", "map x x2\nmap y y2\n");
  CliResult up = run({"sub2super", "--kind", "homeo", a2, p3, mu, n1, n2});
  CHECK(up.exit == 0);
  CHECK(up.out.find("# apex\n") == 0);

  // feed a supertree cospan back down
  std::string host = file("host.tree", "root p\narc p q\narc q s\n");
  std::string m1 = file("m1.map", "map x1 p\nmap y1 s\n");
  std::string m2 = file("m2.map", "map x2 p\nmap c q\nmap y2 s\n");
  CliResult down = run({"super2sub", "--kind", "homeo", a2, p3, m1, m2, host});
  CHECK(down.exit == 0);
  CHECK(down.out.find("# apex\n") == 0);
  CHECK(down.out.find("arc x1 y1\n") != std::string::npos);
}

TEST_CASE("check-pullback refutes the forest instance") {
  std::string big = file("big.tree", "root a1\narc a1 a2\narc a2 b\narc a2 c\n");
  std::string t1 = file("t1.tree", "root a1\narc a1 b\narc a1 c\n");
  std::string t2 = file("t2.tree", "root a2\narc a2 b\narc a2 c\n");
  std::string i1 = file("i1.map", "map a1 a1\nmap b b\nmap c c\n");
  std::string i2 = file("i2.map", "map a2 a2\nmap b b\nmap c c\n");
  CliResult r = run({"check-pullback", "--kind", "minor", "--bound", "3", t1,
                     t2, i1, i2, big});
  CHECK(r.exit == 0);
  CHECK(r.out.find("CounterexampleFound") != std::string::npos);
  CHECK(r.out.find("# probe\n") != std::string::npos);
}

TEST_CASE("check-pushout verifies a glued reference instance") {
  std::string mu = file("mu.tree", "root x\narc x y\n");
  std::string a2 = file("a2.tree", "root x1\narc x1 y1\n");
  std::string p3 = file("p3.tree", "root x2\narc x2 c\narc c y2\n");
  std::string n1 = file("n1.map", "map x x1\nmap y y1\n");
  std::string n2 = file("n2.map", "map x x2\nmap y y2\n");
  CliResult r = run({"check-pushout", "--kind", "homeo", "--bound", "4", a2,
                     p3, mu, n1, n2});
  CHECK(r.exit == 0);
  CHECK(r.out.find("VerifiedUpToBound") != std::string::npos);
}

TEST_CASE("proptest runs the suites") {
  CliResult r = run({"proptest", "--seed", "1"});
  CHECK(r.exit == 0);
  CHECK(r.out.find("suite hierarchy:") != std::string::npos);
  CHECK(r.out.find("all suites passed") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).exit == 2);
  CHECK(run({"frobnicate"}).exit == 2);
  CHECK(run({"verify", tree_S(), tree_T()}).exit == 2);  // --kind missing
  CliResult bad_kind =
      run({"verify", "--kind", "strict", tree_S(), tree_T(),
           file("f4.map", "map r 1\nmap x 2\nmap y 3\n")});
  CHECK(bad_kind.exit == 2);
  CHECK(run({"check-pullback", "--kind", "minor", tree_S(), tree_T(), "a", "b",
             "c"})
            .exit == 2);  // --bound missing
}

TEST_CASE("input errors exit 3") {
  CliResult missing = run({"classify", "/nonexistent/file.tree", tree_T(),
                           file("f4.map", "map r 1\nmap x 2\nmap y 3\n")});
  CHECK(missing.exit == 3);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  std::string broken = file("broken.tree", "root r\nfrob r x\n");
  CliResult syntax = run({"classify", broken, tree_T(),
                          file("f4.map", "map r 1\nmap x 2\nmap y 3\n")});
  CHECK(syntax.exit == 3);
  CHECK(syntax.err.find("SyntaxError") != std::string::npos);

  std::string degree = file("deg.tree", "root r\narc r x\narc q x\n");
  CliResult structural = run({"classify", degree, tree_T(),
                              file("f4.map", "map r 1\nmap x 2\nmap y 3\n")});
  CHECK(structural.exit == 3);
  CHECK(structural.err.find("NodeInDegreeExceeded") != std::string::npos);
}

TEST_CASE("the brute-force cap comes from flag or environment") {
  std::string chain9 = file(
      "chain9.tree",
      "root 0\narc 0 1\narc 1 2\narc 2 3\narc 3 4\narc 4 5\narc 5 6\narc 6 "
      "7\narc 7 8\n");
  {
    ScopedEnv env("TREESPAN_MAX_NODES", nullptr);
    CliResult capped = run({"lcst", "--kind", "iso", chain9, chain9});
    CHECK(capped.exit == 3);
    CHECK(capped.err.find("BoundExceeded") != std::string::npos);

    CliResult raised =
        run({"lcst", "--kind", "iso", "--max-nodes", "9", chain9, chain9});
    CHECK(raised.exit == 0);
  }
  {
    ScopedEnv env("TREESPAN_MAX_NODES", "9");
    CHECK(run({"lcst", "--kind", "iso", chain9, chain9}).exit == 0);
    // the explicit flag wins over the environment
    CliResult flag =
        run({"lcst", "--kind", "iso", "--max-nodes", "8", chain9, chain9});
    CHECK(flag.exit == 3);
  }
  {
    ScopedEnv env("TREESPAN_MAX_NODES", "many");
    CliResult bad = run({"lcst", "--kind", "iso", chain9, chain9});
    CHECK(bad.exit == 3);
    CHECK(bad.err.find("TREESPAN_MAX_NODES") != std::string::npos);
  }
}

TEST_CASE("--dot writes a graphviz file") {
  fs::path dot = sandbox() / "out.dot";
  std::error_code ec;
  fs::remove(dot, ec);
  CliResult r = run({"lcst", "--kind", "iso", "--dot", dot.string(), tree_S(),
                     tree_T()});
  CHECK(r.exit == 0);
  std::ifstream in(dot);
  REQUIRE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str().find("digraph tree {") == 0);
}

TEST_CASE("identical invocations produce identical bytes") {
  CliResult a = run({"lcst", "--kind", "minor", tree_S(), tree_T()});
  CliResult b = run({"lcst", "--kind", "minor", tree_S(), tree_T()});
  CHECK(a.out == b.out);
  CHECK(a.exit == b.exit);
}
