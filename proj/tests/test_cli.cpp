#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "../tools/ektool_impl.hpp"

namespace {

std::string run(std::vector<std::string> args) {
  std::ostringstream os;
  ektool::run_tool(std::move(args), os);
  return os.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/ektool_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("sn print reports stages and dims") {
  std::string f = write_temp("sn.txt", "2 inf\n3 2\n");
  std::string out = run({"sn", "print", f});
  CHECK(out.find("n_3: 72") != std::string::npos);  // 2^3 * 3^2
  CHECK(out.find("status: ok") != std::string::npos);
}

TEST_CASE("build reports certificate dims") {
  std::string f = write_temp("c2.txt", "dims powers 2\n");
  std::string out = run({"build", "--cert", f});
  CHECK(out.find("dims[0..6]: 1 2 4 8 16 32 64") != std::string::npos);
}

TEST_CASE("norm and trace on the 2^infty instance") {
  std::string f = write_temp("c2b.txt", "dims powers 2\n");
  std::string nrm = run({"norm", "--cert", f, "-k", "10", "psi(1,1,2)"});
  CHECK(nrm.find("width.ok: yes") != std::string::npos);
  std::string tr = run({"trace", "--cert", f, "-k", "12", "psi(3,1,1)"});
  CHECK(tr.find("trace.exact: 1/8") != std::string::npos);
}

TEST_CASE("k0 rat on the unit prints 1") {
  std::string f = write_temp("c2c.txt", "dims powers 2\n");
  std::string out = run({"k0", "--cert", f, "rat", "unit"});
  CHECK(out.find("rational: 1") != std::string::npos);
}

TEST_CASE("iso reports the interleaving and the unit image") {
  std::string a = write_temp("ca.txt", "dims powers 2\n");
  std::string b = write_temp("cb.txt", "dims powers 4\n");
  std::string out = run({"iso", "--a", a, "--b", b, "--pt", "one", "-k", "8"});
  CHECK(out.find("interleaving.k: 0 1 2 4 6 8") != std::string::npos);
  CHECK(out.find("trace.image: 1") != std::string::npos);
}

TEST_CASE("fd instance norms through the matrix grammar") {
  std::string out = run({"norm", "--fd", "2", "-k", "10", "e(1,2)+e(2,1)"});
  CHECK(out.find("norm: [1, 1]") != std::string::npos);
}

TEST_CASE("parse errors carry positions") {
  std::string out = run({"norm", "--fd", "2", "-k", "8", "e(1,"});
  CHECK(out.find("parse error") != std::string::npos);
  CHECK(out.find("offset") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  std::string f = write_temp("c2d.txt", "dims powers 2\n");
  std::vector<std::vector<std::string>> cmds = {
      {"build", "--cert", f},
      {"norm", "--cert", f, "-k", "10", "psi(1,1,2)+psi(1,2,1)"},
      {"k0", "--cert", f, "rat", "x2-x2"},
      {"k1", "smoke", "--fuel", "500", "--labels", "2"},
  };
  for (auto& cmd : cmds) {
    std::string first = run(cmd);
    std::string second = run(cmd);
    CHECK(first == second);
    CHECK(first.find("== machine ==") != std::string::npos);
  }
}
