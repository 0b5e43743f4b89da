#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(REFLCTL) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("classify") {
  const Run r = run("classify " + data("g237.json"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("type: hyperbolic", 0) == 0);
  CHECK(run("classify --json " + data("g333.json")).out.find("\"parabolic\"") != std::string::npos);
  CHECK(run("classify " + data("malformed.json")).code == 2);
  CHECK(run("classify " + data("missing.json")).code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("subgroup") {
  const Run r = run("subgroup " + data("g238.json") + " " + data("doubling.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("\"index\": 2") != std::string::npos);
  CHECK(run("subgroup " + data("g244.json") + " " + data("square.json")).code == 0);
  CHECK(run("subgroup " + data("g237.json") + " " + data("strip.json")).code == 3);
  CHECK(run("subgroup " + data("g237.json") + " " + data("not_reflection.json")).code == 2);
}

TEST_CASE("strips are expected counterexamples") {
  CHECK(run("--max-index 2 subgroup " + data("half_strip_e2.json") + " " + data("strip.json")).code == 0);
  CHECK(run("--max-index 2 subgroup " + data("half_strip_h2.json") + " " + data("strip.json")).code == 0);
}

TEST_CASE("render") {
  const Run r = run("render --depth 2 " + data("g237.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(run("render --depth 6 " + data("g237.json")).out == run("render --depth 6 " + data("g237.json")).out);
  const Run h = run("render --highlight " + data("square.json") + " " + data("g244.json"));
  CHECK(count(h.out, "chamber highlight") == 8);
  CHECK(count(run("render --depth 0 " + data("g237.json")).out, "class=\"chamber") == 1);
  CHECK(run("render --model euclidean_plane " + data("g237.json")).code == 2);
  CHECK(run("render --model nonsense " + data("g237.json")).code == 2);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "reflctl_cli_test.svg";
  std::filesystem::remove(path);
  CHECK(run("--output " + path.string() + " render --depth 1 " + data("g333.json")).code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.find("<svg") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("verify") {
  const Run r = run("verify --suite lemma2 --max-rank 8");
  CHECK(r.code == 0);
  CHECK(r.out.find("lemma2: PASS") != std::string::npos);
  CHECK(run("verify --suite remark2 --json").out.find("\"expected\"") != std::string::npos);
  CHECK(run("verify --suite bogus").code == 2);
}

TEST_CASE("enumerate and polytope") {
  CHECK(run("--max-index 12 --max-depth 4 enumerate " + data("g238.json")).code == 0);
  const Run p = run("polytope " + data("triangle237.json"));
  CHECK(p.code == 0);
  CHECK(p.out.find("\"coxeter\": true") != std::string::npos);
}
