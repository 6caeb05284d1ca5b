// Runs the zsl binary named by $ZSL_CLI.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "zsl/board.hpp"
#include "zsl/group.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const char* cli = std::getenv("ZSL_CLI");
  REQUIRE(cli != nullptr);
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / ("zsl_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("constant prints the value") {
  auto r = run("constant --group 3,3 --family D");
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");
  r = run("constant --group 3,3,3 --family Dk --k 2");
  CHECK(r.code == 0);
  CHECK(r.out == "11\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("constant --group 3,3").code == 2);                       // missing family
  CHECK(run("constant --group 3,4 --family D").code == 2);            // not a chain
  CHECK(run("constant --group 3,3 --family Dk").code == 2);           // missing k
  CHECK(run("af-verify --filter nope").code == 2);
  CHECK(run("classify nothing").code == 2);
}

TEST_CASE("budget exceeded exits 3") {
  CHECK(run("constant --group 3,3,3 --family D --node-budget 3").code == 3);
}

TEST_CASE("json reports are deterministic and carry the schema") {
  const auto a = run("constant --group 3,3 --family Dk --k 2 --json");
  const auto b = run("constant --group 3,3 --family Dk --k 2 --json --jobs 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  for (const char* f : {"query", "value", "witness", "orbits", "node_count", "wall_ms", "obstruction_certificates"})
    CHECK(j.contains(f));
  CHECK(j["wall_ms"].is_null());
  CHECK(j["value"] == 8);
}

TEST_CASE("af-verify restricted-filter counts") {
  const auto r = run("af-verify --filter paper --json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["violations"] == 0);
  CHECK(j["rotated"] == 41);
  CHECK(j["counts"]["orbits"] == 16);
  CHECK(j["raw"] == 97);
  CHECK(j["obstruction_certificates"].size() == 19);
}

TEST_CASE("board render and parse round trip through files") {
  const auto seq = temp_file("seq.txt", "# three points\n0,0,1\n0,0,1\n1,2,0\n");
  const auto r = run("render --input " + seq.string());
  CHECK(r.code == 0);
  const auto board = temp_file("board.txt", r.out);
  const auto back = run("parse --input " + board.string());
  CHECK(back.code == 0);
  const zsl::GroupSpec g({3, 3, 3});
  CHECK(zsl::parse_sequence(back.out, g) == zsl::parse_sequence("0,0,1\n0,0,1\n1,2,0\n", g));
  CHECK(run("parse --input /nonexistent/board").code == 2);
}

TEST_CASE("find-zerosum prints a certificate") {
  std::string text;
  for (int i = 0; i < 18; ++i) text += "0,0,1\n";  // 18 copies of (0,0,1): order 15
  text += "1,1,1\n";
  const auto seq = temp_file("z15.txt", text);
  const auto r = run("find-zerosum --group 3,3,15 --input " + seq.string());
  CHECK(r.code == 0);
  const zsl::GroupSpec g({3, 3, 15});
  const auto cert = zsl::parse_sequence(r.out, g);
  CHECK(cert.size() > 0);
  CHECK(zsl::verify_certificate(zsl::parse_sequence(text, g), {cert}));
}

TEST_CASE("classify with expectations") {
  CHECK(run("classify distinct --size 9 --expect 0").code == 0);
  CHECK(run("classify distinct --size 8 --expect 1").code == 0);
  CHECK(run("classify distinct --size 8 --expect 2").code == 1);
}

TEST_CASE("cache stores, reuses and detects corruption") {
  const auto dir = std::filesystem::temp_directory_path() / ("zsl_cli_cache_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto cache = dir / "cache.jsonl";
  std::filesystem::remove(cache);
  const std::string base = "constant --group 3,3 --family D --cache " + cache.string();
  CHECK(run(base).out == "5\n");
  CHECK(std::filesystem::exists(cache));
  CHECK(run(base).out == "5\n");
  CHECK(run(base + " --verify-cache").code == 0);
  // inject a wrong value
  std::string line;
  {
    std::ifstream in(cache);
    std::getline(in, line);
  }
  auto j = nlohmann::json::parse(line);
  j["value"] = 6;
  std::ofstream(cache, std::ios::app) << j.dump() << "\n";
  CHECK(run(base).code == 1);
  std::filesystem::remove_all(dir);
}
