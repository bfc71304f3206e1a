#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "blowuplab/errors.hpp"
#include "blowuplab/io.hpp"

using namespace blowuplab;
namespace fs = std::filesystem;

namespace {
fs::path tmpdir() {
  fs::path p = fs::temp_directory_path() / "blowuplab_io_test";
  fs::create_directories(p);
  return p;
}
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("csv quoting") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  OutputMeta m{"test", "abc"};
  fs::path p = tmpdir() / "t.csv";
  write_csv(p, {"x", "y"}, {{"1", "a,b"}}, m);
  CHECK(slurp(p) == std::string("x,y,config_hash,version\r\n1,\"a,b\",abc,") + tool_version() + "\r\n");
}

TEST_CASE("fmt round trips") {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02e23}) CHECK(std::stod(fmt(v)) == v);
}

TEST_CASE("json meta") {
  fs::path p = tmpdir() / "t.json";
  write_json(p, json{{"x", 1}}, OutputMeta{"cmd", "h"});
  json j = read_json(p);
  CHECK(j["meta"]["command"] == "cmd");
  CHECK(j["x"] == 1);
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
}

TEST_CASE("checkpoint round trip") {
  RadialState s;
  s.ell = 1;
  s.tau = 2.5;
  s.psi1 = {1, 2, 3};
  s.psi2 = {-1, 0.5, 1e-300};
  fs::path p = tmpdir() / "c.bin";
  write_checkpoint(p, s, OutputMeta{"cmd", "h"});
  RadialState r = read_checkpoint(p);
  CHECK(r.ell == 1);
  CHECK(r.tau == 2.5);
  CHECK(r.psi1 == s.psi1);
  CHECK(r.psi2 == s.psi2);
  json side = read_json(fs::path(p.string() + ".json"));
  side["version"] = 99;
  std::ofstream(p.string() + ".json") << side.dump();
  CHECK_THROWS(read_checkpoint(p));
}
