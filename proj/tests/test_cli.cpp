#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbtau/cache.hpp"
#include "cbtau/cli.hpp"
#include "cbtau/errors.hpp"
#include "doctest.h"

using namespace cbtau;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cbtau-test-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
    setenv("CBTAU_CACHE_DIR", (path / "cache").c_str(), 1);
  }
  ~TempDir() {
    unsetenv("CBTAU_CACHE_DIR");
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("SHA-256 and job keys") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  JobKey a{"tau.build", R"({"beta":"1/5"})", R"({"order":4})", "exact"};
  JobKey b = a;
  CHECK(a.digest() == b.digest());
  b.params = R"({"beta":"1/6"})";
  CHECK(a.digest() != b.digest());
  // Whitespace and key order do not matter.
  JobKey c{"tau.build", R"({ "beta" : "1/5" })", R"({"order": 4})", "exact"};
  CHECK(a.digest() == c.digest());
}

TEST_CASE("Result cache") {
  TempDir tmp;
  ResultCache cache(tmp.path / "c");
  JobKey k{"op", "{}", "{}", "exact"};
  CHECK_FALSE(cache.get(k).has_value());
  cache.put(k, R"({"x":"1/2"})");
  REQUIRE(cache.get(k).has_value());
  CHECK(*cache.get(k) == R"({"x":"1/2"})");
  CHECK(cache.stats().entries == 1);
  for (const auto& e : fs::directory_iterator(tmp.path / "c")) CHECK(e.path().extension() == ".json");
  // A damaged entry is ignored.
  for (const auto& e : fs::directory_iterator(tmp.path / "c")) std::ofstream(e.path()) << "{not json";
  CHECK_FALSE(cache.get(k).has_value());
  CHECK(cache.clear() == 1);
  CHECK(cache.stats().entries == 0);
}

TEST_CASE("Command line basics") {
  TempDir tmp;
  auto r = cli({"cache", "stats"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"entries\":0}\n");

  std::string pv = tmp.write("pv.json", R"({"theta_0":"1/3","theta_t":"2/7","sigma":"1/5","theta_star":"3/11"})");
  r = cli({"nekrasov", "sum", "--kind", "pv", "--order", "0", "--point", pv});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"0\":\"1\"}\n");

  std::string bad = tmp.write("bad.json", R"({"theta_0":"1/3","theta_t":"2/7","sigma":"1/5"})");
  r = cli({"nekrasov", "sum", "--kind", "pv", "--order", "2", "--point", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("theta_star") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"nekrasov", "sum", "--kind", "nope", "--point", pv}).code == 2);
  std::string floaty = tmp.write("f.json", R"({"sigma": 0.5})");
  CHECK(cli({"nekrasov", "sum", "--kind", "piii_d8", "--point", floaty}).code == 2);

  std::string full = tmp.write(
      "full.json", R"({"theta_0":"1/3","theta_t":"2/7","sigma":"1/5","theta_1":"1/4","theta_inf":"3/8"})");
  r = cli({"verify", "agt", "--order", "4", "--point", full, "--trials", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("{\"pass\":true", 0) == 0);

  // The single channel fails the sigma form at a generic point: exit status 1.
  std::string v = tmp.write("v.json", R"({"theta_0":"1/3","theta_t":"2/7","theta":"3/11","beta":"1/5"})");
  r = cli({"verify", "ode", "--family", "pv", "--nmax", "0", "--order", "4", "--exact", "--point", v});
  CHECK(r.code == 1);
  r = cli({"verify", "ode", "--family", "pv", "--nmax", "1", "--order", "4", "--exact", "--point", v});
  CHECK(r.code == 0);
}

TEST_CASE("Warm cache reproduces results byte for byte") {
  TempDir tmp;
  std::string v = tmp.write("v.json", R"({"theta_0":"1/3","theta_t":"2/7","theta":"3/11","beta":"1/5"})");
  std::vector<std::vector<std::string>> commands{
      {"tau", "build", "--family", "pv", "--nmax", "1", "--order", "3", "--digits", "30", "--point", v},
      {"verify", "ode", "--family", "pv", "--nmax", "1", "--order", "4", "--digits", "40", "--point", v},
      {"icb", "--rank", "2", "--order", "4", "--point", v},
      {"conjecture", "solve-c", "--order", "3"},
  };
  for (const auto& c : commands) {
    auto cold = cli(c);
    auto warm = cli(c);
    CHECK(cold.code == 0);
    CHECK(cold.out == warm.out);
  }
  CHECK(cli({"cache", "stats"}).out == "{\"entries\":" + std::to_string(commands.size()) + "}\n");
  CHECK(cli({"cache", "clear"}).out == "{\"removed\":" + std::to_string(commands.size()) + "}\n");
}

TEST_CASE("Results do not depend on the thread count") {
  TempDir tmp;
  std::string v = tmp.write("v.json", R"({"theta_t":"2/7","theta":"3/11","beta":"1/5"})");
  std::vector<std::vector<std::string>> commands{
      {"verify", "ode", "--family", "piv", "--nmax", "1", "--order", "6", "--digits", "40", "--point", v},
      {"verify", "ode", "--family", "piv", "--nmax", "1", "--order", "6", "--exact", "--point", v},
      {"tau", "build", "--family", "piv", "--nmax", "2", "--order", "3", "--digits", "30", "--point", v},
      {"conjecture", "solve-c", "--order", "4"},
  };
  for (auto c : commands) {
    c.push_back("--no-cache");
    auto one = c, many = c;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "6"});
    auto a = cli(one), b = cli(many);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(cli({"cache", "stats"}).out == "{\"entries\":0}\n");
}

TEST_CASE("Point files") {
  ParameterPoint p = parse_point_json(R"({"a":"-3/4","b":2,"c":"0.25"})", {"a", "b"});
  CHECK(p.at("a") == rational(-3, 4));
  CHECK(p.at("b") == 2);
  CHECK(p.at("c") == rational(1, 4));
  CHECK_THROWS_AS(parse_point_json(R"({"a":"1"})", {"a", "z"}), MissingSymbol);
  CHECK_THROWS_AS(parse_point_json("[1,2]", {}), UsageError);
  CHECK_THROWS_AS(read_point_file("/nonexistent/point.json", {}), UsageError);
}
