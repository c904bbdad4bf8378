#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "dormant/cli/cache.hpp"
#include "dormant/cli/commands.hpp"

using namespace dormant;
using namespace dormant::cli;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("dormant-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& version = {}) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err, version);
  return {code, out.str(), err.str()};
}

Run run_cached(const TempDir& dir, std::vector<std::string> args, const std::string& version = {}) {
  args.insert(args.begin(), {"--cache-dir", dir.path.string()});
  return run(std::move(args), version);
}

Json stable(Json j) {
  j.erase("timing");
  j.erase("cache_hit");
  return j;
}

}  // namespace

TEST_CASE("run_command examples") {
  auto r = run({"--no-cache", "dormant", "--p", "5", "--r", "2", "--g", "2"});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["command"] == "dormant");
  CHECK(j["value"]["num"] == "5");
  CHECK(j["value"]["den"] == "1");
  CHECK(j["integer"] == true);
  CHECK(j["params"]["p"] == 5);

  r = run({"--no-cache", "dormant", "--p", "5", "--r", "3", "--g", "2"});
  CHECK(r.code == kExitParameter);
  CHECK(r.json()["details"]["reason"].get<std::string>().find("p ≤ C(r,g)=6") != std::string::npos);
  CHECK(r.json()["value"].is_null());

  r = run({"--no-cache", "verlinde", "--r", "2", "--k", "3", "--g", "2", "--method", "fusion"});
  CHECK(r.code == 0);
  CHECK(r.json()["value"]["num"] == "20");
}

TEST_CASE("exit codes") {
  CHECK(run({"--no-cache", "dormant", "--p", "9", "--r", "2", "--g", "2"}).code == kExitParameter);
  CHECK(run({"--no-cache", "vi", "--n", "3", "--d", "0", "--r", "4", "--g", "2"}).code == kExitParameter);
  CHECK(run({"--no-cache", "vi", "--n", "5", "--d", "4", "--r", "2", "--g", "2"}).code == kExitDomain);
  CHECK(run({"--no-cache", "--backend", "float", "--precision-bits", "16", "dormant", "--p", "13",
             "--r", "3", "--g", "3"})
            .code == kExitPrecision);
  CHECK(run({"--no-cache", "verlinde", "--r", "3", "--k", "2", "--g", "2", "--method", "fusion"}).code ==
        kExitParameter);
  CHECK(run({"--no-cache", "dormant", "--p", "5"}).code == kExitParameter);
  CHECK(run({"--no-cache", "--backend", "quantum", "dormant", "--p", "5", "--r", "2", "--g", "2"}).code ==
        kExitParameter);
  CHECK(run({}).code == kExitParameter);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("commands produce the expected values") {
  struct Case { std::vector<std::string> args; std::string num, den; };
  const std::vector<Case> cases = {
      {{"sl-dormant", "--p", "5", "--r", "2", "--g", "2"}, "80", "1"},
      {{"quot", "--p", "7", "--r", "2", "--g", "2"}, "686", "1"},
      {{"vi", "--n", "5", "--d", "3", "--r", "2", "--g", "2"}, "125", "1"},
      {{"frobenius", "--p", "5", "--r", "2", "--g", "2"}, "330", "1"},
      {{"frobenius", "--p", "5", "--r", "2", "--g", "2", "--convention", "with-factorial"}, "165", "1"},
      {{"verlinde", "--r", "3", "--k", "2", "--g", "1", "--method", "trig"}, "6", "1"},
      {{"check-verlinde", "--p", "7", "--r", "2", "--g", "2"}, "14", "1"},
      {{"invariants", "--n", "4", "--d", "1", "--r", "2", "--g", "2"}, "-1", "1"},
  };
  for (const auto& c : cases) {
    auto args = c.args;
    args.insert(args.begin(), "--no-cache");
    const auto r = run(args);
    INFO(r.out << r.err);
    REQUIRE(r.code == 0);
    CHECK(r.json()["value"]["num"] == c.num);
    CHECK(r.json()["value"]["den"] == c.den);
  }
  auto j = run({"--no-cache", "check-verlinde", "--p", "7", "--r", "2", "--g", "2"}).json();
  CHECK(j["details"]["verlinde_dimension"] == "56");
  CHECK(j["details"]["equal"] == true);
  j = run({"--no-cache", "invariants", "--n", "5", "--d", "3", "--r", "2", "--g", "2"}).json();
  CHECK(j["details"]["s_r"] == 6);
  CHECK(j["details"]["epsilon"] == 0);
  CHECK(j["details"]["mukai_bound"] == 12);
  j = run({"--no-cache", "polyfit", "--g", "2", "--fit", "5,7,11,13", "--verify", "17,19"}).json();
  CHECK(j["details"]["polynomial"] == "1/24*p^3 - 1/24*p");
  CHECK(j["details"]["checks"][0]["predicted"]["num"] == "204");
  CHECK(j["details"]["checks"][1]["computed"]["num"] == "285");
  CHECK(j["details"]["verified"] == true);
}

TEST_CASE("float backend agrees with exact") {
  for (const std::string cmd : {"dormant", "sl-dormant", "frobenius"}) {
    const std::vector<std::string> a = {cmd, "--p", "7", "--r", "2", "--g", "2"};
    auto e = a, f = a;
    e.insert(e.begin(), "--no-cache");
    f.insert(f.begin(), {"--no-cache", "--backend", "float"});
    CHECK(run(e).json()["value"] == run(f).json()["value"]);
  }
}

TEST_CASE("output formats") {
  auto r = run({"--no-cache", "--format", "csv", "dormant", "--p", "7", "--r", "2", "--g", "2"});
  CHECK(r.out.rfind("field,value\ncommand,dormant\n", 0) == 0);
  CHECK(r.out.find("value.num,14\n") != std::string::npos);
  r = run({"--no-cache", "--format", "md", "dormant", "--p", "7", "--r", "2", "--g", "2"});
  CHECK(r.out.rfind("| field | value |\n|---|---|\n", 0) == 0);
  CHECK(r.out.find("| value.num | 14 |") != std::string::npos);
  r = run({"--no-cache", "--format", "csv", "table", "--g", "2", "--r", "2", "--p", "5,7"});
  CHECK(r.out == "g,r,p,dormant_degree,sl_degree,verlinde,conjectural,skip_reason\n"
                 "2,2,5,5,80,equal,false,\n"
                 "2,2,7,14,224,equal,false,\n");
  const auto j = run({"--no-cache", "table", "--g", "2", "--r", "2,3", "--p", "5"}).json();
  CHECK(j["details"]["rows"].size() == 2);
}

TEST_CASE("determinism: stable section is byte identical") {
  const std::vector<std::string> args = {"--no-cache", "dormant", "--p", "11", "--r", "3", "--g", "2"};
  const auto a = run(args).json();
  const auto b = run(args).json();
  CHECK(stable(a).dump() == stable(b).dump());
  for (const auto& v : {a, b}) {
    // No floating point anywhere in the payload.
    std::vector<Json> stack{stable(v)};
    while (!stack.empty()) {
      Json x = stack.back();
      stack.pop_back();
      CHECK_FALSE(x.is_number_float());
      if (x.is_structured())
        for (auto& c : x) stack.push_back(c);
    }
  }
}

TEST_CASE("cache: idempotence, transparency, version isolation") {
  TempDir dir;
  const std::vector<std::string> args = {"dormant", "--p", "13", "--r", "3", "--g", "3"};
  const auto cold = run_cached(dir, args);
  const auto warm = run_cached(dir, args);
  REQUIRE(cold.code == 0);
  CHECK(cold.json()["cache_hit"] == false);
  CHECK(warm.json()["cache_hit"] == true);
  CHECK(warm.json()["value"]["num"] == "14445275");
  CHECK(stable(cold.json()).dump() == stable(warm.json()).dump());

  const auto bumped = run_cached(dir, args, "99.0.0");
  CHECK(bumped.json()["cache_hit"] == false);
  CHECK(bumped.json()["value"] == cold.json()["value"]);
  CHECK(run_cached(dir, args, "99.0.0").json()["cache_hit"] == true);

  // Backends are cached separately.
  auto fargs = args;
  fargs.insert(fargs.begin(), {"--backend", "float"});
  CHECK(run_cached(dir, fargs).json()["cache_hit"] == false);
  CHECK(run_cached(dir, fargs).json()["cache_hit"] == true);

  const auto stats = run_cached(dir, {"cache", "stats"}).json();
  CHECK(stats["details"]["entries"] == 3);
  CHECK(stats["details"]["lines"] == 3);
  CHECK(stats["details"]["bytes"].get<std::uintmax_t>() == fs::file_size(dir.path / "cache.jsonl"));

  const auto cleared = run_cached(dir, {"cache", "clear"}).json();
  CHECK(cleared["details"]["entries"] == 0);
  CHECK(run_cached(dir, args).json()["cache_hit"] == false);
}

TEST_CASE("cache: the environment variable selects the directory") {
  TempDir dir;
  ::setenv("DORMANT_DEGREE_CACHE", dir.path.c_str(), 1);
  run({"dormant", "--p", "5", "--r", "2", "--g", "2"});
  ::unsetenv("DORMANT_DEGREE_CACHE");
  CHECK(fs::exists(dir.path / "cache.jsonl"));
}

TEST_CASE("cache: errors are not cached") {
  TempDir dir;
  CHECK(run_cached(dir, {"dormant", "--p", "5", "--r", "3", "--g", "2"}).code == kExitParameter);
  CHECK_FALSE(fs::exists(dir.path / "cache.jsonl"));
}

TEST_CASE("canonical_key sorts parameter names") {
  CHECK(canonical_key("dormant", {{"r", "2"}, {"p", "5"}, {"g", "2"}, {"backend", "exact"}}) ==
        "dormant:backend=exact,g=2,p=5,r=2");
  CHECK(canonical_key("x", {}) == "x:");
}

TEST_CASE("CacheStore: round trip, last write wins, corrupt lines") {
  TempDir dir;
  CacheStore store(dir.path, "1.0");
  std::mt19937_64 rng(7);
  std::vector<std::pair<std::string, exact::BigRational>> stored;
  for (int i = 0; i < 40; ++i) {
    exact::BigInt num(static_cast<long>(rng() % 2000001) - 1000000);
    num *= exact::BigInt("123456789012345678901234567890");
    exact::BigInt den(static_cast<long>(rng() % 1000) + 1);
    const exact::BigRational v(num, den);
    const std::string key = "t:i=" + std::to_string(i);
    store.lookup_store(key, "exact", [&] { return CachedValue{v, {"rotation"}, false}; });
    stored.emplace_back(key, v);
  }
  for (const auto& [key, v] : stored) {
    const auto e = store.lookup(key);
    REQUIRE(e);
    CHECK(e->value() == v);
    CHECK(e->reductions == std::vector<std::string>{"rotation"});
    CHECK(e->tool_version == "1.0");
  }

  CacheEntry e;
  e.key = "t:i=0";
  e.numerator = "42";
  e.denominator = "1";
  e.backend = "exact";
  store.store(e);
  CHECK(store.lookup("t:i=0")->value() == 42);

  {
    std::ofstream f(store.file(), std::ios::app);
    f << "not json\n";
    f << R"({"key":"t:i=1","num":"2","den":"4","backend":"exact","tool_version":"1.0","created_at":"x"})" << "\n";
    f << R"({"key":"t:i=2","num":"abc","den":"1","backend":"exact","tool_version":"1.0","created_at":"x"})" << "\n";
    f << R"({"key":"t:i=3","num":"1","den":"0","backend":"exact","tool_version":"1.0","created_at":"x"})" << "\n";
    f << R"({"key":"t:i=4","num":"1"})" << "\n";
    f << "{\"key\":\"t:i=5\",\"num\":\"7\"";  // torn tail
  }
  CacheStore reader(dir.path, "1.0");
  CHECK(reader.lookup("t:i=1")->value() == stored[1].second);
  CHECK(reader.lookup("t:i=3")->value() == stored[3].second);
  CHECK(reader.warnings().size() == 12);  // six bad lines, two lookups
  const auto st = reader.stats();
  CHECK(st.corrupt == 6);
  CHECK(st.entries == 40);
  CHECK(st.lines == 47);

  CacheStore other(dir.path, "2.0");
  CHECK_FALSE(other.lookup("t:i=1").has_value());
}

TEST_CASE("CacheStore: concurrent appends stay line-atomic") {
  TempDir dir;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      CacheStore s(dir.path, "1.0");
      for (int i = 0; i < 50; ++i) {
        CacheEntry e;
        e.key = "c:t=" + std::to_string(t) + ",i=" + std::to_string(i);
        e.numerator = std::string(200, '7');
        e.denominator = "1";
        e.backend = "exact";
        s.store(e);
      }
    });
  for (auto& th : threads) th.join();
  CacheStore s(dir.path, "1.0");
  const auto st = s.stats();
  CHECK(st.lines == 200);
  CHECK(st.corrupt == 0);
  CHECK(st.entries == 200);
}
