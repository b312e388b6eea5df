// Copyright 2026 The cohthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using cohthermo::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"cohthermo"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("cohthermo_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("argument parsers") {
  const auto r = cohthermo::cli::parse_range("0.5:1.5:3");
  CHECK(r.lo == 0.5);
  CHECK(r.hi == 1.5);
  CHECK(r.steps == 3);
  CHECK(cohthermo::cli::parse_range("-0.25").steps == 1);
  CHECK_THROWS(cohthermo::cli::parse_range("1:2"));
  CHECK_THROWS(cohthermo::cli::parse_range("a:2:3"));
  CHECK_THROWS(cohthermo::cli::parse_range("1:2:0"));
  CHECK(cohthermo::cli::parse_dims("4x8") == std::pair<std::size_t, std::size_t>{4, 8});
  CHECK_THROWS(cohthermo::cli::parse_dims("1x8"));
  CHECK_THROWS(cohthermo::cli::parse_dims("4*8"));
  CHECK(cohthermo::cli::parse_times("0,0.5,2") == std::vector<double>{0.0, 0.5, 2.0});
  CHECK_THROWS(cohthermo::cli::parse_times("0,-1"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"jc-evolve", "--g", "-1"}).code == 2);
  CHECK(invoke({"verify-identities", "--trials", "0"}).code == 2);
  CHECK(invoke({"engine-sweep", "--kind", "fridge"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("verify-identities") {
  const fs::path d = fresh_dir("verify");
  const Result r = invoke({"verify-identities", "--trials", "20", "--dims", "2x2,3x4", "--seed", "7", "--out", d.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(d / "verify_identities.json"));
  CHECK(j["pass"] == true);
  CHECK(j["results"].size() == 2);
  CHECK(j["max_balance_residual"].get<double>() < 1e-8);
  CHECK(j["max_chain_residual"].get<double>() < 1e-9);

  const Result id = invoke({"verify-identities", "--trials", "1", "--identity", "--out", d.string()});
  CHECK(id.code == 0);
  const auto k = nlohmann::json::parse(slurp(d / "verify_identities.json"));
  CHECK(k["max_balance_residual"].get<double>() < 1e-14);

  const Result probe = invoke({"verify-identities", "--trials", "1", "--probe-energy", "10", "--out", d.string()});
  CHECK(probe.code == 2);
  CHECK(probe.err.find("OutOfRange") != std::string::npos);
}

TEST_CASE("jc-evolve") {
  const fs::path d = fresh_dir("jc");
  const Result r = invoke({"jc-evolve", "--times", "0,1,2.5", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("max |p_e_exact - p_e_closed|") != std::string::npos);
  const auto l = lines(slurp(d / "jc_evolve.csv"));
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "t,p_e_exact,p_e_closed,p_e_short,|mu|_exact,|mu|_closed,|mu|_short,xi_exact");
  CHECK(l[1].rfind("0,", 0) == 0);
  CHECK(std::stod(l[1].substr(2)) == doctest::Approx(0.3).epsilon(1e-15));

  const Result late = invoke({"jc-evolve", "--times", "5", "--out", d.string()});
  CHECK(late.code == 0);
  CHECK(lines(slurp(d / "jc_evolve.csv"))[1].find(",nan,") != std::string::npos);

  CHECK(invoke({"jc-evolve", "--times", "-1", "--out", d.string()}).code == 2);
  CHECK(invoke({"jc-evolve", "--t-max", "-3", "--out", d.string()}).code == 2);
  const Result detuned = invoke({"jc-evolve", "--omega-a", "1.3", "--times", "1", "--out", d.string()});
  CHECK(detuned.code == 2);
  CHECK(detuned.err.find("NotResonant") != std::string::npos);
  CHECK(invoke({"jc-evolve", "--omega-a", "1.3", "--times", "1", "--exact-only", "--out", d.string()}).code == 0);
}

TEST_CASE("micromaser") {
  const fs::path d = fresh_dir("maser");
  const Result r = invoke({"micromaser", "--atoms", "30", "--out", d.string()});
  CHECK(r.code == 0);
  const auto s = nlohmann::ordered_json::parse(slurp(d / "micromaser_summary.json"));
  CHECK(s["relative_gap"].get<double>() <= 0.10);
  CHECK(s["gap_defined"] == true);
  const std::vector<std::string> keys{"command", "mode", "n_atoms"};
  auto it = s.begin();
  for (const auto& k : keys) CHECK((it++).key() == k);
  CHECK(lines(slurp(d / "micromaser_ledger.csv")).size() == 31);

  CHECK(invoke({"micromaser", "--atoms", "0", "--out", d.string()}).code == 0);
  const auto empty = nlohmann::json::parse(slurp(d / "micromaser_summary.json"));
  CHECK(empty["relative_gap"].is_null());
  CHECK(empty["gap_defined"] == false);
  CHECK(lines(slurp(d / "micromaser_ledger.csv")).size() == 1);

  CHECK(invoke({"micromaser", "--atoms", "3", "--mode", "updating", "--out", d.string()}).code == 0);
  CHECK(lines(slurp(d / "micromaser_ledger.csv"))[0].find("field_drift") != std::string::npos);

  // A coarse interaction time breaks the law and is reported as a tolerance failure.
  CHECK(invoke({"micromaser", "--atoms", "5", "--g-tau", "1.0", "--out", d.string()}).code == 1);
}

TEST_CASE("engine-sweep") {
  const fs::path d = fresh_dir("engine");
  Result r = invoke({"engine-sweep", "--out", d.string()});
  CHECK(r.code == 0);
  auto l = lines(slurp(d / "engine_sweep.csv"));
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "T_h,T_c,dS_S,dC_h,dC_c,dI_h,dI_c,eta_C,eta,W,W_c,W_e");
  CHECK(l[1] == "1,0.59999999999999998,0.5,0,0,0,0,0.40000000000000002,0.40000000000000002,0.20000000000000001,0.20000000000000001,0");

  r = invoke({"engine-sweep", "--T-c", "1", "--dC-h", "-0.05:-0.01:3", "--dC-c", "-0.02", "--out", d.string()});
  CHECK(r.code == 0);
  l = lines(slurp(d / "engine_sweep.csv"));
  CHECK(l.size() == 4);

  r = invoke({"engine-sweep", "--kind", "photon", "--Gamma", "0:100:5", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(lines(slurp(d / "engine_sweep.csv"))[0] == "eta_C,Gamma,xi_h,t_h,dS_l,eta");

  r = invoke({"engine-sweep", "--T-c", "0.5:2:4", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("skipped") != std::string::npos);
}

TEST_CASE("config files and output directory precedence") {
  const fs::path d = fresh_dir("config");
  const fs::path cfg = d / "run.json";
  {
    std::ofstream os(cfg);
    os << R"({"command": "micromaser", "atoms": 4, "g_tau": 0.01, "out": ")" << (d / "from_config").string() << "\"}";
  }
  Result r = invoke({"micromaser", "--config", cfg.string(), "--atoms", "2"});
  CHECK(r.code == 0);
  CHECK(lines(slurp(d / "from_config" / "micromaser_ledger.csv")).size() == 3);
  const auto s = nlohmann::json::parse(slurp(d / "from_config" / "micromaser_summary.json"));
  CHECK(s["g_tau"].get<double>() == 0.01);

  ::setenv("COHTHERMO_OUT", (d / "from_env").string().c_str(), 1);
  r = invoke({"micromaser", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(lines(slurp(d / "from_env" / "micromaser_ledger.csv")).size() == 5);
  r = invoke({"micromaser", "--config", cfg.string(), "--out", (d / "from_flag").string()});
  CHECK(fs::exists(d / "from_flag" / "micromaser_ledger.csv"));
  ::unsetenv("COHTHERMO_OUT");

  {
    std::ofstream os(d / "bad.json");
    os << R"({"atomz": 4})";
  }
  r = invoke({"micromaser", "--config", (d / "bad.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("atomz") != std::string::npos);
  {
    std::ofstream os(d / "wrong.json");
    os << R"({"command": "jc-evolve"})";
  }
  CHECK(invoke({"micromaser", "--config", (d / "wrong.json").string()}).code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const fs::path& d : {a, b}) {
    REQUIRE(invoke({"verify-identities", "--trials", "10", "--dims", "2x3", "--seed", "11", "--out", d.string()}).code == 0);
    REQUIRE(invoke({"jc-evolve", "--steps", "21", "--out", d.string()}).code == 0);
    REQUIRE(invoke({"micromaser", "--atoms", "10", "--mode", "updating", "--out", d.string()}).code == 0);
    REQUIRE(invoke({"engine-sweep", "--dC-h", "-0.1:-0.01:4", "--dC-c", "-0.1:-0.01:4", "--out", d.string()}).code == 0);
  }
  for (const char* f : {"verify_identities.json", "jc_evolve.csv", "micromaser_ledger.csv", "micromaser_summary.json",
                        "engine_sweep.csv"}) {
    CAPTURE(f);
    CHECK(!slurp(a / f).empty());
    CHECK(slurp(a / f) == slurp(b / f));
  }
}
