#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fairdiv/instances.hpp"
#include "json.hpp"

using namespace fairdiv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("fairdiv-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

bool contains(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

const char* kEfInstance =
    "format: fairdiv-instance/1\n"
    "agents: 2\n"
    "indivisible:\n"
    "  g1: 1 0\n"
    "  g2: 0 1\n";

const char* kEfAllocation =
    "format: fairdiv-allocation/1\n"
    "agents: 2\n"
    "indivisible: 2\n"
    "divisible: 0\n"
    "bundles:\n"
    "  a1: goods 1 | fractions\n"
    "  a2: goods 2 | fractions\n";

const char* kLowerBoundAllocation =
    "format: fairdiv-allocation/1\n"
    "agents: 2\n"
    "indivisible: 1\n"
    "divisible: 2\n"
    "bundles:\n"
    "  a1: goods 1 | fractions 1 0\n"
    "  a2: goods | fractions 0 1\n";

}  // namespace

TEST_CASE("check prints one PASS line per notion on an envy-free allocation") {
  Scratch s;
  const Run r = run({"check", s.write("i.txt", kEfInstance), s.write("a.txt", kEfAllocation), "--notion", "all"});
  CHECK(r.code == cli::kOk);
  CHECK(count_lines_starting(r.out, "PASS ") == 5);
  CHECK(count_lines_starting(r.out, "FAIL ") == 0);
}

TEST_CASE("check reports the envious pair on the lower-bound instance") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(thm34_lower_bound(Rational(1, 100))));
  const std::string alloc = s.write("a.txt", kLowerBoundAllocation);
  const Run r = run({"check", inst, alloc, "--notion", "EFM"});
  CHECK(r.code == cli::kViolation);
  CHECK(contains(r.out, "FAIL EFM"));
  CHECK(contains(r.out, "agent 2 envies agent 1"));

  const Run js = run({"check", inst, alloc, "--notion", "EFM,EF1", "--format", "structured"});
  CHECK(js.code == cli::kViolation);
  const auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc["results"].size() == 2);
  CHECK(doc["results"][0]["notion"] == "EFM");
  CHECK(doc["results"][0]["pass"] == false);
  CHECK(doc["results"][0]["witness"]["envious"] == 2);
  CHECK(doc["results"][0]["witness"]["envied"] == 1);
  CHECK(doc["results"][1]["pass"] == true);
}

TEST_CASE("usage and parse problems exit with 2") {
  Scratch s;
  const std::string inst = s.write("i.txt", kEfInstance);
  CHECK(run({"check", s.path("missing.txt"), s.path("missing2.txt")}).code == cli::kUsage);
  CHECK(run({"check", inst, s.write("bad.txt", "format: nope\n")}).code == cli::kUsage);
  CHECK(run({"check", inst, s.write("a.txt", kEfAllocation), "--notion", "EF7"}).code == cli::kUsage);
  CHECK(run({"solve", inst, "--algo", "nosuch"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  const Run bad = run({"check", s.write("broken.txt", "format: fairdiv-instance/1\nagents: 2\nindivisible:\n  g1: 1\n"),
                       s.write("a2.txt", kEfAllocation)});
  CHECK(bad.code == cli::kUsage);
  CHECK(contains(bad.err, "line 4"));
}

TEST_CASE("infeasible allocations are rejected") {
  Scratch s;
  const std::string alloc =
      "format: fairdiv-allocation/1\nagents: 2\nindivisible: 2\ndivisible: 0\nbundles:\n"
      "  a1: goods 1 | fractions\n  a2: goods 1 | fractions\n";
  CHECK(run({"check", s.write("i.txt", kEfInstance), s.write("a.txt", alloc)}).code == cli::kUsage);
}

TEST_CASE("solve with cut-and-choose reports EFXM") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(random_instance(2, 4, 2, false, 5)));
  const std::string out_path = s.path("alloc.txt");
  const Run r = run({"solve", inst, "--algo", "cutchoose", "--out", out_path});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "passes:"));
  CHECK(contains(r.out, "EFXM"));
  CHECK_FALSE(contains(r.out, "fails: EFXM"));
  CHECK(contains(r.out, "SW: "));
  CHECK(contains(r.out, "OPT: "));
  CHECK(contains(r.out, "ratio: "));
  const Run again = run({"check", inst, out_path, "--notion", "EFXM"});
  CHECK(again.code == cli::kOk);
  CHECK(contains(again.out, "PASS EFXM"));
}

TEST_CASE("solve checks algorithm preconditions") {
  Scratch s;
  const std::string unscaled = s.write("u.txt", serialize_instance(random_instance(2, 4, 0, false, 9)));
  const Run r = run({"solve", unscaled, "--algo", "ef1two"});
  CHECK(r.code == cli::kUsage);
  CHECK_FALSE(r.err.empty());
  const std::string three = s.write("t.txt", serialize_instance(random_instance(3, 3, 0, true, 9)));
  CHECK(run({"solve", three, "--algo", "cutchoose"}).code == cli::kUsage);
  const std::string scaled = s.write("s.txt", serialize_instance(random_instance(2, 5, 0, true, 9)));
  const Run ok = run({"solve", scaled, "--algo", "ef1two"});
  CHECK(ok.code == cli::kOk);
  CHECK(contains(ok.out, "PASS "));
}

TEST_CASE("solve with the absolute-welfare pipeline prints the pool and the verdict") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(random_instance(3, 5, 1, false, 17)));
  const Run r = run({"solve", inst, "--algo", "efxmabs"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "pool:"));
  CHECK(contains(r.out, "PASS (2n + 1) SW >= sum of total utilities"));
  const Run c = run({"solve", inst, "--algo", "efmcomplete"});
  CHECK(c.code == cli::kOk);
  CHECK(contains(c.out, "(complete)"));
  CHECK(contains(c.out, "PASS 2n SW >= sum of total utilities"));
}

TEST_CASE("price on the lower-bound instance") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(thm34_lower_bound(Rational(1, 100))));
  const Run low = run({"price", inst, "--notion", "EFM", "--level", "10"});
  CHECK(low.code == cli::kOk);
  CHECK(contains(low.out, "ratio: 37/25 (1.480000)"));
  CHECK(contains(low.out, "best fair: 1"));
  CHECK(contains(low.out, "10-discretized"));

  const Run over = run({"price", inst, "--notion", "EFM", "--level", "100"});
  CHECK(over.code == cli::kUsage);
  CHECK(contains(over.err, "--level"));

  const Run full = run({"price", inst, "--notion", "EFM", "--level", "100", "--budget", "1e8"});
  CHECK(full.code == cli::kOk);
  CHECK(contains(full.out, "ratio: 37/25 (1.480000)"));
  CHECK(contains(full.out, "PASS ratio <= 3/2"));
}

TEST_CASE("the budget can come from the environment") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(thm34_lower_bound(Rational(1, 100))));
  ::setenv("FAIRDIV_BUDGET", "10", 1);
  const Run r = run({"price", inst, "--notion", "EFM", "--level", "3"});
  ::unsetenv("FAIRDIV_BUDGET");
  CHECK(r.code == cli::kUsage);
  CHECK(run({"price", inst, "--notion", "EFM", "--level", "3"}).code == cli::kOk);
}

TEST_CASE("price of a single agent is one") {
  Scratch s;
  const std::string inst =
      s.write("i.txt", "format: fairdiv-instance/1\nagents: 1\nindivisible:\n  g1: 2/3\ndivisible:\n  d1: 1/3\n");
  for (const char* notion : {"EF", "EF1", "EFX", "EFM", "EFXM"}) {
    const Run r = run({"price", inst, "--notion", notion, "--level", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(contains(r.out, "ratio: 1 (1.000000)"));
  }
}

TEST_CASE("price asserts the two-agent EF1 ceiling") {
  Scratch s;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::string inst = s.write("i.txt", serialize_instance(random_instance(2, 5, 0, true, seed)));
    const Run r = run({"price", inst, "--notion", "EF1"});
    CHECK(r.code == cli::kOk);
    CHECK(contains(r.out, "PASS ratio <= 8/7"));
  }
}

TEST_CASE("price without any envy-free allocation") {
  Scratch s;
  const std::string inst = s.write("i.txt", "format: fairdiv-instance/1\nagents: 2\nindivisible:\n  g1: 1 1\n");
  CHECK(run({"price", inst, "--notion", "EF"}).code == cli::kViolation);
}

TEST_CASE("structured output parses and repeats exactly") {
  Scratch s;
  const std::string inst = s.write("i.txt", serialize_instance(random_instance(2, 3, 1, true, 3)));
  const Run a = run({"price", inst, "--notion", "EFXM", "--level", "4", "--format", "structured"});
  const Run b = run({"price", inst, "--notion", "EFXM", "--level", "4", "--format", "structured"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["command"] == "price");
  CHECK(doc.contains("ratio"));

  const Run solve = run({"solve", inst, "--algo", "efmcomplete", "--format", "structured"});
  CHECK(solve.code == cli::kOk);
  CHECK(nlohmann::json::parse(solve.out)["complete"] == true);

  const std::vector<std::string> search{"search", "--notion", "EF1", "--max-indivisible", "3", "--trials", "60",
                                        "--seed", "5", "--format", "structured"};
  const Run s1 = run(search), s2 = run(search);
  CHECK(s1.code == cli::kOk);
  CHECK(s1.out == s2.out);
  CHECK(nlohmann::json::parse(s1.out).is_object());
}

TEST_CASE("gen is deterministic and its output loads") {
  Scratch s;
  const Run a = run({"gen", "--agents", "3", "--indivisible", "4", "--divisible", "2", "--seed", "8"});
  const Run b = run({"gen", "--agents", "3", "--indivisible", "4", "--divisible", "2", "--seed", "8"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const Instance inst = parse_instance(a.out).instance;
  CHECK(inst.agents() == 3);
  CHECK(inst.is_scaled());
  const Run named = run({"gen", "--named", "table3"});
  CHECK(parse_instance(named.out).instance == table3_po_example());
  const Run eps = run({"gen", "--named", "thm34", "--eps", "1/4"});
  CHECK(parse_instance(eps.out).instance == thm34_lower_bound(Rational(1, 4)));
  CHECK(run({"gen", "--named", "thm34", "--eps", "3/4"}).code == cli::kUsage);
}

TEST_CASE("reproduce the Pareto evidence") {
  const Run r = run({"reproduce", "--bound", "po-table3"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "EFM forces both divisibles to one agent"));
  CHECK(contains(r.out, "verdict:  PASS"));
  CHECK(run({"reproduce", "--bound", "nonsense"}).code == cli::kUsage);
}

TEST_CASE("reproduce the unscaled and absolute bounds") {
  for (const char* bound : {"unscaled-2", "efxm-abs"}) {
    const Run r = run({"reproduce", "--bound", bound});
    CAPTURE(bound);
    CHECK(r.code == cli::kOk);
    CHECK(count_lines_starting(r.out, "  verdict:  PASS") >= 1);
    CHECK(count_lines_starting(r.out, "  verdict:  FAIL") == 0);
  }
}
