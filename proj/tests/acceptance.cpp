// Acceptance gate: one line per criterion, overall exit status reflects the
// conjunction.  Runs the library suites directly and the installed binary for
// the determinism criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "symidx/novikov.hpp"
#include "symidx/suites.hpp"

using namespace symidx;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& what) {
  std::printf("criterion %d [%s]: %s\n", number, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "acceptance_" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

int main() {
  SuiteOptions opts;  // seed 0xC0FFEE, 50 trials

  {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = suite_rotation_oracles(opts);
    const double dt = seconds_since(t0);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "rotation index oracles exact (%d/%d, %.2fs < 1s)", r.pass,
                  r.pass + r.fail, dt);
    report(1, r.fail == 0 && r.pass == 5 && dt < 1.0, msg);
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = suite_index_theorem(opts);  // 50 trials per n in {1,2,3}
    const double dt = seconds_since(t0);
    const int trials = 3 * opts.trials;
    const bool skips_ok = r.skip * 5 < trials;  // < 20%
    char msg[200];
    std::snprintf(msg, sizeof msg,
                  "doubling index identity: defect 0 on all nondegenerate draws "
                  "(fail=%d, skip=%d/%d, %.1fs < 30s)",
                  r.fail, r.skip, trials, dt);
    report(2, r.fail == 0 && skips_ok && dt < 30.0, msg);
  }

  {
    SuiteOptions o = opts;
    o.trials = 100;
    const SuiteResult r = suite_reflection(o);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "reflected boundary index equality on 100 trials (fail=%d, skip=%d)",
                  r.fail, r.skip);
    report(3, r.fail == 0, msg);
  }

  {
    const SuiteResult r = suite_diagonal(opts);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "diagonal doubles: zero signature, loop doubling, factor index "
                  "(fail=%d, skip=%d)",
                  r.fail, r.skip);
    report(4, r.fail == 0, msg);
  }

  {
    SuiteOptions o = opts;
    o.trials = 100;
    const SuiteResult r = suite_hormander(o);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "four-frame index identities, path independence, signature route "
                  "(fail=%d, skip=%d)",
                  r.fail, r.skip);
    report(5, r.fail == 0, msg);
  }

  {
    using novikov::Rational;
    bool ok = true;
    for (auto lambda : {Rational(5, 4), Rational(3, 2), Rational(2)}) {
      const auto rep = novikov::monotonicity_witness(lambda);
      ok = ok && rep.chern_value == 0 && rep.area_value == lambda - Rational(1) &&
           rep.not_monotone;
    }
    ok = ok && novikov::monotonicity_witness(Rational(3, 2)).area_value == Rational(1, 2);
    report(6, ok, "non-monotonicity witness: (chern, area) = (0, lambda-1) at 5/4, 3/2, 2");
  }

  {
    const auto rep = novikov::verify_section33();
    bool ok = rep.pass &&
              novikov::to_string(rep.output) == "[(01)+(10)]e^{1/2*(10)+h*[(10)-(01)]}";
    try {
      ok = ok && novikov::to_string(novikov::albers_delta1_pushforward(
                     novikov::parse_element("(0111)e^{1/2*(1000)}"))) ==
                     "(01)e^{1/2*(10)}";
      ok = ok && novikov::to_string(novikov::albers_delta1_pushforward(
                     novikov::parse_element("-(1110)e^{-1/2*(0001)}"))) ==
                     "(10)e^{1/2*(01)}";
    } catch (const Error&) {
      ok = false;
    }
    report(7, ok, "golden ring computation and both split pushforwards bit-exact");
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = suite_maslov_properties(opts);
    const double dt = seconds_since(t0);
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "index axioms: additivity, invariance, direct sum, reversal, "
                  "complement independence (fail=%d, %.1fs < 60s)",
                  r.fail, dt);
    report(8, r.fail == 0 && dt < 60.0, msg);
  }

  {
    const char* cli = std::getenv("SYMIDX_CLI");
    bool ok = cli != nullptr;
    std::string detail = "SYMIDX_CLI not set";
    if (ok) {
      const RunResult a = run_cli(cli, "suite --trials 6");
      const RunResult b = run_cli(cli, "suite --trials 6");
      const bool bytes_equal = a.code == 0 && b.code == 0 && a.out == b.out;

      const std::string good = write_temp(
          "rot.json",
          R"({"n": 1, "segments": [{"S": [3.14159265358979312, 0, 0, 3.14159265358979312], "d": 1.0}]})");
      const std::string bad = write_temp(
          "bad.json", R"({"n": 1, "segments": [{"S": [0, 1, 2, 0], "d": 1.0}]})");
      const int code_ok = run_cli(cli, "index --input " + good).code;
      const int code_input = run_cli(cli, "index --input " + bad).code;
      const int code_degenerate = run_cli(cli, "double --input " + good).code;
      std::remove(good.c_str());
      std::remove(bad.c_str());

      ok = bytes_equal && code_ok == 0 && code_input == 1 && code_degenerate == 2;
      char msg[200];
      std::snprintf(msg, sizeof msg,
                    "cli determinism (bytes %s) and exit codes (ok=%d input=%d "
                    "degeneracy=%d)",
                    bytes_equal ? "equal" : "DIFFER", code_ok, code_input,
                    code_degenerate);
      detail = msg;
    }
    report(9, ok, detail);
  }

  std::printf("%s\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
