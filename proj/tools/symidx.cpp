// Command-line front end: individual index computations, the doubling and
// diagonal verifiers, formal ring pushforwards, and the full property suites.
// All output is byte-deterministic for a fixed set of flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symidx/novikov.hpp"
#include "symidx/pathspec.hpp"
#include "symidx/suites.hpp"

namespace {

using namespace symidx;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitVerification = 3;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrKind::Parse:
    case ErrKind::DimensionMismatch:
    case ErrKind::NotSymplectic:
    case ErrKind::NotAntiSymplectic:
    case ErrKind::OutOfRange:
    case ErrKind::UnknownClass:
      return kExitInput;
    case ErrKind::Mismatch:
      return kExitVerification;
    default:
      return kExitDegenerate;
  }
}

struct CommonFlags {
  std::uint64_t seed = 0xC0FFEE;
  int trials = 50;
  double tol = 1e-9;
  int grid = 4096;
  std::string input;
  std::string output;
  std::string format = "text";
  std::string flavor;
  int repeat = 1;
  bool golden = false;
};

void add_common(CLI::App* cmd, CommonFlags* f, bool with_input) {
  cmd->add_option("--seed", f->seed, "master seed for randomized draws");
  cmd->add_option("--trials", f->trials, "trials per randomized suite")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", f->tol, "tolerance for rank and signature decisions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid", f->grid, "crossing-scan grid resolution")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", f->format, "text | records")
      ->check(CLI::IsMember({"text", "records"}));
  cmd->add_option("--output", f->output, "write the report to this path");
  if (with_input) cmd->add_option("--input", f->input, "input file");
}

IndexOpts index_opts(const CommonFlags& f) { return IndexOpts{f.tol, f.grid}; }

/// Reports build in a buffer and land in one shot so --output and stdout
/// carry identical bytes.
int emit(const CommonFlags& f, const std::string& body, int code) {
  if (f.output.empty()) {
    std::fputs(body.c_str(), stdout);
  } else {
    std::ofstream out(f.output, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", f.output.c_str());
      return kExitInput;
    }
    out << body;
  }
  return code;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

void print_crossings(std::ostringstream& os, const std::vector<Crossing>& xs,
                     const std::string& format) {
  for (const Crossing& c : xs) {
    if (format == "records") {
      os << "crossing t=" << fmt_double(c.time);
      if (c.plateau) os << " t_exit=" << fmt_double(c.time_exit);
      os << " dim=" << c.dim << " contribution="
         << HalfInt::from_twice(c.contribution_twice).str() << "\n";
    } else {
      os << "  crossing at t = " << fmt_double(c.time);
      if (c.plateau) os << " .. " << fmt_double(c.time_exit);
      os << ", dim " << c.dim << ", contribution "
         << HalfInt::from_twice(c.contribution_twice).str() << "\n";
    }
  }
}

SymplecticPathSpec repeated(const SymplecticPathSpec& spec, int repeat) {
  if (repeat <= 1) return spec;
  SymplecticPathSpec out = spec;
  for (int k = 1; k < repeat; ++k)
    out.segments.insert(out.segments.end(), spec.segments.begin(), spec.segments.end());
  return out;
}

int run_index(const CommonFlags& f) {
  if (f.input.empty()) {
    std::fprintf(stderr, "error: index requires --input\n");
    return kExitInput;
  }
  const PathSpecFile file = load_pathspec(f.input);
  const SymplecticPathSpec path = repeated(file.path, f.repeat);
  std::string flavor = f.flavor;
  if (flavor.empty()) flavor = file.flavor.value_or("lagrangian");

  std::ostringstream os;
  if (flavor == "periodic") {
    const IndexReport rep = cz_periodic(path, index_opts(f));
    if (f.format == "records")
      os << "index flavor=periodic value=" << rep.value.str()
         << " crossings=" << rep.crossings.size() << "\n";
    else
      os << "index = " << rep.value.str() << " (periodic)\n";
    print_crossings(os, rep.crossings, f.format);
  } else {
    IndexReport rep;
    if (file.seed_frame) {
      rep.flavor = IndexFlavor::Lagrangian;
      rep.value = maslov_index(LagrangianPath{path, *file.seed_frame},
                               horizontal_frame(path.space.n), index_opts(f),
                               &rep.crossings);
    } else {
      rep = cz_lagrangian(path, index_opts(f));
    }
    if (f.format == "records")
      os << "index flavor=lagrangian value=" << rep.value.str()
         << " crossings=" << rep.crossings.size() << "\n";
    else
      os << "index = " << rep.value.str() << "\n";
    print_crossings(os, rep.crossings, f.format);
  }
  return emit(f, os.str(), kExitOk);
}

int run_double(const CommonFlags& f) {
  if (f.input.empty()) {
    std::fprintf(stderr, "error: double requires --input\n");
    return kExitInput;
  }
  const PathSpecFile file = load_pathspec(f.input);
  const HalfPathData h{file.path, Mat()};
  const DefectReport rep = verify_index_theorem(h, index_opts(f));
  std::ostringstream os;
  if (f.format == "records") {
    os << "double mu_plus=" << rep.mu_plus.str() << " mu_minus=" << rep.mu_minus.str()
       << " mu_loop=" << rep.mu_loop.str() << " sign_q=" << rep.q_signature
       << " defect=" << rep.defect.str() << " pass=" << (rep.pass ? 1 : 0)
       << " perturbed=" << (rep.perturbed ? 1 : 0) << "\n";
  } else {
    os << "mu_plus  = " << rep.mu_plus.str() << "\n";
    os << "mu_minus = " << rep.mu_minus.str() << "\n";
    os << "mu_loop  = " << rep.mu_loop.str() << "\n";
    os << "sign(Q)  = " << rep.q_signature << "\n";
    os << "defect   = " << rep.defect.str() << "\n";
    if (rep.perturbed) os << "note: a regularizing pre-segment was applied\n";
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return emit(f, os.str(), rep.pass ? kExitOk : kExitVerification);
}

int run_diagonal(const CommonFlags& f) {
  if (f.input.empty()) {
    std::fprintf(stderr, "error: diagonal requires --input\n");
    return kExitInput;
  }
  const PathSpecFile file = load_pathspec(f.input);
  const DiagonalReport rep = verify_diagonal(file.path, index_opts(f));
  std::ostringstream os;
  if (f.format == "records") {
    os << "diagonal sign_q=" << rep.q_signature << " mu_loop=" << rep.mu_loop.str()
       << " mu_half=" << rep.mu_half.str() << " mu_periodic=" << rep.mu_periodic.str()
       << " pass=" << (rep.pass ? 1 : 0) << "\n";
  } else {
    os << "sign(Q)     = " << rep.q_signature << "\n";
    os << "mu_loop     = " << rep.mu_loop.str() << "\n";
    os << "mu_half     = " << rep.mu_half.str() << "\n";
    os << "mu_periodic = " << rep.mu_periodic.str() << "\n";
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return emit(f, os.str(), rep.pass ? kExitOk : kExitVerification);
}

std::string suite_report(const std::vector<SuiteResult>& results, const CommonFlags& f) {
  std::ostringstream os;
  if (f.trials == 0) os << "warning: 0 trials requested; randomized suites are vacuous\n";
  int total_fail = 0;
  for (const SuiteResult& s : results) {
    total_fail += s.fail;
    if (f.format == "records") {
      os << "suite name=" << s.name << " pass=" << s.pass << " fail=" << s.fail
         << " skip=" << s.skip << "\n";
    } else {
      os << s.name << ": pass=" << s.pass << " fail=" << s.fail << " skip=" << s.skip
         << "\n";
    }
    for (const std::string& note : s.notes) {
      if (f.format == "records")
        os << "note suite=" << s.name << " text=\"" << note << "\"\n";
      else
        os << "  " << note << "\n";
    }
  }
  if (f.format != "records")
    os << (total_fail == 0 ? "ALL SUITES PASS" : "SUITE FAILURES PRESENT") << "\n";
  return os.str();
}

int run_hormander_cmd(const CommonFlags& f) {
  SuiteOptions so{f.seed, f.trials, index_opts(f)};
  const std::vector<SuiteResult> results{suite_hormander(so)};
  const bool ok = results[0].fail == 0;
  return emit(f, suite_report(results, f), ok ? kExitOk : kExitVerification);
}

int run_novikov_cmd(const CommonFlags& f) {
  std::ostringstream os;
  bool ok = true;
  if (f.golden) {
    const novikov::GoldenReport rep = novikov::verify_section33();
    ok = rep.pass;
    if (f.format == "records") {
      os << "golden pass=" << (rep.pass ? 1 : 0) << " element=\""
         << novikov::to_string(rep.output) << "\"\n";
    } else {
      os << (rep.pass ? "PASS" : "FAIL") << "\n";
      os << novikov::to_string(rep.output) << "\n";
      if (!rep.pass) os << rep.diff << "\n";
    }
  } else {
    if (f.input.empty()) {
      std::fprintf(stderr, "error: novikov requires --input or --golden\n");
      return kExitInput;
    }
    std::ifstream in(f.input);
    if (!in) fail(ErrKind::Parse, "cannot open input file: " + f.input);
    std::ostringstream buf;
    buf << in.rdbuf();
    const novikov::NovikovElement e = novikov::parse_element(buf.str());
    const novikov::NovikovElement pushed =
        e.empty() ? e : novikov::albers_delta1_pushforward(e);
    if (f.format == "records")
      os << "novikov element=\"" << novikov::to_string(pushed) << "\"\n";
    else
      os << novikov::to_string(pushed) << "\n";
  }
  return emit(f, os.str(), ok ? kExitOk : kExitVerification);
}

int run_suite_cmd(const CommonFlags& f) {
  SuiteOptions so{f.seed, f.trials, index_opts(f)};
  const std::vector<SuiteResult> results = run_all_suites(so);
  int total_fail = 0;
  for (const SuiteResult& s : results) total_fail += s.fail;
  return emit(f, suite_report(results, f), total_fail == 0 ? kExitOk : kExitVerification);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"index, doubling and formal-ring computations for piecewise-exponential "
               "symplectic paths"};
  app.require_subcommand(1);

  CommonFlags f;
  auto* c_index = app.add_subcommand("index", "index of a path-spec file");
  add_common(c_index, &f, true);
  c_index->add_option("--flavor", f.flavor, "lagrangian | periodic")
      ->check(CLI::IsMember({"lagrangian", "periodic"}));
  c_index->add_option("--repeat", f.repeat, "traverse the path this many times")
      ->check(CLI::PositiveNumber);

  auto* c_double = app.add_subcommand("double", "verify the doubling index identity");
  add_common(c_double, &f, true);

  auto* c_diagonal = app.add_subcommand("diagonal", "verify the diagonal doubling laws");
  add_common(c_diagonal, &f, true);

  auto* c_horm = app.add_subcommand("hormander", "randomized four-Lagrangian identities");
  add_common(c_horm, &f, false);

  auto* c_nov = app.add_subcommand("novikov", "formal ring pushforward of an element file");
  add_common(c_nov, &f, true);
  c_nov->add_flag("--golden", f.golden, "run the built-in golden computation");

  auto* c_suite = app.add_subcommand("suite", "run every verification suite");
  add_common(c_suite, &f, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_index->parsed()) return run_index(f);
    if (c_double->parsed()) return run_double(f);
    if (c_diagonal->parsed()) return run_diagonal(f);
    if (c_horm->parsed()) return run_hormander_cmd(f);
    if (c_nov->parsed()) return run_novikov_cmd(f);
    if (c_suite->parsed()) return run_suite_cmd(f);
  } catch (const symidx::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", symidx::to_string(e.kind()), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  }
  return kExitInput;
}
