// opdisk: run verification suites and sample moment images.
//
//   opdisk verify --algebra matrix:3 --suite all --seed 42 --out report.json
//   opdisk moment-image --algebra scalar --grid 9 --out image.csv
//   opdisk scalar-compare --samples 100 --out scalar.json
//
// Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
// arguments or configuration.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "opdisk/harness.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string algebra = "matrix:3";
  int samples = 100;
  std::uint64_t seed = 42;
  double tol_exact = 1e-9;
  double tol_fd = 1e-4;
  double fd_step = 1e-4;
  std::string out;
};

opdisk::SuiteConfig make_config(const CommonOptions& o) {
  opdisk::SuiteConfig c;
  c.algebra = opdisk::Algebra::parse(o.algebra);
  c.samples = o.samples;
  c.seed = o.seed;
  c.tol_exact = o.tol_exact;
  c.tol_fd = o.tol_fd;
  c.fd_step = o.fd_step;
  c.validate();
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw opdisk::Error(opdisk::ErrorCode::kConfigError, "cannot open '" + path + "' for writing");
  file << text;
}

void print_summary(const opdisk::SuiteReport& report) {
  for (const auto& c : report.checks) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.check_name << "  max_error=" << c.max_error
              << " tol=" << c.tolerance << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the operator Poincare disk"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  std::string suite_name = "all";
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  verify->add_option("--algebra", verify_opts.algebra, "matrix:N | commutative:K | scalar")->capture_default_str();
  verify->add_option("--suite", suite_name, "algebraic | differential | scalar_oracle | moment | halfspace | all")
      ->capture_default_str();
  verify->add_option("--samples", verify_opts.samples, "Samples per check")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "Base seed")->capture_default_str();
  verify->add_option("--tol-exact", verify_opts.tol_exact, "Tolerance for exact identities")->capture_default_str();
  verify->add_option("--tol-fd", verify_opts.tol_fd, "Tolerance for finite-difference checks")->capture_default_str();
  verify->add_option("--fd-step", verify_opts.fd_step, "Finite-difference step")->capture_default_str();
  verify->add_option("--out", verify_opts.out, "Output path (stdout when omitted)");
  bool quiet = false;
  verify->add_flag("--quiet", quiet, "Do not print the per-check summary to stderr");

  CommonOptions image_opts;
  image_opts.algebra = "scalar";
  int grid = 9;
  auto* image = app.add_subcommand("moment-image", "Sample restricted moment images and convexity witnesses as CSV");
  image->add_option("--algebra", image_opts.algebra, "matrix:N | commutative:K | scalar")->capture_default_str();
  image->add_option("--grid", grid, "Lattice points per axis")->capture_default_str();
  image->add_option("--seed", image_opts.seed, "Base seed")->capture_default_str();
  image->add_option("--tol-exact", image_opts.tol_exact, "Certificate tolerance")->capture_default_str();
  image->add_option("--out", image_opts.out, "Output path (stdout when omitted)");

  CommonOptions scalar_opts;
  scalar_opts.algebra = "scalar";
  auto* scalar = app.add_subcommand("scalar-compare", "Compare the general machinery with the classical disk at A = C");
  scalar->add_option("--samples", scalar_opts.samples, "Samples per check")->capture_default_str();
  scalar->add_option("--seed", scalar_opts.seed, "Base seed")->capture_default_str();
  scalar->add_option("--out", scalar_opts.out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) {
      const opdisk::SuiteReport report = opdisk::run_suite(make_config(verify_opts), opdisk::parse_suite(suite_name));
      emit(opdisk::to_json(report), verify_opts.out);
      if (!quiet) print_summary(report);
      return report.all_passed ? 0 : kExitFailed;
    }
    if (*image) {
      const auto rows = opdisk::sample_moment_image(make_config(image_opts), grid);
      emit(opdisk::to_csv(rows), image_opts.out);
      const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.certificate_pass; });
      return all ? 0 : kExitFailed;
    }
    if (*scalar) {
      const opdisk::SuiteReport report =
          opdisk::run_suite(make_config(scalar_opts), opdisk::Suite::kScalarOracle);
      emit(opdisk::to_json(report), scalar_opts.out);
      print_summary(report);
      return report.all_passed ? 0 : kExitFailed;
    }
  } catch (const opdisk::Error& e) {
    std::cerr << "opdisk: " << e.what() << '\n';
    return e.code() == opdisk::ErrorCode::kConfigError ? kExitUsage : kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "opdisk: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
