#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "kslice/certificate.hpp"
#include "kslice/log.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const kslice::CommandResult& r, const std::string& out_path) {
  if (!r.err.empty()) std::cerr << r.err << (r.err.back() == '\n' ? "" : "\n");
  if (out_path.empty()) {
    std::cout << r.out;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kslice::kExitInputError;
    }
    f << r.out;
  }
  return r.exit_code;
}

int input_error(const std::string& msg) {
  std::cout << kslice::error_json("InputError", msg) << "\n";
  std::cerr << msg << "\n";
  return kslice::kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  kslice::log::init_from_env();

  CLI::App app{"Regular orbit representatives for symmetric pairs over the rationals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kslice::kToolVersion);

  std::string family;
  long p = 0;
  long q = 0;
  std::uint64_t seed = 0;
  int trials = 50;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_path;
  long gl_max = 0, o_max = 0, sp_max = 0;
  std::string input_path;

  auto add_case = [&](CLI::App* sub) {
    sub->add_option("--family", family, "gl, o or sp")->required()
        ->check(CLI::IsMember({"gl", "o", "sp"}));
    sub->add_option("--p", p)->required();
    sub->add_option("--q", q)->required();
  };

  auto* verify = app.add_subcommand("verify", "Certificate for one pair");
  add_case(verify);
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out_path);

  auto* report = app.add_subcommand("report", "Certificates for ranges of pairs");
  report->add_option("--gl-max", gl_max, "GL pairs with 1 <= q <= p <= N");
  report->add_option("--o-max", o_max, "orthogonal pairs with p in {q, q+1}, p <= N");
  report->add_option("--sp-max", sp_max, "symplectic pairs with even 2 <= q <= p <= N");
  report->add_option("--seed", seed);
  report->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  report->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  report->add_option("--out", out_path);

  auto* slice_rep = app.add_subcommand("slice-rep", "Slice point with given invariants");
  add_case(slice_rep);
  slice_rep->add_option("invariants", input_path, "JSON array of \"a/b\" strings")->required();
  slice_rep->add_option("--out", out_path);

  auto* canon = app.add_subcommand("canonicalize", "Slice representative of a matrix's orbit");
  add_case(canon);
  canon->add_option("matrix", input_path, "matrix in text format")->required();
  canon->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kslice::kExitInputError;
  }

  kslice::VerifyOptions opts;
  opts.seed = seed;
  opts.trials = trials;

  try {
    if (*report) return emit(kslice::cmd_report(gl_max, o_max, sp_max, opts, jobs), out_path);
    const kslice::Family fam = kslice::parse_family(family);
    if (*verify) return emit(kslice::cmd_verify(fam, p, q, opts), out_path);
    std::string text;
    if (!read_file(input_path, text)) return input_error("cannot read " + input_path);
    if (*slice_rep) return emit(kslice::cmd_slice_rep(fam, p, q, text), out_path);
    return emit(kslice::cmd_canonicalize(fam, p, q, text), out_path);
  } catch (const kslice::ConstraintViolation& e) {
    std::cout << kslice::error_json("ConstraintViolation", e.what()) << "\n";
    return kslice::kExitInputError;
  } catch (const std::exception& e) {
    kslice::log::error("{}", e.what());
    return kslice::kExitCaseFailed;
  }
}
