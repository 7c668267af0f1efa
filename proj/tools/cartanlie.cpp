#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cartanlie/errors.hpp"
#include "cartanlie/verify.hpp"

using namespace cartanlie;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

bool config_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime:
    case ErrorCode::CharTooSmall:
    case ErrorCode::BadShape:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BoundExceeded:
      return true;
    default:
      return false;
  }
}

void print_timings(const ReportDocument& doc) {
  double total = 0;
  for (const auto& r : doc.reports) {
    std::fprintf(stderr, "%-22s %-18s %8.3fs  %s\n", r.name.c_str(), r.parameters.value("algebra", "").c_str(),
                 r.seconds, to_string(r.status));
    total += r.seconds;
  }
  std::fprintf(stderr, "total %.3fs\n", total);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded Cartan-type Lie algebras over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  std::string type;
  unsigned m = 0;
  std::vector<unsigned> n;
  std::size_t samples = 0;
  std::string out;
  std::string elem;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--type", type, "Algebra type")->check(CLI::IsMember({"W", "S", "H", "K"}));
    sub->add_option("--p", cfg.p, "Characteristic");
    sub->add_option("--m", m, "Number of variables");
    sub->add_option("--n", n, "Heights n_1,...,n_m")->delimiter(',');
    sub->add_option("--seed", cfg.seed, "PRNG seed");
    sub->add_option("--samples", samples, "Override every sample count")->check(CLI::PositiveNumber);
    sub->add_option("--max-ext", cfg.max_ext, "Largest splitting field degree");
    sub->add_option("--out", out, "Write the report here instead of stdout");
  };
  CLI::App* info = app.add_subcommand("info", "Dimensions and grading of one algebra");
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  CLI::App* witness = app.add_subcommand("witness", "Build the witness for one element");
  for (auto* sub : {info, verify, witness}) add_common(sub);
  verify->add_option("--suite", cfg.suites, "Suites to run")->delimiter(',');
  CLI::Option* elem_opt = witness->add_option("--elem", elem, "Element in the text grammar")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (!type.empty()) cfg.type = type[0];
  if (chosen->count("--m")) cfg.m = m;
  if (chosen->count("--n")) cfg.n = n;
  if (chosen->count("--samples")) cfg.samples = samples;
  if (elem_opt->count()) cfg.elem = elem;
  if (const char* cap = std::getenv("CARTANLIE_DIM_CAP")) {
    try {
      cfg.dim_cap = std::stoull(cap);
    } catch (const std::exception&) {
      std::cerr << "error: CARTANLIE_DIM_CAP is not a number: " << cap << "\n";
      return kExitConfig;
    }
  }

  ReportDocument doc;
  try {
    if (cfg.command == "info")
      doc = cmd_info(cfg);
    else if (cfg.command == "verify")
      doc = cmd_verify(cfg);
    else
      doc = cmd_witness(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return config_error(e.code()) ? kExitConfig : kExitFail;
  }

  print_timings(doc);
  for (const auto& r : doc.reports)
    if (!r.message.empty() && r.status != Status::Pass) std::cerr << r.name << ": " << r.message << "\n";

  const std::string text = doc.serialize();
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    f << text;
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitConfig;
    }
  }
  return doc.passed() ? kExitPass : kExitFail;
}
