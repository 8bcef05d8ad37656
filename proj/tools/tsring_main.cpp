#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "tsring/report.hpp"

namespace {

struct Common {
  std::uint32_t p = 0, n = 0, e = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "prime p")->required();
  cmd->add_option("--n", c.n, "|D| = p^n")->required();
  cmd->add_option("--e", c.e, "|E|, a divisor of p-1")->required();
  cmd->add_option("--out", c.out, "output path (default stdout)");
}

int emit(const tsring::CommandOutput& result, const std::string& path) {
  if (path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << path << "\n";
      return tsring::kExitUsage;
    }
    f << result.text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the ring of perfect p-permutation bimodules of D x| E"};
  app.require_subcommand(1);

  Common basis_opts, table_opts, verify_opts, oracle_opts;
  std::string format = "json";
  std::string which, fields = "Q";
  tsring::VerifyOptions vopts;

  auto* basis = app.add_subcommand("basis", "list the canonical basis");
  add_common(basis, basis_opts);

  auto* table = app.add_subcommand("table", "full structure-constant table");
  add_common(table, table_opts);
  table->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "run verification checks");
  add_common(verify, verify_opts);
  verify->add_option("--which", which, "comma list of checks (default: all)");
  verify->add_option("--field", fields, "comma list of fields: Q or F<q>");
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json"}));
  verify->add_option("--scan-bound", vopts.scan_bound, "cap on primitive central idempotents in the scan");
  verify->add_option("--seed", vopts.seed, "accepted for compatibility; all computations are deterministic");
  verify->add_flag("--timing", vopts.timing, "include wall-clock timings in the report");

  auto* oracle = app.add_subcommand("oracle-check", "compare the Mackey oracle with the closed-form table");
  add_common(oracle, oracle_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tsring::kExitUsage;
  }

  try {
    if (*basis) return emit(tsring::cmd_basis(basis_opts.p, basis_opts.n, basis_opts.e), basis_opts.out);
    if (*table) return emit(tsring::cmd_table(table_opts.p, table_opts.n, table_opts.e, format), table_opts.out);
    if (*oracle) {
      tsring::VerifyOptions o;
      o.which = {"oracle"};
      return emit(tsring::cmd_verify(oracle_opts.p, oracle_opts.n, oracle_opts.e, o), oracle_opts.out);
    }
    vopts.which = tsring::split_list(which);
    vopts.fields = tsring::parse_fields(fields);
    return emit(tsring::cmd_verify(verify_opts.p, verify_opts.n, verify_opts.e, vopts), verify_opts.out);
  } catch (const tsring::Error& err) {
    std::cerr << err.what() << "\n";
    switch (err.code()) {
      case tsring::ErrorCode::BadInput:
      case tsring::ErrorCode::NotPrime:
      case tsring::ErrorCode::BadOrder:
      case tsring::ErrorCode::TwoBlocked:
      case tsring::ErrorCode::BadLevel:
        return tsring::kExitUsage;
      default:
        return tsring::kExitViolation;
    }
  }
}
