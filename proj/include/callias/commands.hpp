#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "callias/types.hpp"

namespace callias {

enum class OutputFormat { text, csv, jsonl };

struct RunConfig {
  std::string command;  // index | verify | witten | classify
  std::string suite;    // verify: clifford | sign | identities | kernels | counterexample
  std::string potential = "hedgehog";
  int n = 0;       // 0: potential default
  int d = 0;       // 0: no check
  int degree = 0;  // 0: default per n; otherwise >= 7
  std::vector<double> radii;
  std::vector<cplx> zs;
  int level = 1;
  OutputFormat format = OutputFormat::text;
  std::string out;  // empty: stdout
  int threads = 0;
  std::optional<double> tol;
  int kmax = 40;
};

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_nonconvergent = 2, exit_verification = 3 };

OutputFormat parse_format(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);

// Each command writes to os and returns an ExitCode; DomainError maps to exit_usage in run_command.
int cmd_index(const RunConfig& cfg, std::ostream& os);
int cmd_verify(const RunConfig& cfg, std::ostream& os);
int cmd_witten(const RunConfig& cfg, std::ostream& os);
int cmd_classify(const RunConfig& cfg, std::ostream& os);

// Validates cfg, opens the output, dispatches. Errors go to err.
int run_command(const RunConfig& cfg, std::ostream& default_out, std::ostream& err);

struct CheckLine {
  std::string suite;
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool informational = false;  // reported, not counted
};

// The verification suites behind cmd_verify.
std::vector<CheckLine> verify_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace callias
