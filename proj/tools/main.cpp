#include <CLI11.hpp>
#include <iostream>

#include "callias/commands.hpp"

using namespace callias;

namespace {

struct Flags {
  std::string potential = "hedgehog";
  int n = 0, d = 0, degree = 0, level = 1, threads = 0, kmax = 40;
  std::string radii, z, format = "text", out;
  double tol = 0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--potential", f.potential, "builtin spec (hedgehog, block:hedgehog,l=2, ...) or file path");
  app->add_option("--n", f.n, "dimension");
  app->add_option("--d", f.d, "fibre dimension check");
  app->add_option("--degree", f.degree, "sphere quadrature degree (>= 7)");
  app->add_option("--radii", f.radii, "comma-separated Lambda schedule");
  app->add_option("--z", f.z, "comma-separated z schedule");
  app->add_option("--level", f.level, "lattice level 0, 1 or 2");
  app->add_option("--format", f.format, "text, csv or json-lines");
  app->add_option("--out", f.out, "output file");
  app->add_option("--threads", f.threads, "worker cap (default: CALLIAS_THREADS or all cores)");
  app->add_option("--tol", f.tol, "tolerance override");
  app->add_option("--kmax", f.kmax, "shell count for the counterexample suite");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Callias index toolkit"};
  app.require_subcommand(1);
  Flags f;
  std::string suite;
  auto* index = app.add_subcommand("index", "index from the surface formula");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "clifford | sign | identities | kernels | counterexample")->required();
  auto* witten = app.add_subcommand("witten", "lattice Witten-regularization cross-check");
  auto* classify = app.add_subcommand("classify", "admissibility report for a potential");
  for (auto* sub : {index, verify, witten, classify}) add_common(sub, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  RunConfig cfg;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.suite = suite;
    cfg.potential = f.potential;
    cfg.n = f.n;
    cfg.d = f.d;
    cfg.degree = f.degree;
    cfg.level = f.level;
    cfg.threads = f.threads;
    cfg.kmax = f.kmax;
    cfg.out = f.out;
    cfg.format = parse_format(f.format);
    if (!f.radii.empty()) cfg.radii = parse_real_list(f.radii);
    if (!f.z.empty()) cfg.zs = parse_complex_list(f.z);
    if (f.tol != 0) cfg.tol = f.tol;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return run_command(cfg, std::cout, std::cerr);
}
