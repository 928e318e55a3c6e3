#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "alfem/error.hpp"
#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace alfem::tools;

namespace {

struct Options {
  std::string config;
  std::string out = "results";
  std::string level;
  std::string formulation;
  std::vector<std::string> params;
};

Config load(const std::string& command, const Options& o) {
  Config cfg = Config::defaults(command);
  if (!o.config.empty()) cfg.merge_file(o.config);
  if (!o.level.empty()) cfg.set("levels", o.level);
  if (!o.formulation.empty()) cfg.set("formulation", o.formulation);
  for (const auto& p : o.params) cfg.merge_assignment(p);
  return cfg;
}

std::ofstream open_csv(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

int convergence(const Options& o) {
  const Config cfg = load("convergence", o);
  const fs::path out = o.out;
  const ConvergenceTable table = run_convergence(cfg, out);
  auto os = open_csv(out / "convergence.csv");
  write_header(os, "convergence", cfg);
  write_convergence_csv(os, table, cfg.flag("timing"));
  write_convergence_csv(std::cout, table, cfg.flag("timing"));
  if (!table.rates_in_brackets) {
    std::cerr << "observed rates outside the configured brackets\n";
    return 2;
  }
  return 0;
}

int sweep(const Options& o) {
  const Config cfg = load("sweep", o);
  run_sweep(cfg, o.out);
  std::cout << "wrote " << (fs::path(o.out) / "sweep.csv").string() << '\n';
  return 0;
}

int paper_example(const Options& o) {
  const Config cfg = load("paper-example", o);
  PaperExampleOptions p;
  p.eps1 = cfg.number("eps1");
  p.eps2 = cfg.number("eps2");
  p.radius = cfg.number("radius");
  p.gamma0 = cfg.number("gamma0");
  p.kappa = cfg.number("kappa");
  p.newton = {cfg.number("newton_tol"), cfg.integer("newton_max_iter")};
  const fs::path out = o.out;
  const PaperExampleResult r = run_paper_example(cfg.integers("levels"), p, out);
  auto os = open_csv(out / "adhesion_example.csv");
  write_header(os, "paper-example", cfg);
  write_paper_example_csv(os, r);
  auto orders = open_csv(out / "adhesion_example_orders.csv");
  write_header(orders, "paper-example", cfg);
  orders << "quantity,order\n"
         << "max_jump_continuity," << format_number(r.jump_order) << '\n'
         << "bond_residual_cohesive," << format_number(r.bond_order) << '\n';
  write_paper_example_csv(std::cout, r);
  std::cout << "jump order " << r.jump_order << ", bond-law residual order " << r.bond_order << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alfem: coupling formulations for P1 finite elements"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "key=value parameter file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--level", o.level, "mesh levels, e.g. 8,16,32");
    sub->add_option("--formulation", o.formulation, "nitsche, multiplier, classic, cohesive or contact");
    sub->add_option("--param", o.params, "key=value override (repeatable)");
  };
  auto* conv = app.add_subcommand("convergence", "manufactured-solution convergence study");
  auto* sw = app.add_subcommand("sweep", "robin, contrast or cut-position sweep");
  auto* paper = app.add_subcommand("paper-example", "adhesion example on the half-disk cut mesh");
  for (auto* s : {conv, sw, paper}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (conv->parsed()) return convergence(o);
    if (sw->parsed()) return sweep(o);
    return paper_example(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const alfem::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const alfem::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}
