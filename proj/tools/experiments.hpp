#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alfem/adhesion.hpp"

namespace alfem::tools {

/// Bad command line or configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solve failed in a way the experiment cannot recover from (exit code 2).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value parameters. Every key has a default; unknown keys are rejected.
class Config {
 public:
  /// Defaults for one subcommand: convergence, sweep or paper-example.
  static Config defaults(const std::string& command);

  /// Reads `key = value` lines; `#` starts a comment.
  void merge_file(const std::filesystem::path& path);
  void merge_text(const std::string& text, const std::string& origin = "config");
  /// Accepts "key=value".
  void merge_assignment(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;
  bool flag(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  /// Sorted key=value lines.
  std::string canonical() const;

 private:
  std::map<std::string, std::string> values_;
};

/// SHA-1 of the canonical config, hashed as a git blob.
std::string config_hash(const Config& cfg);

/// Comment header: command, timestamp, config hash and every parameter.
void write_header(std::ostream& os, const std::string& command, const Config& cfg);

/// Scientific notation with 17 significant digits; empty for NaN.
std::string format_number(double x);

struct ConvergenceRow {
  int n = 0;
  double h_max = 0.0;
  double error_l2 = 0.0;
  double error_h1 = 0.0;
  std::optional<double> rate_l2;
  std::optional<double> rate_h1;
  int dofs = 0;
  double solve_seconds = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool rates_in_brackets = true;
};

/// Manufactured-solution study over `levels`. Throws NumericalFailure if a
/// Newton solve does not converge.
ConvergenceTable run_convergence(const Config& cfg, const std::filesystem::path& out_dir);

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table, bool timing);

/// One of robin, contrast or cut (key `sweep`); writes sweep.csv.
void run_sweep(const Config& cfg, const std::filesystem::path& out_dir);

struct PaperExampleOptions {
  double eps1 = 2.0;
  double eps2 = 0.5;
  double radius = 0.74;
  double gamma0 = 100.0;
  double kappa = 0.5;
  NewtonOptions newton{1e-10, 50};
};

struct PaperExampleRow {
  std::string run;
  int n = 0;
  double max_jump = 0.0;        ///< max |⟦u⟧| on Γ
  double jump_l2 = 0.0;         ///< ‖⟦u⟧‖ on Γ
  double bond_residual = 0.0;   ///< max |⟦u⟧ + κ⟨⟨ε∂ₙu⟩⟩| on Γ
  double bond_residual_l2 = 0.0;
  double min_multiplier = 0.0;
  KktReport kkt;
  int newton_iterations = 0;
};

struct PaperExampleResult {
  std::vector<PaperExampleRow> rows;
  std::vector<std::filesystem::path> fields;  ///< VTK files of the finest level
  double jump_order = 0.0;                   ///< continuity run, last two levels
  double bond_order = 0.0;                   ///< cohesive run, L² norm, last two levels
  KktReport kkt;                             ///< contact run, finest level
};

/// Continuity, cohesive and contact runs on the half-disk cut configuration.
/// Throws NumericalFailure if the contact Newton solve fails.
PaperExampleResult run_paper_example(const std::vector<int>& levels,
                                     const PaperExampleOptions& options,
                                     const std::filesystem::path& out_dir);

void write_paper_example_csv(std::ostream& os, const PaperExampleResult& result);

}  // namespace alfem::tools
