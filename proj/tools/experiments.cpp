#include "experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "alfem/condition.hpp"
#include "alfem/cutfem.hpp"
#include "alfem/error.hpp"
#include "alfem/manufactured.hpp"
#include "alfem/norms.hpp"
#include "alfem/quadrature.hpp"
#include "alfem/solver.hpp"
#include "alfem/vtk.hpp"

namespace alfem::tools {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "': not a number: '" + s + "'");
  }
}

}  // namespace

Config Config::defaults(const std::string& command) {
  Config c;
  c.values_ = {
      {"problem", "dirichlet"},   {"formulation", "nitsche"}, {"levels", "8,16,32,64"},
      {"n", "16"},                {"eps", "1"},               {"eps1", "1"},
      {"eps2", "1"},              {"kappa", "1"},             {"gamma0", "100"},
      {"gamma_kappa", "10"},      {"gamma_g", "0.1"},         {"stab_weight", "0.01"},
      {"weights", "harmonic"},    {"radius", "0.74"},         {"sweep", "robin"},
      {"robin_sides", "left,right,bottom,top"},
      {"values", ""},             {"h1_rate_min", "0.85"},    {"h1_rate_max", "1.15"},
      {"l2_rate_min", "1.7"},     {"l2_rate_max", "2.3"},     {"newton_tol", "1e-10"},
      {"newton_max_iter", "50"},  {"timing", "0"},
  };
  if (command == "paper-example") {
    c.values_["levels"] = "32,64";
    c.values_["eps1"] = "2";
    c.values_["eps2"] = "0.5";
    c.values_["kappa"] = "0.5";
  } else if (command != "convergence" && command != "sweep") {
    throw ConfigError("unknown command '" + command + "'");
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown parameter '" + key + "'");
  it->second = value;
}

void Config::merge_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    try {
      merge_assignment(line);
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path.string());
}

const std::string& Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown parameter '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const { return parse_number(key, text(key)); }

int Config::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError("parameter '" + key + "': not an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_number(key, item));
  return out;
}

std::vector<int> Config::integers(const std::string& key) const {
  std::vector<int> out;
  for (double v : numbers(key)) {
    if (v != std::floor(v) || v < 1) throw ConfigError("parameter '" + key + "': expected positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

bool Config::flag(const std::string& key) const {
  const std::string& v = text(key);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("parameter '" + key + "': expected 0 or 1");
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::string config_hash(const Config& cfg) {
  const std::string body = cfg.canonical();
  const std::string blob = "blob " + std::to_string(body.size()) + '\0' + body;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

void write_header(std::ostream& os, const std::string& command, const Config& cfg) {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  os << "# alfem " << command << '\n';
  os << "# timestamp: " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
  os << "# config_sha1: " << config_hash(cfg) << '\n';
  for (const auto& [k, v] : cfg.values()) os << "# " << k << '=' << v << '\n';
}

std::string format_number(double x) {
  if (std::isnan(x)) return {};
  std::ostringstream os;
  os << std::scientific << std::setprecision(16) << x;
  return os.str();
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

WeightScheme weight_scheme(const Config& cfg) {
  const std::string& w = cfg.text("weights");
  if (w == "harmonic") return WeightScheme::harmonic();
  if (w == "arithmetic") return WeightScheme::arithmetic();
  if (w == "geometric") return WeightScheme::geometric();
  throw ConfigError("weights must be harmonic, arithmetic or geometric");
}

NewtonOptions newton_options(const Config& cfg) {
  return {cfg.number("newton_tol"), cfg.integer("newton_max_iter")};
}

std::vector<VtkField> layout_fields(const TwoFieldLayout& layout, const Vector& u) {
  const Mesh& mesh = layout.mesh();
  std::vector<VtkField> fields;
  for (int field : {1, 2}) {
    if (!layout.has_field(field)) continue;
    VtkField f{"u" + std::to_string(field), std::vector<double>(mesh.num_vertices(), std::nan(""))};
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
      const int dof = layout.dof(field, static_cast<int>(v));
      if (dof >= 0) f.values[v] = u[dof];
    }
    fields.push_back(std::move(f));
  }
  return fields;
}

std::vector<VtkField> nodal_field(const Mesh& mesh, const Vector& u) {
  return {{"u", std::vector<double>(u.data(), u.data() + mesh.num_vertices())}};
}

// u = sin(πx)(1 - y): in contact with the obstacle g = 0 along y = 1, where ∂ₙu = -sin(πx) <= 0.
ExactSolution contact_solution() {
  constexpr double pi = 3.14159265358979323846;
  return {[](const Point& p) { return std::sin(pi * p.x()) * (1.0 - p.y()); },
          [](const Point& p) -> Point {
            return {pi * std::cos(pi * p.x()) * (1.0 - p.y()), -std::sin(pi * p.x())};
          },
          [](const Point& p) { return -pi * pi * std::sin(pi * p.x()) * (1.0 - p.y()); }};
}

struct LevelOutcome {
  ErrorNorms errors;
  int dofs = 0;
  double seconds = 0.0;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RobinParameters robin_parameters(const Config& cfg, const ExactSolution& e, double kappa) {
  RobinParameters p;
  p.eps = cfg.number("eps");
  p.kappa = kappa;
  p.gamma_kappa = cfg.number("gamma_kappa");
  p.u0 = e.u;
  p.g = e.flux(p.eps);
  p.f = e.source(p.eps);
  p.stab_weight = cfg.number("stab_weight");
  p.robin_tags.clear();
  for (const auto& side : split_list(cfg.text("robin_sides"))) {
    bool found = false;
    for (BoundaryTag t : kAllSides) {
      if (to_string(t) == side) {
        p.robin_tags.push_back(t);
        found = true;
      }
    }
    if (!found) throw ConfigError("robin_sides: unknown side '" + side + "'");
  }
  return p;
}

SparseSystem robin_system(const Mesh& mesh, const RobinParameters& p, const std::string& formulation) {
  if (formulation == "nitsche") return assemble_robin_nitsche(mesh, p);
  if (formulation == "multiplier") return assemble_robin_multiplier(mesh, p);
  if (formulation == "classic") return assemble_robin_classic(mesh, p);
  throw ConfigError("formulation must be nitsche, multiplier or classic for this problem");
}

InterfaceData interface_data(const Config& cfg, double eps1, double eps2,
                             const std::array<ExactSolution, 2>& exact) {
  InterfaceData d;
  d.eps1 = eps1;
  d.eps2 = eps2;
  d.gamma0 = cfg.number("gamma0");
  d.stab_weight = cfg.number("stab_weight");
  d.f = {exact[0].source(eps1), exact[1].source(eps2)};
  d.outer.value = {exact[0].u, exact[1].u};
  return d;
}

SparseSystem interface_system(const TwoFieldLayout& layout, const InterfaceData& d,
                              const Config& cfg) {
  const std::string& f = cfg.text("formulation");
  if (f == "nitsche") return assemble_nitsche_interface(layout, d, weight_scheme(cfg));
  if (f == "multiplier") return assemble_multiplier_interface(layout, d, true, weight_scheme(cfg));
  throw ConfigError("formulation must be nitsche or multiplier for the interface problem");
}

LevelOutcome run_level(const Config& cfg, int n, const std::filesystem::path& out_dir) {
  const std::string& problem = cfg.text("problem");
  const std::string& formulation = cfg.text("formulation");
  const std::filesystem::path vtk = out_dir / ("convergence_n" + std::to_string(n) + ".vtk");
  const Mesh mesh = build_structured_mesh(n);
  LevelOutcome out;
  if (problem == "dirichlet" || problem == "robin") {
    const ExactSolution e = sine_product();
    SparseSystem s;
    if (problem == "dirichlet") {
      if (formulation == "nitsche") {
        s = assemble_dirichlet_nitsche(mesh, cfg.number("eps"), cfg.number("gamma0"),
                                       e.source(cfg.number("eps")), e.u);
      } else if (formulation == "multiplier") {
        s = assemble_robin_multiplier(mesh, robin_parameters(cfg, e, 0.0));
      } else {
        throw ConfigError("formulation must be nitsche or multiplier for the dirichlet problem");
      }
    } else {
      s = robin_system(mesh, robin_parameters(cfg, e, cfg.number("kappa")), formulation);
    }
    const Stopwatch clock;
    const Vector u = solve_linear(s);
    out.seconds = clock.seconds();
    const int nv = static_cast<int>(mesh.num_vertices());
    out.errors = p1_errors(mesh, u.head(nv), e, cfg.number("eps"));
    out.dofs = static_cast<int>(s.size());
    write_vtk(vtk, mesh, nodal_field(mesh, u));
  } else if (problem == "interface") {
    const FittedInterface fi = fit_interface_line(mesh, 0.5);
    const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
    const double eps1 = cfg.number("eps1"), eps2 = cfg.number("eps2");
    const std::array<ExactSolution, 2> exact{sine_product_2x().scaled(1.0 / eps1),
                                             sine_product_2x().scaled(1.0 / eps2)};
    const SparseSystem s = interface_system(layout, interface_data(cfg, eps1, eps2, exact), cfg);
    const Stopwatch clock;
    const Vector u = solve_linear(s);
    out.seconds = clock.seconds();
    out.errors = layout_errors(layout, u.head(layout.num_dofs()), exact, {eps1, eps2});
    out.dofs = static_cast<int>(s.size());
    write_vtk(vtk, fi.mesh, layout_fields(layout, u));
  } else if (problem == "cut-poisson") {
    if (formulation != "nitsche") throw ConfigError("cut-poisson supports formulation nitsche only");
    const double r = cfg.number("radius");
    const CutClassification cls = classify_cut(mesh, LevelSet::half_circle(r));
    const ExactSolution e = radial_bubble(Point(0.0, 0.0), r);
    CutPoissonData d;
    d.eps = cfg.number("eps");
    d.gamma0 = cfg.number("gamma0");
    d.f = e.source(d.eps);
    d.g = e.u;
    const CutProblem p = assemble_cut_poisson(mesh, cls, d, {cfg.number("gamma_g")});
    const Stopwatch clock;
    const Vector u = solve_linear(p.system);
    out.seconds = clock.seconds();
    out.errors = layout_errors(p.layout, u, {e, e}, {d.eps, d.eps});
    out.dofs = p.layout.num_dofs();
    write_vtk(vtk, mesh, layout_fields(p.layout, u));
  } else if (problem == "contact") {
    if (formulation != "contact") throw ConfigError("the contact problem needs formulation contact");
    const ExactSolution e = contact_solution();
    BoundaryContactData d;
    d.eps = cfg.number("eps");
    d.gamma0 = cfg.number("gamma0");
    d.g = [](const Point&) { return 0.0; };
    d.f = e.source(d.eps);
    d.dirichlet_value = e.u;
    const Stopwatch clock;
    const ContactSolution s = solve_boundary_contact(mesh, d, newton_options(cfg));
    out.seconds = clock.seconds();
    if (!s.report.converged)
      throw NumericalFailure("semismooth Newton did not converge on level n=" + std::to_string(n));
    out.errors = p1_errors(mesh, s.u, e, d.eps);
    out.dofs = static_cast<int>(mesh.num_vertices());
    write_vtk(vtk, mesh, nodal_field(mesh, s.u));
  } else {
    throw ConfigError("problem must be dirichlet, robin, interface, cut-poisson or contact");
  }
  return out;
}

}  // namespace

ConvergenceTable run_convergence(const Config& cfg, const std::filesystem::path& out_dir) {
  ConvergenceTable table;
  std::filesystem::create_directories(out_dir);
  for (int n : cfg.integers("levels")) {
    LevelOutcome level;
    try {
      level = run_level(cfg, n, out_dir);
    } catch (const SingularSystem& e) {
      throw NumericalFailure("level n=" + std::to_string(n) + ": " + e.what());
    }
    ConvergenceRow row;
    row.n = n;
    row.h_max = build_structured_mesh(n).h_max();
    row.error_l2 = level.errors.l2;
    row.error_h1 = level.errors.h1;
    row.dofs = level.dofs;
    row.solve_seconds = level.seconds;
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      const double ratio = std::log(prev.h_max / row.h_max);
      row.rate_l2 = std::log(prev.error_l2 / row.error_l2) / ratio;
      row.rate_h1 = std::log(prev.error_h1 / row.error_h1) / ratio;
      table.rates_in_brackets = table.rates_in_brackets &&
                                *row.rate_h1 >= cfg.number("h1_rate_min") &&
                                *row.rate_h1 <= cfg.number("h1_rate_max") &&
                                *row.rate_l2 >= cfg.number("l2_rate_min") &&
                                *row.rate_l2 <= cfg.number("l2_rate_max");
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table, bool timing) {
  os << "n,h_max,error_l2,error_h1,rate_l2,rate_h1,dofs,solve_seconds\n";
  for (const auto& r : table.rows) {
    os << r.n << ',' << format_number(r.h_max) << ',' << format_number(r.error_l2) << ','
       << format_number(r.error_h1) << ',' << (r.rate_l2 ? format_number(*r.rate_l2) : "") << ','
       << (r.rate_h1 ? format_number(*r.rate_h1) : "") << ',' << r.dofs << ','
       << (timing ? format_number(r.solve_seconds) : "") << '\n';
  }
}

namespace {

std::vector<double> sweep_values(const Config& cfg, std::vector<double> fallback) {
  std::vector<double> v = cfg.numbers("values");
  return v.empty() ? fallback : v;
}

void robin_sweep(const Config& cfg, std::ostream& os) {
  const Mesh mesh = build_structured_mesh(cfg.integer("n"));
  const ExactSolution e = sine_product();
  os << "kappa,error_l2_nitsche,error_l2_multiplier,error_l2_classic,"
        "kappa2_nitsche,kappa2_multiplier,kappa2_classic\n";
  const int nv = static_cast<int>(mesh.num_vertices());
  for (double kappa : sweep_values(cfg, {1e-8, 1e-4, 1.0, 1e4, 1e8})) {
    const RobinParameters p = robin_parameters(cfg, e, kappa);
    std::array<double, 3> err{}, cond{};
    int k = 0;
    for (const char* f : {"nitsche", "multiplier", "classic"}) {
      if (kappa <= 0.0 && std::string(f) == "classic") {
        err[k] = cond[k] = std::nan("");
      } else {
        const SparseSystem s = robin_system(mesh, p, f);
        err[k] = p1_errors(mesh, solve_linear(s).head(nv), e, p.eps).l2;
        cond[k] = estimate_condition(s).kappa2;
      }
      ++k;
    }
    os << format_number(kappa);
    for (double v : err) os << ',' << format_number(v);
    for (double v : cond) os << ',' << format_number(v);
    os << '\n';
  }
}

void contrast_sweep(const Config& cfg, std::ostream& os) {
  const FittedInterface fi = fit_interface_line(build_structured_mesh(cfg.integer("n")), 0.5);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  os << "contrast,energy_error,relative_energy_error,kappa2\n";
  for (double c : sweep_values(cfg, {1.0, 1e2, 1e4, 1e6})) {
    const double eps1 = c * cfg.number("eps2"), eps2 = cfg.number("eps2");
    const std::array<ExactSolution, 2> exact{sine_product_2x().scaled(1.0 / eps1),
                                             sine_product_2x().scaled(1.0 / eps2)};
    const SparseSystem s = interface_system(layout, interface_data(cfg, eps1, eps2, exact), cfg);
    const Vector u = solve_linear(s).head(layout.num_dofs());
    const double err = layout_errors(layout, u, exact, {eps1, eps2}).energy;
    const double norm = layout_errors(layout, Vector::Zero(u.size()), exact, {eps1, eps2}).energy;
    os << format_number(c) << ',' << format_number(err) << ',' << format_number(err / norm) << ','
       << format_number(estimate_condition(s).kappa2) << '\n';
  }
}

}  // namespace

void run_sweep(const Config& cfg, const std::filesystem::path& out_dir) {
  const std::string& kind = cfg.text("sweep");
  if (kind != "robin" && kind != "contrast" && kind != "cut")
    throw ConfigError("sweep must be robin, contrast or cut");
  std::ostringstream body;
  try {
    if (kind == "robin") {
      robin_sweep(cfg, body);
    } else if (kind == "contrast") {
      contrast_sweep(cfg, body);
    } else {
      CutStudyOptions o;
      o.n = cfg.integer("n");
      o.offsets = sweep_values(cfg, o.offsets);
      o.gamma_g = cfg.number("gamma_g");
      o.gamma0 = cfg.number("gamma0");
      o.levels = cfg.integers("levels");
      const CutStudyReport r = run_cut_study(o);
      write_cut_study_csv(body, r);
      auto os = open_output(out_dir / "ghost_consistency.csv");
      write_header(os, "sweep", cfg);
      os << "n,gh_interpolant\n";
      for (std::size_t i = 0; i < r.levels.size(); ++i)
        os << r.levels[i] << ',' << format_number(r.gh_consistency[i]) << '\n';
    }
  } catch (const SingularSystem& e) {
    throw NumericalFailure(e.what());
  }
  auto os = open_output(out_dir / "sweep.csv");
  write_header(os, "sweep", cfg);
  os << body.str();
}

namespace {

struct InterfaceMeasures {
  double max_jump = 0.0;
  double jump_l2 = 0.0;
  double bond_max = 0.0;
  double bond_l2 = 0.0;
};

// Jump and bond residual are affine on a segment: maxima from the endpoints,
// L² norms from the 2-point Gauss rule (exact for the squares).
InterfaceMeasures interface_measures(const TwoFieldLayout& layout, const Vector& u,
                                     const InterfaceData& d, const WeightScheme& w, double kappa) {
  InterfaceMeasures m;
  for (int s = 0; s < static_cast<int>(layout.interface().size()); ++s) {
    const InterfaceSegment& seg = layout.interface()[s];
    const double flux = segment_flux_average(layout, u, s, d, w);
    for (const Point& x : {seg.p0, seg.p1}) {
      const double jump = segment_jump(layout, u, s, x).jump;
      m.max_jump = std::max(m.max_jump, std::abs(jump));
      m.bond_max = std::max(m.bond_max, std::abs(jump + kappa * flux));
    }
    const QuadratureRule q = segment_quadrature(seg.p0, seg.p1, 2);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double jump = segment_jump(layout, u, s, q.points[i]).jump;
      m.jump_l2 += q.weights[i] * jump * jump;
      m.bond_l2 += q.weights[i] * (jump + kappa * flux) * (jump + kappa * flux);
    }
  }
  m.jump_l2 = std::sqrt(m.jump_l2);
  m.bond_l2 = std::sqrt(m.bond_l2);
  return m;
}

std::vector<VtkField> status_field(const CutClassification& cls) {
  VtkField f{"status", {}};
  for (ElementStatus s : cls.status) f.values.push_back(static_cast<double>(s));
  return {f};
}

}  // namespace

PaperExampleResult run_paper_example(const std::vector<int>& levels,
                                     const PaperExampleOptions& o,
                                     const std::filesystem::path& out_dir) {
  if (levels.empty()) throw ConfigError("paper-example needs at least one level");
  std::filesystem::create_directories(out_dir);
  PaperExampleResult result;
  const WeightScheme w = WeightScheme::geometric(1.0);
  const AdhesionParameters ap{o.kappa, o.gamma0};
  std::array<std::vector<PaperExampleRow>, 3> runs;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const int n = levels[li];
    const bool finest = li + 1 == levels.size();
    const Mesh mesh = build_structured_mesh(n);
    const CutClassification cls = classify_cut(mesh, LevelSet::half_circle(o.radius));
    const TwoFieldLayout layout = make_cut_layout(mesh, cls);
    InterfaceData d;
    d.eps1 = o.eps1;
    d.eps2 = o.eps2;
    d.gamma0 = o.gamma0;
    d.set_source(step_source());
    d.outer.dirichlet = {BoundaryTag::left, BoundaryTag::bottom};

    auto finish_row = [&](int k, const char* name, const Vector& u, const char* file) {
      const InterfaceMeasures m = interface_measures(layout, u, d, w, o.kappa);
      PaperExampleRow row;
      row.run = name;
      row.n = n;
      row.max_jump = m.max_jump;
      row.jump_l2 = m.jump_l2;
      row.bond_residual = m.bond_max;
      row.bond_residual_l2 = m.bond_l2;
      row.min_multiplier = std::nan("");
      runs[k].push_back(row);
      if (finest) {
        const auto path = out_dir / file;
        write_vtk(path, mesh, layout_fields(layout, u), status_field(cls), name);
        result.fields.push_back(path);
      }
      return &runs[k].back();
    };

    try {
      finish_row(0, "continuity", solve_linear(assemble_nitsche_interface(layout, d, w)),
                 "adhesion_continuity.vtk");
      finish_row(1, "cohesive", solve_linear(assemble_cohesive(layout, d, ap, w)),
                 "adhesion_cohesive.vtk");
      const ContactSolution c = solve_adhesive_contact(layout, d, ap, w, o.newton);
      if (!c.report.converged)
        throw NumericalFailure("contact run: semismooth Newton did not converge on n=" + std::to_string(n));
      PaperExampleRow* row = finish_row(2, "contact", c.u, "adhesion_contact.vtk");
      row->kkt = verify_kkt(c.state, 1e-8);
      row->newton_iterations = c.report.iterations;
      row->min_multiplier = std::numeric_limits<double>::infinity();
      for (const auto& p : c.state.points) row->min_multiplier = std::min(row->min_multiplier, p.multiplier);
      if (finest) result.kkt = row->kkt;
    } catch (const SingularSystem& e) {
      throw NumericalFailure("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  for (const auto& r : runs) result.rows.insert(result.rows.end(), r.begin(), r.end());
  if (levels.size() >= 2) {
    const auto& a = runs[0];
    const auto& b = runs[1];
    const std::size_t m = a.size();
    const double h_ratio = static_cast<double>(levels[m - 1]) / levels[m - 2];
    result.jump_order = std::log(a[m - 2].max_jump / a[m - 1].max_jump) / std::log(h_ratio);
    result.bond_order = std::log(b[m - 2].bond_residual_l2 / b[m - 1].bond_residual_l2) / std::log(h_ratio);
  }
  return result;
}

void write_paper_example_csv(std::ostream& os, const PaperExampleResult& result) {
  os << "run,n,max_jump,jump_l2,bond_residual_max,bond_residual_l2,min_multiplier,kkt_constraint,kkt_multiplier_sign,"
        "kkt_complementarity,newton_iterations\n";
  for (const auto& r : result.rows) {
    const bool contact = r.run == "contact";
    os << r.run << ',' << r.n << ',' << format_number(r.max_jump) << ',' << format_number(r.jump_l2)
       << ',' << format_number(r.bond_residual) << ',' << format_number(r.bond_residual_l2) << ','
       << format_number(r.min_multiplier) << ','
       << (contact ? format_number(r.kkt.constraint) : "") << ','
       << (contact ? format_number(r.kkt.multiplier_sign) : "") << ','
       << (contact ? format_number(r.kkt.complementarity) : "") << ','
       << (contact ? std::to_string(r.newton_iterations) : "") << '\n';
  }
}

}  // namespace alfem::tools
