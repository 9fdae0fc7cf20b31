#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "onofri/capacity.hpp"
#include "onofri/constants.hpp"
#include "onofri/errors.hpp"
#include "onofri/functional.hpp"
#include "onofri/harmonic_radius.hpp"
#include "onofri/minimizer.hpp"
#include "onofri/radial_ode.hpp"
#include "onofri/verify.hpp"

namespace onofri::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad command-line content found after CLI11 parsing (e.g. a malformed
// peak range); reported like a parse error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a command can be configured with. Unused fields keep their
// defaults.
struct RunConfig {
  std::string command;
  int dim = 0;
  double ode_tol = 1e-10;
  double quad_tol = 1e-10;
  double fit_tol = 1e-3;
  bool json = false;
  std::optional<std::string> csv;  // "-" means stdout

  std::string peaks;
  std::vector<double> L_list;
  double rho_frac = 0.0;
  std::vector<double> rho_fracs;
  std::size_t grid = 512;
  std::string grid_kind = "graded";
  int max_iters = 1000;
  double grad_tol = 1e-9;
  std::string init = "zero";
  double bubble_L = 0.5;
  double outer = 1.0;
  double inner = 0.5;
  double level = 1.0;
  std::optional<double> disk_offset;
  std::optional<double> radius;
  double inf = 0.0;
  double sup_log_radius = 0.0;
  double criterion_tol = 1e-12;
  std::string verify_level = "quick";

  void validate() const {
    require_dimension(dim);
    for (double t : {ode_tol, quad_tol, fit_tol, grad_tol})
      if (!(t > 0.0)) throw DomainError("tolerances must be positive");
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV sink: a file when a path is given, otherwise `out`.
class CsvSink {
public:
  CsvSink(const std::optional<std::string>& path, std::ostream& out) : out_(&out) {
    if (path && *path != "-") {
      file_.open(*path);
      if (!file_) throw DomainError("cannot open " + *path + " for writing");
      out_ = &file_;
    }
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) *out_ << (i ? "," : "") << cells[i];
    *out_ << "\n";
  }

private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void emit_plain(std::ostream& out, const Json& j) {
  for (const auto& [key, value] : j.items()) {
    out << key << " = ";
    if (value.is_number_float()) {
      out << num(value.get<double>());
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << "\n";
  }
}

void emit_object(const RunConfig& cfg, std::ostream& out, const Json& j) {
  if (cfg.json) {
    emit(out, j);
  } else {
    emit_plain(out, j);
  }
}

std::vector<double> parse_peaks(const std::string& text) {
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("peak range must be a:b:step");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("peak range needs step > 0 and b >= a");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw UsageError("peak range has too many points");
    for (long i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  }
  if (out.empty()) throw UsageError("no peaks given");
  return out;
}

const char* fit_name(LimitFit f) {
  switch (f) {
    case LimitFit::none: return "none";
    case LimitFit::power: return "power";
    case LimitFit::power_log: return "power_log";
    case LimitFit::power_quadratic: return "power_quadratic";
  }
  return "none";
}

MinimizeOptions minimize_options(const RunConfig& cfg) {
  MinimizeOptions o;
  o.grid_size = cfg.grid;
  o.grid_kind = cfg.grid_kind == "uniform" ? GridKind::uniform : GridKind::graded;
  o.max_iters = cfg.max_iters;
  o.grad_tol = cfg.grad_tol;
  if (cfg.init == "bubble") o.init = BubbleInit{cfg.bubble_L};
  return o;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const DimensionConstants c = bundle(cfg.dim);
  const SharpConstant s = sharp_constant(cfg.dim, cfg.quad_tol);
  Json j;
  j["n"] = c.n;
  j["omega"] = c.omega;
  j["alpha"] = c.alpha;
  j["c_crit"] = c.c_crit;
  j["beta"] = c.beta;
  j["quant_mass"] = c.quant_mass;
  j["sharp_quadrature"] = s.by_quadrature;
  j["sharp_closed_form"] = s.by_closed_form;
  emit_object(cfg, out, j);
  return kOk;
}

int cmd_branch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> peaks = parse_peaks(cfg.peaks);
  const SolutionBranch b = scan_branch(cfg.dim, peaks, cfg.ode_tol);
  CsvSink csv(cfg.csv, out);
  csv.row({"peak_v", "lambda", "mass", "peak_u", "energy_J", "pohozaev_residual", "epsilon",
           "farfield_slope"});
  for (const BranchPoint& p : b.points) {
    const BubbleRescaling r = rescale_to_bubble(p);
    double slope = std::nan("");
    const double hi = std::min(50.0, 0.5 / r.epsilon);
    if (r.in_blowup_regime && hi >= 10.0) {
      try {
        slope = farfield_slope(p, 5.0, hi);
      } catch (const InsufficientDataError&) {
      }
    }
    csv.row({num(p.peak_v), num(p.lambda), num(p.mass), num(p.peak_u), num(p.energy_J),
             num(p.pohozaev_residual), num(r.epsilon), num(slope)});
  }
  for (const PointFailure& f : b.failures) err << "peak " << num(f.peak) << " failed: " << f.message << "\n";
  return b.failures.empty() ? kOk : kNumericalError;
}

int cmd_bubble_limit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.L_list.empty()) throw UsageError("--L needs at least one value");
  const ConcentrationLimit lim = concentration_limit(cfg.dim, cfg.L_list, cfg.quad_tol);
  const double sharp = sharp_constant_closed_form(cfg.dim);
  const bool within = std::abs(lim.extrapolated - sharp) <= cfg.fit_tol;
  if (cfg.json) {
    Json j;
    j["n"] = cfg.dim;
    j["L"] = lim.L;
    j["J_values"] = lim.values;
    j["extrapolated"] = lim.extrapolated;
    j["sharp_constant"] = sharp;
    j["fit"] = fit_name(lim.fit);
    j["reliable"] = lim.reliable;
    j["within_fit_tol"] = within;
    j["note"] = lim.note;
    emit(out, j);
  } else {
    CsvSink csv(cfg.csv, out);
    csv.row({"L", "J_value", "gap_to_sharp"});
    for (std::size_t i = 0; i < lim.L.size(); ++i)
      csv.row({num(lim.L[i]), num(lim.values[i]), num(lim.values[i] - sharp)});
    err << "extrapolated " << num(lim.extrapolated) << " (" << fit_name(lim.fit)
        << (lim.reliable ? "" : ", unreliable") << "), sharp constant " << num(sharp) << "\n";
  }
  return kOk;
}

int cmd_minimize(const RunConfig& cfg, std::ostream& out) {
  const double rho = cfg.rho_frac * bundle(cfg.dim).c_crit;
  const MinimizeResult r = minimize_subcritical(cfg.dim, rho, minimize_options(cfg));
  if (cfg.csv) {
    CsvSink csv(cfg.csv, out);
    csv.row({"r", "u"});
    for (std::size_t i = 0; i < r.profile.size(); ++i)
      csv.row({num(r.profile.nodes[i]), num(r.profile.values[i])});
  }
  if (!cfg.csv || *cfg.csv != "-") {
    Json j;
    j["n"] = cfg.dim;
    j["rho"] = rho;
    j["rho_frac"] = cfg.rho_frac;
    j["J_value"] = r.J_value;
    j["el_residual"] = r.el_residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["peak"] = r.peak;
    j["lambda"] = r.lambda;
    j["boundary_flux"] = r.boundary_flux;
    j["grid_size"] = cfg.grid;
    emit_object(cfg, out, j);
  }
  return r.converged ? kOk : kNumericalError;
}

int cmd_blowup_trace(const RunConfig& cfg, std::ostream& out) {
  if (cfg.rho_fracs.empty()) throw UsageError("--rho-fracs needs at least one value");
  const double C = bundle(cfg.dim).c_crit;
  std::vector<double> rhos;
  for (double f : cfg.rho_fracs) rhos.push_back(f * C);
  const auto trace = trace_blowup(cfg.dim, rhos, minimize_options(cfg));
  bool all = true;
  for (const auto& t : trace) all = all && t.converged;
  if (cfg.json) {
    Json j;
    j["n"] = cfg.dim;
    j["sharp_constant"] = sharp_constant_closed_form(cfg.dim);
    Json rows = Json::array();
    for (std::size_t i = 0; i < trace.size(); ++i) {
      Json r;
      r["rho_frac"] = cfg.rho_fracs[i];
      r["rho"] = trace[i].rho;
      r["peak"] = trace[i].peak;
      r["mass"] = trace[i].mass;
      r["epsilon"] = trace[i].epsilon;
      r["J_value"] = trace[i].J_value;
      r["el_residual"] = trace[i].el_residual;
      r["converged"] = trace[i].converged;
      rows.push_back(r);
    }
    j["records"] = rows;
    emit(out, j);
  } else {
    CsvSink csv(cfg.csv, out);
    csv.row({"rho_frac", "rho", "peak", "mass", "epsilon", "J_value", "el_residual", "converged"});
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& t = trace[i];
      csv.row({num(cfg.rho_fracs[i]), num(t.rho), num(t.peak), num(t.mass), num(t.epsilon),
               num(t.J_value), num(t.el_residual), t.converged ? "1" : "0"});
    }
  }
  return all ? kOk : kNumericalError;
}

int cmd_capacity(const RunConfig& cfg, std::ostream& out) {
  const AnnulusSpec spec{cfg.dim, cfg.outer, cfg.inner, cfg.level};
  const double cap = annulus_capacity(spec);
  Json j;
  j["n"] = cfg.dim;
  j["outer"] = cfg.outer;
  j["inner"] = cfg.inner;
  j["level"] = cfg.level;
  j["capacity"] = cap;
  j["modulus"] = n_modulus(cfg.dim, cap);
  j["potential_energy"] = cap * std::pow(cfg.level, cfg.dim);
  j["potential_energy_quadrature"] = capacity_potential_energy(spec, cfg.quad_tol);
  emit_object(cfg, out, j);
  return kOk;
}

DomainSpec domain_from(const RunConfig& cfg) {
  if (cfg.disk_offset && cfg.radius)
    throw UsageError("give either --disk-offset or --radius, not both");
  if (cfg.disk_offset) {
    if (cfg.dim != 2) throw DomainError("the disk with an interior point is two-dimensional");
    return DomainSpec::disk(*cfg.disk_offset);
  }
  return DomainSpec::ball(cfg.dim, cfg.radius.value_or(1.0));
}

Json robin_json(const RunConfig& cfg, const DomainSpec& d) {
  const RobinData r = robin_data(d);
  Json j;
  j["n"] = cfg.dim;
  j["domain"] = d.kind == DomainSpec::Kind::disk ? "disk" : "ball";
  j["disk_offset"] = d.kind == DomainSpec::Kind::disk ? d.offset : 0.0;
  j["radius"] = d.kind == DomainSpec::Kind::ball ? d.radius : 1.0;
  j["green_singular_coeff"] = r.green_singular_coeff;
  j["robin"] = r.robin;
  j["harmonic_radius"] = r.harmonic_radius;
  return j;
}

int cmd_harmonic_radius(const RunConfig& cfg, std::ostream& out) {
  emit_object(cfg, out, robin_json(cfg, domain_from(cfg)));
  return kOk;
}

int cmd_concentration_level(const RunConfig& cfg, std::ostream& out) {
  const DomainSpec d = domain_from(cfg);
  Json j = robin_json(cfg, d);
  j["sharp_constant"] = sharp_constant_closed_form(cfg.dim);
  j["concentration_level"] = concentration_level(cfg.dim, d);
  emit_object(cfg, out, j);
  return kOk;
}

int cmd_criterion(const RunConfig& cfg, std::ostream& out) {
  const Verdict v = existence_criterion(cfg.dim, cfg.inf, cfg.sup_log_radius, cfg.criterion_tol);
  Json j;
  j["n"] = cfg.dim;
  j["candidate_inf"] = cfg.inf;
  j["sup_log_radius"] = cfg.sup_log_radius;
  j["bound"] = sharp_constant_closed_form(cfg.dim) - cfg.dim * cfg.sup_log_radius;
  j["verdict"] = to_string(v);
  emit_object(cfg, out, j);
  return kOk;
}

int cmd_pohozaev(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> peaks = parse_peaks(cfg.peaks);
  const SolutionBranch b = scan_branch(cfg.dim, peaks, cfg.ode_tol);
  if (cfg.json) {
    Json rows = Json::array();
    for (const auto& p : b.points) {
      const PohozaevSides s = pohozaev_sides(p);
      Json r;
      r["peak_v"] = p.peak_v;
      r["mass"] = p.mass;
      r["lhs"] = s.lhs;
      r["rhs"] = s.rhs;
      r["residual"] = p.pohozaev_residual;
      rows.push_back(r);
    }
    Json j;
    j["n"] = cfg.dim;
    j["ode_tol"] = cfg.ode_tol;
    j["points"] = rows;
    emit(out, j);
  } else {
    CsvSink csv(cfg.csv, out);
    csv.row({"peak_v", "mass", "lhs", "rhs", "residual"});
    for (const auto& p : b.points) {
      const PohozaevSides s = pohozaev_sides(p);
      csv.row({num(p.peak_v), num(p.mass), num(s.lhs), num(s.rhs), num(p.pohozaev_residual)});
    }
  }
  for (const PointFailure& f : b.failures) err << "peak " << num(f.peak) << " failed: " << f.message << "\n";
  return b.failures.empty() ? kOk : kNumericalError;
}

int cmd_verify_all(const RunConfig& cfg, std::ostream& out) {
  const VerifyLevel level = cfg.verify_level == "full" ? VerifyLevel::full : VerifyLevel::quick;
  const VerifyReport report = verify_all(cfg.dim, level);
  if (cfg.json) {
    Json j;
    j["n"] = report.n;
    j["level"] = cfg.verify_level;
    j["all_passed"] = report.all_passed();
    Json rows = Json::array();
    for (const auto& c : report.checks) {
      Json r;
      r["id"] = c.id;
      r["name"] = c.name;
      r["passed"] = c.passed;
      r["measured"] = c.measured;
      r["target"] = c.target;
      r["tolerance"] = c.tolerance;
      r["seconds"] = c.seconds;
      r["detail"] = c.detail;
      rows.push_back(r);
    }
    j["checks"] = rows;
    emit(out, j);
  } else {
    for (const auto& c : report.checks) {
      char head[96];
      std::snprintf(head, sizeof head, "[%s] %2d ", c.passed ? "PASS" : "FAIL", c.id);
      out << head << c.name << ": measured " << num(c.measured) << ", target " << num(c.target)
          << ", tolerance " << num(c.tolerance) << " | " << c.detail << "\n";
    }
    out << (report.all_passed() ? "all checks passed" : "some checks failed") << "\n";
  }
  return report.all_passed() ? kOk : kNumericalError;
}

// Flat key=value config file (read with CLI11's INI reader) turned into
// --key=value tokens for the chosen subcommand. They are placed before the
// user's flags; every option takes the last value, so flags win.
std::vector<std::string> expand_config(const std::string& path, const CLI::App* sub) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> tokens;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    if (item.name != "command" && sub->get_option_no_throw("--" + item.name) != nullptr)
      tokens.push_back("--" + item.name + "=" + value);
  }
  return tokens;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical laboratory for the n-Laplacian mean field equation on the unit ball",
               "onofri_lab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value file; command-line flags override it");  // consumed before parsing; listed for --help

  auto add_dim = [&](CLI::App* s) {
    s->add_option("--dim", cfg.dim, "dimension n >= 2")->required();
  };
  auto add_csv = [&](CLI::App* s, const char* what) {
    s->add_option("--csv", cfg.csv, what)->expected(0, 1)->default_str("-");
  };

  CLI::App* constants = app.add_subcommand("constants", "dimensional constants and the sharp constant");
  add_dim(constants);
  constants->add_flag("--json", cfg.json, "emit JSON");
  constants->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");

  CLI::App* branch = app.add_subcommand("branch", "shooting scan of the mean-field branch (CSV)");
  add_dim(branch);
  branch->add_option("--peaks", cfg.peaks, "a:b:step or comma list of v(0)")->required();
  branch->add_option("--tol", cfg.ode_tol, "ODE tolerance");
  add_csv(branch, "CSV output path (default stdout)");

  CLI::App* limit = app.add_subcommand("bubble-limit", "J_{C_n}(Phi_L) and its L -> 0 limit");
  add_dim(limit);
  limit->add_option("--L", cfg.L_list, "decreasing scales in (0, 1]")->delimiter(',')->required();
  limit->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  limit->add_option("--fit-tol", cfg.fit_tol, "tolerance for the limit against C(n)");
  limit->add_flag("--json", cfg.json, "emit JSON");
  add_csv(limit, "CSV output path (default stdout)");

  CLI::App* minimize = app.add_subcommand("minimize", "direct minimization of J_rho");
  add_dim(minimize);
  minimize->add_option("--rho-frac", cfg.rho_frac, "rho / C_n in (0, 1)")->required();
  minimize->add_option("--grid", cfg.grid, "node count");
  minimize->add_option("--grid-kind", cfg.grid_kind)->check(CLI::IsMember({"graded", "uniform"}));
  minimize->add_option("--max-iters", cfg.max_iters, "Newton iterations per stage");
  minimize->add_option("--grad-tol", cfg.grad_tol, "Euler-Lagrange residual tolerance");
  minimize->add_option("--init", cfg.init)->check(CLI::IsMember({"zero", "bubble"}));
  minimize->add_option("--bubble-L", cfg.bubble_L, "scale of the bubble initial guess");
  minimize->add_flag("--json", cfg.json, "emit JSON summary");
  add_csv(minimize, "write the profile (r, u) as CSV");

  CLI::App* trace = app.add_subcommand("blowup-trace", "minimizers along rho -> C_n");
  add_dim(trace);
  trace->add_option("--rho-fracs", cfg.rho_fracs, "increasing fractions of C_n")
      ->delimiter(',')
      ->required();
  trace->add_option("--grid", cfg.grid, "node count");
  trace->add_option("--max-iters", cfg.max_iters, "Newton iterations per stage");
  trace->add_option("--grad-tol", cfg.grad_tol, "Euler-Lagrange residual tolerance");
  trace->add_flag("--json", cfg.json, "emit JSON");
  add_csv(trace, "CSV output path (default stdout)");

  CLI::App* capacity = app.add_subcommand("capacity", "n-capacity of a concentric annulus");
  add_dim(capacity);
  capacity->add_option("--outer", cfg.outer, "outer radius")->required();
  capacity->add_option("--inner", cfg.inner, "inner radius")->required();
  capacity->add_option("--level", cfg.level, "potential value on the inner ball");
  capacity->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  capacity->add_flag("--json", cfg.json, "emit JSON");

  CLI::App* hr = app.add_subcommand("harmonic-radius", "Robin function and harmonic radius");
  hr->add_option("--dim", cfg.dim, "dimension (default 2)");
  hr->add_option("--disk-offset", cfg.disk_offset, "|x0| in the unit disk (n = 2)");
  hr->add_option("--radius", cfg.radius, "ball radius, x0 at the center");
  hr->add_flag("--json", cfg.json, "emit JSON");

  CLI::App* level = app.add_subcommand("concentration-level", "C(n) - n ln(harmonic radius)");
  add_dim(level);
  level->add_option("--disk-offset", cfg.disk_offset, "|x0| in the unit disk (n = 2)");
  level->add_option("--radius", cfg.radius, "ball radius, x0 at the center");
  level->add_flag("--json", cfg.json, "emit JSON");

  CLI::App* criterion = app.add_subcommand("criterion", "sufficient condition for an extremal");
  add_dim(criterion);
  criterion->add_option("--inf", cfg.inf, "candidate infimum")->required();
  criterion->add_option("--sup-log-radius", cfg.sup_log_radius, "sup of ln(harmonic radius)")
      ->required();
  criterion->add_option("--tol", cfg.criterion_tol, "equality tolerance");
  criterion->add_flag("--json", cfg.json, "emit JSON");

  CLI::App* pohozaev = app.add_subcommand("pohozaev-check", "Pohozaev identity on branch points");
  add_dim(pohozaev);
  pohozaev->add_option("--peaks", cfg.peaks, "a:b:step or comma list of v(0)")->required();
  pohozaev->add_option("--tol", cfg.ode_tol, "ODE tolerance");
  pohozaev->add_flag("--json", cfg.json, "emit JSON");
  add_csv(pohozaev, "CSV output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify-all", "run every acceptance check for one n");
  add_dim(verify);
  verify->add_option("--level", cfg.verify_level)->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--json", cfg.json, "emit JSON report");

  cfg.dim = 0;
  std::vector<std::string> args;
  try {
    // Locate --config and the subcommand before the real parse.
    // The --config tokens are consumed here and dropped from the arguments.
    std::string command;
    std::size_t command_pos = 0;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
      const std::string& a = args_in[i];
      if (a == "--config" && i + 1 < args_in.size()) {
        config_path = args_in[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        config_path = a.substr(9);
      } else {
        if (command.empty() && app.get_subcommand_no_throw(a) != nullptr) {
          command = a;
          command_pos = rest.size();
        }
        rest.push_back(a);
      }
    }
    args = std::move(rest);
    if (!config_path.empty()) {
      std::string from_file;
      {
        std::ifstream probe(config_path);
        if (!probe) throw UsageError("cannot read config file " + config_path);
        for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(probe)) {
          if (item.name == "command" && !item.inputs.empty()) from_file = item.inputs.front();
        }
      }
      if (command.empty() && !from_file.empty()) {
        if (app.get_subcommand_no_throw(from_file) == nullptr)
          throw UsageError("config names unknown command '" + from_file + "'");
        command = from_file;
        args.insert(args.begin(), command);
        command_pos = 0;
      }
      if (!command.empty()) {
        const auto tokens = expand_config(config_path, app.get_subcommand(command));
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(command_pos) + 1, tokens.begin(),
                    tokens.end());
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (chosen == hr && cfg.dim == 0) cfg.dim = 2;

  try {
    cfg.validate();
    if (chosen == constants) return cmd_constants(cfg, out);
    if (chosen == branch) return cmd_branch(cfg, out, err);
    if (chosen == limit) return cmd_bubble_limit(cfg, out, err);
    if (chosen == minimize) return cmd_minimize(cfg, out);
    if (chosen == trace) return cmd_blowup_trace(cfg, out);
    if (chosen == capacity) return cmd_capacity(cfg, out);
    if (chosen == hr) return cmd_harmonic_radius(cfg, out);
    if (chosen == level) return cmd_concentration_level(cfg, out);
    if (chosen == criterion) return cmd_criterion(cfg, out);
    if (chosen == pohozaev) return cmd_pohozaev(cfg, out, err);
    if (chosen == verify) return cmd_verify_all(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
  err << "error: unhandled command\n";
  return kUsage;
}

}  // namespace onofri::cli
