#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "apsc/aps2d.hpp"
#include "apsc/boundary.hpp"
#include "apsc/catalog.hpp"
#include "apsc/conditions.hpp"
#include "apsc/error.hpp"
#include "apsc/fem3d.hpp"
#include "apsc/report.hpp"
#include "apsc/table1.hpp"
#include "apsc/vtk_io.hpp"

namespace apsc::cli {

namespace {

struct Globals {
  double grid_max = 10.0;
  int grid_n = 100;
  double tol = 1e-9;
  std::uint64_t seed = 20171;
  std::string out;
  std::string format;
};

struct ModelArgs {
  std::string name;
  std::string dsl;
  std::vector<std::string> params;
  bool incompressible = false;
};

struct Solve2DArgs {
  ModelArgs model;
  int nx = 65;
  int ny = 65;
  std::string bc = kDefaultBoundary;
  double amplitude = kDefaultAmplitude;
  std::vector<double> affine;
  bool best_effort = false;
  int max_iterations = 200;
  int threads = 1;
};

struct Solve3DArgs {
  ModelArgs model;
  int n = 9;
  std::string bc = kDefaultBoundary;
  double amplitude = kDefaultAmplitude;
  bool quasi_incompressible = false;
  double kappa_ratio = 1e4;
  std::string ends = "periodic";
  int load_steps = 4;
  int threads = 1;
  std::string slice;
};

struct CounterArgs {
  double mu = 1.0;
  double alpha = 0.95;
  bool bisect = false;
};

void add_model_options(CLI::App* cmd, ModelArgs& m, bool positional_required) {
  auto* pos = cmd->add_option("model", m.name, "Catalog model name (see `table1`) or pucci");
  if (positional_required) pos->required();
  cmd->add_option("--dsl", m.dsl, "Energy expression in I1, I2, I3 and parameters");
  cmd->add_option("--param", m.params, "Parameter override key=value (repeatable)");
  cmd->add_flag("--incompressible", m.incompressible, "Treat a --dsl energy as incompressible");
}

ParamTable parse_params(const std::vector<std::string>& items) {
  ParamTable t;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw std::invalid_argument("--param value is not a number: '" + item + "'");
    t[item.substr(0, eq)] = v;
  }
  return t;
}

EnergyModel resolve_model(const ModelArgs& a) {
  const ParamTable params = parse_params(a.params);
  if (!a.dsl.empty()) {
    if (!a.name.empty()) throw std::invalid_argument("give either a model name or --dsl, not both");
    return make_dsl_energy(a.dsl, params,
                           a.incompressible ? Compressibility::IncompressibleOnly
                                            : Compressibility::Compressible);
  }
  if (a.name.empty()) throw std::invalid_argument("a model name or --dsl is required");
  EnergyModel m = find_model(a.name);
  return params.empty() ? m : m.with_params(params);
}

RGrid grid_of(const Globals& g) { return make_grid(g.grid_max, g.grid_n, g.grid_n); }

/// Output sink: --out file when given, else `fallback`.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string resolve_format(const Globals& g, const char* fallback) {
  return g.format.empty() ? fallback : g.format;
}

std::string comment_block(const std::string& text) {
  std::ostringstream o;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) o << "# " << line << '\n';
  return o.str();
}

int cmd_check(const Globals& g, const ModelArgs& a, const std::string& config, std::ostream& out) {
  const EnergyModel m = resolve_model(a);
  CheckOptions opt;
  opt.grid = grid_of(g);
  opt.tol = g.tol;
  opt.aps_plus.seed = g.seed;
  const ConditionReport r = run_all_checks(m, opt);
  const std::string fmt = resolve_format(g, "text");
  if (fmt == "vtk") throw std::invalid_argument("check writes csv or text");
  Sink sink(g.out, out);
  sink.get() << (fmt == "csv" ? report_csv(r, config) : report_text(r, config));
  return r.any_fail() ? kCheckFailed : kOk;
}

int cmd_table1(const Globals& g, const std::string& config, std::ostream& out) {
  const auto rows = table1(grid_of(g), g.tol);
  const std::string fmt = resolve_format(g, "text");
  if (fmt == "vtk") throw std::invalid_argument("table1 writes csv or text");
  Sink sink(g.out, out);
  sink.get() << comment_block(config);
  sink.get() << (fmt == "csv" ? table1_csv(rows) : format_table1(rows));
  for (const auto& r : rows)
    if (!r.match()) return kCheckFailed;
  return kOk;
}

int cmd_counterexample(const Globals& g, const CounterArgs& c, const std::string& config,
                       std::ostream& out) {
  const EnergyModel m = pucci_energy(c.mu, c.alpha);
  const RGrid grid = grid_of(g);
  ConditionReport r;
  r.model = m.name();
  r.params = m.params();
  r.grid = grid.describe();
  r.seed = g.seed;
  r.tol = g.tol;
  r.verdicts.push_back(empirical_on_path(m, grid, g.tol));

  const ReferenceState ref = reference_state(m);
  Verdict rv;
  rv.condition = "reference";
  rv.value = ref.residual_stress;
  rv.fitted = ref.shear_modulus;
  const bool ref_ok =
      std::abs(ref.residual_stress) < 1e-12 && std::abs(ref.shear_modulus - c.mu) < 1e-12;
  rv.status = ref_ok ? Status::Pass : Status::Fail;
  char buf[128];
  std::snprintf(buf, sizeof buf, "residual stress %.3g, shear modulus %.15g (expected %.15g)",
                ref.residual_stress, ref.shear_modulus, c.mu);
  rv.detail = buf;
  r.verdicts.push_back(rv);
  r.verdicts.push_back(check_aps2(m, grid, g.tol));

  if (c.bisect) {
    const double a = alpha_threshold_bisect(c.mu, grid, g.tol);
    Verdict bv;
    bv.condition = "alpha-threshold";
    bv.value = a;
    bv.fitted = 8.0 / 9.0;
    bv.status = std::abs(a - 8.0 / 9.0) < 1e-4 ? Status::Pass : Status::Fail;
    std::snprintf(buf, sizeof buf, "APS2 lost for alpha > %.8f (8/9 = %.8f)", a, 8.0 / 9.0);
    bv.detail = buf;
    r.verdicts.push_back(bv);
  }
  const std::string fmt = resolve_format(g, "text");
  if (fmt == "vtk") throw std::invalid_argument("counterexample writes csv or text");
  Sink sink(g.out, out);
  sink.get() << (fmt == "csv" ? report_csv(r, config) : report_text(r, config));
  return r.any_fail() ? kCheckFailed : kOk;
}

BoundaryFn boundary_of(const std::string& bc, double amplitude, const std::vector<double>& affine) {
  if (!affine.empty()) return affine_boundary(affine[0], affine[1], affine[2]);
  return parse_boundary(bc, amplitude);
}

int cmd_solve2d(const Globals& g, const Solve2DArgs& s, const std::string& config,
                std::ostream& out) {
  const EnergyModel m = resolve_model(s.model);
  const BoundaryFn bc = boundary_of(s.bc, s.amplitude, s.affine);
  APS2DProblem p{m, make_field(s.nx, s.ny, bc), {}};
  p.controls.strict = !s.best_effort;
  p.controls.max_iterations = s.max_iterations;
  p.controls.threads = s.threads;
  const SolveResult2D r = solve(p);

  out << comment_block(config);
  char buf[160];
  std::snprintf(buf, sizeof buf, "model %s, grid %dx%d\n", m.name().c_str(), s.nx, s.ny);
  out << buf;
  std::snprintf(buf, sizeof buf, "iterations %d\nenergy %.15g\nresidual %.3e\n", r.iterations,
                r.energy, r.residual);
  out << buf;
  if (r.best_effort) out << "best effort: model is not APS-convex\n";
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  if (!s.affine.empty()) {
    double err = 0.0;
    for (int j = 1; j < s.ny - 1; ++j)
      for (int i = 1; i < s.nx - 1; ++i)
        err = std::max(err, std::abs(r.field.values[r.field.index(i, j)] -
                                     bc(r.field.x(i), r.field.y(j))));
    std::snprintf(buf, sizeof buf, "exact affine solution: max interior error %.3e\n", err);
    out << buf;
  }

  if (!g.out.empty()) {
    const std::string fmt = resolve_format(g, "csv");
    std::ofstream f(g.out);
    if (!f) throw std::invalid_argument("cannot open output file '" + g.out + "'");
    if (fmt == "vtk") {
      write_vtk_structured_points(f, s.nx, s.ny, r.field.hx, r.field.hy, r.field.values, "u",
                                  "apsc solve2d " + m.name());
    } else {
      f << comment_block(config);
      write_field_csv(f, r.field);
    }
    out << "wrote " << g.out << '\n';
  }
  return kOk;
}

int cmd_solve3d(const Globals& g, const Solve3DArgs& s, const std::string& config,
                std::ostream& out) {
  EnergyModel m = resolve_model(s.model);
  if (s.quasi_incompressible) m = quasi_incompressible(m, s.kappa_ratio);
  if (s.ends != "periodic" && s.ends != "free")
    throw std::invalid_argument("--ends must be periodic or free");
  const HexMesh mesh =
      make_unit_cube(s.n, s.ends == "periodic" ? EndCondition::Periodic : EndCondition::Free);
  const BoundaryFn bc = parse_boundary(s.bc, s.amplitude);
  MinimizeOptions opt;
  opt.load_steps = s.load_steps;
  opt.threads = s.threads;
  const MinimizeResult r = minimize(mesh, m, bc, opt);
  const double dev = max_interior_deviation(mesh, r.disp);

  out << comment_block(config);
  char buf[160];
  std::snprintf(buf, sizeof buf, "model %s, mesh %d^3, ends %s\n", m.name().c_str(), s.n,
                s.ends.c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "newton iterations %d\nenergy %.15g\nresidual %.3e\nmax interior u_delta %.6e "
                "(%.3e x A)\n",
                r.newton_iterations, r.energy, r.residual, dev, dev / s.amplitude);
  out << buf;

  if (!g.out.empty()) {
    const std::string fmt = resolve_format(g, "vtk");
    std::ofstream f(g.out);
    if (!f) throw std::invalid_argument("cannot open output file '" + g.out + "'");
    if (fmt == "csv") {
      f << comment_block(config);
      write_slice_csv(f, mesh, r.disp);
    } else {
      write_vtk(f, mesh, r.disp, "apsc solve3d " + m.name());
    }
    out << "wrote " << g.out << '\n';
  }
  if (!s.slice.empty()) {
    std::ofstream f(s.slice);
    if (!f) throw std::invalid_argument("cannot open slice file '" + s.slice + "'");
    f << comment_block(config);
    write_slice_csv(f, mesh, r.disp);
    out << "wrote " << s.slice << '\n';
  }
  return kOk;
}

/// Global keys plus a section for the subcommand that ran.
std::string active_config(const std::string& full, const std::string& command,
                          const std::set<std::string>& commands) {
  std::ostringstream globals;
  std::ostringstream section;
  std::istringstream in(full);
  std::string line;
  std::string current;
  while (std::getline(in, line)) {
    if (line.empty() || line.ends_with("=\"\"") || line.ends_with("=\"{}\"")) continue;
    if (line[0] == '[') {
      current = line.substr(1, line.find(']') - 1);
      continue;
    }
    std::string key = line.substr(0, line.find('='));
    std::string value = line.substr(key.size());
    const auto dot0 = key.find('.');
    const bool absolute =
        dot0 != std::string::npos && commands.count(key.substr(0, dot0)) != 0;
    if (!current.empty() && !absolute) key = current + "." + key;
    const auto dot = key.find('.');
    if (dot == std::string::npos)
      globals << key << value << '\n';
    else if (key.compare(0, dot, command) == 0)
      section << key.substr(dot + 1) << value << '\n';
  }
  return globals.str() + "[" + command + "]\n" + section.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anti-plane shear conditions for isotropic hyperelastic energies", "apsc"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "TOML config file, one section per subcommand")
      ->configurable(false);

  Globals g;
  app.add_option("--grid-max", g.grid_max, "Largest shear amount R on the check grid")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-n", g.grid_n, "Linear and log point counts of the check grid")
      ->check(CLI::Range(2, 1000000));
  app.add_option("--tol", g.tol, "Relative tolerance of the sign checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed of the randomized checks");
  app.add_option("--out", g.out, "Output file")->configurable(false);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "vtk", "text"}));

  ModelArgs check_args;
  auto* check = app.add_subcommand("check", "Run every condition on one energy")->fallthrough()->configurable();
  add_model_options(check, check_args, false);

  auto* t1 = app.add_subcommand("table1", "Compare computed verdicts with the tabulated ones")
                 ->fallthrough()->configurable();

  CounterArgs counter;
  auto* ce = app.add_subcommand("counterexample", "Empirical inequalities versus APS2")
                 ->fallthrough()->configurable();
  ce->add_option("--mu", counter.mu, "Shear modulus");
  ce->add_option("--alpha", counter.alpha, "Mixing parameter in (0, 1)");
  ce->add_flag("--bisect", counter.bisect, "Bracket the alpha threshold");

  Solve2DArgs s2;
  auto* solve2d = app.add_subcommand("solve2d", "APS equilibrium on the unit square")
                      ->fallthrough()->configurable();
  add_model_options(solve2d, s2.model, false);
  solve2d->add_option("--nx", s2.nx, "Nodes along x1")->check(CLI::Range(3, 100000));
  solve2d->add_option("--ny", s2.ny, "Nodes along x2")->check(CLI::Range(3, 100000));
  solve2d->add_option("--bc", s2.bc, "Boundary expression in x1, x2, A, pi");
  solve2d->add_option("--amplitude", s2.amplitude, "Value of A in --bc");
  solve2d->add_option("--affine", s2.affine, "Affine data c1 + c2 x1 + c3 x2")
      ->expected(3);
  solve2d->add_flag("--best-effort", s2.best_effort, "Run even when APS2 fails");
  solve2d->add_option("--max-iterations", s2.max_iterations, "Newton iteration cap");
  solve2d->add_option("--threads", s2.threads, "Assembly threads (0 = hardware)");

  Solve3DArgs s3;
  auto* solve3d = app.add_subcommand("solve3d", "Unconstrained minimization on the unit cube")
                      ->fallthrough()->configurable();
  add_model_options(solve3d, s3.model, false);
  solve3d->add_option("--n", s3.n, "Nodes per edge")->check(CLI::Range(3, 200));
  solve3d->add_option("--bc", s3.bc, "Lateral height expression in x1, x2, A, pi");
  solve3d->add_option("--amplitude", s3.amplitude, "Value of A in --bc");
  solve3d->add_flag("--qi", s3.quasi_incompressible,
                    "Quasi-incompressible variant with kappa = ratio * mu");
  solve3d->add_option("--kappa-ratio", s3.kappa_ratio, "kappa / mu for --qi")
      ->check(CLI::PositiveNumber);
  solve3d->add_option("--ends", s3.ends, "periodic or free top/bottom faces");
  solve3d->add_option("--load-steps", s3.load_steps, "Boundary load increments")
      ->check(CLI::Range(1, 1000));
  solve3d->add_option("--threads", s3.threads, "Assembly threads (0 = hardware)");
  solve3d->add_option("--slice", s3.slice, "CSV slice at x3 = 0.5")->configurable(false);

  std::vector<const char*> argv{"apsc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "apsc: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  std::set<std::string> commands;
  for (const CLI::App* sub : app.get_subcommands({})) commands.insert(sub->get_name());
  const std::string config =
      active_config(app.config_to_str(true, false), active->get_name(), commands);
  try {
    if (*check) return cmd_check(g, check_args, config, out);
    if (*t1) return cmd_table1(g, config, out);
    if (*ce) return cmd_counterexample(g, counter, config, out);
    if (*solve2d) return cmd_solve2d(g, s2, config, out);
    if (*solve3d) return cmd_solve3d(g, s3, config, out);
  } catch (const SolverError& e) {
    err << "apsc: solver failed: " << e.what() << " (last residual " << e.last_residual()
        << ")\n";
    return kSolverFailed;
  } catch (const std::exception& e) {
    err << "apsc: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace apsc::cli
