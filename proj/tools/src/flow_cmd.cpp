#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "sigmaflow/errors.hpp"
#include "sigmaflow/experiments.hpp"
#include "sigmaflow/flow.hpp"
#include "sigmaflow_cli/cli.hpp"
#include "sigmaflow_cli/config.hpp"
#include "sigmaflow_cli/csv.hpp"
#include "sigmaflow_cli/manifest.hpp"

namespace sigmaflow::cli {
namespace {

// Semantic keys shared by `flow run` and `flow sweep`, with defaults. These
// are the names accepted in --config files and as --<key> flags.
const std::map<std::string, std::string>& flow_defaults() {
  static const std::map<std::string, std::string> d{
      {"preset", "round"},      {"amp", "0.2"},
      {"ell", "1"},             {"profile-in", ""},
      {"convention", "auto"},   {"n", "5"},
      {"eps", "0.1"},           {"grid", "128"},
      {"quad-order", "200"},    {"dt", "5e-05"},
      {"dt-policy", "adaptive"}, {"scheme", "euler"},
      {"max-time", "20"},       {"residual-tol", "1e-06"},
      {"conservation-tol", "1e-08"}, {"sigma1-floor", "0"},
      {"max-halvings", "40"},
  };
  return d;
}

const char* flag_help(const std::string& key) {
  static const std::map<std::string, const char*> h{
      {"preset", "Initial profile: round, cos2, ell-family or file"},
      {"amp", "Amplitude A of u0 = A cos(2 theta) (cos2)"},
      {"ell", "Parameter of u0 = -ell s^2 (ell-family)"},
      {"profile-in", "CSV with theta,u columns on the grid nodes (file)"},
      {"convention", "How u0 enters the metric: plus (exp(2u) g0), minus (exp(-2u) g0) or auto"},
      {"n", "Sphere dimension (>= 5)"},
      {"eps", "Subcritical parameter in [0, 1)"},
      {"grid", "Number of theta collocation nodes (>= 32)"},
      {"quad-order", "Gauss-Legendre order"},
      {"dt", "Initial time step"},
      {"dt-policy", "fixed or adaptive"},
      {"scheme", "euler or heun"},
      {"max-time", "Stop time"},
      {"residual-tol", "Stationarity tolerance"},
      {"conservation-tol", "Per-unit-time F0 drift counted as a violation"},
      {"sigma1-floor", "Reject steps with min sigma_1 below this"},
      {"max-halvings", "Halvings per step before failure"},
  };
  return h.at(key);
}

struct FlowSetup {
  FlowConfig config;
  std::shared_ptr<const ConformalFactor> u0;
  Settings canonical;  // hashed content
};

// Options registered as strings so that config-file values can sit beneath
// explicitly given flags.
struct FlowOptions {
  std::map<std::string, std::shared_ptr<std::string>> values;
  std::map<std::string, CLI::Option*> options;
  std::shared_ptr<std::string> config_path = std::make_shared<std::string>();

  void add_to(CLI::App* cmd) {
    for (const auto& [key, def] : flow_defaults()) {
      values[key] = std::make_shared<std::string>(def);
      options[key] = cmd->add_option("--" + key, *values[key], flag_help(key));
    }
    cmd->add_option("--config", *config_path, "Flat key = value file; flags take precedence");
  }

  // Defaults, then config file, then explicit flags. Returns the keys that
  // were set by the user.
  Settings resolve(std::set<std::string>* explicit_keys) const {
    Settings s(flow_defaults().begin(), flow_defaults().end());
    if (!config_path->empty()) {
      for (const auto& [k, v] : read_settings_file(*config_path)) {
        if (!s.count(k)) throw UsageError("unknown config key '" + k + "'");
        s[k] = v;
        explicit_keys->insert(k);
      }
    }
    for (const auto& [k, opt] : options) {
      if (opt->count() > 0) {
        s[k] = *values.at(k);
        explicit_keys->insert(k);
      }
    }
    return s;
  }
};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Tabulated {
  std::vector<double> theta;
  std::vector<double> u;
  std::string digest;
};

// Rows of theta,u (extra columns ignored, '#' lines skipped, header required).
Tabulated read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read profile '" + path + "'");
  std::ostringstream all;
  all << in.rdbuf();
  Tabulated t;
  t.digest = fmt::format("{:016x}", fnv1a(all.str()));
  std::istringstream lines(all.str());
  std::string line;
  int theta_col = -1, u_col = -1, lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (theta_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "theta") theta_col = static_cast<int>(i);
        if (fields[i] == "u") u_col = static_cast<int>(i);
      }
      if (theta_col < 0 || u_col < 0) throw UsageError(path + ": header needs 'theta' and 'u' columns");
      continue;
    }
    const auto need = static_cast<std::size_t>(std::max(theta_col, u_col));
    if (fields.size() <= need) throw UsageError(fmt::format("{}:{}: too few columns", path, lineno));
    Settings row{{"theta", fields[theta_col]}, {"u", fields[u_col]}};
    try {
      t.theta.push_back(get_double(row, "theta"));
      t.u.push_back(get_double(row, "u"));
    } catch (const UsageError& e) {
      throw UsageError(fmt::format("{}:{}: {}", path, lineno, e.what()));
    }
  }
  if (theta_col < 0) throw UsageError(path + ": no header row");
  return t;
}

FlowSetup build_setup(const Settings& raw, const std::set<std::string>& explicit_keys) {
  FlowSetup out;
  Settings& c = out.canonical;
  FlowConfig& cfg = out.config;

  const std::string preset = raw.at("preset");
  if (preset != "round" && preset != "cos2" && preset != "ell-family" && preset != "file") {
    throw UsageError("unknown preset '" + preset + "' (round, cos2, ell-family, file)");
  }
  c["preset"] = preset;

  cfg.n = get_int(raw, "n");
  cfg.eps = get_double(raw, "eps");
  cfg.quad_order = get_int(raw, "quad-order");
  cfg.dt_init = get_double(raw, "dt");
  cfg.max_time = get_double(raw, "max-time");
  cfg.residual_tol = get_double(raw, "residual-tol");
  cfg.conservation_tol = get_double(raw, "conservation-tol");
  cfg.sigma1_floor = get_double(raw, "sigma1-floor");
  cfg.max_halvings = get_int(raw, "max-halvings");
  const std::string policy = raw.at("dt-policy");
  if (policy == "fixed") cfg.dt_policy = StepPolicy::Fixed;
  else if (policy == "adaptive") cfg.dt_policy = StepPolicy::AdaptiveHalving;
  else throw UsageError("dt-policy must be fixed or adaptive");
  const std::string scheme = raw.at("scheme");
  if (scheme == "euler") cfg.scheme = StepScheme::Euler;
  else if (scheme == "heun") cfg.scheme = StepScheme::Heun;
  else throw UsageError("scheme must be euler or heun");

  std::string conv = raw.at("convention");
  if (conv == "auto") conv = (preset == "cos2" || preset == "ell-family") ? "plus" : "minus";
  if (conv != "plus" && conv != "minus") throw UsageError("convention must be plus, minus or auto");
  const Convention convention = conv == "plus" ? Convention::PlusTwoU : Convention::MinusTwoU;

  Tabulated table;
  cfg.grid_size = get_int(raw, "grid");
  if (preset == "file") {
    if (raw.at("profile-in").empty()) throw UsageError("preset file needs --profile-in");
    table = read_profile(raw.at("profile-in"));
    const int rows = static_cast<int>(table.theta.size());
    if (explicit_keys.count("grid") && cfg.grid_size != rows) {
      throw UsageError(fmt::format("profile has {} rows but grid = {}", rows, cfg.grid_size));
    }
    cfg.grid_size = rows;
    c["profile-digest"] = table.digest;
  }
  cfg.validate();

  const auto grid = Grid::make(cfg.grid_size, cfg.quad_order);
  if (preset == "round") {
    out.u0 = std::make_shared<ConformalFactor>(grid, Eigen::VectorXd::Zero(cfg.grid_size), cfg.n, convention);
  } else if (preset == "cos2") {
    const double amp = get_double(raw, "amp");
    c["amp"] = format_number(amp);
    out.u0 = std::make_shared<ConformalFactor>(ConformalFactor::from_theta(
        grid, [amp](double t) { return amp * std::cos(2 * t); }, cfg.n, convention));
  } else if (preset == "ell-family") {
    const double ell = get_double(raw, "ell");
    c["ell"] = format_number(ell);
    out.u0 = std::make_shared<ConformalFactor>(ConformalFactor::from_theta(
        grid, [ell](double t) { return -ell * std::cos(t) * std::cos(t); }, cfg.n, convention));
  } else {
    Eigen::VectorXd values(cfg.grid_size);
    for (int j = 0; j < cfg.grid_size; ++j) {
      if (std::abs(table.theta[j] - grid->theta()(j)) > 1e-9) {
        throw UsageError(fmt::format(
            "profile row {}: theta = {} but the grid node is {} (rows must be the {} "
            "Chebyshev-Gauss angles (j + 1/2) pi / N in increasing order)",
            j + 1, table.theta[j], grid->theta()(j), cfg.grid_size));
      }
      values(j) = table.u[j];
    }
    out.u0 = std::make_shared<ConformalFactor>(grid, values, cfg.n, convention);
  }

  c["convention"] = conv;
  c["n"] = std::to_string(cfg.n);
  c["eps"] = format_number(cfg.eps);
  c["grid"] = std::to_string(cfg.grid_size);
  c["quad-order"] = std::to_string(cfg.quad_order);
  c["dt"] = format_number(cfg.dt_init);
  c["dt-policy"] = policy;
  c["scheme"] = scheme;
  c["max-time"] = format_number(cfg.max_time);
  c["residual-tol"] = format_number(cfg.residual_tol);
  c["conservation-tol"] = format_number(cfg.conservation_tol);
  c["sigma1-floor"] = format_number(cfg.sigma1_floor);
  c["max-halvings"] = std::to_string(cfg.max_halvings);
  return out;
}

int exit_code_for(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return kOk;
    case FlowStatus::MaxTimeReached: return kMaxTime;
    case FlowStatus::ConeViolation: return kConeViolation;
    case FlowStatus::StepFailure: return kStepFailure;
  }
  return kCheckFailed;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  return f;
}

void write_trajectory(const std::string& path, const Trajectory& tr, const std::string& hash,
                      int every) {
  std::ofstream f = open_output(path);
  CsvWriter csv(f, {"time", "dt", "F2", "F0eps", "r_eps", "s_eps", "min_sigma1", "min_sigma2", "residual"},
                hash, {std::string("status=") + to_string(tr.status)});
  for (std::size_t i = 0; i < tr.rows.size(); ++i) {
    if (i % static_cast<std::size_t>(every) != 0 && i + 1 != tr.rows.size()) continue;
    const auto& r = tr.rows[i];
    csv.row({r.time, r.dt, r.F2, r.F0eps, r.r_eps, r.s_eps, r.min_sigma1, r.min_sigma2, r.residual});
  }
}

void write_profile(const std::string& path, const FlowState& state, const std::string& hash) {
  std::ofstream f = open_output(path);
  CsvWriter csv(f, {"theta", "s", "u", "du", "d2u", "lambda_r", "lambda_t", "sigma1", "sigma2"}, hash,
                {"u in the minus convention, g = exp(-2u) g_0; lambda and sigma columns are g_0-relative",
                 fmt::format("time={}", format_number(state.time))});
  const FieldSample nodes = sample_nodes(state.u);
  const auto& theta = state.u.grid().theta();
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    csv.row({theta(j), nodes.s(j), nodes.jets.u(j), nodes.jets.du(j), nodes.jets.d2u(j),
             nodes.lambda_r(j), nodes.lambda_t(j), nodes.sigma1(j), nodes.sigma2(j)});
  }
}

std::string manifest_path_for(const std::string& requested, const std::string& primary) {
  return requested.empty() ? primary + ".manifest.json" : requested;
}

}  // namespace

void register_flow(CLI::App& app, Io& io, int* code) {
  CLI::App* flow = app.add_subcommand("flow", "Run the perturbed sigma_2 flow");
  flow->require_subcommand(1);

  // flow run
  CLI::App* run_cmd = flow->add_subcommand("run", "Run the flow from one initial profile");
  auto run_opts = std::make_shared<FlowOptions>();
  run_opts->add_to(run_cmd);
  auto every = std::make_shared<int>(1);
  auto trajectory = std::make_shared<std::string>("trajectory.csv");
  auto profile = std::make_shared<std::string>("profile.csv");
  auto manifest = std::make_shared<std::string>();
  auto hint = std::make_shared<bool>(false);
  run_cmd->add_option("--every", *every, "Write every k-th trajectory row (the last row always)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--trajectory", *trajectory, "Trajectory CSV path");
  run_cmd->add_option("--profile", *profile, "Final-profile CSV path");
  run_cmd->add_option("--manifest", *manifest, "Manifest path (default <trajectory>.manifest.json)");
  run_cmd->add_flag("--gnuplot-hint", *hint, "Print a gnuplot command for the trajectory");

  run_cmd->callback([&io, code, run_opts, every, trajectory, profile, manifest, hint] {
    RunManifest m;
    m.command = "flow run";
    m.arguments = io.arguments;
    m.started = utc_timestamp();
    std::set<std::string> explicit_keys;
    const FlowSetup setup = build_setup(run_opts->resolve(&explicit_keys), explicit_keys);
    Settings hashed = setup.canonical;
    hashed["command"] = m.command;
    hashed["every"] = std::to_string(*every);
    m.config = hashed;
    m.config_hash = config_hash(hashed);

    const Trajectory tr = run(setup.config, *setup.u0);
    *code = exit_code_for(tr.status);

    if (!tr.rows.empty()) {
      write_trajectory(*trajectory, tr, m.config_hash, *every);
      m.outputs.push_back(*trajectory);
    }
    if (tr.final) {
      write_profile(*profile, *tr.final, m.config_hash);
      m.outputs.push_back(*profile);
    }

    io.out << fmt::format("status: {}\n", to_string(tr.status));
    if (tr.final) {
      const auto& f = *tr.final;
      io.out << fmt::format("time: {:.10g}\nsteps: {}\nrejected steps: {}\n", f.time,
                            tr.rows.empty() ? 0 : tr.rows.size() - 1, tr.rejected_steps);
      io.out << fmt::format("F2: {:.15g}\nr_eps: {:.15g}\ns_eps: {:.6e}\ntilde F2_eps: {:.15g}\n",
                            f.report.F2, f.report.r_eps, f.report.s_eps, f.report.tildeF2eps);
      io.out << fmt::format("residual: {:.6e}\nmin sigma_1 along run: {:.10g}\nfinal min sigma_2: {:.10g}\n",
                            f.residual, tr.min_sigma1_seen, f.min_sigma2);
      io.out << fmt::format("F0 drift: {:.6e}\n",
                            std::abs(f.report.F0eps - tr.F0_initial) / tr.F0_initial);
    }
    if (tr.status != FlowStatus::Converged) io.err << to_string(tr.status) << ": " << tr.message << "\n";
    if (!m.outputs.empty()) {
      m.status = to_string(tr.status);
      m.exit_code = *code;
      m.finished = utc_timestamp();
      const std::string path = manifest_path_for(*manifest, *trajectory);
      write_manifest(path, m);
      io.out << "manifest: " << path << "\n";
    }
    if (*hint && !tr.rows.empty()) {
      io.out << fmt::format(
          "gnuplot -p -e \"set datafile separator ','; set logscale y; set xlabel 'time'; "
          "plot '{0}' using 1:9 with lines title columnheader, '' using 1:(abs($6)) with lines title 's_eps'\"\n",
          *trajectory);
    }
  });

  // flow sweep
  CLI::App* sweep_cmd = flow->add_subcommand("sweep", "Run the flow for several eps from one profile");
  auto sweep_opts = std::make_shared<FlowOptions>();
  sweep_opts->add_to(sweep_cmd);
  auto eps_list = std::make_shared<std::vector<double>>();
  auto jobs = std::make_shared<int>(1);
  auto output = std::make_shared<std::string>("sweep.csv");
  auto sweep_manifest = std::make_shared<std::string>();
  auto sweep_hint = std::make_shared<bool>(false);
  sweep_cmd->add_option("--eps-list", *eps_list, "Comma-separated eps values in (0, 1)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--jobs", *jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--output", *output, "Sweep CSV path");
  sweep_cmd->add_option("--manifest", *sweep_manifest, "Manifest path (default <output>.manifest.json)");
  sweep_cmd->add_flag("--gnuplot-hint", *sweep_hint, "Print a gnuplot command for the table");

  sweep_cmd->callback([&io, code, sweep_opts, eps_list, jobs, output, sweep_manifest, sweep_hint] {
    if (eps_list->empty()) throw UsageError("--eps-list is empty");
    RunManifest m;
    m.command = "flow sweep";
    m.arguments = io.arguments;
    m.started = utc_timestamp();
    std::set<std::string> explicit_keys;
    const FlowSetup setup = build_setup(sweep_opts->resolve(&explicit_keys), explicit_keys);
    Settings hashed = setup.canonical;
    hashed.erase("eps");
    hashed["command"] = m.command;
    std::string joined;
    for (double e : *eps_list) joined += (joined.empty() ? "" : ",") + format_number(e);
    hashed["eps-list"] = joined;
    m.config = hashed;
    m.config_hash = config_hash(hashed);

    const auto rows = eps_sweep(setup.config, *setup.u0, *eps_list, *jobs);
    bool ok = true;
    {
      std::ofstream f = open_output(*output);
      CsvWriter csv(f, {"eps", "status", "tildeF2eps", "tildeF2zero", "holder_bound", "holder_ok",
                        "final_time", "residual", "steps"},
                    m.config_hash);
      for (const auto& r : rows) {
        ok = ok && r.status == FlowStatus::Converged && r.holder_ok;
        csv.row(std::vector<std::string>{format_number(r.eps), to_string(r.status),
                                         format_number(r.tildeF2eps), format_number(r.tildeF2zero),
                                         format_number(r.holder_bound), r.holder_ok ? "true" : "false",
                                         format_number(r.final_time), format_number(r.residual),
                                         std::to_string(r.steps)});
        io.out << fmt::format("eps {:<8g} {:<15} tilde F2_eps = {:.12g}  Hoelder {}\n", r.eps,
                              to_string(r.status), r.tildeF2eps, r.holder_ok ? "ok" : "VIOLATED");
        if (!r.message.empty() && r.status != FlowStatus::Converged) io.err << r.message << "\n";
      }
    }
    m.outputs.push_back(*output);
    *code = ok ? kOk : kCheckFailed;
    m.status = ok ? "ok" : "failed";
    m.exit_code = *code;
    m.finished = utc_timestamp();
    write_manifest(manifest_path_for(*sweep_manifest, *output), m);
    if (*sweep_hint) {
      io.out << fmt::format(
          "gnuplot -p -e \"set datafile separator ','; set xlabel 'eps'; "
          "plot '{0}' using 1:3 with linespoints title columnheader, '' using 1:5 with linespoints title columnheader\"\n",
          *output);
    }
  });
}

}  // namespace sigmaflow::cli
