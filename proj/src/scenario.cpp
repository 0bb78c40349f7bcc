#include "fracheat/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fracheat/acceptance.hpp"
#include "fracheat/construct.hpp"
#include "fracheat/criteria.hpp"
#include "fracheat/csv.hpp"
#include "fracheat/dirichlet.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/kernel.hpp"
#include "fracheat/mild_solver.hpp"
#include "fracheat/numeric.hpp"
#include "fracheat/periodic.hpp"
#include "fracheat/plot.hpp"

namespace fracheat {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw PreconditionError("config: '" + key + "' is not a number: '" + text + "'");
  }
  return v;
}

std::string scalar_text(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>());
  throw PreconditionError("config: '" + key + "' must be a scalar or a list of scalars");
}

ScenarioConfig config_from_json(const std::string& where, const json& obj) {
  if (!obj.is_object()) throw PreconditionError(where + ": expected a JSON object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : obj.items()) {
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + scalar_text(key, item);
      cfg.set(key, joined);
    } else {
      cfg.set(key, scalar_text(key, value));
    }
  }
  return cfg;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("config: invalid JSON: ") + e.what());
  }
}

const std::map<std::string, std::set<std::string>>& vocabulary() {
  static const std::map<std::string, std::set<std::string>> v = {
      {"kernel", {"alpha", "d", "t_grid", "r_grid"}},
      {"semigroup", {"alpha", "R", "N", "r", "delta", "t_min", "t_max", "t_count"}},
      {"solve",
       {"alpha", "R", "N", "engine", "f", "f_table", "q", "T", "dt", "blowup_cap", "u0", "method",
        "picard_max", "picard_tol"}},
      {"classify", {"f", "f_table", "q", "alpha", "d", "domain", "tau", "s_max", "K"}},
      {"counterexample",
       {"theorem", "f", "f_table", "q", "alpha", "d", "K_list", "R", "N", "T", "dt", "blowup_cap",
        "nu_hat", "c_hat", "eps", "tau", "s_max", "layers"}},
      {"acceptance", {}},
  };
  return v;
}

const std::set<std::string> common_keys = {"experiment", "out", "report", "plot", "strict", "seed"};

// ---------------------------------------------------------------- helpers

/// "log:lo:hi:n", "lin:lo:hi:n" or a comma-separated list.
std::vector<double> parse_axis(const std::string& key, const std::string& text) {
  if (text.rfind("log:", 0) == 0 || text.rfind("lin:", 0) == 0) {
    const auto parts = split(text.substr(4), ':');
    if (parts.size() != 3) throw PreconditionError("config: '" + key + "' needs kind:lo:hi:n");
    const double lo = to_number(key, parts[0]), hi = to_number(key, parts[1]);
    const double n = to_number(key, parts[2]);
    if (!(n >= 1.0) || n != std::floor(n)) throw PreconditionError("config: '" + key + "' needs n >= 1");
    if (text[1] == 'o') {
      if (!(lo > 0.0 && hi > 0.0)) throw PreconditionError("config: '" + key + "' log axis needs lo, hi > 0");
      return logspace(lo, hi, static_cast<std::size_t>(n));
    }
    return linspace(lo, hi, static_cast<std::size_t>(n));
  }
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_number(key, item));
  if (out.empty()) throw PreconditionError("config: '" + key + "' is empty");
  return out;
}

GrowthFunction growth_of(const ScenarioConfig& c) {
  if (c.has("f_table")) {
    if (c.has("f")) throw PreconditionError("config: give either 'f' or 'f_table', not both");
    return GrowthFunction::from_csv(c.get("f_table", ""));
  }
  if (!c.has("f")) throw PreconditionError("config: missing growth function 'f'");
  return GrowthFunction::parse(c.get("f", ""));
}

DichotomyParams dichotomy_of(const ScenarioConfig& c) {
  DichotomyParams p;
  p.q = c.number("q", p.q);
  p.alpha = c.number("alpha", p.alpha);
  const double d = c.number("d", 1.0);
  if (d != std::floor(d)) throw PreconditionError("config: 'd' must be an integer");
  p.d = static_cast<int>(d);
  p.tau = c.number("tau", p.tau);
  p.s_max = c.number("s_max", p.s_max);
  p.K = c.count("K", p.K);
  return p;
}

std::size_t mesh_size(const ScenarioConfig& c, const char* key, std::size_t fallback) {
  const std::size_t n = c.count(key, fallback);
  if (n < 3) throw PreconditionError(std::string("config: '") + key + "' must be >= 3");
  return n;
}

std::unique_ptr<SpectralEngine> engine_of(const ScenarioConfig& c) {
  const double alpha = c.number("alpha", 1.5);
  const double R = c.number("R", 1.0);
  const std::string kind = c.get("engine", "dirichlet");
  if (kind == "dirichlet") {
    return std::make_unique<DirichletOperator>(Grid1D::dirichlet(R, mesh_size(c, "N", 199)), alpha);
  }
  if (kind == "periodic") {
    return std::make_unique<PeriodicOperator>(Grid1D::periodic(R, mesh_size(c, "N", 256)), alpha);
  }
  throw PreconditionError("config: engine must be dirichlet or periodic, got '" + kind + "'");
}

Field initial_data(const ScenarioConfig& c, const Grid1D& grid) {
  const std::string spec = c.get("u0", "indicator:1,0.25");
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> a;
  if (colon != std::string::npos) {
    for (const auto& item : split(spec.substr(colon + 1), ',')) a.push_back(to_number("u0", item));
  }
  auto need = [&](std::size_t n) {
    if (a.size() != n) throw PreconditionError("config: u0 '" + spec + "' has the wrong number of arguments");
  };
  if (kind == "indicator") {
    need(2);
    return a[0] * indicator(grid, a[1]);
  }
  if (kind == "bump") {
    need(2);
    const double amp = a[0], width = a[1];
    return sample(grid, [=](double x) {
      const double y = 1.0 - (x / width) * (x / width);
      return y > 0.0 ? amp * y * y : 0.0;
    });
  }
  if (kind == "gauss") {
    need(2);
    const double amp = a[0], width = a[1];
    return sample(grid, [=](double x) { return amp * std::exp(-(x / width) * (x / width)); });
  }
  if (kind == "cosine") {
    need(1);
    const double amp = a[0], R = grid.half_width();
    return sample(grid, [=](double x) { return amp * std::cos(std::numbers::pi * x / (2.0 * R)); });
  }
  throw PreconditionError("config: unknown u0 kind '" + kind + "' (indicator, bump, gauss, cosine)");
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "none"; }

/// Writes the table to `out` (or the stream when no path is set) and the plot
/// script when requested.
void emit_table(const ScenarioConfig& c, const CsvTable& table, const std::string& plot_kind,
                std::ostream& out) {
  if (!c.has("out")) {
    if (c.flag("plot")) throw PreconditionError("config: 'plot' needs an 'out' path");
    out << table.str();
    return;
  }
  const std::string path = c.get("out", "");
  table.write(path);
  out << "wrote " << path << "\n";
  if (c.flag("plot")) out << "wrote " << emit_plot_script(path, plot_kind) << "\n";
}

json trend_json(const TrendResult& t) {
  return {{"outcome", to_string(t.outcome)},
          {"bound", t.bound},
          {"s_star", t.s_star},
          {"decade_growth", t.decade_growth}};
}

/// Nested keys joined with '.', arrays and embedded commas become ';' so cells stay comma-free.
void flatten(const json& node, const std::string& prefix, CsvTable& table) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, table);
    return;
  }
  auto cell = [](const json& v) {
    if (v.is_string()) {
      auto text = v.get<std::string>();
      std::replace(text.begin(), text.end(), ',', ';');
      return text;
    }
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
  };
  if (node.is_array()) {
    std::string joined;
    for (const auto& item : node) joined += (joined.empty() ? "" : ";") + cell(item);
    table.add_row({prefix, joined});
    return;
  }
  table.add_row({prefix, cell(node)});
}

// ---------------------------------------------------------------- experiments

int run_kernel(const ScenarioConfig& c, std::ostream& out) {
  kernel::KernelParams params{c.number("alpha", 1.5), 1};
  const double d = c.number("d", 1.0);
  if (d != std::floor(d) || d < 1) throw PreconditionError("config: 'd' must be a positive integer");
  params.d = static_cast<int>(d);
  params.validate();
  const auto ts = parse_axis("t_grid", c.get("t_grid", "log:0.01:100:10"));
  const auto rs = parse_axis("r_grid", c.get("r_grid", "lin:0:5:10"));
  CsvTable table({"t", "r", "p", "min_form", "sum_form", "ratio"});
  for (double t : ts) {
    for (double r : rs) {
      const double p = kernel::stable_kernel(t, r, params);
      const auto env = kernel::envelope(t, r, params);
      table.add_row({format_double(t), format_double(r), format_double(p), format_double(env.min_form),
                     format_double(env.sum_form), format_double(p / env.min_form)});
    }
  }
  emit_table(c, table, "kernel", out);
  return exit_code::ok;
}

int run_semigroup(const ScenarioConfig& c, std::ostream& out) {
  const double alpha = c.number("alpha", 1.5);
  const auto op = assemble(Grid1D::dirichlet(c.number("R", 1.0), mesh_size(c, "N", 399)), alpha);
  const double r = c.number("r", 0.1);
  const double delta = c.number("delta", r);
  const double t_max = c.number("t_max", std::pow(delta, alpha));
  const double t_min = c.number("t_min", t_max * std::pow(0.1, alpha));
  if (!(t_min > 0.0 && t_min <= t_max)) throw PreconditionError("semigroup: need 0 < t_min <= t_max");
  const auto times = logspace(t_min, t_max, c.count("t_count", 12));
  const double h = op.grid().spacing();
  double c_run = std::numeric_limits<double>::infinity(), mu_run = c_run;
  CsvTable table({"t", "c_hat_running", "mu_hat_running", "M_t", "lambda1"});
  for (double t : times) {
    const std::array<double, 1> one{t};
    c_run = std::min(c_run, verify_indicator_lower_bound(op, r, delta, one).c_hat);
    mu_run = std::min(mu_run, verify_mass_lower_bound(op, r, delta, one).mu_hat);
    const auto diag = op.semigroup_diagonal(t);
    const double M = *std::max_element(diag.begin(), diag.end()) / h;
    table.add_row({format_double(t), format_double(c_run), format_double(mu_run), format_double(M),
                   format_double(op.lambda1())});
  }
  emit_table(c, table, "semigroup", out);
  return exit_code::ok;
}

int run_solve(const ScenarioConfig& c, std::ostream& out) {
  const auto engine = engine_of(c);
  NonlinearProblem problem(*engine, growth_of(c), initial_data(c, engine->grid()), c.number("q", 2.0),
                           c.number("T", 0.1), c.number("dt", 1e-3));
  problem.blowup_cap = c.number("blowup_cap", problem.blowup_cap);
  const std::string method = c.get("method", "euler");
  Trajectory traj;
  if (method == "euler") {
    traj = solve(problem);
  } else if (method == "picard") {
    auto pr = picard_minimal_solution(problem, c.count("picard_max", 200), c.number("picard_tol", 1e-8));
    traj = std::move(pr.trajectory);
    out << "picard iterations " << pr.iterations << "\n";
  } else {
    throw PreconditionError("config: method must be euler or picard, got '" + method + "'");
  }
  CsvTable table({"t", "norm_l1", "norm_lq", "max_value", "status"});
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    const bool last = n + 1 == traj.times.size();
    table.add_row({format_double(traj.times[n]), format_double(traj.norm_l1[n]),
                   format_double(traj.norm_lq[n]), format_double(traj.max_value[n]),
                   last ? to_string(traj.status) : "running"});
  }
  emit_table(c, table, "solve", out);
  out << "status " << to_string(traj.status) << " t_star " << opt(traj.t_star) << " sup_norm_lq "
      << format_double(traj.sup_norm_lq()) << "\n";
  return exit_code::ok;
}

int run_classify(const ScenarioConfig& c, std::ostream& out) {
  const auto f = growth_of(c);
  const auto params = dichotomy_of(c);
  const std::string dom = c.get("domain", "ball");
  if (dom != "ball" && dom != "whole_space") {
    throw PreconditionError("config: domain must be ball or whole_space, got '" + dom + "'");
  }
  const auto v = classify(f, params, dom == "ball" ? Domain::ball : Domain::whole_space);

  json report = {{"f", f.describe()},
                 {"q", params.q},
                 {"alpha", params.alpha},
                 {"d", params.d},
                 {"domain", dom},
                 {"p_crit", params.p_crit()},
                 {"verdict", to_string(v.verdict)}};
  if (v.limsup) report["limsup"] = trend_json(*v.limsup);
  if (v.small_s) report["small_s"] = trend_json(*v.small_s);
  if (v.integral) {
    const auto& i = *v.integral;
    report["integral"] = {{"outcome", to_string(i.outcome)}, {"value", i.value},
                          {"tail", i.tail},                  {"last_ratio", i.last_ratio},
                          {"power_exponent", i.power_exponent}, {"block_sums", i.block_sums}};
  }
  if (v.sequence) {
    const auto& s = *v.sequence;
    report["sequence"] = {{"found", s.found},   {"s", s.s},
                          {"terms", s.terms},   {"partial_sums", s.partial_sums},
                          {"decade_growth", s.decade_growth}};
  }
  report["notes"] = v.notes;

  out << "verdict " << to_string(v.verdict) << "\n";
  if (c.has("report")) {
    const std::string path = c.get("report", "");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
      CsvTable table({"key", "value"});
      flatten(report, "", table);
      table.write(path);
    } else {
      write_text(path, report.dump(2) + "\n");
    }
    out << "wrote " << path << "\n";
  }
  if (v.verdict == Verdict::inconclusive && c.flag("strict")) return exit_code::inconclusive;
  return exit_code::ok;
}

void write_layers(const StackedIndicatorSpec& spec, const std::string& path) {
  CsvTable table({"k", "level", "height", "radius", "center", "xi", "k_n", "schedule"});
  for (const auto& l : spec.layers) {
    table.add_row({std::to_string(l.k), format_double(l.level), format_double(l.height),
                   format_double(l.radius), format_double(l.center), std::to_string(l.xi),
                   std::to_string(l.k_n), format_double(l.schedule)});
  }
  table.write(path);
}

int run_counterexample(const ScenarioConfig& c, std::ostream& out) {
  const auto f = growth_of(c);
  auto params = dichotomy_of(c);
  const std::string theorem = c.get("theorem", "3.3");
  std::vector<std::size_t> k_list;
  for (double k : parse_axis("K_list", c.get("K_list", "1,2,3"))) {
    if (!(k >= 1.0) || k != std::floor(k)) throw PreconditionError("config: K_list entries must be positive integers");
    k_list.push_back(static_cast<std::size_t>(k));
  }
  const std::size_t k_max = *std::max_element(k_list.begin(), k_list.end());
  const double R = c.number("R", 1.0);

  if (theorem == "5") {
    if (!c.has("nu_hat")) throw PreconditionError("counterexample: the whole-space construction needs 'nu_hat'");
    const auto spec = build_layers_whole_space(f, params, k_max, c.number("nu_hat", 0.0));
    out << "built " << spec.K() << " whole-space layers, norm bound "
        << format_double(spec.analytic_norm_bound) << "\n";
    if (c.has("layers")) write_layers(spec, c.get("layers", ""));
    return exit_code::ok;
  }
  if (theorem != "3.3" && theorem != "4.1") {
    throw PreconditionError("config: theorem must be 3.3, 4.1 or 5, got '" + theorem + "'");
  }
  if (params.d != 1) throw PreconditionError("counterexample: ball experiments are one-dimensional (d = 1)");
  const auto op = assemble(Grid1D::dirichlet(R, mesh_size(c, "N", 1799)), params.alpha);
  const double r0 = 0.1 * R;
  const auto times = node_aligned_times(op.grid(), params.alpha, r0 / 10.0, r0, 12);

  StackedIndicatorSpec spec;
  if (theorem == "3.3") {
    const double nu = c.has("nu_hat") ? c.number("nu_hat", 0.0)
                                      : verify_uniform_lower_bound(op, r0, r0, times).c_hat;
    spec = build_layers_thm33(f, params, k_max, nu, R, c.number("eps", 0.0));
  } else {
    params.q = 1.0;
    const double ch = c.has("c_hat") ? c.number("c_hat", 0.0)
                                     : verify_indicator_lower_bound(op, r0, r0, times).c_hat;
    spec = build_layers_thm41(f, params, k_max, ch, R);
  }
  if (c.has("layers")) write_layers(spec, c.get("layers", ""));

  SolverConfig solver{c.number("T", 2e-9), c.number("dt", 2e-11), c.number("blowup_cap", 1e12)};
  const auto rows = escalation_experiment(op, f, spec, k_list, solver);
  CsvTable table({"K", "layers_built", "u0_norm_lq", "sup_norm_lq", "t_star", "status"});
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.K), std::to_string(row.layers_built), format_double(row.u0_norm_lq),
                   format_double(row.sup_norm_lq), opt(row.t_star), to_string(row.status)});
  }
  emit_table(c, table, "escalation", out);
  return exit_code::ok;
}

int run_acceptance_experiment(const ScenarioConfig& c, std::ostream& out) {
  AcceptanceOptions options;
  options.seed = static_cast<std::uint64_t>(c.count("seed", options.seed));
  const auto report = run_acceptance(options, &out);
  if (c.has("out")) write_text(c.get("out", ""), report.render());
  out << (report.all_passed() ? "acceptance PASS" : "acceptance FAIL") << "\n";
  return report.all_passed() ? exit_code::ok : exit_code::failure;
}

}  // namespace

// ---------------------------------------------------------------- ScenarioConfig

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') return config_from_json("config", parse_json(body));
  ScenarioConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.set(trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
  }
  return cfg;
}

std::vector<ScenarioConfig> ScenarioConfig::parse_list(std::string_view text) {
  const std::string body = trim(text);
  if (body.empty() || body.front() != '[') return {parse(text)};
  const json arr = parse_json(body);
  std::vector<ScenarioConfig> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(config_from_json("config[" + std::to_string(i) + "]", arr[i]));
  return out;
}

std::vector<ScenarioConfig> ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_list(buf.str());
}

std::string ScenarioConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

std::string ScenarioConfig::to_json() const {
  json obj = json::object();
  for (const auto& [k, v] : entries_) obj[k] = v;
  return obj.dump();
}

void ScenarioConfig::set(std::string key, std::string value) {
  if (key.empty()) throw PreconditionError("config: empty key");
  if (key.find_first_of("=#\n") != std::string::npos || value.find_first_of("#\n") != std::string::npos ||
      value != trim(value)) {
    throw PreconditionError("config: key or value for '" + key + "' cannot be serialized");
  }
  entries_[std::move(key)] = std::move(value);
}

std::string ScenarioConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double ScenarioConfig::number(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : to_number(key, it->second);
}

std::size_t ScenarioConfig::count(const std::string& key, std::size_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const double v = to_number(key, it->second);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15) {
    throw PreconditionError("config: '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

bool ScenarioConfig::flag(const std::string& key) const {
  const std::string v = get(key, "false");
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw PreconditionError("config: '" + key + "' must be a boolean, got '" + v + "'");
}

void ScenarioConfig::validate() const {
  const std::string exp = experiment();
  const auto& vocab = vocabulary();
  const auto it = vocab.find(exp);
  if (it == vocab.end()) {
    throw PreconditionError("config: unknown experiment '" + exp +
                            "' (kernel, semigroup, solve, classify, counterexample, acceptance)");
  }
  for (const auto& [key, value] : entries_) {
    if (!common_keys.count(key) && !it->second.count(key)) {
      throw PreconditionError("config: unknown key '" + key + "' for experiment " + exp);
    }
  }
  flag("strict");
  flag("plot");
}

// ---------------------------------------------------------------- runner

int run(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const std::string exp = config.experiment();
    if (exp == "kernel") return run_kernel(config, out);
    if (exp == "semigroup") return run_semigroup(config, out);
    if (exp == "solve") return run_solve(config, out);
    if (exp == "classify") return run_classify(config, out);
    if (exp == "counterexample") return run_counterexample(config, out);
    return run_acceptance_experiment(config, out);
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return exit_code::precondition;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_code::numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

int run_all(const std::vector<ScenarioConfig>& configs, std::ostream& out, std::ostream& err) {
  std::size_t threads = 1;
  if (const char* env = std::getenv("FRACHEAT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) threads = static_cast<std::size_t>(n);
  }
  threads = std::min(threads, std::max<std::size_t>(configs.size(), 1));
  std::vector<std::ostringstream> outs(configs.size()), errs(configs.size());
  std::vector<int> codes(configs.size(), exit_code::ok);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) codes[i] = run(configs[i], outs[i], errs[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int first = exit_code::ok;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    out << outs[i].str();
    err << errs[i].str();
    if (first == exit_code::ok) first = codes[i];
  }
  return first;
}

}  // namespace fracheat
