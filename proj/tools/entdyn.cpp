// Command-line front end: factor / concurrence / negativity curves,
// parameter sweeps, figure-style presets, and closed-form vs oracle
// verification runs. Emits CSV (or JSON) plus a .meta.json sidecar with
// the fully resolved run parameters.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entdyn/chain.hpp"
#include "entdyn/factor.hpp"
#include "entdyn/io.hpp"
#include "entdyn/measures.hpp"
#include "entdyn/oracle.hpp"

namespace {

constexpr const char* kVersion = "entdyn 1.0.0";

struct CommonOpts {
  int L = 300;
  double lambda = 2.0;
  double g = 0.1;
  int d = 2;
  double P = -1.0; // < 0 means pure state
  std::string amps;
  double tmax = 20.0;
  int points = 500;
  int Kc = 0; // 0 = default cutoff
  std::string angle = "atan2";
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
  std::uint64_t seed = 42;

  entdyn::AngleConvention convention() const {
    return angle == "arcsin" ? entdyn::AngleConvention::Arcsin
                             : entdyn::AngleConvention::Atan2;
  }
  entdyn::ChainConfig chain() const { return {L, lambda, g}; }
  bool werner() const { return P >= 0.0; }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_state = true) {
  cmd->add_option("--L", o.L, "chain size");
  cmd->add_option("--lambda", o.lambda, "transverse field");
  cmd->add_option("--g", o.g, "system-chain coupling")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tmax", o.tmax, "time horizon");
  cmd->add_option("--points", o.points, "time grid points");
  cmd->add_option("--Kc", o.Kc, "cutoff mode count (0 = auto)");
  cmd->add_option("--angle-convention", o.angle, "theta convention")
      ->check(CLI::IsMember({"atan2", "arcsin"}));
  cmd->add_option("--out", o.out, "output path");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", o.jobs, "worker threads");
  cmd->add_option("--seed", o.seed, "RNG seed");
  if (with_state) {
    cmd->add_option("--d", o.d, "local dimension")->check(CLI::Range(2, 8));
    cmd->add_option("--P", o.P, "Werner mixing probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--amps", o.amps,
                    "comma-separated pure-state amplitudes (normalized internally)");
  }
}

entdyn::PureAmplitudes parse_amps(const CommonOpts& o) {
  if (o.amps.empty()) return entdyn::maximally_entangled(o.d);
  std::vector<std::complex<double>> amps;
  std::stringstream ss(o.amps);
  std::string item;
  while (std::getline(ss, item, ',')) amps.emplace_back(std::stod(item), 0.0);
  if (static_cast<int>(amps.size()) != o.d)
    throw std::invalid_argument("--amps: expected " + std::to_string(o.d) + " values");
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw std::invalid_argument("--amps: zero state");
  for (auto& a : amps) a /= std::sqrt(norm2);
  return entdyn::PureAmplitudes{std::move(amps)};
}

// Factor columns in pair_index order; for d = 3 use the conventional
// labels F1 = (top, mid), F2 = (top, bottom), F3 = (mid, bottom).
std::vector<std::string> factor_labels(int d) {
  if (d == 2) return {"F"};
  if (d == 3) return {"F3", "F2", "F1"};
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      labels.push_back("F_" + std::to_string(i) + "_" + std::to_string(j));
  return labels;
}

std::vector<std::vector<double>> all_pair_factors(const CommonOpts& o,
                                                  const std::vector<double>& grid) {
  const auto cfg = o.chain();
  const auto branches = entdyn::branch_lambdas(cfg, o.d);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < o.d; ++i)
    for (int j = i + 1; j < o.d; ++j)
      out.push_back(entdyn::factor_series(cfg, branches, i, j, grid, o.convention(),
                                          o.jobs)
                        .values);
  return out;
}

std::vector<double> measure_curve(const CommonOpts& o, const std::vector<double>& grid) {
  const auto factors = all_pair_factors(o, grid);
  std::vector<double> values(grid.size());
  if (o.d == 2) {
    const auto state = parse_amps(o);
    for (std::size_t n = 0; n < grid.size(); ++n)
      values[n] = o.werner() ? entdyn::concurrence_werner(o.P, factors[0][n])
                             : entdyn::concurrence_pure(state, factors[0][n]);
  } else {
    const auto state = parse_amps(o);
    std::vector<double> fs(factors.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
      for (std::size_t p = 0; p < factors.size(); ++p) fs[p] = factors[p][n];
      values[n] = o.werner() ? entdyn::negativity_werner_general(o.P, o.d, fs)
                             : entdyn::negativity_pure_general(state, fs);
    }
  }
  return values;
}

std::vector<std::string> param_comments(const CommonOpts& o, const std::string& mode) {
  std::vector<std::string> c;
  c.push_back(std::string(kVersion) + " " + mode);
  std::ostringstream line;
  line << "L=" << o.L << " lambda=" << entdyn::format_double(o.lambda)
       << " g=" << entdyn::format_double(o.g) << " d=" << o.d
       << " angle=" << o.angle;
  if (o.werner()) line << " P=" << entdyn::format_double(o.P);
  c.push_back(line.str());
  c.push_back("tmax=" + entdyn::format_double(o.tmax) +
              " points=" + std::to_string(o.points));
  return c;
}

nlohmann::json resolved_spec(const CommonOpts& o, const std::string& mode) {
  nlohmann::json j;
  j["mode"] = mode;
  j["chain"] = {{"L", o.L}, {"lambda", o.lambda}, {"g", o.g}};
  j["system"] = {{"d", o.d}};
  if (o.werner())
    j["state"] = {{"kind", "werner"}, {"P", o.P}};
  else
    j["state"] = {{"kind", "pure"}, {"amps", o.amps.empty() ? "maximally-entangled"
                                                            : o.amps}};
  j["grid"] = {{"tmax", o.tmax}, {"points", o.points}};
  j["approx"] = {{"Kc", o.Kc}};
  j["angle_convention"] = o.angle;
  j["output"] = {{"path", o.out}, {"format", o.format}};
  j["jobs"] = o.jobs;
  j["seed"] = o.seed;
  j["version"] = kVersion;
  return j;
}

void emit(const CommonOpts& o, const std::string& mode, entdyn::DataTable table,
          std::chrono::steady_clock::time_point started) {
  const std::string path = o.out.empty() ? mode + "." + o.format : o.out;
  if (o.format == "json")
    entdyn::write_json(path, table);
  else
    entdyn::write_csv(path, table);
  auto meta = resolved_spec(o, mode);
  meta["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  entdyn::write_metadata(path, meta);
  std::cout << "wrote " << path << " (" << table.rows() << " rows)\n";
}

int run_factor(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const auto grid = entdyn::uniform_grid(o.tmax, o.points);
  entdyn::DataTable table;
  table.comments = param_comments(o, "factor");
  table.columns.push_back("t");
  table.data.push_back(grid);
  auto labels = factor_labels(o.d);
  auto factors = all_pair_factors(o, grid);
  if (o.d == 3) { // emit F1, F2, F3 in conventional order
    table.columns = {"t", labels[2], labels[1], labels[0]};
    table.data.push_back(factors[2]);
    table.data.push_back(factors[1]);
    table.data.push_back(factors[0]);
  } else {
    for (std::size_t p = 0; p < factors.size(); ++p) {
      table.columns.push_back(labels[p]);
      table.data.push_back(std::move(factors[p]));
    }
  }
  emit(o, "factor", std::move(table), started);
  return 0;
}

int run_measure(const CommonOpts& o, const std::string& mode) {
  const auto started = std::chrono::steady_clock::now();
  const auto grid = entdyn::uniform_grid(o.tmax, o.points);
  entdyn::DataTable table;
  table.comments = param_comments(o, mode);
  table.columns = {"t", mode == "concurrence" ? "C" : "N"};
  table.data.push_back(grid);
  table.data.push_back(measure_curve(o, grid));
  emit(o, mode, std::move(table), started);
  return 0;
}

std::vector<double> parse_axis(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream ss(text);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
      throw std::invalid_argument("range must be lo:hi:step with step > 0");
    for (double v = lo; v <= hi + 1e-12; v += step) values.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty sweep range");
  return values;
}

struct SweepOpts {
  std::string lambda_axis, g_axis, L_axis, P_axis;
};

int run_sweep(const CommonOpts& base, const SweepOpts& s) {
  const auto started = std::chrono::steady_clock::now();
  CommonOpts fixed = base;
  std::string axis_name;
  std::vector<double> axis_values;
  int multi = 0;
  auto consider = [&](const std::string& name, const std::string& text,
                      auto&& set_fixed) {
    if (text.empty()) return;
    auto vals = parse_axis(text);
    if (vals.size() > 1) {
      ++multi;
      axis_name = name;
      axis_values = vals;
    } else {
      set_fixed(vals.front());
    }
  };
  consider("lambda", s.lambda_axis, [&](double v) { fixed.lambda = v; });
  consider("g", s.g_axis, [&](double v) { fixed.g = v; });
  consider("L", s.L_axis, [&](double v) { fixed.L = static_cast<int>(v); });
  consider("P", s.P_axis, [&](double v) { fixed.P = v; });
  if (multi != 1)
    throw std::invalid_argument("sweep: exactly one of --lambda/--g/--L/--P must carry "
                                "a multi-valued range");

  const auto grid = entdyn::uniform_grid(fixed.tmax, fixed.points);
  entdyn::DataTable table;
  table.comments = param_comments(fixed, "sweep");
  table.comments.push_back("sweep axis: " + axis_name);
  table.columns = {"t"};
  table.data.push_back(grid);
  for (double v : axis_values) {
    CommonOpts o = fixed;
    if (axis_name == "lambda") o.lambda = v;
    else if (axis_name == "g") o.g = v;
    else if (axis_name == "L") o.L = static_cast<int>(v);
    else o.P = v;
    table.columns.push_back(axis_name + "=" + entdyn::format_double(v));
    table.data.push_back(measure_curve(o, grid));
  }
  emit(fixed, "sweep", std::move(table), started);
  return 0;
}

int run_figure(const CommonOpts& base, const std::string& id) {
  CommonOpts o = base;
  SweepOpts s;
  if (id == "fig1a") { o.d = 2; o.L = 300; o.g = 0.1; s.lambda_axis = "0.5,1,1.5,2"; }
  else if (id == "fig1b") { o.d = 2; o.L = 300; o.g = 0.1; s.lambda_axis = "3,4,5";
                            o.tmax = 10.0; o.points = 1000; }
  else if (id == "fig2")  { o.d = 2; o.lambda = 4.0; o.g = 0.1; s.L_axis = "200,600,1000"; }
  else if (id == "fig3")  { o.d = 2; o.L = 300; o.lambda = 2.0; s.g_axis = "0.1,1,25,100"; }
  else if (id == "fig4")  { o.d = 2; o.L = 300; o.lambda = 2.0; o.g = 0.1;
                            s.P_axis = "0.5,0.7,1"; }
  else if (id == "fig5a") { o.d = 3; o.L = 300; o.g = 0.1; s.lambda_axis = "0.1,1,2"; }
  else if (id == "fig5b") { o.d = 3; o.L = 300; o.g = 0.1; s.lambda_axis = "3,4,5";
                            o.tmax = 10.0; o.points = 1000; }
  else if (id == "fig6")  { o.d = 3; o.L = 300; o.lambda = 2.0; s.g_axis = "0.1,1,15,100"; }
  else throw std::invalid_argument("unknown figure id: " + id);
  if (o.out.empty()) o.out = id + "." + o.format;
  return run_sweep(o, s);
}

int run_verify(const CommonOpts& o, int samples) {
  const auto started = std::chrono::steady_clock::now();
  if (samples < 1) throw std::invalid_argument("verify: --samples must be >= 1");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> lambda_dist(0.0, 4.0);
  std::uniform_real_distribution<double> g_dist(0.0, 2.0);
  std::uniform_real_distribution<double> t_dist(0.0, 20.0);
  const int sizes[] = {11, 51, 101};

  entdyn::DataTable table;
  table.columns = {"sample", "L", "lambda", "g", "t", "mode_err", "product_err"};
  table.data.assign(7, {});
  double worst_mode = 0.0, worst_product = 0.0;
  for (int n = 0; n < samples; ++n) {
    entdyn::ChainConfig cfg{sizes[rng() % 3], lambda_dist(rng), g_dist(rng)};
    const double t = t_dist(rng);
    const auto branches = entdyn::branch_lambdas(cfg, 2);
    const auto spec_0 = entdyn::build_spectrum(cfg, branches.lambdas[0]);
    const auto spec_1 = entdyn::build_spectrum(cfg, branches.lambdas[1]);
    double mode_err = 0.0;
    for (int k = 1; k <= cfg.modes(); ++k) {
      const double closed = entdyn::mode_factor(spec_0, spec_1, k, t);
      const double oracle = entdyn::oracle_mode_factor(
          entdyn::mode_hamiltonian(cfg, branches.lambdas[0], k),
          entdyn::mode_hamiltonian(cfg, branches.lambdas[1], k), t);
      mode_err = std::max(mode_err, std::abs(closed - oracle));
    }
    const double product_err =
        std::abs(entdyn::factor_modulus(spec_0, spec_1, t) -
                 entdyn::oracle_factor_modulus(cfg, branches.lambdas[0],
                                               branches.lambdas[1], t));
    worst_mode = std::max(worst_mode, mode_err);
    worst_product = std::max(worst_product, product_err);
    table.data[0].push_back(n);
    table.data[1].push_back(cfg.L);
    table.data[2].push_back(cfg.lambda);
    table.data[3].push_back(cfg.g);
    table.data[4].push_back(t);
    table.data[5].push_back(mode_err);
    table.data[6].push_back(product_err);
  }
  const bool ok = worst_mode <= 1e-9 && worst_product <= 1e-8;
  table.comments = {std::string(kVersion) + " verify",
                    "samples=" + std::to_string(samples) +
                        " seed=" + std::to_string(o.seed),
                    "max_mode_err=" + entdyn::format_double(worst_mode) +
                        " max_product_err=" + entdyn::format_double(worst_product),
                    std::string("result=") + (ok ? "pass" : "fail")};
  emit(o, "verify", std::move(table), started);
  std::cout << (ok ? "verify: PASS" : "verify: FAIL") << " (max mode err "
            << worst_mode << ", max product err " << worst_product << ")\n";
  return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact disentanglement dynamics of two d-level systems dephasing "
               "in a transverse-field Ising chain"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(1);

  CommonOpts opts;
  SweepOpts sweep_opts;
  std::string figure_id;
  int samples = 200;

  add_common(app.add_subcommand("factor", "decoherence-factor moduli |F(t)|"), opts);
  add_common(app.add_subcommand("concurrence", "two-qubit concurrence curve"), opts);
  add_common(app.add_subcommand("negativity", "two-qudit negativity curve"), opts);

  auto* sweep = app.add_subcommand("sweep", "one-axis parameter sweep");
  sweep->add_option("--lambda", sweep_opts.lambda_axis, "field value/range");
  sweep->add_option("--g", sweep_opts.g_axis, "coupling value/range");
  sweep->add_option("--L", sweep_opts.L_axis, "chain size value/range");
  sweep->add_option("--P", sweep_opts.P_axis, "Werner P value/range");
  sweep->add_option("--d", opts.d, "local dimension")->check(CLI::Range(2, 8));
  sweep->add_option("--tmax", opts.tmax, "time horizon");
  sweep->add_option("--points", opts.points, "time grid points");
  sweep->add_option("--angle-convention", opts.angle, "theta convention")
      ->check(CLI::IsMember({"atan2", "arcsin"}));
  sweep->add_option("--out", opts.out, "output path");
  sweep->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", opts.jobs, "worker threads");

  auto* figure = app.add_subcommand("figure", "preset multi-curve dataset");
  figure->add_option("id", figure_id, "preset id (fig1a..fig6)")->required();
  add_common(figure, opts);

  auto* verify = app.add_subcommand("verify", "closed form vs matrix-exponential oracle");
  verify->add_option("--samples", samples, "random parameter tuples");
  add_common(verify, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("factor")) return run_factor(opts);
    if (app.got_subcommand("concurrence")) return run_measure(opts, "concurrence");
    if (app.got_subcommand("negativity")) {
      if (opts.d == 2) opts.d = 3; // negativity default target is qutrits
      return run_measure(opts, "negativity");
    }
    if (app.got_subcommand("sweep")) return run_sweep(opts, sweep_opts);
    if (app.got_subcommand("figure")) return run_figure(opts, figure_id);
    if (app.got_subcommand("verify")) return run_verify(opts, samples);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
