#include "sqcat/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "sqcat/analysis.hpp"
#include "sqcat/parallel.hpp"
#include "sqcat/protocols.hpp"

namespace sqcat::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kHeraldRMin = 0.26;
constexpr double kHeraldRMax = 0.92;
constexpr double kHeraldQMax = 0.9;
constexpr int kTargetCutoff = 40;

const std::map<std::string, Experiment> kExperiments{{"herald-surface", Experiment::herald_surface},
                                                     {"wigner", Experiment::wigner},
                                                     {"entropy", Experiment::entropy},
                                                     {"kerr-demo", Experiment::kerr_demo},
                                                     {"minus-convert", Experiment::minus_convert}};

const std::vector<std::string> kWignerStates{"vacuum", "coherent", "cat", "even-cat", "squeezed", "plus", "minus"};

ordered_json range_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"step", r.step}}; }

ordered_json base_metadata(const RunConfig& config) {
  ordered_json meta;
  meta["experiment"] = to_string(config.experiment);
  meta["config"] = config.to_json();
  return meta;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

struct WignerState {
  FockVector state;
  std::string descriptor;
};

WignerState build_wigner_state(const RunConfig& c, int cutoff) {
  const auto fmt = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  if (c.state == "vacuum") return {FockVector(ModeLayout::single("a", cutoff)), "|0>"};
  if (c.state == "coherent") return {coherent_state<double>({c.a, 0.0}, cutoff), "|a> a=" + fmt(c.a)};
  if (c.state == "cat") {
    return {coherent_cat<double>({c.a, 0.0}, Sign::minus, cutoff), "(|a>-|-a>)/norm a=" + fmt(c.a)};
  }
  if (c.state == "even-cat") {
    return {coherent_cat<double>({c.a, 0.0}, Sign::plus, cutoff), "(|a>+|-a>)/norm a=" + fmt(c.a)};
  }
  if (c.state == "squeezed") return {squeezed_vacuum(c.r_state, 0.0, cutoff), "|r> r=" + fmt(c.r_state)};
  if (c.state == "plus") return {squeezed_cat(c.r_state, Sign::plus, cutoff), "|r;+> r=" + fmt(c.r_state)};
  if (c.state == "minus") return {squeezed_cat(c.r_state, Sign::minus, cutoff), "|r;-> r=" + fmt(c.r_state)};
  throw UsageError("unknown state '" + c.state + "'");
}

int probe_cutoff_for(double alpha) {
  int n = static_cast<int>(std::ceil(alpha * alpha + 6 * alpha + 10));
  while (coherent_state<double>({alpha, 0.0}, n).discarded_weight() > 1e-10) n += 5;
  return n;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [name, value] : kExperiments)
    if (value == e) return name;
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::vector<double> Range::values() const {
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
  std::vector<double> v;
  v.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) v.push_back(min + static_cast<double>(i) * step);
  if (max - v.back() > 1e-9 * step) v.push_back(max);
  return v;
}

void Range::validate(const std::string& name) const {
  require(std::isfinite(min) && std::isfinite(max) && std::isfinite(step), name + " range must be finite");
  require(step > 0, name + " step must be positive");
  require(max >= min, name + " range is empty (max < min)");
}

int default_cutoff(Experiment e) {
  switch (e) {
    case Experiment::herald_surface:
      return 5;
    case Experiment::entropy:
      return 24;
    default:
      return 40;
  }
}

int minimum_cutoff(Experiment e) {
  switch (e) {
    case Experiment::herald_surface:
      return 5;
    case Experiment::entropy:
      return 8;
    case Experiment::minus_convert:
      return 8;
    default:
      return 10;
  }
}

int RunConfig::effective_cutoff() const { return cutoff > 0 ? cutoff : default_cutoff(experiment); }

void RunConfig::validate() const {
  require(cutoff >= 0, "cutoff must be non-negative");
  require(effective_cutoff() >= minimum_cutoff(experiment),
          "cutoff " + std::to_string(effective_cutoff()) + " is below the minimum " +
              std::to_string(minimum_cutoff(experiment)) + " for " + to_string(experiment));
  switch (experiment) {
    case Experiment::herald_surface:
      r.validate("r");
      q.validate("q");
      require(r.min >= kHeraldRMin && r.max <= kHeraldRMax, "herald-surface r range must lie within [0.26, 0.92]");
      require(q.min > 0 && q.max <= kHeraldQMax, "herald-surface q range must lie within (0, 0.9]");
      break;
    case Experiment::wigner:
      require(std::find(kWignerStates.begin(), kWignerStates.end(), state) != kWignerStates.end(),
              "unknown state '" + state + "'");
      require(grid_step > 0 && std::isfinite(grid_step), "grid step must be positive");
      require(grid_half_width > 0 && grid_half_width <= 8, "grid half-width must lie in (0, 8]");
      require(std::isfinite(a) && std::isfinite(r_state), "state parameters must be finite");
      require(!((state == "cat") && a == 0), "odd cat needs a != 0");
      require(!(state == "minus" && r_state == 0), "|r;-> is undefined at r = 0");
      break;
    case Experiment::entropy:
      r.validate("r");
      require(r.min >= 0 && r.max <= 1.5, "entropy r range must lie within [0, 1.5]");
      break;
    case Experiment::kerr_demo:
      r.validate("r");
      require(r.min > 0 && r.max <= 1.5, "kerr-demo r range must lie within (0, 1.5]");
      require(!alphas.empty(), "kerr-demo needs at least one --alpha");
      for (double al : alphas) {
        require(al > 0 && al <= 8, "probe amplitude must lie in (0, 8]; alpha = 0 cannot tell the branches apart");
      }
      break;
    case Experiment::minus_convert:
      require(r_state > 0 && r_state <= 1.5, "minus-convert needs 0 < r <= 1.5");
      require(t_step > 0 && t_step < 0.5, "transmittance step must lie in (0, 0.5)");
      require(source == "analytic" || source == "scheme", "source must be 'analytic' or 'scheme'");
      if (source == "scheme") {
        require(r_state >= kHeraldRMin && r_state <= kHeraldRMax, "scheme source needs r within [0.26, 0.92]");
        q.validate("q");
        require(q.min > 0 && q.min <= kHeraldQMax, "scheme source uses q-min, which must lie in (0, 0.9]");
      }
      break;
  }
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["experiment"] = to_string(experiment);
  j["r_range"] = range_json(r);
  j["q_range"] = range_json(q);
  j["cutoff"] = effective_cutoff();
  j["displacement_mode"] = sqcat::to_string(displacement);
  j["grid_step"] = grid_step;
  j["grid_half_width"] = grid_half_width;
  j["state"] = state;
  j["a"] = a;
  j["r"] = r_state;
  j["alpha"] = alphas;
  j["t_step"] = t_step;
  j["source"] = source;
  j["format"] = to_string(format);
  j["threads"] = threads;
  return j;
}

Table run_herald_surface(const RunConfig& config) {
  const auto rs = config.r.values();
  const auto qs = config.q.values();
  const int cutoff = config.effective_cutoff();
  const std::size_t nq = qs.size();
  Table t;
  t.columns = {"r", "q", "P", "F", "leakage"};
  t.rows.assign(rs.size() * nq, {});

  std::vector<FockVector> targets;
  for (double r : rs) targets.push_back(squeezed_cat(r, Sign::plus, kTargetCutoff, "A"));

  parallel_for(t.rows.size(), config.threads, [&](std::size_t idx) {
    const std::size_t i = idx / nq;
    const double r = rs[i];
    const double q = qs[idx % nq];
    const auto result = run_plus_scheme(solve_displacements(r, q), {cutoff, config.displacement});
    const double f = result.possible() ? fidelity(result, targets[i]) : 0.0;
    t.rows[idx] = {r, q, result.probability, f, result.leakage};
  });

  double p_min = INFINITY, p_max = -INFINITY, f_min = INFINITY, f_max = -INFINITY;
  for (const auto& row : t.rows) {
    p_min = std::min(p_min, row[2]);
    p_max = std::max(p_max, row[2]);
    f_min = std::min(f_min, row[3]);
    f_max = std::max(f_max, row[3]);
  }
  t.metadata = base_metadata(config);
  t.metadata["results"] = {{"P_min", p_min}, {"P_max", p_max}, {"F_min", f_min}, {"F_max", f_max}};
  t.metadata["notes"] = {"F is the overlap with |r;+> built at cutoff 40",
                         "leakage is the weight cut from the two-mode squeezed source"};
  return t;
}

Table run_wigner(const RunConfig& config) {
  const int cutoff = config.effective_cutoff();
  const auto [state, descriptor] = build_wigner_state(config, cutoff);
  const GridAxis axis{-config.grid_half_width, config.grid_half_width, config.grid_step};
  const WignerGrid grid = wigner_grid(state, axis, axis, descriptor, config.threads);
  const WignerEvaluator origin(state, 0.0);

  Table t;
  t.columns = {"re_alpha", "im_alpha", "W"};
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      t.rows.push_back({axis.at(static_cast<std::size_t>(i)), axis.at(static_cast<std::size_t>(j)), grid.values(i, j)});
    }
  }
  t.metadata = base_metadata(config);
  t.metadata["results"] = {{"state", descriptor},
                           {"W0", origin(0.0)},
                           {"W_min", grid.min()},
                           {"W_max", grid.max()},
                           {"integral", grid.integral()},
                           {"cutoff", grid.cutoff},
                           {"working_cutoff", grid.working_cutoff},
                           {"truncation_leakage", state.discarded_weight()}};
  return t;
}

Table run_entropy(const RunConfig& config) {
  const auto rs = config.r.values();
  const int cutoff = config.effective_cutoff();
  const EntropyCurve curve = entropy_curves(rs, cutoff, config.threads);

  Table t;
  t.columns = {"r", "S_minus", "S_plus", "S_tmsv", "leakage"};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    t.rows.push_back({rs[i], curve.s_minus[i], curve.s_plus[i], curve.s_tmsv[i], curve.leakage[i]});
  }
  ordered_json crossover = nullptr;
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    const double g0 = curve.s_minus[i] - curve.s_tmsv[i];
    const double g1 = curve.s_minus[i + 1] - curve.s_tmsv[i + 1];
    if (rs[i] > 0 && g0 > 0 && g1 <= 0) {
      crossover = entropy_crossover(rs[i], rs[i + 1], cutoff);
      break;
    }
  }
  t.metadata = base_metadata(config);
  t.metadata["results"] = {{"crossover_r", crossover},
                           {"max_leakage", *std::max_element(curve.leakage.begin(), curve.leakage.end())}};
  t.metadata["mapping_note"] = curve.mapping_note;
  return t;
}

Table run_kerr_demo(const RunConfig& config) {
  const auto rs = config.r.values();
  const int cutoff = config.effective_cutoff();
  const std::size_t na = config.alphas.size();
  std::vector<int> probe_cutoffs;
  for (double al : config.alphas) probe_cutoffs.push_back(probe_cutoff_for(al));

  Table t;
  t.columns = {"r", "alpha", "P_plus", "F_plus", "P_minus", "F_minus", "P_sum", "probe_overlap"};
  t.rows.assign(rs.size() * na, {});
  parallel_for(t.rows.size(), config.threads, [&](std::size_t idx) {
    const double r = rs[idx / na];
    const double alpha = config.alphas[idx % na];
    const FockVector input = squeezed_vacuum(r, 0.0, cutoff, "1");
    const FockVector out = cross_kerr_evolve(input, alpha, std::numbers::pi / 2, probe_cutoffs[idx % na]);
    const auto plus = cross_kerr_herald(out, alpha, Sign::plus);
    const auto minus = cross_kerr_herald(out, alpha, Sign::minus);
    const double f_plus = fidelity(plus, squeezed_cat(r, Sign::plus, cutoff, "1"));
    const double f_minus = fidelity(minus, squeezed_cat(r, Sign::minus, cutoff, "1"));
    t.rows[idx] = {r,        alpha,           plus.probability, f_plus, minus.probability,
                   f_minus, plus.probability + minus.probability, plus.diagnostic("probe_overlap")};
  });
  t.metadata = base_metadata(config);
  t.metadata["results"] = {{"kappa_tau", std::numbers::pi / 2}, {"probe_cutoffs", probe_cutoffs}};
  t.metadata["notes"] = {"herald modeled as projection onto |+alpha> or |-alpha>"};
  return t;
}

Table run_minus_convert(const RunConfig& config) {
  const double r = config.r_state;
  const int cutoff = config.effective_cutoff();
  FockVector input;
  if (config.source == "analytic") {
    const double tt = std::tanh(r);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(5);
    amps(0) = 1.0;
    amps(4) = std::sqrt(3.0) / (2.0 * std::sqrt(2.0)) * tt * tt;
    input = FockVector(ModeLayout::single("A", 4), amps / amps.norm());
  } else {
    const auto heralded = run_plus_scheme(solve_displacements(r, config.q.min), {default_cutoff(Experiment::herald_surface),
                                                                                config.displacement});
    input = heralded.heralded();
  }
  const FockVector target = squeezed_cat(r, Sign::minus, cutoff, "A");
  const double c4_over_c0 = (input.amplitudes()(4) / input.amplitudes()(0)).real();

  const auto count = static_cast<std::size_t>(std::floor(1.0 / config.t_step + 1e-9));
  Table t;
  t.columns = {"T", "P", "F"};
  t.rows.assign(count - 1, {});
  parallel_for(count - 1, config.threads, [&](std::size_t i) {
    const double tr = static_cast<double>(i + 1) * config.t_step;
    const auto converted = convert_to_minus(input, tr);
    t.rows[i] = {tr, converted.probability, fidelity(converted, target)};
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (t.rows[i][2] > t.rows[best][2]) best = i;

  t.metadata = base_metadata(config);
  ordered_json results = {{"c4_over_c0", c4_over_c0},
                          {"scan_T", t.rows[best][0]},
                          {"scan_F", t.rows[best][2]},
                          {"analytic_T", nullptr}};
  try {
    const double ta = analytic_minus_transmittance(c4_over_c0, r);
    results["analytic_T"] = ta;
    results["analytic_F"] = fidelity(convert_to_minus(input, ta), target);
  } catch (const std::domain_error&) {
  }
  t.metadata["results"] = results;
  return t;
}

Table run_experiment(const RunConfig& config) {
  config.validate();
  switch (config.experiment) {
    case Experiment::herald_surface:
      return run_herald_surface(config);
    case Experiment::wigner:
      return run_wigner(config);
    case Experiment::entropy:
      return run_entropy(config);
    case Experiment::kerr_demo:
      return run_kerr_demo(config);
    case Experiment::minus_convert:
      return run_minus_convert(config);
  }
  throw UsageError("unknown experiment");
}

std::string render(const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    ordered_json j;
    j["metadata"] = table.metadata;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(1) + "\n";
  }
  std::string s = "# " + table.metadata.dump() + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) s += (c ? "," : "") + table.columns[c];
  s += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += format_number(row[c]);
    }
    s += '\n';
  }
  return s;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into " + target.string());
  }
}

std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Truncated Fock-space experiments on squeezed cat states"};
  std::string experiment;
  std::optional<double> r_min, r_max, r_step, q_min, q_max, q_step;
  RunConfig c;
  std::string mode = "series6";
  std::string format = "csv";
  std::vector<double> alphas;
  std::optional<double> r_state;

  app.add_option("--experiment", experiment, "herald-surface | wigner | entropy | kerr-demo | minus-convert")
      ->required()
      ->check(CLI::IsMember(std::set<std::string>{"herald-surface", "wigner", "entropy", "kerr-demo", "minus-convert"}));
  app.add_option("--r-min", r_min, "Lower end of the r sweep");
  app.add_option("--r-max", r_max, "Upper end of the r sweep");
  app.add_option("--r-step", r_step, "Step of the r sweep");
  app.add_option("--q-min", q_min, "Lower end of the q sweep");
  app.add_option("--q-max", q_max, "Upper end of the q sweep");
  app.add_option("--q-step", q_step, "Step of the q sweep");
  app.add_option("--cutoff", c.cutoff, "Photon-number cutoff per mode (0 = experiment default)");
  app.add_option("--displacement-mode", mode, "exact | series6")
      ->check(CLI::IsMember(std::set<std::string>{"exact", "series6"}));
  app.add_option("--grid-step", c.grid_step, "Wigner grid spacing");
  app.add_option("--grid-half-width", c.grid_half_width, "Wigner grid covers [-w, w] on both axes");
  app.add_option("--state", c.state, "Wigner state: vacuum, coherent, cat, even-cat, squeezed, plus, minus");
  app.add_option("--a", c.a, "Coherent amplitude for coherent and cat states");
  app.add_option("--r", r_state, "Squeezing of the Wigner state or the converted state");
  app.add_option("--alpha", alphas, "Probe amplitudes for kerr-demo");
  app.add_option("--t-step", c.t_step, "Transmittance grid step for minus-convert");
  app.add_option("--source", c.source, "minus-convert input: analytic or scheme");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember(std::set<std::string>{"csv", "json"}));
  app.add_option("--out", c.out, "Output file (stdout when omitted)");
  app.add_option("--threads", c.threads, "Worker cap (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.experiment = kExperiments.at(experiment);
  switch (c.experiment) {
    case Experiment::entropy:
      c.r = {0.0, 0.94, 0.01};
      break;
    case Experiment::kerr_demo:
      c.r = {0.5, 0.5, 0.1};
      break;
    default:
      break;
  }
  if (c.experiment == Experiment::minus_convert) c.r_state = 0.5;
  if (r_min) c.r.min = *r_min;
  if (r_max) c.r.max = *r_max;
  if (r_step) c.r.step = *r_step;
  if (q_min) c.q.min = *q_min;
  if (q_max) c.q.max = *q_max;
  if (q_step) c.q.step = *q_step;
  if (r_state) c.r_state = *r_state;
  if (!alphas.empty()) c.alphas = alphas;
  c.displacement = mode == "exact" ? DisplacementMode::exact : DisplacementMode::series6;
  c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    auto parsed = parse_arguments(argc, argv, out);
    if (!parsed) return kExitOk;
    config = *parsed;
    config.validate();
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string payload;
  try {
    payload = render(run_experiment(config), config.format);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  try {
    if (config.out.empty()) {
      out << payload;
    } else {
      write_atomically(config.out, payload);
    }
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace sqcat::cli
