#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeco/decoherence.hpp"
#include "qdeco/error.hpp"
#include "qdeco/field_decoherence.hpp"
#include "qdeco/hilbert.hpp"
#include "qdeco/lattice_qed.hpp"
#include "qdeco/units.hpp"

namespace qdeco::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kLatticeTolerance = 1e-12;
constexpr double kEntropyTolerance = 1e-9;
constexpr int kIdentityTrials = 50;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

json number(double v) { return json(rounded(v)); }

json numbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  std::optional<std::uint64_t> seed;
  json tolerances = json::object();
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<double>> rows;
  std::string failure;  // empty when every check passed
};

struct Params {
  std::string out;
  std::string format = "json";
  std::string config;

  std::string coeffs;
  double env_overlap = 0.0;

  std::size_t spins = 0;
  std::string coupling;
  double t_max = 0.0;
  std::size_t steps = 0;

  std::size_t sites = 0;
  int emax = 0;
  int left_field = 0;
  std::uint64_t seed = 0;

  double volume_cm3 = 0.0;
  double efield_v_per_cm = 0.0;
  double threshold = 1.0;

  double time_s = 0.0;
  double lambda_cm2s = field::ThermalModel{}.localization_rate_cm2_s;
};

struct Command {
  std::unique_ptr<CLI::App> app;
  Params params;
  std::map<std::string, CLI::App*> leaves;  // "lattice superselect" -> subcommand
};

void add_common(CLI::App* sub, Params& p) {
  sub->add_option("--out", p.out, "Write the report to this file instead of standard output");
  sub->add_option("--format", p.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--config", p.config, "Flat key = value file; command-line flags take precedence");
}

std::unique_ptr<Command> build_command() {
  auto cmd = std::make_unique<Command>();
  cmd->app = std::make_unique<CLI::App>("Decoherence and superselection numerical laboratory", std::string(kToolName));
  auto& app = *cmd->app;
  auto& p = cmd->params;
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  auto* tri = app.add_subcommand("tripartite", "System-apparatus-environment correlated state");
  tri->add_option("--coeffs", p.coeffs, "Branch amplitudes c0,c1,...")->required();
  tri->add_option("--env-overlap", p.env_overlap, "Overlap <E_n|E_m> for n != m")->required();
  add_common(tri, p);
  cmd->leaves["tripartite"] = tri;

  auto* deph = app.add_subcommand("dephasing", "Qubit dephased by a bath of spins");
  deph->add_option("--spins", p.spins, "Number of bath spins")->required();
  deph->add_option("--coupling", p.coupling, "One coupling for every spin, or a comma list")->required();
  deph->add_option("--t-max", p.t_max, "End of the time grid")->required();
  deph->add_option("--steps", p.steps, "Number of grid intervals")->required();
  add_common(deph, p);
  cmd->leaves["dephasing"] = deph;

  auto* lattice = app.add_subcommand("lattice", "Lattice gauge theory checks");
  lattice->require_subcommand(1);
  auto* sup = lattice->add_subcommand("superselect", "Charge superselection for interior observables");
  sup->add_option("--sites", p.sites, "Number of sites")->required();
  sup->add_option("--emax", p.emax, "Electric field truncation")->required();
  sup->add_option("--left-field", p.left_field, "Fixed boundary field left of site 1")->required();
  add_common(sup, p);
  cmd->leaves["lattice superselect"] = sup;
  auto* ident = lattice->add_subcommand("identity-check", "Gauge generator = surface term + bulk constraint");
  ident->add_option("--sites", p.sites, "Number of sites")->required();
  ident->add_option("--emax", p.emax, "Electric field truncation")->required();
  ident->add_option("--seed", p.seed, "Seed for the random gauge functions")->required();
  add_common(ident, p);
  cmd->leaves["lattice identity-check"] = ident;

  auto* field = app.add_subcommand("field", "Decoherence of superposed electric fields");
  field->require_subcommand(1);
  auto* factor = field->add_subcommand("factor", "Suppression factor of the interference term");
  factor->add_option("--volume-cm3", p.volume_cm3, "Volume in cm^3")->required();
  factor->add_option("--efield-v-per-cm", p.efield_v_per_cm, "Field amplitude in V/cm")->required();
  add_common(factor, p);
  cmd->leaves["field factor"] = factor;
  auto* length = field->add_subcommand("coherence-length", "Cube edge at which the factor reaches exp(-threshold)");
  length->add_option("--efield-v-per-cm", p.efield_v_per_cm, "Field amplitude in V/cm")->required();
  length->add_option("--threshold", p.threshold, "Suppression exponent defining the length")->capture_default_str();
  add_common(length, p);
  cmd->leaves["field coherence-length"] = length;
  auto* validity = field->add_subcommand("validity-time", "Time after which the suppression law applies");
  validity->add_option("--efield-v-per-cm", p.efield_v_per_cm, "Field amplitude in V/cm")->required();
  add_common(validity, p);
  cmd->leaves["field validity-time"] = validity;

  auto* thermal = app.add_subcommand("thermal", "Thermal localization of free electrons");
  thermal->require_subcommand(1);
  auto* thermal_length = thermal->add_subcommand("length", "Coherence length after a given time");
  thermal_length->add_option("--time-s", p.time_s, "Elapsed time in seconds")->required();
  thermal_length->add_option("--lambda-cm2s", p.lambda_cm2s, "Localization rate in cm^-2 s^-1")->capture_default_str();
  add_common(thermal_length, p);
  cmd->leaves["thermal length"] = thermal_length;
  return cmd;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    const auto rest = item.find_first_not_of(" \t", used);
    if (used == 0 || rest != std::string::npos) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": expected a comma-separated list of numbers");
  return out;
}

// Flag names that appear on the command line, without the leading dashes.
std::vector<std::string> given_flags(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (a.size() > 2 && a.compare(0, 2, "--") == 0) out.push_back(a.substr(2, a.find('=') - 2));
  }
  return out;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: missing file name");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config entries as "--flag=value" tokens, skipping flags given explicitly.
std::vector<std::string> config_tokens(const std::string& path, const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  const auto given = given_flags(args);
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (!item.parents.empty() || item.name == "++" || item.name == "--") {
      throw UsageError("--config: sections and dotted keys are not supported");
    }
    std::string flag = item.name;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "config") throw UsageError("--config: a config file cannot name another config file");
    if (std::find(given.begin(), given.end(), flag) != given.end()) continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    out.push_back("--" + flag + "=" + value);
  }
  return out;
}

// --- experiments ---

Report run_tripartite(const Params& p) {
  Report r;
  r.command = "tripartite";
  const auto coeffs = parse_list(p.coeffs, "--coeffs");
  r.inputs["coeffs"] = numbers(coeffs);
  r.inputs["env_overlap"] = number(p.env_overlap);

  const std::vector<hilbert::Complex> amplitudes(coeffs.begin(), coeffs.end());
  const auto spec = decoherence::uniform_overlap_spec(amplitudes, p.env_overlap);
  const auto state = decoherence::build_correlated_state(spec);
  const auto rho = decoherence::reduce_to_apparatus(state);

  const std::size_t n = coeffs.size();
  std::vector<double> populations;
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k * n + k);
    populations.push_back(rho.matrix()(idx, idx).real());
  }
  r.outputs["branches"] = n;
  r.outputs["reduced_dim"] = rho.dim();
  r.outputs["populations"] = numbers(populations);
  r.outputs["coherence_norm"] = number(hilbert::coherence_norm(rho));
  r.outputs["purity"] = number(hilbert::purity(rho));
  r.outputs["entropy_nats"] = number(hilbert::von_neumann_entropy(rho));
  if (n > 1) r.outputs["environment_overlap_01"] = number(std::abs(decoherence::environment_overlap(spec, 0, 1)));
  r.tolerances["normalization"] = decoherence::kStateNormTolerance;
  return r;
}

Report run_dephasing(const Params& p) {
  Report r;
  r.command = "dephasing";
  auto couplings = parse_list(p.coupling, "--coupling");
  if (couplings.size() == 1) couplings.assign(p.spins, couplings.front());
  if (couplings.size() != p.spins) {
    throw DimensionError("--coupling: expected 1 or " + std::to_string(p.spins) + " values, got " +
                         std::to_string(couplings.size()));
  }
  r.inputs["spins"] = p.spins;
  r.inputs["coupling"] = numbers(couplings);
  r.inputs["t_max"] = number(p.t_max);
  r.inputs["steps"] = p.steps;

  const auto model = decoherence::SpinBathModel::equal_weights(couplings);
  const auto times = decoherence::time_grid(p.t_max, p.steps);
  const auto curve = decoherence::spin_bath_evolve(model, times);
  const auto check = decoherence::entropy_curve(curve);

  r.outputs["points"] = check.points;
  r.outputs["final_coherence"] = number(curve.coherence.back());
  r.outputs["closed_form_final_coherence"] = number(decoherence::spin_bath_coherence(model, times.back()));
  r.outputs["final_entropy_nats"] = number(curve.entropy.back());
  r.outputs["entropy_max_deviation"] = number(check.max_deviation);
  r.outputs["entropy_monotone"] = check.monotone;
  r.tolerances["entropy"] = kEntropyTolerance;

  r.header = std::vector<std::string>{"t", "coherence", "entropy"};
  for (std::size_t i = 0; i < times.size(); ++i) r.rows.push_back({curve.times[i], curve.coherence[i], curve.entropy[i]});
  if (!check.passed(kEntropyTolerance)) r.failure = "entropy curve deviates from h((1 - |r|)/2)";
  return r;
}

Report run_superselect(const Params& p) {
  Report r;
  r.command = "lattice superselect";
  r.inputs["sites"] = p.sites;
  r.inputs["emax"] = p.emax;
  r.inputs["left_field"] = p.left_field;

  const lattice::LatticeSpec spec(p.sites, p.emax, p.left_field);
  const auto physical = lattice::physical_subspace(spec);
  const auto sectors = lattice::sector_decomposition(physical);
  if (sectors.sectors.size() < 2) throw DomainError("lattice superselect: only one charge sector is populated");
  const auto& high = *sectors.sectors.rbegin();
  const auto& low = *sectors.sectors.begin();
  const auto plus = hilbert::StateVector::basis(spec.layout(), high.second.front());
  const auto minus = hilbert::StateVector::basis(spec.layout(), low.second.front());

  const auto report = lattice::superselection_report(spec, plus, minus);
  const auto global = lattice::superselection_report(
      spec, plus, minus, lattice::gauge_invariant_operator_basis(spec, lattice::whole_lattice(spec)));

  r.outputs["physical_dim"] = report.physical_dim;
  json sizes = json::object();
  for (const auto& [charge, size] : report.sector_sizes) sizes[std::to_string(charge)] = size;
  r.outputs["sector_sizes"] = sizes;
  r.outputs["charge_plus"] = report.charge_plus;
  r.outputs["charge_minus"] = report.charge_minus;
  r.outputs["observable_count"] = report.observable_count;
  r.outputs["max_cross"] = number(report.max_cross);
  r.outputs["max_mixture_deviation"] = number(report.max_mixture_deviation);
  r.outputs["max_charge_commutator"] = number(report.max_charge_commutator);
  r.outputs["boundary_max_cross"] = number(global.max_cross);
  r.tolerances["superselection"] = kLatticeTolerance;

  if (report.max_cross > kLatticeTolerance || report.max_mixture_deviation > kLatticeTolerance ||
      report.max_charge_commutator > kLatticeTolerance) {
    r.failure = "interior observable connects charge sectors";
  }
  return r;
}

Report run_identity_check(const Params& p) {
  Report r;
  r.command = "lattice identity-check";
  r.inputs["sites"] = p.sites;
  r.inputs["emax"] = p.emax;
  r.seed = p.seed;

  const lattice::LatticeSpec spec(p.sites, p.emax, 0);
  const auto physical = lattice::physical_subspace(spec);
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double identity = 0.0;
  double kernel = 0.0;
  for (int trial = 0; trial < kIdentityTrials; ++trial) {
    lattice::GaugeFunction xi;
    for (std::size_t x = 0; x < p.sites; ++x) xi.values.push_back(angle(rng));
    xi.left = angle(rng);
    xi.infinity = angle(rng);
    identity = std::max(identity, lattice::identity_residual(spec, xi));
    kernel = std::max(kernel, lattice::kernel_residual(physical, xi));
  }
  r.outputs["trials"] = kIdentityTrials;
  r.outputs["physical_dim"] = physical.dim();
  r.outputs["max_identity_residual"] = number(identity);
  r.outputs["max_kernel_residual"] = number(kernel);
  r.tolerances["identity"] = kLatticeTolerance;
  if (identity > kLatticeTolerance || kernel > kLatticeTolerance) r.failure = "gauge generator residual over tolerance";
  return r;
}

Report run_field_factor(const Params& p) {
  Report r;
  r.command = "field factor";
  r.inputs["volume_cm3"] = number(p.volume_cm3);
  r.inputs["efield_v_per_cm"] = number(p.efield_v_per_cm);
  const auto volume = units::cubic_centimetres(p.volume_cm3);
  const auto efield = units::volts_per_centimetre(p.efield_v_per_cm);
  const double v = units::in_natural(volume, units::Dimension::volume);
  const double e = units::in_natural(efield, units::Dimension::electric_field);
  r.outputs["volume_mev_inv3"] = number(v);
  r.outputs["efield_mev2"] = number(e);
  r.outputs["exponent"] = number(field::suppression_exponent_natural(v, e));
  r.outputs["factor"] = number(field::decoherence_factor(volume, efield));
  return r;
}

Report run_coherence_length(const Params& p) {
  Report r;
  r.command = "field coherence-length";
  r.inputs["efield_v_per_cm"] = number(p.efield_v_per_cm);
  r.inputs["threshold"] = number(p.threshold);
  const auto length = field::coherence_length(units::volts_per_centimetre(p.efield_v_per_cm), p.threshold);
  r.outputs["length_cm"] = number(units::in_centimetres(length));
  r.outputs["length_mev_inv"] = number(length.magnitude);
  return r;
}

Report run_validity_time(const Params& p) {
  Report r;
  r.command = "field validity-time";
  r.inputs["efield_v_per_cm"] = number(p.efield_v_per_cm);
  const auto t = field::validity_time(units::volts_per_centimetre(p.efield_v_per_cm));
  r.outputs["t_min_s"] = number(units::in_seconds(t));
  r.outputs["t_min_mev_inv"] = number(t.magnitude);
  return r;
}

Report run_thermal_length(const Params& p) {
  Report r;
  r.command = "thermal length";
  r.inputs["time_s"] = number(p.time_s);
  r.inputs["lambda_cm2s"] = number(p.lambda_cm2s);
  field::ThermalModel model;
  model.localization_rate_cm2_s = p.lambda_cm2s;
  r.outputs["length_cm"] = number(field::thermal_coherence_length_cm(p.time_s, model));
  return r;
}

// --- serialization ---

void flatten(const std::string& prefix, const json& value, std::vector<std::string>& names,
             std::vector<std::string>& cells) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) flatten(prefix + "." + key, item, names, cells);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) flatten(prefix + "." + std::to_string(i), value[i], names, cells);
  } else {
    names.push_back(prefix);
    if (value.is_number_float()) {
      cells.push_back(format_number(value.get<double>()));
    } else if (value.is_string()) {
      cells.push_back(value.get<std::string>());
    } else {
      cells.push_back(value.dump());
    }
  }
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line + "\n";
}

std::string serialize(const Report& r, Format format) {
  if (format == Format::csv) {
    if (r.header) return emit_sweep(r.rows, *r.header, Format::csv);
    std::vector<std::string> names;
    std::vector<std::string> cells;
    for (const auto& [key, item] : r.outputs.items()) flatten(key, item, names, cells);
    return join(names) + join(cells);
  }
  json doc = json::object();
  doc["command"] = r.command;
  doc["inputs"] = r.inputs;
  doc["outputs"] = r.outputs;
  json provenance = json::object();
  provenance["tool"] = kToolName;
  provenance["version"] = kToolVersion;
  provenance["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  provenance["tolerances"] = r.tolerances;
  doc["provenance"] = provenance;
  if (r.header) {
    json table = json::object();
    table["header"] = *r.header;
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(numbers(row));
    table["rows"] = rows;
    doc["table"] = table;
  }
  return doc.dump(2) + "\n";
}

RunResult usage_failure(const std::string& message, const CLI::App& app) {
  return {static_cast<int>(ExitCode::usage), "", "error: " + message + "\n\n" + app.help()};
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string emit_sweep(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& header,
                       Format format) {
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw DimensionError("emit_sweep: row of width " + std::to_string(row.size()) + " under a header of width " +
                           std::to_string(header.size()));
    }
  }
  if (format == Format::csv) {
    std::string text = join(header);
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      for (double v : row) cells.push_back(format_number(v));
      text += join(cells);
    }
    return text;
  }
  json out = json::array();
  for (const auto& row : rows) {
    json object = json::object();
    for (std::size_t i = 0; i < header.size(); ++i) object[header[i]] = number(row[i]);
    out.push_back(object);
  }
  return out.dump(2) + "\n";
}

RunResult run(const std::vector<std::string>& args) {
  auto cmd = build_command();
  auto& app = *cmd->app;

  std::vector<std::string> tokens = args;
  try {
    if (const auto path = config_path(args)) {
      const auto extra = config_tokens(*path, args);
      tokens.insert(tokens.end(), extra.begin(), extra.end());
    }
  } catch (const UsageError& e) {
    return usage_failure(e.what(), app);
  }

  try {
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    if (code == 0) return {0, out.str(), err.str()};
    return usage_failure(e.what(), app);
  }

  std::string leaf;
  for (const auto& [name, sub] : cmd->leaves) {
    if (sub->parsed()) leaf = name;
  }
  const auto& p = cmd->params;
  const Format format = p.format == "csv" ? Format::csv : Format::json;

  Report report;
  try {
    if (leaf == "tripartite") report = run_tripartite(p);
    else if (leaf == "dephasing") report = run_dephasing(p);
    else if (leaf == "lattice superselect") report = run_superselect(p);
    else if (leaf == "lattice identity-check") report = run_identity_check(p);
    else if (leaf == "field factor") report = run_field_factor(p);
    else if (leaf == "field coherence-length") report = run_coherence_length(p);
    else if (leaf == "field validity-time") report = run_validity_time(p);
    else if (leaf == "thermal length") report = run_thermal_length(p);
    else return usage_failure("no experiment selected", app);
  } catch (const UsageError& e) {
    return usage_failure(e.what(), app);
  } catch (const qdeco::Error& e) {
    return {static_cast<int>(ExitCode::validation), "", "error: " + std::string(e.what()) + "\n"};
  }

  RunResult result;
  const std::string text = serialize(report, format);
  if (p.out.empty()) {
    result.out = text;
  } else {
    std::ofstream file(p.out, std::ios::binary);
    file << text;
    if (!file) return {static_cast<int>(ExitCode::validation), "", "error: cannot write '" + p.out + "'\n"};
  }
  if (!report.failure.empty()) {
    result.exit_code = static_cast<int>(ExitCode::validation);
    result.err = "validation failed: " + report.failure + "\n";
  }
  return result;
}

}  // namespace qdeco::cli
