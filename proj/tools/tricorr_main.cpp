// tricorr: compute tripartite entanglement measures and statistical
// correlators for three-qubit states, sweep the built-in state families,
// find measure-inequivalent state pairs, follow amplitude-damping dynamics up
// to the sudden death of entanglement, and estimate correlators from
// finite-shot sampled measurement outcomes.
//
// Output goes to --output (default "-" = stdout) in --format csv or json.
// All output is buffered and written only after a command succeeds, so a
// failed run never leaves a partial file. Exit codes: 0 success, 2 usage
// error, 3 computation/validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricorr/tricorr.hpp"

namespace {

using nlohmann::json;
using namespace tricorr;

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct OutputSink {
  std::string path = "-";

  void write(const std::string& text) const {
    if (path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
  }
};

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json measure_report_json(const MeasureReport& r) {
  json j;
  j["edges"] = {{"D2_1_23", r.edges.d1_23}, {"D2_2_13", r.edges.d2_13}, {"D2_3_12", r.edges.d3_12}};
  j["F123"] = r.concurrence_fill;
  j["C_GMC"] = r.gmc;
  if (r.global_measure) j["G123"] = *r.global_measure;
  if (r.tangle) j["tau123"] = *r.tangle;
  j["edge_semantics"] = r.pure ? "squared-concurrence" : "linear-entropy-only (mixed input)";
  return j;
}

json correlator_report_json(const CorrelatorReport& r) {
  json j;
  j["per_cut"] = {{"1-(23)", r.per_cut[0]}, {"2-(13)", r.per_cut[1]}, {"3-(12)", r.per_cut[2]}};
  j["tripartite"] = r.tripartite;
  json degenerate = json::array();
  for (Bipartition cut : r.degenerate_cuts) degenerate.push_back(cut_name(cut));
  j["degenerate_cuts"] = degenerate;
  return j;
}

StateFamily family_from_flags(const std::string& family, const std::vector<std::string>& params) {
  StateFamily f{parse_family(family), {}};
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--param", "expected name=value, got '" + kv + "'");
    }
    try {
      f.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (...) {
      throw CLI::ValidationError("--param", "bad numeric value in '" + kv + "'");
    }
  }
  return f;
}

DensityMatrix3Q resolve_state(const std::string& family, const std::vector<std::string>& params,
                              const std::string& state_file) {
  if (!state_file.empty()) return density_of(load_state_file(state_file));
  if (family.empty()) {
    throw CLI::ValidationError("state", "provide --family/--param or --state-file");
  }
  return make_density(family_from_flags(family, params));
}

std::string render_records(const std::vector<ScanRecord>& records, const std::string& format) {
  if (format == "csv") return table_to_csv(records);
  return table_to_json(records).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tripartite entanglement measures and statistical correlators"};
  app.require_subcommand(1);

  std::string family, state_file, observable = "X", basis = "Z", grid_spec, output = "-", format;
  std::vector<std::string> params;
  double esd_y = 0.5, esd_tmax = 2.0;
  int esd_steps = 200;
  std::uint64_t shots = 100000, seed = 1;
  std::string sample_kind = "pcc";
  std::string obs1 = "X", obs2 = "P1";
  double tie_tol = 5e-3;

  auto add_state_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", family, "state family id");
    cmd->add_option("--param", params, "family parameter name=value (repeatable)");
    cmd->add_option("--state-file", state_file, "JSON state file (amplitudes or matrix)");
  };
  // format defaults to csv for sweep-style commands and json otherwise;
  // an empty string means "use the command's default".
  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "output path, - for stdout");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* measures_cmd = app.add_subcommand("measures", "entanglement measures of one state");
  add_state_flags(measures_cmd);
  add_output_flags(measures_cmd);

  CLI::App* correlators_cmd =
      app.add_subcommand("correlators", "PCC/MI/MP of one state for an observable and basis");
  add_state_flags(correlators_cmd);
  correlators_cmd->add_option("--observable", observable, "PCC observable label");
  correlators_cmd->add_option("--basis", basis, "MI/MP basis label");
  add_output_flags(correlators_cmd);

  CLI::App* scan_cmd = app.add_subcommand("scan", "sweep a family parameter");
  scan_cmd->add_option("--family", family, "state family id")->required();
  scan_cmd->add_option("--grid", grid_spec, "start:stop:step")->required();
  std::vector<std::string> quantities = {"F123", "C_GMC"};
  scan_cmd->add_option("--quantity", quantities, "quantity ids (repeatable)");
  add_output_flags(scan_cmd);

  CLI::App* ineq_cmd =
      app.add_subcommand("inequivalence", "measure-inequivalent x-family pairs");
  ineq_cmd->add_option("--grid", grid_spec, "start:stop:step")->required();
  ineq_cmd->add_option("--tie-tol", tie_tol, "tie tolerance on either measure");
  add_output_flags(ineq_cmd);

  CLI::App* esd_cmd = app.add_subcommand("esd", "amplitude-damping trajectory");
  esd_cmd->add_option("--y", esd_y, "initial-state parameter in (0,1)")->required();
  esd_cmd->add_option("--tmax", esd_tmax, "largest t/tau");
  esd_cmd->add_option("--steps", esd_steps, "number of time steps");
  add_output_flags(esd_cmd);

  CLI::App* maccone_cmd = app.add_subcommand("maccone", "two-observable correlator sum");
  add_state_flags(maccone_cmd);
  maccone_cmd->add_option("--obs1", obs1, "first observable label");
  maccone_cmd->add_option("--obs2", obs2, "second observable label");
  add_output_flags(maccone_cmd);

  CLI::App* mixed_cmd = app.add_subcommand("mixed", "GHZ/W mixture study over p");
  mixed_cmd->add_option("--grid", grid_spec, "start:stop:step (defaults to 0:1:0.0025)");
  add_output_flags(mixed_cmd);

  CLI::App* sample_cmd = app.add_subcommand("sample", "finite-shot correlator estimate");
  add_state_flags(sample_cmd);
  sample_cmd->add_option("--observable", observable, "observable label");
  sample_cmd->add_option("--kind", sample_kind, "pcc, mi, or mp")
      ->check(CLI::IsMember({"pcc", "mi", "mp"}));
  sample_cmd->add_option("--shots", shots, "shots per measurement setting");
  sample_cmd->add_option("--seed", seed, "RNG seed");
  add_output_flags(sample_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a state file");
  validate_cmd->add_option("--state-file", state_file, "JSON state file")->required();
  add_output_flags(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return kExitUsage;
  }

  const bool csv_default = scan_cmd->parsed() || ineq_cmd->parsed() || esd_cmd->parsed() ||
                           mixed_cmd->parsed();
  if (format.empty()) format = csv_default ? "csv" : "json";

  try {
    std::string rendered;
    OutputSink sink{output};

    if (measures_cmd->parsed()) {
      const DensityMatrix3Q rho = resolve_state(family, params, state_file);
      MeasureReport report = measure_state(rho);
      if (!family.empty()) {
        const StateFamily f = family_from_flags(family, params);
        if (f.id == FamilyId::generalized_ghz || f.id == FamilyId::generalized_w) {
          report.tangle = tangle_closed(f);
        }
      }
      json j = measure_report_json(report);
      if (format == "csv") {
        std::ostringstream os;
        os << "F123,C_GMC,G123,D2_1_23,D2_2_13,D2_3_12\n"
           << format_value(report.concurrence_fill) << "," << format_value(report.gmc) << ","
           << format_value(report.global_measure.value_or(0.0)) << ","
           << format_value(report.edges.d1_23) << "," << format_value(report.edges.d2_13) << ","
           << format_value(report.edges.d3_12) << "\n";
        rendered = os.str();
      } else {
        rendered = j.dump(2) + "\n";
      }
    } else if (correlators_cmd->parsed()) {
      const DensityMatrix3Q rho = resolve_state(family, params, state_file);
      json j;
      j["pcc"] = correlator_report_json(pcc_tripartite(rho, named_observable(observable)));
      j["pcc"]["observable"] = observable;
      j["mi"] = correlator_report_json(mi_tripartite(rho, named_basis(basis)));
      j["mi"]["basis"] = basis;
      j["mp"] = {{"basis", basis}, {"value", mp_tripartite(rho, named_basis(basis))}};
      rendered = j.dump(2) + "\n";
    } else if (scan_cmd->parsed()) {
      const auto spec = parse_grid_spec(grid_spec);
      const auto grid = make_grid(spec[0], spec[1], spec[2]);
      const auto records = scan_family(parse_family(family), grid, quantities);
      rendered = render_records(records, format);
    } else if (ineq_cmd->parsed()) {
      const auto spec = parse_grid_spec(grid_spec);
      const auto pairs = find_inequivalence_pairs(make_grid(spec[0], spec[1], spec[2]), tie_tol);
      if (format == "csv") {
        std::ostringstream os;
        os << "a1,a2,C_GMC_a1,C_GMC_a2,F123_a1,F123_a2,gmc_tie,cf_tie\n";
        for (const auto& p : pairs) {
          os << format_value(p.a1) << "," << format_value(p.a2) << "," << format_value(p.gmc1)
             << "," << format_value(p.gmc2) << "," << format_value(p.cf1) << ","
             << format_value(p.cf2) << "," << (p.gmc_tie ? 1 : 0) << "," << (p.cf_tie ? 1 : 0)
             << "\n";
        }
        rendered = os.str();
      } else {
        json arr = json::array();
        for (const auto& p : pairs) {
          arr.push_back({{"a1", p.a1},
                         {"a2", p.a2},
                         {"C_GMC", {p.gmc1, p.gmc2}},
                         {"F123", {p.cf1, p.cf2}},
                         {"gmc_tie", p.gmc_tie},
                         {"cf_tie", p.cf_tie}});
        }
        rendered = arr.dump(2) + "\n";
      }
    } else if (esd_cmd->parsed()) {
      if (!(esd_y > 0.0 && esd_y < 1.0)) {
        throw std::invalid_argument("esd: --y must lie strictly inside (0,1)");
      }
      if (esd_steps < 1) throw std::invalid_argument("esd: --steps must be positive");
      const PureState3Q initial = make_ghz_y(esd_y);
      const ObservableSpec pplus = named_observable("Pplus");
      const ProductBasis bx = named_basis("X");
      const ProductBasis bz = named_basis("Z");
      std::vector<ScanRecord> records;
      records.reserve(esd_steps + 1);
      for (int k = 0; k <= esd_steps; ++k) {
        const double t = esd_tmax * k / esd_steps;
        const DensityMatrix3Q rho = damp_state(initial, t);
        const double pcc = pcc_tripartite(rho, pplus).tripartite;
        ScanRecord rec{"t_over_tau", t, {}};
        rec.quantities.emplace_back("gmc_closed", gmc_damped_closed(esd_y, t));
        rec.quantities.emplace_back("pcc_plus", pcc);
        rec.quantities.emplace_back("gmc_from_pcc", gmc_from_pcc(std::min(pcc, 2.0 * std::sqrt(esd_y * (1 - esd_y)) / std::sqrt(3.0)), esd_y));
        rec.quantities.emplace_back("mi_x", mi_tripartite(rho, bx).tripartite);
        rec.quantities.emplace_back("mp_z", mp_tripartite(rho, bz));
        records.push_back(std::move(rec));
      }
      if (format == "csv") {
        std::string csv = table_to_csv(records);
        // Column header carries the time axis name.
        csv.replace(0, 5, "t_over_tau");
        rendered = std::move(csv);
      } else {
        json j;
        j["records"] = table_to_json(records);
        const auto death = esd_time(esd_y);
        j["esd_time"] = death ? json(*death) : json(nullptr);
        rendered = j.dump(2) + "\n";
      }
    } else if (maccone_cmd->parsed()) {
      const DensityMatrix3Q rho = resolve_state(family, params, state_file);
      const double value = maccone_sum(rho, named_observable(obs1), named_observable(obs2));
      json j{{"obs1", obs1}, {"obs2", obs2}, {"value", value}};
      rendered = j.dump(2) + "\n";
    } else if (mixed_cmd->parsed()) {
      std::array<double, 3> spec{0.0, 1.0, 0.0025};
      if (!grid_spec.empty()) spec = parse_grid_spec(grid_spec);
      const auto records = mixed_state_study(make_grid(spec[0], spec[1], spec[2]));
      if (format == "csv") {
        rendered = table_to_csv(records);
      } else {
        json j;
        j["records"] = table_to_json(records);
        j["note"] =
            "F123_closed is the known analytic curve for this mixture; *_num columns are "
            "computed from the density matrix";
        rendered = j.dump(2) + "\n";
      }
    } else if (sample_cmd->parsed()) {
      const DensityMatrix3Q rho = resolve_state(family, params, state_file);
      const EstimatorKind kind = sample_kind == "pcc"   ? EstimatorKind::pcc
                                 : sample_kind == "mi" ? EstimatorKind::mi
                                                        : EstimatorKind::mp;
      const SampleEstimate est =
          sample_correlators(rho, named_observable(observable), kind, shots, seed);
      json j;
      j["kind"] = sample_kind;
      j["observable"] = observable;
      j["shots"] = est.shots;
      j["seed"] = est.seed;
      j["estimate"] = est.tripartite;
      j["standard_error"] = est.tripartite_se;
      j["se_reliable"] = est.se_reliable;
      j["per_cut"] = {est.per_cut[0], est.per_cut[1], est.per_cut[2]};
      j["per_cut_se"] = {est.per_cut_se[0], est.per_cut_se[1], est.per_cut_se[2]};
      j["degenerate"] = {est.degenerate[0], est.degenerate[1], est.degenerate[2]};
      rendered = j.dump(2) + "\n";
    } else if (validate_cmd->parsed()) {
      json j;
      try {
        const LoadedState state = load_state_file(state_file);
        j["valid"] = true;
        if (std::holds_alternative<PureState3Q>(state)) {
          j["kind"] = "pure";
          json amps = json::array();
          for (const auto& a : std::get<PureState3Q>(state).amplitudes())
            amps.push_back(complex_json(a));
          j["amplitudes"] = amps;
        } else {
          j["kind"] = "density";
          const DensityValidation v =
              validate_density(std::get<DensityMatrix3Q>(state).matrix());
          j["report"] = {{"hermiticity_deviation", v.hermiticity_deviation},
                         {"trace_deviation", v.trace_deviation},
                         {"min_eigenvalue", v.min_eigenvalue}};
        }
      } catch (const std::exception& e) {
        json err{{"error", {{"kind", "validation"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitFailure;
      }
      rendered = j.dump(2) + "\n";
    }

    sink.write(rendered);
    return 0;
  } catch (const CLI::ValidationError& e) {
    json err{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    json err{{"error", {{"kind", "computation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return kExitFailure;
  }
}
