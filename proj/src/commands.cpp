#include "chemo/commands.hpp"

#include <filesystem>
#include <fstream>

#include "chemo/errors.hpp"
#include "chemo/hypothesis.hpp"
#include "chemo/oracle.hpp"
#include "chemo/pullback.hpp"
#include "chemo/simulate.hpp"
#include "chemo/sweep.hpp"

namespace chemo {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

fs::path default_output_dir(const std::string& config_path) {
  return fs::path(config_path).stem().string() + "_out";
}

// Classifies a caught error into the CLI exit code contract.
int exit_code_for(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfigError;
  if (dynamic_cast<const EmptyConstantTable*>(&e)) return kExitConfigError;
  if (dynamic_cast<const InvalidSpec*>(&e)) return kExitConfigError;
  if (dynamic_cast<const HypothesisViolated*>(&e)) return kExitCheckFailed;
  return kExitSolverError;
}

std::string human_summary(const RunConfig& cfg, const RunRecord& rec,
                          const HypothesisReport& h2) {
  std::string s;
  s += "run " + rec.config_hash + "\n";
  s += "  window: [" + format_g17(cfg.t_start) + ", " + format_g17(cfg.t_end) +
       "], grid " + std::to_string(cfg.domain.cells[0]);
  if (cfg.domain.dimension == 2)
    s += "x" + std::to_string(cfg.domain.cells[1]);
  s += ", scheme " + std::string(to_string(cfg.scheme)) + "\n";
  s += "  condition H2: ";
  s += h2.satisfied ? "satisfied" : "NOT satisfied";
  s += " (margin_local " + format_g17(h2.margin_local) + ", margin_nonlocal " +
       format_g17(h2.margin_nonlocal) + ")\n";
  if (!h2.notes.empty()) s += "  note: " + h2.notes + "\n";
  s += "  classification: ";
  s += to_string(rec.classification.outcome);
  switch (rec.classification.outcome) {
    case RunOutcome::kPersistent:
      s += " (eta_hat " + format_g17(rec.classification.eta_hat) +
           ", tau_hat " + format_g17(rec.classification.tau_hat) + ")";
      break;
    case RunOutcome::kConverged:
      s += " (steady error " + format_g17(rec.classification.steady_error) + ")";
      break;
    case RunOutcome::kExtinctionSuspect:
      s += " (tail min " + format_g17(rec.classification.tail_min) + ")";
      break;
    case RunOutcome::kBlowUp:
      s += " (t " + format_g17(rec.classification.t_blow) + ")";
      break;
    default:
      break;
  }
  s += "\n";
  if (rec.bound_checks) {
    s += "  mass envelope: ";
    s += rec.bound_checks->mass_envelope_ok ? "respected" : "VIOLATED";
    s += " (m1_eventual " + format_g17(rec.bound_checks->m1_eventual) +
         ", m2_eventual " + format_g17(rec.bound_checks->m2_eventual) + ")\n";
  }
  if (!rec.notes.empty()) s += "  " + rec.notes + "\n";
  return s;
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = load_run_config(opts.config_path);
    if (opts.seed_override >= 0) {
      if (RandomSmoothInit* r = std::get_if<RandomSmoothInit>(&cfg.initial))
        r->seed = static_cast<std::uint64_t>(opts.seed_override);
      else
        out << "note: --seed ignored (initial data is not random)\n";
    }

    HypothesisReport h2 = check_h2(cfg.params, cfg.coeffs, cfg.domain,
                                   cfg.t_start, cfg.t_end);
    HypothesisReport h1;
    bool have_h1 = !cfg.c_gamma_table.empty();
    if (have_h1)
      h1 = check_h1(cfg.params, cfg.coeffs, cfg.domain, cfg.t_start, cfg.t_end,
                    cfg.c_gamma_table);

    RunRecord rec = simulate(cfg);

    fs::path dir = opts.output_dir.empty() ? default_output_dir(opts.config_path)
                                           : fs::path(opts.output_dir);
    fs::create_directories(dir);
    write_file(dir / "snapshots.csv", rec.snapshots_csv());

    JValue record_json = rec.to_json();
    record_json.set("hypothesis_h2", h2.to_json());
    if (have_h1) record_json.set("hypothesis_h1", h1.to_json());
    write_file(dir / "record.json", record_json.dump(2) + "\n");

    std::string summary = human_summary(cfg, rec, h2);
    write_file(dir / "summary.txt", summary);
    out << summary;
    out << "artifacts in " << dir.string() << "\n";

    if (rec.classification.outcome == RunOutcome::kBlowUp) {
      err << "run ended in blow-up at t = "
          << format_g17(rec.classification.t_blow) << "\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = load_run_config(opts.config_path);
    HypothesisReport rep;
    if (opts.hypothesis == "h2") {
      rep = check_h2(cfg.params, cfg.coeffs, cfg.domain, cfg.t_start, cfg.t_end);
    } else if (opts.hypothesis == "h1") {
      if (cfg.c_gamma_table.empty())
        throw ConfigError(
            "checking H1 needs [hypothesis] c_gamma = q:C pairs in the "
            "config; the maximal regularity constants are user-supplied, "
            "never computed");
      rep = check_h1(cfg.params, cfg.coeffs, cfg.domain, cfg.t_start, cfg.t_end,
                     cfg.c_gamma_table);
    } else {
      throw ConfigError("unknown hypothesis '" + opts.hypothesis +
                        "' (expected h1 or h2)");
    }

    JValue j = rep.to_json();
    if (rep.margin_nonlocal > 0.0) {
      TheoreticalBounds bounds = mass_bound_m_tilde(
          cfg.params, cfg.coeffs, cfg.domain, cfg.t_start, cfg.t_end);
      j.set("bounds", bounds.to_json());
    }
    std::string text = j.dump(2) + "\n";
    out << text;
    if (!opts.output_dir.empty())
      write_file(fs::path(opts.output_dir) / "check.json", text);
    return rep.satisfied ? kExitOk : kExitCheckFailed;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    SweepSpec spec = load_sweep_spec(opts.spec_path);
    if (!opts.output_dir.empty()) spec.output_dir = opts.output_dir;
    if (spec.output_dir.empty())
      spec.output_dir = default_output_dir(opts.spec_path).string();

    SweepResult result = run_sweep(spec, opts.parallelism);

    fs::path dir(spec.output_dir);
    fs::create_directories(dir);
    write_file(dir / "phase.csv", result.phase_csv());
    write_file(dir / "summary.json", result.summary_json().dump(2) + "\n");
    for (const auto& p : result.points) {
      char name[32];
      std::snprintf(name, sizeof(name), "point_%05zu.json", p.index);
      if (p.error.empty()) {
        write_file(dir / name, p.record.to_json().dump(2) + "\n");
      } else {
        JValue j = JValue::object();
        j.set("error", p.error);
        write_file(dir / name, j.dump(2) + "\n");
      }
    }

    out << "sweep: " << result.points.size() << " points, "
        << result.persistent_count << " Persistent";
    if (result.persistent_count > 0)
      out << ", uniform eta_hat " << format_g17(result.uniform_eta_hat);
    out << "\n" << "artifacts in " << dir.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_pullback(const PullbackOptions& opts, std::ostream& out,
                 std::ostream& err) {
  try {
    RunConfig cfg = load_run_config(opts.config_path);
    PullbackResult result = run_pullback(cfg, opts.depths);

    fs::path dir = opts.output_dir.empty() ? default_output_dir(opts.config_path)
                                           : fs::path(opts.output_dir);
    fs::create_directories(dir);
    write_file(dir / "pullback.json", result.to_json().dump(2) + "\n");

    out << "pullback depths:";
    for (double d : result.depths) out << " " << format_g17(d);
    out << "\ncauchy gaps:";
    for (double g : result.cauchy_gaps) out << " " << format_g17(g);
    out << "\neta_entire " << format_g17(result.eta_entire) << ", gaps "
        << (result.gaps_decreasing ? "decreasing" : "NOT decreasing") << "\n";
    out << "artifacts in " << dir.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    bool ok = run_oracle_suite(opts.goldens_path, opts.regenerate, out);
    if (!ok) err << "oracle suite failed\n";
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

}  // namespace chemo
