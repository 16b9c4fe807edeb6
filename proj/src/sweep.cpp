#include "chemo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "chemo/errors.hpp"
#include "chemo/simulate.hpp"

namespace chemo {

std::size_t SweepSpec::total_points() const {
  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.values.size();
  return total;
}

void SweepSpec::validate() const {
  if (axes.empty()) throw ConfigError("sweep: at least one axis is required");
  for (const auto& axis : axes) {
    if (axis.values.empty())
      throw ConfigError("sweep: axis '" + axis.path + "' has no values");
    if (axis.path.find('.') == std::string::npos)
      throw ConfigError("sweep: axis path must look like section.key, got '" +
                        axis.path + "'");
  }
  if (parallelism < 1) throw ConfigError("sweep: parallelism must be >= 1");
  if (total_points() > budget)
    throw BudgetExceeded("sweep: " + std::to_string(total_points()) +
                         " points exceed the budget of " + std::to_string(budget));
}

SweepSpec parse_sweep_spec(const ConfigDoc& doc, const std::string& base_dir) {
  const ConfigDoc::Section* sec = doc.find("sweep");
  if (!sec) throw ConfigError("sweep: missing [sweep] section");

  SweepSpec spec;
  spec.base_dir = base_dir;
  spec.base = doc;
  // strip the sweep section from the base config document
  for (auto it = spec.base.sections.begin(); it != spec.base.sections.end(); ++it)
    if (it->name == "sweep") {
      spec.base.sections.erase(it);
      break;
    }

  for (const auto& e : sec->entries) {
    if (e.key == "axis") {
      // "section.key : v1, v2, v3"
      size_t colon = e.value.find(':');
      if (colon == std::string::npos)
        throw ConfigError("sweep line " + std::to_string(e.line) +
                          ": axis must look like 'section.key : v1, v2'");
      SweepAxis axis;
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return std::string();
        size_t b = s.find_last_not_of(" \t");
        return s.substr(a, b - a + 1);
      };
      axis.path = trim(e.value.substr(0, colon));
      std::string rest = e.value.substr(colon + 1);
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = trim(rest.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (!tok.empty()) axis.values.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      spec.axes.push_back(std::move(axis));
    } else if (e.key == "parallelism") {
      spec.parallelism = std::stoi(e.value);
    } else if (e.key == "budget") {
      spec.budget = static_cast<std::size_t>(std::stoull(e.value));
    } else if (e.key == "output_dir") {
      spec.output_dir = e.value;
    } else {
      throw ConfigError("sweep line " + std::to_string(e.line) +
                        ": unknown key '" + e.key + "'");
    }
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  ConfigDoc doc = load_config_file(path);
  std::string base;
  if (size_t slash = path.find_last_of('/'); slash != std::string::npos)
    base = path.substr(0, slash);
  return parse_sweep_spec(doc, base);
}

RunConfig sweep_point_config(const SweepSpec& spec,
                             const std::vector<std::size_t>& axis_index) {
  ConfigDoc doc = spec.base;
  for (size_t a = 0; a < spec.axes.size(); ++a) {
    const SweepAxis& axis = spec.axes[a];
    size_t dot = axis.path.rfind('.');
    doc.set(axis.path.substr(0, dot), axis.path.substr(dot + 1),
            axis.values[axis_index[a]]);
  }
  return build_run_config(doc, spec.base_dir);
}

SweepResult run_sweep(const SweepSpec& spec, int parallelism_override) {
  spec.validate();
  const std::size_t total = spec.total_points();
  const int workers = parallelism_override > 0
                          ? parallelism_override
                          : spec.parallelism;

  SweepResult result;
  for (const auto& axis : spec.axes) result.axis_paths.push_back(axis.path);
  result.points.resize(total);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= total) return;
      SweepPoint& point = result.points[idx];
      point.index = idx;

      // decode the cartesian index, last axis fastest
      std::vector<std::size_t> axis_index(spec.axes.size(), 0);
      std::size_t rem = idx;
      for (size_t a = spec.axes.size(); a-- > 0;) {
        axis_index[a] = rem % spec.axes[a].values.size();
        rem /= spec.axes[a].values.size();
      }
      for (size_t a = 0; a < spec.axes.size(); ++a)
        point.axis_values.push_back(spec.axes[a].values[axis_index[a]]);

      try {
        RunConfig cfg = sweep_point_config(spec, axis_index);
        point.record = simulate(cfg);
        point.margin_local = point.record.h2_margin_local;
        point.margin_nonlocal = point.record.h2_margin_nonlocal;
      } catch (const std::exception& e) {
        point.error = e.what();
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double uniform_eta = 0.0;
  bool any = false;
  for (const auto& p : result.points) {
    if (p.error.empty() &&
        p.record.classification.outcome == RunOutcome::kPersistent) {
      ++result.persistent_count;
      double eta = p.record.classification.eta_hat;
      uniform_eta = any ? std::min(uniform_eta, eta) : eta;
      any = true;
    }
  }
  result.uniform_eta_hat = any ? uniform_eta : 0.0;
  return result;
}

std::string SweepResult::phase_csv() const {
  std::string out = "index";
  for (const auto& p : axis_paths) out += "," + p;
  out += ",margin_local,margin_nonlocal,classification,eta_hat,m1_eventual,"
         "m2_eventual\n";
  for (const auto& p : points) {
    out += std::to_string(p.index);
    for (const auto& v : p.axis_values) out += "," + v;
    if (!p.error.empty()) {
      out += ",,,Error,,,\n";
      continue;
    }
    out += "," + format_g17(p.margin_local);
    out += "," + format_g17(p.margin_nonlocal);
    out += ",";
    out += to_string(p.record.classification.outcome);
    const auto& cls = p.record.classification;
    out += ",";
    if (cls.outcome == RunOutcome::kPersistent ||
        cls.outcome == RunOutcome::kConverged)
      out += format_g17(cls.eta_hat);
    out += ",";
    if (p.record.bound_checks) {
      out += format_g17(p.record.bound_checks->m1_eventual);
      out += "," + format_g17(p.record.bound_checks->m2_eventual);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

JValue SweepResult::summary_json() const {
  JValue j = JValue::object();
  j.set("points", points.size());
  j.set("persistent_count", persistent_count);
  if (persistent_count > 0)
    j.set("uniform_eta_hat", uniform_eta_hat);
  else
    j.set("uniform_eta_hat", JValue());
  std::size_t errors = 0;
  for (const auto& p : points)
    if (!p.error.empty()) ++errors;
  j.set("errors", errors);
  return j;
}

}  // namespace chemo
