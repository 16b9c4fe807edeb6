#include "chemo/config_file.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chemo/errors.hpp"

namespace chemo {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const ConfigDoc::Entry& e) {
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE)
    fail_line(e.line, e.key + ": expected a number, got '" + e.value + "'");
  return v;
}

long parse_long(const ConfigDoc::Entry& e) {
  char* end = nullptr;
  errno = 0;
  long v = std::strtol(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE)
    fail_line(e.line, e.key + ": expected an integer, got '" + e.value + "'");
  return v;
}

std::vector<double> parse_double_list(const ConfigDoc::Entry& e) {
  std::vector<double> out;
  std::istringstream is(e.value);
  std::string tok;
  while (is >> tok) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      fail_line(e.line, e.key + ": expected numbers, got '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) fail_line(e.line, e.key + ": expected at least one number");
  return out;
}

// Accessor that tracks which keys were consumed so leftovers can be
// reported as typos.
class SectionReader {
 public:
  SectionReader(const ConfigDoc::Section* sec, std::string name)
      : sec_(sec), name_(std::move(name)) {}

  bool present() const { return sec_ != nullptr; }

  const ConfigDoc::Entry* find(const std::string& key) {
    if (!sec_) return nullptr;
    const ConfigDoc::Entry* found = nullptr;
    for (const auto& e : sec_->entries) {
      if (e.key != key) continue;
      if (found)
        fail_line(e.line, "duplicate key '" + key + "' in section [" + name_ + "]");
      found = &e;
    }
    if (found) used_.insert(key);
    return found;
  }

  double number(const std::string& key, double fallback) {
    const auto* e = find(key);
    return e ? parse_double(*e) : fallback;
  }

  double required_number(const std::string& key) {
    const auto* e = find(key);
    if (!e) throw ConfigError("config section [" + name_ + "]: missing key '" + key + "'");
    return parse_double(*e);
  }

  long integer(const std::string& key, long fallback) {
    const auto* e = find(key);
    return e ? parse_long(*e) : fallback;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto* e = find(key);
    return e ? e->value : fallback;
  }

  void finish() const {
    if (!sec_) return;
    for (const auto& e : sec_->entries)
      if (!used_.count(e.key))
        fail_line(e.line, "unknown key '" + e.key + "' in section [" + name_ + "]");
  }

 private:
  const ConfigDoc::Section* sec_;
  std::string name_;
  std::set<std::string> used_;
};

TabulatedData load_tabulated_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("tabulated coefficient: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("tabulated coefficient '" + path + "': " + e.what());
  }
  TabulatedData tab;
  try {
    tab.t0 = j.value("t0", 0.0);
    tab.t1 = j.value("t1", 0.0);
    tab.nt = j.value("nt", 1);
    auto xmax = j.at("xmax");
    tab.dimension = static_cast<int>(xmax.size());
    for (int d = 0; d < tab.dimension && d < 2; ++d) tab.xmax[d] = xmax.at(d);
    auto nx = j.at("nx");
    for (int d = 0; d < tab.dimension && d < 2; ++d) tab.nx[d] = nx.at(d);
    if (tab.dimension == 1) tab.nx[1] = 1;
    tab.values = j.at("values").get<std::vector<double>>();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("tabulated coefficient '" + path + "': " + e.what());
  }
  tab.validate();
  return tab;
}

CoefficientField read_coefficient(const ConfigDoc& doc, CoefficientLabel label,
                                  const std::string& base_dir) {
  std::string name = std::string("coefficients.") + to_string(label);
  SectionReader sec(doc.find(name), name);
  if (!sec.present()) return CoefficientField::constant(0.0, label);
  std::string kind = sec.text("kind", "constant");
  CoefficientField out;
  if (kind == "constant") {
    out = CoefficientField::constant(sec.required_number("value"), label);
  } else if (kind == "expr" || kind == "separable" || kind == "trigsum") {
    const auto* e = sec.find("expr");
    if (!e) throw ConfigError("config section [" + name + "]: missing key 'expr'");
    out = CoefficientField::analytic(e->value, label);
  } else if (kind == "tabulated") {
    const auto* e = sec.find("file");
    if (!e) throw ConfigError("config section [" + name + "]: missing key 'file'");
    std::filesystem::path p(e->value);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    out = CoefficientField::tabulated(load_tabulated_json(p.string()), label);
  } else {
    throw ConfigError("config section [" + name + "]: unknown kind '" + kind + "'");
  }
  sec.finish();
  return out;
}

InitialSpec read_initial(const ConfigDoc& doc) {
  SectionReader sec(doc.find("initial"), "initial");
  if (!sec.present()) throw ConfigError("config: missing [initial] section");
  std::string kind = sec.text("kind", "uniform");
  InitialSpec spec;
  if (kind == "uniform") {
    UniformInit u;
    u.u = sec.number("u", 1.0);
    u.v = sec.number("v", 1.0);
    spec = u;
  } else if (kind == "cosine") {
    CosineInit c;
    c.base = sec.required_number("base");
    c.amplitude = sec.required_number("amplitude");
    c.mode = static_cast<int>(sec.integer("mode", 1));
    c.v_value = sec.number("v", c.base);
    spec = c;
  } else if (kind == "random") {
    RandomSmoothInit r;
    r.seed = static_cast<std::uint64_t>(sec.integer("seed", 1));
    r.min = sec.required_number("min");
    r.max = sec.required_number("max");
    spec = r;
  } else {
    throw ConfigError("config section [initial]: unknown kind '" + kind + "'");
  }
  sec.finish();
  return spec;
}

std::vector<std::pair<double, double>> read_c_gamma(const ConfigDoc& doc) {
  std::vector<std::pair<double, double>> table;
  const auto* sec = doc.find("hypothesis");
  if (!sec) return table;
  for (const auto& e : sec->entries) {
    if (e.key != "c_gamma")
      fail_line(e.line, "unknown key '" + e.key + "' in section [hypothesis]");
    // space-separated q:C pairs
    std::istringstream is(e.value);
    std::string tok;
    while (is >> tok) {
      size_t colon = tok.find(':');
      if (colon == std::string::npos)
        fail_line(e.line, "c_gamma entries must look like q:C, got '" + tok + "'");
      char* end = nullptr;
      double q = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + colon)
        fail_line(e.line, "bad q in '" + tok + "'");
      double c = std::strtod(tok.c_str() + colon + 1, &end);
      if (*end != '\0') fail_line(e.line, "bad constant in '" + tok + "'");
      table.emplace_back(q, c);
    }
  }
  return table;
}

}  // namespace

const ConfigDoc::Section* ConfigDoc::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::optional<std::string> ConfigDoc::get(const std::string& section,
                                          const std::string& key) const {
  const Section* s = find(section);
  if (!s) return std::nullopt;
  for (const auto& e : s->entries)
    if (e.key == key) return e.value;
  return std::nullopt;
}

void ConfigDoc::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  for (auto& s : sections) {
    if (s.name != section) continue;
    for (auto& e : s.entries)
      if (e.key == key) {
        e.value = value;
        return;
      }
    s.entries.push_back({key, value, 0});
    return;
  }
  sections.push_back({section, {{key, value, 0}}});
}

ConfigDoc parse_config_text(const std::string& text) {
  ConfigDoc doc;
  ConfigDoc::Section* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_line(lineno, "unterminated section header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) fail_line(lineno, "empty section name");
      current = nullptr;
      for (auto& s : doc.sections)
        if (s.name == name) current = &s;  // repeated headers merge
      if (!current) {
        doc.sections.push_back({name, {}});
        current = &doc.sections.back();
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail_line(lineno, "expected 'key = value'");
    if (!current) fail_line(lineno, "key/value before any [section]");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(lineno, "empty key");
    current->entries.push_back({key, value, lineno});
  }
  return doc;
}

ConfigDoc load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig build_run_config(const ConfigDoc& doc, const std::string& base_dir,
                           const std::vector<std::string>& ignore_sections) {
  static const std::set<std::string> known = {
      "model",           "domain",          "time",
      "initial",         "persistence",     "hypothesis",
      "coefficients.a0", "coefficients.a1", "coefficients.a2"};
  for (const auto& s : doc.sections) {
    if (known.count(s.name)) continue;
    bool ignored = false;
    for (const auto& ign : ignore_sections)
      if (s.name == ign) ignored = true;
    if (!ignored) throw ConfigError("config: unknown section [" + s.name + "]");
  }

  RunConfig cfg;

  SectionReader dom(doc.find("domain"), "domain");
  if (!dom.present()) throw ConfigError("config: missing [domain] section");
  {
    const auto* lengths = dom.find("lengths");
    if (!lengths) throw ConfigError("config section [domain]: missing key 'lengths'");
    std::vector<double> ls = parse_double_list(*lengths);
    const auto* cellsE = dom.find("cells");
    if (!cellsE) throw ConfigError("config section [domain]: missing key 'cells'");
    std::vector<double> cs = parse_double_list(*cellsE);
    if (ls.size() != cs.size() || ls.size() < 1 || ls.size() > 2)
      throw ConfigError("config section [domain]: lengths/cells must both have 1 or 2 entries");
    if (ls.size() == 1)
      cfg.domain = GridDomain::line(ls[0], static_cast<int>(cs[0]));
    else
      cfg.domain = GridDomain::rectangle(ls[0], ls[1], static_cast<int>(cs[0]),
                                         static_cast<int>(cs[1]));
    long dim = dom.integer("dimension", cfg.domain.dimension);
    if (dim != cfg.domain.dimension)
      throw ConfigError("config section [domain]: dimension disagrees with lengths");
    dom.finish();
  }

  SectionReader model(doc.find("model"), "model");
  cfg.params.chi = model.number("chi", 0.0);
  cfg.params.tau = model.number("tau", 1.0);
  cfg.params.lambda = model.number("lambda", 1.0);
  cfg.params.mu = model.number("mu", 1.0);
  cfg.params.dimension = cfg.domain.dimension;
  model.finish();

  for (int i = 0; i < 3; ++i)
    cfg.coeffs[i] =
        read_coefficient(doc, static_cast<CoefficientLabel>(i), base_dir);

  cfg.initial = read_initial(doc);

  SectionReader time(doc.find("time"), "time");
  if (!time.present()) throw ConfigError("config: missing [time] section");
  cfg.t_start = time.number("start", 0.0);
  cfg.t_end = time.required_number("end");
  cfg.dt_max = time.required_number("dt_max");
  cfg.cfl_safety = time.number("cfl_safety", 0.9);
  cfg.record_every = time.number("record_every", 0.0);
  cfg.blowup_threshold = time.number("blowup_threshold", 1e6);
  std::string scheme = time.text("scheme", "imex");
  if (scheme == "imex")
    cfg.scheme = Scheme::kImex;
  else if (scheme == "explicit")
    cfg.scheme = Scheme::kFullyExplicit;
  else
    throw ConfigError("config section [time]: scheme must be imex or explicit");
  time.finish();

  SectionReader pers(doc.find("persistence"), "persistence");
  cfg.persistence.eta_floor = pers.number("eta_floor", 1e-6);
  cfg.persistence.settle_fraction = pers.number("settle_fraction", 0.5);
  cfg.persistence.window = pers.number("window", 0.0);
  pers.finish();

  cfg.c_gamma_table = read_c_gamma(doc);

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& ignore_sections) {
  ConfigDoc doc = load_config_file(path);
  std::string base = std::filesystem::path(path).parent_path().string();
  return build_run_config(doc, base, ignore_sections);
}

}  // namespace chemo
