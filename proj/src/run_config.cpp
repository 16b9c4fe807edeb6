#include "chemo/run_config.hpp"

#include <algorithm>
#include <cstdio>

#include "chemo/errors.hpp"

namespace chemo {

const char* to_string(Scheme scheme) {
  return scheme == Scheme::kImex ? "imex" : "explicit";
}

void PersistenceSettings::validate() const {
  if (!(eta_floor > 0.0))
    throw ConfigError("persistence: eta_floor must be positive");
  if (!(settle_fraction > 0.0) || !(settle_fraction < 1.0))
    throw ConfigError("persistence: settle_fraction must be in (0,1)");
  if (window < 0.0) throw ConfigError("persistence: window must be >= 0");
}

void RunConfig::validate() const {
  params.validate();
  domain.validate();
  persistence.validate();
  if (params.dimension != domain.dimension)
    throw ConfigError("model dimension does not match domain dimension");
  if (t_end < t_start) throw ConfigError("time: end must not precede start");
  if (!(dt_max > 0.0)) throw ConfigError("time: dt_max must be positive");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
    throw ConfigError("time: cfl_safety must be in (0,1]");
  if (record_every < 0.0) throw ConfigError("time: record_every must be >= 0");
  if (!(blowup_threshold > 0.0))
    throw ConfigError("time: blowup_threshold must be positive");
  for (const auto& [q, c] : c_gamma_table) {
    double qmin = std::max(1.0, params.dimension / 2.0);
    if (!(q > qmin))
      throw ConfigError("hypothesis: every q must exceed max(1, n/2)");
    if (!(c > 0.0)) throw ConfigError("hypothesis: every C_{q+1} must be positive");
  }
}

double RunConfig::effective_record_every() const {
  if (record_every > 0.0) return record_every;
  double span = t_end - t_start;
  return span > 0.0 ? span / 100.0 : 1.0;
}

std::string RunConfig::canonical_text() const {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "model:chi=%.17g,tau=%.17g,lambda=%.17g,mu=%.17g,n=%d;",
                params.chi, params.tau, params.lambda, params.mu,
                params.dimension);
  out += buf;
  std::snprintf(buf, sizeof(buf), "domain:L=%.17g,%.17g,N=%d,%d;",
                domain.lengths[0], domain.lengths[1], domain.cells[0],
                domain.cells[1]);
  out += buf;
  for (int i = 0; i < 3; ++i) {
    out += "coeff.";
    out += to_string(static_cast<CoefficientLabel>(i));
    out += "=" + coeffs[i].describe() + ";";
  }
  out += "initial=" + describe(initial) + ";";
  std::snprintf(buf, sizeof(buf),
                "time:start=%.17g,end=%.17g,dt_max=%.17g,cfl=%.17g,"
                "scheme=%s,record=%.17g,blowup=%.17g;",
                t_start, t_end, dt_max, cfl_safety, to_string(scheme),
                record_every, blowup_threshold);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "persistence:eta_floor=%.17g,settle=%.17g,window=%.17g;",
                persistence.eta_floor, persistence.settle_fraction,
                persistence.window);
  out += buf;
  for (const auto& [q, c] : c_gamma_table) {
    std::snprintf(buf, sizeof(buf), "cgamma:%.17g:%.17g;", q, c);
    out += buf;
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical_text()); }

}  // namespace chemo
