#include "chemo/coefficient.hpp"

#include <cmath>
#include <cstdio>

#include "chemo/errors.hpp"

namespace chemo {

const char* to_string(CoefficientLabel label) {
  switch (label) {
    case CoefficientLabel::a0: return "a0";
    case CoefficientLabel::a1: return "a1";
    case CoefficientLabel::a2: return "a2";
  }
  return "?";
}

void TabulatedData::validate() const {
  if (dimension != 1 && dimension != 2)
    throw ConfigError("tabulated coefficient: dimension must be 1 or 2");
  if (nt < 1) throw ConfigError("tabulated coefficient: need nt >= 1");
  if (nt > 1 && !(t1 > t0))
    throw ConfigError("tabulated coefficient: need t1 > t0 when nt > 1");
  size_t expect = static_cast<size_t>(nt);
  for (int d = 0; d < dimension; ++d) {
    if (nx[d] < 2) throw ConfigError("tabulated coefficient: need >= 2 nodes per axis");
    if (!(xmax[d] > 0.0))
      throw ConfigError("tabulated coefficient: spatial extent must be positive");
    expect *= static_cast<size_t>(nx[d]);
  }
  if (values.size() != expect)
    throw ConfigError("tabulated coefficient: value count does not match lattice");
  for (double v : values)
    if (!std::isfinite(v))
      throw ConfigError("tabulated coefficient: non-finite sample");
}

namespace {

// Locates s within [0, max] sampled by n nodes; returns node index and the
// interpolation weight toward the next node.
void locate(double s, double max, int n, const char* what, int* i0, double* w) {
  const double tol = 1e-12 * (max > 0 ? max : 1.0);
  if (s < -tol || s > max + tol)
    throw EvaluationOutOfRange(std::string("tabulated coefficient: ") + what +
                               " outside covered range");
  double pos = (n - 1) * (s / max);
  int i = static_cast<int>(pos);
  if (i >= n - 1) i = n - 2;
  if (i < 0) i = 0;
  *i0 = i;
  *w = pos - i;
  if (*w < 0.0) *w = 0.0;
  if (*w > 1.0) *w = 1.0;
}

}  // namespace

double TabulatedData::eval(double t, double x1, double x2) const {
  int it = 0;
  double wt = 0.0;
  if (nt > 1) {
    const double span = t1 - t0;
    const double tol = 1e-12 * std::max(1.0, std::abs(span));
    if (t < t0 - tol || t > t1 + tol)
      throw EvaluationOutOfRange("tabulated coefficient: t outside covered window");
    double pos = (nt - 1) * ((t - t0) / span);
    it = static_cast<int>(pos);
    if (it >= nt - 1) it = nt - 2;
    if (it < 0) it = 0;
    wt = std::min(1.0, std::max(0.0, pos - it));
  }

  int i0;
  double wx;
  locate(x1, xmax[0], nx[0], "x1", &i0, &wx);

  auto plane = [&](int k) -> double {
    const size_t stride = static_cast<size_t>(nx[0]) *
                          (dimension == 2 ? static_cast<size_t>(nx[1]) : 1u);
    const double* base = values.data() + stride * static_cast<size_t>(k);
    if (dimension == 1) {
      return (1.0 - wx) * base[i0] + wx * base[i0 + 1];
    }
    int j0;
    double wy;
    locate(x2, xmax[1], nx[1], "x2", &j0, &wy);
    auto at = [&](int i, int j) { return base[j * nx[0] + i]; };
    double lo = (1.0 - wx) * at(i0, j0) + wx * at(i0 + 1, j0);
    double hi = (1.0 - wx) * at(i0, j0 + 1) + wx * at(i0 + 1, j0 + 1);
    return (1.0 - wy) * lo + wy * hi;
  };

  if (nt == 1) return plane(0);
  return (1.0 - wt) * plane(it) + wt * plane(it + 1);
}

CoefficientField CoefficientField::constant(double value, CoefficientLabel label) {
  CoefficientField f;
  f.payload_ = value;
  f.label_ = label;
  return f;
}

CoefficientField CoefficientField::analytic(const std::string& expr_source,
                                            CoefficientLabel label) {
  CoefficientField f;
  f.payload_ = ExprProgram::parse(expr_source);
  f.label_ = label;
  return f;
}

CoefficientField CoefficientField::tabulated(TabulatedData data,
                                             CoefficientLabel label) {
  data.validate();
  CoefficientField f;
  f.payload_ = std::move(data);
  f.label_ = label;
  return f;
}

double CoefficientField::evaluate(double t, double x1, double x2) const {
  if (const double* c = std::get_if<double>(&payload_)) return *c;
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_))
    return e->eval(t, x1, x2);
  return std::get<TabulatedData>(payload_).eval(t, x1, x2);
}

void CoefficientField::evaluate_on_grid(double t, const GridDomain& domain,
                                        std::span<double> out) const {
  const int n = domain.num_cells();
  if (const double* c = std::get_if<double>(&payload_)) {
    for (int i = 0; i < n; ++i) out[i] = *c;
    return;
  }
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_)) {
    std::vector<double> scratch;
    if (domain.dimension == 1) {
      for (int i = 0; i < domain.cells[0]; ++i)
        out[i] = e->eval(t, domain.center(0, i), 0.0, scratch);
    } else {
      for (int j = 0; j < domain.cells[1]; ++j) {
        const double y = domain.center(1, j);
        for (int i = 0; i < domain.cells[0]; ++i)
          out[domain.index(i, j)] = e->eval(t, domain.center(0, i), y, scratch);
      }
    }
    return;
  }
  const TabulatedData& tab = std::get<TabulatedData>(payload_);
  if (domain.dimension == 1) {
    for (int i = 0; i < domain.cells[0]; ++i)
      out[i] = tab.eval(t, domain.center(0, i), 0.0);
  } else {
    for (int j = 0; j < domain.cells[1]; ++j)
      for (int i = 0; i < domain.cells[0]; ++i)
        out[domain.index(i, j)] = tab.eval(t, domain.center(0, i), domain.center(1, j));
  }
}

bool CoefficientField::is_constant() const {
  if (std::holds_alternative<double>(payload_)) return true;
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_))
    return !e->uses_t() && !e->uses_space();
  return false;
}

double CoefficientField::constant_value() const {
  if (const double* c = std::get_if<double>(&payload_)) return *c;
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_)) {
    if (!e->uses_t() && !e->uses_space()) return e->eval(0.0, 0.0, 0.0);
  }
  throw NotConstantCoefficients(std::string(to_string(label_)) +
                                " is not a constant coefficient");
}

bool CoefficientField::time_dependent() const {
  if (std::holds_alternative<double>(payload_)) return false;
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_)) return e->uses_t();
  return std::get<TabulatedData>(payload_).nt > 1;
}

std::string CoefficientField::describe() const {
  char buf[64];
  if (const double* c = std::get_if<double>(&payload_)) {
    std::snprintf(buf, sizeof(buf), "constant:%.17g", *c);
    return buf;
  }
  if (const ExprProgram* e = std::get_if<ExprProgram>(&payload_))
    return "expr:" + e->source();
  const TabulatedData& tab = std::get<TabulatedData>(payload_);
  std::snprintf(buf, sizeof(buf), "tabulated:nt=%d,nx=%d,%d,n=%zu", tab.nt,
                tab.nx[0], tab.nx[1], tab.values.size());
  std::string s = buf;
  // fold the samples into the description so the config hash sees them
  unsigned long long h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    __builtin_memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  mix(tab.t0);
  mix(tab.t1);
  for (double v : tab.values) mix(v);
  std::snprintf(buf, sizeof(buf), ",digest=%016llx", h);
  return s + buf;
}

}  // namespace chemo
