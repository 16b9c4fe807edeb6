#include "chemo/initial_data.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "chemo/errors.hpp"

namespace chemo {

namespace {

// splitmix64: tiny, platform-independent, good enough for drawing a few
// mode amplitudes.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

constexpr int kRandomModes = 3;

// mid + sum_m amp[m] * cos(m*pi*x/L) per axis, rescaled so the range of the
// continuous function is exactly [min, max], then clipped below at min.
struct RandomProfile {
  double mid;
  double half_range;
  double amp1[kRandomModes];
  double amp2[kRandomModes];
  int dimension;

  double operator()(double x1, double l1, double x2, double l2) const {
    double s = 0.0, budget = 0.0;
    for (int m = 0; m < kRandomModes; ++m) {
      s += amp1[m] * std::cos((m + 1) * M_PI * x1 / l1);
      budget += std::abs(amp1[m]);
      if (dimension == 2) {
        s += amp2[m] * std::cos((m + 1) * M_PI * x2 / l2);
        budget += std::abs(amp2[m]);
      }
    }
    if (budget > 0.0) s *= half_range / budget;
    return mid + s;
  }
};

RandomProfile draw_profile(SplitMix64& rng, const RandomSmoothInit& spec,
                           int dimension) {
  RandomProfile p;
  p.dimension = dimension;
  p.mid = 0.5 * (spec.min + spec.max);
  p.half_range = 0.5 * (spec.max - spec.min);
  for (int m = 0; m < kRandomModes; ++m) {
    p.amp1[m] = rng.symmetric();
    p.amp2[m] = dimension == 2 ? rng.symmetric() : 0.0;
  }
  return p;
}

void fill(Field& f, const GridDomain& d,
          const std::function<double(double, double)>& g) {
  f.assign(d.num_cells(), 0.0);
  if (d.dimension == 1) {
    for (int i = 0; i < d.cells[0]; ++i) f[i] = g(d.center(0, i), 0.0);
  } else {
    for (int j = 0; j < d.cells[1]; ++j)
      for (int i = 0; i < d.cells[0]; ++i)
        f[d.index(i, j)] = g(d.center(0, i), d.center(1, j));
  }
}

}  // namespace

State make_initial_data(const InitialSpec& spec, const GridDomain& domain,
                        double t_start) {
  domain.validate();
  State s;
  s.time = t_start;

  if (const UniformInit* u = std::get_if<UniformInit>(&spec)) {
    if (!(u->u > 0.0) || u->v < 0.0)
      throw InvalidSpec("initial: uniform data needs u > 0 and v >= 0");
    s.u.assign(domain.num_cells(), u->u);
    s.v.assign(domain.num_cells(), u->v);
  } else if (const CosineInit* c = std::get_if<CosineInit>(&spec)) {
    if (c->amplitude < 0.0)
      throw InvalidSpec("initial: cosine amplitude must be nonnegative");
    if (c->amplitude >= c->base)
      throw InvalidSpec("initial: cosine amplitude must stay below base");
    if (c->v_value < 0.0) throw InvalidSpec("initial: v must be nonnegative");
    fill(s.u, domain, [&](double x1, double x2) {
      double w = std::cos(c->mode * M_PI * x1 / domain.lengths[0]);
      if (domain.dimension == 2)
        w *= std::cos(c->mode * M_PI * x2 / domain.lengths[1]);
      return c->base + c->amplitude * w;
    });
    s.v.assign(domain.num_cells(), c->v_value);
  } else {
    const RandomSmoothInit& r = std::get<RandomSmoothInit>(spec);
    if (!(r.min > 0.0)) throw InvalidSpec("initial: random min must be positive");
    if (!(r.max > r.min)) throw InvalidSpec("initial: random max must exceed min");
    SplitMix64 rng{r.seed ^ 0x5bf0f5e2u};
    RandomProfile pu = draw_profile(rng, r, domain.dimension);
    RandomProfile pv = draw_profile(rng, r, domain.dimension);
    auto clipped = [&](const RandomProfile& p, double x1, double x2) {
      double v = p(x1, domain.lengths[0], x2, domain.lengths[1]);
      return std::max(v, r.min);
    };
    fill(s.u, domain, [&](double x1, double x2) { return clipped(pu, x1, x2); });
    fill(s.v, domain, [&](double x1, double x2) { return clipped(pv, x1, x2); });
  }

  s.validate(domain);
  return s;
}

std::string describe(const InitialSpec& spec) {
  char buf[160];
  if (const UniformInit* u = std::get_if<UniformInit>(&spec)) {
    std::snprintf(buf, sizeof(buf), "uniform:u=%.17g,v=%.17g", u->u, u->v);
  } else if (const CosineInit* c = std::get_if<CosineInit>(&spec)) {
    std::snprintf(buf, sizeof(buf), "cosine:base=%.17g,amp=%.17g,mode=%d,v=%.17g",
                  c->base, c->amplitude, c->mode, c->v_value);
  } else {
    const RandomSmoothInit& r = std::get<RandomSmoothInit>(spec);
    std::snprintf(buf, sizeof(buf), "random:seed=%llu,min=%.17g,max=%.17g",
                  static_cast<unsigned long long>(r.seed), r.min, r.max);
  }
  return buf;
}

}  // namespace chemo
