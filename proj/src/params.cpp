#include "chemo/params.hpp"

#include "chemo/errors.hpp"

namespace chemo {

void ModelParams::validate() const {
  if (!(tau > 0.0)) throw ConfigError("model: tau must be positive");
  if (!(lambda > 0.0)) throw ConfigError("model: lambda must be positive");
  if (!(mu > 0.0)) throw ConfigError("model: mu must be positive");
  if (dimension != 1 && dimension != 2)
    throw ConfigError("model: dimension must be 1 or 2");
}

}  // namespace chemo
