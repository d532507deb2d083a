#pragma once

#include <stdexcept>

namespace axielast {

// Lame constants and the grad-div stabilization weight. The experiment
// defaults are mu = 1/2, lambda = 1, gamma = 1.
struct MaterialParams {
  double mu = 0.5;
  double lambda = 1.0;
  double gamma = 1.0;

  void validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("MaterialParams: mu must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("MaterialParams: lambda must be >= 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("MaterialParams: gamma must be >= 0");
  }

  // factor lambda/(2 mu + 3 lambda) on every trace coupling of the compliance
  double trace_factor() const { return lambda / (2.0 * mu + 3.0 * lambda); }
};

}  // namespace axielast
