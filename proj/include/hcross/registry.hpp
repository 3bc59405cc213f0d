#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hcross/spectral.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross {

// Parameters shared by the registry families; each family reads its own subset.
struct RegistryParams {
  double r = 0.5;                                    // bernoulli, random balls
  double p = std::numeric_limits<double>::infinity();  // random balls
  std::vector<double> alpha;                         // bernoulli phases, zero by default
  int truncation = 64;                               // bernoulli: |k_j| <= K
  double beta = 1.0;                                 // tensor_decay exponent
  int box = 64;                                      // tensor_decay: |k_j| <= box
  int level = 6;                                     // random balls live on Q_level
  std::uint64_t seed = 1;
  double oversample = kDefaultOversample;            // grid factor for L_inf block norms
};

// Names: bernoulli, tensor_decay, random_H_ball, random_W_ball.
std::vector<std::string> registry_names();

TrigPolynomial registry_function(const std::string& name, const RegistryParams& params, int d);

}  // namespace hcross
