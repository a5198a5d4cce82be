#ifndef DROPLET_TESTS_SUPPORT_HPP_
#define DROPLET_TESTS_SUPPORT_HPP_

#include <random>

#include "droplet/model.hpp"

namespace droplet::testing {

// Section 7 test cases: faster particles behind (compressive) and in front.
inline RiemannData compressive_data() { return {0.008, 1.5, 0.003, 0.5, 0.0}; }
inline RiemannData expansive_data() { return {0.008, 0.5, 0.003, 1.5, 0.0}; }
inline ModelParams section7_params(double mu = 0.2) { return {mu, 1.0}; }

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace droplet::testing

#endif
