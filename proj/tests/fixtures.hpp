#pragma once

#include <map>
#include <string>

#include "turinglab/cgl.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/wave.hpp"

namespace fixtures {

using namespace turinglab;

struct Setup {
  ModelSpec model;
  CriticalData crit;
  CGLCoefficients cgl;
};

// Critical point and cGL data are reused across test cases.
inline const Setup& setup(const std::string& name) {
  static std::map<std::string, Setup> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Setup s;
    s.model = builtin(name);
    s.crit = find_turing_point(s.model);
    s.cgl = cgl_coefficients(s.model, s.crit);
    it = cache.emplace(name, std::move(s)).first;
  }
  return it->second;
}

inline WaveProfile wave(const std::string& name, double eps, double kappa, int M = 16) {
  const Setup& s = setup(name);
  WaveOptions o;
  o.M = M;
  return solve_wave(s.model, s.crit, s.cgl, eps, kappa, o);
}

inline const char* const kSupercritical[] = {"swift-hohenberg", "brusselator",
                                             "hadamard-diffusive", "hadamard-burgers",
                                             "keller-segel"};

}  // namespace fixtures
