#pragma once

#include <string>

#include "turinglab/bloch.hpp"
#include "turinglab/cgl.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/wave.hpp"

namespace turinglab {

enum class Verdict { diffusively_stable, unstable, inconclusive };

const char* to_string(Verdict v);

struct VerdictOptions {
  SweepOptions sweep;          // delta 0 means spectral_gap / 2
  double dead_band = 0.05;     // |kappa| within this fraction of kappa_S -> inconclusive; 0 off
  double nu0 = 0.05;
  double max_residual = 1e-8;  // refuse profiles worse than this
};

struct RegionCheck {
  bool ok = false;
  double max_re = 0.0;  // largest real part seen in the region (sigma != 0)
  std::string detail;
};

struct StabilityVerdict {
  Verdict verdict = Verdict::inconclusive;
  double theta = 0.0;            // min over sigma != 0 of -max Re / sigma^2
  double witness_sigma = 0.0;    // where max Re is largest (sigma != 0)
  double witness_re = 0.0;
  double zero_tol = 0.0;
  bool in_dead_band = false;
  RegionCheck region1;           // |sigma| <= eps / C, fitted Re c2 < 0
  RegionCheck region2;           // eps / C < |sigma| <= C eps
  RegionCheck region3;           // C eps < |sigma| <= sigma_max
  ExpansionFit fit;
  SpectralCurves curves;
  std::string reason;
};

StabilityVerdict stability_verdict(const ModelSpec& model, const CriticalData& crit,
                                   const CGLCoefficients& cgl, const WaveProfile& profile,
                                   const VerdictOptions& options = {});

}  // namespace turinglab
