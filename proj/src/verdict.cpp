#include "turinglab/verdict.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "turinglab/errors.hpp"

namespace turinglab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::diffusively_stable:
      return "diffusively-stable";
    case Verdict::unstable:
      return "unstable";
    default:
      return "inconclusive";
  }
}

StabilityVerdict stability_verdict(const ModelSpec& model, const CriticalData& crit,
                                   const CGLCoefficients& cgl, const WaveProfile& profile,
                                   const VerdictOptions& options) {
  if (!(profile.eps > 0.0)) {
    throw PreconditionError(ErrorCategory::spectrum, "verdict needs a nontrivial wave (eps > 0)");
  }
  if (!(profile.residual <= options.max_residual)) {
    std::ostringstream msg;
    msg << "profile residual " << profile.residual << " exceeds " << options.max_residual
        << "; refusing a verdict";
    throw PreconditionError(ErrorCategory::spectrum, msg.str());
  }
  const double kappa = profile.kappa;
  if (kappa * kappa > (1.0 - options.nu0) * cgl.kappaE_sq) {
    throw PreconditionError(ErrorCategory::spectrum, "kappa^2 exceeds (1 - nu0) kappa_E^2");
  }

  StabilityVerdict v;
  SweepOptions so = options.sweep;
  if (so.delta == 0.0) so.delta = 0.5 * crit.spectral_gap;
  const double eps = profile.eps;
  const double c = so.region_c;
  const auto grid = sweep_grid(eps, so);
  v.curves = bloch_sweep(model, crit, profile, grid, so);
  v.fit = fit_expansion(v.curves, eps, c);
  v.zero_tol = 1e3 * std::numeric_limits<double>::epsilon() * v.curves.norm_b0;

  const double kS = std::sqrt(std::max(cgl.kappaS_sq, 0.0));
  v.in_dead_band = options.dead_band > 0.0 && kS > 0.0 &&
                   std::abs(std::abs(kappa) - kS) <= options.dead_band * kS;

  v.theta = std::numeric_limits<double>::infinity();
  v.witness_re = -std::numeric_limits<double>::infinity();
  RegionCheck* regions[3] = {&v.region1, &v.region2, &v.region3};
  for (auto* r : regions) r->max_re = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    if (s == 0.0) continue;
    const double re = v.curves.max_re[i];
    v.theta = std::min(v.theta, -re / (s * s));
    if (re > v.witness_re) {
      v.witness_re = re;
      v.witness_sigma = s;
    }
    const double a = std::abs(s);
    RegionCheck& r = a <= eps / c * (1.0 + 1e-12) ? v.region1 : (a <= c * eps ? v.region2 : v.region3);
    r.max_re = std::max(r.max_re, re);
  }

  v.region1.ok = v.fit.c2.real() < 0.0 && !v.fit.re_c1_flag;
  {
    std::ostringstream d;
    d << "fitted Re c2 = " << v.fit.c2.real() << ", Re c1 = " << v.fit.c1.real();
    v.region1.detail = d.str();
  }
  for (RegionCheck* r : {&v.region2, &v.region3}) {
    r->ok = r->max_re < 0.0;
    std::ostringstream d;
    d << "max Re = " << r->max_re;
    r->detail = d.str();
  }

  const bool stable = v.region1.ok && v.region2.ok && v.region3.ok && v.theta > 0.0;
  if (v.fit.c2.real() > 0.0 || v.witness_re > v.zero_tol) {
    v.verdict = Verdict::unstable;
    v.reason = v.witness_re > v.zero_tol ? "eigenvalue with positive real part"
                                         : "positive sideband curvature Re c2";
    if (v.witness_re <= v.zero_tol) {
      // curvature witness: the small-sigma point where Re lambda2 is largest
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] != 0.0 && std::abs(grid[i]) <= eps / c && v.curves.lambda2[i].real() > best) {
          best = v.curves.lambda2[i].real();
          v.witness_sigma = grid[i];
          v.witness_re = best;
        }
      }
    }
  } else if (stable) {
    v.verdict = Verdict::diffusively_stable;
    v.reason = "Re lambda <= -theta sigma^2 on the swept band";
  } else {
    v.verdict = Verdict::inconclusive;
    v.reason = "margins below resolution";
  }
  if (v.in_dead_band) {
    v.verdict = Verdict::inconclusive;
    v.reason = "|kappa| within the dead band around kappa_S";
  }
  return v;
}

}  // namespace turinglab
