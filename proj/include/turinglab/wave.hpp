#pragma once

#include <vector>

#include "turinglab/cgl.hpp"
#include "turinglab/model.hpp"
#include "turinglab/turing.hpp"

namespace turinglab {

/// Which co-moving frame the unknown Omega lives in. `critical` adds the
/// phase-speed shift k d_*, so Omega_critical = Omega_lab + k d_*.
enum class Frame { lab, critical };

/// u(x, t) = U(k x + Omega t), U(xi) = sum_eta U(eta) e^{i eta xi}.
struct WaveProfile {
  double eps = 0.0;
  double kappa = 0.0;
  double k = 0.0;
  double mu = 0.0;
  int M = 0;
  int n = 0;
  Frame frame = Frame::lab;
  double Omega = 0.0;      // in `frame`
  double frame_shift = 0.0;  // Omega - Omega_lab
  std::vector<CVec> modes; // index eta + M
  double residual = 0.0;
  double alpha_measured = 0.0;
  int iterations = 0;
  bool continued = false;  // needed the eps-continuation fallback
  std::vector<double> residual_history;

  const CVec& mode(int eta) const { return modes[eta + M]; }
  CVec& mode(int eta) { return modes[eta + M]; }
  double lab_omega() const { return Omega - frame_shift; }
  /// All modes stacked, eta = -M..M.
  CVec stacked() const;
  /// d/dxi U stacked: i eta U(eta).
  CVec translation_mode() const;
};

struct WaveOptions {
  int M = 16;
  double tol = 1e-12;
  int max_iter = 50;
  double nu0 = 0.05;       // kappa^2 <= (1 - nu0) kappa_E^2
  double eps_max = 0.1;
  Frame frame = Frame::lab;
  bool allow_continuation = true;
};

/// Galerkin residual [S(k eta, mu) - i eta Omega_lab] U(eta) + Q*U*U + C*U*U*U.
std::vector<CVec> wave_residual(const ModelSpec& model, const WaveProfile& p);

double residual_norm(const std::vector<CVec>& f);

/// Newton on (U(0..M), Omega) with reality built in and the phase condition
/// Im(ell . U(1)) = 0, ell . U(1) >= 0.
WaveProfile solve_wave(const ModelSpec& model, const CriticalData& crit,
                       const CGLCoefficients& cgl, double eps, double kappa,
                       const WaveOptions& options = {});

/// Leading-order guess of the wave from the amplitude/frequency laws.
WaveProfile wave_guess(const ModelSpec& model, const CriticalData& crit,
                       const CGLCoefficients& cgl, double eps, double kappa,
                       const WaveOptions& options);

struct SecondOrderModes {
  CVec m0;
  CVec m2;
  double err0 = 0.0;
  double err2 = 0.0;
  bool ill_conditioned = false;  // eps < 1e-4
};

/// m0 = -alpha^2 S0 Q(r, rbar), m2 = -alpha^2/2 S2 Q(r, r) against 2 U(eta) / eps^2.
SecondOrderModes second_order_modes(const ModelSpec& model, const CriticalData& crit,
                                    const CGLCoefficients& cgl, const WaveProfile& profile);

}  // namespace turinglab
