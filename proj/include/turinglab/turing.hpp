#pragma once

#include <string>
#include <vector>

#include "turinglab/model.hpp"

namespace turinglab {

/// Spectral data of the neutral mode at (k_*, mu = 0).
struct CriticalData {
  double k_star = 0.0;
  cplx lambda{};          // lambda~(k_*, 0)
  cplx d_lambda_dmu{};
  cplx d_lambda_dk{};
  cplx d2_lambda_dk2{};
  CVec r;                 // |r| = 1, largest entry positive real
  CVec ell;               // left eigenvector as a column; ell^T r = 1
  double d_star = 0.0;    // -Im lambda / k_*
  double spectral_gap = 0.0;
  double k_scan_max = 0.0;

  /// d_eps(0, kappa) from lambda_k + i(d_* + k_* d_eps / kappa) = 0.
  double group_correction(double kappa) const;
  /// d_eps(0, kappa) / kappa; finite at kappa = 0.
  double group_correction_slope() const;
};

/// ell^T v (no conjugation).
cplx pair(const CVec& ell, const CVec& v);

/// Branch-1 eigenvalue curve on `grid`, followed by eigenvector overlap.
/// Throws BranchTrackingError when two distinct candidates are within 5% in
/// overlap. Coalescing conjugate pairs (equal real part) are not ambiguous for
/// the branch: the one with larger real part, then larger imaginary part, wins.
std::vector<cplx> critical_branch(const ModelSpec& model, const std::vector<double>& grid,
                                  double mu);

/// Eigenvalue of S(k, mu) whose eigenvector best matches `reference`;
/// optionally returns that eigenvector.
cplx tracked_eigenvalue(const ModelSpec& model, double k, double mu, const CVec& reference,
                        CVec* vector = nullptr);

/// Default tolerance for |max Re lambda~(k, 0)| at the bifurcation point.
inline constexpr double kBifurcationTol = 1e-6;

CriticalData find_turing_point(const ModelSpec& model);

/// Both sides of lambda_kk r = 2 Pi (S_kk r / 2 - S_k (I - Pi) N (I - Pi) S_k r)
/// with Pi = r ell and N the inverse of S(k_*, 0) + i k_* d_* on the range
/// of I - Pi.
struct SpectralIdentity {
  CVec lhs;
  CVec rhs;
  double defect = 0.0;  // |lhs - rhs| / max(1, |lhs|)
};
SpectralIdentity spectral_identity(const ModelSpec& model, const CriticalData& crit);

/// |ell S_k r - lambda_k| / max(1, |lambda_k|).
double perturbation_identity_defect(const ModelSpec& model, const CriticalData& crit);

struct Witness {
  double k = 0.0;
  double mu = 0.0;
  cplx lambda{};
};

struct HypothesisItem {
  std::string name;   // H1..H4
  bool pass = false;
  std::string method; // e.g. "sampled"
  std::string detail;
  std::vector<Witness> witnesses;
};

struct HypothesisReport {
  std::string model;
  std::vector<HypothesisItem> items;
  std::vector<double> mu_samples;
  double k_min = 0.0;
  double k_max = 0.0;
  int k_points = 0;
  bool have_critical = false;
  CriticalData critical;
  bool all_pass() const;
};

/// Default k grid: 2001 points on [0, k_scan_max].
std::vector<double> default_k_grid(const ModelSpec& model);
std::vector<double> default_mu_samples();

HypothesisReport verify_hypotheses(const ModelSpec& model, const std::vector<double>& k_grid,
                                   const std::vector<double>& mu_samples);

}  // namespace turinglab
