#pragma once

#include <string>
#include <vector>

#include "turinglab/model.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/wave.hpp"

namespace turinglab {

/// How the Floquet exponent enters the frame term of the diagonal blocks.
///  standard: -i Omega (eta + sigma)
///  modified: -i Omega eta + i sigma (k d_* + k k_* d_eps(0,kappa)/kappa)
/// modified - standard = i sigma s with s = Omega + k d_* + k k_* d_eps/kappa,
/// a scalar shift that leaves every real part alone.
enum class Convention { modified, standard };

const char* to_string(Convention c);
Convention convention_from(const std::string& name);

/// Frame term on block eta (times the identity).
cplx bloch_frame_term(const CriticalData& crit, const WaveProfile& p, int eta, double sigma,
                      Convention convention);

/// s above, from the profile's lab-frame Omega.
double convention_shift_rate(const CriticalData& crit, const WaveProfile& p);

/// Dense Bloch matrix of size n (2M+1), blocks indexed eta = -M..M. Rows are
/// assembled in parallel.
CMat assemble_bloch(const ModelSpec& model, const CriticalData& crit, const WaveProfile& p,
                    double sigma, Convention convention);

/// Serial reference assembly, written independently of the parallel path.
CMat assemble_bloch_reference(const ModelSpec& model, const CriticalData& crit,
                              const WaveProfile& p, double sigma, Convention convention);

struct SweepOptions {
  Convention convention = Convention::modified;
  double region_c = 10.0;
  int n_geometric = 41;
  int n_linear = 41;
  int n_far = 21;
  double sigma_max = 0.5;
  double delta = 0.0;     // remainder must stay <= -delta; 0 disables the check
  bool check_gap = true;
};

/// Symmetric grid: geometric eps^2/10 .. eps/C, linear to C eps, linear to
/// sigma_max; mirrored, 0 included, sorted.
std::vector<double> sweep_grid(double eps, const SweepOptions& options);

struct SpectralCurves {
  std::vector<double> sigma;
  std::vector<cplx> lambda1;
  std::vector<cplx> lambda2;
  std::vector<double> remainder_max_re;
  std::vector<double> max_re;       // over the whole spectrum
  std::vector<int> handoffs;        // grid indices where tracking resolved a tie below -delta
  double delta = 0.0;
  double norm_b0 = 0.0;             // Frobenius norm of B(0)
  Convention convention = Convention::modified;
  int zero_index = 0;
};

SpectralCurves bloch_sweep(const ModelSpec& model, const CriticalData& crit,
                           const WaveProfile& p, const std::vector<double>& grid,
                           const SweepOptions& options);

/// Serial reference: reference assembly, eigensolves in grid order.
SpectralCurves bloch_sweep_reference(const ModelSpec& model, const CriticalData& crit,
                                     const WaveProfile& p, const std::vector<double>& grid,
                                     const SweepOptions& options);

/// lambda2 = c1 sigma + c2 sigma^2 + O(sigma^3); c0_1 = lambda1(0).
struct ExpansionFit {
  cplx c0_1{};
  cplx c0_2{};       // lambda2 constant term (should be 0)
  cplx c1{};
  cplx c2{};
  double residual = 0.0;
  double condition = 0.0;
  int points = 0;
  bool re_c1_flag = false;  // |Re c1| above 10x residual
};

ExpansionFit fit_expansion(const SpectralCurves& curves, double eps, double region_c = 10.0);

}  // namespace turinglab
