#pragma once

#include <array>
#include <cstdint>

#include "turinglab/model.hpp"
#include "turinglab/turing.hpp"

namespace turinglab {

/// Calibrated multiplier of the Landau bracket. The literal amplitude
/// formula carries 1/8; the Swift-Hohenberg Newton amplitude selects 1/4.
inline constexpr double kGammaPrefactor = 0.25;
inline constexpr double kGammaPrefactorLiteral = 0.125;

/// A_T = a A_XX + b A + c |A|^2 A and everything derived from it.
struct CGLCoefficients {
  cplx a{};
  cplx b{};
  cplx c{};
  cplx gamma_bracket{};  // c / gamma_prefactor; zero for synthetic sets
  double gamma_prefactor = kGammaPrefactor;
  double kappaE_sq = 0.0;
  double kappaS_sq = 0.0;
  double bfn = 0.0;

  /// (-Re b + Re a kappa^2) / Re c; negative outside the existence band.
  double alpha_sq(double kappa) const;
  /// Amplitude; throws outside |kappa| <= kappa_E.
  double alpha(double kappa) const;
  double omega(double kappa) const;
};

/// Fills bands from (a, b, c). Does not check signs.
CGLCoefficients cgl_from(cplx a, cplx b, cplx c);

/// Literal Eckhaus band formula.
double stable_band_sq(cplx a, cplx b, cplx c);

/// [S(eta k_*, 0) + i eta d_* k_*]^{-1}; DegenerateResonanceError if singular.
CMat resonance_inverse(const ModelSpec& model, const CriticalData& crit, int eta);

/// ell [3C(r,r,rbar) - 4Q(r, S0 Q(r,rbar)) - 2Q(S2 Q(r,r), rbar)] with the
/// wavenumber-slotted forms; multiply by a prefactor to get gamma.
cplx landau_bracket(const ModelSpec& model, const CriticalData& crit);
cplx landau_constant(const ModelSpec& model, const CriticalData& crit,
                     double prefactor = kGammaPrefactor);

/// a = -lambda_kk / 2, b = lambda_mu, c = gamma. Throws SubcriticalError
/// when Re c >= 0 and PreconditionError when Re a or Re b is not positive.
CGLCoefficients cgl_coefficients(const ModelSpec& model, const CriticalData& crit);

struct NormalForm {
  double alpha_t = 0.0;  // Im a / Re a
  double beta_t = 0.0;   // Im c / Re c
  double kappaE_sq = 1.0;
  double kappaS_sq = 0.0;
};

/// Remark-style normalisation a = 1 + i alpha~, b = 1, c = -1 - i beta~.
NormalForm normalize(const CGLCoefficients& cgl);

using Mat2c = Eigen::Matrix2cd;

/// -sigma^2 [[a]] + i sigma D(kappa, a) + [[2 alpha^2 Re c, 0], [2 alpha^2 Im c, 0]].
Mat2c cgl_sideband_matrix(const CGLCoefficients& cgl, double kappa, double sigma);

struct SidebandEigenvalues {
  cplx lambda1{};
  cplx lambda2{};  // continuous with 0 at sigma = 0 (phase mode)
};
SidebandEigenvalues cgl_sideband_eigenvalues(const CGLCoefficients& cgl, double kappa,
                                             double sigma);

/// Taylor data of the sideband eigenvalues about sigma = 0:
/// lambda1(0), and lambda2 = linear sigma + quadratic sigma^2 + O(sigma^3).
struct SidebandSeries {
  cplx lambda1_0{};
  cplx linear{};
  cplx quadratic{};
};
SidebandSeries cgl_sideband_series(const CGLCoefficients& cgl, double kappa);

/// Third-order remainder of the lambda2 series: K = err(sigma_large) /
/// sigma_large^3 and err(sigma_small) must stay below slack * K sigma_small^3.
/// The slack absorbs the quartic term, which can have either sign.
struct RemainderCheck {
  double sigma_large = 0.0;
  double sigma_small = 0.0;
  double err_large = 0.0;
  double err_small = 0.0;
  double K = 0.0;
  bool pass = false;
};
RemainderCheck series_remainder_check(const CGLCoefficients& cgl, double kappa,
                                      double sigma_large = 1e-2, double sigma_small = 1e-3,
                                      double slack = 2.0);

/// Invariants over random coefficient sets with valid signs and BFN > 0:
/// Re a, Re b in [0.2, 5], Re c in [-5, -0.2], imaginary parts in [-3, 3].
struct PropertySuite {
  int draws = 0;
  int ordered = 0;     // 0 < kappa_S^2 < kappa_E^2
  int round_trip = 0;  // normalised band scaled back, to 1e-10
  int remainder = 0;   // series_remainder_check at a random kappa in the stable band
  bool pass() const { return ordered == draws && round_trip == draws && remainder == draws; }
};

PropertySuite cgl_property_suite(int draws, std::uint64_t seed);

}  // namespace turinglab
