#include "turinglab/cgl.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "turinglab/errors.hpp"

namespace turinglab {

double CGLCoefficients::alpha_sq(double kappa) const {
  const double num = -b.real() + a.real() * kappa * kappa;
  // exact zero at the band edge instead of rounding noise
  if (std::abs(num) <= 1e-13 * std::abs(b.real())) return 0.0;
  return num / c.real();
}

double CGLCoefficients::alpha(double kappa) const {
  const double s = alpha_sq(kappa);
  if (s < 0.0) {
    if (s > -1e-14 * std::max(1.0, std::abs(b.real() / c.real()))) return 0.0;
    std::ostringstream msg;
    msg << "kappa = " << kappa << " lies outside the existence band kappa^2 <= " << kappaE_sq;
    throw PreconditionError(ErrorCategory::solver, msg.str());
  }
  return std::sqrt(s);
}

double CGLCoefficients::omega(double kappa) const {
  return a.imag() * kappa * kappa - b.imag() - c.imag() * alpha_sq(kappa);
}

double stable_band_sq(cplx a, cplx b, cplx c) {
  const double num = a.imag() * c.imag() * b.real() * c.real() +
                     a.real() * b.real() * c.real() * c.real();
  const double den = a.real() * (2.0 * c.imag() * c.imag() * a.real() +
                                 a.imag() * c.imag() * c.real() +
                                 3.0 * a.real() * c.real() * c.real());
  return num / den;
}

CGLCoefficients cgl_from(cplx a, cplx b, cplx c) {
  CGLCoefficients g;
  g.a = a;
  g.b = b;
  g.c = c;
  g.kappaE_sq = b.real() / a.real();
  g.kappaS_sq = stable_band_sq(a, b, c);
  g.bfn = a.imag() * c.imag() * b.real() * c.real() + a.real() * b.real() * c.real() * c.real();
  return g;
}

CMat resonance_inverse(const ModelSpec& model, const CriticalData& crit, int eta) {
  CMat m = eval_symbol(model, eta * crit.k_star, 0.0);
  m.diagonal().array() += I * (eta * crit.d_star * crit.k_star);
  // absolute scale matters here: a 1x1 symbol always has rcond 1
  const Eigen::VectorXd sv = Eigen::JacobiSVD<CMat>(m).singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-10 * std::max(1.0, sv(0)))) {
    std::ostringstream msg;
    msg << "S(" << eta << " k_*, 0) + i eta d_* k_* is singular (smallest singular value " << smin
        << "); eta k_* is resonant";
    throw DegenerateResonanceError(msg.str(), eta);
  }
  return m.partialPivLu().inverse();
}

cplx landau_bracket(const ModelSpec& model, const CriticalData& crit) {
  const double k = crit.k_star;
  const CVec& r = crit.r;
  const CVec rb = r.conjugate();
  CVec bracket = 3.0 * eval_cform(model, k, k, -k, r, r, rb);
  if (model.qform) {
    const CVec q0 = resonance_inverse(model, crit, 0) * eval_qform(model, k, -k, r, rb);
    const CVec q2 = resonance_inverse(model, crit, 2) * eval_qform(model, k, k, r, r);
    bracket -= 4.0 * eval_qform(model, k, 0.0, r, q0);
    bracket -= 2.0 * eval_qform(model, 2.0 * k, -k, q2, rb);
  }
  return pair(crit.ell, bracket);
}

cplx landau_constant(const ModelSpec& model, const CriticalData& crit, double prefactor) {
  return prefactor * landau_bracket(model, crit);
}

CGLCoefficients cgl_coefficients(const ModelSpec& model, const CriticalData& crit) {
  const cplx bracket = landau_bracket(model, crit);
  CGLCoefficients g = cgl_from(-0.5 * crit.d2_lambda_dk2, crit.d_lambda_dmu,
                               kGammaPrefactor * bracket);
  g.gamma_bracket = bracket;
  g.gamma_prefactor = kGammaPrefactor;
  if (!(g.a.real() > 0.0) || !(g.b.real() > 0.0)) {
    throw PreconditionError(ErrorCategory::solver,
                            "cGL needs Re a > 0 and Re b > 0 (curvature and transversality)");
  }
  if (!(g.c.real() < 0.0)) {
    std::ostringstream msg;
    msg << "Re gamma = " << g.c.real() << " >= 0: the bifurcation is subcritical";
    throw SubcriticalError(msg.str());
  }
  return g;
}

NormalForm normalize(const CGLCoefficients& cgl) {
  if (!(cgl.a.real() > 0.0) || !(cgl.b.real() > 0.0) || !(cgl.c.real() < 0.0)) {
    throw PreconditionError(ErrorCategory::solver, "normalisation needs Re a, Re b > 0 > Re c");
  }
  NormalForm f;
  f.alpha_t = cgl.a.imag() / cgl.a.real();
  f.beta_t = cgl.c.imag() / cgl.c.real();
  const double ab = f.alpha_t * f.beta_t;
  f.kappaE_sq = 1.0;
  f.kappaS_sq = (1.0 + ab) / (3.0 + ab + 2.0 * f.beta_t * f.beta_t);
  return f;
}

Mat2c cgl_sideband_matrix(const CGLCoefficients& cgl, double kappa, double sigma) {
  const double ra = cgl.a.real();
  const double ia = cgl.a.imag();
  const double a2 = cgl.alpha_sq(kappa);
  Eigen::Matrix2d diffusion;
  diffusion << ra, -ia, ia, ra;
  Eigen::Matrix2d drift;
  drift << -2.0 * kappa * ia, -2.0 * kappa * ra, 2.0 * kappa * ra, -2.0 * kappa * ia;
  Eigen::Matrix2d reaction;
  reaction << 2.0 * a2 * cgl.c.real(), 0.0, 2.0 * a2 * cgl.c.imag(), 0.0;
  return (-sigma * sigma * diffusion + reaction).cast<cplx>() + (I * sigma) * drift.cast<cplx>();
}

SidebandEigenvalues cgl_sideband_eigenvalues(const CGLCoefficients& cgl, double kappa,
                                             double sigma) {
  const Mat2c m = cgl_sideband_matrix(cgl, kappa, sigma);
  const cplx half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const cplx root = std::sqrt(half_tr * half_tr - det);
  const cplx l[2] = {half_tr + root, half_tr - root};
  // the phase mode is (0, 1) at sigma = 0
  double score[2];
  for (int j = 0; j < 2; ++j) {
    Eigen::Vector2cd v;
    const Eigen::Vector2cd v1(m(0, 1), l[j] - m(0, 0));
    const Eigen::Vector2cd v2(l[j] - m(1, 1), m(1, 0));
    v = v1.norm() >= v2.norm() ? v1 : v2;
    score[j] = v.norm() > 0.0 ? std::abs(v(1)) / v.norm() : 0.0;
  }
  int two = score[1] > score[0] ? 1 : 0;
  if (score[0] == score[1]) two = std::abs(l[1]) < std::abs(l[0]) ? 1 : 0;
  return {l[1 - two], l[two]};
}

SidebandSeries cgl_sideband_series(const CGLCoefficients& cgl, double kappa) {
  const double ra = cgl.a.real();
  const double ia = cgl.a.imag();
  const double rc = cgl.c.real();
  const double ic = cgl.c.imag();
  const double a2 = cgl.alpha_sq(kappa);
  SidebandSeries s;
  s.lambda1_0 = 2.0 * a2 * rc;
  s.linear = -2.0 * I * kappa * (ia - ic * ra / rc);
  if (!(a2 > 0.0)) {
    throw DegenerateAmplitudeError("alpha = 0 at the band edge: quadratic coefficient undefined");
  }
  const double k2 = kappa * kappa;
  s.quadratic = -(2.0 * k2 * ic * ic * ra * ra + a2 * ia * ic * rc * rc +
                  ra * rc * rc * (2.0 * k2 * ra + a2 * rc)) /
                (a2 * rc * rc * rc);
  return s;
}

RemainderCheck series_remainder_check(const CGLCoefficients& cgl, double kappa,
                                      double sigma_large, double sigma_small, double slack) {
  const SidebandSeries s = cgl_sideband_series(cgl, kappa);
  auto err = [&](double sigma) {
    const cplx exact = cgl_sideband_eigenvalues(cgl, kappa, sigma).lambda2;
    return std::abs(exact - (s.linear * sigma + s.quadratic * sigma * sigma));
  };
  RemainderCheck r;
  r.sigma_large = sigma_large;
  r.sigma_small = sigma_small;
  r.err_large = err(sigma_large);
  r.err_small = err(sigma_small);
  r.K = r.err_large / std::pow(sigma_large, 3);
  // the closed-form roots lose about this much to cancellation
  const double noise = 1e-14 * std::max(1.0, std::abs(s.lambda1_0));
  r.pass = r.err_small <= slack * r.K * std::pow(sigma_small, 3) || r.err_small <= noise;
  return r;
}

PropertySuite cgl_property_suite(int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.2, 5.0), any(-3.0, 3.0), unit(-1.0, 1.0);
  PropertySuite s;
  while (s.draws < draws) {
    const CGLCoefficients c =
        cgl_from({pos(rng), any(rng)}, {pos(rng), any(rng)}, {-pos(rng), any(rng)});
    if (!(c.bfn > 0.0)) continue;
    ++s.draws;
    s.ordered += 0.0 < c.kappaS_sq && c.kappaS_sq < c.kappaE_sq;
    const NormalForm f = normalize(c);
    const double back = f.kappaS_sq * c.b.real() / c.a.real();
    s.round_trip += std::abs(back - c.kappaS_sq) <= 1e-10 * std::abs(c.kappaS_sq);
    s.remainder += series_remainder_check(c, unit(rng) * std::sqrt(c.kappaS_sq)).pass;
  }
  return s;
}

}  // namespace turinglab
