#include "turinglab/reduced.hpp"

#include <cmath>
#include <tuple>

#include "turinglab/errors.hpp"

namespace turinglab {

const char* to_string(ReducedConvention c) {
  return c == ReducedConvention::lemma ? "lemma" : "display";
}

double coefficient(ReducedConvention c) { return c == ReducedConvention::lemma ? -1.0 : 2.0; }

Mat2c realified(cplx z) { return realify(z).cast<cplx>(); }

SidebandEigenvalues split_phase_mode(const Mat2c& m) {
  const cplx half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const cplx root = std::sqrt(half_tr * half_tr - det);
  const cplx l[2] = {half_tr + root, half_tr - root};
  double score[2];
  for (int j = 0; j < 2; ++j) {
    const Eigen::Vector2cd v1(m(0, 1), l[j] - m(0, 0));
    const Eigen::Vector2cd v2(l[j] - m(1, 1), m(1, 0));
    const Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
    score[j] = v.norm() > 0.0 ? std::abs(v(1)) / v.norm() : 0.0;
  }
  int two = score[1] > score[0] ? 1 : 0;
  if (score[0] == score[1]) two = std::abs(l[1]) < std::abs(l[0]) ? 1 : 0;
  return {l[1 - two], l[two]};
}

SidebandEigenvalues ReducedPrediction::eigenvalues(double sigma) const {
  return split_phase_mode(matrix(sigma));
}

cplx ReducedPrediction::Lambda(double sigma) const { return eigenvalues(sigma).lambda2; }

std::pair<cplx, cplx> zero_eigenvalue_expansion(const Mat2c& M0, const Mat2c& M1,
                                                const Mat2c& M2) {
  const cplx p = M0(0, 0);
  const cplx q = M0(1, 0);
  // det M = s D1 + s^2 D2 + ..., tr M = p + s t1 + ...; small root of
  // lambda (tr - lambda) = det
  const cplx d1 = p * M1(1, 1) - q * M1(0, 1);
  const cplx d2 = p * M2(1, 1) - q * M2(0, 1) + M1.determinant();
  const cplx t1 = M1.trace();
  const cplx c1 = d1 / p;
  const cplx c2 = d2 / p - d1 * t1 / (p * p) + d1 * d1 / (p * p * p);
  return {c1, c2};
}

ReducedPrediction reduced_prediction(const CGLCoefficients& cgl, const CriticalData& crit,
                                     double eps, double kappa, ReducedConvention convention) {
  if (!(eps > 0.0)) throw PreconditionError(ErrorCategory::agreement, "prediction needs eps > 0");
  if (!(kappa * kappa < cgl.kappaE_sq)) {
    throw PreconditionError(ErrorCategory::agreement, "prediction needs kappa^2 < kappa_E^2");
  }
  ReducedPrediction r;
  r.eps = eps;
  r.kappa = kappa;
  r.convention = convention;
  const double a2 = cgl.alpha_sq(kappa);
  const cplx g = cgl.c;
  const cplx lkk = crit.d2_lambda_dk2;
  const double ks = crit.k_star;
  r.M0 << 2.0 * eps * eps * a2 * g.real(), 0.0, 2.0 * eps * eps * a2 * g.imag(), 0.0;
  r.M2 = realified(0.5 * ks * ks * lkk);
  r.M1 = (coefficient(convention) * eps * I) * realified(I * kappa * ks * lkk);
  std::tie(r.C1, r.C2) = zero_eigenvalue_expansion(r.M0, r.M1, r.M2);
  r.C1_closed = 0.5 * coefficient(convention) * 2.0 * I * kappa * ks * eps *
                (g.imag() * lkk.real() / g.real() - lkk.imag());
  r.lambda1_0 = 2.0 * eps * eps * a2 * g.real();
  return r;
}

const ConventionAgreement& AgreementReport::of(ReducedConvention c) const {
  return conventions[c == ReducedConvention::lemma ? 0 : 1];
}

AgreementReport verify_agreement(const ExpansionFit& fit, const CGLCoefficients& cgl,
                                 const CriticalData& crit, double eps, double kappa) {
  AgreementReport rep;
  rep.eps = eps;
  rep.kappa = kappa;
  rep.c0_1 = fit.c0_1;
  rep.c1 = fit.c1;
  rep.c2 = fit.c2;
  rep.re_c1 = fit.c1.real();
  for (ReducedConvention c : {ReducedConvention::lemma, ReducedConvention::display}) {
    const ReducedPrediction pr = reduced_prediction(cgl, crit, eps, kappa, c);
    rep.lambda1_predicted = pr.lambda1_0;
    ConventionAgreement a;
    a.convention = c;
    a.C1 = pr.C1;
    a.C2 = pr.C2;
    a.c1_defect =
        std::abs(fit.c1.imag() - pr.C1.imag()) / std::max(std::abs(pr.C1), eps * eps);
    a.c2_defect = std::abs(fit.c2.real() - pr.C2.real()) / std::abs(pr.C2);
    rep.conventions.push_back(a);
  }
  rep.lambda1_defect = std::abs(rep.c0_1 - rep.lambda1_predicted) / (eps * eps);
  rep.best = rep.conventions[1].c1_defect < rep.conventions[0].c1_defect
                 ? ReducedConvention::display
                 : ReducedConvention::lemma;
  return rep;
}

ScalingCheck first_order_check(const std::string& name, double eps_large, double defect_large,
                               double eps_small, double defect_small, double budget,
                               double floor) {
  ScalingCheck s;
  s.name = name;
  s.eps_large = eps_large;
  s.eps_small = eps_small;
  s.defect_large = defect_large;
  s.defect_small = defect_small;
  s.budget = budget;
  s.K = defect_large / eps_large;
  s.pass = defect_small <= floor || defect_small / eps_small <= budget * s.K;
  return s;
}

std::vector<ScalingCheck> agreement_study(const AgreementReport& a, const AgreementReport& b,
                                          double budget) {
  const AgreementReport& big = a.eps >= b.eps ? a : b;
  const AgreementReport& small = a.eps >= b.eps ? b : a;
  std::vector<ScalingCheck> out;
  out.push_back(first_order_check("lambda1(0)", big.eps, big.lambda1_defect, small.eps,
                                  small.lambda1_defect, budget));
  // a check passes when either convention passes; the passing one is named
  auto either = [&](const char* what, double ConventionAgreement::*field, double floor) {
    ScalingCheck chosen;
    for (int j = 0; j < 2; ++j) {
      ScalingCheck s = first_order_check(
          std::string(what) + " [" + to_string(big.conventions[j].convention) + "]", big.eps,
          big.conventions[j].*field, small.eps, small.conventions[j].*field, budget,
          floor);
      if (j == 0 || (s.pass && !chosen.pass)) chosen = s;
    }
    out.push_back(chosen);
  };
  // Im c1 is at fit-noise level for reflection-symmetric models
  either("Im c1", &ConventionAgreement::c1_defect, 1e-6);
  either("Re c2", &ConventionAgreement::c2_defect, 1e-9);
  return out;
}

}  // namespace turinglab
