#pragma once

#include <string>
#include <vector>

#include "turinglab/bloch.hpp"
#include "turinglab/cgl.hpp"
#include "turinglab/turing.hpp"

namespace turinglab {

/// The eps*sigma coefficient of the reduced matrix is stated two ways:
///  lemma:   -i [[i kappa k_* lambda_kk]]
///  display: +i [[2 i kappa k_* lambda_kk]]
enum class ReducedConvention { lemma, display };

const char* to_string(ReducedConvention c);
double coefficient(ReducedConvention c);  // -1 or +2

/// M(sigma) = M0 + sigma M1 + sigma^2 M2 with
/// M0 = 2 eps^2 alpha^2 [[Re g, 0], [Im g, 0]], M2 = [[k_*^2 lambda_kk / 2]],
/// M1 = coefficient * eps * i [[i kappa k_* lambda_kk]].
struct ReducedPrediction {
  double eps = 0.0;
  double kappa = 0.0;
  ReducedConvention convention = ReducedConvention::lemma;
  Mat2c M0;
  Mat2c M1;
  Mat2c M2;
  cplx C1{};
  cplx C2{};
  cplx C1_closed{};  // 2 i kappa k_* eps (Im g Re l_kk / Re g - Im l_kk) scaled by coefficient/2
  cplx lambda1_0{};  // 2 eps^2 alpha^2 Re g

  Mat2c matrix(double sigma) const { return M0 + sigma * M1 + sigma * sigma * M2; }
  /// Eigenvalue of M(sigma) continuous with 0 at sigma = 0.
  cplx Lambda(double sigma) const;
  /// Both eigenvalues, phase mode second.
  SidebandEigenvalues eigenvalues(double sigma) const;
};

/// Realification [[z]].
Mat2c realified(cplx z);

/// Eigenvalues of a 2x2 matrix with the one closest in eigenvector to (0, 1)
/// returned second.
SidebandEigenvalues split_phase_mode(const Mat2c& m);

ReducedPrediction reduced_prediction(const CGLCoefficients& cgl, const CriticalData& crit,
                                     double eps, double kappa, ReducedConvention convention);

/// Second-order perturbation of the zero eigenvalue of M0 + s M1 + s^2 M2
/// (M0 with a zero second column): returns (C1, C2).
std::pair<cplx, cplx> zero_eigenvalue_expansion(const Mat2c& M0, const Mat2c& M1,
                                                const Mat2c& M2);

struct ConventionAgreement {
  ReducedConvention convention = ReducedConvention::lemma;
  cplx C1{};
  cplx C2{};
  double c1_defect = 0.0;  // |Im c1 - Im C1| / max(|C1|, eps^2)
  double c2_defect = 0.0;  // |Re c2 - Re C2| / |C2|
};

struct AgreementReport {
  double eps = 0.0;
  double kappa = 0.0;
  cplx c0_1{};
  cplx lambda1_predicted{};
  double lambda1_defect = 0.0;  // |c0_1 - 2 eps^2 alpha^2 Re g| / eps^2
  cplx c1{};
  cplx c2{};
  double re_c1 = 0.0;
  std::vector<ConventionAgreement> conventions;  // lemma, display
  ReducedConvention best = ReducedConvention::lemma;
  const ConventionAgreement& of(ReducedConvention c) const;
};

AgreementReport verify_agreement(const ExpansionFit& fit, const CGLCoefficients& cgl,
                                 const CriticalData& crit, double eps, double kappa);

/// A defect D(eps) is first order if D(eps_small)/eps_small <= budget * K with
/// K = D(eps_large)/eps_large. Values below `floor` always pass.
struct ScalingCheck {
  std::string name;
  double eps_large = 0.0;
  double eps_small = 0.0;
  double defect_large = 0.0;
  double defect_small = 0.0;
  double K = 0.0;
  double budget = 1.0;
  bool pass = false;
};

ScalingCheck first_order_check(const std::string& name, double eps_large, double defect_large,
                               double eps_small, double defect_small, double budget = 1.0,
                               double floor = 1e-9);

/// Halving study over reports at two eps values (any order). The c1 and c2
/// checks pass if either convention passes; the check name records which.
std::vector<ScalingCheck> agreement_study(const AgreementReport& a, const AgreementReport& b,
                                          double budget);

}  // namespace turinglab
