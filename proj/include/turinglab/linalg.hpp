#pragma once

#include <complex>
#include <functional>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace turinglab {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx I{0.0, 1.0};

/// Eigenpairs of a small dense matrix; left vectors are rows of V^{-1}, so
/// left.row(j) * right.col(j) == 1.
struct EigenDecomposition {
  CVec values;
  CMat right;
  CMat left;
};

EigenDecomposition eigen_decompose(const CMat& m);

/// Eigenvalues only (cheaper).
CVec eigenvalues(const CMat& m);

/// |<a,b>| / (|a| |b|).
double overlap(const CVec& a, const CVec& b);

/// Column of `candidates` best aligned with `reference`, plus the two best
/// overlaps so callers can apply their own ambiguity rule.
struct OverlapMatch {
  int index = -1;
  double best = 0.0;
  double second = 0.0;
};
OverlapMatch best_overlap(const CMat& candidates, const CVec& reference);

/// Richardson-extrapolated central differences of a scalar or matrix valued
/// function. Step h, ratio 2.
template <typename F>
auto richardson_first(F&& f, double x, double h) -> std::decay_t<decltype(f(x))> {
  using T = std::decay_t<decltype(f(x))>;
  auto d = [&](double s) -> T { return T((f(x + s) - f(x - s)) / (2.0 * s)); };
  T coarse = d(h);
  T fine = d(0.5 * h);
  return T((4.0 * fine - coarse) / 3.0);
}

template <typename F>
auto richardson_second(F&& f, double x, double h) -> std::decay_t<decltype(f(x))> {
  using T = std::decay_t<decltype(f(x))>;
  T f0 = f(x);
  auto d = [&](double s) -> T { return T((f(x + s) - 2.0 * f0 + f(x - s)) / (s * s)); };
  T coarse = d(h);
  T fine = d(0.5 * h);
  return T((4.0 * fine - coarse) / 3.0);
}

inline double first_step(double k) { return 1e-5 * std::max(1.0, std::abs(k)); }
inline double second_step(double k) { return 1e-3 * std::max(1.0, std::abs(k)); }

/// Real 2x2 matrix representing multiplication by z: [[Re,-Im],[Im,Re]].
Eigen::Matrix2d realify(cplx z);

/// Reciprocal condition estimate (1-norm) via LU; 0 for singular input.
double rcond(const CMat& m);

}  // namespace turinglab
