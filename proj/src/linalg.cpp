#include "turinglab/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace turinglab {

EigenDecomposition eigen_decompose(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> solver(m, true);
  EigenDecomposition out;
  out.values = solver.eigenvalues();
  out.right = solver.eigenvectors();
  out.left = out.right.inverse();
  return out;
}

CVec eigenvalues(const CMat& m) {
  Eigen::ComplexEigenSolver<CMat> solver(m, false);
  return solver.eigenvalues();
}

double overlap(const CVec& a, const CVec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

OverlapMatch best_overlap(const CMat& candidates, const CVec& reference) {
  OverlapMatch match;
  for (int j = 0; j < candidates.cols(); ++j) {
    const double o = overlap(candidates.col(j), reference);
    if (o > match.best) {
      match.second = match.best;
      match.best = o;
      match.index = j;
    } else if (o > match.second) {
      match.second = o;
    }
  }
  return match;
}

Eigen::Matrix2d realify(cplx z) {
  Eigen::Matrix2d m;
  m << z.real(), -z.imag(), z.imag(), z.real();
  return m;
}

double rcond(const CMat& m) {
  Eigen::PartialPivLU<CMat> lu(m);
  return lu.rcond();
}

}  // namespace turinglab
