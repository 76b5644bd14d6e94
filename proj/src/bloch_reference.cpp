// Serial reference path. The assembly walks the profile modes and scatters
// into the matrix (the parallel path gathers per row), so the two agree only
// if the block bookkeeping is right.

#include <Eigen/Eigenvalues>

#include "bloch_detail.hpp"
#include "turinglab/errors.hpp"

namespace turinglab {

CMat assemble_bloch_reference(const ModelSpec& model, const CriticalData& crit,
                              const WaveProfile& p, double sigma, Convention convention) {
  if (!(std::abs(sigma) <= 0.5)) {
    throw PreconditionError(ErrorCategory::spectrum, "Floquet exponent outside |sigma| <= 1/2");
  }
  const int n = p.n;
  const int M = p.M;
  const double k = p.k;
  const int size = n * (2 * M + 1);
  CMat B = CMat::Zero(size, size);
  auto at = [&](int eta) { return n * (eta + M); };

  for (int eta = -M; eta <= M; ++eta) {
    B.block(at(eta), at(eta), n, n) = eval_symbol(model, k * (eta + sigma), p.mu);
    B.block(at(eta), at(eta), n, n).diagonal().array() +=
        bloch_frame_term(crit, p, eta, sigma, convention);
  }
  for (int etap = -M; etap <= M; ++etap) {
    const double q = k * (etap + sigma);
    for (int j = 0; j < n; ++j) {
      CVec e = CVec::Zero(n);
      e(j) = 1.0;
      if (model.qform) {
        for (int d = -M; d <= M; ++d) {
          const int eta = etap + d;
          if (eta < -M || eta > M) continue;
          B.block(at(eta), at(etap) + j, n, 1) +=
              2.0 * eval_qform(model, k * d, q, p.mode(d), e);
        }
      }
      if (model.cform) {
        for (int e1 = -M; e1 <= M; ++e1) {
          for (int e2 = -M; e2 <= M; ++e2) {
            const int eta = etap + e1 + e2;
            if (eta < -M || eta > M) continue;
            B.block(at(eta), at(etap) + j, n, 1) +=
                3.0 * eval_cform(model, k * e1, k * e2, q, p.mode(e1), p.mode(e2), e);
          }
        }
      }
    }
  }
  return B;
}

SpectralCurves bloch_sweep_reference(const ModelSpec& model, const CriticalData& crit,
                                     const WaveProfile& p, const std::vector<double>& grid,
                                     const SweepOptions& options) {
  std::vector<detail::Spectrum> spectra(grid.size());
  double norm_b0 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CMat B = assemble_bloch_reference(model, crit, p, grid[i], options.convention);
    Eigen::ComplexEigenSolver<CMat> solver(B, true);
    spectra[i].values = solver.eigenvalues();
    spectra[i].vectors = solver.eigenvectors();
    if (grid[i] == 0.0) norm_b0 = B.norm();
  }
  return detail::track(grid, spectra, p.translation_mode(), norm_b0, options);
}

}  // namespace turinglab
