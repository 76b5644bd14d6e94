#include "turinglab/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bloch_detail.hpp"
#include "turinglab/errors.hpp"

namespace turinglab {

const char* to_string(Convention c) { return c == Convention::modified ? "modified" : "standard"; }

Convention convention_from(const std::string& name) {
  if (name == "modified") return Convention::modified;
  if (name == "standard") return Convention::standard;
  throw ConfigError("convention must be 'modified' or 'standard', got '" + name + "'");
}

double convention_shift_rate(const CriticalData& crit, const WaveProfile& p) {
  // k d_* + k k_* d_eps/kappa collapses to -k Im lambda_k
  return p.lab_omega() + p.k * crit.d_star + p.k * crit.k_star * crit.group_correction_slope();
}

cplx bloch_frame_term(const CriticalData& crit, const WaveProfile& p, int eta, double sigma,
                      Convention convention) {
  const double omega = p.lab_omega();
  if (convention == Convention::standard) return -I * (omega * (eta + sigma));
  const double drift = p.k * crit.d_star + p.k * crit.k_star * crit.group_correction_slope();
  return -I * (omega * eta) + I * (sigma * drift);
}

namespace {

void check_sigma(double sigma) {
  if (!(std::abs(sigma) <= 0.5)) {
    std::ostringstream msg;
    msg << "Floquet exponent sigma = " << sigma << " outside |sigma| <= 1/2";
    throw PreconditionError(ErrorCategory::spectrum, msg.str());
  }
}

}  // namespace

CMat assemble_bloch(const ModelSpec& model, const CriticalData& crit, const WaveProfile& p,
                    double sigma, Convention convention) {
  check_sigma(sigma);
  const int n = p.n;
  const int M = p.M;
  const int size = n * (2 * M + 1);
  const double k = p.k;
  CMat B = CMat::Zero(size, size);
  const CMat unit = CMat::Identity(n, n);

#pragma omp parallel for schedule(dynamic)
  for (int eta = -M; eta <= M; ++eta) {
    const int row = n * (eta + M);
    B.block(row, row, n, n) = eval_symbol(model, k * (eta + sigma), p.mu) +
                              bloch_frame_term(crit, p, eta, sigma, convention) * unit;
    for (int etap = -M; etap <= M; ++etap) {
      const int d = eta - etap;
      const double q = k * (etap + sigma);
      const int col = n * (etap + M);
      for (int j = 0; j < n; ++j) {
        const CVec e = unit.col(j);
        CVec acc = CVec::Zero(n);
        if (model.qform && std::abs(d) <= M) acc += 2.0 * model.qform(k * d, q, p.mode(d), e);
        if (model.cform) {
          for (int e1 = std::max(-M, d - M); e1 <= std::min(M, d + M); ++e1) {
            const int e2 = d - e1;
            acc += 3.0 * model.cform(k * e1, k * e2, q, p.mode(e1), p.mode(e2), e);
          }
        }
        B.block(row, col + j, n, 1) += acc;
      }
    }
  }
  return B;
}

std::vector<double> sweep_grid(double eps, const SweepOptions& o) {
  if (!(eps > 0.0)) throw PreconditionError(ErrorCategory::spectrum, "sweep needs eps > 0");
  const double c = o.region_c;
  const double s_max = std::min(o.sigma_max, 0.5);
  std::vector<double> pos;
  const double g0 = eps * eps / 10.0;
  const double g1 = std::min(eps / c, s_max);
  for (int i = 0; i < o.n_geometric; ++i) {
    const double t = o.n_geometric > 1 ? static_cast<double>(i) / (o.n_geometric - 1) : 1.0;
    pos.push_back(g0 * std::pow(g1 / g0, t));
  }
  const double l1 = std::min(c * eps, s_max);
  for (int i = 1; i <= o.n_linear; ++i) pos.push_back(g1 + (l1 - g1) * i / o.n_linear);
  for (int i = 1; i <= o.n_far; ++i) pos.push_back(l1 + (s_max - l1) * i / o.n_far);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::max(1.0, b); }),
            pos.end());
  std::vector<double> grid;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

namespace detail {

SpectralCurves track(const std::vector<double>& grid, const std::vector<Spectrum>& spectra,
                     const CVec& translation, double norm_b0, const SweepOptions& o) {
  SpectralCurves out;
  out.sigma = grid;
  out.delta = o.delta;
  out.convention = o.convention;
  out.norm_b0 = norm_b0;
  const int count = static_cast<int>(grid.size());
  out.lambda1.resize(count);
  out.lambda2.resize(count);
  out.remainder_max_re.resize(count);
  out.max_re.resize(count);

  int i0 = -1;
  for (int i = 0; i < count; ++i) {
    if (grid[i] == 0.0) i0 = i;
  }
  if (i0 < 0) throw PreconditionError(ErrorCategory::spectrum, "sigma grid must contain 0");
  for (int i = 1; i < count; ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw PreconditionError(ErrorCategory::spectrum, "sigma grid must be strictly increasing");
    }
  }
  out.zero_index = i0;

  std::vector<int> idx1(count, -1);
  std::vector<int> idx2(count, -1);
  {
    const Spectrum& s = spectra[i0];
    idx2[i0] = best_overlap(s.vectors, translation).index;
    int best = -1;
    for (int j = 0; j < s.values.size(); ++j) {
      if (j == idx2[i0]) continue;
      if (best < 0 || s.values(j).real() > s.values(best).real()) best = j;
    }
    idx1[i0] = best;
  }

  auto below = [&](const Spectrum& s, int j) {
    return o.delta > 0.0 && s.values(j).real() <= -o.delta;
  };
  // choose a candidate for one curve; returns index and whether it was a handoff
  auto follow = [&](const Spectrum& s, const CVec& prev, int forbid, double sigma,
                    bool& handoff) {
    int best = -1;
    int second = -1;
    std::vector<double> ov(s.values.size());
    for (int j = 0; j < s.values.size(); ++j) {
      ov[j] = j == forbid ? -1.0 : overlap(s.vectors.col(j), prev);
      if (best < 0 || ov[j] > ov[best]) {
        second = best;
        best = j;
      } else if (second < 0 || ov[j] > ov[second]) {
        second = j;
      }
    }
    handoff = false;
    if (second >= 0 && ov[second] >= 0.95 * ov[best]) {
      if (below(s, best) && below(s, second)) {
        handoff = true;
      } else {
        std::ostringstream msg;
        msg << "critical curve tracking ambiguous at sigma = " << sigma << " (overlaps "
            << ov[best] << ", " << ov[second] << ")";
        throw CurveTrackingError(msg.str(), sigma);
      }
    }
    return best;
  };

  auto step = [&](int from, int to) {
    const Spectrum& prev = spectra[from];
    const Spectrum& cur = spectra[to];
    bool h1 = false;
    bool h2 = false;
    const CVec v2 = prev.vectors.col(idx2[from]);
    const CVec v1 = prev.vectors.col(idx1[from]);
    const double o2 = [&] {
      double m = 0.0;
      for (int j = 0; j < cur.values.size(); ++j) m = std::max(m, overlap(cur.vectors.col(j), v2));
      return m;
    }();
    const double o1 = [&] {
      double m = 0.0;
      for (int j = 0; j < cur.values.size(); ++j) m = std::max(m, overlap(cur.vectors.col(j), v1));
      return m;
    }();
    // the more confident curve chooses first
    if (o2 >= o1) {
      idx2[to] = follow(cur, v2, -1, grid[to], h2);
      idx1[to] = follow(cur, v1, idx2[to], grid[to], h1);
    } else {
      idx1[to] = follow(cur, v1, -1, grid[to], h1);
      idx2[to] = follow(cur, v2, idx1[to], grid[to], h2);
    }
    if (h1 || h2) out.handoffs.push_back(to);
  };
  for (int i = i0 + 1; i < count; ++i) step(i - 1, i);
  for (int i = i0 - 1; i >= 0; --i) step(i + 1, i);
  std::sort(out.handoffs.begin(), out.handoffs.end());

  for (int i = 0; i < count; ++i) {
    const Spectrum& s = spectra[i];
    out.lambda1[i] = s.values(idx1[i]);
    out.lambda2[i] = s.values(idx2[i]);
    double rem = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.values.size(); ++j) {
      if (j != idx1[i] && j != idx2[i]) rem = std::max(rem, s.values(j).real());
    }
    out.remainder_max_re[i] = rem;
    out.max_re[i] = s.values.real().maxCoeff();
  }
  if (o.check_gap && o.delta > 0.0) {
    for (int i = 0; i < count; ++i) {
      if (out.remainder_max_re[i] > -o.delta) {
        std::ostringstream msg;
        msg << "remainder spectrum reaches Re = " << out.remainder_max_re[i]
            << " > -delta = " << -o.delta << " at sigma = " << grid[i];
        throw GapViolationError(msg.str(), grid[i]);
      }
    }
  }
  return out;
}

}  // namespace detail

SpectralCurves bloch_sweep(const ModelSpec& model, const CriticalData& crit,
                           const WaveProfile& p, const std::vector<double>& grid,
                           const SweepOptions& o) {
  const long count = static_cast<long>(grid.size());
  std::vector<detail::Spectrum> spectra(count);
  double norm_b0 = 0.0;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const CMat B = assemble_bloch(model, crit, p, grid[i], o.convention);
    Eigen::ComplexEigenSolver<CMat> solver(B, true);
    spectra[i].values = solver.eigenvalues();
    spectra[i].vectors = solver.eigenvectors();
    if (grid[i] == 0.0) norm_b0 = B.norm();
  }
  return detail::track(grid, spectra, p.translation_mode(), norm_b0, o);
}

ExpansionFit fit_expansion(const SpectralCurves& curves, double eps, double region_c) {
  const int i0 = curves.zero_index;
  const double s_ref = eps / region_c;
  std::vector<int> pos;
  for (int i = i0 + 1; i < static_cast<int>(curves.sigma.size()); ++i) {
    if (curves.sigma[i] <= s_ref * (1.0 + 1e-12)) pos.push_back(i);
  }
  const int total = 2 * static_cast<int>(pos.size()) + 1;
  if (total < 7) {
    std::ostringstream msg;
    msg << "only " << total << " grid points inside |sigma| <= eps/C; refine the grid";
    throw FitError(msg.str());
  }
  for (int i : pos) {
    const int mirror = 2 * i0 - i;
    if (mirror < 0 || std::abs(curves.sigma[mirror] + curves.sigma[i]) > 1e-14) {
      throw FitError("sigma grid is not symmetric about 0; cannot split even/odd parts");
    }
  }

  const int ne = static_cast<int>(pos.size()) + 1;
  const int no = static_cast<int>(pos.size());
  Eigen::MatrixXd even(ne, 3);
  Eigen::MatrixXd odd(no, 2);
  Eigen::VectorXcd e_val(ne);
  Eigen::VectorXcd o_val(no);
  even.row(0) << 1.0, 0.0, 0.0;
  e_val(0) = curves.lambda2[i0];
  for (int j = 0; j < no; ++j) {
    const int i = pos[j];
    const double s = curves.sigma[i] / s_ref;
    const cplx plus = curves.lambda2[i];
    const cplx minus = curves.lambda2[2 * i0 - i];
    even.row(j + 1) << 1.0, s * s, s * s * s * s;
    odd.row(j) << s, s * s * s;
    e_val(j + 1) = 0.5 * (plus + minus);
    o_val(j) = 0.5 * (plus - minus);
  }
  auto cond = [](const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                   : std::numeric_limits<double>::infinity();
  };
  ExpansionFit fit;
  fit.condition = std::max(cond(even), cond(odd));
  if (!(fit.condition <= 1e8)) {
    std::ostringstream msg;
    msg << "expansion fit ill-conditioned (cond " << fit.condition << "); refine the grid";
    throw FitError(msg.str());
  }
  const auto qe = even.colPivHouseholderQr();
  const auto qo = odd.colPivHouseholderQr();
  const Eigen::VectorXd re_even = qe.solve(Eigen::VectorXd(e_val.real()));
  const Eigen::VectorXd im_even = qe.solve(Eigen::VectorXd(e_val.imag()));
  const Eigen::VectorXd re_odd = qo.solve(Eigen::VectorXd(o_val.real()));
  const Eigen::VectorXd im_odd = qo.solve(Eigen::VectorXd(o_val.imag()));

  fit.c0_1 = curves.lambda1[i0];
  fit.c0_2 = cplx(re_even(0), im_even(0));
  fit.c1 = cplx(re_odd(0), im_odd(0)) / s_ref;
  fit.c2 = cplx(re_even(1), im_even(1)) / (s_ref * s_ref);
  fit.points = total;

  double ss = 0.0;
  ss += (even * re_even - e_val.real()).squaredNorm();
  ss += (even * im_even - e_val.imag()).squaredNorm();
  ss += (odd * re_odd - o_val.real()).squaredNorm();
  ss += (odd * im_odd - o_val.imag()).squaredNorm();
  fit.residual = std::sqrt(ss / total);
  // the residual is in eigenvalue units; compare Re c1 sigma at the fit scale
  fit.re_c1_flag = std::abs(fit.c1.real()) * s_ref > 10.0 * fit.residual &&
                   std::abs(fit.c1.real()) * s_ref > 1e-13 * std::max(1.0, curves.norm_b0);
  return fit;
}

}  // namespace turinglab
