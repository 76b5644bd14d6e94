#include "turinglab/wave.hpp"

#include <cmath>
#include <sstream>

#include "turinglab/bloch.hpp"
#include "turinglab/errors.hpp"

namespace turinglab {

CVec WaveProfile::stacked() const {
  CVec out(n * (2 * M + 1));
  for (int eta = -M; eta <= M; ++eta) out.segment(n * (eta + M), n) = mode(eta);
  return out;
}

CVec WaveProfile::translation_mode() const {
  CVec out(n * (2 * M + 1));
  for (int eta = -M; eta <= M; ++eta) {
    out.segment(n * (eta + M), n) = (I * static_cast<double>(eta)) * mode(eta);
  }
  return out;
}

std::vector<CVec> wave_residual(const ModelSpec& model, const WaveProfile& p) {
  const int M = p.M;
  const double k = p.k;
  const double omega = p.lab_omega();
  std::vector<CVec> f(2 * M + 1);
#pragma omp parallel for schedule(dynamic)
  for (int eta = -M; eta <= M; ++eta) {
    CVec acc = eval_symbol(model, k * eta, p.mu) * p.mode(eta);
    acc -= (I * (eta * omega)) * p.mode(eta);
    if (model.qform) {
      for (int e1 = std::max(-M, eta - M); e1 <= std::min(M, eta + M); ++e1) {
        const int e2 = eta - e1;
        acc += model.qform(k * e1, k * e2, p.mode(e1), p.mode(e2));
      }
    }
    if (model.cform) {
      for (int e1 = -M; e1 <= M; ++e1) {
        for (int e2 = std::max(-M, eta - e1 - M); e2 <= std::min(M, eta - e1 + M); ++e2) {
          const int e3 = eta - e1 - e2;
          acc += model.cform(k * e1, k * e2, k * e3, p.mode(e1), p.mode(e2), p.mode(e3));
        }
      }
    }
    f[eta + M] = acc;
  }
  return f;
}

double residual_norm(const std::vector<CVec>& f) {
  double s = 0.0;
  for (const auto& v : f) s += v.squaredNorm();
  return std::sqrt(s);
}

namespace {

void check_preconditions(const CGLCoefficients& cgl, double eps, double kappa,
                         const WaveOptions& o) {
  if (o.M < 8) throw PreconditionError(ErrorCategory::solver, "wave truncation needs M >= 8");
  if (!(eps >= 0.0) || eps > o.eps_max) {
    std::ostringstream msg;
    msg << "eps = " << eps << " outside [0, " << o.eps_max << "]";
    throw PreconditionError(ErrorCategory::solver, msg.str());
  }
  if (kappa * kappa > (1.0 - o.nu0) * cgl.kappaE_sq) {
    std::ostringstream msg;
    msg << "kappa^2 = " << kappa * kappa << " exceeds (1 - nu0) kappa_E^2 = "
        << (1.0 - o.nu0) * cgl.kappaE_sq;
    throw PreconditionError(ErrorCategory::solver, msg.str());
  }
}

double frame_offset(const CriticalData& crit, double k, Frame f) {
  return f == Frame::critical ? k * crit.d_star : 0.0;
}

cplx ell_dot(const CriticalData& crit, const CVec& v) { return pair(crit.ell, v); }

// Real unknowns: U(0) (n), then Re U(eta), Im U(eta) for eta = 1..M, then Omega.
int unknown_count(int n, int M) { return n + 2 * n * M + 1; }

Eigen::VectorXd real_residual(const CriticalData& crit, const WaveProfile& p,
                              const std::vector<CVec>& f) {
  const int n = p.n;
  const int M = p.M;
  Eigen::VectorXd out(unknown_count(n, M));
  out.head(n) = f[M].real();
  for (int eta = 1; eta <= M; ++eta) {
    const int row = n + 2 * n * (eta - 1);
    out.segment(row, n) = f[eta + M].real();
    out.segment(row + n, n) = f[eta + M].imag();
  }
  out(out.size() - 1) = ell_dot(crit, p.mode(1)).imag();
  return out;
}

Eigen::MatrixXd real_jacobian(const ModelSpec& model, const CriticalData& crit,
                              const WaveProfile& p) {
  const int n = p.n;
  const int M = p.M;
  const int N = unknown_count(n, M);
  const CMat B = assemble_bloch(model, crit, p, 0.0, Convention::standard);
  auto block = [&](int eta, int etap) { return B.block(n * (eta + M), n * (etap + M), n, n); };

  // complex columns for each real unknown, restricted to rows eta = 0..M
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
  auto put = [&](int col, int eta, const CVec& v) {
    if (eta == 0) {
      J.block(0, col, n, 1) = v.real();
    } else {
      const int row = n + 2 * n * (eta - 1);
      J.block(row, col, n, 1) = v.real();
      J.block(row + n, col, n, 1) = v.imag();
    }
  };
  for (int eta = 0; eta <= M; ++eta) {
    for (int j = 0; j < n; ++j) {
      put(j, eta, block(eta, 0).col(j));
      for (int etap = 1; etap <= M; ++etap) {
        const int col = n + 2 * n * (etap - 1) + j;
        put(col, eta, block(eta, etap).col(j) + block(eta, -etap).col(j));
        put(col + n, eta, I * (block(eta, etap).col(j) - block(eta, -etap).col(j)));
      }
    }
    put(N - 1, eta, (-I * static_cast<double>(eta)) * p.mode(eta));
  }
  for (int j = 0; j < n; ++j) {
    J(N - 1, n + j) = crit.ell(j).imag();
    J(N - 1, 2 * n + j) = crit.ell(j).real();
  }
  return J;
}

void apply_step(WaveProfile& p, const Eigen::VectorXd& dz) {
  const int n = p.n;
  const int M = p.M;
  p.mode(0) += dz.head(n).cast<cplx>();
  for (int eta = 1; eta <= M; ++eta) {
    const int at = n + 2 * n * (eta - 1);
    CVec d(n);
    for (int j = 0; j < n; ++j) d(j) = cplx(dz(at + j), dz(at + n + j));
    p.mode(eta) += d;
    p.mode(-eta) = p.mode(eta).conjugate();
  }
  p.mode(0) = p.mode(0).real().cast<cplx>();
  p.Omega += dz(dz.size() - 1);
}

bool newton(const ModelSpec& model, const CriticalData& crit, WaveProfile& p,
            const WaveOptions& o) {
  p.residual_history.clear();
  for (int it = 0; it <= o.max_iter; ++it) {
    const auto f = wave_residual(model, p);
    const Eigen::VectorXd F = real_residual(crit, p, f);
    p.residual = residual_norm(f);
    p.residual_history.push_back(p.residual);
    p.iterations = it;
    if (!std::isfinite(p.residual)) return false;
    if (p.residual <= o.tol && std::abs(F(F.size() - 1)) <= o.tol) return true;
    if (it == o.max_iter) break;
    const Eigen::MatrixXd J = real_jacobian(model, crit, p);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const Eigen::VectorXd dz = lu.solve(-F);
    if (!dz.allFinite()) return false;
    apply_step(p, dz);
    // stalled at roundoff level
    const double scale = p.stacked().norm() + std::abs(p.Omega);
    if (dz.norm() <= 1e-15 * std::max(scale, 1e-300) && p.residual <= 1e3 * o.tol) {
      const auto g = wave_residual(model, p);
      p.residual = residual_norm(g);
      p.residual_history.push_back(p.residual);
      return p.residual <= 1e3 * o.tol;
    }
  }
  return false;
}

void finish(const CriticalData& crit, WaveProfile& p) {
  if (ell_dot(crit, p.mode(1)).real() < 0.0) {
    for (int eta = -p.M; eta <= p.M; ++eta) {
      if (eta % 2 != 0) p.mode(eta) = -p.mode(eta);
    }
  }
  p.alpha_measured = p.eps > 0.0 ? 2.0 * std::abs(ell_dot(crit, p.mode(1))) / p.eps : 0.0;
}

void check_tail(const WaveProfile& p) {
  const double head = p.mode(1).norm();
  const double tail = p.mode(p.M).norm();
  if (head > 0.0 && tail > 1e-3 * head) {
    std::ostringstream msg;
    msg << "|U(M)| / |U(1)| = " << tail / head << " > 1e-3 at M = " << p.M
        << "; increase the number of modes";
    throw TruncationError(msg.str());
  }
}

WaveProfile rescaled(const WaveProfile& from, const CriticalData& crit, const CGLCoefficients& cgl,
                     double eps) {
  WaveProfile p = from;
  const double ratio = from.eps > 0.0 ? eps / from.eps : 0.0;
  for (int eta = -p.M; eta <= p.M; ++eta) {
    const int order = std::max(1, std::abs(eta));
    p.mode(eta) *= std::pow(ratio, order);
  }
  p.eps = eps;
  p.k = crit.k_star + eps * from.kappa;
  p.mu = eps * eps;
  const double lab = crit.lambda.imag() + eps * from.kappa * crit.d_lambda_dk.imag() -
                     eps * eps * cgl.omega(from.kappa);
  p.frame_shift = frame_offset(crit, p.k, p.frame);
  p.Omega = lab + p.frame_shift;
  return p;
}

}  // namespace

WaveProfile wave_guess(const ModelSpec& model, const CriticalData& crit,
                       const CGLCoefficients& cgl, double eps, double kappa,
                       const WaveOptions& o) {
  WaveProfile p;
  p.eps = eps;
  p.kappa = kappa;
  p.k = crit.k_star + eps * kappa;
  p.mu = eps * eps;
  p.M = o.M;
  p.n = model.n;
  p.frame = o.frame;
  p.modes.assign(2 * o.M + 1, CVec::Zero(model.n));
  const double lab = crit.lambda.imag() + eps * kappa * crit.d_lambda_dk.imag() -
                     eps * eps * cgl.omega(kappa);
  p.frame_shift = frame_offset(crit, p.k, o.frame);
  p.Omega = lab + p.frame_shift;
  if (eps == 0.0) return p;
  const double alpha = cgl.alpha(kappa);
  p.mode(1) = 0.5 * eps * alpha * crit.r;
  p.mode(-1) = p.mode(1).conjugate();
  if (model.qform) {
    WaveProfile leading = p;
    leading.eps = eps;
    const SecondOrderModes m = second_order_modes(model, crit, cgl, leading);
    p.mode(0) = (0.5 * eps * eps * m.m0).real().cast<cplx>();
    p.mode(2) = 0.5 * eps * eps * m.m2;
    p.mode(-2) = p.mode(2).conjugate();
  }
  return p;
}

WaveProfile solve_wave(const ModelSpec& model, const CriticalData& crit,
                       const CGLCoefficients& cgl, double eps, double kappa,
                       const WaveOptions& o) {
  check_preconditions(cgl, eps, kappa, o);
  WaveProfile p = wave_guess(model, crit, cgl, eps, kappa, o);
  if (eps == 0.0) {
    p.residual = residual_norm(wave_residual(model, p));
    return p;
  }
  if (newton(model, crit, p, o)) {
    finish(crit, p);
    check_tail(p);
    return p;
  }
  if (!o.allow_continuation) {
    throw NoWaveError("Newton did not converge and continuation is disabled");
  }
  // march eps up from eps/4, predicting with the amplitude law
  WaveProfile q = wave_guess(model, crit, cgl, 0.25 * eps, kappa, o);
  for (int step = 1; step <= 4; ++step) {
    const double e = 0.25 * eps * step;
    if (step > 1) q = rescaled(q, crit, cgl, e);
    if (!newton(model, crit, q, o)) {
      std::ostringstream msg;
      msg << "no wave found: Newton failed at eps = " << e << " during continuation to " << eps
          << " (residual " << q.residual << ")";
      throw NoWaveError(msg.str());
    }
    finish(crit, q);
  }
  q.continued = true;
  check_tail(q);
  return q;
}

SecondOrderModes second_order_modes(const ModelSpec& model, const CriticalData& crit,
                                    const CGLCoefficients& cgl, const WaveProfile& profile) {
  SecondOrderModes out;
  const double k = crit.k_star;
  const CVec& r = crit.r;
  const double a2 = cgl.alpha_sq(profile.kappa);
  if (model.qform) {
    out.m0 = -a2 * (resonance_inverse(model, crit, 0) * eval_qform(model, k, -k, r, r.conjugate()));
    out.m2 = -0.5 * a2 * (resonance_inverse(model, crit, 2) * eval_qform(model, k, k, r, r));
  } else {
    out.m0 = CVec::Zero(model.n);
    out.m2 = CVec::Zero(model.n);
  }
  const double eps = profile.eps;
  out.ill_conditioned = eps < 1e-4;
  if (eps > 0.0 && profile.M >= 2 && static_cast<int>(profile.modes.size()) == 2 * profile.M + 1) {
    const double e2 = eps * eps;
    out.err0 = (2.0 * profile.mode(0) / e2 - out.m0).norm() / std::max(out.m0.norm(), eps);
    out.err2 = (2.0 * profile.mode(2) / e2 - out.m2).norm() / std::max(out.m2.norm(), eps);
  }
  return out;
}

}  // namespace turinglab
