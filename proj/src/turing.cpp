#include "turinglab/turing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "turinglab/errors.hpp"

namespace turinglab {

double CriticalData::group_correction(double kappa) const {
  return kappa * group_correction_slope();
}

double CriticalData::group_correction_slope() const {
  return -(d_lambda_dk.imag() + d_star) / k_star;
}

cplx pair(const CVec& ell, const CVec& v) { return (ell.transpose() * v)(0); }

namespace {

// Largest real part first, ties broken by imaginary part.
bool above(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

int top_index(const CVec& values) {
  int best = 0;
  for (int j = 1; j < values.size(); ++j) {
    if (above(values(j), values(best))) best = j;
  }
  return best;
}

double growth(const ModelSpec& model, double k, double mu) {
  return eigenvalues(eval_symbol(model, k, mu)).real().maxCoeff();
}

// Real parts sorted in decreasing order.
std::vector<double> sorted_real(const ModelSpec& model, double k, double mu) {
  const CVec ev = eigenvalues(eval_symbol(model, k, mu));
  std::vector<double> re(ev.size());
  for (int j = 0; j < ev.size(); ++j) re[j] = ev(j).real();
  std::sort(re.rbegin(), re.rend());
  return re;
}

std::vector<double> scan(const ModelSpec& model, const std::vector<double>& grid, double mu) {
  std::vector<double> g(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) g[i] = growth(model, grid[i], mu);
  return g;
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, b); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

struct Peak {
  double k;
  double value;
};

// Golden section on the cell around grid index i, then Newton on the
// finite-difference slope.
Peak refine_peak(const ModelSpec& model, const std::vector<double>& grid, std::size_t i) {
  auto g = [&](double k) { return growth(model, k, 0.0); };
  const double lo = grid[i == 0 ? 0 : i - 1];
  const double hi = grid[std::min(i + 1, grid.size() - 1)];
  double k = golden_max(g, lo, hi);
  if (k <= 0.0) return {k, g(k)};
  for (int it = 0; it < 30; ++it) {
    const double slope = richardson_first(g, k, first_step(k));
    if (std::abs(slope) <= 1e-8) break;
    const double curv = richardson_second(g, k, second_step(k));
    if (!(curv < 0.0)) break;
    const double step = slope / curv;
    const double next = std::clamp(k - step, lo, hi);
    if (next == k) break;
    k = next;
  }
  return {k, g(k)};
}

std::vector<std::size_t> local_maxima(const std::vector<double>& g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool left = i == 0 || g[i] >= g[i - 1];
    const bool right = i + 1 == g.size() || g[i] > g[i + 1];
    if (left && right) out.push_back(i);
  }
  return out;
}

CriticalData locate(const ModelSpec& model, const std::vector<double>& grid) {
  if (grid.size() < 3) throw PreconditionError(ErrorCategory::config, "k grid too small");
  const std::vector<double> g = scan(model, grid, 0.0);
  const auto peaks = local_maxima(g);
  std::size_t top = peaks.front();
  for (std::size_t i : peaks) {
    if (g[i] > g[top]) top = i;
  }
  const Peak best = refine_peak(model, grid, top);
  if (std::abs(best.value) > kBifurcationTol) {
    std::ostringstream msg;
    msg << "max Re lambda(k, 0) = " << best.value << " at k = " << best.k
        << "; mu is not centred on the bifurcation";
    throw NotAtBifurcationError(msg.str(), best.value, best.k);
  }
  const double dk = grid[1] - grid[0];
  if (best.k < 2.0 * dk) {
    throw UniquenessError("neutral wavenumber sits at k = 0; no Turing wavenumber k_* > 0");
  }
  for (std::size_t i : peaks) {
    if (i == top) continue;
    const Peak other = refine_peak(model, grid, i);
    if (std::abs(other.k - best.k) > 2.0 * dk && other.value >= -kBifurcationTol) {
      std::ostringstream msg;
      msg << "second neutral wavenumber at k = " << other.k << " (Re lambda = " << other.value
          << ") besides k = " << best.k;
      throw UniquenessError(msg.str());
    }
  }

  CriticalData c;
  c.k_star = best.k;
  c.k_scan_max = grid.back();
  const EigenDecomposition eig = eigen_decompose(eval_symbol(model, c.k_star, 0.0));
  const int j = top_index(eig.values);
  c.lambda = eig.values(j);
  CVec r = eig.right.col(j);
  CVec ell = eig.left.row(j).transpose();
  int big = 0;
  r.cwiseAbs().maxCoeff(&big);
  // r -> r * scale with |r| = 1 and r(big) > 0; ell absorbs 1 / scale
  const cplx scale = std::conj(r(big)) / (std::abs(r(big)) * r.norm());
  c.r = r * scale;
  c.ell = ell / scale;
  c.d_star = -c.lambda.imag() / c.k_star;

  const CVec ref = c.r;
  auto branch_k = [&](double k) { return tracked_eigenvalue(model, k, 0.0, ref); };
  auto branch_mu = [&](double mu) { return tracked_eigenvalue(model, c.k_star, mu, ref); };
  c.d_lambda_dk = richardson_first(branch_k, c.k_star, first_step(c.k_star));
  c.d2_lambda_dk2 = richardson_second(branch_k, c.k_star, second_step(c.k_star));
  c.d_lambda_dmu = richardson_first(branch_mu, 0.0, first_step(0.0));

  double gap = std::numeric_limits<double>::infinity();
  for (double k : grid) {
    const auto re = sorted_real(model, k, 0.0);
    if (re.size() > 1) gap = std::min(gap, -re[1]);
    if (std::abs(k - c.k_star) >= 0.5 * c.k_star) gap = std::min(gap, -re[0]);
  }
  c.spectral_gap = gap;
  return c;
}

Witness top_witness(const ModelSpec& model, double k, double mu) {
  const CVec ev = eigenvalues(eval_symbol(model, k, mu));
  return {k, mu, ev(top_index(ev))};
}

}  // namespace

cplx tracked_eigenvalue(const ModelSpec& model, double k, double mu, const CVec& reference,
                        CVec* vector) {
  const EigenDecomposition eig = eigen_decompose(eval_symbol(model, k, mu));
  const OverlapMatch m = best_overlap(eig.right, reference);
  if (vector) *vector = eig.right.col(m.index);
  return eig.values(m.index);
}

std::vector<cplx> critical_branch(const ModelSpec& model, const std::vector<double>& grid,
                                  double mu) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw PreconditionError(ErrorCategory::config, "k grid must be strictly increasing");
    }
  }
  std::vector<cplx> out;
  out.reserve(grid.size());
  CVec previous;
  for (double k : grid) {
    const EigenDecomposition eig = eigen_decompose(eval_symbol(model, k, mu));
    const int top = top_index(eig.values);
    int pick = top;
    if (previous.size() > 0) {
      std::vector<double> ov(eig.values.size());
      int best = 0;
      for (int j = 0; j < eig.values.size(); ++j) {
        ov[j] = overlap(eig.right.col(j), previous);
        if (ov[j] > ov[best]) best = j;
      }
      pick = best;
      bool ambiguous = false;
      bool top_in_play = ov[top] >= 0.95 * ov[best];
      for (int j = 0; j < eig.values.size(); ++j) {
        if (j != best && ov[j] >= 0.95 * ov[best]) ambiguous = true;
      }
      if (ambiguous) {
        if (!top_in_play) {
          std::ostringstream msg;
          msg << "branch tracking ambiguous at k = " << k << " (overlap ratio >= 0.95)";
          throw BranchTrackingError(msg.str(), k);
        }
        pick = top;
      }
    }
    previous = eig.right.col(pick);
    out.push_back(eig.values(pick));
  }
  return out;
}

CriticalData find_turing_point(const ModelSpec& model) {
  return locate(model, default_k_grid(model));
}

std::vector<double> default_k_grid(const ModelSpec& model) {
  const int n = 2001;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = model.k_scan_max * i / (n - 1);
  return grid;
}

std::vector<double> default_mu_samples() { return {-0.2, -0.05}; }

bool HypothesisReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const HypothesisItem& h) { return h.pass; });
}

HypothesisReport verify_hypotheses(const ModelSpec& model, const std::vector<double>& k_grid,
                                   const std::vector<double>& mu_samples) {
  if (k_grid.size() < 3) throw PreconditionError(ErrorCategory::config, "k grid too small");
  HypothesisReport rep;
  rep.model = model.name;
  rep.mu_samples = mu_samples;
  rep.k_min = k_grid.front();
  rep.k_max = k_grid.back();
  rep.k_points = static_cast<int>(k_grid.size());

  // (H1) sampled: every eigenvalue strictly stable for mu < 0
  {
    HypothesisItem h{"H1", true, "sampled", "", {}};
    int negatives = 0;
    Witness worst{0.0, 0.0, cplx(-std::numeric_limits<double>::infinity(), 0.0)};
    for (double mu : mu_samples) {
      if (!(mu < 0.0)) continue;
      ++negatives;
      const auto g = scan(model, k_grid, mu);
      const auto i = std::max_element(g.begin(), g.end()) - g.begin();
      const Witness w = top_witness(model, k_grid[i], mu);
      if (w.lambda.real() > worst.lambda.real()) worst = w;
      if (!(w.lambda.real() < 0.0)) h.pass = false;
    }
    if (negatives == 0) {
      throw PreconditionError(ErrorCategory::config, "H1 needs at least one mu < 0 sample");
    }
    h.witnesses.push_back(worst);
    std::ostringstream d;
    d << "max Re lambda over " << negatives << " negative mu samples = " << worst.lambda.real();
    h.detail = d.str();
    rep.items.push_back(h);
  }

  // (H2) unique neutral wavenumber at mu = 0
  HypothesisItem h2{"H2", false, "grid+refine", "", {}};
  try {
    rep.critical = locate(model, k_grid);
    rep.have_critical = true;
    h2.pass = true;
    h2.witnesses.push_back({rep.critical.k_star, 0.0, rep.critical.lambda});
    std::ostringstream d;
    d << "k_* = " << rep.critical.k_star;
    h2.detail = d.str();
  } catch (const NotAtBifurcationError& e) {
    h2.detail = e.what();
    h2.witnesses.push_back(top_witness(model, e.k(), 0.0));
  } catch (const UniquenessError& e) {
    h2.detail = e.what();
    const auto g = scan(model, k_grid, 0.0);
    const auto i = std::max_element(g.begin(), g.end()) - g.begin();
    h2.witnesses.push_back(top_witness(model, k_grid[i], 0.0));
  }
  rep.items.push_back(h2);

  // (H3) everything else strictly stable at mu = 0
  {
    HypothesisItem h{"H3", false, "grid", "", {}};
    if (!rep.have_critical) {
      h.detail = "requires a neutral wavenumber (H2)";
      h.witnesses = rep.items.back().witnesses;
    } else {
      const double kstar = rep.critical.k_star;
      const double dk = k_grid[1] - k_grid[0];
      Witness off{0.0, 0.0, cplx(-std::numeric_limits<double>::infinity(), 0.0)};
      double second_worst = -std::numeric_limits<double>::infinity();
      double second_k = kstar;
      for (double k : k_grid) {
        const auto re = sorted_real(model, k, 0.0);
        if (re.size() > 1 && re[1] > second_worst) {
          second_worst = re[1];
          second_k = k;
        }
        if (std::abs(k - kstar) > 5.0 * dk && re[0] > off.lambda.real()) {
          off = top_witness(model, k, 0.0);
        }
      }
      // the second eigenvalue at k_* itself
      const auto at_star = sorted_real(model, kstar, 0.0);
      if (at_star.size() > 1 && at_star[1] > second_worst) {
        second_worst = at_star[1];
        second_k = kstar;
      }
      h.pass = off.lambda.real() < 0.0 && second_worst < 0.0;
      h.witnesses.push_back(off);
      if (model.n > 1) {
        const CVec ev = eigenvalues(eval_symbol(model, second_k, 0.0));
        std::vector<cplx> v(ev.data(), ev.data() + ev.size());
        std::sort(v.begin(), v.end(), above);
        h.witnesses.push_back({second_k, 0.0, v[1]});
      }
      std::ostringstream d;
      d << "max Re away from k_* = " << off.lambda.real();
      if (model.n > 1) d << "; max Re of other branches = " << second_worst;
      d << "; spectral gap = " << rep.critical.spectral_gap;
      h.detail = d.str();
    }
    rep.items.push_back(h);
  }

  // (H4) transversality and curvature
  {
    HypothesisItem h{"H4", false, "finite-difference", "", {}};
    if (!rep.have_critical) {
      h.detail = "requires a neutral wavenumber (H2)";
      h.witnesses = rep.items[1].witnesses;
    } else {
      const auto& c = rep.critical;
      h.pass = c.d_lambda_dmu.real() > 0.0 && c.d2_lambda_dk2.real() < 0.0 &&
               std::abs(c.d_lambda_dk.real()) <= kBifurcationTol;
      h.witnesses.push_back({c.k_star, 0.0, c.lambda});
      std::ostringstream d;
      d << "Re dlambda/dmu = " << c.d_lambda_dmu.real()
        << ", Re d2lambda/dk2 = " << c.d2_lambda_dk2.real()
        << ", Re dlambda/dk = " << c.d_lambda_dk.real();
      h.detail = d.str();
    }
    rep.items.push_back(h);
  }
  return rep;
}

SpectralIdentity spectral_identity(const ModelSpec& model, const CriticalData& crit) {
  const int n = model.n;
  const double k = crit.k_star;
  const CMat unit = CMat::Identity(n, n);
  const CMat proj = crit.r * crit.ell.transpose();
  const CMat shifted = eval_symbol(model, k, 0.0) + (I * k * crit.d_star) * unit;
  // shifted + proj is invertible and leaves the range of I - proj invariant
  const CMat deflated_inv = (unit - proj) * (shifted + proj).inverse() * (unit - proj);
  const CMat sk = symbol_dk(model, k, 0.0);
  const CMat skk = symbol_dkk(model, k, 0.0);
  SpectralIdentity out;
  out.lhs = crit.d2_lambda_dk2 * crit.r;
  out.rhs = 2.0 * proj * (0.5 * skk * crit.r - sk * deflated_inv * sk * crit.r);
  out.defect = (out.lhs - out.rhs).norm() / std::max(1.0, out.lhs.norm());
  return out;
}

double perturbation_identity_defect(const ModelSpec& model, const CriticalData& crit) {
  const cplx direct = pair(crit.ell, symbol_dk(model, crit.k_star, 0.0) * crit.r);
  return std::abs(direct - crit.d_lambda_dk) / std::max(1.0, std::abs(crit.d_lambda_dk));
}

}  // namespace turinglab
