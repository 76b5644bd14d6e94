#include "turinglab/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "turinglab/errors.hpp"

namespace turinglab {

const char* to_string(Symmetry s) { return s == Symmetry::O2 ? "O2" : "SO2"; }

CMat eval_symbol(const ModelSpec& model, double k, double mu) {
  if (!std::isfinite(k) || !std::isfinite(mu)) {
    throw ModelDomainError("symbol evaluated at non-finite (k, mu)");
  }
  CMat s = model.symbol(k, mu);
  if (s.rows() != model.n || s.cols() != model.n) {
    std::ostringstream msg;
    msg << "model '" << model.name << "' returned a " << s.rows() << "x" << s.cols()
        << " symbol, expected " << model.n << "x" << model.n;
    throw ModelDomainError(msg.str());
  }
  if (!s.allFinite()) {
    std::ostringstream msg;
    msg << "model '" << model.name << "' symbol not finite at k=" << k << ", mu=" << mu;
    throw ModelDomainError(msg.str());
  }
#ifndef NDEBUG
  {
    const CMat reflected = model.symbol(-k, mu);
    assert((reflected - s.conjugate()).norm() <= 1e-10 * std::max(1.0, s.norm()));
  }
#endif
  return s;
}

namespace {

void check_dims(const ModelSpec& model, std::initializer_list<const CVec*> vs) {
  for (const CVec* v : vs) {
    if (v->size() != model.n) {
      std::ostringstream msg;
      msg << "form argument of length " << v->size() << " for model of dimension " << model.n;
      throw DimensionError(msg.str());
    }
  }
}

}  // namespace

CVec eval_qform(const ModelSpec& model, double k1, double k2, const CVec& u, const CVec& v) {
  check_dims(model, {&u, &v});
  if (!model.qform) return CVec::Zero(model.n);
  return model.qform(k1, k2, u, v);
}

CVec eval_cform(const ModelSpec& model, double k1, double k2, double k3, const CVec& u,
                const CVec& v, const CVec& w) {
  check_dims(model, {&u, &v, &w});
  if (!model.cform) return CVec::Zero(model.n);
  return model.cform(k1, k2, k3, u, v, w);
}

CMat symbol_dk(const ModelSpec& model, double k, double mu) {
  return richardson_first([&](double x) { return eval_symbol(model, x, mu); }, k, first_step(k));
}

CMat symbol_dkk(const ModelSpec& model, double k, double mu) {
  return richardson_second([&](double x) { return eval_symbol(model, x, mu); }, k,
                           second_step(k));
}

CMat symbol_dmu(const ModelSpec& model, double k, double mu) {
  return richardson_first([&](double m) { return eval_symbol(model, k, m); }, mu,
                          first_step(mu));
}

namespace {

cplx tabulated_lookup(const std::vector<PhiSample>& samples, double k) {
  if (samples.empty() || k < samples.front().k || k > samples.back().k) return {0.0, 0.0};
  auto hi = std::lower_bound(samples.begin(), samples.end(), k,
                             [](const PhiSample& s, double x) { return s.k < x; });
  if (hi == samples.begin()) return {hi->re, hi->im};
  auto lo = hi - 1;
  const double t = (k - lo->k) / (hi->k - lo->k);
  return {lo->re + t * (hi->re - lo->re), lo->im + t * (hi->im - lo->im)};
}

}  // namespace

KernelTransform tabulated_kernel(std::vector<PhiSample> samples) {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].k > samples[i - 1].k)) {
      throw ConfigError("phi_hat samples must be strictly increasing in k");
    }
  }
  // a table on k >= 0 only is extended by phi(-k) = conj phi(k), as for any real kernel
  const bool mirror = samples.empty() || samples.front().k >= 0.0;
  return [samples = std::move(samples), mirror](double k) -> cplx {
    if (mirror && k < 0.0) return std::conj(tabulated_lookup(samples, -k));
    return tabulated_lookup(samples, k);
  };
}

double turing_shift(const SymbolFn& symbol, double k_max) {
  auto growth = [&](double k) { return eigenvalues(symbol(k, 0.0)).real().maxCoeff(); };
  const int samples = 4001;
  double best_k = 0.0;
  double best = growth(0.0);
  for (int i = 1; i < samples; ++i) {
    const double k = k_max * i / (samples - 1);
    const double g = growth(k);
    if (g > best) {
      best = g;
      best_k = k;
    }
  }
  // golden-section refinement on the bracketing cell
  const double dk = k_max / (samples - 1);
  double a = std::max(0.0, best_k - dk);
  double b = std::min(k_max, best_k + dk);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = growth(x1);
  double f2 = growth(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = growth(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = growth(x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace turinglab
