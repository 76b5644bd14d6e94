#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "turinglab/bloch.hpp"
#include "turinglab/errors.hpp"

using namespace turinglab;
using fixtures::setup;

namespace {

// B(sigma) with block eta and block -eta swapped
CMat reflect(const CMat& b, int n, int M) {
  const int size = n * (2 * M + 1);
  CMat r = CMat::Zero(size, size);
  for (int i = -M; i <= M; ++i) {
    for (int j = -M; j <= M; ++j) {
      r.block(n * (i + M), n * (j + M), n, n) = b.block(n * (-i + M), n * (-j + M), n, n);
    }
  }
  return r;
}

std::vector<double> sorted_real_parts(const CMat& b) {
  const CVec ev = Eigen::ComplexEigenSolver<CMat>(b, false).eigenvalues();
  std::vector<double> re(ev.size());
  for (int i = 0; i < ev.size(); ++i) re[i] = ev(i).real();
  std::sort(re.begin(), re.end());
  return re;
}

// tracking may hand off between curves only below -delta, as the verdict does
SweepOptions small_sweep(const CriticalData& crit, Convention c) {
  SweepOptions o;
  o.convention = c;
  o.delta = 0.5 * crit.spectral_gap;
  o.n_geometric = 9;
  o.n_linear = 9;
  o.n_far = 5;
  return o;
}

}  // namespace

TEST_CASE("conjugation symmetry of the Bloch matrix") {
  for (const std::string name : fixtures::kSupercritical) {
    const fixtures::Setup& s = setup(name);
    const WaveProfile p = fixtures::wave(name, 0.04, 0.1);
    for (Convention c : {Convention::standard, Convention::modified}) {
      for (double sigma : {0.013, 0.2, 0.5}) {
        const CMat plus = assemble_bloch(s.model, s.crit, p, sigma, c);
        const CMat minus = assemble_bloch(s.model, s.crit, p, -sigma, c);
        const double defect = (minus - reflect(plus, p.n, p.M).conjugate()).norm() / plus.norm();
        CHECK_MESSAGE(defect <= 1e-12, name);
      }
    }
  }
}

TEST_CASE("parallel and reference assembly agree") {
  for (const std::string name : {"brusselator", "hadamard-burgers"}) {
    const fixtures::Setup& s = setup(name);
    const WaveProfile p = fixtures::wave(name, 0.04, 0.1);
    for (double sigma : {0.0, -0.07, 0.31}) {
      const CMat a = assemble_bloch(s.model, s.crit, p, sigma, Convention::modified);
      const CMat b = assemble_bloch_reference(s.model, s.crit, p, sigma, Convention::modified);
      CHECK((a - b).norm() <= 1e-13 * a.norm());
    }
    const SweepOptions o = small_sweep(s.crit, Convention::modified);
    const auto grid = sweep_grid(0.04, o);
    const SpectralCurves x = bloch_sweep(s.model, s.crit, p, grid, o);
    const SpectralCurves y = bloch_sweep_reference(s.model, s.crit, p, grid, o);
    REQUIRE(x.lambda2.size() == y.lambda2.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(x.lambda1[i] - y.lambda1[i]) <= 1e-10 * x.norm_b0);
      CHECK(std::abs(x.lambda2[i] - y.lambda2[i]) <= 1e-10 * x.norm_b0);
    }
    CHECK(x.handoffs == y.handoffs);
  }
}

TEST_CASE("translation mode spans the kernel at sigma = 0") {
  for (const std::string name : fixtures::kSupercritical) {
    const fixtures::Setup& s = setup(name);
    const WaveProfile p = fixtures::wave(name, 0.03, 0.1);
    for (Convention c : {Convention::standard, Convention::modified}) {
      const CMat b = assemble_bloch(s.model, s.crit, p, 0.0, c);
      const CVec t = p.translation_mode();
      // B(0) U' = 0 exactly up to the Galerkin residual
      CHECK_MESSAGE((b * t).norm() <= 1e-8 * b.norm() * t.norm(), name);
      const SweepOptions o = small_sweep(s.crit, c);
      const SpectralCurves curves = bloch_sweep(s.model, s.crit, p, sweep_grid(0.03, o), o);
      CHECK_MESSAGE(std::abs(curves.lambda2[curves.zero_index]) <= 1e-8 * curves.norm_b0, name);
    }
  }
}

TEST_CASE("conventions differ by i sigma s and share real spectra") {
  for (const std::string name : {"swift-hohenberg", "hadamard-burgers", "keller-segel"}) {
    const fixtures::Setup& s = setup(name);
    const WaveProfile p = fixtures::wave(name, 0.04, 0.12);
    const double rate = convention_shift_rate(s.crit, p);
    for (double sigma : {-0.3, 0.02, 0.45}) {
      const CMat std_b = assemble_bloch(s.model, s.crit, p, sigma, Convention::standard);
      const CMat mod_b = assemble_bloch(s.model, s.crit, p, sigma, Convention::modified);
      const CMat shift = CMat::Identity(std_b.rows(), std_b.cols()) * (I * sigma * rate);
      CHECK((mod_b - std_b - shift).norm() <= 1e-13 * std_b.norm());
      const auto a = sorted_real_parts(std_b);
      const auto b = sorted_real_parts(mod_b);
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
      CHECK_MESSAGE(worst <= 1e-12 * std_b.norm(), name);
    }
  }
}

TEST_CASE("zero amplitude leaves a two-dimensional kernel") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  WaveOptions o;
  o.M = 8;
  WaveProfile p = wave_guess(s.model, s.crit, s.cgl, 0.04, 0.0, o);
  for (auto& m : p.modes) m.setZero();
  p.eps = 0.0;
  p.k = s.crit.k_star;
  p.mu = 0.0;
  p.Omega = 0.0;
  p.frame_shift = 0.0;
  const CMat b = assemble_bloch(s.model, s.crit, p, 0.0, Convention::standard);
  // block diagonal
  for (int i = -p.M; i <= p.M; ++i) {
    for (int j = -p.M; j <= p.M; ++j) {
      if (i != j) CHECK(b.block(i + p.M, j + p.M, 1, 1).norm() == 0.0);
    }
  }
  const CVec ev = Eigen::ComplexEigenSolver<CMat>(b, false).eigenvalues();
  int zeros = 0;
  for (int i = 0; i < ev.size(); ++i) zeros += std::abs(ev(i)) <= 1e-12;
  CHECK(zeros == 2);
}

TEST_CASE("tracked curves are conjugate-symmetric in sigma") {
  const fixtures::Setup& s = setup("hadamard-burgers");
  const WaveProfile p = fixtures::wave("hadamard-burgers", 0.04, 0.15);
  const SweepOptions o = small_sweep(s.crit, Convention::standard);
  const auto grid = sweep_grid(0.04, o);
  const SpectralCurves c = bloch_sweep(s.model, s.crit, p, grid, o);
  const int n = static_cast<int>(grid.size());
  for (int i = 0; i < n; ++i) {
    CHECK(grid[i] == -grid[n - 1 - i]);
    CHECK(std::abs(c.lambda1[i] - std::conj(c.lambda1[n - 1 - i])) <= 1e-10 * c.norm_b0);
    CHECK(std::abs(c.lambda2[i] - std::conj(c.lambda2[n - 1 - i])) <= 1e-10 * c.norm_b0);
  }
}

TEST_CASE("sweep grid layout") {
  SweepOptions o;
  const double eps = 0.02;
  const auto g = sweep_grid(eps, o);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  CHECK(std::count(g.begin(), g.end(), 0.0) == 1);
  CHECK(g.front() == doctest::Approx(-0.5));
  CHECK(g.back() == doctest::Approx(0.5));
  const std::size_t mid = g.size() / 2;
  CHECK(g[mid] == 0.0);
  CHECK(g[mid + 1] == doctest::Approx(eps * eps / 10.0));
  const auto inner = std::count_if(g.begin(), g.end(), [&](double s) {
    return s != 0.0 && std::abs(s) <= eps / o.region_c * (1 + 1e-12);
  });
  CHECK(inner == 2 * o.n_geometric);
  CHECK_THROWS_AS(sweep_grid(0.0, o), PreconditionError);
}

TEST_CASE("Swift-Hohenberg expansion: no drift, stable curvature inside the band") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  const WaveProfile p = fixtures::wave("swift-hohenberg", 0.02, 0.15);
  SweepOptions o;
  o.delta = 0.5 * s.crit.spectral_gap;
  const SpectralCurves c = bloch_sweep(s.model, s.crit, p, sweep_grid(0.02, o), o);
  const ExpansionFit f = fit_expansion(c, 0.02);
  CHECK(std::abs(f.c1.real()) <= 1e-6);
  CHECK(std::abs(f.c1.imag()) <= 1e-6);
  CHECK(f.c2.real() < 0.0);
  CHECK(std::abs(f.c0_2) <= 1e-10);
  CHECK(f.c0_1.real() == doctest::Approx(2 * 0.02 * 0.02 * s.cgl.alpha_sq(0.15) * s.cgl.c.real()).epsilon(0.01));
  CHECK_FALSE(f.re_c1_flag);
}

TEST_CASE("Im c1 follows the phase law of the wave family") {
  // in the standard frame lambda2 = i sigma (k dOmega/dk - Omega) + O(sigma^2)
  const std::string name = "hadamard-burgers";
  const fixtures::Setup& s = setup(name);
  const double eps = 0.04;
  const double kappa = 0.15;
  const double h = 1e-4;
  const WaveProfile p = fixtures::wave(name, eps, kappa);
  const double dOmega_dk = (fixtures::wave(name, eps, kappa + h).lab_omega() -
                            fixtures::wave(name, eps, kappa - h).lab_omega()) /
                           (2 * h * eps);
  const double oracle = p.k * dOmega_dk - p.lab_omega();
  for (Convention c : {Convention::standard, Convention::modified}) {
    SweepOptions o;
    o.convention = c;
    o.delta = 0.5 * s.crit.spectral_gap;
    const SpectralCurves curves = bloch_sweep(s.model, s.crit, p, sweep_grid(eps, o), o);
    const ExpansionFit f = fit_expansion(curves, eps);
    const double expect =
        oracle + (c == Convention::modified ? convention_shift_rate(s.crit, p) : 0.0);
    CHECK(std::abs(f.c1.imag() - expect) <= 1e-6);
  }
}

TEST_CASE("fit and sweep errors") {
  const fixtures::Setup& s = setup("swift-hohenberg");
  const WaveProfile p = fixtures::wave("swift-hohenberg", 0.04, 0.1);
  SweepOptions o = small_sweep(s.crit, Convention::modified);
  o.n_geometric = 2;
  const SpectralCurves c = bloch_sweep(s.model, s.crit, p, sweep_grid(0.04, o), o);
  CHECK_THROWS_AS(fit_expansion(c, 0.04), FitError);

  SweepOptions gap = small_sweep(s.crit, Convention::modified);
  gap.delta = 10.0;
  CHECK_THROWS_AS(bloch_sweep(s.model, s.crit, p, sweep_grid(0.04, gap), gap), GapViolationError);

  CHECK_THROWS_AS(bloch_sweep(s.model, s.crit, p, {-0.1, 0.1}, gap), PreconditionError);
  CHECK_THROWS_AS(bloch_sweep(s.model, s.crit, p, {0.1, 0.0, 0.2}, gap), PreconditionError);
  CHECK_THROWS_AS(assemble_bloch(s.model, s.crit, p, 0.6, Convention::modified), PreconditionError);
  CHECK_THROWS_AS(convention_from("lab"), ConfigError);
}
