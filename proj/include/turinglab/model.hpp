#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "turinglab/linalg.hpp"

namespace turinglab {

enum class Symmetry { SO2, O2 };

const char* to_string(Symmetry s);

/// Fourier symbol S(k, mu): L e^{ikx} v = S(k, mu) e^{ikx} v.
using SymbolFn = std::function<CMat(double k, double mu)>;

/// Bilinear Fourier form Q(k1,k2)(u,v): the e^{i(k1+k2)x} coefficient of
/// Q(u e^{ik1x}, v e^{ik2x}), with N(u) = Q(u,u) + C(u,u,u) + O(|u|^4).
using QuadraticForm = std::function<CVec(double k1, double k2, const CVec& u, const CVec& v)>;

/// Trilinear analogue of QuadraticForm; 6 C = D^3 N.
using CubicForm = std::function<CVec(double k1, double k2, double k3, const CVec& u,
                                     const CVec& v, const CVec& w)>;

/// Named numeric parameters. Scalars are one-element vectors, matrices are
/// row-major.
using Params = std::map<std::string, std::vector<double>>;

/// An evolution system u_t = L(mu) u + N(u) in spectral form. Immutable once
/// built and safe to share between threads.
struct ModelSpec {
  std::string name;
  int n = 1;
  Symmetry symmetry = Symmetry::O2;
  Params parameters;
  SymbolFn symbol;
  QuadraticForm qform;  // empty means zero
  CubicForm cform;      // empty means zero
  /// Upper end of the default wavenumber scan used to locate k_*.
  double k_scan_max = 8.0;
};

CMat eval_symbol(const ModelSpec& model, double k, double mu);

CVec eval_qform(const ModelSpec& model, double k1, double k2, const CVec& u, const CVec& v);

CVec eval_cform(const ModelSpec& model, double k1, double k2, double k3, const CVec& u,
                const CVec& v, const CVec& w);

/// Symbol derivatives by Richardson central differences.
CMat symbol_dk(const ModelSpec& model, double k, double mu);
CMat symbol_dkk(const ModelSpec& model, double k, double mu);
CMat symbol_dmu(const ModelSpec& model, double k, double mu);

/// Nonlocal kernel transform phi_hat(k), sampled or analytic.
using KernelTransform = std::function<cplx(double k)>;

/// Linear interpolation of (k, Re, Im) samples; zero outside the table. A
/// table starting at k >= 0 is mirrored to negative k by conjugation.
/// Samples must be strictly increasing in k.
struct PhiSample {
  double k;
  double re;
  double im;
};
KernelTransform tabulated_kernel(std::vector<PhiSample> samples);

/// Built-in model zoo. Known names: swift-hohenberg, brusselator,
/// hadamard-diffusive, hadamard-burgers, keller-segel, heat-scalar.
/// `phi_hat` is consulted by keller-segel only; when empty the default
/// Gaussian transform exp(-(w k)^2 / 2) with w = params["phi_width"] is used.
ModelSpec builtin(const std::string& name, const Params& params = {},
                  KernelTransform phi_hat = {});

std::vector<std::string> builtin_names();

/// Shift that re-centres a symbol so that max_k Re(eig S(k, 0)) == 0;
/// scans [0, k_max] and refines the maximum.
double turing_shift(const SymbolFn& symbol, double k_max);

}  // namespace turinglab
