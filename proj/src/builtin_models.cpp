// Built-in model zoo. Every linear part is re-centred so that mu = 0 sits
// exactly on the Turing threshold; the nonlinear forms are frozen at mu = 0.

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "turinglab/errors.hpp"
#include "turinglab/model.hpp"

namespace turinglab {

namespace {

class ParamReader {
 public:
  ParamReader(std::string model, const Params& given) : model_(std::move(model)), given_(given) {}

  double scalar(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = given_.find(key);
    if (it == given_.end()) return fallback;
    if (it->second.size() != 1) fail(key, "expects a scalar");
    return finite(key, it->second[0]);
  }

  std::vector<double> vector(const std::string& key, std::vector<double> fallback) {
    used_.insert(key);
    auto it = given_.find(key);
    if (it == given_.end()) return fallback;
    if (it->second.size() != fallback.size()) {
      std::ostringstream msg;
      msg << "expects " << fallback.size() << " values, got " << it->second.size();
      fail(key, msg.str());
    }
    for (double v : it->second) finite(key, v);
    return it->second;
  }

  /// Rejects keys the model does not understand.
  void finish() const {
    for (const auto& [key, value] : given_) {
      if (!used_.count(key)) fail(key, "is not a parameter of this model");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(model_ + ": parameter '" + key + "' " + why);
  }

 private:
  double finite(const std::string& key, double v) const {
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  std::string model_;
  const Params& given_;
  std::set<std::string> used_;
};

Params record(const Params& defaults, const Params& given) {
  Params out = defaults;
  for (const auto& [k, v] : given) out[k] = v;
  return out;
}

ModelSpec swift_hohenberg(const Params& given) {
  ParamReader p("swift-hohenberg", given);
  const double g2 = p.scalar("g2", 0.0);
  p.finish();

  ModelSpec m;
  m.name = "swift-hohenberg";
  m.n = 1;
  m.symmetry = Symmetry::O2;
  m.parameters = record({{"g2", {0.0}}}, given);
  m.k_scan_max = 4.0;
  m.symbol = [](double k, double mu) {
    const double w = 1.0 - k * k;
    return CMat::Constant(1, 1, cplx(mu - w * w, 0.0));
  };
  if (g2 != 0.0) {
    m.qform = [g2](double, double, const CVec& u, const CVec& v) -> CVec {
      return g2 * u.cwiseProduct(v);
    };
  }
  m.cform = [](double, double, double, const CVec& u, const CVec& v, const CVec& w) -> CVec {
    return -u.cwiseProduct(v).cwiseProduct(w);
  };
  return m;
}

// u_t = Du u_xx + a - (b+1)u + u^2 v, v_t = Dv v_xx + b u - u^2 v about (a, b/a).
ModelSpec brusselator(const Params& given) {
  ParamReader p("brusselator", given);
  const double a = p.scalar("a", 2.0);
  const double du = p.scalar("Du", 1.0);
  const double dv = p.scalar("Dv", 8.0);
  p.finish();
  if (a <= 0.0) p.fail("a", "must be positive");
  if (du <= 0.0) p.fail("Du", "must be positive");
  if (dv <= 0.0) p.fail("Dv", "must be positive");
  const double root = 1.0 + a * std::sqrt(du / dv);
  const double bc = root * root;
  if (bc >= 1.0 + a * a) {
    throw ConfigError("brusselator: Hopf threshold 1+a^2 precedes the Turing threshold; raise Dv/Du");
  }

  ModelSpec m;
  m.name = "brusselator";
  m.n = 2;
  m.symmetry = Symmetry::O2;
  m.parameters = record({{"a", {2.0}}, {"Du", {1.0}}, {"Dv", {8.0}}}, given);
  m.parameters["b_c"] = {bc};
  m.k_scan_max = 4.0 * std::sqrt(a / std::sqrt(du * dv));
  m.symbol = [a, du, dv, bc](double k, double mu) {
    const double b = bc + mu;
    CMat s(2, 2);
    s << b - 1.0 - du * k * k, a * a, -b, -a * a - dv * k * k;
    return s;
  };
  const double cxx = bc / a;
  m.qform = [a, cxx](double, double, const CVec& u, const CVec& v) -> CVec {
    const cplx f = cxx * u(0) * v(0) + a * (u(0) * v(1) + u(1) * v(0));
    CVec out(2);
    out << f, -f;
    return out;
  };
  m.cform = [](double, double, double, const CVec& u, const CVec& v, const CVec& w) -> CVec {
    const cplx f = (u(0) * v(0) * w(1) + u(0) * v(1) * w(0) + u(1) * v(0) * w(0)) / 3.0;
    CVec out(2);
    out << f, -f;
    return out;
  };
  return m;
}

struct ReactionDiffusion {
  Eigen::Matrix2d A;
  Eigen::Vector2d D;
  Eigen::Vector2d V;
  double shift = 0.0;
};

ReactionDiffusion read_rd(ParamReader& p, bool advection) {
  ReactionDiffusion rd;
  const auto a = p.vector("A", {1.0, -1.0, 3.0, -2.0});
  const auto d = p.vector("D", {1.0, 10.0});
  rd.A << a[0], a[1], a[2], a[3];
  rd.D << d[0], d[1];
  if (d[0] <= 0.0 || d[1] <= 0.0) p.fail("D", "diffusion coefficients must be positive");
  rd.V.setZero();
  if (advection) {
    const auto v = p.vector("V", {0.0, 0.5});
    rd.V << v[0], v[1];
  }
  return rd;
}

SymbolFn rd_symbol(const ReactionDiffusion& rd) {
  return [rd](double k, double mu) {
    CMat s = rd.A.cast<cplx>();
    for (int j = 0; j < 2; ++j) {
      s(j, j) += cplx(-k * k * rd.D(j) - rd.shift + mu, k * rd.V(j));
    }
    return s;
  };
}

void centre(ModelSpec& m, ReactionDiffusion& rd) {
  rd.shift = 0.0;
  rd.shift = turing_shift(rd_symbol(rd), m.k_scan_max);
  m.symbol = rd_symbol(rd);
  m.parameters["shift"] = {rd.shift};
}

CubicForm hadamard_cubic(double g3) {
  if (g3 == 0.0) return {};
  return [g3](double, double, double, const CVec& u, const CVec& v, const CVec& w) -> CVec {
    return -g3 * u.cwiseProduct(v).cwiseProduct(w);
  };
}

// u_t = D u_xx + A u + (1/2)(u o u)_xx
ModelSpec hadamard_diffusive(const Params& given) {
  ParamReader p("hadamard-diffusive", given);
  ReactionDiffusion rd = read_rd(p, false);
  const double g3 = p.scalar("g3", 1.0);
  p.finish();

  ModelSpec m;
  m.name = "hadamard-diffusive";
  m.n = 2;
  m.symmetry = Symmetry::O2;
  m.parameters = record({{"A", {1.0, -1.0, 3.0, -2.0}}, {"D", {1.0, 10.0}}, {"g3", {1.0}}}, given);
  m.k_scan_max = 4.0;
  centre(m, rd);
  m.qform = [](double k1, double k2, const CVec& u, const CVec& v) -> CVec {
    const double s = k1 + k2;
    return (-0.5 * s * s) * u.cwiseProduct(v);
  };
  m.cform = hadamard_cubic(g3);
  return m;
}

// u_t = D u_xx + V u_x + A u + (1/2)(u o u)_x
ModelSpec hadamard_burgers(const Params& given) {
  ParamReader p("hadamard-burgers", given);
  ReactionDiffusion rd = read_rd(p, true);
  const double g3 = p.scalar("g3", 1.0);
  p.finish();

  ModelSpec m;
  m.name = "hadamard-burgers";
  m.n = 2;
  m.symmetry = rd.V.isZero() ? Symmetry::O2 : Symmetry::SO2;
  m.parameters = record({{"A", {1.0, -1.0, 3.0, -2.0}},
                         {"D", {1.0, 10.0}},
                         {"V", {0.0, 0.5}},
                         {"g3", {1.0}}},
                        given);
  m.k_scan_max = 4.0;
  centre(m, rd);
  m.qform = [](double k1, double k2, const CVec& u, const CVec& v) -> CVec {
    return (0.5 * I * (k1 + k2)) * u.cwiseProduct(v);
  };
  m.cform = hadamard_cubic(g3);
  return m;
}

// u_t = D u_xx + A u + chi (u o (u * phi)_x)_x, kernel given by its transform.
ModelSpec keller_segel(const Params& given, KernelTransform phi_hat) {
  ParamReader p("keller-segel", given);
  ReactionDiffusion rd = read_rd(p, false);
  const double chi = p.scalar("chi", 1.0);
  const double width = p.scalar("phi_width", 1.0);
  const double g3 = p.scalar("g3", 1.0);
  p.finish();
  if (width < 0.0) p.fail("phi_width", "must be non-negative");

  ModelSpec m;
  m.name = "keller-segel";
  m.n = 2;
  m.symmetry = Symmetry::O2;
  m.parameters = record({{"A", {1.0, -1.0, 3.0, -2.0}},
                         {"D", {1.0, 10.0}},
                         {"chi", {1.0}},
                         {"phi_width", {1.0}},
                         {"g3", {1.0}}},
                        given);
  m.k_scan_max = 4.0;
  centre(m, rd);
  if (!phi_hat) {
    phi_hat = [width](double k) { return cplx(std::exp(-0.5 * width * width * k * k), 0.0); };
  } else {
    m.parameters.erase("phi_width");
    m.symmetry = Symmetry::SO2;  // a tabulated kernel need not be even
  }
  m.qform = [chi, phi_hat](double k1, double k2, const CVec& u, const CVec& v) -> CVec {
    const cplx weight = -0.5 * chi * (k1 + k2) * (k1 * phi_hat(k1) + k2 * phi_hat(k2));
    return weight * u.cwiseProduct(v);
  };
  m.cform = hadamard_cubic(g3);
  return m;
}

// u_t = u_xx - u: no neutral wavenumber at all.
ModelSpec heat_scalar(const Params& given) {
  ParamReader p("heat-scalar", given);
  p.finish();
  ModelSpec m;
  m.name = "heat-scalar";
  m.n = 1;
  m.symmetry = Symmetry::O2;
  m.k_scan_max = 4.0;
  m.symbol = [](double k, double mu) { return CMat::Constant(1, 1, cplx(-k * k - 1.0 + mu, 0.0)); };
  return m;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"swift-hohenberg", "brusselator",  "hadamard-diffusive",
          "hadamard-burgers", "keller-segel", "heat-scalar"};
}

ModelSpec builtin(const std::string& name, const Params& params, KernelTransform phi_hat) {
  if (phi_hat && name != "keller-segel") {
    throw ConfigError("phi_hat is only meaningful for keller-segel");
  }
  if (name == "swift-hohenberg") return swift_hohenberg(params);
  if (name == "brusselator") return brusselator(params);
  if (name == "hadamard-diffusive") return hadamard_diffusive(params);
  if (name == "hadamard-burgers") return hadamard_burgers(params);
  if (name == "keller-segel") return keller_segel(params, std::move(phi_hat));
  if (name == "heat-scalar") return heat_scalar(params);
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown model '" + name + "' (known: " + known + ")");
}

}  // namespace turinglab
