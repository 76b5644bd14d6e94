#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "turinglab/bloch.hpp"
#include "turinglab/cgl.hpp"
#include "turinglab/errors.hpp"
#include "turinglab/model_config.hpp"
#include "turinglab/reduced.hpp"
#include "turinglab/serialize.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/verdict.hpp"
#include "turinglab/wave.hpp"

namespace turinglab::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string model;
  std::string config;
  double eps = 0.02;
  double kappa = 0.0;
  std::vector<double> eps_list{0.04, 0.02};
  std::vector<double> kappa_list{0.15};
  int modes = 16;
  double sigma_max = 0.5;
  std::string convention = "modified";
  std::string out = "out";
  unsigned long long seed = 1;
  std::vector<double> coeffs;
  int draws = 0;
};

// Collects the inputs and outputs of one command; its hash tags every CSV.
class Manifest {
 public:
  Manifest(std::string command, const Options& o) {
    j_["command"] = std::move(command);
    if (!o.config.empty()) {
      j_["config"] = o.config;
    } else if (!o.model.empty()) {
      j_["model"] = o.model;
    }
    j_["tool_version"] = kToolVersion;
    j_["gamma_prefactor"] = kGammaPrefactor;
    j_["parameters"] = Json::object();
  }
  template <class T>
  void param(const std::string& key, const T& value) {
    j_["parameters"][key] = value;
  }
  void output(const std::string& path) { outputs_.push_back(path); }
  std::string hash() const { return fnv1a_hex(j_.dump()); }
  void write(const std::string& dir, double seconds) {
    Json full = j_;
    full["hash"] = hash();
    full["outputs"] = outputs_;
    full["wall_clock_seconds"] = seconds;
    write_atomic((fs::path(dir) / "manifest.json").string(), full.dump(2) + "\n");
  }

 private:
  Json j_;
  std::vector<std::string> outputs_;
};

ModelSpec load(const Options& o) {
  if (!o.config.empty()) return build_model(load_model_config(o.config));
  if (o.model.empty()) throw ConfigError("one of --model or --config is required");
  return builtin(o.model);
}

std::string out_path(const Options& o, const std::string& name) {
  return (fs::path(o.out) / name).string();
}

void save_json(const Options& o, Manifest& m, const std::string& name, Json j) {
  j["manifest"] = m.hash();
  const std::string path = out_path(o, name);
  write_atomic(path, j.dump(2) + "\n");
  m.output(path);
}

void save_csv(const Options& o, Manifest& m, const std::string& name,
              const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  const std::string path = out_path(o, name);
  write_atomic(path, csv_text(m.hash(), header, rows));
  m.output(path);
}

WaveOptions wave_options(const Options& o) {
  WaveOptions w;
  w.M = o.modes;
  return w;
}

VerdictOptions verdict_options(const Options& o) {
  VerdictOptions v;
  v.sweep.convention = convention_from(o.convention);
  v.sweep.sigma_max = o.sigma_max;
  return v;
}

int cmd_check(const Options& o, Manifest& man, std::ostream& out) {
  const ModelSpec model = load(o);
  const HypothesisReport rep =
      verify_hypotheses(model, default_k_grid(model), default_mu_samples());
  save_json(o, man, "hypotheses.json", to_json(rep));
  for (const auto& h : rep.items) {
    out << h.name << " " << (h.pass ? "PASS" : "FAIL") << "  " << h.detail << "\n";
  }
  if (rep.have_critical) out << "k_* = " << rep.critical.k_star << "\n";
  return rep.all_pass() ? kOk : kHypothesisFail;
}

int cgl_random_suite(const Options& o, Manifest& man, std::ostream& out) {
  const PropertySuite s = cgl_property_suite(o.draws, o.seed);
  save_json(o, man, "cgl_suite.json",
            {{"seed", o.seed},
             {"draws", s.draws},
             {"band_ordering", s.ordered},
             {"normalized_round_trip", s.round_trip},
             {"third_order_remainder", s.remainder}});
  out << "draws " << s.draws << ": band ordering " << s.ordered << ", round trip " << s.round_trip
      << ", remainder " << s.remainder << "\n";
  return s.pass() ? kOk : kSolver;
}

int cmd_cgl(const Options& o, Manifest& man, std::ostream& out) {
  man.param("seed", o.seed);
  if (o.draws > 0) return cgl_random_suite(o, man, out);
  CGLCoefficients c;
  Json j;
  if (!o.coeffs.empty()) {
    if (o.coeffs.size() != 6) throw ConfigError("--coeffs wants 6 numbers: Re a,Im a,Re b,Im b,Re c,Im c");
    man.param("coeffs", o.coeffs);
    c = cgl_from({o.coeffs[0], o.coeffs[1]}, {o.coeffs[2], o.coeffs[3]},
                 {o.coeffs[4], o.coeffs[5]});
    j = to_json(c);
    j.erase("gamma_candidates");
  } else {
    const ModelSpec model = load(o);
    const CriticalData crit = find_turing_point(model);
    c = cgl_coefficients(model, crit);
    j = to_json(c);
    j["critical"] = to_json(crit);
  }
  if (c.a.real() > 0.0 && c.b.real() > 0.0 && c.c.real() < 0.0) j["normal_form"] = to_json(normalize(c));
  save_json(o, man, "cgl.json", j);
  out << std::setprecision(10);
  out << "a = " << c.a << "  b = " << c.b << "  c = " << c.c << "\n";
  out << "kappa_E^2 = " << c.kappaE_sq << "  kappa_S^2 = " << c.kappaS_sq << "  BFN = " << c.bfn
      << "\n";
  if (c.bfn > 0.0) {
    out << "stable band: kappa^2 < " << c.kappaS_sq << "\n";
  } else {
    out << "no stable band (BFN <= 0)\n";
  }
  return kOk;
}

std::vector<std::vector<double>> mode_rows(const WaveProfile& p) {
  std::vector<std::vector<double>> rows;
  for (int eta = -p.M; eta <= p.M; ++eta) {
    for (int j = 0; j < p.n; ++j) {
      rows.push_back({double(eta), double(j), p.mode(eta)(j).real(), p.mode(eta)(j).imag()});
    }
  }
  return rows;
}

std::vector<std::vector<double>> profile_rows(const WaveProfile& p, int samples = 256) {
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < samples; ++s) {
    const double xi = 2.0 * M_PI * s / samples;
    std::vector<double> row{xi};
    for (int j = 0; j < p.n; ++j) {
      double u = 0.0;
      for (int eta = -p.M; eta <= p.M; ++eta) {
        u += (p.mode(eta)(j) * std::exp(I * (eta * xi))).real();
      }
      row.push_back(u);
    }
    rows.push_back(row);
  }
  return rows;
}

int cmd_wave(const Options& o, Manifest& man, std::ostream& out) {
  man.param("eps", o.eps);
  man.param("kappa", o.kappa);
  man.param("modes", o.modes);
  const ModelSpec model = load(o);
  const CriticalData crit = find_turing_point(model);
  const CGLCoefficients cgl = cgl_coefficients(model, crit);
  const WaveProfile p = solve_wave(model, crit, cgl, o.eps, o.kappa, wave_options(o));
  Json j = to_json(p);
  j["alpha_predicted"] = cgl.alpha(o.kappa);
  j["second_order"] = to_json(second_order_modes(model, crit, cgl, p));
  save_json(o, man, "wave.json", j);
  save_csv(o, man, "wave_modes.csv", {"eta", "component", "re", "im"}, mode_rows(p));
  std::vector<std::string> header{"xi"};
  for (int c = 0; c < p.n; ++c) header.push_back("u" + std::to_string(c));
  save_csv(o, man, "wave_profile.csv", header, profile_rows(p));
  out << std::setprecision(10) << "Omega = " << p.lab_omega() << "  amplitude eps*alpha = "
      << o.eps * p.alpha_measured << " (predicted " << o.eps * cgl.alpha(o.kappa)
      << ")  residual = " << p.residual << "\n";
  return kOk;
}

int cmd_spectrum(const Options& o, Manifest& man, std::ostream& out) {
  man.param("eps", o.eps);
  man.param("kappa", o.kappa);
  man.param("modes", o.modes);
  man.param("sigma_max", o.sigma_max);
  man.param("convention", o.convention);
  const ModelSpec model = load(o);
  const CriticalData crit = find_turing_point(model);
  const CGLCoefficients cgl = cgl_coefficients(model, crit);
  const WaveProfile p = solve_wave(model, crit, cgl, o.eps, o.kappa, wave_options(o));
  const StabilityVerdict v = stability_verdict(model, crit, cgl, p, verdict_options(o));
  save_csv(o, man, "spectrum.csv", spectrum_csv_header(), spectrum_csv_rows(v.curves));
  save_json(o, man, "verdict.json", to_json(v));
  out << "verdict: " << to_string(v.verdict) << " (" << v.reason << ")\n";
  out << std::setprecision(6) << "theta = " << v.theta << "  c2 = " << v.fit.c2 << "\n";
  return kOk;
}

int cmd_validate(const Options& o, Manifest& man, std::ostream& out) {
  man.param("eps", o.eps_list);
  man.param("kappa", o.kappa_list);
  man.param("modes", o.modes);
  man.param("convention", o.convention);
  if (o.eps_list.size() < 2) throw ConfigError("--eps needs at least two values for a halving study");
  const ModelSpec model = load(o);
  const CriticalData crit = find_turing_point(model);
  const CGLCoefficients cgl = cgl_coefficients(model, crit);
  VerdictOptions vo = verdict_options(o);
  vo.dead_band = 0.0;
  Json studies = Json::array();
  bool all = true;
  bool disagree = false;
  for (double kappa : o.kappa_list) {
    std::vector<AgreementReport> reps;
    for (double eps : o.eps_list) {
      const WaveProfile p = solve_wave(model, crit, cgl, eps, kappa, wave_options(o));
      const StabilityVerdict v = stability_verdict(model, crit, cgl, p, vo);
      reps.push_back(verify_agreement(v.fit, cgl, crit, eps, kappa));
    }
    Json checks = Json::array();
    for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
      for (const auto& s : agreement_study(reps[i], reps[i + 1], 1.0)) {
        all = all && s.pass;
        checks.push_back(to_json(s));
        out << "kappa " << kappa << "  " << s.name << " eps " << s.eps_large << " -> "
            << s.eps_small << ": " << (s.pass ? "PASS" : "FAIL") << "\n";
      }
      for (const auto& s : agreement_study(reps[i], reps[i + 1], 3.0)) disagree = disagree || !s.pass;
    }
    Json r = Json::array();
    for (const auto& a : reps) r.push_back(to_json(a));
    studies.push_back({{"kappa", kappa}, {"reports", r}, {"checks", checks}});
  }
  save_json(o, man, "agreement.json", {{"studies", studies}, {"all_pass", all}});
  if (disagree) {
    throw DisagreementError("neither reduced convention matches within 3x the eps-scaling budget");
  }
  return all ? kOk : kAgreement;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config:
    case ErrorCategory::model:
      return kConfig;
    case ErrorCategory::solver:
      return kSolver;
    case ErrorCategory::spectrum:
      return kSpectrum;
    case ErrorCategory::agreement:
      return kAgreement;
  }
  return kSolver;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sideband stability of Turing patterns near onset"};
  app.require_subcommand(1);
  Options o;
  auto model_flags = [&o](CLI::App* sub) {
    sub->add_option("--model", o.model, "built-in model name");
    sub->add_option("--config", o.config, "JSON model file");
    sub->add_option("--out", o.out, "output directory");
  };
  auto wave_flags = [&o](CLI::App* sub) {
    sub->add_option("--eps", o.eps, "eps (mu = eps^2)");
    sub->add_option("--kappa", o.kappa, "wavenumber offset");
    sub->add_option("--modes", o.modes, "Fourier truncation M");
  };
  CLI::App* check = app.add_subcommand("check", "verify the Turing hypotheses");
  model_flags(check);
  CLI::App* cgl = app.add_subcommand("cgl", "Ginzburg-Landau coefficients and bands");
  model_flags(cgl);
  cgl->add_option("--coeffs", o.coeffs, "synthetic Re a,Im a,Re b,Im b,Re c,Im c")->delimiter(',');
  cgl->add_option("--draws", o.draws, "run the random-coefficient property suite");
  cgl->add_option("--seed", o.seed, "seed for --draws");
  CLI::App* wave = app.add_subcommand("wave", "solve for the periodic wave");
  model_flags(wave);
  wave_flags(wave);
  CLI::App* spectrum = app.add_subcommand("spectrum", "Bloch sweep and stability verdict");
  model_flags(spectrum);
  wave_flags(spectrum);
  spectrum->add_option("--sigma-max", o.sigma_max, "largest |sigma|");
  spectrum->add_option("--convention", o.convention, "modified or standard")
      ->check(CLI::IsMember({"modified", "standard"}));
  CLI::App* validate = app.add_subcommand("validate", "eps-halving agreement study");
  model_flags(validate);
  validate->add_option("--eps", o.eps_list, "eps values")->delimiter(',');
  validate->add_option("--kappa", o.kappa_list, "kappa values")->delimiter(',');
  validate->add_option("--modes", o.modes, "Fourier truncation M");
  validate->add_option("--sigma-max", o.sigma_max, "largest |sigma|");
  validate->add_option("--convention", o.convention, "modified or standard")
      ->check(CLI::IsMember({"modified", "standard"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  Manifest man(sub->get_name(), o);
  try {
    int code = kOk;
    if (sub == check) code = cmd_check(o, man, out);
    if (sub == cgl) code = cmd_cgl(o, man, out);
    if (sub == wave) code = cmd_wave(o, man, out);
    if (sub == spectrum) code = cmd_spectrum(o, man, out);
    if (sub == validate) code = cmd_validate(o, man, out);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    man.write(o.out, secs);
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

}  // namespace turinglab::cli
