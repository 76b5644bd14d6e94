#include "turinglab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "turinglab/errors.hpp"

namespace turinglab {

double round_sig(double x, int digits) {
  if (x == 0.0) return 0.0;
  if (!std::isfinite(x)) return x;
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  // strtod, unlike stod, accepts subnormal results
  double y = std::strtod(s.str().c_str(), nullptr);
  return y == 0.0 ? 0.0 : y;  // no negative zero
}

Json to_json(cplx z) { return Json::array({round_sig(z.real()), round_sig(z.imag())}); }

namespace {

Json vec_json(const CVec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig(x);
}

}  // namespace

Json to_json(const CriticalData& c) {
  Json j;
  j["k_star"] = number(c.k_star);
  j["lambda_at_kstar"] = to_json(c.lambda);
  j["d_lambda_dmu"] = to_json(c.d_lambda_dmu);
  j["d_lambda_dk"] = to_json(c.d_lambda_dk);
  j["d2_lambda_dk2"] = to_json(c.d2_lambda_dk2);
  j["r"] = vec_json(c.r);
  j["ell"] = vec_json(c.ell);
  j["d_star"] = number(c.d_star);
  j["group_correction_slope"] = number(c.group_correction_slope());
  j["spectral_gap"] = number(c.spectral_gap);
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["model"] = r.model;
  j["grid"] = {{"k_min", number(r.k_min)},
               {"k_max", number(r.k_max)},
               {"k_points", r.k_points},
               {"mu_samples", r.mu_samples}};
  Json items = Json::array();
  for (const auto& h : r.items) {
    Json w = Json::array();
    for (const auto& x : h.witnesses) {
      w.push_back({{"k", number(x.k)}, {"mu", number(x.mu)}, {"lambda", to_json(x.lambda)}});
    }
    items.push_back({{"name", h.name},
                     {"status", h.pass ? "PASS" : "FAIL"},
                     {"method", h.method},
                     {"detail", h.detail},
                     {"witnesses", w}});
  }
  j["hypotheses"] = items;
  j["all_pass"] = r.all_pass();
  if (r.have_critical) j["critical"] = to_json(r.critical);
  return j;
}

Json to_json(const CGLCoefficients& c) {
  Json j;
  j["a"] = to_json(c.a);
  j["b"] = to_json(c.b);
  j["c"] = to_json(c.c);
  j["gamma_prefactor"] = c.gamma_prefactor;
  j["gamma_candidates"] = {
      {"prefactor_1/8", to_json(kGammaPrefactorLiteral * c.gamma_bracket)},
      {"prefactor_1/4", to_json(0.25 * c.gamma_bracket)},
      {"selected", "1/4 (Swift-Hohenberg amplitude calibration)"}};
  j["kappaE_sq"] = number(c.kappaE_sq);
  j["kappaS_sq"] = number(c.kappaS_sq);
  j["bfn"] = number(c.bfn);
  j["stable_band_nonempty"] = c.bfn > 0.0;
  j["alpha0_sq"] = number(c.alpha_sq(0.0));
  j["omega0"] = number(c.omega(0.0));
  return j;
}

Json to_json(const NormalForm& f) {
  return {{"alpha_tilde", number(f.alpha_t)},
          {"beta_tilde", number(f.beta_t)},
          {"kappaE_sq", number(f.kappaE_sq)},
          {"kappaS_sq", number(f.kappaS_sq)}};
}

Json to_json(const WaveProfile& p) {
  Json j;
  j["eps"] = p.eps;
  j["kappa"] = p.kappa;
  j["k"] = number(p.k);
  j["mu"] = number(p.mu);
  j["M"] = p.M;
  j["frame"] = p.frame == Frame::lab ? "lab" : "critical";
  j["Omega"] = number(p.Omega);
  j["Omega_lab"] = number(p.lab_omega());
  j["residual"] = p.residual;
  j["alpha_measured"] = number(p.alpha_measured);
  j["iterations"] = p.iterations;
  j["continued"] = p.continued;
  Json modes = Json::array();
  for (int eta = 0; eta <= p.M; ++eta) {
    modes.push_back({{"eta", eta}, {"U", vec_json(p.mode(eta))}});
  }
  j["modes_nonnegative"] = modes;
  return j;
}

Json to_json(const SecondOrderModes& m) {
  return {{"m0", vec_json(m.m0)},
          {"m2", vec_json(m.m2)},
          {"err0", number(m.err0)},
          {"err2", number(m.err2)},
          {"ill_conditioned", m.ill_conditioned}};
}

Json to_json(const ExpansionFit& f) {
  return {{"c0_1", to_json(f.c0_1)},     {"c0_2", to_json(f.c0_2)},
          {"c1", to_json(f.c1)},         {"c2", to_json(f.c2)},
          {"residual", number(f.residual)}, {"condition", number(f.condition)},
          {"points", f.points},          {"re_c1_flag", f.re_c1_flag}};
}

Json to_json(const StabilityVerdict& v) {
  auto region = [](const RegionCheck& r) {
    return Json{{"ok", r.ok}, {"max_re", number(r.max_re)}, {"detail", r.detail}};
  };
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["reason"] = v.reason;
  j["theta"] = number(v.theta);
  j["witness_sigma"] = number(v.witness_sigma);
  j["witness_re"] = number(v.witness_re);
  j["zero_tol"] = number(v.zero_tol);
  j["in_dead_band"] = v.in_dead_band;
  j["delta"] = number(v.curves.delta);
  j["convention"] = to_string(v.curves.convention);
  j["regions"] = {{"1", region(v.region1)}, {"2", region(v.region2)}, {"3", region(v.region3)}};
  j["fit"] = to_json(v.fit);
  j["tracking_handoffs"] = v.curves.handoffs.size();
  return j;
}

Json to_json(const AgreementReport& r) {
  Json conv = Json::array();
  for (const auto& c : r.conventions) {
    conv.push_back({{"convention", to_string(c.convention)},
                    {"C1", to_json(c.C1)},
                    {"C2", to_json(c.C2)},
                    {"c1_defect", number(c.c1_defect)},
                    {"c2_defect", number(c.c2_defect)}});
  }
  return {{"eps", r.eps},
          {"kappa", r.kappa},
          {"c0_1", to_json(r.c0_1)},
          {"lambda1_predicted", to_json(r.lambda1_predicted)},
          {"lambda1_defect", number(r.lambda1_defect)},
          {"c1", to_json(r.c1)},
          {"c2", to_json(r.c2)},
          {"conventions", conv},
          {"best_c1_convention", to_string(r.best)}};
}

Json to_json(const ScalingCheck& s) {
  return {{"name", s.name},
          {"eps_large", s.eps_large},
          {"eps_small", s.eps_small},
          {"defect_large", number(s.defect_large)},
          {"defect_small", number(s.defect_small)},
          {"K", number(s.K)},
          {"budget", s.budget},
          {"pass", s.pass}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::string csv_text(const std::string& manifest_hash, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ostringstream s;
  s << "# manifest=" << manifest_hash << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
  s << "\n";
  s << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i] + 0.0;  // no -0
    s << "\n";
  }
  return s.str();
}

std::vector<std::string> spectrum_csv_header() {
  return {"sigma", "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2", "max_re_remainder"};
}

std::vector<std::vector<double>> spectrum_csv_rows(const SpectralCurves& c) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < c.sigma.size(); ++i) {
    rows.push_back({c.sigma[i], c.lambda1[i].real(), c.lambda1[i].imag(), c.lambda2[i].real(),
                    c.lambda2[i].imag(), c.remainder_max_re[i]});
  }
  return rows;
}

}  // namespace turinglab
