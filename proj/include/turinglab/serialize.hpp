#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "turinglab/bloch.hpp"
#include "turinglab/cgl.hpp"
#include "turinglab/reduced.hpp"
#include "turinglab/turing.hpp"
#include "turinglab/verdict.hpp"
#include "turinglab/wave.hpp"

namespace turinglab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Rounds to `digits` significant digits so reports stay byte-stable under
/// last-bit noise.
double round_sig(double x, int digits = 10);

Json to_json(cplx z);
Json to_json(const CriticalData& c);
Json to_json(const HypothesisReport& r);
Json to_json(const CGLCoefficients& c);
Json to_json(const NormalForm& f);
Json to_json(const WaveProfile& p);
Json to_json(const SecondOrderModes& m);
Json to_json(const ExpansionFit& f);
Json to_json(const StabilityVerdict& v);
Json to_json(const AgreementReport& r);
Json to_json(const ScalingCheck& s);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Writes via a sibling temporary file and rename.
void write_atomic(const std::string& path, const std::string& contents);

/// "# manifest=<hash>", a header row, then rows; numbers printed with 17
/// significant digits.
std::string csv_text(const std::string& manifest_hash, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

std::vector<std::string> spectrum_csv_header();
std::vector<std::vector<double>> spectrum_csv_rows(const SpectralCurves& c);

}  // namespace turinglab
