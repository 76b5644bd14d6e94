#pragma once

#include <iosfwd>

namespace turinglab::cli {

enum ExitCode {
  kOk = 0,
  kHypothesisFail = 1,
  kConfig = 2,
  kSolver = 3,
  kSpectrum = 4,
  kAgreement = 5,
};

/// Parses and runs one subcommand (check, cgl, wave, spectrum, validate).
/// Everything the binary does goes through here so tests can call it
/// in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace turinglab::cli
