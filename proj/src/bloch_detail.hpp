#pragma once

// Shared between the parallel and the serial sweep: both produce per-sigma
// spectra and hand them to the same sequential tracking pass.

#include <vector>

#include "turinglab/bloch.hpp"

namespace turinglab::detail {

struct Spectrum {
  CVec values;
  CMat vectors;
};

SpectralCurves track(const std::vector<double>& grid, const std::vector<Spectrum>& spectra,
                     const CVec& translation, double norm_b0, const SweepOptions& o);

}  // namespace turinglab::detail
