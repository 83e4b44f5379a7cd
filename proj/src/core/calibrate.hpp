#pragma once

// Timing and success-rate measurements for the enumeration heuristics.

#include "core/driver.hpp"

#include <string>
#include <vector>

namespace fdom {

struct CalibrationSample {
  double C = 0;
  double elapsed_s = 0;  // CPU seconds, total over the trials at this C
  std::size_t found = 0;  // total elements found
  std::size_t trials = 0;
};

struct CalibrationOptions {
  std::vector<double> C_values;
  std::size_t trials_per_C = 2000;
  std::uint64_t seed = 0;
  std::optional<Real> area;  // needed for non-maximal orders
  double r_exponent = 2.1;
};

// For each C, runs full (not stop-at-first) Fincke-Pohst trials at random
// centres (one shared set for all C) and records the total CPU time and
// number of norm-one elements. Trials run in blocks that cycle through the C
// values. One extra cold block is discarded.
std::vector<CalibrationSample> calibrate(const QuaternionOrder& order, const CalibrationOptions& options,
                                         const ToleranceContext& ctx);

// Header "C,elapsed_s,found".
std::string calibration_csv(const std::vector<CalibrationSample>& samples);

struct AffineFit {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
};

// Least squares found/trials = intercept + slope * C.
AffineFit fit_success_rate(const std::vector<CalibrationSample>& samples);

// fit_timing_model on per-trial mean times.
TimingFit fit_calibration_timing(const std::vector<CalibrationSample>& samples, int n = 1);

}  // namespace fdom
