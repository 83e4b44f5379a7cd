#include "core/calibrate.hpp"

#include <ctime>
#include <cstdio>
#include <sstream>

namespace fdom {

std::vector<CalibrationSample> calibrate(const QuaternionOrder& order, const CalibrationOptions& options,
                                         const ToleranceContext& ctx) {
  if (options.C_values.empty() || options.trials_per_C == 0)
    fail(ErrorCode::invalid_argument, "calibration needs C values and a positive trial count");
  const Real mu = area_target(order, options.area);
  const Real R = compute_R(mu, options.r_exponent);
  Rng rng(options.seed);
  OrderArithmetic arith(order, default_center(rng), ctx);
  NormOneCholesky chol(arith);

  // The same centres serve every C, so differences between C values are not
  // masked by centre-to-centre variation.
  std::vector<Complex> centers;
  centers.reserve(options.trials_per_C);
  for (std::size_t i = 0; i < options.trials_per_C; ++i) centers.push_back(sample_center(R, rng, ctx));

  auto run = [&](const Real& bound, std::size_t begin, std::size_t end, CalibrationSample& s) {
    // CPU time, so a busy machine does not distort the fit.
    const std::clock_t t0 = std::clock();
    for (std::size_t i = begin; i < end; ++i) {
      QForm q = build_qform(Complex(0), centers[i], arith);
      s.found += norm_one_trial(q, bound, chol, arith, false).size();
    }
    s.elapsed_s += static_cast<double>(std::clock() - t0) / CLOCKS_PER_SEC;
    s.trials += end - begin;
  };

  for (double C : options.C_values)
    if (!(C > 1)) fail(ErrorCode::invalid_argument, "calibration C values must exceed 1");
  {
    CalibrationSample cold;
    run(Real(options.C_values.front()), 0, std::min<std::size_t>(options.trials_per_C, 100), cold);
  }
  // Blocks of trials cycle through the C values, so slow spells are spread
  // over all of them instead of landing on one.
  std::vector<CalibrationSample> out(options.C_values.size());
  std::vector<Real> bounds;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].C = options.C_values[k];
    bounds.emplace_back(options.C_values[k]);
  }
  constexpr std::size_t kBlock = 100;
  for (std::size_t begin = 0; begin < options.trials_per_C; begin += kBlock) {
    const std::size_t end = std::min(begin + kBlock, options.trials_per_C);
    for (std::size_t k = 0; k < out.size(); ++k) run(bounds[k], begin, end, out[k]);
  }
  return out;
}

std::string calibration_csv(const std::vector<CalibrationSample>& samples) {
  std::ostringstream out;
  out << "C,elapsed_s,found\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.10g,%.9g,%zu\n", s.C, s.elapsed_s, s.found);
    out << buf;
  }
  return out.str();
}

AffineFit fit_success_rate(const std::vector<CalibrationSample>& samples) {
  if (samples.size() < 2) fail(ErrorCode::degenerate_input, "rate fit needs at least two samples");
  const double m = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    sx += s.C;
    sy += static_cast<double>(s.found) / static_cast<double>(s.trials);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    const double dx = s.C - mx, dy = static_cast<double>(s.found) / static_cast<double>(s.trials) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0)) fail(ErrorCode::degenerate_input, "rate samples do not span a range of C");
  AffineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? fit.slope * sxy / syy : 1.0;
  return fit;
}

TimingFit fit_calibration_timing(const std::vector<CalibrationSample>& samples, int n) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) pts.emplace_back(s.C, s.elapsed_s / static_cast<double>(s.trials));
  return fit_timing_model(pts, n);
}

}  // namespace fdom
