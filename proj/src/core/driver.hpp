#pragma once

// The outer loop: enumerate norm-one elements in batches, rebuild the
// normalized basis, and stop once the side pairing closes up with the
// expected area.

#include "core/enumerate.hpp"
#include "core/reduce.hpp"

#include <optional>
#include <vector>

namespace fdom {

struct DriverOptions {
  std::uint64_t seed = 0;
  std::optional<Real> C;           // search bound override
  std::optional<double> c_balance;  // batch-size constant override
  std::optional<double> r_exponent;
  std::optional<Real> area;  // area override for non-maximal orders
  std::optional<Complex> center;  // explicit upper-half-plane centre
  std::size_t max_iterations = 1000;
  bool use_ifp = true;
  bool stop_after_first = true;
  double targeted_fraction = 0.5;
  // After convergence, find the shortest prefix of the found elements (in
  // discovery order) whose normalized basis already closes up.
  bool measure_needed = false;
};

struct DomainStats {
  std::size_t iterations = 0;
  std::size_t trials = 0;
  std::size_t elements_found = 0;
  std::size_t elements_needed = 0;  // set only with measure_needed
  std::size_t basis_outer_iterations = 0;
  std::size_t center_perturbations = 0;
  double elapsed_s = 0;  // wall clock; never exported
};

struct DomainResult {
  NormalizedBoundary boundary;
  SidePairing pairing;
  std::vector<DiscAutomorphism> generators;
  Real area;
  Real mu_target;
  bool converged = false;
  bool exact = false;  // |area - mu| / mu < 1e-9
  Complex center;
  EnumerationProfile profile;
  std::vector<Real> area_history;
  DomainStats stats;
};

// (pi/3) prod_{p | D} (p - 1); D = 1 is rejected, and a non-maximal order
// needs an explicit override.
Real area_target(const QuaternionOrder& order, const std::optional<Real>& override_area = std::nullopt);

// Trials per batch: max(16, ceil(c mu^2 / (8 pi (C - 1)))).
std::size_t batch_size(const Real& mu, const Real& C, double c_balance);

// The default centre 1/2 + (sqrt 3/2) i shifted by (k1 + k2 i) / 10^6 with
// k1, k2 drawn from the seed in [-1000, 1000].
Complex default_center(Rng& rng);

// A share of the centres just inside the unit circle within the infinite
// arcs of U; the rest uniform in the hyperbolic disc of radius R.
std::vector<Complex> choose_centers(const NormalizedBoundary& U, std::size_t k, const Real& R, Rng& rng,
                                    const ToleranceContext& ctx, double targeted_fraction = 0.5);

DomainResult fundamental_domain(const QuaternionOrder& order, const DriverOptions& options,
                                const ToleranceContext& ctx);

// Signed 1-based side indices: +s stands for the element of side s-1 and -s
// for its inverse; the product of the letters, left to right, is gamma.
std::vector<long> word(const DomainResult& result, const DiscAutomorphism& gamma, const GroupArithmetic& arith,
                       const ToleranceContext& ctx);

DiscAutomorphism evaluate_word(const DomainResult& result, const std::vector<long>& letters,
                               const GroupArithmetic& arith);

}  // namespace fdom
