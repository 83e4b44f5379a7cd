#pragma once

// The probabilistic element generator: the positive-definite form Q_{z1,z2}
// on an order, norm-one enumeration (Fincke-Pohst and the quadratic-solving
// variant), random centres, and the heuristic constants.

#include "core/lattice.hpp"
#include "core/order_group.hpp"

#include <random>
#include <utility>
#include <vector>

namespace fdom {

using Rng = std::mt19937_64;

// 2iy * conj(lower-left entry of M).
Complex f_of(const PsuElement& M, const Complex& p);
// c p^2 + (d - a) p - b.
Complex f_of(const PslElement& g, const Complex& p);

struct QForm {
  RealMatrix gram;  // 4x4 over the order basis
  Complex z1, z2;
  PsuElement M1, M2;
};

// Q(g) = 2|C(M2^-1 g M1)|^2 + nrd(g), which is cosh d(g z1, z2) on norm-one g.
QForm build_qform(const Complex& z1, const Complex& z2, const OrderArithmetic& arith);

// The reduced-norm form as sum_k d_k * l_k(x)^2 with rational d_k and linear
// forms l_k, evaluated exactly after clearing denominators.
class NormOneCholesky {
 public:
  explicit NormOneCholesky(const OrderArithmetic& arith);

  Rational value(const OrderCoords& x) const;
  bool is_norm_one(const OrderCoords& x) const;
  // Number of positive and negative coefficients.
  std::pair<int, int> signature() const;
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<std::array<Rational, 4>>& forms() const { return forms_; }

 private:
  std::vector<Rational> weights_;
  std::vector<std::array<Rational, 4>> forms_;
  // Integer-cleared copy: K * nrd(x) = sum_k W_k * (L_k . x)^2.
  std::vector<BigInt> int_weights_;
  std::vector<std::array<BigInt, 4>> int_forms_;
  BigInt scale_;
};

struct EnumerationProfile {
  Real mu = 0;
  Real R = 0;
  Real C = 0;
  double c_balance = 0.5;
  std::size_t trials_per_iteration = 16;
  bool stop_after_first = true;
  bool use_ifp = true;
  std::uint64_t rng_seed = 0;
  double r_exponent = 2.1;
};

// Norm-one order elements other than +-1 with Q(x) <= C.
std::vector<DiscAutomorphism> norm_one_trial(const QForm& q, const Real& C, const NormOneCholesky& chol,
                                             const OrderArithmetic& arith, bool stop_after_first);

// Like norm_one_trial, but the last coordinate is found by solving nrd = 1
// exactly; solutions with Q > C are kept.
std::vector<DiscAutomorphism> ifp_norm_one(const QForm& q, const Real& C, const OrderArithmetic& arith,
                                           bool stop_after_first);

// Uniform with respect to hyperbolic area in the disc of radius R about 0.
Complex sample_center(const Real& R, Rng& rng, const ToleranceContext& ctx);

// 4 pi sinh(R/2)^2 = mu^exponent.
Real compute_R(const Real& mu, double exponent = 2.1);

// C_n * d^(1/n) * N^(1/(2n)).
Real compute_C(int n, const Real& field_disc, const Real& norm_disc);
double heuristic_constant(int n);

// 2 pi (C - n) / mu, an expected number of elements per trial.
Real predict_success(const Real& C, int n, const Real& mu);

// The root C > n of (2n-1) C^(2n) - 2n^2 C^(2n-1) = A/B.
double optimal_C_from_timing(int n, double A, double B);

struct TimingFit {
  double A = 0;
  double B = 0;
  double r_squared = 0;
};

// Least squares elapsed = A + B * C^(2n).
TimingFit fit_timing_model(const std::vector<std::pair<double, double>>& samples, int n);

}  // namespace fdom
