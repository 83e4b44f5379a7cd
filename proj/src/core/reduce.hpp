#pragma once

#include "core/boundary.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fdom {

struct ReductionResult {
  DiscAutomorphism delta;    // product of the applied side elements
  DiscAutomorphism reduced;  // delta * gamma
  // Side indices in the order applied: delta = g[word.back()] ... g[word.front()].
  std::vector<std::size_t> word;
  Complex final_point;
};

inline constexpr std::size_t kReduceStepCap = 1000000;
inline constexpr std::size_t kBasisIterationCap = 1000;

// Drives gamma(z) towards 0 across the sides of the boundary, one strict
// decrease of |z| per step.
ReductionResult reduce(const NormalizedBoundary& boundary, const DiscAutomorphism& gamma, const Complex& z,
                       const GroupArithmetic& arith, const ToleranceContext& ctx);

struct BasisResult {
  NormalizedBoundary boundary;
  SidePairing pairing;
  // The working set at exit, closed under inverses.
  std::vector<DiscAutomorphism> elements;
  std::size_t outer_iterations = 0;
};

// Fixed point of "boundary, reduce everything against it, adjoin the
// nontrivial reductions", followed by side pairing and targeted reductions at
// unpaired vertices. Returns once the pairing is complete, or when a round
// produces nothing new (the pairing is then reported incomplete).
BasisResult normalized_basis(const std::vector<DiscAutomorphism>& elements, const GroupArithmetic& arith,
                             const ToleranceContext& ctx);

}  // namespace fdom
