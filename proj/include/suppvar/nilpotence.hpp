#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "suppvar/dg_module.hpp"
#include "suppvar/support.hpp"

namespace suppvar {

struct FiberwiseResult {
  bool vanishes = true;
  bool fails_at_origin = false;
  std::optional<Point> failing_point;
  std::size_t points_checked = 0;
  bool origin_checked = false;
};

/// For f : S → X, checks that k(α) ⊗ f induces zero on fiber homology at every point of V
/// (and at the origin when V contains it): f(1)(α) must be a boundary of X(α).
FiberwiseResult fiberwise_vanishing(const DGMorphism& f, const VarietySet& v);

struct NilpotenceOptions {
  std::size_t n_max = 5;
  std::size_t rank_limit = 4096;
  /// Search even when the fiberwise hypothesis fails.
  bool override_hypothesis = false;
  SupportOptions support;
};

struct NilpotenceStep {
  std::size_t n = 0;
  std::size_t rank = 0;  // rank of G ⊗ X^{⊗n}
  bool vanishes = false;
};

struct NilpotenceReport {
  enum class Status { Found, Exhausted, Aborted };
  Status status = Status::Exhausted;
  std::optional<std::size_t> n_found;
  FiberwiseResult hypothesis;
  std::vector<NilpotenceStep> steps;
  /// The cycle Σ_j (e_j ⊗ f(1)^{⊗n}) ⊗ e_j^* in Hom(G, G ⊗ X^{⊗n}) ≅ (G ⊗ X^{⊗n}) ⊗ G^∨, its
  /// ambient module, and a witness w with d(w) = cycle.
  std::optional<FreeDGModule> hom;
  PolyVector cycle;
  PolyVector witness;
  bool witness_verified = false;
  /// Vanishing re-checked at n_found + 1 (nullopt when that step exceeds the rank limit).
  std::optional<bool> monotone;
};

/// The morphism G ⊗ f^{⊗n} : G → G ⊗ X^{⊗n} viewed through its adjoint S → Hom(G, G ⊗ X^{⊗n}).
DGMorphism twisted_power_adjoint(const DGMorphism& f, const FreeDGModule& g, std::size_t n);

/// Least n <= n_max with G ⊗ f^{⊗n} = 0 in D(S), certified by a boundary witness.
/// Throws InputError when f does not start at S or when the hypothesis fails without override.
NilpotenceReport nilpotence_search(const DGMorphism& f, const FreeDGModule& g, const NilpotenceOptions& options = {});

}  // namespace suppvar
