#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "suppvar/dg_module.hpp"
#include "suppvar/homology.hpp"

namespace suppvar {

using Point = std::vector<Scalar>;

/// Homology of the fiber k(α) ⊗ M, with the Z-grading folded modulo the period g.
struct FiberHomology {
  int period = 1;
  std::vector<std::size_t> dims;  // dims[c] for residue class c in [0, period)

  std::size_t total() const;
  bool operator==(const FiberHomology&) const = default;
};

/// Fiber of M at a nonzero point α with coordinates in `field` (an extension of the ring's
/// prime field). Throws InputError for the zero point; use origin_fiber there.
FiberHomology fiber_homology(const FreeDGModule& m, const Field& field, std::span<const Scalar> point);

/// H(k ⊗_S M) at the irrelevant ideal: homology of the constant part of the differential,
/// reported over [min generator degree, max generator degree].
HomologyTable origin_fiber(const FreeDGModule& m);

struct SupportOptions {
  std::uint32_t extension = 1;
  /// Window for the contains_origin test; defaults to [min gen degree - 1, max gen degree + 1].
  std::optional<std::pair<int, int>> window;
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
};

/// F_{p^e}-rational points of the punctured support cone, in lexicographic order, plus the
/// origin flag.
struct VarietySet {
  Field field{2};
  std::size_t nvars = 0;
  std::vector<Point> points;
  std::vector<FiberHomology> fibers;  // parallel to points
  bool contains_origin = false;
  HomologyTable origin_homology;  // H(M) over the window used

  bool contains(const Point& p) const;
};

std::uint64_t point_count(const Field& field, std::size_t nvars);
/// The point with lexicographic index `index` (first coordinate most significant).
Point point_at(const Field& field, std::size_t nvars, std::uint64_t index);

/// Throws BudgetError when q^r exceeds options.budget.
VarietySet support_points(const FreeDGModule& m, const SupportOptions& options = {});

/// Closure under the weighted scaling α_i ↦ λ^{deg x_i / g} α_i for all λ ≠ 0.
bool is_conical(const VarietySet& v, const GradedRing& ring);

struct ContainmentVerdict {
  bool contained = true;
  bool witness_is_origin = false;
  std::optional<Point> witness;
  VarietySet left;
  VarietySet right;
};

/// Supp M ⊆ Supp N at level e. The witness is the first point of Supp M outside Supp N,
/// the origin counting as smallest.
ContainmentVerdict support_contains(const FreeDGModule& m, const FreeDGModule& n, const SupportOptions& options = {});

/// S//I as iterated cones K_i = cone(s_i : Σ^{-|s_i|} K_{i-1} → K_{i-1}), in input order.
/// Zero generators are skipped; inhomogeneous ones are rejected.
FreeDGModule realize(const RingPtr& ring, const std::vector<Polynomial>& generators);

}  // namespace suppvar
