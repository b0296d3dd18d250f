#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "suppvar/dg_module.hpp"
#include "suppvar/homology.hpp"
#include "suppvar/linalg.hpp"
#include "suppvar/support.hpp"

namespace suppvar {

/// Input description of an artinian complete intersection R = k[z_1..z_r]/(f_1..f_r).
/// R is always the monomial quotient k[z]/(z_1^{e_1}, ..., z_r^{e_r}); an optional table of
/// structure constants c_{hi,j} (0-based, h <= i) chooses another presentation
/// f_j = Σ_{h<=i} c_{hi,j} z_h z_i of the same ideal.
struct CISpec {
  std::uint32_t p = 2;
  std::vector<unsigned> exponents;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::string> constants;
};

class CIPresentation {
 public:
  std::uint32_t characteristic() const { return field_.characteristic(); }
  const Field& field() const { return field_; }
  std::size_t nvars() const { return exponents_.size(); }
  const std::vector<unsigned>& exponents() const { return exponents_; }
  /// k[z_1..z_r] with prefix "z"; structure constants and relations live here.
  const RingPtr& zring() const { return zring_; }
  std::size_t dim() const { return basis_.size(); }
  /// Monomials z^a with 0 <= a_i < e_i in increasing lex order; basis()[0] = 1.
  const std::vector<Exponent>& basis() const { return basis_; }
  std::optional<std::size_t> index_of(const Exponent& a) const;

  /// c_{hi,j} for h <= i (already reduced modulo the monomial ideal).
  const Polynomial& constant(std::size_t h, std::size_t i, std::size_t j) const;
  Scalar residue(std::size_t h, std::size_t i, std::size_t j) const { return constant(h, i, j).constant_term(); }
  /// f_j = Σ_{h<=i} c_{hi,j} z_h z_i as a polynomial (not reduced).
  const Polynomial& relation(std::size_t j) const { return relations_[j]; }
  /// Ā_{jk} = coefficient of z_k^{e_k} in f_j; invertible.
  const ScalarMatrix& relation_matrix() const { return abar_; }
  bool default_constants() const { return default_constants_; }

  /// Coordinates of the image of a z-polynomial in R.
  Vector element(const Polynomial& f) const;
  Polynomial lift(std::span<const Scalar> element) const;
  /// Matrix of multiplication by b on R.
  ScalarMatrix multiplication(std::span<const Scalar> b) const;
  /// Multiplication by z_i on R.
  const ScalarMatrix& z_action(std::size_t i) const { return z_action_[i]; }

  /// The basis index of z^a z^b, or nullopt when the product is zero in R.
  std::optional<std::size_t> product_index(std::size_t a, std::size_t b) const;

  std::string describe() const;

 private:
  friend CIPresentation build_ci(const CISpec& spec);
  CIPresentation(std::uint32_t p, std::vector<unsigned> exponents);

  Field field_;
  std::vector<unsigned> exponents_;
  RingPtr zring_;
  std::vector<Exponent> basis_;
  std::map<Exponent, std::size_t> index_;
  std::vector<ScalarMatrix> z_action_;
  std::vector<std::vector<std::vector<Polynomial>>> constants_;  // [h][i][j], h <= i
  std::vector<Polynomial> relations_;
  ScalarMatrix abar_;
  bool default_constants_ = true;
};

using CIPtr = std::shared_ptr<const CIPresentation>;

/// Validates and builds R. Throws InputError for exponents below 2, bad tables, relations
/// outside the monomial ideal, a singular Ā, or a failed associativity/commutativity check.
CIPresentation build_ci(const CISpec& spec);
CIPtr make_ci(const CISpec& spec);

/// A finite-dimensional graded k-space with operators, stored on the whole space.
/// Basis vectors are sorted by degree.
struct GradedOperators {
  std::vector<int> degrees;
  int lo() const { return degrees.empty() ? 0 : degrees.front(); }
  int hi() const { return degrees.empty() ? -1 : degrees.back(); }
  std::size_t dim() const { return degrees.size(); }
  std::size_t dim_at(int n) const;
  /// Basis positions of degree n.
  std::vector<std::size_t> positions(int n) const;
};

/// Bounded complex of finitely generated R-modules, as a graded k-space with
/// differential and z-actions.
struct ComplexOverR {
  CIPtr ring;
  GradedOperators space;
  ScalarMatrix d;
  std::vector<ScalarMatrix> z;

  std::size_t dim() const { return space.dim(); }
};

/// Assembles a complex from per-degree data: dims[k] is the dimension in degree lo + k,
/// differentials[k] maps degree lo + k to lo + k + 1 (dims[k+1] x dims[k]), actions[k][i] is z_i
/// on degree lo + k.
ComplexOverR complex_from_blocks(const CIPtr& ring, int lo, const std::vector<std::size_t>& dims,
                                 const std::vector<ScalarMatrix>& differentials,
                                 const std::vector<std::vector<ScalarMatrix>>& actions);

/// First failed axiom (d² = 0, degrees, z commuting, z_i^{e_i} = 0, z commuting with d).
std::optional<std::string> validate(const ComplexOverR& m);
void require_valid(const ComplexOverR& m);

HomologyTable complex_homology(const Field& field, const GradedOperators& space, const ScalarMatrix& d, int lo,
                               int hi);

// Sample modules, all concentrated in degree 0 unless stated.
ComplexOverR trivial_module(const CIPtr& ring);
ComplexOverR free_module(const CIPtr& ring);
/// k[z_i]/(z_i^{e_i}) with the other variables acting by zero.
ComplexOverR inflated_line(const CIPtr& ring, std::size_t i);
/// The maximal ideal m = Ω(k).
ComplexOverR syzygy_of_k(const CIPtr& ring);
/// The submodule of R^n generated by the given elements (n * dim R coordinates each).
ComplexOverR submodule_of_free(const CIPtr& ring, std::size_t n, const std::vector<Vector>& generators);
/// R^n modulo the submodule generated by the given elements.
ComplexOverR quotient_of_free(const CIPtr& ring, std::size_t n, const std::vector<Vector>& generators);
/// R --a--> R in degrees -1, 0.
ComplexOverR multiplication_complex(const CIPtr& ring, std::span<const Scalar> a);

/// t(M) = K ⊗_R M with basis y_S ⊗ v, degree deg v - |S|, plus the y-actions.
struct KoszulModule {
  ComplexOverR complex;
  std::vector<ScalarMatrix> y;
  /// For each basis vector: subset bitmask and index of v in M.
  std::vector<std::pair<unsigned, std::size_t>> labels;
};

KoszulModule t_functor(const ComplexOverR& m);
/// K = t(R).
KoszulModule koszul(const CIPtr& ring);
/// Matrix of c(z_1..z_r) acting through commuting n x n matrices z.
ScalarMatrix polynomial_action(const Field& f, const Polynomial& c, const std::vector<ScalarMatrix>& z, std::size_t n);
/// Left multiplication by w_j = Σ_{h<=i} c_{hi,j} z_h y_i on a K-module.
std::vector<ScalarMatrix> w_actions(const KoszulModule& t, const CIPresentation& ring);

/// d y_i + y_i d = z_i, y's anticommute and square to zero, z's commute with y's.
std::optional<std::string> check_k_module(const KoszulModule& t);

/// The cycles w_j = Σ_{h<=i} c_{hi,j} z_h y_i in K^{-1} (coordinates in the basis of K).
/// Throws ConsistencyError if some w_j fails to be a cycle.
std::vector<Vector> lambda_to_K(const KoszulModule& k);

struct QuasiIsoReport {
  int lo = 0;
  int hi = 0;
  std::vector<std::size_t> koszul_dims;  // dim H^n(K), n in [lo, hi]
  std::vector<std::size_t> exterior_dims;  // binom(r, -n)
  bool w_classes_span = false;
  bool ok = false;
};

QuasiIsoReport check_quasi_iso(const CIPtr& ring, int lo, int hi);

/// Finite DG module over the exterior algebra Λ = k⟨ξ_1..ξ_r⟩. The ξ_j act with degree -1
/// on the module so that, paired with deg x_j = 2 in bgg_h, the twisted differential is homogeneous.
struct LambdaModule {
  Field field{2};
  GradedOperators space;
  ScalarMatrix d;
  std::vector<ScalarMatrix> xi;
};

std::optional<std::string> validate(const LambdaModule& n);

/// Restriction of t(M) along Λ → K: ξ_j acts by left multiplication with w_j.
LambdaModule restrict_i(const KoszulModule& t, const CIPresentation& ring);

/// Which reading of the exterior relation holds on N: ξ_hξ_i + ξ_iξ_h = 0 (anticommutator),
/// and whether the literal 2ξ_hξ_i = 0 also holds. First offending pair per reading.
struct RelationReport {
  bool anticommutator = true;
  bool literal = true;
  std::optional<std::pair<std::size_t, std::size_t>> anticommutator_failure;
  std::optional<std::pair<std::size_t, std::size_t>> literal_failure;
};
RelationReport exterior_relations(const LambdaModule& n);

/// h(N): free S-module on the basis of N (S = k[x_1..x_r], deg x_j = 2) with differential
/// d_N + Σ_j x_j ξ_j. Throws InputError naming the offending pair when d² != 0.
FreeDGModule bgg_h(const LambdaModule& n, const RingPtr& s);
RingPtr theta_ring(const CIPresentation& ring, const std::string& prefix = "x");

/// h(i t M) in one step.
FreeDGModule pipeline_module(const ComplexOverR& m);
/// support_points of h(i t M), coordinates read as θ-coordinates.
VarietySet v_r_pipeline(const ComplexOverR& m, const SupportOptions& options = {});

}  // namespace suppvar
