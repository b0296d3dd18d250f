#pragma once

#include <cstddef>
#include <vector>

#include "suppvar/ci.hpp"

namespace suppvar {

/// Minimal free resolution F_n = R^{b_n} of k over R, truncated at a given length.
/// images[n][g] is d_n(e_g) in F_{n-1} (b_{n-1} * dim R coordinates, generator-major);
/// images[0] is empty.
struct MinimalResolution {
  CIPtr ring;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<Vector>> images;

  std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }
};

/// Resolution through F_length. Minimality: generators of each kernel are chosen as a
/// complement of m * kernel.
MinimalResolution resolve_residue_field(const CIPtr& ring, std::size_t length);

/// k-linear matrix of an R-linear map F → G between free modules given by generator images.
ScalarMatrix free_map_matrix(const CIPresentation& ring, std::size_t target_rank, const std::vector<Vector>& images);

/// Eisenbud operators t_k : F_n → F_{n-2} (n >= 2), from d̃_{n-1} d̃_n = Σ_k f_k t̃_k over
/// k[z]. ops[k][n][g] is t_k(e_g) in F_{n-2}; ops[k][0] and ops[k][1] are empty. Operators
/// are expressed in the coordinates of the presentation's relations f_j.
using ChainOperators = std::vector<std::vector<std::vector<Vector>>>;
ChainOperators eisenbud_operators(const MinimalResolution& f);
/// Checks d t_k = t_k d on every level; returns the first failing (k, n).
std::optional<std::pair<std::size_t, std::size_t>> check_chain_maps(const MinimalResolution& f,
                                                                    const ChainOperators& ops);

struct ExtTable {
  int lo = 0;
  int hi = -1;
  std::vector<std::size_t> dims;
  std::size_t at(int n) const { return n < lo || n > hi ? 0 : dims[static_cast<std::size_t>(n - lo)]; }
};

struct ExtOptions {
  int n_max = 12;
  int bound = 12;
};

/// dim Ext^n_R(k, M) for n from min(0, lowest degree of M) to n_max.
/// Throws InputError when n_max exceeds options.bound.
ExtTable ext_oracle(const ComplexOverR& m, const ExtOptions& options = {});

struct AdjunctionReport {
  int lo = 0;
  int hi = 0;
  std::vector<std::size_t> ext;       // dim Ext^n_R(k, M)
  std::vector<std::size_t> homology;  // dim H^{n-r}(h(i t M))
  bool ok = false;
};

/// Compares Ext^n_R(k, M) with H^{n-r}(h(i t M)) for n in the ext_oracle range.
AdjunctionReport adjunction_check(const ComplexOverR& m, const ExtOptions& options = {});

struct AnnihilatorReport {
  int n_max = 0;
  int d_max = 0;
  RingPtr theta;  // k[th_1..th_r], degree 2
  /// Basis of the forms of degree d (in θ) killing Ext^{≤ n_max}, for d = 0..d_max.
  std::vector<std::vector<Polynomial>> by_degree;
  /// Whether the run at n_max - 2 produced the same spaces.
  bool stable = false;

  std::vector<Polynomial> all() const;
};

/// Truncated annihilator of Ext_R(k, M) in k[θ]: forms P of degree d <= d_max with
/// P · Ext^n = 0 whenever n + 2d <= n_max.
AnnihilatorReport ann_theta(const ComplexOverR& m, int d_max, const ExtOptions& options = {});

/// True when every polynomial vanishes at the point.
bool vanishes_at(const std::vector<Polynomial>& polys, const Field& field, std::span<const Scalar> point);

}  // namespace suppvar
