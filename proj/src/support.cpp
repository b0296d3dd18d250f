#include "suppvar/support.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "suppvar/errors.hpp"
#include "suppvar/linalg.hpp"

namespace suppvar {

std::size_t FiberHomology::total() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

namespace {

int positive_mod(int a, int g) {
  int r = a % g;
  return r < 0 ? r + g : r;
}

// Folded complex: generators grouped by degree class, each block d_c : C_c → C_{c+1}.
FiberHomology folded_homology(const FreeDGModule& m, const Field& field, int period,
                              const std::vector<std::vector<Scalar>>& values) {
  const std::size_t n = m.rank();
  std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(period));
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& cls = classes[static_cast<std::size_t>(positive_mod(m.generators()[i].degree, period))];
    position[i] = cls.size();
    cls.push_back(i);
  }
  std::vector<std::size_t> ranks(static_cast<std::size_t>(period));
  for (int c = 0; c < period; ++c) {
    const auto& src = classes[static_cast<std::size_t>(c)];
    const auto& tgt = classes[static_cast<std::size_t>(positive_mod(c + 1, period))];
    ScalarMatrix block(tgt.size(), src.size());
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < tgt.size(); ++b) block(b, a) = values[tgt[b]][src[a]];
    ranks[static_cast<std::size_t>(c)] = rank(field, block);
  }
  FiberHomology out;
  out.period = period;
  for (int c = 0; c < period; ++c) {
    const std::size_t prev = ranks[static_cast<std::size_t>(positive_mod(c - 1, period))];
    out.dims.push_back(classes[static_cast<std::size_t>(c)].size() - ranks[static_cast<std::size_t>(c)] - prev);
  }
  return out;
}

int fiber_period(const GradedRing& ring) {
  const int g = ring.degree_gcd();
  return g == 0 ? 1 : g;
}

}  // namespace

FiberHomology fiber_homology(const FreeDGModule& m, const Field& field, std::span<const Scalar> point) {
  if (std::all_of(point.begin(), point.end(), [](Scalar s) { return s == 0; })) {
    throw InputError("fiber at the origin: use the homology of M (origin_fiber / homology_dims) instead");
  }
  const std::size_t n = m.rank();
  std::vector<std::vector<Scalar>> values(n, std::vector<Scalar>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [i, poly] : m.differential().column(j)) values[i][j] = poly.evaluate(field, point);
  return folded_homology(m, field, fiber_period(*m.ring()), values);
}

HomologyTable origin_fiber(const FreeDGModule& m) {
  HomologyTable table;
  if (m.rank() == 0) return table;
  const Field& f = m.ring()->field();
  table.lo = m.min_degree();
  table.hi = m.max_degree();
  auto block = [&](int n) {
    std::vector<std::size_t> src, tgt;
    for (std::size_t i = 0; i < m.rank(); ++i) {
      if (m.generators()[i].degree == n) src.push_back(i);
      if (m.generators()[i].degree == n + 1) tgt.push_back(i);
    }
    ScalarMatrix b(tgt.size(), src.size());
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t c = 0; c < tgt.size(); ++c) b(c, a) = m.differential().at(tgt[c], src[a]).constant_term();
    return rank(f, b);
  };
  for (int n = table.lo; n <= table.hi; ++n) {
    std::size_t dim = 0;
    for (const auto& g : m.generators()) dim += g.degree == n ? 1 : 0;
    table.dims.push_back(dim - block(n) - block(n - 1));
  }
  return table;
}

bool VarietySet::contains(const Point& p) const { return std::binary_search(points.begin(), points.end(), p); }

std::uint64_t point_count(const Field& field, std::size_t nvars) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (count > (std::uint64_t{1} << 62) / field.size()) return UINT64_MAX;
    count *= field.size();
  }
  return count;
}

Point point_at(const Field& field, std::size_t nvars, std::uint64_t index) {
  Point p(nvars, 0);
  for (std::size_t i = nvars; i-- > 0;) {
    p[i] = static_cast<Scalar>(index % field.size());
    index /= field.size();
  }
  return p;
}

VarietySet support_points(const FreeDGModule& m, const SupportOptions& options) {
  require_valid(m);
  Field field(m.ring()->characteristic(), options.extension);
  const std::size_t r = m.ring()->nvars();
  const std::uint64_t total = point_count(field, r);
  if (total > options.budget) {
    throw BudgetError("point enumeration over " + field.name() + "^" + std::to_string(r) + " needs " +
                      (total == UINT64_MAX ? std::string("too many") : std::to_string(total)) +
                      " points, budget is " + std::to_string(options.budget));
  }
  VarietySet out{field, r, {}, {}, false, {}};

  int lo = m.rank() ? m.min_degree() - 1 : 0;
  int hi = m.rank() ? m.max_degree() + 1 : -1;
  if (options.window) std::tie(lo, hi) = *options.window;
  out.origin_homology = homology_dims(m, lo, hi);
  out.contains_origin = !out.origin_homology.is_zero();

  // Index 0 is the origin; the rest is split into contiguous chunks, one per worker.
  const std::uint64_t first = 1;
  const unsigned workers = std::max(1u, options.workers);
  const std::uint64_t span = total > first ? total - first : 0;
  std::vector<std::vector<std::pair<Point, FiberHomology>>> found(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t begin = first + span * w / workers;
    const std::uint64_t end = first + span * (w + 1) / workers;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      Point p = point_at(field, r, idx);
      FiberHomology h = fiber_homology(m, field, p);
      if (h.total() != 0) found[w].emplace_back(std::move(p), std::move(h));
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          scan(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (auto& chunk : found)
    for (auto& [p, h] : chunk) {
      out.points.push_back(std::move(p));
      out.fibers.push_back(std::move(h));
    }
  return out;
}

bool is_conical(const VarietySet& v, const GradedRing& ring) {
  const Field& f = v.field;
  const int g = std::max(1, ring.degree_gcd());
  for (const auto& p : v.points)
    for (Scalar lambda = 1; lambda < f.size(); ++lambda) {
      Point q = p;
      for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = f.mul(f.pow(lambda, static_cast<std::uint64_t>(ring.degrees()[i] / g)), q[i]);
      if (!v.contains(q)) return false;
    }
  return true;
}

ContainmentVerdict support_contains(const FreeDGModule& m, const FreeDGModule& n, const SupportOptions& options) {
  if (!(*m.ring() == *n.ring())) throw InputError("containment test needs both modules over the same ring");
  ContainmentVerdict v;
  v.left = support_points(m, options);
  v.right = support_points(n, options);
  if (v.left.contains_origin && !v.right.contains_origin) {
    v.contained = false;
    v.witness_is_origin = true;
    return v;
  }
  for (const auto& p : v.left.points)
    if (!v.right.contains(p)) {
      v.contained = false;
      v.witness = p;
      return v;
    }
  return v;
}

FreeDGModule realize(const RingPtr& ring, const std::vector<Polynomial>& generators) {
  FreeDGModule k = FreeDGModule::free(ring);
  for (const auto& s : generators) {
    if (s.is_zero()) continue;
    if (!s.is_homogeneous()) throw InputError("ideal generator " + s.to_string() + " is not homogeneous");
    k = cone(multiplication_morphism(k, s));
  }
  return k;
}

}  // namespace suppvar
