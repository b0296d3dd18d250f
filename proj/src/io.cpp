#include "suppvar/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

#include "suppvar/errors.hpp"

namespace suppvar {

namespace {

std::string entry_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("matrix entries must be polynomial strings or integers");
}

const Json& field_of(const Json& spec, const char* key, const std::string& owner) {
  if (!spec.contains(key)) throw InputError("object '" + owner + "' is missing \"" + key + "\"");
  return spec.at(key);
}

std::string name_of(const Json& spec, const char* key, const std::string& owner) {
  const Json& v = field_of(spec, key, owner);
  if (!v.is_string()) throw InputError("object '" + owner + "': \"" + key + "\" must be an object name");
  return v.get<std::string>();
}

ScalarMatrix int_matrix(const Field& f, const Json& rows, std::size_t nrows, std::size_t ncols, const std::string& what) {
  ScalarMatrix m(nrows, ncols);
  if (!rows.is_array() || rows.size() != nrows) throw InputError(what + ": expected " + std::to_string(nrows) + " rows");
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols) {
      throw InputError(what + ": row " + std::to_string(i) + " must have " + std::to_string(ncols) + " entries");
    }
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = f.from_int(rows[i][j].get<long long>());
  }
  return m;
}

std::vector<Generator> parse_generators(const Json& gens, const std::string& owner) {
  std::vector<Generator> out;
  if (!gens.is_array()) throw InputError("object '" + owner + "': generators must be a list");
  for (const auto& g : gens) {
    if (g.is_object()) {
      out.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
    } else if (g.is_array() && g.size() == 2) {
      out.push_back({g[0].get<std::string>(), g[1].get<int>()});
    } else if (g.is_number_integer()) {
      out.push_back({"g" + std::to_string(out.size() + 1), g.get<int>()});
    } else {
      throw InputError("object '" + owner + "': generator must be {name, degree}, [name, degree] or a degree");
    }
  }
  return out;
}

PolyMatrix parse_poly_matrix(const RingPtr& ring, const Json& rows, std::size_t nrows, std::size_t ncols,
                             const std::string& what) {
  PolyMatrix m(ring, nrows, ncols);
  if (!rows.is_array() || rows.size() != nrows) throw InputError(what + ": expected " + std::to_string(nrows) + " rows");
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols) {
      throw InputError(what + ": row " + std::to_string(i) + " must have " + std::to_string(ncols) + " entries");
    }
    for (std::size_t j = 0; j < ncols; ++j) m.set(i, j, parse_polynomial(entry_text(rows[i][j]), ring));
  }
  return m;
}

}  // namespace

Workspace::Workspace(const Json& doc, std::uint32_t p_override) {
  if (!doc.is_object()) throw InputError("input must be a JSON object");
  if (doc.contains("field")) {
    const Json& f = doc.at("field");
    p_ = f.is_object() ? f.at("p").get<std::uint32_t>() : f.get<std::uint32_t>();
  }
  if (p_override) p_ = p_override;
  if (!is_prime(p_)) throw InputError("field characteristic " + std::to_string(p_) + " is not prime");
  if (doc.contains("ring")) {
    const Json& r = doc.at("ring");
    std::string prefix = r.value("prefix", std::string("x"));
    ring_ = make_ring(p_, r.at("degrees").get<std::vector<int>>(), prefix);
  }
  specs_ = doc.value("objects", Json::object());
  if (!specs_.is_object()) throw InputError("\"objects\" must map names to descriptions");
  std::vector<std::string> names;
  for (const auto& [name, spec] : specs_.items()) names.push_back(name);
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    std::vector<std::string> stack;
    build(name, stack);
  }
}

const RingPtr& Workspace::ring() const {
  if (!ring_) throw InputError("input declares no \"ring\"");
  return ring_;
}

const std::string& Workspace::kind(const std::string& name) const {
  auto it = kinds_.find(name);
  if (it == kinds_.end()) throw InputError("unknown object '" + name + "'");
  return it->second;
}

const Object& Workspace::get(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) throw InputError("unknown object '" + name + "'");
  return it->second;
}

namespace {

template <class T>
const T& as(const Object& o, const std::string& name, const char* expected) {
  if (auto* v = std::get_if<T>(&o)) return *v;
  throw InputError("object '" + name + "' is not a " + expected);
}

}  // namespace

const FreeDGModule& Workspace::module(const std::string& name) const {
  return as<FreeDGModule>(get(name), name, "dg_module");
}
const DGMorphism& Workspace::morphism(const std::string& name) const {
  return as<DGMorphism>(get(name), name, "morphism");
}
const Ideal& Workspace::ideal(const std::string& name) const { return as<Ideal>(get(name), name, "ideal"); }
const CIPtr& Workspace::ci(const std::string& name) const { return as<CIPtr>(get(name), name, "ci"); }
const ComplexOverR& Workspace::ci_complex(const std::string& name) const {
  return as<ComplexOverR>(get(name), name, "ci_complex");
}

const Object& Workspace::build(const std::string& name, std::vector<std::string>& stack) {
  auto it = objects_.find(name);
  if (it != objects_.end()) return it->second;
  if (!specs_.contains(name)) throw InputError("reference to undefined object '" + name + "'");
  if (std::find(stack.begin(), stack.end(), name) != stack.end()) {
    throw InputError("object '" + name + "' refers to itself");
  }
  stack.push_back(name);
  const Json& spec = specs_.at(name);
  if (!spec.is_object() || !spec.contains("type")) throw InputError("object '" + name + "' needs a \"type\"");
  Object obj = construct(name, spec, stack);
  stack.pop_back();
  kinds_[name] = spec.at("type").get<std::string>();
  return objects_.emplace(name, std::move(obj)).first->second;
}

Object Workspace::construct(const std::string& name, const Json& spec, std::vector<std::string>& stack) {
  const std::string type = spec.at("type").get<std::string>();
  const std::string how = spec.value("construct", std::string("explicit"));
  auto module_ref = [&](const char* key) {
    return as<FreeDGModule>(build(name_of(spec, key, name), stack), name_of(spec, key, name), "dg_module");
  };
  auto poly = [&](const Json& v) { return parse_polynomial(entry_text(v), ring()); };

  if (type == "dg_module") {
    if (how == "explicit") {
      auto gens = parse_generators(field_of(spec, "generators", name), name);
      const std::size_t n = gens.size();
      PolyMatrix d = spec.contains("differential")
                         ? parse_poly_matrix(ring(), spec.at("differential"), n, n, "differential of '" + name + "'")
                         : PolyMatrix(ring(), n, n);
      return FreeDGModule(ring(), std::move(gens), std::move(d));
    }
    if (how == "free") return FreeDGModule::free(ring(), spec.value("degree", 0));
    if (how == "cone") {
      std::string f = name_of(spec, "morphism", name);
      return cone(as<DGMorphism>(build(f, stack), f, "morphism"));
    }
    if (how == "realize") {
      std::string i = name_of(spec, "ideal", name);
      return realize(ring(), as<Ideal>(build(i, stack), i, "ideal").generators);
    }
    if (how == "shift") return shift(module_ref("module"), spec.value("by", 1));
    if (how == "dual") return dual(module_ref("module"));
    if (how == "sum" || how == "tensor") {
      const Json& parts = field_of(spec, "modules", name);
      if (!parts.is_array() || parts.empty()) throw InputError("object '" + name + "': \"modules\" must be a nonempty list");
      std::optional<FreeDGModule> acc;
      for (const auto& part : parts) {
        std::string ref = part.get<std::string>();
        const FreeDGModule& m = as<FreeDGModule>(build(ref, stack), ref, "dg_module");
        acc = !acc ? m : (how == "sum" ? direct_sum(*acc, m) : tensor(*acc, m));
      }
      return *acc;
    }
    throw InputError("object '" + name + "': unknown dg_module construction '" + how + "'");
  }

  if (type == "morphism") {
    if (how == "explicit") {
      const FreeDGModule& src = module_ref("source");
      const FreeDGModule& tgt = module_ref("target");
      PolyMatrix m = parse_poly_matrix(ring(), field_of(spec, "matrix", name), tgt.rank(), src.rank(),
                                       "matrix of '" + name + "'");
      return DGMorphism(src, tgt, std::move(m));
    }
    if (how == "multiplication") return multiplication_morphism(module_ref("module"), poly(field_of(spec, "by", name)));
    if (how == "identity") return identity_morphism(module_ref("module"));
    if (how == "zero") return zero_morphism(module_ref("source"), module_ref("target"));
    throw InputError("object '" + name + "': unknown morphism construction '" + how + "'");
  }

  if (type == "ideal") {
    Ideal ideal;
    for (const auto& g : field_of(spec, "generators", name)) ideal.generators.push_back(poly(g));
    return ideal;
  }

  if (type == "ci") {
    CISpec ci;
    ci.p = p_;
    ci.exponents = field_of(spec, "exponents", name).get<std::vector<unsigned>>();
    if (spec.contains("constants")) {
      for (const auto& c : spec.at("constants")) {
        const auto h = c.at("h").get<std::size_t>(), i = c.at("i").get<std::size_t>(), j = c.at("j").get<std::size_t>();
        if (h == 0 || i == 0 || j == 0) throw InputError("structure constant indices are 1-based");
        ci.constants[{std::min(h, i) - 1, std::max(h, i) - 1, j - 1}] = entry_text(c.at("value"));
      }
    }
    return make_ci(ci);
  }

  if (type == "ci_complex") {
    std::string rname = name_of(spec, "ring", name);
    CIPtr R = as<CIPtr>(build(rname, stack), rname, "ci");
    const Field& f = R->field();
    auto element = [&](const Json& v) { return R->element(parse_polynomial(entry_text(v), R->zring())); };
    if (how == "trivial") return trivial_module(R);
    if (how == "free") return free_module(R);
    if (how == "syzygy") return syzygy_of_k(R);
    if (how == "inflated_line") {
      const auto v = spec.value("variable", std::size_t{1});
      if (v == 0) throw InputError("inflated_line variable is 1-based");
      return inflated_line(R, v - 1);
    }
    if (how == "multiplication") return multiplication_complex(R, element(field_of(spec, "by", name)));
    if (how == "quotient" || how == "submodule") {
      const std::size_t rank = spec.value("rank", std::size_t{1});
      std::vector<Vector> gens;
      for (const auto& g : field_of(spec, "generators", name)) {
        if (!g.is_array() || g.size() != rank) throw InputError("each generator needs " + std::to_string(rank) + " components");
        Vector v;
        for (const auto& c : g) {
          Vector e = element(c);
          v.insert(v.end(), e.begin(), e.end());
        }
        gens.push_back(std::move(v));
      }
      return how == "quotient" ? quotient_of_free(R, rank, gens) : submodule_of_free(R, rank, gens);
    }
    if (how == "explicit") {
      const int lo = spec.value("lo", 0);
      auto dims = field_of(spec, "dims", name).get<std::vector<std::size_t>>();
      std::vector<ScalarMatrix> diffs;
      const Json& dj = spec.value("differentials", Json::array());
      if (dj.size() + 1 != dims.size() && !dims.empty()) {
        throw InputError("object '" + name + "': need " + std::to_string(dims.size() - 1) + " differentials");
      }
      for (std::size_t k = 0; k + 1 < dims.size(); ++k)
        diffs.push_back(int_matrix(f, dj[k], dims[k + 1], dims[k], "differential " + std::to_string(k) + " of '" + name + "'"));
      std::vector<std::vector<ScalarMatrix>> actions(dims.size());
      const Json& aj = field_of(spec, "actions", name);
      if (aj.size() != dims.size()) throw InputError("object '" + name + "': need z-actions for every degree");
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (aj[k].size() != R->nvars()) throw InputError("object '" + name + "': one action matrix per z_i in each degree");
        for (std::size_t i = 0; i < R->nvars(); ++i)
          actions[k].push_back(int_matrix(f, aj[k][i], dims[k], dims[k], "action of z" + std::to_string(i + 1)));
      }
      return complex_from_blocks(R, lo, dims, diffs, actions);
    }
    throw InputError("object '" + name + "': unknown ci_complex construction '" + how + "'");
  }
  throw InputError("object '" + name + "': unknown type '" + type + "'");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

Json to_json(const Polynomial& p) { return p.to_string(); }

Json to_json(const PolyVector& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

Json to_json(const FreeDGModule& m) {
  Json out;
  Json gens = Json::array();
  for (const auto& g : m.generators()) gens.push_back(Json::array({g.name, g.degree}));
  out["generators"] = gens;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.rank(); ++j) row.push_back(m.differential().at(i, j).to_string());
    rows.push_back(row);
  }
  out["differential"] = rows;
  return out;
}

Json to_json(const HomologyTable& h) {
  Json out;
  out["lo"] = h.lo;
  out["hi"] = h.hi;
  out["dims"] = h.dims;
  return out;
}

Json to_json(const VarietySet& v) {
  Json out;
  out["field"] = v.field.name();
  out["p"] = v.field.characteristic();
  out["e"] = v.field.degree();
  out["nvars"] = v.nvars;
  out["contains_origin"] = v.contains_origin;
  out["points"] = v.points;
  Json fibers = Json::array();
  for (const auto& f : v.fibers) fibers.push_back(f.dims);
  out["fiber_dims"] = fibers;
  out["fiber_period"] = v.fibers.empty() ? 0 : v.fibers.front().period;
  out["origin_homology"] = to_json(v.origin_homology);
  return out;
}

Json to_json(const ExtTable& e) {
  Json out;
  out["lo"] = e.lo;
  out["hi"] = e.hi;
  out["dims"] = e.dims;
  return out;
}

}  // namespace suppvar
