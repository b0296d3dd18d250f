#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "suppvar/ci.hpp"
#include "suppvar/dg_module.hpp"
#include "suppvar/nilpotence.hpp"
#include "suppvar/resolution.hpp"
#include "suppvar/support.hpp"

namespace suppvar {

using Json = nlohmann::ordered_json;

struct Ideal {
  std::vector<Polynomial> generators;
};

using Object = std::variant<FreeDGModule, DGMorphism, Ideal, CIPtr, ComplexOverR>;

/// Named objects of an input document, built once in name order. Building checks shapes
/// and parses polynomials but does not validate d² = 0 or chain-map conditions.
class Workspace {
 public:
  /// `p` overrides the document's field characteristic when nonzero.
  explicit Workspace(const Json& doc, std::uint32_t p_override = 0);

  std::uint32_t characteristic() const { return p_; }
  const RingPtr& ring() const;
  bool has(const std::string& name) const { return objects_.count(name) != 0; }
  const Object& get(const std::string& name) const;
  /// "dg_module", "morphism", "ideal", "ci" or "ci_complex"; InputError for unknown names.
  const std::string& kind(const std::string& name) const;

  const FreeDGModule& module(const std::string& name) const;
  const DGMorphism& morphism(const std::string& name) const;
  const Ideal& ideal(const std::string& name) const;
  const CIPtr& ci(const std::string& name) const;
  const ComplexOverR& ci_complex(const std::string& name) const;

 private:
  const Object& build(const std::string& name, std::vector<std::string>& stack);
  Object construct(const std::string& name, const Json& spec, std::vector<std::string>& stack);

  std::uint32_t p_ = 2;
  RingPtr ring_;
  Json specs_;
  std::map<std::string, Object> objects_;
  std::map<std::string, std::string> kinds_;
};

std::string sha256_hex(const std::string& bytes);

Json to_json(const Polynomial& p);
Json to_json(const PolyVector& v);
Json to_json(const FreeDGModule& m);
Json to_json(const HomologyTable& h);
Json to_json(const VarietySet& v);
Json to_json(const ExtTable& e);

}  // namespace suppvar
