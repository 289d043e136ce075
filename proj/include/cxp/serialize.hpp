#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "cxp/constructions.hpp"
#include "cxp/gaction.hpp"

namespace cxp {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input. `where` is a JSON pointer to the first offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

json to_json(const Scalar& s);
json to_json(const Vector& v);
json to_json(const ExactMatrix& m);
json to_json(const Category& c);
json to_json(const FiniteGroup& g);
json to_json(const GroupAction& a);
json to_json(const StarFunctor& f);
json to_json(const NaturalTransformation& t);
json to_json(const UnitaryEquivalenceCertificate& c);
json to_json(const ExcisiveSquare& s);
json element_to_json(const Category& c, const Morphism& m);

/// {schema_version, kind, body}
json instance_file(const std::string& kind, json body);

/// Readers share categories: identical category bodies parse to one object,
/// so functors read from one file compose.
class Reader {
 public:
  Scalar scalar(const json& j, const std::string& where) const;
  Vector vector(const json& j, const std::string& where) const;
  ExactMatrix matrix(const json& j, const std::string& where) const;
  CategoryPtr category(const json& j, const std::string& where);
  FiniteGroup group(const json& j, const std::string& where) const;
  GroupAction action(const json& j, const std::string& where);
  StarFunctor functor(const json& j, const std::string& where);
  NaturalTransformation transformation(const json& j, const std::string& where);
  UnitaryEquivalenceCertificate certificate(const json& j, const std::string& where);
  ExcisiveSquare square(const json& j, const std::string& where);
  Morphism element(const Category& c, const json& j, const std::string& where) const;

 private:
  std::map<std::string, CategoryPtr> cache_;
};

/// Checks the envelope and returns (kind, body).
std::pair<std::string, json> open_instance_file(const json& j);

json read_json_file(const std::string& path);
/// Writes via a temporary file and rename.
void write_json_file(const std::string& path, const json& j);
std::string dump_canonical(const json& j);

}  // namespace cxp
