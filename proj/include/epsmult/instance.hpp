#ifndef EPSMULT_INSTANCE_HPP
#define EPSMULT_INSTANCE_HPP

#include "digest.hpp"
#include "error.hpp"
#include "graded_pair.hpp"
#include "okounkov.hpp"
#include "rational.hpp"
#include "toml_lite.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace epsmult {

/// A parsed instance file together with its canonical form.
struct Instance {
  PairDescription description;
  std::optional<std::vector<Rational>> weights;
  /// Canonical JSON (sorted keys, normalised weights) used for digests.
  nlohmann::json canonical;

  std::string digest() const { return sha256_hex(canonical.dump()); }
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IngestionError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// JSON unless the extension is .toml.
inline nlohmann::json parse_document(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  if (path.extension() == ".toml")
    return TomlLite::parse(text);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestionError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

namespace detail {

inline std::vector<std::string> string_array(const nlohmann::json& doc, const char* key,
                                             bool required) {
  if (!doc.contains(key)) {
    if (required)
      throw IngestionError(std::string("missing field '") + key + "'");
    return {};
  }
  const auto& a = doc.at(key);
  if (!a.is_array())
    throw IngestionError(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (!v.is_string())
      throw IngestionError(std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

} // namespace detail

inline Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw IngestionError("instance must be an object");
  static const char* known[] = {"base_variables", "fiber_variables", "delta",
                                "subalgebra_generators", "weights", "format_version", "name"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return it.key() == k; }) == std::end(known))
      throw IngestionError("unknown field '" + it.key() + "'");
  Instance inst;
  auto& d = inst.description;
  d.base_variables = detail::string_array(doc, "base_variables", true);
  d.fiber_variables = detail::string_array(doc, "fiber_variables", true);
  d.delta = detail::string_array(doc, "delta", false);
  d.subalgebra_generators = detail::string_array(doc, "subalgebra_generators", true);
  inst.canonical = {{"base_variables", d.base_variables},
                    {"fiber_variables", d.fiber_variables},
                    {"delta", d.delta},
                    {"subalgebra_generators", d.subalgebra_generators}};
  if (doc.contains("weights")) {
    std::vector<Rational> w;
    std::vector<std::string> norm;
    for (const auto& s : detail::string_array(doc, "weights", true)) {
      w.push_back(parse_rational(s));
      norm.push_back(to_fraction_string(w.back()));
    }
    inst.weights = std::move(w);
    inst.canonical["weights"] = norm;
  }
  return inst;
}

inline Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_document(path));
}

/// Semigroup files: an array of integer vectors, or an object whose
/// `generators` field is one.
inline AffineSemigroup semigroup_from_json(const nlohmann::json& doc) {
  const nlohmann::json* arr = &doc;
  if (doc.is_object()) {
    if (!doc.contains("generators"))
      throw IngestionError("semigroup object needs a 'generators' field");
    arr = &doc.at("generators");
  }
  if (!arr->is_array() || arr->empty())
    throw IngestionError("semigroup generators must be a nonempty array");
  std::vector<SemigroupVector> gens;
  for (const auto& v : *arr) {
    if (!v.is_array())
      throw IngestionError("each semigroup generator must be an array of integers");
    SemigroupVector g;
    for (const auto& x : v) {
      if (!x.is_number_integer())
        throw IngestionError("semigroup entries must be integers");
      g.push_back(x.get<std::int64_t>());
    }
    gens.push_back(std::move(g));
  }
  try {
    return make_semigroup(std::move(gens));
  } catch (const PreconditionError& e) {
    throw IngestionError(e.what());
  } catch (const DimensionMismatch& e) {
    throw IngestionError(e.what());
  }
}

inline AffineSemigroup load_semigroup(const std::filesystem::path& path) {
  return semigroup_from_json(parse_document(path));
}

} // namespace epsmult

#endif
