#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/partial_function.hpp"
#include "mengerkit/representation.hpp"

// JSON file formats. Slots are 1-based on disk: "mann" table k holds ⊕_k, and
// sentinel coordinates are written {"e": k}. Unknown fields are rejected.
//
//   mengerkit-algebra-v1       abstract or concrete algebra
//   mengerkit-relation-v1      square 0/1 matrix, row = first coordinate
//   mengerkit-representation-v1

namespace mengerkit::io {

inline constexpr const char* kAlgebraFormat = "mengerkit-algebra-v1";
inline constexpr const char* kRelationFormat = "mengerkit-relation-v1";
inline constexpr const char* kRepresentationFormat = "mengerkit-representation-v1";

using AlgebraDocument = std::variant<AbstractAlgebra, ConcreteAlgebra>;

std::string algebra_to_json(const AbstractAlgebra& algebra);
std::string algebra_to_json(const ConcreteAlgebra& algebra);
AlgebraDocument algebra_from_json(const std::string& text);

std::string relation_to_json(const BinRelation& relation);
BinRelation relation_from_json(const std::string& text);

std::string representation_to_json(const Representation& rep);
Representation representation_from_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

AlgebraDocument load_algebra(const std::filesystem::path& path);
BinRelation load_relation(const std::filesystem::path& path);
Representation load_representation(const std::filesystem::path& path);

/// The abstract view of either kind of algebra document.
AbstractAlgebra to_abstract(const AlgebraDocument& document);

}  // namespace mengerkit::io
