#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mengerkit/bin_relation.hpp"
#include "mengerkit/types.hpp"

namespace mengerkit {

/// A partial n-place function on the base set {0..base_size-1}, stored as a dense
/// table of base_size^arity cells. Cells are indexed mixed-radix, leftmost
/// argument most significant. Undefined cells hold kUndefined.
class PartialFunction {
public:
    static constexpr std::int32_t kUndefined = -1;

    PartialFunction(std::size_t arity, std::size_t base_size, std::vector<std::int32_t> table);

    static PartialFunction empty(std::size_t arity, std::size_t base_size);
    /// The i-th projection (slot is 0-based).
    static PartialFunction projection(std::size_t arity, std::size_t base_size, std::size_t slot);
    static PartialFunction constant(std::size_t arity, std::size_t base_size, Element value);

    std::size_t arity() const { return arity_; }
    std::size_t base_size() const { return base_size_; }
    std::size_t cell_count() const { return table_.size(); }
    std::span<const std::int32_t> table() const { return table_; }

    std::optional<Element> evaluate(std::span<const Element> args) const;
    std::optional<Element> at(std::size_t cell) const {
        return table_[cell] == kUndefined ? std::nullopt
                                          : std::optional<Element>(static_cast<Element>(table_[cell]));
    }
    bool defined_at(std::size_t cell) const { return table_[cell] != kUndefined; }
    bool is_empty() const;

    std::size_t cell_index(std::span<const Element> args) const;
    /// Inverse of cell_index.
    std::vector<Element> arguments(std::size_t cell) const;

    friend bool operator==(const PartialFunction&, const PartialFunction&) = default;

private:
    std::size_t arity_;
    std::size_t base_size_;
    std::vector<std::int32_t> table_;
};

struct PartialFunctionHash {
    std::size_t operator()(const PartialFunction& f) const noexcept;
};

/// f[g_1 … g_n]: defined at ā iff every g_i(ā) is defined and f is defined at the results.
PartialFunction superpose(const PartialFunction& f, std::span<const PartialFunction> gs);

/// f ⊕_slot g (slot is 0-based): g(ā) substituted into argument `slot` of f.
PartialFunction mann_compose(const PartialFunction& f, const PartialFunction& g, std::size_t slot);

/// A finite set of partial functions closed under the Mann compositions (and
/// superposition in menger flavor). Element order is the closure's BFS order.
class ConcreteAlgebra {
public:
    /// Validates shape and duplicate-freeness; closedness is checked by is_closed().
    ConcreteAlgebra(std::size_t arity, std::size_t base_size, std::vector<PartialFunction> functions,
                    Flavor flavor);

    std::size_t arity() const { return arity_; }
    std::size_t base_size() const { return base_size_; }
    Flavor flavor() const { return flavor_; }
    std::size_t size() const { return functions_.size(); }
    const std::vector<PartialFunction>& functions() const { return functions_; }
    const PartialFunction& operator[](std::size_t i) const { return functions_[i]; }

    std::optional<std::size_t> find(const PartialFunction& f) const;
    /// Empty when every composite lands back in the set; otherwise a description of the first miss.
    std::optional<std::string> closure_defect() const;
    bool is_closed() const { return !closure_defect().has_value(); }

    friend bool operator==(const ConcreteAlgebra& a, const ConcreteAlgebra& b) {
        return a.arity_ == b.arity_ && a.base_size_ == b.base_size_ && a.flavor_ == b.flavor_ &&
               a.functions_ == b.functions_;
    }

private:
    std::size_t arity_;
    std::size_t base_size_;
    Flavor flavor_;
    std::vector<PartialFunction> functions_;
    std::unordered_map<PartialFunction, std::size_t, PartialFunctionHash> index_;
};

inline constexpr std::size_t kDefaultClosureCap = 4096;

/// Least superset of `generators` closed under the algebra's operations.
/// Throws CapacityError once more than `cap` functions have been produced.
ConcreteAlgebra close_under_operations(std::span<const PartialFunction> generators, Flavor flavor,
                                       std::size_t cap = kDefaultClosureCap);
/// Variant for an empty generator list, which carries no arity/base information.
ConcreteAlgebra close_under_operations(std::size_t arity, std::size_t base_size,
                                       std::span<const PartialFunction> generators, Flavor flavor,
                                       std::size_t cap = kDefaultClosureCap);

struct ProjectionRelations {
    BinRelation chi;    // domain inclusion
    BinRelation gamma;  // domains intersect
    BinRelation pi;     // domain equality
};

ProjectionRelations concrete_projection_relations(const ConcreteAlgebra& algebra);

}  // namespace mengerkit
