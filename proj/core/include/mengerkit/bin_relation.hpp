#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mengerkit/types.hpp"

namespace mengerkit {

/// A binary relation on {0..size-1} stored as one bitset row per first coordinate.
class BinRelation {
public:
    BinRelation() = default;
    explicit BinRelation(std::size_t size);

    static BinRelation empty(std::size_t size) { return BinRelation(size); }
    static BinRelation diagonal(std::size_t size);
    static BinRelation full(std::size_t size);
    static BinRelation from_pairs(std::size_t size, std::span<const std::pair<Element, Element>> pairs);
    static BinRelation from_pairs(std::size_t size,
                                  std::initializer_list<std::pair<Element, Element>> pairs);

    std::size_t size() const { return size_; }
    std::size_t words_per_row() const { return words_; }

    bool contains(Element a, Element b) const {
        return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
    }
    void insert(Element a, Element b) { bits_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63); }
    void erase(Element a, Element b) { bits_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63)); }
    void set(Element a, Element b, bool value) { value ? insert(a, b) : erase(a, b); }

    std::span<const std::uint64_t> row(Element a) const { return {bits_.data() + a * words_, words_}; }
    std::span<std::uint64_t> row(Element a) { return {bits_.data() + a * words_, words_}; }
    bool row_empty(Element a) const;
    std::vector<Element> successors(Element a) const;

    std::size_t count() const;
    std::vector<std::pair<Element, Element>> pairs() const;

    BinRelation inverse() const;
    BinRelation& operator|=(const BinRelation& other);
    BinRelation& operator&=(const BinRelation& other);
    friend BinRelation operator|(BinRelation a, const BinRelation& b) { return a |= b; }
    friend BinRelation operator&(BinRelation a, const BinRelation& b) { return a &= b; }
    bool is_subset_of(const BinRelation& other) const;

    /// First coordinates that occur in the relation (pr₁).
    std::vector<bool> first_projection() const;

    friend bool operator==(const BinRelation&, const BinRelation&) = default;

private:
    std::size_t size_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

std::string to_string(const BinRelation& relation);

/// σ∘ρ = {(a,c) | ∃b: (a,b) ∈ ρ ∧ (b,c) ∈ σ}; ρ is applied first.
BinRelation compose(const BinRelation& sigma, const BinRelation& rho);
BinRelation reflexive_closure(const BinRelation& relation);
/// ρ ∪ ρ² ∪ …, computed by repeated squaring until a fixpoint.
BinRelation transitive_closure(const BinRelation& relation);
/// ρ^k for k ≥ 0 (ρ⁰ is the diagonal).
BinRelation power(const BinRelation& relation, std::size_t exponent);

struct RelationFlags {
    bool reflexive = false;
    bool symmetric = false;
    bool transitive = false;
    bool quasi_order = false;
    bool equivalence = false;
};

RelationFlags basic_relation_properties(const BinRelation& relation);

}  // namespace mengerkit
