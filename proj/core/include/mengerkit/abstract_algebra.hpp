#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mengerkit/partial_function.hpp"
#include "mengerkit/types.hpp"

namespace mengerkit {

/// Raw operation tables of an abstract (2,n)-semigroup on G = {0..size-1}.
struct AlgebraTables {
    std::size_t arity = 0;
    std::size_t size = 0;
    Flavor flavor = Flavor::plain;
    /// mann[k][x * size + y] = x ⊕_{k+1} y.
    std::vector<std::vector<Element>> mann;
    /// superposition[((g * size + g1) * size + g2) …] = g[g1 … gn]; empty in plain flavor.
    std::vector<Element> superposition;
    /// Declared zero. Checked against the zero laws on construction.
    std::optional<Element> zero;

    friend bool operator==(const AlgebraTables&, const AlgebraTables&) = default;
};

inline constexpr std::size_t kDefaultFrameCap = 2'000'000;

struct AlgebraOptions {
    std::size_t frame_cap = kDefaultFrameCap;
};

class FrameSpace;

namespace detail {
struct AnalysisCache;
}

/// An immutable finite (2,n)-semigroup, optionally with a superposition.
///
/// Tables are validated for shape and range only; the algebraic laws are the
/// business of check_associativity, check_menger_identities and
/// check_representability. zero() is the unique zero if one exists (computed,
/// not taken on trust from the declared field).
class AbstractAlgebra {
public:
    explicit AbstractAlgebra(AlgebraTables tables, AlgebraOptions options = {});

    std::size_t arity() const { return tables_.arity; }
    std::size_t size() const { return tables_.size; }
    Flavor flavor() const { return tables_.flavor; }
    std::optional<Element> zero() const { return zero_; }
    const AlgebraTables& tables() const { return tables_; }
    const AlgebraOptions& options() const { return options_; }

    /// x ⊕_{slot+1} y.
    Element mann(std::size_t slot, Element x, Element y) const {
        return tables_.mann[slot][static_cast<std::size_t>(x) * tables_.size + y];
    }
    /// x[args…]; requires menger flavor.
    Element superpose(Element x, std::span<const Element> args) const;

    /// Same tables viewed as a plain (2,n)-semigroup.
    AbstractAlgebra as_plain() const;

    friend bool operator==(const AbstractAlgebra& a, const AbstractAlgebra& b) {
        return a.tables_ == b.tables_;
    }

private:
    friend std::shared_ptr<const FrameSpace> reachable_frames(const AbstractAlgebra& algebra);

    AlgebraTables tables_;
    AlgebraOptions options_;
    std::optional<Element> zero_;
    std::shared_ptr<detail::AnalysisCache> cache_;
};

/// Left-to-right fold ((x ⊕_{i1} y1) ⊕_{i2} y2) ….
Element apply_word(const AbstractAlgebra& algebra, Element x, const CompositionWord& word);

/// μ-symbols of a word over an arbitrary associative structure: entry i is empty
/// when slot i never occurs, else y_k ⊕_{i_{k+1}} y_{k+1} … ⊕_{i_s} y_s where k is
/// the first occurrence of slot i. Computed incrementally: a step ⊕_j y extends
/// every occupied entry by ⊕_j y and occupies an empty entry j with y.
template <typename T, typename Combine>
std::vector<std::optional<T>> mu_symbols(std::size_t arity,
                                         std::span<const std::pair<std::size_t, T>> steps,
                                         Combine&& combine) {
    std::vector<std::optional<T>> mu(arity);
    for (const auto& [slot, value] : steps) {
        for (std::size_t i = 0; i < arity; ++i) {
            if (mu[i]) {
                mu[i] = combine(*mu[i], slot, value);
            } else if (i == slot) {
                mu[i] = value;
            }
        }
    }
    return mu;
}

/// The μ*-tuple of a word: entry i is μ_i(word), or the sentinel e_i when slot i is absent.
ExtendedPoint mu_star(const AbstractAlgebra& algebra, const CompositionWord& word);

/// One reachable state of a composition word: its μ*-tuple and the action x ↦ x·word.
struct MuFrame {
    ExtendedPoint mu_star;
    std::vector<Element> action;
    std::size_t depth = 0;
    std::size_t parent = 0;  // index into FrameSpace::all(); the empty-word frame is 0
    Step last{};
};

/// All frames reachable from the empty word, discovered breadth-first.
class FrameSpace {
public:
    explicit FrameSpace(std::vector<MuFrame> all) : all_(std::move(all)) {}

    /// Frames of depth ≥ 1 in BFS order (the empty-word frame is excluded).
    std::span<const MuFrame> frames() const { return std::span<const MuFrame>(all_).subspan(1); }
    /// Every frame including the empty-word frame at index 0.
    std::span<const MuFrame> all() const { return all_; }
    /// A shortest word realizing frames()[index].
    CompositionWord witness(std::size_t index) const;

private:
    std::vector<MuFrame> all_;
};

/// Computed once per algebra (shared by copies) and cached. Throws CapacityError
/// if more than options().frame_cap states are discovered.
std::shared_ptr<const FrameSpace> reachable_frames(const AbstractAlgebra& algebra);

/// Equal μ*-tuples force equal actions. A failure names two witness words and an
/// element g (elements = {g, g·w1, g·w2}).
Verdict check_representability(const AbstractAlgebra& algebra);

/// Each ⊕_i is associative; a failure reports slot and the triple (x, y, z).
Verdict check_associativity(const AbstractAlgebra& algebra);

/// Superassociativity, the two Mann/superposition exchange laws, and the
/// word-superposition law for every slot-complete reachable frame. Requires menger flavor.
Verdict check_menger_identities(const AbstractAlgebra& algebra);

/// The unique z with z ⊕_i g = g ⊕_i z = z (and, in menger flavor, z[ḡ] = z and
/// g[… z …] = z) for every slot and element.
std::optional<Element> find_zero(const AlgebraTables& tables);
inline std::optional<Element> find_zero(const AbstractAlgebra& algebra) { return algebra.zero(); }

/// Operation tables read off a closed concrete algebra; carrier = function indices.
AbstractAlgebra abstract_from_concrete(const ConcreteAlgebra& algebra, AlgebraOptions options = {});

}  // namespace mengerkit
