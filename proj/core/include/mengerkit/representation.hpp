#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/types.hpp"

namespace mengerkit {

/// How a point of the universe evaluates an element g.
enum class PointKind {
    carrier,   // x̄ ∈ Gⁿ: g ↦ g[x̄]
    sentinel,  // (e_1 … e_n): g ↦ g
    frame,     // μ*-tuple of a word w: g ↦ g·w
    plain,     // opaque point (identity representations), no evaluation map
};

/// An ordered, duplicate-free set of n-tuples over G* together with, for the
/// canonical universes, the evaluation map g ↦ value at that point.
class PointUniverse {
public:
    PointUniverse(std::size_t arity, std::vector<ExtendedPoint> points, std::vector<PointKind> kinds,
                  std::vector<std::vector<CompositionWord>> witnesses,
                  std::vector<std::vector<Element>> evaluation);

    /// Universe of opaque points (no evaluation maps), e.g. Aⁿ for an identity representation.
    static PointUniverse opaque(std::size_t arity, std::vector<ExtendedPoint> points);

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<ExtendedPoint>& points() const { return points_; }
    const ExtendedPoint& point(std::size_t i) const { return points_[i]; }
    PointKind kind(std::size_t i) const { return kinds_[i]; }
    /// Witness words for frame points (one, or all of them in debug mode).
    const std::vector<CompositionWord>& witnesses(std::size_t i) const { return witnesses_[i]; }
    bool has_evaluation() const { return !evaluation_.empty(); }
    /// Value of element g at point i.
    Element evaluate(std::size_t i, Element g) const { return evaluation_[i][g]; }

    std::optional<std::size_t> find(const ExtendedPoint& point) const;

private:
    std::size_t arity_;
    std::vector<ExtendedPoint> points_;
    std::vector<PointKind> kinds_;
    std::vector<std::vector<CompositionWord>> witnesses_;
    std::vector<std::vector<Element>> evaluation_;
    std::map<ExtendedPoint, std::size_t> index_;
};

struct UniverseOptions {
    /// Flavor of the construction; defaults to the algebra's. plain drops the Gⁿ block.
    std::optional<Flavor> flavor;
    /// Keep every witness word per frame point and cross-check their values.
    bool debug_witnesses = false;
};

/// Gⁿ (menger only), then realizable μ*-tuples in BFS order, then (e_1 … e_n).
/// Throws InputError if two witness words for one point disagree, or an
/// all-carrier μ*-point disagrees with the superposition at that tuple.
PointUniverse build_universe(const AbstractAlgebra& algebra, UniverseOptions options = {});

/// Every witness word of every frame point re-derived through apply_word.
/// Fails with the first point whose witnesses disagree.
Verdict cross_witness_check(const PointUniverse& universe, const AbstractAlgebra& algebra);

/// A representation restricted to one universe.
struct RepresentationPart {
    std::shared_ptr<const PointUniverse> universe;
    /// assignment[g][point] = value, or kUndefined.
    std::vector<std::vector<std::int32_t>> assignment;

    friend bool operator==(const RepresentationPart& a, const RepresentationPart& b);
};

/// g ↦ P(g), a partial n-place function over the disjoint union of the parts' universes.
class Representation {
public:
    static constexpr std::int32_t kUndefined = -1;

    Representation(std::size_t arity, std::size_t carrier_size, Flavor flavor,
                   std::vector<RepresentationPart> parts);

    std::size_t arity() const { return arity_; }
    std::size_t carrier_size() const { return carrier_size_; }
    Flavor flavor() const { return flavor_; }
    const std::vector<RepresentationPart>& parts() const { return parts_; }
    std::size_t point_count() const;

    /// Domain of P(g) as a flat bitmap over all parts' points.
    std::vector<bool> domain(Element g) const;

    friend bool operator==(const Representation&, const Representation&) = default;

private:
    std::size_t arity_;
    std::size_t carrier_size_;
    Flavor flavor_;
    std::vector<RepresentationPart> parts_;
};

struct PairMode {
    Element h1;
    Element h2;
};
struct PointMode {
    Element a;
};

/// The canonical representation: at a point with value v = g[x̄], g or g·w,
/// P(g) is defined iff h1 χ v or h2 χ v, and then equals v. Point mode is h1 = h2 = a.
/// The plain (bullet) construction drops the Gⁿ block. χ must be an l-regular
/// v-negative quasi-order in the construction's flavor and the algebra must be
/// representable; otherwise InputError.
Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PairMode mode,
                                    UniverseOptions options = {});
Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PointMode mode,
                                    UniverseOptions options = {});

/// Same, reusing a universe already built for this algebra (no precondition re-check).
Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PairMode mode,
                                    std::shared_ptr<const PointUniverse> universe);

/// Disjoint union of parts. Carrier size and arity must agree.
Representation sum_representations(const std::vector<Representation>& parts);

struct RepresentationRelations {
    BinRelation chi;
    BinRelation gamma;
    BinRelation pi;
};

RepresentationRelations representation_relations(const Representation& rep);

/// P(g1 ⊕_i g2) = P(g1) ⊕_i P(g2) pointwise, and in menger flavor
/// P(g[g1 … gn]) = P(g)[P(g1) … P(gn)]. Elements of a failure: {g, g1, …, point index}.
Verdict verify_homomorphism(const Representation& rep, const AbstractAlgebra& algebra);

/// Injective g ↦ P(g); a failure names the colliding pair.
Verdict is_faithful(const Representation& rep);

}  // namespace mengerkit
