#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/partial_function.hpp"
#include "mengerkit/relation_lab.hpp"
#include "mengerkit/representation.hpp"

namespace mengerkit {

enum class TargetKind { triplet, pair_chi_gamma, pair_gamma_pi, pair_chi_pi, single_chi, single_gamma, single_pi };

const char* to_string(TargetKind kind);
TargetKind parse_target_kind(const std::string& text);
bool target_uses_chi(TargetKind kind);
bool target_uses_gamma(TargetKind kind);
bool target_uses_pi(TargetKind kind);

/// A tuple of relations whose projection representability is in question.
/// Only the relations named by `kind` are set.
struct Target {
    TargetKind kind;
    std::optional<BinRelation> chi;
    std::optional<BinRelation> gamma;
    std::optional<BinRelation> pi;

    static Target triplet(BinRelation chi, BinRelation gamma, BinRelation pi);
    static Target chi_gamma(BinRelation chi, BinRelation gamma);
    static Target gamma_pi(BinRelation gamma, BinRelation pi);
    static Target chi_pi(BinRelation chi, BinRelation pi);
    static Target only_chi(BinRelation chi);
    static Target only_gamma(BinRelation gamma);
    static Target only_pi(BinRelation pi);

    /// Throws InputError when a required relation is missing or has the wrong size.
    void validate(std::size_t carrier_size) const;
};

/// Theorem label for a target in a flavor: T1, T1a, T2, T4, T5, T6, T8 (menger),
/// T1, T1a, T11, T4, T5, T6, T12 (plain).
std::string theorem_id(TargetKind kind, Flavor flavor);

struct NamedCheck {
    std::string name;
    Verdict verdict;
};

struct ConditionsReport {
    std::vector<NamedCheck> checks;
    bool passed() const;
};

/// Dispatches to the relation-lab predicates prescribed for the target's theorem.
ConditionsReport verify_conditions(const AbstractAlgebra& algebra, const Target& target,
                                   std::optional<Flavor> flavor = std::nullopt);

struct RelationMatch {
    std::string name;  // "chi", "gamma" or "pi"
    BinRelation expected;
    BinRelation actual;
    bool equal() const { return expected == actual; }
};

struct FaithfulReport {
    bool faithful = false;
    bool sum_identity = false;  // χ_{Λ+P₀} = χ_Λ ∩ χ_{P₀}, and likewise for π
    bool realizes_target = false;
};

struct RoundtripReport {
    std::vector<RelationMatch> matches;
    Verdict homomorphism = Verdict::pass();
    std::optional<FaithfulReport> faithful;
    std::size_t part_count = 0;
    bool passed() const;
};

struct SystemCrosscheck {
    WordSystem system;
    bool exact_pass = false;
    bool truncated_pass = false;
    /// Truncated pass is only required to match exactly when the bounds cover
    /// every chain length and (for C systems) γ is symmetric.
    bool complete_bounds = false;
    bool divergent() const { return (exact_pass && !truncated_pass) || (complete_bounds && exact_pass != truncated_pass); }
};

struct CrosscheckReport {
    std::string theorem;  // T3, T7, T9, T11, T12
    std::vector<SystemCrosscheck> systems;
    bool divergent() const;
};

struct TheoremVerdict {
    std::string theorem;
    ConditionsReport conditions;
    std::optional<RoundtripReport> roundtrip;
    std::optional<CrosscheckReport> crosscheck;
    bool passed() const;
};

/// The representation a theorem's sufficiency proof prescribes for the target:
/// Σ over γ of pair(h1,h2) parts (γ-targets) or Σ over G of point(a) parts
/// (χ/π-targets), with χ taken from the target, χ(π) or χ0 as appropriate.
/// Throws InputError if the construction's own preconditions fail.
Representation prescribed_representation(const AbstractAlgebra& algebra, const Target& target,
                                         std::optional<Flavor> flavor = std::nullopt,
                                         UniverseOptions universe_options = {});

/// Compares the representation's relations with every relation of the target.
std::vector<RelationMatch> match_relations(const Representation& rep, const Target& target);

/// Conditions, then (only if they pass) the constructive round trip. When a
/// concrete origin is supplied, χ/π-targets additionally build Λ + P₀.
TheoremVerdict roundtrip(const AbstractAlgebra& algebra, const Target& target,
                         std::optional<Flavor> flavor = std::nullopt,
                         const ConcreteAlgebra* concrete_origin = nullptr, WordSystemBounds bounds = {});

inline constexpr std::size_t kDefaultOracleCap = 4;

/// Intersection of every l-regular v-negative quasi-order containing π (when
/// given), found by enumerating all 2^(m²) relations. Throws CapacityError for m > cap.
BinRelation least_quasiorder_oracle(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                                    std::optional<Flavor> flavor = std::nullopt,
                                    std::size_t cap = kDefaultOracleCap);

/// Truncated word systems against the exact closure-based conditions. Systems
/// needing a missing relation are skipped.
CrosscheckReport word_system_crosscheck(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                                        const std::optional<BinRelation>& gamma, WordSystemBounds bounds,
                                        std::optional<Flavor> flavor = std::nullopt);

}  // namespace mengerkit
