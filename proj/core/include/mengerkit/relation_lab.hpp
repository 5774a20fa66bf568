#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/types.hpp"

namespace mengerkit {

// Every predicate below takes an optional flavor override. A menger algebra may
// be examined as a plain (2,n)-semigroup; asking for menger semantics on a plain
// algebra is an InputError. Only the Mann-composition clauses apply in plain flavor.

/// Symmetric, and reflexive away from the zero (fully reflexive when the zero is
/// in the first projection or when the algebra has no zero).
Verdict is_zero_quasi_equivalence(const BinRelation& r, const AbstractAlgebra& algebra);

/// x r y ⇒ x ⊕_i z r y ⊕_i z, and (menger) x[z̄] r y[z̄].
Verdict is_l_regular(const BinRelation& r, const AbstractAlgebra& algebra,
                     std::optional<Flavor> as = std::nullopt);

/// x ⊕_i z r y ⊕_i z ⇒ x r y, and (menger) x[z̄] r y[z̄] ⇒ x r y.
Verdict is_l_cancellative(const BinRelation& r, const AbstractAlgebra& algebra,
                          std::optional<Flavor> as = std::nullopt);

/// x·w r μ_j(w) for every reachable word and occupied slot j, and (menger) x[ȳ] r y_i.
Verdict is_v_negative(const BinRelation& r, const AbstractAlgebra& algebra,
                      std::optional<Flavor> as = std::nullopt);

/// Convenience conjunction used by the representation constructions.
Verdict is_l_regular_v_negative_quasi_order(const BinRelation& r, const AbstractAlgebra& algebra,
                                            std::optional<Flavor> as = std::nullopt);
Verdict is_l_regular_equivalence(const BinRelation& r, const AbstractAlgebra& algebra,
                                 std::optional<Flavor> as = std::nullopt);
Verdict is_l_cancellative_zero_quasi_equivalence(const BinRelation& r, const AbstractAlgebra& algebra,
                                                 std::optional<Flavor> as = std::nullopt);

/// The inner translations: the least set of maps G → G containing the identity
/// and closed under t ↦ (x ↦ a[b_1 … t(x) … b_n]). Menger flavor only.
class TranslationSet {
public:
    explicit TranslationSet(std::vector<std::vector<Element>> maps) : maps_(std::move(maps)) {}
    const std::vector<std::vector<Element>>& maps() const { return maps_; }
    std::size_t size() const { return maps_.size(); }
    bool contains(const std::vector<Element>& map) const;

private:
    std::vector<std::vector<Element>> maps_;
};

TranslationSet translations(const AbstractAlgebra& algebra);

struct DeltaRelations {
    std::optional<BinRelation> delta1;  // {(t(g), g)}; absent in plain flavor
    BinRelation delta2;                 // composite-to-component pairs
};

DeltaRelations delta_relations(const AbstractAlgebra& algebra, std::optional<Flavor> as = std::nullopt);

/// chi_pi:        f_t(f_R(δ2)∘δ1∘π)   menger, needs π
/// chi0:          f_t(f_R(δ2)∘δ1)     menger
/// chi_pi_bullet: f_t(f_R(δ2)∘π)      plain view, needs π
/// chi0_bullet:   f_t(f_R(δ2))        plain view
enum class ClosureKind { chi_pi, chi0, chi_pi_bullet, chi0_bullet };

const char* to_string(ClosureKind kind);
ClosureKind parse_closure_kind(const std::string& text);
bool uses_pi(ClosureKind kind);
Flavor closure_flavor(ClosureKind kind);

/// The single-step relation whose transitive closure is closure_chi(kind).
BinRelation one_step_relation(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                              ClosureKind kind);

/// Least l-regular v-negative quasi-order (containing π for the π-kinds).
/// Throws InputError when π is required but missing or not an l-regular equivalence.
BinRelation closure_chi(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                        ClosureKind kind);

/// h1 γ h2 ∧ h1 χ g1 ∧ h2 χ g2 ⇒ g1 γ g2.
Verdict check_compatibility(const BinRelation& chi, const BinRelation& gamma);

/// χ(π) ∩ χ(π)⁻¹ ⊆ π, reported with a witness pair.
Verdict check_kernel_inclusion(const BinRelation& chi, const BinRelation& pi);

/// Truncated word systems, decided through powers of the one-step relation.
/// A/B chain through π (≡); C replaces π with the diagonal. Bullet systems drop δ1.
enum class WordSystem { A, B, C, A_bullet, B_bullet, C_bullet };

const char* to_string(WordSystem system);
bool is_bullet(WordSystem system);
bool needs_gamma(WordSystem system);
bool needs_pi(WordSystem system);
ClosureKind system_closure_kind(WordSystem system);

struct WordSystemBounds {
    std::size_t max_n = 4;
    std::size_t max_m = 4;
};

/// A_n:     (x0,x1) ∈ R ∧ (x1,x0) ∈ R^{n-1}                      ⇒ x0 π x1
/// B_{n,m}: x0 γ x_{n+1} ∧ (x0,x_n) ∈ R^n ∧ (x_{n+1},x_{n+m+1}) ∈ R^m ⇒ x_n γ x_{n+m+1}
/// C_{n,m}: same premise                                          ⇒ x0 γ x_{n+m+1}
/// for 1 ≤ n ≤ max_n, 1 ≤ m ≤ max_m.
Verdict check_word_system(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                          const std::optional<BinRelation>& gamma, WordSystem system,
                          WordSystemBounds bounds);

}  // namespace mengerkit
