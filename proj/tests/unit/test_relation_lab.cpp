#include <doctest.h>

#include <deque>

#include "support.hpp"

using namespace support;

namespace {

bool literal_l_cancellative(const BinRelation& r, const AbstractAlgebra& a, bool menger) {
    const std::size_t m = a.size(), n = a.arity();
    for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
            if (r.contains(x, y)) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (Element z = 0; z < m; ++z)
                    if (r.contains(a.mann(i, x, z), a.mann(i, y, z))) return false;
            if (!menger) continue;
            for (Element z1 = 0; z1 < m; ++z1)
                for (Element z2 = 0; z2 < m; ++z2) {
                    const std::vector<Element> zs{z1, z2};
                    if (r.contains(a.superpose(x, zs), a.superpose(y, zs))) return false;
                }
        }
    return true;
}

std::vector<AbstractAlgebra> small_menger_algebras(std::size_t want, std::size_t max_size) {
    std::vector<AbstractAlgebra> out{e2(), e3()};
    for (std::uint64_t seed = 100; out.size() < want && seed < 2000; ++seed) {
        const auto a = abstract_from_concrete(instance(seed, Flavor::menger, 2, 2, 12));
        if (a.size() >= 2 && a.size() <= max_size) out.push_back(a);
    }
    return out;
}

std::vector<AbstractAlgebra> small_plain_algebras(std::size_t want, std::size_t max_size) {
    std::vector<AbstractAlgebra> out{e2(Flavor::plain), e3(Flavor::plain)};
    for (std::uint64_t seed = 100; out.size() < want && seed < 2000; ++seed) {
        const auto a = abstract_from_concrete(instance(seed, Flavor::plain, 2, 2, 12));
        if (a.size() >= 2 && a.size() <= max_size) out.push_back(a);
    }
    return out;
}

// Translations by breadth-first composition of elementary maps x ↦ a[.. x ..].
std::set<std::vector<Element>> brute_translations(const AbstractAlgebra& a) {
    const std::size_t m = a.size();
    std::vector<std::vector<Element>> elementary;
    for (Element head = 0; head < m; ++head)
        for (std::size_t slot = 0; slot < 2; ++slot)
            for (Element b = 0; b < m; ++b) {
                std::vector<Element> map(m);
                for (Element x = 0; x < m; ++x) {
                    std::vector<Element> args{b, b};
                    args[slot] = x;
                    map[x] = a.superpose(head, args);
                }
                elementary.push_back(map);
            }
    std::vector<Element> id(m);
    for (Element x = 0; x < m; ++x) id[x] = x;
    std::set<std::vector<Element>> seen{id};
    std::deque<std::vector<Element>> queue{id};
    while (!queue.empty()) {
        const auto t = queue.front();
        queue.pop_front();
        for (const auto& e : elementary) {
            std::vector<Element> next(m);
            for (Element x = 0; x < m; ++x) next[x] = e[t[x]];
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

// δ2 from explicit words up to a length, plus the superposed pairs in menger flavor.
BinRelation brute_delta2(const AbstractAlgebra& a, std::size_t max_length, bool menger) {
    const std::size_t m = a.size();
    BinRelation out(m);
    for (const auto& w : all_words(2, m, max_length)) {
        const auto mu = mu_star_first_occurrence(a, w);
        for (const auto& s : mu) {
            if (s.is_sentinel()) continue;
            for (Element x = 0; x < m; ++x) {
                out.insert(fold(a, x, w), s.element());
                if (!menger) continue;
                for (Element z1 = 0; z1 < m; ++z1)
                    for (Element z2 = 0; z2 < m; ++z2) {
                        const std::vector<Element> zs{z1, z2};
                        out.insert(a.superpose(fold(a, x, w), zs), a.superpose(s.element(), zs));
                    }
            }
        }
    }
    return out;
}

// Literal clause enumeration: every chain of the one-step relation is spelled out.
bool chain_exists(const BinRelation& step, Element from, Element to, std::size_t length) {
    if (length == 0) return from == to;
    for (Element next = 0; next < step.size(); ++next)
        if (step.contains(from, next) && chain_exists(step, next, to, length - 1)) return true;
    return false;
}

bool literal_word_system(const AbstractAlgebra& a, const std::optional<BinRelation>& pi,
                         const std::optional<BinRelation>& gamma, WordSystem system, WordSystemBounds b) {
    const BinRelation step = one_step_relation(a, needs_pi(system) ? pi : std::nullopt, system_closure_kind(system));
    const std::size_t m = a.size();
    if (!needs_gamma(system)) {
        for (std::size_t n = 1; n <= b.max_n; ++n)
            for (Element x0 = 0; x0 < m; ++x0)
                for (Element x1 = 0; x1 < m; ++x1)
                    if (step.contains(x0, x1) && chain_exists(step, x1, x0, n - 1) && !pi->contains(x0, x1))
                        return false;
        return true;
    }
    const bool b_form = system == WordSystem::B || system == WordSystem::B_bullet;
    for (std::size_t n = 1; n <= b.max_n; ++n)
        for (std::size_t k = 1; k <= b.max_m; ++k)
            for (Element h1 = 0; h1 < m; ++h1)
                for (Element h2 = 0; h2 < m; ++h2) {
                    if (!gamma->contains(h1, h2)) continue;
                    for (Element g1 = 0; g1 < m; ++g1)
                        for (Element g2 = 0; g2 < m; ++g2)
                            if (chain_exists(step, h1, g1, n) && chain_exists(step, h2, g2, k) &&
                                !gamma->contains(b_form ? g1 : h1, g2))
                                return false;
                }
    return true;
}

std::size_t max_frame_depth(const AbstractAlgebra& a) {
    std::size_t d = 0;
    for (const auto& f : reachable_frames(a)->frames()) d = std::max(d, f.depth);
    return d;
}

}  // namespace

TEST_CASE("zero quasi-equivalence") {
    CHECK(is_zero_quasi_equivalence(rel(2, {{kQ, kQ}}), e3()).passed());
    const Verdict v = is_zero_quasi_equivalence(rel(2, {{kQ, kQ}, {kTheta, kQ}, {kQ, kTheta}}), e3());
    REQUIRE_FALSE(v.passed());
    CHECK(v.counterexample().rule == "reflexivity");
    CHECK(v.counterexample().elements == std::vector<Element>{kTheta});
    CHECK(is_zero_quasi_equivalence(rel(1, {{0, 0}}), e2()).passed());
    CHECK_FALSE(is_zero_quasi_equivalence(rel(2, {{kTheta, kQ}, {kQ, kQ}}), e3()).passed());
    CHECK_THROWS_AS(is_zero_quasi_equivalence(BinRelation(3), e3()), InputError);
}

TEST_CASE("l-regularity") {
    CHECK(is_l_regular(BinRelation(1), e2()).passed());
    CHECK(is_l_regular(BinRelation::full(1), e2()).passed());
    CHECK(is_l_regular(rel(2, {{kTheta, kQ}, {kTheta, kTheta}, {kQ, kQ}}), e3()).passed());
    CHECK_THROWS_AS(is_l_regular(BinRelation(2), e3(Flavor::plain), Flavor::menger), InputError);

    // Three elements, x ⊕ z = z unless 0 is involved, 0 absorbing. (1,2) ∈ r
    // forces (1 ⊕ 1, 2 ⊕ 1) = (1,1), which r lacks.
    AlgebraTables t;
    t.arity = 2;
    t.size = 3;
    t.flavor = Flavor::plain;
    t.mann = {{0, 0, 0, 0, 1, 2, 0, 1, 2}, {0, 0, 0, 0, 1, 2, 0, 1, 2}};
    const AbstractAlgebra band(t);
    const auto r = rel(3, {{1, 2}});
    const Verdict v = is_l_regular(r, band);
    REQUIRE_FALSE(v.passed());
    CHECK(witness_holds(band, v.counterexample(), &r));

    // Exhaustive agreement with a literal scan on every relation over small algebras.
    for (const auto& a : small_menger_algebras(8, 3))
        for (bool menger : {true, false})
            for_each_relation(a.size(), RelationFilter::all, [&](const BinRelation& rr) {
                const Verdict got = is_l_regular(rr, a, menger ? Flavor::menger : Flavor::plain);
                CHECK(got.passed() == literal_l_regular(rr, a, menger));
                if (!got.passed()) CHECK(witness_holds(a, got.counterexample(), &rr));
            });
}

TEST_CASE("l-cancellativity") {
    CHECK(is_l_cancellative(BinRelation::full(2), e3()).passed());
    CHECK(is_l_cancellative(rel(2, {{kQ, kQ}}), e3()).passed());

    const std::vector<PartialFunction> gens{nothing(), f_one(), p1()};
    const auto phi = close_under_operations(gens, Flavor::menger);
    const auto a = abstract_from_concrete(phi);
    CHECK(is_l_cancellative(concrete_projection_relations(phi).gamma, a).passed());

    for (const auto& alg : small_menger_algebras(8, 3))
        for (bool menger : {true, false})
            for_each_relation(alg.size(), RelationFilter::all, [&](const BinRelation& rr) {
                const Verdict got = is_l_cancellative(rr, alg, menger ? Flavor::menger : Flavor::plain);
                CHECK(got.passed() == literal_l_cancellative(rr, alg, menger));
                if (!got.passed()) CHECK(witness_holds(alg, got.counterexample(), &rr));
            });
}

TEST_CASE("v-negativity") {
    CHECK(is_v_negative(e3_chi0(), e3()).passed());
    const auto diag = BinRelation::diagonal(2);
    const Verdict v = is_v_negative(diag, e3());
    REQUIRE_FALSE(v.passed());
    CHECK(witness_holds(e3(), v.counterexample(), &diag));
    CHECK(is_v_negative(BinRelation::full(1), e2()).passed());

    for (const auto& a : small_menger_algebras(8, 3)) {
        const std::size_t depth = max_frame_depth(a);
        for (bool menger : {true, false})
            for_each_relation(a.size(), RelationFilter::quasi_orders, [&](const BinRelation& rr) {
                const Verdict got = is_v_negative(rr, a, menger ? Flavor::menger : Flavor::plain);
                CHECK(got.passed() == literal_v_negative(rr, a, menger, depth));
                if (!got.passed()) CHECK(witness_holds(a, got.counterexample(), &rr));
            });
    }
}

TEST_CASE("translations") {
    CHECK(translations(e2()).maps() == std::vector<std::vector<Element>>{{0}});
    const auto t = translations(e3());
    CHECK(t.size() == 2);
    CHECK(t.contains({kTheta, kQ}));
    CHECK(t.contains({kTheta, kTheta}));
    CHECK_THROWS_AS(translations(e3(Flavor::plain)), InputError);

    for (const auto& a : small_menger_algebras(12, 6)) {
        const auto got = translations(a);
        std::set<std::vector<Element>> as_set(got.maps().begin(), got.maps().end());
        CHECK(as_set.size() == got.size());
        CHECK(as_set == brute_translations(a));
        std::vector<Element> id(a.size());
        for (Element x = 0; x < a.size(); ++x) id[x] = x;
        CHECK(got.contains(id));
    }
}

TEST_CASE("delta relations") {
    const auto d = delta_relations(e3());
    REQUIRE(d.delta1.has_value());
    CHECK(*d.delta1 == e3_chi0());
    CHECK(d.delta2 == e3_chi0());
    CHECK(d.delta2 == brute_delta2(e3(), 4, true));

    const auto d2 = delta_relations(e2());
    CHECK(*d2.delta1 == BinRelation::full(1));
    CHECK(d2.delta2 == BinRelation::full(1));
    CHECK_FALSE(delta_relations(e3(), Flavor::plain).delta1.has_value());

    for (const auto& a : small_menger_algebras(12, 4)) {
        const auto dm = delta_relations(a);
        const std::size_t depth = max_frame_depth(a);
        if (depth <= 6 && a.size() <= 3) CHECK(dm.delta2 == brute_delta2(a, depth, true));
        CHECK(BinRelation::diagonal(a.size()).is_subset_of(*dm.delta1));
        CHECK(literal_quasi_order(*dm.delta1));
        CHECK(literal_l_regular(*dm.delta1, a, true));
        CHECK(literal_l_regular(dm.delta2, a, true));
        CHECK(literal_l_regular(delta_relations(a, Flavor::plain).delta2, a, false));

        // For quasi-orders, v-negativity is containment of δ1 ∪ δ2.
        if (a.size() > 4) continue;
        for_each_relation(a.size(), RelationFilter::quasi_orders, [&](const BinRelation& r) {
            const bool contains = dm.delta1->is_subset_of(r) && dm.delta2.is_subset_of(r);
            CHECK(is_v_negative(r, a).passed() == contains);
        });
    }
}

TEST_CASE("closures") {
    CHECK(closure_chi(e3(), std::nullopt, ClosureKind::chi0) == e3_chi0());
    CHECK(closure_chi(e3(), BinRelation::diagonal(2), ClosureKind::chi_pi) == e3_chi0());
    for (ClosureKind k : {ClosureKind::chi_pi, ClosureKind::chi0, ClosureKind::chi_pi_bullet, ClosureKind::chi0_bullet})
        CHECK(closure_chi(e2(), BinRelation::full(1), k) == BinRelation::full(1));

    CHECK_THROWS_AS(closure_chi(e3(), std::nullopt, ClosureKind::chi_pi), InputError);
    CHECK_THROWS_AS(closure_chi(e3(Flavor::plain), std::nullopt, ClosureKind::chi0), InputError);
    // {(Θ,q),(q,Θ)} ∪ Δ = full is l-regular; a non-equivalence is rejected.
    CHECK_THROWS_AS(closure_chi(e3(), e3_chi0(), ClosureKind::chi_pi), InputError);
    CHECK(closure_chi(e3(), BinRelation::full(2), ClosureKind::chi_pi) == BinRelation::full(2));

    CHECK(parse_closure_kind("chi-pi-bullet") == ClosureKind::chi_pi_bullet);
    CHECK(parse_closure_kind("chi-bullet") == ClosureKind::chi_pi_bullet);
    CHECK_THROWS_AS(parse_closure_kind("chi"), InputError);

    for (const auto& a : small_menger_algebras(12, 5))
        for (ClosureKind k : {ClosureKind::chi0, ClosureKind::chi0_bullet}) {
            const auto chi = closure_chi(a, std::nullopt, k);
            const Flavor f = closure_flavor(k);
            CHECK(literal_quasi_order(chi));
            CHECK(literal_l_regular(chi, a, f == Flavor::menger));
            CHECK(is_v_negative(chi, a, f).passed());
        }
}

TEST_CASE("compatibility") {
    CHECK(check_compatibility(e3_chi0(), BinRelation::full(2)).passed());
    CHECK(check_compatibility(e3_chi0(), rel(2, {{kQ, kQ}})).passed());
    // Θ γ Θ with Θ χ Θ and Θ χ q forces Θ γ q.
    const auto gamma = rel(2, {{kQ, kQ}, {kTheta, kTheta}});
    const Verdict v = check_compatibility(e3_chi0(), gamma);
    REQUIRE_FALSE(v.passed());
    CHECK(v.counterexample().rule == "compatibility");
    const auto& e = v.counterexample().elements;
    CHECK(gamma.contains(e[0], e[1]));
    CHECK(e3_chi0().contains(e[0], e[2]));
    CHECK(e3_chi0().contains(e[1], e[3]));
    CHECK_FALSE(gamma.contains(e[2], e[3]));
}

TEST_CASE("kernel inclusion") {
    CHECK(check_kernel_inclusion(e3_chi0(), BinRelation::diagonal(2)).passed());
    CHECK_FALSE(check_kernel_inclusion(BinRelation::full(2), BinRelation::diagonal(2)).passed());
}

TEST_CASE("word systems") {
    const WordSystemBounds four{4, 4};
    for (WordSystem s : {WordSystem::A, WordSystem::B, WordSystem::C, WordSystem::A_bullet, WordSystem::B_bullet,
                         WordSystem::C_bullet})
        CHECK(check_word_system(e2(), BinRelation::full(1), BinRelation::full(1), s, four).passed());

    CHECK(check_word_system(e3(), BinRelation::diagonal(2), std::nullopt, WordSystem::A, four).passed());
    const auto gamma = rel(2, {{kQ, kQ}});
    CHECK(check_word_system(e3(), BinRelation::diagonal(2), gamma, WordSystem::B, {3, 3}).passed());
    CHECK(check_compatibility(closure_chi(e3(), BinRelation::diagonal(2), ClosureKind::chi_pi), gamma).passed());
    CHECK_THROWS_AS(check_word_system(e3(), BinRelation::diagonal(2), std::nullopt, WordSystem::B, four), InputError);

    // Power-based decision agrees with spelled-out chains.
    auto sweep = [&](const AbstractAlgebra& a, std::initializer_list<WordSystem> systems) {
        const std::size_t m = a.size();
        const Flavor f = *systems.begin() == WordSystem::A ? Flavor::menger : Flavor::plain;
        std::vector<BinRelation> gammas;
        for_each_relation(m, RelationFilter::all, [&](const BinRelation& g) {
            if (basic_relation_properties(g).symmetric) gammas.push_back(g);
        });
        for (const auto& pi : enumerate_relations(m, RelationFilter::l_regular_equivalences, &a)) {
            if (!is_l_regular_equivalence(pi, a, f).passed()) continue;
            for (const auto& g : gammas)
                for (WordSystem s : systems) {
                    const WordSystemBounds b{3, 2};
                    const Verdict got = check_word_system(a, pi, g, s, b);
                    CHECK(got.passed() == literal_word_system(a, pi, g, s, b));
                }
        }
    };
    for (const auto& a : small_menger_algebras(6, 3)) sweep(a, {WordSystem::A, WordSystem::B, WordSystem::C});
    for (const auto& a : small_plain_algebras(6, 3))
        sweep(a, {WordSystem::A_bullet, WordSystem::B_bullet, WordSystem::C_bullet});
}
