#pragma once

// Fixtures and brute-force reference implementations shared by the test
// programs. The oracles here deliberately avoid the library's algorithms:
// words are enumerated explicitly, μ-tuples use the first-occurrence formula,
// and relation predicates are literal quantifier scans.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/instance_forge.hpp"
#include "mengerkit/partial_function.hpp"
#include "mengerkit/relation_lab.hpp"
#include "mengerkit/representation.hpp"
#include "mengerkit/theorem_suite.hpp"

namespace support {

using namespace mengerkit;

inline constexpr std::int32_t U = PartialFunction::kUndefined;

// n = 2 functions on A = {0,1}.
inline PartialFunction pf(std::vector<std::int32_t> table) { return PartialFunction(2, 2, std::move(table)); }
inline PartialFunction p1() { return pf({0, 0, 1, 1}); }
inline PartialFunction p2() { return pf({0, 1, 0, 1}); }
inline PartialFunction c0() { return pf({0, 0, 0, 0}); }
inline PartialFunction f_one() { return pf({1, U, U, U}); }
inline PartialFunction nothing() { return pf({U, U, U, U}); }

/// One-element algebra, every operation constant.
inline AbstractAlgebra e2(Flavor flavor = Flavor::menger) {
    AlgebraTables t;
    t.arity = 2;
    t.size = 1;
    t.flavor = flavor;
    t.mann = {{0}, {0}};
    if (flavor == Flavor::menger) t.superposition = {0};
    return AbstractAlgebra(t);
}

inline constexpr Element kTheta = 0;
inline constexpr Element kQ = 1;

/// {Θ, q}: Θ absorbs everything, q ⊕_i q = q, q[q,q] = q.
inline AbstractAlgebra e3(Flavor flavor = Flavor::menger) {
    AlgebraTables t;
    t.arity = 2;
    t.size = 2;
    t.flavor = flavor;
    t.mann = {{0, 0, 0, 1}, {0, 0, 0, 1}};
    if (flavor == Flavor::menger) t.superposition = {0, 0, 0, 0, 0, 0, 0, 1};
    return AbstractAlgebra(t);
}

inline BinRelation rel(std::size_t m, std::initializer_list<std::pair<Element, Element>> pairs) {
    return BinRelation::from_pairs(m, pairs);
}

/// χ0 on E3: Θ below q.
inline BinRelation e3_chi0() { return rel(2, {{kTheta, kTheta}, {kTheta, kQ}, {kQ, kQ}}); }

inline AlgebraTables tables_of(const AbstractAlgebra& a) { return a.tables(); }

// ---------------------------------------------------------------- words

/// Every word of length 1..max_length over the algebra's slots and elements.
inline std::vector<CompositionWord> all_words(std::size_t arity, std::size_t m, std::size_t max_length) {
    std::vector<CompositionWord> out;
    std::vector<CompositionWord> layer{{}};
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<CompositionWord> next;
        for (const auto& w : layer)
            for (std::size_t s = 0; s < arity; ++s)
                for (Element y = 0; y < m; ++y) {
                    CompositionWord v = w;
                    v.push_back({s, y});
                    next.push_back(v);
                }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

inline Element fold(const AbstractAlgebra& a, Element x, const CompositionWord& w) {
    for (const Step& s : w) x = a.tables().mann[s.slot][x * a.size() + s.element];
    return x;
}

/// μ_i(w) = y_k ⊕_{i_{k+1}} y_{k+1} … ⊕_{i_s} y_s with k the first occurrence of slot i.
inline ExtendedPoint mu_star_first_occurrence(const AbstractAlgebra& a, const CompositionWord& w) {
    ExtendedPoint out;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        std::size_t k = 0;
        while (k < w.size() && w[k].slot != i) ++k;
        if (k == w.size()) {
            out.push_back(StarElement::sentinel(i));
            continue;
        }
        Element v = w[k].element;
        for (std::size_t j = k + 1; j < w.size(); ++j) v = a.tables().mann[w[j].slot][v * a.size() + w[j].element];
        out.push_back(StarElement::element(v));
    }
    return out;
}

inline std::vector<Element> action_of(const AbstractAlgebra& a, const CompositionWord& w) {
    std::vector<Element> out;
    for (Element x = 0; x < a.size(); ++x) out.push_back(fold(a, x, w));
    return out;
}

using FrameKey = std::pair<ExtendedPoint, std::vector<Element>>;

/// (μ*, action) over all words up to a length.
inline std::set<FrameKey> brute_frames(const AbstractAlgebra& a, std::size_t max_length) {
    std::set<FrameKey> out;
    for (const auto& w : all_words(a.arity(), a.size(), max_length))
        out.insert({mu_star_first_occurrence(a, w), action_of(a, w)});
    return out;
}

/// Representability over words up to a length: equal μ* forces equal action.
inline bool brute_representable(const AbstractAlgebra& a, std::size_t max_length) {
    std::map<ExtendedPoint, std::vector<Element>> seen;
    for (const auto& w : all_words(a.arity(), a.size(), max_length)) {
        auto [it, fresh] = seen.emplace(mu_star_first_occurrence(a, w), action_of(a, w));
        if (!fresh && it->second != action_of(a, w)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- relations

inline bool literal_l_regular(const BinRelation& r, const AbstractAlgebra& a, bool menger) {
    const std::size_t m = a.size(), n = a.arity();
    for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
            if (!r.contains(x, y)) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (Element z = 0; z < m; ++z)
                    if (!r.contains(a.mann(i, x, z), a.mann(i, y, z))) return false;
            if (!menger) continue;
            std::vector<Element> zs(n, 0);
            while (true) {
                if (!r.contains(a.superpose(x, zs), a.superpose(y, zs))) return false;
                std::size_t k = n;
                while (k > 0 && ++zs[k - 1] == m) zs[--k] = 0;
                if (k == 0) break;
            }
        }
    return true;
}

/// v-negativity via explicit words up to a length, plus x[ȳ] r y_i in menger flavor.
inline bool literal_v_negative(const BinRelation& r, const AbstractAlgebra& a, bool menger, std::size_t max_length) {
    const std::size_t m = a.size(), n = a.arity();
    for (const auto& w : all_words(n, m, max_length)) {
        const ExtendedPoint mu = mu_star_first_occurrence(a, w);
        for (Element x = 0; x < m; ++x)
            for (const StarElement& s : mu)
                if (!s.is_sentinel() && !r.contains(fold(a, x, w), s.element())) return false;
    }
    if (!menger) return true;
    std::vector<Element> ys(n, 0);
    while (true) {
        for (Element x = 0; x < m; ++x)
            for (std::size_t i = 0; i < n; ++i)
                if (!r.contains(a.superpose(x, ys), ys[i])) return false;
        std::size_t k = n;
        while (k > 0 && ++ys[k - 1] == m) ys[--k] = 0;
        if (k == 0) break;
    }
    return true;
}

inline bool literal_quasi_order(const BinRelation& r) {
    const std::size_t m = r.size();
    for (Element a = 0; a < m; ++a)
        if (!r.contains(a, a)) return false;
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b)
            for (Element c = 0; c < m; ++c)
                if (r.contains(a, b) && r.contains(b, c) && !r.contains(a, c)) return false;
    return true;
}

inline BinRelation warshall(BinRelation r) {
    const std::size_t m = r.size();
    for (Element k = 0; k < m; ++k)
        for (Element i = 0; i < m; ++i)
            for (Element j = 0; j < m; ++j)
                if (r.contains(i, k) && r.contains(k, j)) r.insert(i, j);
    return r;
}

inline BinRelation literal_compose(const BinRelation& sigma, const BinRelation& rho) {
    const std::size_t m = rho.size();
    BinRelation out(m);
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b)
            for (Element c = 0; c < m; ++c)
                if (rho.contains(a, b) && sigma.contains(b, c)) out.insert(a, c);
    return out;
}

// ---------------------------------------------------------------- instances

inline ConcreteAlgebra instance(std::uint64_t seed, Flavor flavor, std::size_t base = 2, std::size_t gens = 2,
                                std::size_t cap = 12) {
    GeneratorConfig cfg;
    cfg.arity = 2;
    cfg.base_size = base;
    cfg.generator_count = gens;
    cfg.seed = seed;
    cfg.flavor = flavor;
    cfg.closure_cap = cap;
    cfg.max_retries = 64;
    return generate_concrete(cfg);
}

/// Domains compared cell by cell, independent of concrete_projection_relations.
struct DomainRelations {
    BinRelation chi, gamma, pi;
};

inline DomainRelations domain_relations(const std::vector<std::vector<bool>>& domains) {
    const std::size_t m = domains.size();
    DomainRelations out{BinRelation(m), BinRelation(m), BinRelation(m)};
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) {
            bool sub = true, meet = false;
            for (std::size_t c = 0; c < domains[a].size(); ++c) {
                if (domains[a][c] && !domains[b][c]) sub = false;
                if (domains[a][c] && domains[b][c]) meet = true;
            }
            bool sup = true;
            for (std::size_t c = 0; c < domains[a].size(); ++c)
                if (domains[b][c] && !domains[a][c]) sup = false;
            if (sub) out.chi.insert(a, b);
            if (meet) out.gamma.insert(a, b);
            if (sub && sup) out.pi.insert(a, b);
        }
    return out;
}

inline DomainRelations concrete_domains(const ConcreteAlgebra& phi) {
    std::vector<std::vector<bool>> domains;
    for (const auto& f : phi.functions()) {
        std::vector<bool> d;
        for (std::size_t c = 0; c < f.cell_count(); ++c) d.push_back(f.table()[c] != U);
        domains.push_back(d);
    }
    return domain_relations(domains);
}

inline DomainRelations representation_domains(const Representation& rep) {
    std::vector<std::vector<bool>> domains;
    for (Element g = 0; g < rep.carrier_size(); ++g) {
        std::vector<bool> d;
        for (const auto& part : rep.parts())
            for (auto v : part.assignment[g]) d.push_back(v != Representation::kUndefined);
        domains.push_back(d);
    }
    return domain_relations(domains);
}

// ---------------------------------------------------------------- witnesses

/// Re-evaluates a reported counterexample against the tables (and relation, for
/// relation rules). True when the witness really violates its rule.
inline bool witness_holds(const AbstractAlgebra& a, const Counterexample& c, const BinRelation* r = nullptr) {
    const std::size_t n = a.arity();
    const auto& e = c.elements;
    auto sup = [&](Element x, std::vector<Element> args) { return a.superpose(x, args); };
    const std::string& rule = c.rule;
    if (rule == "associativity") {
        const std::size_t i = c.slot.value();
        return a.mann(i, a.mann(i, e[0], e[1]), e[2]) != a.mann(i, e[0], a.mann(i, e[1], e[2]));
    }
    if (rule == "superassociativity") {
        std::vector<Element> xs(e.begin() + 1, e.begin() + 1 + n), ys(e.begin() + 1 + n, e.end()), inner;
        for (auto x : xs) inner.push_back(sup(x, ys));
        return sup(sup(e[0], xs), ys) != sup(e[0], inner);
    }
    if (rule == "mann-superposition") {
        const std::size_t i = c.slot.value();
        std::vector<Element> zs(e.begin() + 2, e.end()), args = zs;
        args[i] = sup(e[1], zs);
        return sup(a.mann(i, e[0], e[1]), zs) != sup(e[0], args);
    }
    if (rule == "superposition-mann") {
        const std::size_t i = c.slot.value();
        std::vector<Element> ys(e.begin() + 1, e.begin() + 1 + n), args;
        for (auto y : ys) args.push_back(a.mann(i, y, e[n + 1]));
        return a.mann(i, sup(e[0], ys), e[n + 1]) != sup(e[0], args);
    }
    if (rule == "word-superposition") {
        const ExtendedPoint mu = mu_star_first_occurrence(a, c.words.at(0));
        std::vector<Element> args;
        for (auto s : mu) {
            if (s.is_sentinel()) return false;
            args.push_back(s.element());
        }
        return fold(a, e[0], c.words[0]) != sup(e[0], args);
    }
    if (rule == "representability") {
        const auto& w1 = c.words.at(0);
        const auto& w2 = c.words.at(1);
        return mu_star_first_occurrence(a, w1) == mu_star_first_occurrence(a, w2) &&
               fold(a, e[0], w1) != fold(a, e[0], w2);
    }
    if (!r) return false;
    if (rule == "l-regular-mann") {
        const std::size_t i = c.slot.value();
        return r->contains(e[0], e[1]) && !r->contains(a.mann(i, e[0], e[2]), a.mann(i, e[1], e[2]));
    }
    if (rule == "l-regular-superposition") {
        std::vector<Element> zs(e.begin() + 2, e.end());
        return r->contains(e[0], e[1]) && !r->contains(sup(e[0], zs), sup(e[1], zs));
    }
    if (rule == "l-cancellative-mann") {
        const std::size_t i = c.slot.value();
        return !r->contains(e[0], e[1]) && r->contains(a.mann(i, e[0], e[2]), a.mann(i, e[1], e[2]));
    }
    if (rule == "l-cancellative-superposition") {
        std::vector<Element> zs(e.begin() + 2, e.end());
        return !r->contains(e[0], e[1]) && r->contains(sup(e[0], zs), sup(e[1], zs));
    }
    if (rule == "v-negative-superposition") {
        std::vector<Element> ys(e.begin() + 1, e.end());
        return !r->contains(sup(e[0], ys), ys[c.slot.value()]);
    }
    if (rule == "v-negative-word") {
        const auto mu = mu_star_first_occurrence(a, c.words.at(0));
        const auto s = mu[c.slot.value()];
        return !s.is_sentinel() && !r->contains(fold(a, e[0], c.words[0]), s.element());
    }
    if (rule == "symmetry") return r->contains(e[0], e[1]) && !r->contains(e[1], e[0]);
    if (rule == "reflexivity" || rule == "zero-reflexivity") return !r->contains(e[0], e[0]);
    if (rule == "transitivity")
        return r->contains(e[0], e[1]) && r->contains(e[1], e[2]) && !r->contains(e[0], e[2]);
    return false;
}

}  // namespace support
