#include "mengerkit/relation_lab.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace mengerkit {
namespace {

bool advance(std::vector<Element>& digits, std::size_t m) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < m) return true;
        digits[pos] = 0;
    }
    return false;
}

Flavor resolve(const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    const Flavor f = as.value_or(algebra.flavor());
    if (f == Flavor::menger && algebra.flavor() != Flavor::menger)
        throw InputError("menger semantics requested on a plain algebra");
    return f;
}

void require_size(const BinRelation& r, const AbstractAlgebra& algebra, const char* what) {
    if (r.size() != algebra.size())
        throw InputError(std::string(what) + " has size " + std::to_string(r.size()) + ", carrier has " +
                         std::to_string(algebra.size()));
}

std::string list(std::span<const Element> values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
    return out.str();
}

Verdict fail(std::string rule, std::vector<Element> elements, std::optional<std::size_t> slot, std::string detail,
             std::vector<CompositionWord> words = {}) {
    Counterexample c;
    c.rule = std::move(rule);
    c.elements = std::move(elements);
    c.slot = slot;
    c.detail = std::move(detail);
    c.words = std::move(words);
    return Verdict::fail(std::move(c));
}

std::string pair_text(Element a, Element b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Verdict quasi_order_verdict(const BinRelation& r, bool symmetric_too) {
    const std::size_t m = r.size();
    for (Element a = 0; a < m; ++a)
        if (!r.contains(a, a)) return fail("reflexivity", {a}, std::nullopt, pair_text(a, a) + " missing");
    for (Element a = 0; a < m; ++a)
        for (Element b : r.successors(a))
            for (Element c : r.successors(b))
                if (!r.contains(a, c))
                    return fail("transitivity", {a, b, c}, std::nullopt,
                                pair_text(a, b) + " and " + pair_text(b, c) + " present but " + pair_text(a, c) +
                                    " missing");
    if (symmetric_too)
        for (Element a = 0; a < m; ++a)
            for (Element b : r.successors(a))
                if (!r.contains(b, a))
                    return fail("symmetry", {a, b}, std::nullopt,
                                pair_text(a, b) + " present but " + pair_text(b, a) + " missing");
    return Verdict::pass();
}

// Word-indexed part of δ2: (x·w, μ_j(w)) for every frame and occupied slot j.
BinRelation word_delta(const AbstractAlgebra& algebra) {
    BinRelation out(algebra.size());
    auto space = reachable_frames(algebra);
    for (const MuFrame& f : space->frames())
        for (StarElement s : f.mu_star) {
            if (s.is_sentinel()) continue;
            for (Element x = 0; x < algebra.size(); ++x) out.insert(f.action[x], s.element());
        }
    return out;
}

}  // namespace

Verdict is_zero_quasi_equivalence(const BinRelation& r, const AbstractAlgebra& algebra) {
    require_size(r, algebra, "relation");
    const std::size_t m = r.size();
    for (Element a = 0; a < m; ++a)
        for (Element b : r.successors(a))
            if (!r.contains(b, a))
                return fail("symmetry", {a, b}, std::nullopt,
                            pair_text(a, b) + " present but " + pair_text(b, a) + " missing");
    const auto zero = algebra.zero();
    const bool full_reflexive = !zero || !r.row_empty(*zero);
    for (Element a = 0; a < m; ++a) {
        if (!full_reflexive && a == *zero) continue;
        if (!r.contains(a, a))
            return fail(full_reflexive ? "reflexivity" : "zero-reflexivity", {a}, std::nullopt,
                        pair_text(a, a) + " missing");
    }
    return Verdict::pass();
}

Verdict is_l_regular(const BinRelation& r, const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    require_size(r, algebra, "relation");
    const Flavor flavor = resolve(algebra, as);
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    for (Element x = 0; x < m; ++x)
        for (Element y : r.successors(x))
            for (std::size_t slot = 0; slot < n; ++slot)
                for (Element z = 0; z < m; ++z) {
                    const Element u = algebra.mann(slot, x, z);
                    const Element v = algebra.mann(slot, y, z);
                    if (!r.contains(u, v))
                        return fail("l-regular-mann", {x, y, z}, slot,
                                    pair_text(x, y) + " in r but " + pair_text(u, v) + " = " + pair_text(x, y) +
                                        " (+" + std::to_string(slot + 1) + " " + std::to_string(z) + ") is not");
                }
    if (flavor != Flavor::menger || m == 0) return Verdict::pass();
    std::vector<Element> zs(n, 0);
    do {
        for (Element x = 0; x < m; ++x)
            for (Element y : r.successors(x)) {
                const Element u = algebra.superpose(x, zs);
                const Element v = algebra.superpose(y, zs);
                if (!r.contains(u, v)) {
                    std::vector<Element> e{x, y};
                    e.insert(e.end(), zs.begin(), zs.end());
                    return fail("l-regular-superposition", std::move(e), std::nullopt,
                                pair_text(x, y) + " in r but " + pair_text(u, v) + " at [" + list(zs) + "] is not");
                }
            }
    } while (advance(zs, m));
    return Verdict::pass();
}

Verdict is_l_cancellative(const BinRelation& r, const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    require_size(r, algebra, "relation");
    const Flavor flavor = resolve(algebra, as);
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    for (Element x = 0; x < m; ++x)
        for (Element y = 0; y < m; ++y) {
            if (r.contains(x, y)) continue;
            for (std::size_t slot = 0; slot < n; ++slot)
                for (Element z = 0; z < m; ++z) {
                    const Element u = algebra.mann(slot, x, z);
                    const Element v = algebra.mann(slot, y, z);
                    if (r.contains(u, v))
                        return fail("l-cancellative-mann", {x, y, z}, slot,
                                    pair_text(u, v) + " in r for z=" + std::to_string(z) + " but " +
                                        pair_text(x, y) + " is not");
                }
        }
    if (flavor != Flavor::menger || m == 0) return Verdict::pass();
    std::vector<Element> zs(n, 0);
    do {
        for (Element x = 0; x < m; ++x)
            for (Element y = 0; y < m; ++y) {
                if (r.contains(x, y)) continue;
                const Element u = algebra.superpose(x, zs);
                const Element v = algebra.superpose(y, zs);
                if (r.contains(u, v)) {
                    std::vector<Element> e{x, y};
                    e.insert(e.end(), zs.begin(), zs.end());
                    return fail("l-cancellative-superposition", std::move(e), std::nullopt,
                                pair_text(u, v) + " in r at [" + list(zs) + "] but " + pair_text(x, y) + " is not");
                }
            }
    } while (advance(zs, m));
    return Verdict::pass();
}

Verdict is_v_negative(const BinRelation& r, const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    require_size(r, algebra, "relation");
    const Flavor flavor = resolve(algebra, as);
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    if (flavor == Flavor::menger && m > 0) {
        std::vector<Element> v(n + 1, 0);
        do {
            std::span<const Element> ys(v.data() + 1, n);
            const Element lhs = algebra.superpose(v[0], ys);
            for (std::size_t i = 0; i < n; ++i)
                if (!r.contains(lhs, ys[i]))
                    return fail("v-negative-superposition", v, i,
                                std::to_string(v[0]) + "[" + list(ys) + "] = " + std::to_string(lhs) +
                                    " but " + pair_text(lhs, ys[i]) + " not in r");
        } while (advance(v, m));
    }
    auto space = reachable_frames(algebra);
    auto frames = space->frames();
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const MuFrame& f = frames[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (f.mu_star[j].is_sentinel()) continue;
            const Element mu = f.mu_star[j].element();
            for (Element x = 0; x < m; ++x) {
                if (r.contains(f.action[x], mu)) continue;
                CompositionWord w = space->witness(k);
                std::string detail = "x=" + std::to_string(x) + " word " + to_string(w) + ": " +
                                     pair_text(f.action[x], mu) + " not in r";
                return fail("v-negative-word", {x, f.action[x], mu}, j, std::move(detail), {std::move(w)});
            }
        }
    }
    return Verdict::pass();
}

Verdict is_l_regular_v_negative_quasi_order(const BinRelation& r, const AbstractAlgebra& algebra,
                                            std::optional<Flavor> as) {
    require_size(r, algebra, "relation");
    if (Verdict v = quasi_order_verdict(r, false); !v) return v;
    if (Verdict v = is_l_regular(r, algebra, as); !v) return v;
    return is_v_negative(r, algebra, as);
}

Verdict is_l_regular_equivalence(const BinRelation& r, const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    require_size(r, algebra, "relation");
    if (Verdict v = quasi_order_verdict(r, true); !v) return v;
    return is_l_regular(r, algebra, as);
}

Verdict is_l_cancellative_zero_quasi_equivalence(const BinRelation& r, const AbstractAlgebra& algebra,
                                                 std::optional<Flavor> as) {
    if (Verdict v = is_zero_quasi_equivalence(r, algebra); !v) return v;
    return is_l_cancellative(r, algebra, as);
}

bool TranslationSet::contains(const std::vector<Element>& map) const {
    return std::find(maps_.begin(), maps_.end(), map) != maps_.end();
}

TranslationSet translations(const AbstractAlgebra& algebra) {
    if (algebra.flavor() != Flavor::menger) throw InputError("translations need a menger algebra");
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    const std::size_t cap = algebra.options().frame_cap;
    std::vector<std::vector<Element>> maps;
    std::set<std::vector<Element>> seen;
    std::vector<Element> id(m);
    for (Element x = 0; x < m; ++x) id[x] = x;
    seen.insert(id);
    maps.push_back(std::move(id));
    if (m == 0) return TranslationSet(std::move(maps));

    std::vector<Element> args(n);
    std::vector<Element> others(n - 1);
    for (std::size_t next = 0; next < maps.size(); ++next) {
        for (std::size_t slot = 0; slot < n; ++slot) {
            std::fill(others.begin(), others.end(), 0);
            do {
                for (std::size_t k = 0, o = 0; k < n; ++k)
                    if (k != slot) args[k] = others[o++];
                for (Element a = 0; a < m; ++a) {
                    std::vector<Element> image(m);
                    for (Element x = 0; x < m; ++x) {
                        args[slot] = maps[next][x];
                        image[x] = algebra.superpose(a, args);
                    }
                    if (!seen.insert(image).second) continue;
                    if (maps.size() >= cap)
                        throw CapacityError("translation set exceeded cap of " + std::to_string(cap),
                                            maps.size() + 1);
                    maps.push_back(std::move(image));
                }
            } while (advance(others, m));
        }
    }
    return TranslationSet(std::move(maps));
}

DeltaRelations delta_relations(const AbstractAlgebra& algebra, std::optional<Flavor> as) {
    const Flavor flavor = resolve(algebra, as);
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    DeltaRelations out{std::nullopt, word_delta(algebra)};
    if (flavor != Flavor::menger) return out;

    BinRelation d1(m);
    const TranslationSet ts = translations(algebra);
    for (const auto& t : ts.maps())
        for (Element g = 0; g < m; ++g) d1.insert(t[g], g);
    out.delta1 = std::move(d1);

    const auto word_pairs = out.delta2.pairs();
    if (m == 0) return out;
    std::vector<Element> zs(n, 0);
    do {
        for (auto [u, v] : word_pairs) out.delta2.insert(algebra.superpose(u, zs), algebra.superpose(v, zs));
    } while (advance(zs, m));
    return out;
}

const char* to_string(ClosureKind kind) {
    switch (kind) {
        case ClosureKind::chi_pi: return "chi-pi";
        case ClosureKind::chi0: return "chi0";
        case ClosureKind::chi_pi_bullet: return "chi-bullet";
        case ClosureKind::chi0_bullet: return "chi0-bullet";
    }
    return "?";
}

ClosureKind parse_closure_kind(const std::string& text) {
    if (text == "chi-pi") return ClosureKind::chi_pi;
    if (text == "chi0") return ClosureKind::chi0;
    if (text == "chi-bullet" || text == "chi-pi-bullet") return ClosureKind::chi_pi_bullet;
    if (text == "chi0-bullet") return ClosureKind::chi0_bullet;
    throw InputError("unknown closure kind '" + text + "' (expected chi-pi, chi0, chi-bullet or chi0-bullet)");
}

bool uses_pi(ClosureKind kind) { return kind == ClosureKind::chi_pi || kind == ClosureKind::chi_pi_bullet; }

Flavor closure_flavor(ClosureKind kind) {
    return kind == ClosureKind::chi_pi || kind == ClosureKind::chi0 ? Flavor::menger : Flavor::plain;
}

BinRelation one_step_relation(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                              ClosureKind kind) {
    const Flavor flavor = closure_flavor(kind);
    if (flavor == Flavor::menger && algebra.flavor() != Flavor::menger)
        throw InputError(std::string("closure kind ") + to_string(kind) + " needs a menger algebra");
    if (uses_pi(kind)) {
        if (!pi) throw InputError(std::string("closure kind ") + to_string(kind) + " needs pi");
        require_size(*pi, algebra, "pi");
        if (Verdict v = is_l_regular_equivalence(*pi, algebra, flavor); !v)
            throw InputError("pi is not an l-regular equivalence: " + describe(v));
    }
    const DeltaRelations d = delta_relations(algebra, flavor);
    const BinRelation step = reflexive_closure(d.delta2);
    switch (kind) {
        case ClosureKind::chi_pi: return compose(step, compose(*d.delta1, *pi));
        case ClosureKind::chi0: return compose(step, *d.delta1);
        case ClosureKind::chi_pi_bullet: return compose(step, *pi);
        case ClosureKind::chi0_bullet: return step;
    }
    return step;
}

BinRelation closure_chi(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi, ClosureKind kind) {
    return transitive_closure(one_step_relation(algebra, pi, kind));
}

Verdict check_compatibility(const BinRelation& chi, const BinRelation& gamma) {
    if (chi.size() != gamma.size()) throw InputError("compatibility: relation size mismatch");
    const std::size_t m = chi.size();
    for (Element h1 = 0; h1 < m; ++h1) {
        if (gamma.row_empty(h1)) continue;
        for (Element h2 : gamma.successors(h1))
            for (Element g1 : chi.successors(h1)) {
                auto want = chi.row(h2);
                auto have = gamma.row(g1);
                for (std::size_t w = 0; w < want.size(); ++w) {
                    const std::uint64_t missing = want[w] & ~have[w];
                    if (!missing) continue;
                    const Element g2 = static_cast<Element>(w * 64 + std::countr_zero(missing));
                    return fail("compatibility", {h1, h2, g1, g2}, std::nullopt,
                                pair_text(h1, h2) + " in gamma, " + pair_text(h1, g1) + " and " +
                                    pair_text(h2, g2) + " in chi, but " + pair_text(g1, g2) + " not in gamma");
                }
            }
    }
    return Verdict::pass();
}

Verdict check_kernel_inclusion(const BinRelation& chi, const BinRelation& pi) {
    if (chi.size() != pi.size()) throw InputError("kernel inclusion: relation size mismatch");
    const BinRelation kernel = chi & chi.inverse();
    for (auto [a, b] : kernel.pairs())
        if (!pi.contains(a, b))
            return fail("kernel-inclusion", {a, b}, std::nullopt,
                        pair_text(a, b) + " in chi and its inverse but not in pi");
    return Verdict::pass();
}

const char* to_string(WordSystem system) {
    switch (system) {
        case WordSystem::A: return "A";
        case WordSystem::B: return "B";
        case WordSystem::C: return "C";
        case WordSystem::A_bullet: return "A-bullet";
        case WordSystem::B_bullet: return "B-bullet";
        case WordSystem::C_bullet: return "C-bullet";
    }
    return "?";
}

bool is_bullet(WordSystem system) {
    return system == WordSystem::A_bullet || system == WordSystem::B_bullet || system == WordSystem::C_bullet;
}

bool needs_gamma(WordSystem system) {
    return system != WordSystem::A && system != WordSystem::A_bullet;
}

bool needs_pi(WordSystem system) {
    return system != WordSystem::C && system != WordSystem::C_bullet;
}

ClosureKind system_closure_kind(WordSystem system) {
    switch (system) {
        case WordSystem::A:
        case WordSystem::B: return ClosureKind::chi_pi;
        case WordSystem::C: return ClosureKind::chi0;
        case WordSystem::A_bullet:
        case WordSystem::B_bullet: return ClosureKind::chi_pi_bullet;
        case WordSystem::C_bullet: return ClosureKind::chi0_bullet;
    }
    return ClosureKind::chi0;
}

Verdict check_word_system(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                          const std::optional<BinRelation>& gamma, WordSystem system, WordSystemBounds bounds) {
    if (needs_gamma(system)) {
        if (!gamma) throw InputError(std::string("word system ") + to_string(system) + " needs gamma");
        require_size(*gamma, algebra, "gamma");
    }
    if (needs_pi(system) && !pi) throw InputError(std::string("word system ") + to_string(system) + " needs pi");
    const std::size_t m = algebra.size();
    const BinRelation step = one_step_relation(algebra, needs_pi(system) ? pi : std::nullopt,
                                               system_closure_kind(system));

    // powers[k] = R^k; x R^k y means y is reachable from x in k steps.
    const std::size_t top = std::max(bounds.max_n, bounds.max_m);
    std::vector<BinRelation> powers{BinRelation::diagonal(m)};
    for (std::size_t k = 1; k <= top; ++k) powers.push_back(compose(step, powers.back()));

    const std::string name = to_string(system);
    if (system == WordSystem::A || system == WordSystem::A_bullet) {
        for (std::size_t n = 1; n <= bounds.max_n; ++n)
            for (Element x0 = 0; x0 < m; ++x0)
                for (Element x1 : step.successors(x0))
                    if (powers[n - 1].contains(x1, x0) && !pi->contains(x0, x1))
                        return fail("word-system-" + name, {x0, x1}, std::nullopt,
                                    name + "_" + std::to_string(n) + ": " + pair_text(x0, x1) +
                                        " chains both ways but is not in pi");
        return Verdict::pass();
    }
    const bool b_form = system == WordSystem::B || system == WordSystem::B_bullet;
    for (std::size_t n = 1; n <= bounds.max_n; ++n)
        for (std::size_t k = 1; k <= bounds.max_m; ++k)
            for (auto [h1, h2] : gamma->pairs())
                for (Element g1 : powers[n].successors(h1))
                    for (Element g2 : powers[k].successors(h2)) {
                        const Element left = b_form ? g1 : h1;
                        if (gamma->contains(left, g2)) continue;
                        return fail("word-system-" + name, {h1, h2, g1, g2}, std::nullopt,
                                    name + "_{" + std::to_string(n) + "," + std::to_string(k) + "}: " +
                                        pair_text(h1, h2) + " in gamma but " + pair_text(left, g2) + " is not");
                    }
    return Verdict::pass();
}

}  // namespace mengerkit
