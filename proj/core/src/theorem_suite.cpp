#include "mengerkit/theorem_suite.hpp"

#include <algorithm>
#include <cstdint>

#include "mengerkit/instance_forge.hpp"

namespace mengerkit {
namespace {

struct View {
    Flavor flavor;
    AbstractAlgebra algebra;
};

View view_of(const AbstractAlgebra& algebra, std::optional<Flavor> flavor) {
    const Flavor f = flavor.value_or(algebra.flavor());
    if (f == Flavor::menger && algebra.flavor() != Flavor::menger)
        throw InputError("menger semantics requested on a plain algebra");
    return View{f, f == Flavor::plain ? algebra.as_plain() : algebra};
}

ClosureKind pi_kind(Flavor f) { return f == Flavor::menger ? ClosureKind::chi_pi : ClosureKind::chi_pi_bullet; }
ClosureKind zero_kind(Flavor f) { return f == Flavor::menger ? ClosureKind::chi0 : ClosureKind::chi0_bullet; }

Verdict check_kernel_equality(const BinRelation& chi, const BinRelation& pi) {
    const BinRelation kernel = chi & chi.inverse();
    for (Element a = 0; a < chi.size(); ++a)
        for (Element b = 0; b < chi.size(); ++b) {
            if (kernel.contains(a, b) == pi.contains(a, b)) continue;
            Counterexample c;
            c.rule = "pi-kernel";
            c.elements = {a, b};
            c.detail = "(" + std::to_string(a) + "," + std::to_string(b) + ") is " +
                       (pi.contains(a, b) ? "in pi but not in" : "not in pi but in") + " chi ∩ chi^-1";
            return Verdict::fail(std::move(c));
        }
    return Verdict::pass();
}

Verdict check_algebra(const View& v) {
    if (Verdict r = check_representability(v.algebra); !r) return r;
    if (v.flavor == Flavor::menger) return check_menger_identities(v.algebra);
    return Verdict::pass();
}

bool gamma_target(TargetKind kind) {
    return kind == TargetKind::triplet || kind == TargetKind::pair_chi_gamma || kind == TargetKind::pair_gamma_pi ||
           kind == TargetKind::single_gamma;
}

BinRelation construction_chi(const View& v, const Target& target) {
    switch (target.kind) {
        case TargetKind::triplet:
        case TargetKind::pair_chi_gamma:
        case TargetKind::pair_chi_pi:
        case TargetKind::single_chi: return *target.chi;
        case TargetKind::pair_gamma_pi:
        case TargetKind::single_pi: return closure_chi(v.algebra, target.pi, pi_kind(v.flavor));
        case TargetKind::single_gamma: return closure_chi(v.algebra, std::nullopt, zero_kind(v.flavor));
    }
    throw InputError("unknown target kind");
}

}  // namespace

const char* to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::triplet: return "triplet";
        case TargetKind::pair_chi_gamma: return "pair_chi_gamma";
        case TargetKind::pair_gamma_pi: return "pair_gamma_pi";
        case TargetKind::pair_chi_pi: return "pair_chi_pi";
        case TargetKind::single_chi: return "single_chi";
        case TargetKind::single_gamma: return "single_gamma";
        case TargetKind::single_pi: return "single_pi";
    }
    return "?";
}

TargetKind parse_target_kind(const std::string& text) {
    std::string key = text;
    std::replace(key.begin(), key.end(), '-', '_');
    for (TargetKind k : {TargetKind::triplet, TargetKind::pair_chi_gamma, TargetKind::pair_gamma_pi,
                         TargetKind::pair_chi_pi, TargetKind::single_chi, TargetKind::single_gamma,
                         TargetKind::single_pi})
        if (key == to_string(k)) return k;
    throw InputError("unknown target '" + text + "'");
}

bool target_uses_chi(TargetKind kind) {
    return kind == TargetKind::triplet || kind == TargetKind::pair_chi_gamma || kind == TargetKind::pair_chi_pi ||
           kind == TargetKind::single_chi;
}

bool target_uses_gamma(TargetKind kind) {
    return kind == TargetKind::triplet || kind == TargetKind::pair_chi_gamma || kind == TargetKind::pair_gamma_pi ||
           kind == TargetKind::single_gamma;
}

bool target_uses_pi(TargetKind kind) {
    return kind == TargetKind::triplet || kind == TargetKind::pair_gamma_pi || kind == TargetKind::pair_chi_pi ||
           kind == TargetKind::single_pi;
}

Target Target::triplet(BinRelation chi, BinRelation gamma, BinRelation pi) {
    return {TargetKind::triplet, std::move(chi), std::move(gamma), std::move(pi)};
}
Target Target::chi_gamma(BinRelation chi, BinRelation gamma) {
    return {TargetKind::pair_chi_gamma, std::move(chi), std::move(gamma), std::nullopt};
}
Target Target::gamma_pi(BinRelation gamma, BinRelation pi) {
    return {TargetKind::pair_gamma_pi, std::nullopt, std::move(gamma), std::move(pi)};
}
Target Target::chi_pi(BinRelation chi, BinRelation pi) {
    return {TargetKind::pair_chi_pi, std::move(chi), std::nullopt, std::move(pi)};
}
Target Target::only_chi(BinRelation chi) { return {TargetKind::single_chi, std::move(chi), std::nullopt, std::nullopt}; }
Target Target::only_gamma(BinRelation gamma) {
    return {TargetKind::single_gamma, std::nullopt, std::move(gamma), std::nullopt};
}
Target Target::only_pi(BinRelation pi) { return {TargetKind::single_pi, std::nullopt, std::nullopt, std::move(pi)}; }

void Target::validate(std::size_t carrier_size) const {
    auto need = [&](bool used, const std::optional<BinRelation>& r, const char* name) {
        if (!used) return;
        if (!r) throw InputError(std::string("target ") + to_string(kind) + " needs " + name);
        if (r->size() != carrier_size)
            throw InputError(std::string(name) + " has size " + std::to_string(r->size()) + ", carrier has " +
                             std::to_string(carrier_size));
    };
    need(target_uses_chi(kind), chi, "chi");
    need(target_uses_gamma(kind), gamma, "gamma");
    need(target_uses_pi(kind), pi, "pi");
}

std::string theorem_id(TargetKind kind, Flavor flavor) {
    const bool menger = flavor == Flavor::menger;
    switch (kind) {
        case TargetKind::triplet: return "T1";
        case TargetKind::pair_chi_gamma: return "T1a";
        case TargetKind::pair_gamma_pi: return menger ? "T2" : "T11";
        case TargetKind::pair_chi_pi: return "T4";
        case TargetKind::single_chi: return "T5";
        case TargetKind::single_pi: return "T6";
        case TargetKind::single_gamma: return menger ? "T8" : "T12";
    }
    return "?";
}

bool ConditionsReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.verdict.passed(); });
}

ConditionsReport verify_conditions(const AbstractAlgebra& algebra, const Target& target,
                                   std::optional<Flavor> flavor) {
    target.validate(algebra.size());
    const View v = view_of(algebra, flavor);
    const AbstractAlgebra& g = v.algebra;
    ConditionsReport report;
    auto add = [&](std::string name, Verdict verdict) { report.checks.push_back({std::move(name), std::move(verdict)}); };

    add("algebra representable", check_algebra(v));
    if (target_uses_chi(target.kind))
        add("chi l-regular v-negative quasi-order", is_l_regular_v_negative_quasi_order(*target.chi, g, v.flavor));
    if (target_uses_gamma(target.kind))
        add("gamma l-cancellative 0-quasi-equivalence",
            is_l_cancellative_zero_quasi_equivalence(*target.gamma, g, v.flavor));

    switch (target.kind) {
        case TargetKind::triplet:
            add("pi = chi ∩ chi^-1", check_kernel_equality(*target.chi, *target.pi));
            add("compatibility(chi, gamma)", check_compatibility(*target.chi, *target.gamma));
            break;
        case TargetKind::pair_chi_gamma:
            add("compatibility(chi, gamma)", check_compatibility(*target.chi, *target.gamma));
            break;
        case TargetKind::pair_chi_pi:
            add("pi = chi ∩ chi^-1", check_kernel_equality(*target.chi, *target.pi));
            break;
        case TargetKind::single_chi: break;
        case TargetKind::pair_gamma_pi:
        case TargetKind::single_pi: {
            Verdict eq = is_l_regular_equivalence(*target.pi, g, v.flavor);
            const bool ok = eq.passed();
            add("pi l-regular equivalence", std::move(eq));
            if (!ok) break;
            const BinRelation chi_pi = closure_chi(g, target.pi, pi_kind(v.flavor));
            add("chi(pi) ∩ chi(pi)^-1 ⊆ pi", check_kernel_inclusion(chi_pi, *target.pi));
            if (target.kind == TargetKind::pair_gamma_pi)
                add("compatibility(chi(pi), gamma)", check_compatibility(chi_pi, *target.gamma));
            break;
        }
        case TargetKind::single_gamma:
            add("compatibility(chi0, gamma)",
                check_compatibility(closure_chi(g, std::nullopt, zero_kind(v.flavor)), *target.gamma));
            break;
    }
    return report;
}

bool RoundtripReport::passed() const {
    const bool relations = std::all_of(matches.begin(), matches.end(), [](const RelationMatch& m) { return m.equal(); });
    const bool faithful_ok = !faithful || (faithful->faithful && faithful->sum_identity);
    return relations && homomorphism.passed() && faithful_ok;
}

bool CrosscheckReport::divergent() const {
    return std::any_of(systems.begin(), systems.end(), [](const SystemCrosscheck& s) { return s.divergent(); });
}

bool TheoremVerdict::passed() const {
    return conditions.passed() && roundtrip && roundtrip->passed() && !(crosscheck && crosscheck->divergent());
}

Representation prescribed_representation(const AbstractAlgebra& algebra, const Target& target,
                                         std::optional<Flavor> flavor, UniverseOptions universe_options) {
    target.validate(algebra.size());
    const View v = view_of(algebra, flavor);
    const AbstractAlgebra& g = v.algebra;
    const BinRelation chi = construction_chi(v, target);

    if (Verdict r = is_l_regular_v_negative_quasi_order(chi, g, v.flavor); !r)
        throw InputError("construction chi is not an l-regular v-negative quasi-order: " + describe(r));
    if (Verdict r = check_algebra(v); !r) throw InputError("algebra is not representable: " + describe(r));

    universe_options.flavor = v.flavor;
    auto universe = std::make_shared<const PointUniverse>(build_universe(g, universe_options));
    if (universe_options.debug_witnesses)
        if (Verdict r = cross_witness_check(*universe, g); !r)
            throw InputError("witness words disagree: " + describe(r));

    std::vector<Representation> parts;
    if (gamma_target(target.kind)) {
        for (auto [h1, h2] : target.gamma->pairs())
            parts.push_back(build_representation(g, chi, PairMode{h1, h2}, universe));
    } else {
        for (Element a = 0; a < g.size(); ++a) parts.push_back(build_representation(g, chi, PairMode{a, a}, universe));
    }
    if (parts.empty()) return Representation(g.arity(), g.size(), v.flavor, {});
    return sum_representations(parts);
}

std::vector<RelationMatch> match_relations(const Representation& rep, const Target& target) {
    const RepresentationRelations rel = representation_relations(rep);
    std::vector<RelationMatch> out;
    if (target_uses_chi(target.kind)) out.push_back({"chi", *target.chi, rel.chi});
    if (target_uses_gamma(target.kind)) out.push_back({"gamma", *target.gamma, rel.gamma});
    if (target_uses_pi(target.kind)) out.push_back({"pi", *target.pi, rel.pi});
    return out;
}

TheoremVerdict roundtrip(const AbstractAlgebra& algebra, const Target& target, std::optional<Flavor> flavor,
                         const ConcreteAlgebra* concrete_origin, WordSystemBounds bounds) {
    const View v = view_of(algebra, flavor);
    TheoremVerdict verdict;
    verdict.theorem = theorem_id(target.kind, v.flavor);
    verdict.conditions = verify_conditions(algebra, target, v.flavor);
    if (!verdict.conditions.passed()) return verdict;

    const Representation rep = prescribed_representation(algebra, target, v.flavor);
    RoundtripReport report;
    report.matches = match_relations(rep, target);
    report.homomorphism = verify_homomorphism(rep, v.algebra);
    report.part_count = rep.parts().size();

    if (concrete_origin && !gamma_target(target.kind)) {
        if (concrete_origin->size() != algebra.size())
            throw InputError("concrete origin does not match the algebra's carrier");
        const Representation lambda = identity_representation(*concrete_origin);
        const Representation sum = sum_representations({lambda, rep});
        const RepresentationRelations rl = representation_relations(lambda);
        const RepresentationRelations rp = representation_relations(rep);
        const RepresentationRelations rs = representation_relations(sum);
        FaithfulReport f;
        f.faithful = is_faithful(sum).passed();
        f.sum_identity = rs.chi == (rl.chi & rp.chi) && rs.pi == (rl.pi & rp.pi);
        const auto matches = match_relations(sum, target);
        f.realizes_target =
            std::all_of(matches.begin(), matches.end(), [](const RelationMatch& m) { return m.equal(); });
        report.faithful = f;
    }
    verdict.roundtrip = std::move(report);

    if (target.kind == TargetKind::pair_gamma_pi || target.kind == TargetKind::single_pi ||
        target.kind == TargetKind::single_gamma)
        verdict.crosscheck = word_system_crosscheck(algebra, target.pi, target.gamma, bounds, v.flavor);
    return verdict;
}

BinRelation least_quasiorder_oracle(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                                    std::optional<Flavor> flavor, std::size_t cap) {
    const std::size_t m = algebra.size();
    if (m > cap) throw CapacityError("oracle enumerates 2^(m^2) relations; m exceeds cap " + std::to_string(cap), m);
    const View v = view_of(algebra, flavor);
    if (pi && pi->size() != m) throw InputError("pi does not match the carrier size");

    const std::size_t bits = m * m;
    BinRelation meet = BinRelation::full(m);
    std::vector<std::uint32_t> rows(m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        bool ok = true;
        for (std::size_t a = 0; a < m; ++a) {
            rows[a] = static_cast<std::uint32_t>((mask >> (a * m)) & ((1u << m) - 1));
            if (!((rows[a] >> a) & 1u)) ok = false;
        }
        for (std::size_t a = 0; a < m && ok; ++a)
            for (std::size_t b = 0; b < m && ok; ++b)
                if (((rows[a] >> b) & 1u) && (rows[b] & ~rows[a])) ok = false;
        if (!ok) continue;
        BinRelation r(m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if ((rows[a] >> b) & 1u) r.insert(static_cast<Element>(a), static_cast<Element>(b));
        if (pi && !pi->is_subset_of(r)) continue;
        if (!is_l_regular(r, v.algebra, v.flavor) || !is_v_negative(r, v.algebra, v.flavor)) continue;
        meet &= r;
    }
    return meet;
}

CrosscheckReport word_system_crosscheck(const AbstractAlgebra& algebra, const std::optional<BinRelation>& pi,
                                        const std::optional<BinRelation>& gamma, WordSystemBounds bounds,
                                        std::optional<Flavor> flavor) {
    const View v = view_of(algebra, flavor);
    const AbstractAlgebra& g = v.algebra;
    const bool menger = v.flavor == Flavor::menger;
    const std::size_t m = g.size();

    CrosscheckReport report;
    if (pi && gamma) report.theorem = menger ? "T3" : "T11";
    else if (pi) report.theorem = menger ? "T7" : "T11";
    else report.theorem = menger ? "T9" : "T12";

    std::optional<BinRelation> chi_pi;
    std::optional<BinRelation> chi_zero;
    const bool covers = bounds.max_n >= m && bounds.max_m >= m;

    std::vector<WordSystem> systems;
    if (pi) systems.push_back(menger ? WordSystem::A : WordSystem::A_bullet);
    if (pi && gamma) systems.push_back(menger ? WordSystem::B : WordSystem::B_bullet);
    if (gamma) systems.push_back(menger ? WordSystem::C : WordSystem::C_bullet);

    for (WordSystem s : systems) {
        SystemCrosscheck sc;
        sc.system = s;
        if (needs_pi(s) && !chi_pi) chi_pi = closure_chi(g, pi, pi_kind(v.flavor));
        if (!needs_pi(s) && !chi_zero) chi_zero = closure_chi(g, std::nullopt, zero_kind(v.flavor));
        if (s == WordSystem::A || s == WordSystem::A_bullet) {
            sc.exact_pass = check_kernel_inclusion(*chi_pi, *pi).passed();
            sc.complete_bounds = bounds.max_n >= m;
        } else if (s == WordSystem::B || s == WordSystem::B_bullet) {
            sc.exact_pass = check_compatibility(*chi_pi, *gamma).passed();
            sc.complete_bounds = covers;
        } else {
            sc.exact_pass = check_compatibility(*chi_zero, *gamma).passed();
            sc.complete_bounds = covers && *gamma == gamma->inverse();
        }
        sc.truncated_pass = check_word_system(g, pi, gamma, s, bounds).passed();
        report.systems.push_back(sc);
    }
    return report;
}

}  // namespace mengerkit
