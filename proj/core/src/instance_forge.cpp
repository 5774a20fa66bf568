#include "mengerkit/instance_forge.hpp"

#include <algorithm>
#include <random>

#include "mengerkit/relation_lab.hpp"

namespace mengerkit {
namespace {

constexpr std::size_t kAllRelationsCap = 4;
constexpr std::size_t kEquivalenceCap = 5;

// Uniform double in [0,1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<PartialFunction> draw_generators(const GeneratorConfig& cfg, std::mt19937_64& rng) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < cfg.arity; ++k) cells *= cfg.base_size;
    std::vector<PartialFunction> out;
    for (std::size_t i = 0; i < cfg.generator_count; ++i) {
        std::vector<std::int32_t> table(cells);
        for (auto& cell : table) {
            const bool undefined = unit(rng) < cfg.undefined_probability;
            const auto value = static_cast<std::int32_t>(rng() % cfg.base_size);
            cell = undefined ? PartialFunction::kUndefined : value;
        }
        out.emplace_back(cfg.arity, cfg.base_size, std::move(table));
    }
    return out;
}

BinRelation from_mask(std::size_t m, std::uint64_t mask) {
    BinRelation r(m);
    for (std::size_t bit = 0; bit < m * m; ++bit)
        if ((mask >> bit) & 1u) r.insert(static_cast<Element>(bit / m), static_cast<Element>(bit % m));
    return r;
}

void for_each_partition(std::size_t m, const std::function<void(const BinRelation&)>& visit) {
    // Restricted growth strings: block[0] = 0, block[i] <= 1 + max(block[0..i-1]).
    std::vector<std::size_t> block(m, 0);
    auto prefix_max = [&](std::size_t i) { return *std::max_element(block.begin(), block.begin() + i + 1); };
    while (true) {
        BinRelation r(m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (block[a] == block[b]) r.insert(static_cast<Element>(a), static_cast<Element>(b));
        visit(r);
        std::size_t i = m;
        while (i > 1 && block[i - 1] > prefix_max(i - 2)) --i;
        if (i <= 1) return;
        ++block[i - 1];
        std::fill(block.begin() + i, block.end(), 0);
    }
}

}  // namespace

ConcreteAlgebra generate_concrete(const GeneratorConfig& cfg) {
    if (cfg.arity == 0 || cfg.base_size == 0) throw InputError("generator config needs positive arity and base size");
    if (!(cfg.undefined_probability >= 0.0 && cfg.undefined_probability <= 1.0))
        throw InputError("undefined probability must lie in [0,1]");
    std::mt19937_64 rng(cfg.seed);
    std::size_t reached = 0;
    for (std::size_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        const auto generators = draw_generators(cfg, rng);
        try {
            return close_under_operations(cfg.arity, cfg.base_size, generators, cfg.flavor, cfg.closure_cap);
        } catch (const CapacityError& e) {
            reached = e.reached();
            rng.seed(rng());
        }
    }
    throw CapacityError("closure cap " + std::to_string(cfg.closure_cap) + " exceeded after " +
                            std::to_string(cfg.max_retries) + " retries",
                        reached);
}

void for_each_relation(std::size_t m, RelationFilter filter, const std::function<void(const BinRelation&)>& visit,
                       const AbstractAlgebra* algebra) {
    switch (filter) {
        case RelationFilter::all:
        case RelationFilter::quasi_orders: {
            if (m > kAllRelationsCap)
                throw CapacityError("relation enumeration is limited to m <= " + std::to_string(kAllRelationsCap), m);
            const std::uint64_t count = std::uint64_t{1} << (m * m);
            for (std::uint64_t mask = 0; mask < count; ++mask) {
                BinRelation r = from_mask(m, mask);
                if (filter == RelationFilter::quasi_orders && !basic_relation_properties(r).quasi_order) continue;
                visit(r);
            }
            return;
        }
        case RelationFilter::equivalences:
        case RelationFilter::l_regular_equivalences: {
            if (m > kEquivalenceCap)
                throw CapacityError("equivalence enumeration is limited to m <= " + std::to_string(kEquivalenceCap),
                                    m);
            if (filter == RelationFilter::l_regular_equivalences) {
                if (!algebra) throw InputError("l-regular equivalences need an algebra");
                if (algebra->size() != m) throw InputError("algebra size differs from m");
            }
            for_each_partition(m, [&](const BinRelation& r) {
                if (filter == RelationFilter::l_regular_equivalences && !is_l_regular(r, *algebra)) return;
                visit(r);
            });
            return;
        }
    }
}

std::vector<BinRelation> enumerate_relations(std::size_t m, RelationFilter filter, const AbstractAlgebra* algebra) {
    std::vector<BinRelation> out;
    for_each_relation(m, filter, [&](const BinRelation& r) { out.push_back(r); }, algebra);
    return out;
}

Representation identity_representation(const ConcreteAlgebra& algebra) {
    const std::size_t n = algebra.arity();
    std::size_t cells = 1;
    for (std::size_t k = 0; k < n; ++k) cells *= algebra.base_size();
    std::vector<ExtendedPoint> points;
    points.reserve(cells);
    const PartialFunction probe = PartialFunction::empty(n, algebra.base_size());
    for (std::size_t cell = 0; cell < cells; ++cell) {
        ExtendedPoint p;
        for (Element a : probe.arguments(cell)) p.push_back(StarElement::element(a));
        points.push_back(std::move(p));
    }
    RepresentationPart part;
    part.universe = std::make_shared<const PointUniverse>(PointUniverse::opaque(n, std::move(points)));
    for (std::size_t i = 0; i < algebra.size(); ++i) part.assignment.emplace_back(algebra[i].table().begin(), algebra[i].table().end());
    return Representation(n, algebra.size(), algebra.flavor(), {std::move(part)});
}

}  // namespace mengerkit
