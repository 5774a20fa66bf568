#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/bin_relation.hpp"
#include "mengerkit/partial_function.hpp"
#include "mengerkit/representation.hpp"

namespace mengerkit {

struct GeneratorConfig {
    std::size_t arity = 2;
    std::size_t base_size = 2;
    std::size_t generator_count = 1;
    std::uint64_t seed = 0;
    Flavor flavor = Flavor::menger;
    std::size_t closure_cap = kDefaultClosureCap;
    std::size_t frame_cap = kDefaultFrameCap;
    /// Chance that a drawn cell is undefined.
    double undefined_probability = 0.25;
    std::size_t max_retries = 32;
};

/// Random generators closed under the flavor's operations. When the closure cap
/// is hit the draw is repeated with a seed chained from the previous one; after
/// max_retries failures a CapacityError is thrown. Output depends only on cfg.
ConcreteAlgebra generate_concrete(const GeneratorConfig& cfg);

enum class RelationFilter { all, equivalences, l_regular_equivalences, quasi_orders };

/// Visits relations on {0..m-1} in a fixed order. `all` and `quasi_orders`
/// enumerate bitmasks (m ≤ 4); equivalences come from set partitions (m ≤ 5).
/// l_regular_equivalences needs `algebra`. Throws CapacityError past the caps.
void for_each_relation(std::size_t m, RelationFilter filter, const std::function<void(const BinRelation&)>& visit,
                       const AbstractAlgebra* algebra = nullptr);
std::vector<BinRelation> enumerate_relations(std::size_t m, RelationFilter filter,
                                             const AbstractAlgebra* algebra = nullptr);

/// g ↦ its own table, over Aⁿ. Faithful because the functions are distinct.
Representation identity_representation(const ConcreteAlgebra& algebra);

}  // namespace mengerkit
