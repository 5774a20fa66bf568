#include "mengerkit/partial_function.hpp"

#include <sstream>

namespace mengerkit {
namespace {

std::size_t checked_cell_count(std::size_t arity, std::size_t base_size) {
    if (arity == 0) throw InputError("arity must be positive");
    if (base_size == 0) throw InputError("base_size must be positive");
    std::size_t cells = 1;
    for (std::size_t k = 0; k < arity; ++k) {
        if (cells > (std::size_t{1} << 32) / base_size) throw InputError("function table too large");
        cells *= base_size;
    }
    return cells;
}

void require_same_shape(const PartialFunction& a, const PartialFunction& b, const char* op) {
    if (a.arity() != b.arity() || a.base_size() != b.base_size())
        throw InputError(std::string(op) + ": arity/base_size mismatch");
}

}  // namespace

PartialFunction::PartialFunction(std::size_t arity, std::size_t base_size, std::vector<std::int32_t> table)
    : arity_(arity), base_size_(base_size), table_(std::move(table)) {
    const std::size_t cells = checked_cell_count(arity, base_size);
    if (table_.size() != cells) {
        std::ostringstream msg;
        msg << "function table has " << table_.size() << " cells, expected " << cells;
        throw InputError(msg.str());
    }
    for (std::int32_t v : table_)
        if (v != kUndefined && (v < 0 || static_cast<std::size_t>(v) >= base_size))
            throw InputError("function value " + std::to_string(v) + " outside the base set");
}

PartialFunction PartialFunction::empty(std::size_t arity, std::size_t base_size) {
    return PartialFunction(arity, base_size,
                           std::vector<std::int32_t>(checked_cell_count(arity, base_size), kUndefined));
}

PartialFunction PartialFunction::projection(std::size_t arity, std::size_t base_size, std::size_t slot) {
    if (slot >= arity) throw InputError("projection slot out of range");
    PartialFunction f = empty(arity, base_size);
    for (std::size_t cell = 0; cell < f.table_.size(); ++cell)
        f.table_[cell] = static_cast<std::int32_t>(f.arguments(cell)[slot]);
    return f;
}

PartialFunction PartialFunction::constant(std::size_t arity, std::size_t base_size, Element value) {
    if (value >= base_size) throw InputError("constant value outside the base set");
    return PartialFunction(arity, base_size,
                           std::vector<std::int32_t>(checked_cell_count(arity, base_size),
                                                     static_cast<std::int32_t>(value)));
}

std::size_t PartialFunction::cell_index(std::span<const Element> args) const {
    if (args.size() != arity_) throw InputError("wrong number of arguments");
    std::size_t index = 0;
    for (Element a : args) {
        if (a >= base_size_) throw InputError("argument " + std::to_string(a) + " outside the base set");
        index = index * base_size_ + a;
    }
    return index;
}

std::vector<Element> PartialFunction::arguments(std::size_t cell) const {
    std::vector<Element> args(arity_);
    for (std::size_t k = arity_; k-- > 0;) {
        args[k] = static_cast<Element>(cell % base_size_);
        cell /= base_size_;
    }
    return args;
}

std::optional<Element> PartialFunction::evaluate(std::span<const Element> args) const {
    return at(cell_index(args));
}

bool PartialFunction::is_empty() const {
    for (std::int32_t v : table_)
        if (v != kUndefined) return false;
    return true;
}

std::size_t PartialFunctionHash::operator()(const PartialFunction& f) const noexcept {
    std::size_t h = 1469598103934665603ull ^ f.arity() ^ (f.base_size() << 8);
    for (std::int32_t v : f.table()) {
        h ^= static_cast<std::size_t>(v + 1);
        h *= 1099511628211ull;
    }
    return h;
}

PartialFunction superpose(const PartialFunction& f, std::span<const PartialFunction> gs) {
    if (gs.size() != f.arity()) throw InputError("superpose: expected one inner function per slot");
    for (const PartialFunction& g : gs) require_same_shape(f, g, "superpose");
    const std::size_t n = f.arity();
    const std::size_t base = f.base_size();
    std::vector<std::int32_t> table(f.cell_count(), PartialFunction::kUndefined);
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        std::size_t index = 0;
        bool defined = true;
        for (std::size_t k = 0; k < n && defined; ++k) {
            std::int32_t v = gs[k].table()[cell];
            if (v == PartialFunction::kUndefined)
                defined = false;
            else
                index = index * base + static_cast<std::size_t>(v);
        }
        if (defined) table[cell] = f.table()[index];
    }
    return PartialFunction(n, base, std::move(table));
}

PartialFunction mann_compose(const PartialFunction& f, const PartialFunction& g, std::size_t slot) {
    require_same_shape(f, g, "mann_compose");
    if (slot >= f.arity()) throw InputError("mann_compose: slot out of range");
    const std::size_t n = f.arity();
    const std::size_t base = f.base_size();
    // Weight of argument `slot` in the mixed-radix cell index.
    std::size_t weight = 1;
    for (std::size_t k = slot + 1; k < n; ++k) weight *= base;
    std::vector<std::int32_t> table(f.cell_count(), PartialFunction::kUndefined);
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        std::int32_t inner = g.table()[cell];
        if (inner == PartialFunction::kUndefined) continue;
        const std::size_t own = (cell / weight) % base;
        const std::size_t target = cell - own * weight + static_cast<std::size_t>(inner) * weight;
        table[cell] = f.table()[target];
    }
    return PartialFunction(n, base, std::move(table));
}

ConcreteAlgebra::ConcreteAlgebra(std::size_t arity, std::size_t base_size, std::vector<PartialFunction> functions,
                                 Flavor flavor)
    : arity_(arity), base_size_(base_size), flavor_(flavor), functions_(std::move(functions)) {
    checked_cell_count(arity, base_size);
    for (std::size_t i = 0; i < functions_.size(); ++i) {
        const PartialFunction& f = functions_[i];
        if (f.arity() != arity_ || f.base_size() != base_size_)
            throw InputError("function " + std::to_string(i) + " has a different arity/base_size");
        if (!index_.emplace(f, i).second)
            throw InputError("function " + std::to_string(i) + " duplicates an earlier function");
    }
}

std::optional<std::size_t> ConcreteAlgebra::find(const PartialFunction& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> ConcreteAlgebra::closure_defect() const {
    const std::size_t m = functions_.size();
    for (std::size_t slot = 0; slot < arity_; ++slot)
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                if (!find(mann_compose(functions_[x], functions_[y], slot))) {
                    std::ostringstream msg;
                    msg << "composite f" << x << " (+" << slot + 1 << ") f" << y << " is not in the set";
                    return msg.str();
                }
    if (flavor_ == Flavor::menger && m > 0) {
        std::vector<std::size_t> idx(arity_ + 1, 0);
        std::vector<PartialFunction> inner(arity_, functions_[0]);
        while (true) {
            for (std::size_t k = 0; k < arity_; ++k) inner[k] = functions_[idx[k + 1]];
            if (!find(superpose(functions_[idx[0]], inner))) {
                std::ostringstream msg;
                msg << "superposition f" << idx[0] << "[";
                for (std::size_t k = 1; k <= arity_; ++k) msg << (k > 1 ? " f" : "f") << idx[k];
                msg << "] is not in the set";
                return msg.str();
            }
            std::size_t pos = idx.size();
            while (pos > 0 && ++idx[pos - 1] == m) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    return std::nullopt;
}

ConcreteAlgebra close_under_operations(std::span<const PartialFunction> generators, Flavor flavor,
                                       std::size_t cap) {
    if (generators.empty()) throw InputError("close_under_operations: no generators; use the sized overload");
    return close_under_operations(generators.front().arity(), generators.front().base_size(), generators, flavor,
                                  cap);
}

ConcreteAlgebra close_under_operations(std::size_t arity, std::size_t base_size,
                                       std::span<const PartialFunction> generators, Flavor flavor,
                                       std::size_t cap) {
    checked_cell_count(arity, base_size);
    std::vector<PartialFunction> elements;
    std::unordered_map<PartialFunction, std::size_t, PartialFunctionHash> seen;
    auto add = [&](PartialFunction f) {
        if (f.arity() != arity || f.base_size() != base_size)
            throw InputError("close_under_operations: generators disagree on arity/base_size");
        if (seen.contains(f)) return;
        if (elements.size() == cap)
            throw CapacityError("closure exceeded cap of " + std::to_string(cap) + " functions", cap + 1);
        seen.emplace(f, elements.size());
        elements.push_back(std::move(f));
    };
    for (const PartialFunction& g : generators) add(g);

    // Every tuple of operands is composed exactly once: when its largest index is `next`.
    std::vector<std::size_t> idx(arity + 1);
    std::vector<PartialFunction> inner;
    for (std::size_t next = 0; next < elements.size(); ++next) {
        for (std::size_t other = 0; other <= next; ++other) {
            for (std::size_t slot = 0; slot < arity; ++slot) {
                add(mann_compose(elements[next], elements[other], slot));
                if (other != next) add(mann_compose(elements[other], elements[next], slot));
            }
        }
        if (flavor != Flavor::menger) continue;
        // Positions before `first` range over [0, next), position `first` is `next`,
        // positions after it range over [0, next].
        for (std::size_t first = 0; first <= arity; ++first) {
            if (first > 0 && next == 0) break;
            std::fill(idx.begin(), idx.end(), 0);
            idx[first] = next;
            while (true) {
                inner.clear();
                for (std::size_t k = 1; k <= arity; ++k) inner.push_back(elements[idx[k]]);
                add(superpose(elements[idx[0]], inner));
                std::size_t pos = arity + 1;
                bool done = true;
                while (pos-- > 0) {
                    if (pos == first) continue;
                    const std::size_t limit = pos < first ? next : next + 1;
                    if (++idx[pos] < limit) {
                        done = false;
                        break;
                    }
                    idx[pos] = 0;
                }
                if (done) break;
            }
        }
    }
    return ConcreteAlgebra(arity, base_size, std::move(elements), flavor);
}

ProjectionRelations concrete_projection_relations(const ConcreteAlgebra& algebra) {
    const std::size_t m = algebra.size();
    ProjectionRelations out{BinRelation(m), BinRelation(m), BinRelation(m)};
    for (Element f = 0; f < m; ++f) {
        for (Element g = 0; g < m; ++g) {
            bool subset = true;
            bool meet = false;
            bool superset = true;
            const auto& tf = algebra[f].table();
            const auto& tg = algebra[g].table();
            for (std::size_t c = 0; c < tf.size(); ++c) {
                const bool df = tf[c] != PartialFunction::kUndefined;
                const bool dg = tg[c] != PartialFunction::kUndefined;
                if (df && !dg) subset = false;
                if (dg && !df) superset = false;
                if (df && dg) meet = true;
            }
            out.chi.set(f, g, subset);
            out.gamma.set(f, g, meet);
            out.pi.set(f, g, subset && superset);
        }
    }
    return out;
}

}  // namespace mengerkit
