#include "mengerkit/bin_relation.hpp"

#include <bit>
#include <sstream>

namespace mengerkit {

BinRelation::BinRelation(std::size_t size)
    : size_(size), words_((size + 63) / 64), bits_(size * ((size + 63) / 64), 0) {}

BinRelation BinRelation::diagonal(std::size_t size) {
    BinRelation r(size);
    for (Element a = 0; a < size; ++a) r.insert(a, a);
    return r;
}

BinRelation BinRelation::full(std::size_t size) {
    BinRelation r(size);
    for (Element a = 0; a < size; ++a)
        for (Element b = 0; b < size; ++b) r.insert(a, b);
    return r;
}

BinRelation BinRelation::from_pairs(std::size_t size, std::span<const std::pair<Element, Element>> pairs) {
    BinRelation r(size);
    for (auto [a, b] : pairs) {
        if (a >= size || b >= size) throw InputError("relation pair out of range");
        r.insert(a, b);
    }
    return r;
}

BinRelation BinRelation::from_pairs(std::size_t size,
                                    std::initializer_list<std::pair<Element, Element>> pairs) {
    return from_pairs(size, std::span<const std::pair<Element, Element>>(pairs.begin(), pairs.size()));
}

bool BinRelation::row_empty(Element a) const {
    for (std::uint64_t w : row(a))
        if (w) return false;
    return true;
}

std::vector<Element> BinRelation::successors(Element a) const {
    std::vector<Element> out;
    auto r = row(a);
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            out.push_back(static_cast<Element>(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t BinRelation::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : bits_) n += std::popcount(w);
    return n;
}

std::vector<std::pair<Element, Element>> BinRelation::pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < size_; ++a)
        for (Element b : successors(a)) out.emplace_back(a, b);
    return out;
}

BinRelation BinRelation::inverse() const {
    BinRelation r(size_);
    for (Element a = 0; a < size_; ++a)
        for (Element b : successors(a)) r.insert(b, a);
    return r;
}

BinRelation& BinRelation::operator|=(const BinRelation& other) {
    if (other.size_ != size_) throw InputError("relation size mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
    return *this;
}

BinRelation& BinRelation::operator&=(const BinRelation& other) {
    if (other.size_ != size_) throw InputError("relation size mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
    return *this;
}

bool BinRelation::is_subset_of(const BinRelation& other) const {
    if (other.size_ != size_) throw InputError("relation size mismatch");
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~other.bits_[i]) return false;
    return true;
}

std::vector<bool> BinRelation::first_projection() const {
    std::vector<bool> out(size_);
    for (Element a = 0; a < size_; ++a) out[a] = !row_empty(a);
    return out;
}

std::string to_string(const BinRelation& relation) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (auto [a, b] : relation.pairs()) {
        if (!first) out << ',';
        first = false;
        out << '(' << a << ',' << b << ')';
    }
    out << '}';
    return out.str();
}

BinRelation compose(const BinRelation& sigma, const BinRelation& rho) {
    if (sigma.size() != rho.size()) throw InputError("compose: relation size mismatch");
    const std::size_t m = rho.size();
    BinRelation out(m);
    for (Element a = 0; a < m; ++a) {
        auto dst = out.row(a);
        for (Element b : rho.successors(a)) {
            auto src = sigma.row(b);
            for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
        }
    }
    return out;
}

BinRelation reflexive_closure(const BinRelation& relation) {
    return relation | BinRelation::diagonal(relation.size());
}

BinRelation transitive_closure(const BinRelation& relation) {
    BinRelation current = relation;
    while (true) {
        BinRelation next = current | compose(current, current);
        if (next == current) return current;
        current = std::move(next);
    }
}

BinRelation power(const BinRelation& relation, std::size_t exponent) {
    BinRelation result = BinRelation::diagonal(relation.size());
    for (std::size_t k = 0; k < exponent; ++k) result = compose(relation, result);
    return result;
}

RelationFlags basic_relation_properties(const BinRelation& r) {
    RelationFlags flags;
    const std::size_t m = r.size();
    flags.reflexive = true;
    for (Element a = 0; a < m; ++a)
        if (!r.contains(a, a)) flags.reflexive = false;
    flags.symmetric = (r == r.inverse());
    flags.transitive = compose(r, r).is_subset_of(r);
    flags.quasi_order = flags.reflexive && flags.transitive;
    flags.equivalence = flags.quasi_order && flags.symmetric;
    return flags;
}

}  // namespace mengerkit
