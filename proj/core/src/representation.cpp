#include "mengerkit/representation.hpp"

#include <algorithm>
#include <sstream>

#include "mengerkit/relation_lab.hpp"

namespace mengerkit {
namespace {

bool advance(std::vector<Element>& digits, std::size_t m) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < m) return true;
        digits[pos] = 0;
    }
    return false;
}

Verdict fail(std::string rule, std::vector<Element> elements, std::optional<std::size_t> slot, std::string detail) {
    Counterexample c;
    c.rule = std::move(rule);
    c.elements = std::move(elements);
    c.slot = slot;
    c.detail = std::move(detail);
    return Verdict::fail(std::move(c));
}

std::string value_text(std::int32_t v) { return v == Representation::kUndefined ? "undefined" : std::to_string(v); }

// Point lookups needed by the homomorphism check, precomputed per part.
class PartIndex {
public:
    PartIndex(const PointUniverse& u, std::size_t carrier_size) : universe_(u) {
        const std::size_t n = u.arity();
        for (const ExtendedPoint& p : u.points())
            for (StarElement s : p)
                if (!s.is_sentinel()) radix_ = std::max<std::size_t>(radix_, s.element() + 1);
        radix_ = std::max(radix_, carrier_size);
        std::size_t cells = 1;
        for (std::size_t k = 0; k < n; ++k) cells *= radix_;
        dense_.assign(cells, -1);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const ExtendedPoint& p = u.point(i);
            if (std::any_of(p.begin(), p.end(), [](StarElement s) { return s.is_sentinel(); })) continue;
            std::size_t idx = 0;
            for (StarElement s : p) idx = idx * radix_ + s.element();
            dense_[idx] = static_cast<std::int64_t>(i);
        }
    }

    std::size_t radix() const { return radix_; }

    std::optional<std::size_t> all_carrier(std::span<const Element> values) const {
        std::size_t idx = 0;
        for (Element v : values) {
            if (v >= radix_) return std::nullopt;
            idx = idx * radix_ + v;
        }
        if (dense_[idx] < 0) return std::nullopt;
        return static_cast<std::size_t>(dense_[idx]);
    }

    std::optional<std::size_t> substitute(std::size_t point, std::size_t slot, Element value) const {
        ExtendedPoint q = universe_.point(point);
        q[slot] = StarElement::element(value);
        return universe_.find(q);
    }

private:
    const PointUniverse& universe_;
    std::size_t radix_ = 1;
    std::vector<std::int64_t> dense_;
};

}  // namespace

PointUniverse::PointUniverse(std::size_t arity, std::vector<ExtendedPoint> points, std::vector<PointKind> kinds,
                             std::vector<std::vector<CompositionWord>> witnesses,
                             std::vector<std::vector<Element>> evaluation)
    : arity_(arity),
      points_(std::move(points)),
      kinds_(std::move(kinds)),
      witnesses_(std::move(witnesses)),
      evaluation_(std::move(evaluation)) {
    if (kinds_.size() != points_.size() || witnesses_.size() != points_.size())
        throw InputError("universe: points, kinds and witnesses differ in length");
    if (!evaluation_.empty() && evaluation_.size() != points_.size())
        throw InputError("universe: evaluation table does not match the points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const ExtendedPoint& p = points_[i];
        if (p.size() != arity_) throw InputError("universe point " + std::to_string(i) + " has the wrong arity");
        for (std::size_t k = 0; k < p.size(); ++k)
            if (p[k].is_sentinel() && p[k].slot() != k)
                throw InputError("universe point " + std::to_string(i) + " has a misplaced sentinel");
        if (!index_.emplace(p, i).second)
            throw InputError("universe point " + to_string(p) + " occurs twice");
    }
}

PointUniverse PointUniverse::opaque(std::size_t arity, std::vector<ExtendedPoint> points) {
    const std::size_t count = points.size();
    return PointUniverse(arity, std::move(points), std::vector<PointKind>(count, PointKind::plain),
                         std::vector<std::vector<CompositionWord>>(count), {});
}

std::optional<std::size_t> PointUniverse::find(const ExtendedPoint& point) const {
    auto it = index_.find(point);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PointUniverse build_universe(const AbstractAlgebra& algebra, UniverseOptions options) {
    const Flavor flavor = options.flavor.value_or(algebra.flavor());
    if (flavor == Flavor::menger && algebra.flavor() != Flavor::menger)
        throw InputError("menger universe requested on a plain algebra");
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();

    std::vector<ExtendedPoint> points;
    std::vector<PointKind> kinds;
    std::vector<std::vector<CompositionWord>> witnesses;
    std::vector<std::vector<Element>> evaluation;
    std::map<ExtendedPoint, std::size_t> index;

    if (flavor == Flavor::menger && m > 0) {
        std::vector<Element> xs(n, 0);
        do {
            ExtendedPoint p;
            for (Element x : xs) p.push_back(StarElement::element(x));
            std::vector<Element> values(m);
            for (Element g = 0; g < m; ++g) values[g] = algebra.superpose(g, xs);
            index.emplace(p, points.size());
            points.push_back(std::move(p));
            kinds.push_back(PointKind::carrier);
            witnesses.emplace_back();
            evaluation.push_back(std::move(values));
        } while (advance(xs, m));
    }

    auto space = reachable_frames(algebra);
    auto frames = space->frames();
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const MuFrame& f = frames[k];
        auto [it, inserted] = index.emplace(f.mu_star, points.size());
        if (inserted) {
            points.push_back(f.mu_star);
            kinds.push_back(PointKind::frame);
            witnesses.push_back({space->witness(k)});
            evaluation.push_back(f.action);
            continue;
        }
        const std::size_t at = it->second;
        if (evaluation[at] != f.action) {
            Element g = 0;
            while (evaluation[at][g] == f.action[g]) ++g;
            std::ostringstream msg;
            msg << "point " << to_string(f.mu_star) << " is reached by word " << to_string(space->witness(k))
                << " with g=" << g << " -> " << f.action[g] << ", but "
                << (kinds[at] == PointKind::carrier ? "the superposition gives " : "another witness gives ")
                << evaluation[at][g];
            throw InputError(msg.str());
        }
        if (options.debug_witnesses) witnesses[at].push_back(space->witness(k));
    }

    // Debug: every one-step extension of a witness (or of the empty word) that
    // lands on a known point is kept as an extra witness for it.
    if (options.debug_witnesses) {
        constexpr std::size_t kMaxWitnesses = 4;
        for (std::size_t k = 0; k <= frames.size(); ++k) {
            const CompositionWord base = k == frames.size() ? CompositionWord{} : space->witness(k);
            for (std::size_t slot = 0; slot < n; ++slot)
                for (Element e = 0; e < m; ++e) {
                    CompositionWord w = base;
                    w.push_back({slot, e});
                    auto it = index.find(mu_star(algebra, w));
                    if (it == index.end()) continue;
                    auto& list = witnesses[it->second];
                    if (list.size() < kMaxWitnesses && std::find(list.begin(), list.end(), w) == list.end())
                        list.push_back(std::move(w));
                }
        }
    }

    ExtendedPoint sentinel;
    for (std::size_t i = 0; i < n; ++i) sentinel.push_back(StarElement::sentinel(i));
    std::vector<Element> identity(m);
    for (Element g = 0; g < m; ++g) identity[g] = g;
    points.push_back(std::move(sentinel));
    kinds.push_back(PointKind::sentinel);
    witnesses.emplace_back();
    evaluation.push_back(std::move(identity));

    return PointUniverse(n, std::move(points), std::move(kinds), std::move(witnesses), std::move(evaluation));
}

Verdict cross_witness_check(const PointUniverse& universe, const AbstractAlgebra& algebra) {
    if (!universe.has_evaluation()) return Verdict::pass();
    for (std::size_t i = 0; i < universe.size(); ++i)
        for (const CompositionWord& w : universe.witnesses(i))
            for (Element g = 0; g < algebra.size(); ++g) {
                const Element direct = apply_word(algebra, g, w);
                if (direct == universe.evaluate(i, g)) continue;
                Counterexample c;
                c.rule = "single-valued";
                c.elements = {g, static_cast<Element>(i)};
                c.words = {w};
                c.detail = "point " + to_string(universe.point(i)) + ": word " + to_string(w) + " gives g=" +
                           std::to_string(g) + " -> " + std::to_string(direct) + " but the point holds " +
                           std::to_string(universe.evaluate(i, g));
                return Verdict::fail(std::move(c));
            }
    return Verdict::pass();
}

bool operator==(const RepresentationPart& a, const RepresentationPart& b) {
    if (a.assignment != b.assignment) return false;
    if (a.universe == b.universe) return true;
    if (!a.universe || !b.universe) return false;
    return a.universe->arity() == b.universe->arity() && a.universe->points() == b.universe->points();
}

Representation::Representation(std::size_t arity, std::size_t carrier_size, Flavor flavor,
                               std::vector<RepresentationPart> parts)
    : arity_(arity), carrier_size_(carrier_size), flavor_(flavor), parts_(std::move(parts)) {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        const RepresentationPart& part = parts_[k];
        const std::string where = "representation part " + std::to_string(k);
        if (!part.universe) throw InputError(where + " has no universe");
        if (part.universe->arity() != arity_) throw InputError(where + " has the wrong arity");
        if (part.assignment.size() != carrier_size_) throw InputError(where + " does not cover the carrier");
        for (const auto& row : part.assignment)
            if (row.size() != part.universe->size()) throw InputError(where + " has a malformed assignment row");
    }
}

std::size_t Representation::point_count() const {
    std::size_t total = 0;
    for (const auto& part : parts_) total += part.universe->size();
    return total;
}

std::vector<bool> Representation::domain(Element g) const {
    std::vector<bool> out;
    out.reserve(point_count());
    for (const auto& part : parts_)
        for (std::int32_t v : part.assignment[g]) out.push_back(v != kUndefined);
    return out;
}

Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PairMode mode,
                                    UniverseOptions options) {
    const Flavor flavor = options.flavor.value_or(algebra.flavor());
    if (chi.size() != algebra.size()) throw InputError("chi does not match the carrier size");
    if (Verdict v = is_l_regular_v_negative_quasi_order(chi, algebra, flavor); !v)
        throw InputError("chi is not an l-regular v-negative quasi-order: " + describe(v));
    if (Verdict v = check_representability(algebra); !v)
        throw InputError("algebra is not representable: " + describe(v));
    if (flavor == Flavor::menger)
        if (Verdict v = check_menger_identities(algebra); !v)
            throw InputError("algebra violates the menger identities: " + describe(v));
    auto universe = std::make_shared<const PointUniverse>(build_universe(algebra, options));
    if (options.debug_witnesses)
        if (Verdict v = cross_witness_check(*universe, algebra); !v)
            throw InputError("witness words disagree: " + describe(v));
    return build_representation(algebra, chi, mode, universe);
}

Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PointMode mode,
                                    UniverseOptions options) {
    return build_representation(algebra, chi, PairMode{mode.a, mode.a}, options);
}

Representation build_representation(const AbstractAlgebra& algebra, const BinRelation& chi, PairMode mode,
                                    std::shared_ptr<const PointUniverse> universe) {
    const std::size_t m = algebra.size();
    if (chi.size() != m) throw InputError("chi does not match the carrier size");
    if (mode.h1 >= m || mode.h2 >= m) throw InputError("pair element out of range");
    if (!universe || !universe->has_evaluation()) throw InputError("universe has no evaluation map");
    bool menger = false;
    for (std::size_t i = 0; i < universe->size(); ++i)
        if (universe->kind(i) == PointKind::carrier) menger = true;

    RepresentationPart part;
    part.universe = universe;
    part.assignment.assign(m, std::vector<std::int32_t>(universe->size(), Representation::kUndefined));
    for (Element g = 0; g < m; ++g)
        for (std::size_t p = 0; p < universe->size(); ++p) {
            const Element v = universe->evaluate(p, g);
            if (chi.contains(mode.h1, v) || chi.contains(mode.h2, v))
                part.assignment[g][p] = static_cast<std::int32_t>(v);
        }
    return Representation(algebra.arity(), m, menger ? Flavor::menger : Flavor::plain, {std::move(part)});
}

Representation sum_representations(const std::vector<Representation>& parts) {
    if (parts.empty()) throw InputError("sum of no representations has no carrier; construct it directly");
    const std::size_t n = parts.front().arity();
    const std::size_t m = parts.front().carrier_size();
    bool menger = true;
    std::vector<RepresentationPart> all;
    for (const Representation& r : parts) {
        if (r.arity() != n || r.carrier_size() != m) throw InputError("summands disagree on arity or carrier");
        if (r.flavor() != Flavor::menger) menger = false;
        all.insert(all.end(), r.parts().begin(), r.parts().end());
    }
    return Representation(n, m, menger ? Flavor::menger : Flavor::plain, std::move(all));
}

RepresentationRelations representation_relations(const Representation& rep) {
    const std::size_t m = rep.carrier_size();
    const std::size_t points = rep.point_count();
    const std::size_t words = (points + 63) / 64;
    std::vector<std::vector<std::uint64_t>> dom(m, std::vector<std::uint64_t>(words, 0));
    for (Element g = 0; g < m; ++g) {
        std::size_t offset = 0;
        for (const auto& part : rep.parts()) {
            const auto& row = part.assignment[g];
            for (std::size_t p = 0; p < row.size(); ++p)
                if (row[p] != Representation::kUndefined) {
                    const std::size_t bit = offset + p;
                    dom[g][bit / 64] |= std::uint64_t{1} << (bit % 64);
                }
            offset += row.size();
        }
    }
    RepresentationRelations out{BinRelation(m), BinRelation(m), BinRelation(m)};
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) {
            bool subset = true;
            bool meet = false;
            for (std::size_t w = 0; w < words; ++w) {
                if (dom[a][w] & ~dom[b][w]) subset = false;
                if (dom[a][w] & dom[b][w]) meet = true;
            }
            out.chi.set(a, b, subset);
            out.gamma.set(a, b, meet);
        }
    out.pi = out.chi & out.chi.inverse();
    return out;
}

Verdict verify_homomorphism(const Representation& rep, const AbstractAlgebra& algebra) {
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    if (rep.carrier_size() != m || rep.arity() != n)
        throw InputError("representation does not match the algebra's arity or carrier");
    const bool menger = rep.flavor() == Flavor::menger && algebra.flavor() == Flavor::menger;

    for (std::size_t k = 0; k < rep.parts().size(); ++k) {
        const RepresentationPart& part = rep.parts()[k];
        const PointUniverse& u = *part.universe;
        const auto& a = part.assignment;
        const PartIndex index(u, m);

        // subst[(p * n + slot) * radix + v] = index of p with coordinate slot set to v, or -1.
        const std::size_t radix = index.radix();
        std::vector<std::int64_t> subst(u.size() * n * radix, -1);
        for (std::size_t p = 0; p < u.size(); ++p)
            for (std::size_t slot = 0; slot < n; ++slot)
                for (Element v = 0; v < radix; ++v)
                    if (auto q = index.substitute(p, slot, v)) subst[(p * n + slot) * radix + v] = *q;

        for (std::size_t slot = 0; slot < n; ++slot)
            for (Element g1 = 0; g1 < m; ++g1)
                for (Element g2 = 0; g2 < m; ++g2) {
                    const Element c = algebra.mann(slot, g1, g2);
                    for (std::size_t p = 0; p < u.size(); ++p) {
                        std::int32_t rhs = Representation::kUndefined;
                        const std::int32_t inner = a[g2][p];
                        if (inner != Representation::kUndefined && static_cast<std::size_t>(inner) < radix) {
                            const std::int64_t q = subst[(p * n + slot) * radix + inner];
                            if (q >= 0) rhs = a[g1][q];
                        }
                        if (a[c][p] == rhs) continue;
                        std::ostringstream msg;
                        msg << "part " << k << " point " << to_string(u.point(p)) << ": P(" << g1 << " +" << slot + 1
                            << " " << g2 << ") = " << value_text(a[c][p]) << " but P(" << g1 << ") +" << slot + 1
                            << " P(" << g2 << ") = " << value_text(rhs);
                        return fail("homomorphism-mann", {g1, g2, static_cast<Element>(p)}, slot, msg.str());
                    }
                }

        if (!menger || m == 0) continue;
        std::vector<Element> gs(n + 1, 0);
        std::vector<Element> values(n);
        do {
            std::span<const Element> inner_gs(gs.data() + 1, n);
            const Element c = algebra.superpose(gs[0], inner_gs);
            for (std::size_t p = 0; p < u.size(); ++p) {
                std::int32_t rhs = Representation::kUndefined;
                bool defined = true;
                for (std::size_t i = 0; i < n && defined; ++i) {
                    const std::int32_t v = a[gs[i + 1]][p];
                    if (v == Representation::kUndefined) defined = false;
                    else values[i] = static_cast<Element>(v);
                }
                if (defined)
                    if (auto q = index.all_carrier(values)) rhs = a[gs[0]][*q];
                if (a[c][p] == rhs) continue;
                std::vector<Element> e(gs);
                e.push_back(static_cast<Element>(p));
                std::ostringstream msg;
                msg << "part " << k << " point " << to_string(u.point(p)) << ": P(" << gs[0] << "[";
                for (std::size_t i = 0; i < n; ++i) msg << (i ? " " : "") << gs[i + 1];
                msg << "]) = " << value_text(a[c][p]) << " but the superposition of images gives "
                    << value_text(rhs);
                return fail("homomorphism-superposition", std::move(e), std::nullopt, msg.str());
            }
        } while (advance(gs, m));
    }
    return Verdict::pass();
}

Verdict is_faithful(const Representation& rep) {
    const std::size_t m = rep.carrier_size();
    for (Element g1 = 0; g1 < m; ++g1)
        for (Element g2 = g1 + 1; g2 < m; ++g2) {
            bool same = true;
            for (const auto& part : rep.parts())
                if (part.assignment[g1] != part.assignment[g2]) {
                    same = false;
                    break;
                }
            if (same)
                return fail("faithful", {g1, g2}, std::nullopt,
                            "elements " + std::to_string(g1) + " and " + std::to_string(g2) +
                                " have the same image");
        }
    return Verdict::pass();
}

}  // namespace mengerkit
