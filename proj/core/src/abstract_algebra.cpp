#include "mengerkit/abstract_algebra.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace mengerkit {
namespace detail {

struct AnalysisCache {
    std::mutex mutex;
    std::shared_ptr<const FrameSpace> frames;
    std::exception_ptr frames_error;
};

}  // namespace detail

namespace {

std::size_t ipow(std::size_t base, std::size_t exponent) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < exponent; ++k) r *= base;
    return r;
}

// Steps an odometer over {0..m-1}^digits.size(); false once it wraps.
bool advance(std::vector<Element>& digits, std::size_t m) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < m) return true;
        digits[pos] = 0;
    }
    return false;
}

std::string join(std::span<const Element> values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
    return out.str();
}

Element superpose_raw(const AlgebraTables& t, Element x, std::span<const Element> args) {
    std::size_t index = x;
    for (Element a : args) index = index * t.size + a;
    return t.superposition[index];
}

Element mann_raw(const AlgebraTables& t, std::size_t slot, Element x, Element y) {
    return t.mann[slot][static_cast<std::size_t>(x) * t.size + y];
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& key) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (std::int32_t v : key) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::shared_ptr<const FrameSpace> explore_frames(const AbstractAlgebra& algebra) {
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    const std::size_t cap = algebra.options().frame_cap;

    std::vector<MuFrame> all;
    std::unordered_map<std::vector<std::int32_t>, std::size_t, KeyHash> index;
    auto key_of = [&](const MuFrame& f) {
        std::vector<std::int32_t> key;
        key.reserve(n + m);
        for (StarElement s : f.mu_star) key.push_back(s.raw());
        for (Element a : f.action) key.push_back(static_cast<std::int32_t>(a));
        return key;
    };

    MuFrame root;
    for (std::size_t i = 0; i < n; ++i) root.mu_star.push_back(StarElement::sentinel(i));
    for (Element x = 0; x < m; ++x) root.action.push_back(x);
    index.emplace(key_of(root), 0);
    all.push_back(std::move(root));

    for (std::size_t q = 0; q < all.size(); ++q) {
        for (std::size_t slot = 0; slot < n; ++slot) {
            for (Element y = 0; y < m; ++y) {
                MuFrame next;
                next.mu_star.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const StarElement old = all[q].mu_star[i];
                    if (!old.is_sentinel())
                        next.mu_star[i] = StarElement::element(algebra.mann(slot, old.element(), y));
                    else if (i == slot)
                        next.mu_star[i] = StarElement::element(y);
                    else
                        next.mu_star[i] = old;
                }
                next.action.resize(m);
                for (Element x = 0; x < m; ++x) next.action[x] = algebra.mann(slot, all[q].action[x], y);
                next.depth = all[q].depth + 1;
                next.parent = q;
                next.last = Step{slot, y};
                auto [it, inserted] = index.emplace(key_of(next), all.size());
                if (!inserted) continue;
                if (all.size() >= cap)
                    throw CapacityError("frame exploration exceeded cap of " + std::to_string(cap) + " states",
                                        all.size() + 1);
                all.push_back(std::move(next));
            }
        }
    }
    return std::make_shared<const FrameSpace>(std::move(all));
}

}  // namespace

AbstractAlgebra::AbstractAlgebra(AlgebraTables tables, AlgebraOptions options)
    : tables_(std::move(tables)), options_(options), cache_(std::make_shared<detail::AnalysisCache>()) {
    const std::size_t n = tables_.arity;
    const std::size_t m = tables_.size;
    if (n == 0) throw InputError("arity must be positive");
    if (tables_.mann.size() != n)
        throw InputError("expected " + std::to_string(n) + " mann tables, got " + std::to_string(tables_.mann.size()));
    for (std::size_t k = 0; k < n; ++k) {
        if (tables_.mann[k].size() != m * m)
            throw InputError("mann table " + std::to_string(k + 1) + " is not " + std::to_string(m) + "x" +
                             std::to_string(m));
        for (Element v : tables_.mann[k])
            if (v >= m) throw InputError("mann table " + std::to_string(k + 1) + " entry out of range");
    }
    if (tables_.flavor == Flavor::menger) {
        if (tables_.superposition.size() != ipow(m, n + 1))
            throw InputError("superposition table must have size^(arity+1) entries");
        for (Element v : tables_.superposition)
            if (v >= m) throw InputError("superposition entry out of range");
    } else if (!tables_.superposition.empty()) {
        throw InputError("superposition table given for a plain algebra");
    }
    zero_ = find_zero(tables_);
    if (tables_.zero) {
        if (*tables_.zero >= m) throw InputError("zero index out of range");
        if (zero_ != tables_.zero)
            throw InputError("declared zero " + std::to_string(*tables_.zero) + " does not satisfy the zero laws");
    }
    tables_.zero = zero_;
}

Element AbstractAlgebra::superpose(Element x, std::span<const Element> args) const {
    if (tables_.flavor != Flavor::menger) throw InputError("superposition requested on a plain algebra");
    return superpose_raw(tables_, x, args);
}

AbstractAlgebra AbstractAlgebra::as_plain() const {
    if (flavor() == Flavor::plain) return *this;
    AlgebraTables t = tables_;
    t.flavor = Flavor::plain;
    t.superposition.clear();
    t.zero.reset();
    return AbstractAlgebra(std::move(t), options_);
}

Element apply_word(const AbstractAlgebra& algebra, Element x, const CompositionWord& word) {
    if (x >= algebra.size()) throw InputError("element out of range");
    for (const Step& step : word) {
        if (step.slot >= algebra.arity() || step.element >= algebra.size()) throw InputError("word step out of range");
        x = algebra.mann(step.slot, x, step.element);
    }
    return x;
}

ExtendedPoint mu_star(const AbstractAlgebra& algebra, const CompositionWord& word) {
    std::vector<std::pair<std::size_t, Element>> steps;
    for (const Step& s : word) {
        if (s.slot >= algebra.arity() || s.element >= algebra.size()) throw InputError("word step out of range");
        steps.emplace_back(s.slot, s.element);
    }
    auto mu = mu_symbols<Element>(algebra.arity(), steps, [&](Element acc, std::size_t slot, Element y) {
        return algebra.mann(slot, acc, y);
    });
    ExtendedPoint out;
    for (std::size_t i = 0; i < mu.size(); ++i)
        out.push_back(mu[i] ? StarElement::element(*mu[i]) : StarElement::sentinel(i));
    return out;
}

CompositionWord FrameSpace::witness(std::size_t index) const {
    CompositionWord word;
    for (std::size_t at = index + 1; at != 0; at = all_[at].parent) word.push_back(all_[at].last);
    std::reverse(word.begin(), word.end());
    return word;
}

std::shared_ptr<const FrameSpace> reachable_frames(const AbstractAlgebra& algebra) {
    detail::AnalysisCache& cache = *algebra.cache_;
    std::lock_guard lock(cache.mutex);
    if (cache.frames) return cache.frames;
    if (cache.frames_error) std::rethrow_exception(cache.frames_error);
    try {
        cache.frames = explore_frames(algebra);
    } catch (...) {
        cache.frames_error = std::current_exception();
        throw;
    }
    return cache.frames;
}

Verdict check_representability(const AbstractAlgebra& algebra) {
    auto space = reachable_frames(algebra);
    auto frames = space->frames();
    std::map<ExtendedPoint, std::size_t> first;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        auto [it, inserted] = first.emplace(frames[i].mu_star, i);
        if (inserted || frames[it->second].action == frames[i].action) continue;
        const MuFrame& a = frames[it->second];
        const MuFrame& b = frames[i];
        Element g = 0;
        while (a.action[g] == b.action[g]) ++g;
        Counterexample c;
        c.rule = "representability";
        c.elements = {g, a.action[g], b.action[g]};
        c.words = {space->witness(it->second), space->witness(i)};
        std::ostringstream msg;
        msg << "words " << to_string(c.words[0]) << " and " << to_string(c.words[1]) << " share mu* "
            << to_string(a.mu_star) << " but g=" << g << " gives " << a.action[g] << " vs " << b.action[g];
        c.detail = msg.str();
        return Verdict::fail(std::move(c));
    }
    return Verdict::pass();
}

Verdict check_associativity(const AbstractAlgebra& algebra) {
    const std::size_t m = algebra.size();
    for (std::size_t slot = 0; slot < algebra.arity(); ++slot)
        for (Element x = 0; x < m; ++x)
            for (Element y = 0; y < m; ++y)
                for (Element z = 0; z < m; ++z) {
                    const Element left = algebra.mann(slot, algebra.mann(slot, x, y), z);
                    const Element right = algebra.mann(slot, x, algebra.mann(slot, y, z));
                    if (left == right) continue;
                    Counterexample c;
                    c.rule = "associativity";
                    c.elements = {x, y, z};
                    c.slot = slot;
                    std::ostringstream msg;
                    msg << "(" << x << " +" << slot + 1 << " " << y << ") +" << slot + 1 << " " << z << " = " << left
                        << " but " << x << " +" << slot + 1 << " (" << y << " +" << slot + 1 << " " << z
                        << ") = " << right;
                    c.detail = msg.str();
                    return Verdict::fail(std::move(c));
                }
    return Verdict::pass();
}

Verdict check_menger_identities(const AbstractAlgebra& algebra) {
    if (algebra.flavor() != Flavor::menger) throw InputError("menger identities need a menger algebra");
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    if (m == 0) return Verdict::pass();

    auto failure = [](std::string rule, std::vector<Element> elements, std::optional<std::size_t> slot, Element lhs,
                      Element rhs) {
        Counterexample c;
        c.rule = std::move(rule);
        c.elements = std::move(elements);
        c.slot = slot;
        std::ostringstream msg;
        msg << "instantiation [" << join(c.elements) << "]";
        if (slot) msg << " slot " << *slot + 1;
        msg << ": " << lhs << " != " << rhs;
        c.detail = msg.str();
        return Verdict::fail(std::move(c));
    };

    // x0[x1..xn][y1..yn] = x0[x1[ȳ] .. xn[ȳ]]
    {
        std::vector<Element> v(2 * n + 1, 0);
        std::vector<Element> inner(n);
        do {
            std::span<const Element> xs(v.data() + 1, n);
            std::span<const Element> ys(v.data() + n + 1, n);
            const Element lhs = algebra.superpose(algebra.superpose(v[0], xs), ys);
            for (std::size_t k = 0; k < n; ++k) inner[k] = algebra.superpose(xs[k], ys);
            const Element rhs = algebra.superpose(v[0], inner);
            if (lhs != rhs) return failure("superassociativity", v, std::nullopt, lhs, rhs);
        } while (advance(v, m));
    }
    // (x ⊕_i y)[z̄] = x[z_1 .. y[z̄] .. z_n]
    // x[ȳ] ⊕_i z = x[y_1 ⊕_i z .. y_n ⊕_i z]
    {
        std::vector<Element> v(n + 2, 0);
        std::vector<Element> args(n);
        do {
            const Element x = v[0];
            const Element y = v[1];
            std::span<const Element> zs(v.data() + 2, n);
            for (std::size_t slot = 0; slot < n; ++slot) {
                const Element lhs = algebra.superpose(algebra.mann(slot, x, y), zs);
                std::copy(zs.begin(), zs.end(), args.begin());
                args[slot] = algebra.superpose(y, zs);
                const Element rhs = algebra.superpose(x, args);
                if (lhs != rhs) return failure("mann-superposition", v, slot, lhs, rhs);
            }
        } while (advance(v, m));
    }
    {
        std::vector<Element> v(n + 2, 0);
        std::vector<Element> args(n);
        do {
            const Element x = v[0];
            std::span<const Element> ys(v.data() + 1, n);
            const Element z = v[n + 1];
            for (std::size_t slot = 0; slot < n; ++slot) {
                const Element lhs = algebra.mann(slot, algebra.superpose(x, ys), z);
                for (std::size_t k = 0; k < n; ++k) args[k] = algebra.mann(slot, ys[k], z);
                const Element rhs = algebra.superpose(x, args);
                if (lhs != rhs) return failure("superposition-mann", v, slot, lhs, rhs);
            }
        } while (advance(v, m));
    }
    // x·w = x[μ_1(w) .. μ_n(w)] whenever every slot occurs in w
    {
        auto space = reachable_frames(algebra);
        auto frames = space->frames();
        std::vector<Element> mu(n);
        for (std::size_t i = 0; i < frames.size(); ++i) {
            const MuFrame& f = frames[i];
            if (std::any_of(f.mu_star.begin(), f.mu_star.end(), [](StarElement s) { return s.is_sentinel(); }))
                continue;
            for (std::size_t k = 0; k < n; ++k) mu[k] = f.mu_star[k].element();
            for (Element x = 0; x < m; ++x) {
                const Element rhs = algebra.superpose(x, mu);
                if (f.action[x] == rhs) continue;
                Counterexample c;
                c.rule = "word-superposition";
                c.elements = {x};
                c.words = {space->witness(i)};
                std::ostringstream msg;
                msg << "x=" << x << " word " << to_string(c.words[0]) << ": x.w = " << f.action[x] << " but x[mu] = "
                    << rhs;
                c.detail = msg.str();
                return Verdict::fail(std::move(c));
            }
        }
    }
    return Verdict::pass();
}

std::optional<Element> find_zero(const AlgebraTables& t) {
    const std::size_t n = t.arity;
    const std::size_t m = t.size;
    const bool menger = t.flavor == Flavor::menger && !t.superposition.empty();
    for (Element z = 0; z < m; ++z) {
        bool ok = true;
        for (std::size_t slot = 0; slot < n && ok; ++slot)
            for (Element g = 0; g < m && ok; ++g)
                ok = mann_raw(t, slot, z, g) == z && mann_raw(t, slot, g, z) == z;
        if (ok && menger) {
            std::vector<Element> v(n + 1, 0);
            do {
                if (superpose_raw(t, z, std::span<const Element>(v.data() + 1, n)) != z) ok = false;
                for (std::size_t pos = 1; pos <= n && ok; ++pos) {
                    std::vector<Element> args(v.begin() + 1, v.end());
                    args[pos - 1] = z;
                    if (superpose_raw(t, v[0], args) != z) ok = false;
                }
            } while (ok && advance(v, m));
        }
        if (ok) return z;
    }
    return std::nullopt;
}

AbstractAlgebra abstract_from_concrete(const ConcreteAlgebra& algebra, AlgebraOptions options) {
    const std::size_t n = algebra.arity();
    const std::size_t m = algebra.size();
    AlgebraTables t;
    t.arity = n;
    t.size = m;
    t.flavor = algebra.flavor();
    t.mann.assign(n, std::vector<Element>(m * m));
    auto locate = [&](const PartialFunction& f, const std::string& what) {
        auto idx = algebra.find(f);
        if (!idx) throw InputError("algebra is not closed: " + what + " is not in the set");
        return static_cast<Element>(*idx);
    };
    for (std::size_t slot = 0; slot < n; ++slot)
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                t.mann[slot][x * m + y] =
                    locate(mann_compose(algebra[x], algebra[y], slot),
                           "f" + std::to_string(x) + " (+" + std::to_string(slot + 1) + ") f" + std::to_string(y));
    if (t.flavor == Flavor::menger && m > 0) {
        t.superposition.resize(ipow(m, n + 1));
        std::vector<Element> v(n + 1, 0);
        std::vector<PartialFunction> inner(n, algebra[0]);
        std::size_t index = 0;
        do {
            for (std::size_t k = 0; k < n; ++k) inner[k] = algebra[v[k + 1]];
            t.superposition[index++] =
                locate(superpose(algebra[v[0]], inner), "superposition f" + std::to_string(v[0]) + "[" + join(
                                                            std::span<const Element>(v.data() + 1, n)) + "]");
        } while (advance(v, m));
    }
    for (std::size_t i = 0; i < m; ++i)
        if (algebra[i].is_empty()) t.zero = static_cast<Element>(i);
    return AbstractAlgebra(std::move(t), options);
}

}  // namespace mengerkit
