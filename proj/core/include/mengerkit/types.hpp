#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mengerkit {

/// Index of a carrier element (or of a base-set element for concrete functions).
using Element = std::uint32_t;

/// menger: (2,n)-semigroup with a superposition; plain: Mann compositions only.
enum class Flavor { menger, plain };

const char* to_string(Flavor flavor);
Flavor parse_flavor(const std::string& text);

/// Malformed input: wrong shapes, out-of-range indices, violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded. `reached` is the count at the point of abort.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, std::size_t reached)
        : std::runtime_error(what), reached_(reached) {}
    std::size_t reached() const noexcept { return reached_; }

private:
    std::size_t reached_;
};

/// An element of G* = G ∪ {e_1..e_n}: either a carrier element or the sentinel
/// reserved for one slot. Slots are 0-based here; files and reports use 1-based.
class StarElement {
public:
    constexpr StarElement() = default;

    static constexpr StarElement element(Element g) {
        return StarElement(static_cast<std::int32_t>(g));
    }
    static constexpr StarElement sentinel(std::size_t slot) {
        return StarElement(-1 - static_cast<std::int32_t>(slot));
    }

    constexpr bool is_sentinel() const { return raw_ < 0; }
    constexpr Element element() const { return static_cast<Element>(raw_); }
    constexpr std::size_t slot() const { return static_cast<std::size_t>(-1 - raw_); }
    constexpr std::int32_t raw() const { return raw_; }

    friend constexpr auto operator<=>(StarElement, StarElement) = default;

private:
    constexpr explicit StarElement(std::int32_t raw) : raw_(raw) {}
    std::int32_t raw_ = 0;
};

using ExtendedPoint = std::vector<StarElement>;

std::string to_string(const ExtendedPoint& point);

/// One step `⊕_slot element` of a composition word. `slot` is 0-based.
struct Step {
    std::size_t slot = 0;
    Element element = 0;
    friend bool operator==(const Step&, const Step&) = default;
};

/// The word ⊕_{i1} y1 ⊕_{i2} y2 … applied left to right.
using CompositionWord = std::vector<Step>;

std::string to_string(const CompositionWord& word);

struct Counterexample {
    std::string rule;                    // stable machine name, e.g. "associativity"
    std::vector<Element> elements;       // instantiation, in rule-specific order
    std::vector<CompositionWord> words;  // witness words when the rule ranges over words
    std::optional<std::size_t> slot;     // 0-based
    std::string detail;
};

/// Outcome of a check: pass, or fail with a concrete counterexample.
class Verdict {
public:
    static Verdict pass() { return Verdict(); }
    static Verdict fail(Counterexample counterexample) {
        Verdict v;
        v.failure_ = std::move(counterexample);
        return v;
    }

    bool passed() const { return !failure_.has_value(); }
    explicit operator bool() const { return passed(); }
    const Counterexample& counterexample() const { return failure_.value(); }
    const std::optional<Counterexample>& failure() const { return failure_; }

private:
    std::optional<Counterexample> failure_;
};

std::string describe(const Verdict& verdict);

}  // namespace mengerkit
