#include "mengerkit/types.hpp"

#include <sstream>

namespace mengerkit {

const char* to_string(Flavor flavor) {
    return flavor == Flavor::menger ? "menger" : "plain";
}

Flavor parse_flavor(const std::string& text) {
    if (text == "menger") return Flavor::menger;
    if (text == "plain") return Flavor::plain;
    throw InputError("unknown flavor '" + text + "' (expected menger or plain)");
}

std::string to_string(const ExtendedPoint& point) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) out << ',';
        if (point[i].is_sentinel())
            out << 'e' << point[i].slot() + 1;
        else
            out << point[i].element();
    }
    out << ')';
    return out.str();
}

std::string to_string(const CompositionWord& word) {
    if (word.empty()) return "<empty word>";
    std::ostringstream out;
    for (const Step& step : word) out << "(+" << step.slot + 1 << ' ' << step.element << ')';
    return out.str();
}

std::string describe(const Verdict& verdict) {
    if (verdict.passed()) return "pass";
    const Counterexample& c = verdict.counterexample();
    std::ostringstream out;
    out << "fail [" << c.rule << "]";
    if (!c.detail.empty()) out << ": " << c.detail;
    return out.str();
}

}  // namespace mengerkit
