#include "mengerkit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mengerkit::io {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
}

void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.contains(key)) throw InputError(where + ": unknown field '" + key + "'");
}

const json& field(const json& j, const char* name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError(where + ": missing field '" + name + "'");
    return *it;
}

std::size_t natural(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        throw InputError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

std::size_t below(const json& j, std::size_t limit, const std::string& where) {
    const std::size_t v = natural(j, where);
    if (v >= limit) throw InputError(where + ": value " + std::to_string(v) + " out of range");
    return v;
}

const json& array(const json& j, const std::string& where, std::optional<std::size_t> length = std::nullopt) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    if (length && j.size() != *length)
        throw InputError(where + ": expected " + std::to_string(*length) + " entries, got " +
                         std::to_string(j.size()));
    return j;
}

void check_format(const json& j, const char* expected, const std::string& where) {
    const json& f = field(j, "format", where);
    if (!f.is_string() || f.get<std::string>() != expected)
        throw InputError(where + ": field 'format' must be \"" + std::string(expected) + "\"");
}

Flavor flavor_field(const json& j, const std::string& where) {
    const json& f = field(j, "flavor", where);
    if (!f.is_string()) throw InputError(where + ": field 'flavor' must be a string");
    try {
        return parse_flavor(f.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(where + ": field 'flavor': " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json nest(const std::vector<Element>& flat, std::size_t m, std::size_t depth, std::size_t& at) {
    json out = json::array();
    for (std::size_t k = 0; k < m; ++k) {
        if (depth == 1) out.push_back(flat[at++]);
        else out.push_back(nest(flat, m, depth - 1, at));
    }
    return out;
}

void flatten(const json& j, std::size_t m, std::size_t depth, std::vector<Element>& out, const std::string& where) {
    array(j, where, m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::string here = where + "[" + std::to_string(k) + "]";
        if (depth == 1) out.push_back(static_cast<Element>(below(j[k], m, here)));
        else flatten(j[k], m, depth - 1, out, here);
    }
}

json point_to_json(const ExtendedPoint& p) {
    json out = json::array();
    for (StarElement s : p) {
        if (s.is_sentinel()) out.push_back({{"e", s.slot() + 1}});
        else out.push_back({{"g", s.element()}});
    }
    return out;
}

ExtendedPoint point_from_json(const json& j, std::size_t arity, const std::string& where) {
    array(j, where, arity);
    ExtendedPoint p;
    for (std::size_t k = 0; k < arity; ++k) {
        const std::string here = where + "[" + std::to_string(k) + "]";
        require_object(j[k], here);
        if (j[k].size() != 1) throw InputError(here + ": expected exactly one of 'g' or 'e'");
        if (j[k].contains("g")) {
            p.push_back(StarElement::element(static_cast<Element>(natural(j[k]["g"], here + ".g"))));
        } else if (j[k].contains("e")) {
            const std::size_t slot = natural(j[k]["e"], here + ".e");
            if (slot != k + 1) throw InputError(here + ".e: sentinel e" + std::to_string(slot) + " in slot " +
                                                std::to_string(k + 1));
            p.push_back(StarElement::sentinel(k));
        } else {
            throw InputError(here + ": expected 'g' or 'e'");
        }
    }
    return p;
}

const char* kind_name(PointKind k) {
    switch (k) {
        case PointKind::carrier: return "carrier";
        case PointKind::sentinel: return "sentinel";
        case PointKind::frame: return "frame";
        case PointKind::plain: return "plain";
    }
    return "plain";
}

PointKind parse_kind(const json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        for (PointKind k : {PointKind::carrier, PointKind::sentinel, PointKind::frame, PointKind::plain})
            if (s == kind_name(k)) return k;
    }
    throw InputError(where + ": expected one of carrier, sentinel, frame, plain");
}

}  // namespace

std::string algebra_to_json(const AbstractAlgebra& algebra) {
    const auto& t = algebra.tables();
    const std::size_t m = t.size;
    json j;
    j["format"] = kAlgebraFormat;
    j["kind"] = "abstract";
    j["flavor"] = to_string(t.flavor);
    j["n"] = t.arity;
    j["size"] = m;
    if (algebra.zero()) j["zero"] = *algebra.zero();
    json mann = json::array();
    for (const auto& table : t.mann) {
        std::size_t at = 0;
        mann.push_back(m ? nest(table, m, 2, at) : json::array());
    }
    j["mann"] = mann;
    if (t.flavor == Flavor::menger) {
        std::size_t at = 0;
        j["superposition"] = m ? nest(t.superposition, m, t.arity + 1, at) : json::array();
    }
    return dump(j);
}

std::string algebra_to_json(const ConcreteAlgebra& algebra) {
    json j;
    j["format"] = kAlgebraFormat;
    j["kind"] = "concrete";
    j["flavor"] = to_string(algebra.flavor());
    j["n"] = algebra.arity();
    j["base_size"] = algebra.base_size();
    json functions = json::array();
    for (const PartialFunction& f : algebra.functions()) {
        json table = json::array();
        for (std::int32_t v : f.table()) {
            if (v == PartialFunction::kUndefined) table.push_back(nullptr);
            else table.push_back(v);
        }
        functions.push_back(std::move(table));
    }
    j["functions"] = std::move(functions);
    return dump(j);
}

AlgebraDocument algebra_from_json(const std::string& text) {
    const std::string where = "algebra";
    const json j = parse(text);
    require_object(j, where);
    check_format(j, kAlgebraFormat, where);
    const json& kind = field(j, "kind", where);
    if (!kind.is_string()) throw InputError(where + ": field 'kind' must be a string");
    const Flavor flavor = flavor_field(j, where);
    const std::size_t n = natural(field(j, "n", where), where + ".n");
    if (n == 0) throw InputError(where + ".n: arity must be positive");

    if (kind.get<std::string>() == "abstract") {
        only_fields(j, {"format", "kind", "flavor", "n", "size", "zero", "mann", "superposition"}, where);
        AlgebraTables t;
        t.arity = n;
        t.flavor = flavor;
        t.size = natural(field(j, "size", where), where + ".size");
        const json& mann = array(field(j, "mann", where), where + ".mann", n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Element> flat;
            if (t.size) flatten(mann[k], t.size, 2, flat, where + ".mann[" + std::to_string(k) + "]");
            else array(mann[k], where + ".mann[" + std::to_string(k) + "]", 0);
            t.mann.push_back(std::move(flat));
        }
        if (j.contains("superposition")) {
            if (flavor != Flavor::menger) throw InputError(where + ".superposition: not allowed for a plain algebra");
            if (t.size) flatten(j["superposition"], t.size, n + 1, t.superposition, where + ".superposition");
        } else if (flavor == Flavor::menger && t.size) {
            throw InputError(where + ": missing field 'superposition' for a menger algebra");
        }
        if (j.contains("zero")) t.zero = static_cast<Element>(below(j["zero"], t.size, where + ".zero"));
        return AbstractAlgebra(std::move(t));
    }
    if (kind.get<std::string>() == "concrete") {
        only_fields(j, {"format", "kind", "flavor", "n", "base_size", "functions"}, where);
        const std::size_t base = natural(field(j, "base_size", where), where + ".base_size");
        if (base == 0) throw InputError(where + ".base_size: must be positive");
        std::size_t cells = 1;
        for (std::size_t k = 0; k < n; ++k) cells *= base;
        const json& functions = array(field(j, "functions", where), where + ".functions");
        std::vector<PartialFunction> fs;
        for (std::size_t i = 0; i < functions.size(); ++i) {
            const std::string here = where + ".functions[" + std::to_string(i) + "]";
            const json& row = array(functions[i], here, cells);
            std::vector<std::int32_t> table;
            for (std::size_t c = 0; c < cells; ++c) {
                if (row[c].is_null()) table.push_back(PartialFunction::kUndefined);
                else table.push_back(static_cast<std::int32_t>(below(row[c], base, here + "[" + std::to_string(c) + "]")));
            }
            fs.emplace_back(n, base, std::move(table));
        }
        return ConcreteAlgebra(n, base, std::move(fs), flavor);
    }
    throw InputError(where + ": field 'kind' must be \"abstract\" or \"concrete\"");
}

std::string relation_to_json(const BinRelation& relation) {
    json j;
    j["format"] = kRelationFormat;
    j["size"] = relation.size();
    json matrix = json::array();
    for (Element a = 0; a < relation.size(); ++a) {
        json row = json::array();
        for (Element b = 0; b < relation.size(); ++b) row.push_back(relation.contains(a, b) ? 1 : 0);
        matrix.push_back(std::move(row));
    }
    j["matrix"] = std::move(matrix);
    return dump(j);
}

BinRelation relation_from_json(const std::string& text) {
    const std::string where = "relation";
    const json j = parse(text);
    require_object(j, where);
    check_format(j, kRelationFormat, where);
    only_fields(j, {"format", "size", "matrix"}, where);
    const std::size_t m = natural(field(j, "size", where), where + ".size");
    const json& matrix = array(field(j, "matrix", where), where + ".matrix", m);
    BinRelation r(m);
    for (Element a = 0; a < m; ++a) {
        const std::string here = where + ".matrix[" + std::to_string(a) + "]";
        const json& row = array(matrix[a], here, m);
        for (Element b = 0; b < m; ++b) {
            const std::size_t v = natural(row[b], here + "[" + std::to_string(b) + "]");
            if (v > 1) throw InputError(here + "[" + std::to_string(b) + "]: entries must be 0 or 1");
            r.set(a, b, v == 1);
        }
    }
    return r;
}

std::string representation_to_json(const Representation& rep) {
    json j;
    j["format"] = kRepresentationFormat;
    j["n"] = rep.arity();
    j["carrier_size"] = rep.carrier_size();
    j["flavor"] = to_string(rep.flavor());
    json parts = json::array();
    for (const RepresentationPart& part : rep.parts()) {
        json points = json::array();
        json kinds = json::array();
        for (std::size_t i = 0; i < part.universe->size(); ++i) {
            points.push_back(point_to_json(part.universe->point(i)));
            kinds.push_back(kind_name(part.universe->kind(i)));
        }
        json assignment = json::array();
        for (const auto& row : part.assignment) {
            json values = json::array();
            for (std::int32_t v : row) {
                if (v == Representation::kUndefined) values.push_back(nullptr);
                else values.push_back(v);
            }
            assignment.push_back(std::move(values));
        }
        parts.push_back({{"points", std::move(points)}, {"kinds", std::move(kinds)}, {"assignment", std::move(assignment)}});
    }
    j["parts"] = std::move(parts);
    return dump(j);
}

Representation representation_from_json(const std::string& text) {
    const std::string where = "representation";
    const json j = parse(text);
    require_object(j, where);
    check_format(j, kRepresentationFormat, where);
    only_fields(j, {"format", "n", "carrier_size", "flavor", "parts"}, where);
    const std::size_t n = natural(field(j, "n", where), where + ".n");
    if (n == 0) throw InputError(where + ".n: arity must be positive");
    const std::size_t m = natural(field(j, "carrier_size", where), where + ".carrier_size");
    const Flavor flavor = flavor_field(j, where);
    const json& parts = array(field(j, "parts", where), where + ".parts");
    std::vector<RepresentationPart> out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const std::string here = where + ".parts[" + std::to_string(k) + "]";
        const json& p = parts[k];
        require_object(p, here);
        only_fields(p, {"points", "kinds", "assignment"}, here);
        const json& points = array(field(p, "points", here), here + ".points");
        const json& kinds = array(field(p, "kinds", here), here + ".kinds", points.size());
        std::vector<ExtendedPoint> pts;
        std::vector<PointKind> ks;
        for (std::size_t i = 0; i < points.size(); ++i) {
            pts.push_back(point_from_json(points[i], n, here + ".points[" + std::to_string(i) + "]"));
            ks.push_back(parse_kind(kinds[i], here + ".kinds[" + std::to_string(i) + "]"));
        }
        const std::size_t count = pts.size();
        RepresentationPart part;
        part.universe = std::make_shared<const PointUniverse>(
            n, std::move(pts), std::move(ks), std::vector<std::vector<CompositionWord>>(count),
            std::vector<std::vector<Element>>{});
        const json& assignment = array(field(p, "assignment", here), here + ".assignment", m);
        for (std::size_t g = 0; g < m; ++g) {
            const std::string row_where = here + ".assignment[" + std::to_string(g) + "]";
            const json& row = array(assignment[g], row_where, count);
            std::vector<std::int32_t> values;
            for (std::size_t i = 0; i < count; ++i) {
                if (row[i].is_null()) values.push_back(Representation::kUndefined);
                else values.push_back(static_cast<std::int32_t>(natural(row[i], row_where + "[" + std::to_string(i) + "]")));
            }
            part.assignment.push_back(std::move(values));
        }
        out.push_back(std::move(part));
    }
    return Representation(n, m, flavor, std::move(out));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("failed writing " + path.string());
}

AlgebraDocument load_algebra(const std::filesystem::path& path) { return algebra_from_json(read_file(path)); }
BinRelation load_relation(const std::filesystem::path& path) { return relation_from_json(read_file(path)); }
Representation load_representation(const std::filesystem::path& path) {
    return representation_from_json(read_file(path));
}

AbstractAlgebra to_abstract(const AlgebraDocument& document) {
    if (const auto* a = std::get_if<AbstractAlgebra>(&document)) return *a;
    return abstract_from_concrete(std::get<ConcreteAlgebra>(document));
}

}  // namespace mengerkit::io
