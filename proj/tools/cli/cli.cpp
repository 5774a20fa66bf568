#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <future>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "mengerkit/abstract_algebra.hpp"
#include "mengerkit/instance_forge.hpp"
#include "mengerkit/io.hpp"
#include "mengerkit/relation_lab.hpp"
#include "mengerkit/representation.hpp"
#include "mengerkit/theorem_suite.hpp"

namespace mengerkit::cli {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
    bool json = false;
    std::string flavor;
    std::string algebra;
    std::string chi, gamma, pi;
    std::string out;
    std::string out_dir = ".";
    std::string kind;
    std::string target;
    std::string bounds;
    bool point_all = false;
    std::size_t oracle_cap = kDefaultOracleCap;
    // generate
    std::size_t n = 2, base = 2, gens = 1, count = 1;
    std::uint64_t seed = 0;
    std::size_t closure_cap = kDefaultClosureCap;
    double undefined_probability = 0.25;
};

/// A command's outcome: the machine report plus the lines of its human summary.
struct Outcome {
    ordered_json report = ordered_json::object();
    std::vector<std::string> summary;
    int code = kExitPass;
};

std::optional<Flavor> flavor_option(const Options& o) {
    if (o.flavor.empty()) return std::nullopt;
    return parse_flavor(o.flavor);
}

ordered_json word_json(const CompositionWord& word) {
    ordered_json steps = ordered_json::array();
    for (const Step& s : word) steps.push_back({s.slot + 1, s.element});
    return steps;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["passed"] = v.passed();
    if (!v.passed()) {
        const Counterexample& c = v.counterexample();
        ordered_json cx;
        cx["rule"] = c.rule;
        cx["elements"] = c.elements;
        ordered_json words = ordered_json::array();
        for (const auto& w : c.words) words.push_back(word_json(w));
        cx["words"] = words;
        if (c.slot) cx["slot"] = *c.slot + 1;
        cx["detail"] = c.detail;
        j["counterexample"] = cx;
    }
    return j;
}

std::string verdict_line(const std::string& name, const Verdict& v) {
    if (v.passed()) return name + ": pass";
    const Counterexample& c = v.counterexample();
    return name + ": FAIL [" + c.rule + "] " + c.detail;
}

ordered_json matrix_json(const BinRelation& r) { return nlohmann::ordered_json::parse(io::relation_to_json(r))["matrix"]; }

std::vector<std::string> matrix_lines(const BinRelation& r) {
    std::vector<std::string> lines;
    for (Element a = 0; a < r.size(); ++a) {
        std::string row;
        for (Element b = 0; b < r.size(); ++b) row += r.contains(a, b) ? '1' : '0';
        lines.push_back("  " + row);
    }
    return lines;
}

std::optional<BinRelation> optional_relation(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return io::load_relation(path);
}

struct LoadedAlgebra {
    io::AlgebraDocument document;
    AbstractAlgebra algebra;
    const ConcreteAlgebra* concrete() const { return std::get_if<ConcreteAlgebra>(&document); }
};

LoadedAlgebra load(const Options& o) {
    io::AlgebraDocument doc = io::load_algebra(o.algebra);
    AbstractAlgebra abstract = io::to_abstract(doc);
    return {std::move(doc), std::move(abstract)};
}

Target target_from(const Options& o) {
    const TargetKind kind = parse_target_kind(o.target);
    Target t{kind, std::nullopt, std::nullopt, std::nullopt};
    if (target_uses_chi(kind)) t.chi = optional_relation(o.chi);
    if (target_uses_gamma(kind)) t.gamma = optional_relation(o.gamma);
    if (target_uses_pi(kind)) t.pi = optional_relation(o.pi);
    return t;
}

WordSystemBounds parse_bounds(const std::string& text) {
    WordSystemBounds b;
    if (text.empty()) return b;
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            b.max_n = b.max_m = std::stoul(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            const std::string left = text.substr(0, comma), right = text.substr(comma + 1);
            b.max_n = std::stoul(left, &used);
            if (used != left.size()) throw std::invalid_argument(text);
            b.max_m = std::stoul(right, &used);
            if (used != right.size()) throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw InputError("--bounds: expected N,M but got '" + text + "'");
    }
    if (b.max_n == 0 || b.max_m == 0) throw InputError("--bounds: bounds must be positive");
    return b;
}

ordered_json conditions_json(const ConditionsReport& report, std::vector<std::string>& summary) {
    ordered_json checks = ordered_json::array();
    for (const NamedCheck& c : report.checks) {
        ordered_json j{{"name", c.name}};
        j.update(verdict_json(c.verdict));
        checks.push_back(j);
        summary.push_back("  " + verdict_line(c.name, c.verdict));
    }
    return checks;
}

Outcome cmd_check(const Options& o) {
    const LoadedAlgebra in = load(o);
    const Flavor flavor = flavor_option(o).value_or(in.algebra.flavor());
    if (flavor == Flavor::menger && in.algebra.flavor() != Flavor::menger)
        throw InputError("--flavor: menger semantics requested on a plain algebra");
    const AbstractAlgebra g = flavor == Flavor::plain ? in.algebra.as_plain() : in.algebra;

    std::vector<NamedCheck> checks;
    checks.push_back({"associativity", check_associativity(g)});
    if (flavor == Flavor::menger) checks.push_back({"menger identities", check_menger_identities(g)});
    checks.push_back({"representability", check_representability(g)});

    Outcome r;
    r.report["flavor"] = to_string(flavor);
    r.report["size"] = g.size();
    r.report["zero"] = g.zero() ? ordered_json(*g.zero()) : ordered_json(nullptr);
    r.summary.push_back("algebra of size " + std::to_string(g.size()) + ", " + to_string(flavor) + " flavor");
    ordered_json list = ordered_json::array();
    bool ok = true;
    for (const NamedCheck& c : checks) {
        ordered_json j{{"name", c.name}};
        j.update(verdict_json(c.verdict));
        list.push_back(j);
        r.summary.push_back("  " + verdict_line(c.name, c.verdict));
        ok = ok && c.verdict.passed();
    }
    r.report["checks"] = list;
    r.report["passed"] = ok;
    r.code = ok ? kExitPass : kExitFail;
    return r;
}

Outcome cmd_relations(const Options& o) {
    const LoadedAlgebra in = load(o);
    const ConcreteAlgebra* concrete = in.concrete();
    if (!concrete) throw InputError("--algebra: relations needs a concrete algebra");
    const ProjectionRelations rel = concrete_projection_relations(*concrete);
    Outcome r;
    ordered_json files = ordered_json::object();
    fs::create_directories(o.out_dir);
    for (const auto& [name, relation] :
         {std::pair{"chi", &rel.chi}, std::pair{"gamma", &rel.gamma}, std::pair{"pi", &rel.pi}}) {
        const fs::path path = fs::path(o.out_dir) / (std::string(name) + ".json");
        io::write_file(path, io::relation_to_json(*relation));
        files[name] = path.string();
        r.summary.push_back(std::string(name) + " -> " + path.string());
        for (auto& line : matrix_lines(*relation)) r.summary.push_back(line);
    }
    r.report["files"] = files;
    r.report["passed"] = true;
    return r;
}

Outcome cmd_closure(const Options& o) {
    const LoadedAlgebra in = load(o);
    const ClosureKind kind = parse_closure_kind(o.kind);
    const std::optional<BinRelation> pi = optional_relation(o.pi);
    if (uses_pi(kind) && !pi) throw InputError("--pi: closure kind " + o.kind + " needs pi");
    const BinRelation chi = closure_chi(in.algebra, pi, kind);
    Outcome r;
    if (!o.out.empty()) {
        io::write_file(o.out, io::relation_to_json(chi));
        r.report["file"] = o.out;
    }
    r.report["kind"] = to_string(kind);
    r.report["relation"] = matrix_json(chi);
    r.report["passed"] = true;
    r.summary.push_back(std::string(to_string(kind)) + " closure:");
    for (auto& line : matrix_lines(chi)) r.summary.push_back(line);
    return r;
}

Outcome cmd_classify(const Options& o) {
    const LoadedAlgebra in = load(o);
    const Target target = target_from(o);
    const Flavor flavor = flavor_option(o).value_or(in.algebra.flavor());
    const ConditionsReport report = verify_conditions(in.algebra, target, flavor);
    Outcome r;
    r.report["target"] = to_string(target.kind);
    r.report["theorem"] = theorem_id(target.kind, flavor);
    r.summary.push_back(std::string("target ") + to_string(target.kind) + " (" + theorem_id(target.kind, flavor) + ")");
    r.report["checks"] = conditions_json(report, r.summary);
    r.report["passed"] = report.passed();
    r.code = report.passed() ? kExitPass : kExitFail;
    return r;
}

Outcome cmd_represent(const Options& o) {
    const LoadedAlgebra in = load(o);
    const BinRelation chi = io::load_relation(o.chi);
    std::vector<std::pair<Element, Element>> pairs;
    if (!o.gamma.empty()) {
        const BinRelation gamma = io::load_relation(o.gamma);
        if (gamma.size() != in.algebra.size()) throw InputError("--gamma: relation size differs from the algebra");
        pairs = gamma.pairs();
        if (pairs.empty()) throw InputError("--gamma: relation is empty, the sum would have no parts");
    } else {
        for (Element a = 0; a < in.algebra.size(); ++a) pairs.emplace_back(a, a);
    }
    UniverseOptions options;
    options.flavor = flavor_option(o);
    // The first build checks the preconditions; the rest share its universe.
    std::vector<Representation> parts;
    parts.push_back(build_representation(in.algebra, chi, PairMode{pairs[0].first, pairs[0].second}, options));
    const auto universe = parts.front().parts().front().universe;
    for (std::size_t i = 1; i < pairs.size(); ++i)
        parts.push_back(build_representation(in.algebra, chi, PairMode{pairs[i].first, pairs[i].second}, universe));
    const Representation rep = sum_representations(parts);
    io::write_file(o.out, io::representation_to_json(rep));

    Outcome r;
    r.report["file"] = o.out;
    r.report["flavor"] = to_string(rep.flavor());
    r.report["parts"] = rep.parts().size();
    r.report["points"] = rep.point_count();
    r.report["passed"] = true;
    r.summary.push_back("wrote " + o.out + ": " + std::to_string(rep.parts().size()) + " parts, " +
                        std::to_string(rep.point_count()) + " points");
    return r;
}

Outcome cmd_verify(const Options& o) {
    const LoadedAlgebra in = load(o);
    const Target target = target_from(o);
    const WordSystemBounds bounds = parse_bounds(o.bounds);
    const TheoremVerdict verdict = roundtrip(in.algebra, target, flavor_option(o), in.concrete(), bounds);

    Outcome r;
    r.report["target"] = to_string(target.kind);
    r.report["theorem"] = verdict.theorem;
    r.summary.push_back(std::string("target ") + to_string(target.kind) + " (" + verdict.theorem + ")");
    r.summary.push_back("conditions:");
    r.report["conditions"] = conditions_json(verdict.conditions, r.summary);
    if (verdict.roundtrip) {
        const RoundtripReport& rt = *verdict.roundtrip;
        ordered_json j;
        j["parts"] = rt.part_count;
        ordered_json matches = ordered_json::array();
        r.summary.push_back("roundtrip over " + std::to_string(rt.part_count) + " parts:");
        for (const RelationMatch& m : rt.matches) {
            ordered_json mj{{"name", m.name}, {"equal", m.equal()}};
            if (!m.equal()) {
                mj["expected"] = matrix_json(m.expected);
                mj["actual"] = matrix_json(m.actual);
            }
            matches.push_back(mj);
            r.summary.push_back("  " + m.name + (m.equal() ? " reproduced" : " DIFFERS"));
        }
        j["matches"] = matches;
        j["homomorphism"] = verdict_json(rt.homomorphism);
        r.summary.push_back("  " + verdict_line("homomorphism", rt.homomorphism));
        if (rt.faithful) {
            j["faithful"] = {{"faithful", rt.faithful->faithful},
                             {"sum_identity", rt.faithful->sum_identity},
                             {"realizes_target", rt.faithful->realizes_target}};
            r.summary.push_back(std::string("  faithful sum: ") + (rt.faithful->faithful ? "yes" : "no") +
                                ", relations preserved: " +
                                (rt.faithful->sum_identity && rt.faithful->realizes_target ? "yes" : "no"));
        }
        j["passed"] = rt.passed();
        r.report["roundtrip"] = j;
    } else {
        r.report["roundtrip"] = nullptr;
        r.summary.push_back("roundtrip skipped: conditions fail");
    }
    if (verdict.crosscheck) {
        ordered_json j;
        j["theorem"] = verdict.crosscheck->theorem;
        ordered_json systems = ordered_json::array();
        r.summary.push_back("word systems (" + verdict.crosscheck->theorem + ", bounds " + std::to_string(bounds.max_n) +
                            "," + std::to_string(bounds.max_m) + "):");
        for (const SystemCrosscheck& s : verdict.crosscheck->systems) {
            systems.push_back({{"system", to_string(s.system)},
                               {"exact", s.exact_pass},
                               {"truncated", s.truncated_pass},
                               {"complete_bounds", s.complete_bounds},
                               {"divergent", s.divergent()}});
            r.summary.push_back(std::string("  ") + to_string(s.system) + ": exact " + (s.exact_pass ? "pass" : "fail") +
                                ", truncated " + (s.truncated_pass ? "pass" : "fail") +
                                (s.divergent() ? " DIVERGENT" : ""));
        }
        j["systems"] = systems;
        j["divergent"] = verdict.crosscheck->divergent();
        r.report["crosscheck"] = j;
    }
    r.report["bounds"] = {bounds.max_n, bounds.max_m};
    r.report["passed"] = verdict.passed();
    r.summary.push_back(verdict.passed() ? "verdict: pass" : "verdict: FAIL");
    r.code = verdict.passed() ? kExitPass : kExitFail;
    return r;
}

Outcome cmd_oracle(const Options& o) {
    const LoadedAlgebra in = load(o);
    const std::optional<BinRelation> pi = optional_relation(o.pi);
    const Flavor flavor = flavor_option(o).value_or(in.algebra.flavor());
    const BinRelation oracle = least_quasiorder_oracle(in.algebra, pi, flavor, o.oracle_cap);
    const ClosureKind kind = pi ? (flavor == Flavor::menger ? ClosureKind::chi_pi : ClosureKind::chi_pi_bullet)
                                : (flavor == Flavor::menger ? ClosureKind::chi0 : ClosureKind::chi0_bullet);
    const AbstractAlgebra view = flavor == Flavor::plain ? in.algebra.as_plain() : in.algebra;
    const BinRelation closure = closure_chi(view, pi, kind);
    const bool agree = oracle == closure;

    Outcome r;
    r.report["kind"] = to_string(kind);
    r.report["oracle"] = matrix_json(oracle);
    r.report["closure"] = matrix_json(closure);
    r.report["agree"] = agree;
    r.report["passed"] = agree;
    r.summary.push_back("least l-regular v-negative quasi-order:");
    for (auto& line : matrix_lines(oracle)) r.summary.push_back(line);
    r.summary.push_back(std::string(to_string(kind)) + (agree ? " closure agrees" : " closure DIFFERS"));
    r.code = agree ? kExitPass : kExitFail;
    return r;
}

Outcome cmd_generate(const Options& o) {
    if (o.count == 0) throw InputError("--count: must be positive");
    GeneratorConfig base;
    base.arity = o.n;
    base.base_size = o.base;
    base.generator_count = o.gens;
    base.flavor = flavor_option(o).value_or(Flavor::menger);
    base.closure_cap = o.closure_cap;
    base.undefined_probability = o.undefined_probability;

    std::vector<std::future<ConcreteAlgebra>> jobs;
    for (std::size_t k = 0; k < o.count; ++k) {
        GeneratorConfig cfg = base;
        cfg.seed = o.seed + k;
        jobs.push_back(std::async(std::launch::async, [cfg] { return generate_concrete(cfg); }));
    }
    std::vector<ConcreteAlgebra> algebras;
    for (auto& job : jobs) algebras.push_back(job.get());

    Outcome r;
    fs::create_directories(o.out_dir);
    ordered_json files = ordered_json::array();
    for (std::size_t k = 0; k < algebras.size(); ++k) {
        const fs::path path = fs::path(o.out_dir) / ("algebra-" + std::to_string(o.seed + k) + ".json");
        io::write_file(path, io::algebra_to_json(algebras[k]));
        files.push_back({{"file", path.string()}, {"seed", o.seed + k}, {"size", algebras[k].size()}});
        r.summary.push_back(path.string() + ": " + std::to_string(algebras[k].size()) + " functions");
    }
    r.report["flavor"] = to_string(base.flavor);
    r.report["instances"] = files;
    r.report["passed"] = true;
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Finite (2,n)-semigroups of partial functions: checks, closures and representations", "mengerkit"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "print the machine report instead of the summary");
    app.add_option("--flavor", o.flavor, "menger or plain semantics")->check(CLI::IsMember({"menger", "plain"}));

    std::vector<std::pair<CLI::App*, std::function<Outcome(const Options&)>>> commands;
    auto command = [&](const char* name, const char* help, std::function<Outcome(const Options&)> fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        commands.emplace_back(sub, std::move(fn));
        return sub;
    };
    auto algebra_opt = [&](CLI::App* sub) { sub->add_option("--algebra", o.algebra, "algebra file")->required(); };
    auto relation_opts = [&](CLI::App* sub) {
        sub->add_option("--target", o.target, "triplet, pair-chi-gamma, pair-gamma-pi, pair-chi-pi, "
                                              "single-chi, single-gamma or single-pi")
            ->required();
        sub->add_option("--chi", o.chi, "relation file");
        sub->add_option("--gamma", o.gamma, "relation file");
        sub->add_option("--pi", o.pi, "relation file");
    };

    algebra_opt(command("check", "associativity, identities and representability", cmd_check));

    auto* relations = command("relations", "projection relations of a concrete algebra", cmd_relations);
    algebra_opt(relations);
    relations->add_option("--out-dir", o.out_dir, "directory for chi.json, gamma.json, pi.json");

    auto* closure = command("closure", "closure relation of a kind", cmd_closure);
    algebra_opt(closure);
    closure->add_option("--pi", o.pi, "relation file");
    closure->add_option("--kind", o.kind, "chi-pi, chi0, chi-bullet or chi0-bullet")->required();
    closure->add_option("--out", o.out, "write the relation here");

    auto* classify = command("classify", "conditions for a target", cmd_classify);
    algebra_opt(classify);
    relation_opts(classify);

    auto* represent = command("represent", "build a canonical representation", cmd_represent);
    algebra_opt(represent);
    represent->add_option("--chi", o.chi, "relation file")->required();
    auto* gamma_opt = represent->add_option("--gamma", o.gamma, "sum over the pairs of this relation");
    auto* all_opt = represent->add_flag("--point-all", o.point_all, "sum over every point mode");
    gamma_opt->excludes(all_opt);
    represent->add_option("--out", o.out, "representation file")->required();

    auto* verify = command("verify", "conditions, round trip and word-system crosscheck", cmd_verify);
    algebra_opt(verify);
    relation_opts(verify);
    verify->add_option("--bounds", o.bounds, "word-system bounds N,M");

    auto* oracle = command("oracle", "brute-force least l-regular v-negative quasi-order", cmd_oracle);
    algebra_opt(oracle);
    oracle->add_option("--pi", o.pi, "relation file");
    oracle->add_option("--cap", o.oracle_cap, "largest carrier to enumerate");

    auto* generate = command("generate", "random closed concrete algebras", cmd_generate);
    generate->add_option("--n", o.n, "arity")->required()->check(CLI::PositiveNumber);
    generate->add_option("--base", o.base, "base set size")->required()->check(CLI::PositiveNumber);
    generate->add_option("--gens", o.gens, "generator count")->required();
    generate->add_option("--seed", o.seed, "first seed")->required();
    generate->add_option("--count", o.count, "instances, seeds seed..seed+count-1");
    generate->add_option("--out-dir", o.out_dir, "output directory")->required();
    generate->add_option("--cap", o.closure_cap, "closure cap");
    generate->add_option("--undefined", o.undefined_probability, "chance of an undefined cell")
        ->check(CLI::Range(0.0, 1.0));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    // --gamma and --point-all exclude each other, but one is required.
    if (represent->parsed() && o.gamma.empty() && !o.point_all) {
        err << "error: represent needs --gamma or --point-all\n";
        return kExitInput;
    }

    Outcome outcome;
    try {
        for (auto& [sub, fn] : commands)
            if (sub->parsed()) outcome = fn(o);
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    if (o.json) {
        ordered_json report;
        report["command"] = args;
        for (auto& [key, value] : outcome.report.items()) report[key] = value;
        report["exit_code"] = outcome.code;
        out << report.dump(2) << '\n';
    } else {
        for (const auto& line : outcome.summary) out << line << '\n';
    }
    return outcome.code;
}

}  // namespace mengerkit::cli
