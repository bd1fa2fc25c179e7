#include "ogc/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "ogc/errors.hpp"

namespace ogc {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

std::vector<std::string> string_list(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw InputError(std::string("missing array field: ") + field);
    std::vector<std::string> out;
    for (const auto& x : j[field]) out.push_back(x.get<std::string>());
    return out;
}

std::vector<std::int64_t> int_list(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw InputError(std::string("missing array field: ") + field);
    std::vector<std::int64_t> out;
    for (const auto& x : j[field]) out.push_back(x.get<std::int64_t>());
    return out;
}

std::vector<Value> value_list(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array())
        throw InputError(std::string("missing array field: ") + field);
    std::vector<Value> out;
    for (const auto& x : j[field]) out.push_back(value_from_json(x));
    return out;
}

} // namespace

Nfa nfa_from_json(const json& j) {
    std::vector<Transition> transitions;
    if (!j.contains("transitions") || !j["transitions"].is_array())
        throw InputError("automaton needs a transitions array");
    for (const auto& t : j["transitions"]) {
        transitions.push_back({t.at("from").get<std::string>(), t.at("symbol").get<std::string>(),
                               t.at("to").get<std::string>()});
    }
    auto start = string_list(j, "start");
    auto final_states = string_list(j, "final");
    return Nfa::create(string_list(j, "alphabet"), string_list(j, "states"),
                       {start.begin(), start.end()}, {final_states.begin(), final_states.end()},
                       std::move(transitions));
}

json nfa_to_json(const Nfa& a) {
    json j;
    j["alphabet"] = a.alphabet();
    j["states"] = a.states();
    j["start"] = a.start();
    j["final"] = a.accepting();
    json trans = json::array();
    for (const Transition& t : a.transitions())
        trans.push_back({{"from", t.from}, {"symbol", t.symbol}, {"to", t.to}});
    j["transitions"] = trans;
    return j;
}

Nfa load_nfa(const std::string& path) { return nfa_from_json(load_json_file(path)); }

CnfGrammar grammar_from_json(const json& j) {
    std::vector<CnfRule> rules;
    if (!j.contains("productions") || !j["productions"].is_array())
        throw InputError("grammar needs a productions array");
    for (const auto& p : j["productions"]) {
        CnfRule r;
        r.lhs = p.at("lhs").get<std::string>();
        const auto& rhs = p.at("rhs");
        if (rhs.is_array()) {
            if (rhs.size() != 2) throw InputError("binary rules take exactly two nonterminals");
            r.kind = CnfRule::Kind::Binary;
            r.first = rhs[0].get<std::string>();
            r.second = rhs[1].get<std::string>();
        } else {
            const std::string s = rhs.get<std::string>();
            if (s == "eps") {
                r.kind = CnfRule::Kind::Epsilon;
            } else {
                r.kind = CnfRule::Kind::Terminal;
                r.first = s;
            }
        }
        rules.push_back(std::move(r));
    }
    auto nts = string_list(j, "nonterminals");
    auto ts = string_list(j, "terminals");
    return CnfGrammar::create({nts.begin(), nts.end()}, {ts.begin(), ts.end()},
                              j.at("start").get<std::string>(), std::move(rules));
}

json grammar_to_json(const CnfGrammar& g) {
    json j;
    j["nonterminals"] = g.nonterminals();
    j["terminals"] = g.terminals();
    j["start"] = g.start();
    json prods = json::array();
    for (const CnfRule& r : g.rules()) {
        json p;
        p["lhs"] = r.lhs;
        switch (r.kind) {
        case CnfRule::Kind::Binary: p["rhs"] = json::array({r.first, r.second}); break;
        case CnfRule::Kind::Terminal: p["rhs"] = r.first; break;
        case CnfRule::Kind::Epsilon: p["rhs"] = "eps"; break;
        }
        prods.push_back(std::move(p));
    }
    j["productions"] = prods;
    return j;
}

CnfGrammar load_grammar(const std::string& path) {
    return grammar_from_json(load_json_file(path));
}

Value value_from_json(const json& j) {
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_string()) return Value(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Value(PairVal{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()});
    throw InputError("values must be integers, symbols, or integer pairs");
}

json value_to_json(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return json(*i);
    if (const auto* s = std::get_if<std::string>(&v)) return json(*s);
    const PairVal p = std::get<PairVal>(v);
    return json::array({p.first, p.second});
}

ConstraintDef constraint_from_json(const json& j, const std::string& base_dir) {
    const std::string kind = j.at("kind").get<std::string>();
    auto type = [&j]() { return value_list(j, "type"); };

    if (kind == "alldifferent") return alldifferent(type());
    if (kind == "gcc")
        return gcc(int_list(j, "values"), int_list(j, "lower"), int_list(j, "upper"), type());
    if (kind == "weak_gcc") return weak_gcc(int_list(j, "values"), int_list(j, "upper"), type());
    if (kind == "nvalue_eq") return nvalue_eq(j.at("n").get<std::int64_t>(), type());
    if (kind == "nvalue_le") return nvalue_le(j.at("n").get<std::int64_t>(), type());
    if (kind == "sequence")
        return sequence(j.at("l").get<std::int64_t>(), j.at("u").get<std::int64_t>(),
                        j.at("k").get<std::size_t>(), int_list(j, "values"), type());
    if (kind == "sliding_sum")
        return sliding_sum(j.at("l").get<std::int64_t>(), j.at("u").get<std::int64_t>(),
                           j.at("k").get<std::size_t>(), type());
    if (kind == "among")
        return among(j.at("l").get<std::int64_t>(), j.at("u").get<std::int64_t>(),
                     int_list(j, "values"), type());
    if (kind == "sum_eq") return sum_eq(j.at("z").get<std::int64_t>(), type());
    if (kind == "sum_le") return sum_le(j.at("z").get<std::int64_t>(), type());
    if (kind == "sum_ge") return sum_ge(j.at("z").get<std::int64_t>(), type());
    if (kind == "lex_leq") return lex_leq(type());
    if (kind == "lex_lt") return lex_lt(type());
    if (kind == "precedence")
        return precedence(j.at("s").get<std::int64_t>(), j.at("t").get<std::int64_t>(), type());
    if (kind == "contiguity") return contiguity();
    if (kind == "peak_eq") return peak_eq(j.at("n").get<std::int64_t>(), type());
    if (kind == "peak_le") return peak_le(j.at("n").get<std::int64_t>(), type());
    if (kind == "nopeak") return nopeak(type());
    if (kind == "average_eq")
        return average_eq(Rational::parse(j.at("mean").get<std::string>()), type());
    if (kind == "true") return constant_true(type());
    if (kind == "regular") {
        const auto& spec = j.at("automaton");
        Nfa a = spec.is_string() ? load_nfa(resolve(spec.get<std::string>(), base_dir))
                                 : nfa_from_json(spec);
        return regular_constraint(std::move(a));
    }
    if (kind == "cfg") {
        const auto& spec = j.at("grammar");
        CnfGrammar g = spec.is_string() ? load_grammar(resolve(spec.get<std::string>(), base_dir))
                                        : grammar_from_json(spec);
        return cfg_constraint(std::move(g));
    }
    throw InputError("unknown constraint kind: " + kind);
}

SessionConstraint session_from_json(const json& j, const std::string& base_dir) {
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "regular") {
        const auto& spec = j.at("automaton");
        Nfa a = spec.is_string() ? load_nfa(resolve(spec.get<std::string>(), base_dir))
                                 : nfa_from_json(spec);
        return session_regular(std::move(a));
    }
    if (kind == "cfg") {
        const auto& spec = j.at("grammar");
        CnfGrammar g = spec.is_string() ? load_grammar(resolve(spec.get<std::string>(), base_dir))
                                        : grammar_from_json(spec);
        return session_cfg(g);
    }
    if (kind == "gcc") {
        auto values = int_list(j, "values");
        auto upper = int_list(j, "upper");
        auto type = value_list(j, "type");
        ConstraintDef closed = gcc(values, int_list(j, "lower"), upper, type);
        // dropping the lower bounds keeps exactly the extendable prefixes
        return session_catalog(std::move(closed), weak_gcc(values, upper, type), true);
    }
    if (kind == "sum_eq") {
        std::vector<Value> type = value_list(j, "type");
        return session_sum_eq(j.at("z").get<std::int64_t>(), std::move(type));
    }
    if (kind == "sum_le") {
        auto type = value_list(j, "type");
        for (const Value& v : type) {
            const auto* i = std::get_if<std::int64_t>(&v);
            // a negative value could repair a broken prefix, so the
            // constraint is its own approximation only without them
            if (!i || *i < 0) throw InputError("sum sessions need non-negative integer types");
        }
        return session_contractible(sum_le(j.at("z").get<std::int64_t>(), std::move(type)));
    }
    if (kind == "sum_ge") {
        auto type = value_list(j, "type");
        const bool has_positive = std::any_of(type.begin(), type.end(), [](const Value& v) {
            const auto* i = std::get_if<std::int64_t>(&v);
            return i && *i > 0;
        });
        const auto z = j.at("z").get<std::int64_t>();
        return session_catalog(sum_ge(z, type), constant_true(type), has_positive || z <= 0);
    }
    if (kind == "nvalue_eq") {
        auto type = value_list(j, "type");
        const auto n = j.at("n").get<std::int64_t>();
        const bool reachable = n <= static_cast<std::int64_t>(
                                   std::set<Value>(type.begin(), type.end()).size());
        return session_catalog(nvalue_eq(n, type), nvalue_le(n, type), reachable);
    }
    if (kind == "peak_eq") {
        auto type = value_list(j, "type");
        const auto n = j.at("n").get<std::int64_t>();
        const bool can_add_peaks =
            std::set<Value>(type.begin(), type.end()).size() >= 2;
        return session_catalog(peak_eq(n, type), peak_le(n, type), can_add_peaks);
    }
    if (kind == "among") {
        auto type = value_list(j, "type");
        auto values = int_list(j, "values");
        const auto l = j.at("l").get<std::int64_t>();
        const auto u = j.at("u").get<std::int64_t>();
        const bool can_add = std::any_of(type.begin(), type.end(), [&values](const Value& v) {
            const auto* i = std::get_if<std::int64_t>(&v);
            return i && std::find(values.begin(), values.end(), *i) != values.end();
        });
        return session_catalog(among(l, u, values, type), among(0, u, values, type),
                               can_add || l <= 0);
    }
    if (kind == "lex_lt") {
        auto type = value_list(j, "type");
        return session_catalog(lex_lt(type), lex_leq(type), true);
    }
    if (kind == "average_eq") {
        auto type = value_list(j, "type");
        // any sequence extends to the target mean
        return session_catalog(
            average_eq(Rational::parse(j.at("mean").get<std::string>()), type),
            constant_true(type), true);
    }

    // contractible catalog constraints filter as themselves while open
    ConstraintDef c = constraint_from_json(j, base_dir);
    return session_contractible(std::move(c));
}

nlohmann::json run_scenario(const json& scenario, const std::string& base_dir) {
    Session session = Session::open_session(session_from_json(scenario.at("constraint"), base_dir));
    json trace = json::array();
    if (!scenario.contains("events") || !scenario["events"].is_array())
        throw InputError("scenario needs an events array");
    for (const auto& event : scenario["events"]) {
        const std::string op = event.at("op").get<std::string>();
        if (op == "add") {
            Domain d;
            for (const auto& x : event.at("domain")) d.insert(value_from_json(x));
            session.add_variable(d);
        } else if (op == "restrict") {
            Domain d;
            for (const auto& x : event.at("values")) d.insert(value_from_json(x));
            session.restrict_domain(event.at("var").get<std::size_t>(), d);
        } else if (op == "propagate") {
            session.propagate();
        } else if (op == "propagate_sum_bounds") {
            session.propagate_sum_bounds();
        } else if (op == "close") {
            session.close();
        } else {
            throw InputError("unknown scenario op: " + op);
        }
        json snap;
        snap["phase"] = phase_str(session.phase());
        if (session.phase() == Phase::Open)
            snap["open_filtering"] = session.open_filtering_is_tight() ? "tight" : "sound_only";
        json doms = json::array();
        for (const Domain& d : session.domains()) {
            json values = json::array();
            for (const Value& v : d) values.push_back(value_to_json(v));
            doms.push_back(std::move(values));
        }
        snap["domains"] = doms;
        trace.push_back(std::move(snap));
    }
    return trace;
}

Decomposition decomposition_from_json(const json& j) {
    const std::string name = j.at("name").get<std::string>();
    std::vector<std::int64_t> type, lower, upper;
    if (j.contains("type")) type = int_list(j, "type");
    if (j.contains("lower")) lower = int_list(j, "lower");
    if (j.contains("upper")) upper = int_list(j, "upper");
    return make_decomposition(name, type, lower, upper);
}

} // namespace ogc
