// Command-line front end: closure constructions, contractibility analysis,
// propagation traces and soft violation measures over JSON inputs.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ogc/algebra.hpp"
#include "ogc/automata.hpp"
#include "ogc/engine.hpp"
#include "ogc/errors.hpp"
#include "ogc/grammar.hpp"
#include "ogc/json_io.hpp"
#include "ogc/oracle.hpp"
#include "ogc/softdecomp.hpp"
#include "ogc/softedit.hpp"

using nlohmann::json;
using namespace ogc;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kInputError = 2;
constexpr int kResourceError = 3;

std::string dir_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

void emit(const json& j, bool as_json, const std::string& human) {
    if (as_json) std::cout << j.dump(2) << "\n";
    else std::cout << human;
}

EditWeights parse_weights(const std::string& csv) {
    std::vector<Rational> parts;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string item =
            comma == std::string::npos ? csv.substr(pos) : csv.substr(pos, comma - pos);
        parts.push_back(Rational::parse(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (parts.size() != 4)
        throw InputError("weights must be four comma-separated rationals (alpha,beta,gamma,delta)");
    return {parts[0], parts[1], parts[2], parts[3]};
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
    std::vector<std::int64_t> out;
    if (csv.empty()) return out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string item =
            comma == std::string::npos ? csv.substr(pos) : csv.substr(pos, comma - pos);
        try {
            out.push_back(std::stoll(item));
        } catch (const std::logic_error&) {
            throw InputError("cannot parse integer: " + item);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int run_analyze_automaton(const std::string& file, bool as_json, bool with_oracle,
                          std::size_t max_len) {
    const Nfa a = load_nfa(file);
    const Dfa d = determinize(a);
    const bool closed = is_prefix_closed(d);
    const auto promoted = promoted_states(a);

    if (with_oracle) {
        // closedness of the enumerated language, with exact per-word
        // prefix membership
        oracle::LanguageOracle all{[](const Word&) { return true; }, a.alphabet(), max_len};
        for (const Word& w : oracle::enumerate_language(all)) {
            const bool in_prefixes =
                oracle::bounded_prefix_membership(a, w, w.size() + a.states().size());
            if (in_prefixes && !accepts(a, w) && closed) {
                std::cerr << "oracle mismatch: " << format_word(w)
                          << " is a prefix but not a member\n";
                return kDomainFailure;
            }
        }
    }

    json out;
    out["deterministic"] = a.states().size() == d.states().size();
    out["prefix_closed"] = closed;
    out["promoted_states"] = promoted;
    std::string human = std::string("prefix-closed: ") + (closed ? "true" : "false") + "\n";
    if (!promoted.empty()) {
        human += "promoted states:";
        for (const StateId& q : promoted) human += " " + q;
        human += "\n";
    }
    emit(out, as_json, human);
    return kOk;
}

int run_prefix_close(const std::string& file, const std::string& out_path) {
    const Nfa closed = prefix_closure(load_nfa(file));
    const json j = nfa_to_json(closed);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    return kOk;
}

int run_analyze_grammar(const std::string& file, bool as_json) {
    const CnfGrammar g = load_grammar(file);
    const auto closure = prefix_closure_cnf(g);
    json out;
    out["nonterminals"] = g.nonterminals().size();
    out["productions"] = g.rules().size();
    out["accepts_empty_word"] = g.has_epsilon_rule();
    out["closure_raw_rules"] = closure.raw_rule_count;
    out["closure_productions"] = closure.grammar.rules().size();
    emit(out, as_json,
         "nonterminals: " + std::to_string(g.nonterminals().size()) +
             "\nproductions: " + std::to_string(g.rules().size()) +
             "\nclosure productions: " + std::to_string(closure.grammar.rules().size()) + "\n");
    return kOk;
}

int run_prefix_close_grammar(const std::string& file, const std::string& out_path) {
    const auto closure = prefix_closure_cnf(load_grammar(file));
    const json j = grammar_to_json(closure.grammar);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
    return kOk;
}

int run_check_contractible(const std::string& file, const std::string& direction,
                           std::size_t max_len, bool as_json) {
    const json spec = load_file(file);
    const ConstraintDef c = constraint_from_json(spec, dir_of(file));
    ClosureDirection dir;
    if (direction == "prefix") dir = ClosureDirection::Prefix;
    else if (direction == "suffix") dir = ClosureDirection::Suffix;
    else if (direction == "subword") dir = ClosureDirection::Subword;
    else if (direction == "subsequence") dir = ClosureDirection::Subsequence;
    else throw InputError("unknown direction: " + direction);

    const ClosureVerdict v = contractibility_oracle(c, c.type, max_len, dir);
    json out;
    out["holds_up_to"] = v.tested_len;
    out["holds"] = v.holds;
    std::string human;
    if (v.holds) {
        human = "holds up to length " + std::to_string(v.tested_len) + "\n";
    } else {
        out["witness"] = {{"member", tuple_str(v.witness->first)},
                          {"reduced", tuple_str(v.witness->second)}};
        human = "fails: " + tuple_str(v.witness->first) + " is in the language, " +
                tuple_str(v.witness->second) + " is not\n";
    }
    emit(out, as_json, human);
    return kOk;
}

int run_propagate(const std::string& file, bool as_json) {
    const json scenario = load_file(file);
    const json trace = run_scenario(scenario, dir_of(file));
    if (as_json) {
        std::cout << trace.dump(2) << "\n";
    } else {
        for (const auto& step : trace) {
            std::cout << step["phase"].get<std::string>() << " domains=" << step["domains"].dump()
                      << "\n";
        }
    }
    if (!trace.empty() && trace.back()["phase"] == "failed") return kDomainFailure;
    return kOk;
}

int run_soft_edit(const std::string& automaton_file, const std::string& weight_csv,
                  const std::string& word_text, const std::string& sep, bool approx,
                  std::optional<std::size_t> mstar, bool as_json, bool with_oracle,
                  const std::string& cost_cap, std::size_t budget) {
    const Nfa a = load_nfa(automaton_file);
    const EditWeights w = parse_weights(weight_csv);
    const Word word = parse_word(word_text, sep);
    OpenEditMeasure m(a, w);

    const EditResult r = m.measure(word);
    json out;
    out["m"] = r.cost.str();

    if (with_oracle) {
        const Nfa closed = prefix_closure(a);
        oracle::LanguageOracle member{
            [&closed](const Word& x) {
                for (const Symbol& s : x)
                    if (!closed.has_symbol(s)) return false;
                return accepts(closed, x);
            },
            a.alphabet(), word.size() + 4};
        const Rational cap = cost_cap.empty() ? r.cost + Rational(1) : Rational::parse(cost_cap);
        const Rational check = oracle::edit_distance_bruteforce(
            member, {w.substitution, w.insertion, w.deletion, w.transposition}, word, cap,
            budget);
        if (check != r.cost) {
            std::cerr << "oracle mismatch: measure " << r.cost << " vs brute force " << check
                      << "\n";
            return kDomainFailure;
        }
    }

    if (approx) {
        const ApproxMeasures am = approx_measures(m);
        out["m1"] = am.m1.measure(word).cost.str();
        out["m2"] = am.m2.measure(word).cost.str();
        out["m3"] = am.m3.measure(word).cost.str();
        out["m4"] = am.m4.measure(word).cost.str();
        out["m5"] = am.m5(word).str();
    }
    if (mstar) {
        const MStarResult star = m_star_bounded(m, word, *mstar);
        out["mstar"] = {{"value", star.value.str()},
                        {"status", star.status == MStarResult::Status::Exact ? "exact"
                                                                             : "upper_bound"},
                        {"ext", format_word(star.extension, sep)}};
    }

    std::string human = "m = " + r.cost.str() + "\n";
    if (out.contains("m5"))
        human += "m1 = " + out["m1"].get<std::string>() + ", m2 = " + out["m2"].get<std::string>() +
                 ", m3 = " + out["m3"].get<std::string>() + ", m4 = " + out["m4"].get<std::string>() +
                 ", m5 = " + out["m5"].get<std::string>() + "\n";
    if (out.contains("mstar"))
        human += "mstar = " + out["mstar"]["value"].get<std::string>() + " (" +
                 out["mstar"]["status"].get<std::string>() + ")\n";
    emit(out, as_json, human);
    return kOk;
}

int run_soft_decomp(const std::string& name, const std::string& type_csv,
                    const std::string& lower_csv, const std::string& upper_csv,
                    const std::string& comb_name, const std::string& valuation_csv, bool analyze,
                    bool as_json) {
    const Decomposition d = make_decomposition(name, parse_int_list(type_csv),
                                               parse_int_list(lower_csv),
                                               parse_int_list(upper_csv));
    const CombiningFunction comb = make_comb(comb_name);
    const std::vector<std::int64_t> v = parse_int_list(valuation_csv);
    const Rational value = violation(d.instantiate(v.size()), comb, v);

    json out;
    out["measure"] = value.str();
    std::string human = "measure = " + value.str() + "\n";

    if (analyze) {
        const std::size_t n = v.size();
        const auto covering = covering_check(d.instantiate(n), d.instantiate(n + 1));
        const char* cov = covering.status == CoveringResult::Status::Covered ? "covered"
                          : covering.status == CoveringResult::Status::NotCovered
                              ? "not_covered"
                              : "indeterminate";
        const bool embeds = semantic_embedding_check(d.instantiate(n), d.instantiate(n + 1),
                                                     d.natural_embedding(n), comb);
        const std::size_t mono_len = std::min<std::size_t>(n + 1, 4);
        const auto mono = measure_non_decreasing(d, comb, ErrorKind::Binary, mono_len);
        out["covering"] = cov;
        out["semantic_embedding"] = embeds;
        out["non_decreasing_up_to"] = mono_len;
        out["non_decreasing"] = mono.non_decreasing;
        human += std::string("covering: ") + cov + "\n";
        human += std::string("semantic embedding: ") + (embeds ? "true" : "false") + "\n";
        human += std::string("non-decreasing: ") + (mono.non_decreasing ? "true" : "false") + "\n";
    }
    emit(out, as_json, human);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"open global constraints: closures, propagation and soft measures"};
    app.require_subcommand(1);

    bool as_json = false;
    bool with_oracle = false;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--oracle", with_oracle, "cross-check results against the brute-force oracles");

    std::string file, out_path, direction = "prefix", sep, weights_csv, word_text;
    std::string decomp_name, type_csv, lower_csv, upper_csv, comb_name = "count", valuation_csv;
    std::string cost_cap;
    std::size_t max_len = 6;
    std::size_t budget = 10'000'000;
    bool approx = false;
    bool analyze = false;
    std::optional<std::size_t> mstar;
    std::size_t mstar_arg = 0;

    auto* analyze_automaton =
        app.add_subcommand("analyze-automaton", "prefix-closedness and promoted states");
    analyze_automaton->add_option("file", file)->required();
    analyze_automaton->add_option("--max-len", max_len, "oracle enumeration bound");

    auto* prefix_close = app.add_subcommand("prefix-close", "emit the prefix-closure automaton");
    prefix_close->add_option("file", file)->required();
    prefix_close->add_option("-o,--output", out_path);

    auto* analyze_grammar = app.add_subcommand("analyze-grammar", "grammar statistics");
    analyze_grammar->add_option("file", file)->required();

    auto* prefix_close_grammar =
        app.add_subcommand("prefix-close-grammar", "emit the prefix-closure grammar");
    prefix_close_grammar->add_option("file", file)->required();
    prefix_close_grammar->add_option("-o,--output", out_path);

    auto* check = app.add_subcommand("check-contractible", "bounded closure check");
    check->add_option("file", file)->required();
    check->add_option("--direction", direction, "prefix|suffix|subword|subsequence");
    check->add_option("--max-len", max_len);

    auto* propagate = app.add_subcommand("propagate", "run a session scenario");
    propagate->add_option("file", file)->required();

    auto* soft_edit = app.add_subcommand("soft-edit", "weighted edit distance to the prefixes");
    soft_edit->add_option("--automaton", file)->required();
    soft_edit->add_option("--weights", weights_csv, "alpha,beta,gamma,delta")->required();
    soft_edit->add_option("--word", word_text)->required();
    soft_edit->add_option("--sep", sep, "symbol separator for multi-character symbols");
    soft_edit->add_flag("--approx", approx, "also evaluate the reweighted approximations");
    auto* mstar_opt = soft_edit->add_option("--mstar", mstar_arg, "extension bound");
    soft_edit->add_option("--cost-cap", cost_cap, "oracle search cap");
    soft_edit->add_option("--budget", budget, "oracle search node budget");

    auto* soft_decomp = app.add_subcommand("soft-decomp", "decomposition-based measure");
    soft_decomp->add_option("--name", decomp_name)->required();
    soft_decomp->add_option("--type", type_csv, "value type, e.g. 1,2,3");
    soft_decomp->add_option("--lower", lower_csv);
    soft_decomp->add_option("--upper", upper_csv);
    soft_decomp->add_option("--comb", comb_name, "sum|max|count|sum_of_squares");
    soft_decomp->add_option("--valuation", valuation_csv)->required();
    soft_decomp->add_flag("--analyze", analyze, "covering/embedding/monotonicity verdicts");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*mstar_opt) mstar = mstar_arg;
        if (analyze_automaton->parsed())
            return run_analyze_automaton(file, as_json, with_oracle, max_len);
        if (prefix_close->parsed()) return run_prefix_close(file, out_path);
        if (analyze_grammar->parsed()) return run_analyze_grammar(file, as_json);
        if (prefix_close_grammar->parsed()) return run_prefix_close_grammar(file, out_path);
        if (check->parsed()) return run_check_contractible(file, direction, max_len, as_json);
        if (propagate->parsed()) return run_propagate(file, as_json);
        if (soft_edit->parsed())
            return run_soft_edit(file, weights_csv, word_text, sep, approx, mstar, as_json,
                                 with_oracle, cost_cap, budget);
        if (soft_decomp->parsed())
            return run_soft_decomp(decomp_name, type_csv, lower_csv, upper_csv, comb_name,
                                   valuation_csv, analyze, as_json);
        throw InputError("no subcommand");
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what();
        if (!e.best_bound.empty()) std::cerr << " (best bound " << e.best_bound << ")";
        std::cerr << "\n";
        return kResourceError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const LifecycleError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
}
