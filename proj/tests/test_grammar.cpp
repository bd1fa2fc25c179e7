#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ogc/errors.hpp"
#include "ogc/grammar.hpp"
#include "ogc/oracle.hpp"

using namespace ogc;
using ogc::testing::word;

namespace {

// S -> AB | eps, A -> a, B -> b: the language {eps, ab}
CnfGrammar g_ab() {
    return CnfGrammar::create({"S", "A", "B"}, {"a", "b"}, "S",
                              {{"S", CnfRule::Kind::Binary, "A", "B"},
                               {"A", CnfRule::Kind::Terminal, "a", ""},
                               {"B", CnfRule::Kind::Terminal, "b", ""},
                               {"S", CnfRule::Kind::Epsilon, "", ""}});
}

// a^n b^n for n >= 1
CnfGrammar g_anbn() {
    return CnfGrammar::create({"S", "T", "A", "B"}, {"a", "b"}, "S",
                              {{"S", CnfRule::Kind::Binary, "A", "B"},
                               {"S", CnfRule::Kind::Binary, "A", "T"},
                               {"T", CnfRule::Kind::Binary, "S", "B"},
                               {"A", CnfRule::Kind::Terminal, "a", ""},
                               {"B", CnfRule::Kind::Terminal, "b", ""}});
}

// nonempty balanced bracket words over ( )
CnfGrammar g_dyck() {
    return CnfGrammar::create({"S", "T", "L", "R"}, {"(", ")"}, "S",
                              {{"S", CnfRule::Kind::Binary, "L", "R"},
                               {"S", CnfRule::Kind::Binary, "L", "T"},
                               {"T", CnfRule::Kind::Binary, "S", "R"},
                               {"S", CnfRule::Kind::Binary, "S", "S"},
                               {"L", CnfRule::Kind::Terminal, "(", ""},
                               {"R", CnfRule::Kind::Terminal, ")", ""}});
}

std::set<Word> language_upto(const CnfGrammar& g, std::size_t max_len) {
    std::vector<Symbol> alphabet(g.terminals().begin(), g.terminals().end());
    return oracle::enumerate_language(
        {[g](const Word& w) { return cyk_accepts(g, w); }, alphabet, max_len});
}

void check_invariants(const CnfGrammar& g) {
    // re-running the validating constructor must succeed
    CHECK_NOTHROW(CnfGrammar::create(g.nonterminals(), g.terminals(), g.start(), g.rules()));
}

} // namespace

TEST_CASE("grammar validation") {
    CHECK_THROWS_AS(CnfGrammar::create({"S"}, {"a"}, "X", {}), InputError);
    CHECK_THROWS_AS(CnfGrammar::create({"S"}, {"S"}, "S", {}), InputError);
    CHECK_THROWS_AS(
        CnfGrammar::create({"S", "A"}, {"a"}, "S", {{"A", CnfRule::Kind::Epsilon, "", ""}}),
        InputError);
    // start with an epsilon rule may not be used on a right-hand side
    CHECK_THROWS_AS(CnfGrammar::create({"S", "A"}, {"a"}, "S",
                                       {{"S", CnfRule::Kind::Epsilon, "", ""},
                                        {"S", CnfRule::Kind::Binary, "A", "S"},
                                        {"A", CnfRule::Kind::Terminal, "a", ""}}),
                    InputError);
}

TEST_CASE("cyk_accepts") {
    const CnfGrammar g = g_ab();
    CHECK(cyk_accepts(g, word("ab")));
    CHECK(!cyk_accepts(g, word("a")));
    CHECK(cyk_accepts(g, word("")));
    CHECK_THROWS_AS(cyk_accepts(g, word("x")), InputError);

    const CnfGrammar anbn = g_anbn();
    CHECK(cyk_accepts(anbn, word("aabb")));
    CHECK(!cyk_accepts(anbn, word("")));
    CHECK(!cyk_accepts(anbn, word("abab")));
    CHECK(language_upto(anbn, 6) == std::set<Word>{word("ab"), word("aabb"), word("aaabbb")});
}

TEST_CASE("prefix closure of the two-letter grammar") {
    const auto result = prefix_closure_cnf(g_ab());
    check_invariants(result.grammar);
    CHECK(language_upto(result.grammar, 4) == std::set<Word>{word(""), word("a"), word("ab")});
}

TEST_CASE("prefix closure sizes stay within the construction bound") {
    for (const CnfGrammar& g : {g_ab(), g_anbn(), g_dyck()}) {
        const auto result = prefix_closure_cnf(g);
        CHECK(result.raw_rule_count <= 3 * g.rules().size());
    }
}

TEST_CASE("prefix closure against the enumeration oracle") {
    // every fixture completes any length-10 prefix within 20 letters, so the
    // derivation bound of 20 makes the prefix oracle exact up to length 10
    for (const CnfGrammar& g : {g_ab(), g_anbn(), g_dyck()}) {
        const auto result = prefix_closure_cnf(g);
        check_invariants(result.grammar);

        const auto prefixes = oracle::prefix_set(oracle::enumerate_cnf_language(g, 20));
        std::vector<Symbol> alphabet(g.terminals().begin(), g.terminals().end());
        oracle::LanguageOracle all{[](const Word&) { return true; }, alphabet, 10};
        for (const Word& w : oracle::enumerate_language(all)) {
            CHECK(cyk_accepts(result.grammar, w) == (prefixes.count(w) != 0));
        }
    }
}

TEST_CASE("derivation enumeration matches word-by-word membership") {
    for (const CnfGrammar& g : {g_ab(), g_anbn(), g_dyck()})
        CHECK(oracle::enumerate_cnf_language(g, 6) == language_upto(g, 6));
}

TEST_CASE("a^n b^n prefixes have at least as many a's") {
    const auto result = prefix_closure_cnf(g_anbn());
    std::vector<Symbol> alphabet{"a", "b"};
    oracle::LanguageOracle all{[](const Word&) { return true; }, alphabet, 8};
    for (const Word& w : oracle::enumerate_language(all)) {
        const auto a_count = std::count(w.begin(), w.end(), "a");
        const auto b_count = std::count(w.begin(), w.end(), "b");
        const bool expected =
            w.empty() || (a_count >= b_count && a_count >= 1 &&
                          std::is_sorted(w.begin(), w.end(),
                                         [](const Symbol& x, const Symbol& y) { return x < y; }));
        CHECK(cyk_accepts(result.grammar, w) == expected);
    }
}

TEST_CASE("closures of random grammars are sound and prefix-closed") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> rule_count(3, 9);
    const std::vector<std::string> nts{"S", "A", "B", "C"};
    const std::vector<std::string> ts{"a", "b"};
    std::uniform_int_distribution<std::size_t> nt_pick(0, nts.size() - 1);
    std::uniform_int_distribution<std::size_t> t_pick(0, ts.size() - 1);
    std::bernoulli_distribution binary(0.5), epsilon(0.3);

    for (int round = 0; round < 120; ++round) {
        std::vector<CnfRule> rules;
        const int k = rule_count(rng);
        for (int i = 0; i < k; ++i) {
            if (binary(rng)) {
                std::string b = nts[nt_pick(rng)], c = nts[nt_pick(rng)];
                if (b == "S") b = "A"; // keep the start off right-hand sides
                if (c == "S") c = "B";
                rules.push_back({nts[nt_pick(rng)], CnfRule::Kind::Binary, b, c});
            } else {
                rules.push_back({nts[nt_pick(rng)], CnfRule::Kind::Terminal, ts[t_pick(rng)], ""});
            }
        }
        if (epsilon(rng)) rules.push_back({"S", CnfRule::Kind::Epsilon, "", ""});
        const CnfGrammar g = CnfGrammar::create({nts.begin(), nts.end()}, {ts.begin(), ts.end()},
                                                "S", std::move(rules));
        const auto result = prefix_closure_cnf(g);
        check_invariants(result.grammar);
        CHECK(result.raw_rule_count <= 3 * g.rules().size() + 2);
        CHECK(cyk_accepts(result.grammar, word("")));

        // every prefix of a short member is accepted by the closure, and the
        // closure's own short language is itself prefix-closed
        const auto members = oracle::enumerate_cnf_language(g, 12);
        for (const Word& w : oracle::prefix_set(members)) {
            if (w.size() <= 7) CHECK(cyk_accepts(result.grammar, w));
        }
        const auto closure_members = oracle::enumerate_cnf_language(result.grammar, 7);
        for (const Word& w : closure_members) {
            if (w.empty()) continue;
            CHECK(closure_members.count(Word(w.begin(), w.end() - 1)) == 1);
        }
    }
}

TEST_CASE("unit cycles between prefix nonterminals collapse correctly") {
    // A -> BC and B -> AC induce a cycle between the prefix forms of A and B
    const CnfGrammar g = CnfGrammar::create({"S", "A", "B", "C"}, {"a", "b"}, "S",
                                            {{"S", CnfRule::Kind::Binary, "A", "C"},
                                             {"A", CnfRule::Kind::Binary, "B", "C"},
                                             {"B", CnfRule::Kind::Binary, "A", "C"},
                                             {"A", CnfRule::Kind::Terminal, "a", ""},
                                             {"B", CnfRule::Kind::Terminal, "b", ""},
                                             {"C", CnfRule::Kind::Terminal, "b", ""}});
    const auto result = prefix_closure_cnf(g);
    check_invariants(result.grammar);
    const auto prefixes = oracle::prefix_set(oracle::enumerate_cnf_language(g, 16));
    std::vector<Symbol> alphabet{"a", "b"};
    oracle::LanguageOracle all{[](const Word&) { return true; }, alphabet, 8};
    for (const Word& w : oracle::enumerate_language(all)) {
        if (prefixes.count(w)) CHECK(cyk_accepts(result.grammar, w));
    }
    const auto closure_members = oracle::enumerate_cnf_language(result.grammar, 8);
    for (const Word& w : closure_members) {
        if (w.empty()) continue;
        CHECK(closure_members.count(Word(w.begin(), w.end() - 1)) == 1);
    }
}

TEST_CASE("the empty word always belongs to the closure") {
    for (const CnfGrammar& g : {g_ab(), g_anbn(), g_dyck()})
        CHECK(cyk_accepts(prefix_closure_cnf(g).grammar, word("")));

    // empty language: the closure construction still yields {eps}
    const CnfGrammar empty = CnfGrammar::create(
        {"S"}, {"a"}, "S", {{"S", CnfRule::Kind::Binary, "S", "S"}});
    const auto result = prefix_closure_cnf(empty);
    CHECK(cyk_accepts(result.grammar, word("")));
    CHECK(language_upto(result.grammar, 4) == std::set<Word>{word("")});
}
