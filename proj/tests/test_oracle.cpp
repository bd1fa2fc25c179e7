#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ogc/errors.hpp"
#include "ogc/oracle.hpp"

using namespace ogc;
using namespace ogc::oracle;
using ogc::testing::word;

namespace {

LanguageOracle for_nfa(const Nfa& a, std::size_t max_len) {
    return {[a](const Word& w) {
                for (const Symbol& s : w)
                    if (!a.has_symbol(s)) return false;
                return accepts(a, w);
            },
            a.alphabet(), max_len};
}

} // namespace

TEST_CASE("enumerate_language on small fixtures") {
    const auto a_bb = for_nfa(ogc::testing::a_plus_bb(), 3);
    CHECK(enumerate_language(a_bb) == std::set<Word>{word("a"), word("bb")});

    LanguageOracle alldiff{[](const Word& w) {
                               for (std::size_t i = 0; i < w.size(); ++i)
                                   for (std::size_t j = i + 1; j < w.size(); ++j)
                                       if (w[i] == w[j]) return false;
                               return true;
                           },
                           {"1", "2"},
                           3};
    CHECK(enumerate_language(alldiff) ==
          std::set<Word>{word(""), word("1"), word("2"), word("12"), word("21")});

    const auto alt = for_nfa(ogc::testing::ab_star_a(), 3);
    CHECK(enumerate_language(alt) == std::set<Word>{word(""), word("a"), word("ab"), word("aba")});
}

TEST_CASE("prefix_set") {
    CHECK(prefix_set({word("a"), word("bb")}) ==
          std::set<Word>{word(""), word("a"), word("b"), word("bb")});
    CHECK(prefix_set({}) == std::set<Word>{});

    // squares of a up to length 9: prefixes give every shorter a-block
    std::set<Word> squares;
    for (std::size_t n : {0u, 1u, 4u, 9u}) squares.insert(Word(n, "a"));
    std::set<Word> expect;
    for (std::size_t n = 0; n <= 9; ++n) expect.insert(Word(n, "a"));
    CHECK(prefix_set(squares) == expect);
}

TEST_CASE("contractible_bruteforce") {
    const auto astar = for_nfa(ogc::testing::a_star(), 5);
    CHECK(!contractible_bruteforce(astar).has_value());

    const auto a_bb = for_nfa(ogc::testing::a_plus_bb(), 5);
    auto witness = contractible_bruteforce(a_bb);
    REQUIRE(witness.has_value());
    CHECK(a_bb.membership(witness->member));
    CHECK(!a_bb.membership(witness->reduced));
    // the two-letter member is itself a counterexample: bb in, b out
    CHECK(a_bb.membership(word("bb")));
    CHECK(!a_bb.membership(word("b")));

    LanguageOracle sum5{[](const Word& w) {
                            long total = 0;
                            for (const Symbol& s : w) total += std::stol(s);
                            return total == 5;
                        },
                        {"0", "1", "2", "3", "4", "5"},
                        2};
    auto sum_witness = contractible_bruteforce(sum5);
    REQUIRE(sum_witness.has_value());
    // the first enumerated member has a non-member one-step prefix
    CHECK(sum_witness->member.size() == 2);
    CHECK(!sum5.membership(sum_witness->reduced));
}

TEST_CASE("bounded_prefix_membership agrees with literal prefix sets") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 40; ++i) {
        const Nfa a = ogc::testing::random_nfa(rng, 4, 2);
        const auto lang = enumerate_language(for_nfa(a, 8));
        const auto prefixes = prefix_set(lang);
        // all words up to length 4 against extensions up to total length 8
        LanguageOracle all{[](const Word&) { return true; }, a.alphabet(), 4};
        for (const Word& w : enumerate_language(all)) {
            CHECK(bounded_prefix_membership(a, w, 8) == (prefixes.count(w) != 0));
        }
    }
}

TEST_CASE("edit_distance_bruteforce basics") {
    const Nfa alt = ogc::testing::ab_star_a(); // already prefix-closed
    const auto member = for_nfa(alt, 8);
    const EditWeightsRef w2221{Rational(2), Rational(2), Rational(2), Rational(1)};

    CHECK(edit_distance_bruteforce(member, w2221, word("ab"), Rational(8)) == Rational(0));
    CHECK(edit_distance_bruteforce(member, w2221, word("abba"), Rational(8)) == Rational(1));
    CHECK(edit_distance_bruteforce(member, w2221, word("abb"), Rational(8)) == Rational(2));
}

TEST_CASE("edit_distance_bruteforce cap and budget errors") {
    const Nfa alt = ogc::testing::ab_star_a();
    const auto member = for_nfa(alt, 8);
    const EditWeightsRef unit{Rational(1), Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(edit_distance_bruteforce(member, unit, word("bbbb"), Rational(1)),
                    ResourceError);

    // on long words the word-rewriting search space explodes; the budget
    // stops it with the best bound in hand and the exact search takes over
    const Nfa abc = ogc::testing::abc_star();
    const auto abc_member = for_nfa(prefix_closure(abc), 20);
    const EditWeightsRef w4441{Rational(4), Rational(4), Rational(4), Rational(1)};
    try {
        edit_distance_bruteforce(abc_member, w4441, word("bbbabcabcabcca"), Rational(13),
                                 300'000);
        FAIL("expected the budget to be exhausted");
    } catch (const ResourceError& e) {
        CHECK(!e.best_bound.empty());
    }
}

TEST_CASE("open_dconsistency_bruteforce") {
    const Nfa a = ogc::testing::a_plus_bb();
    auto membership = [a](const Word& w) { return accepts(a, w); };

    // open with room for an extension: both letters have supports
    auto open_result = open_dconsistency_bruteforce(membership, {{"a", "b"}}, {"a", "b"}, 2);
    CHECK(open_result[0] == std::set<Symbol>{"a", "b"});

    // closed at length one: only the single-letter word remains
    auto closed_result = open_dconsistency_bruteforce(membership, {{"a", "b"}}, {"a", "b"}, 1);
    CHECK(closed_result[0] == std::set<Symbol>{"a"});

    auto alldiff = [](const Word& w) {
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (w[i] == w[j]) return false;
        return true;
    };
    auto pruned = open_dconsistency_bruteforce(alldiff, {{"1"}, {"1", "2"}}, {"1", "2"}, 4);
    CHECK(pruned[0] == std::set<Symbol>{"1"});
    CHECK(pruned[1] == std::set<Symbol>{"2"});
}
