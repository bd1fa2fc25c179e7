#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ogc/algebra.hpp"
#include "ogc/errors.hpp"

using namespace ogc;

namespace {

std::vector<Value> ints(std::initializer_list<std::int64_t> xs) {
    std::vector<Value> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

Tuple tuple(std::initializer_list<std::int64_t> xs) {
    Tuple out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

Tuple pairs(std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs) {
    Tuple out;
    for (auto [a, b] : xs) out.emplace_back(PairVal{a, b});
    return out;
}

std::vector<Value> pair_type_over(std::initializer_list<std::int64_t> base) {
    std::vector<Value> out;
    for (auto a : base)
        for (auto b : base) out.emplace_back(PairVal{a, b});
    return out;
}

} // namespace

TEST_CASE("catalog evaluation") {
    const auto t123 = ints({1, 2, 3});
    CHECK(eval(alldifferent(t123), tuple({1, 2, 3})));
    CHECK(!eval(alldifferent(t123), tuple({1, 2, 1})));
    CHECK(eval(alldifferent(t123), {}));

    const auto g = gcc({1, 2, 3, 4}, {0, 1, 0, 0}, {2, 2, 2, 2}, ints({1, 2, 3, 4}));
    CHECK(!eval(g, tuple({1, 1}))); // value 2 must occur at least once
    CHECK(eval(g, tuple({1, 1, 2})));
    CHECK(eval(weak_gcc({1, 2, 3, 4}, {2, 2, 2, 2}, ints({1, 2, 3, 4})), tuple({1, 1})));

    CHECK(eval(lex_leq(pair_type_over({1, 2})), pairs({{1, 1}, {1, 1}, {1, 2}})));
    CHECK(eval(lex_lt(pair_type_over({1, 2})), pairs({{1, 1}, {1, 1}, {1, 2}})));
    CHECK(!eval(lex_lt(pair_type_over({1, 2})), pairs({{1, 1}, {1, 1}})));

    CHECK(eval(sum_eq(5, ints({0, 1, 2, 3, 4, 5})), tuple({2, 3})));
    CHECK(eval(sum_eq(0, ints({0, 1})), {}));
    CHECK(!eval(sum_eq(5, ints({0, 1, 2, 3, 4, 5})), {}));

    CHECK(eval(contiguity(), tuple({0, 1, 1, 0})));
    CHECK(!eval(contiguity(), tuple({1, 0, 1})));

    CHECK(eval(precedence(1, 2, t123), tuple({1, 3, 2})));
    CHECK(!eval(precedence(1, 2, t123), tuple({2, 1})));
    CHECK(eval(precedence(1, 2, t123), tuple({3, 3})));

    CHECK(eval(nvalue_eq(2, t123), tuple({1, 2, 1})));
    CHECK(!eval(nvalue_eq(2, t123), tuple({1, 1})));

    CHECK(eval(peak_eq(1, t123), tuple({1, 3, 2})));
    CHECK(eval(nopeak(t123), tuple({1, 2, 3})));
    CHECK(!eval(nopeak(t123), tuple({1, 3, 1})));

    CHECK(eval(among(1, 2, {2, 3}, t123), tuple({1, 2})));
    CHECK(!eval(among(1, 2, {2, 3}, t123), tuple({1, 1})));

    CHECK(eval(average_eq(Rational(2), t123), tuple({1, 3})));
    CHECK(!eval(average_eq(Rational(2), t123), {}));

    CHECK_THROWS_AS(eval(alldifferent(t123), tuple({7})), InputError);
    CHECK_THROWS_AS(eval(sum_eq(1, {Value(std::string("a"))}), {Value(std::string("a"))}),
                    InputError);
}

TEST_CASE("slide windows") {
    const auto t = ints({0, 1, 2, 3});
    const auto window_sum = window_sum_between(0, 3, 2, t);
    CHECK(slide_eval(1, 1, window_sum, tuple({1, 2, 1})));
    CHECK(!slide_eval(1, 1, window_sum, tuple({1, 3, 1})));
    CHECK(slide_eval(1, 1, window_sum, tuple({1}))); // no window fits

    // occurrence windows: between 1 and 2 letters from {1} in every 2-window
    const auto window_occ = window_count_between(1, 2, 2, {1}, t);
    CHECK(slide_eval(1, 1, window_occ, tuple({1, 0, 1})));
    CHECK(!slide_eval(1, 1, window_occ, tuple({1, 0, 0})));

    // sequence agrees with its sliding-window form on short words
    const auto seq = sequence(1, 2, 2, {1}, t);
    Tuple w;
    auto walk = [&](auto&& self) -> void {
        CHECK(eval(seq, w) == slide_eval(1, 1, window_occ, w));
        if (w.size() >= 6) return;
        for (std::int64_t x : {0, 1, 2, 3}) {
            w.emplace_back(x);
            self(self);
            w.pop_back();
        }
    };
    walk(walk);
}

TEST_CASE("splash subsequences") {
    const auto t = ints({1, 2, 3, 5});
    CHECK(!splash_eval(diseq2(t), tuple({1, 2, 1})));
    CHECK(splash_eval(min_distance2(2, t), tuple({1, 3, 5})));
    CHECK(splash_eval(diseq2(t), tuple({1}))); // shorter than the arity

    // splash of disequality is exactly alldifferent
    const auto ad = alldifferent(t);
    Tuple w;
    auto walk = [&](auto&& self) -> void {
        CHECK(splash_eval(diseq2(t), w) == eval(ad, w));
        if (w.size() >= 6) return;
        for (std::int64_t x : {1, 2, 3}) {
            w.emplace_back(x);
            self(self);
            w.pop_back();
        }
    };
    walk(walk);
}

TEST_CASE("logic operators") {
    const auto t01 = ints({0, 1});
    const auto both = combine(CombineOp::And, alldifferent(t01), contiguity());
    CHECK(eval(both, tuple({0, 1})));
    CHECK(!eval(both, tuple({1, 1})));

    const auto never = constant_true(t01, "never");
    ConstraintDef falsy = never;
    falsy.predicate = [](const Tuple&) { return false; };
    CHECK(eval(combine(CombineOp::Or, falsy, constant_true(t01)), tuple({0})));

    CHECK_THROWS_AS(combine(CombineOp::And, alldifferent(t01), alldifferent(ints({1, 2}))),
                    InputError);

    // quantifying the first position of a lex comparison against 2..2
    const auto t123 = ints({1, 2, 3});
    ConstraintDef first_le_2{"first_le_2",
                             [](const Tuple& w) {
                                 return w.empty() || std::get<std::int64_t>(w[0]) <= 2;
                             },
                             t123};
    const auto exists = combine_at(CombineOp::ExistsAt, first_le_2, 1);
    CHECK(eval(exists, tuple({3}))); // some replacement value works
    const auto forall = combine_at(CombineOp::ForallAt, first_le_2, 1);
    CHECK(!eval(forall, tuple({1}))); // value 3 fails
}

TEST_CASE("accumulation classification") {
    const auto alphabet = ints({0, 1, 2, 3});
    auto abs_sum = [](const Tuple& w) {
        std::int64_t s = 0;
        for (const Value& v : w) {
            const auto x = std::get<std::int64_t>(v);
            s += x < 0 ? -x : x;
        }
        return Rational(s);
    };

    const auto upper = classify_accumulation(
        {abs_sum, AccumulationSpec::Relation::LessEq, Rational(10)}, alphabet, 5);
    CHECK(upper.contractible);
    CHECK(upper.monotonicity == Monotonicity::NonDecreasing);

    const auto equal = classify_accumulation(
        {abs_sum, AccumulationSpec::Relation::Equal, Rational(5)}, alphabet, 5);
    CHECK(!equal.contractible);
    REQUIRE(equal.witness.has_value());
    CHECK(equal.witness->first.size() + 1 == equal.witness->second.size());

    auto peaks = [](const Tuple& w) {
        std::int64_t count = 0;
        for (std::size_t i = 1; i + 1 < w.size(); ++i) {
            const auto a = std::get<std::int64_t>(w[i - 1]);
            const auto b = std::get<std::int64_t>(w[i]);
            const auto c = std::get<std::int64_t>(w[i + 1]);
            if (a < b && b > c) ++count;
        }
        return Rational(count);
    };
    const auto peak_equal = classify_accumulation(
        {peaks, AccumulationSpec::Relation::Equal, Rational(1)}, alphabet, 5);
    CHECK(!peak_equal.contractible);
    CHECK(peak_equal.monotonicity == Monotonicity::NonDecreasing); // counting never decreases
}

TEST_CASE("closure directions for catalog constraints") {
    // membership in a + b^2 fails prefix closure with witness (bb, b)
    const auto reg = regular_constraint(ogc::testing::a_plus_bb());
    const auto verdict =
        contractibility_oracle(reg, reg.type, 4, ClosureDirection::Prefix);
    CHECK(!verdict.holds);
    REQUIRE(verdict.witness.has_value());

    const auto pair_type = pair_type_over({1, 2});
    CHECK(contractibility_oracle(lex_leq(pair_type), pair_type, 4, ClosureDirection::Prefix)
              .holds);
    CHECK(!contractibility_oracle(lex_leq(pair_type), pair_type, 4, ClosureDirection::Suffix)
               .holds);

    // complement of a*: contains aab but not its prefix aa
    std::vector<Value> ab{Value(std::string("a")), Value(std::string("b"))};
    ConstraintDef not_a_star{"not_a_star",
                             [](const Tuple& w) {
                                 for (const Value& v : w)
                                     if (std::get<std::string>(v) != "a") return true;
                                 return false;
                             },
                             ab};
    const auto neg = contractibility_oracle(not_a_star, ab, 4, ClosureDirection::Prefix);
    CHECK(!neg.holds);

    const auto t = ints({1, 2, 3, 4});
    CHECK(contractibility_oracle(weak_gcc({1, 2}, {2, 2}, t), t, 4, ClosureDirection::Prefix)
              .holds);
    CHECK(!contractibility_oracle(gcc({1, 2}, {0, 1}, {2, 2}, t), t, 4, ClosureDirection::Prefix)
               .holds);
}

TEST_CASE("order-free constraints are subword-closed when prefix-closed") {
    const auto t = ints({1, 2, 3});
    const std::vector<ConstraintDef> order_free_catalog{
        alldifferent(t),
        weak_gcc({1, 2}, {2, 2}, t),
        nvalue_le(2, t),
        among(0, 2, {2}, t),
        sum_le(4, t),
    };
    for (const ConstraintDef& c : order_free_catalog) {
        REQUIRE(c.order_free);
        const bool prefix_ok = contractibility_oracle(c, t, 5, ClosureDirection::Prefix).holds;
        REQUIRE(prefix_ok);
        CHECK(contractibility_oracle(c, t, 5, ClosureDirection::Subword).holds);
        CHECK(contractibility_oracle(c, t, 5, ClosureDirection::Subsequence).holds);
    }
}

TEST_CASE("the combinator algebra preserves prefix closure") {
    const auto t = ints({0, 1, 2});
    const std::vector<ConstraintDef> contractible_parts{
        alldifferent(t), sum_le(3, t), nvalue_le(2, t), nopeak(t)};
    for (const ConstraintDef& a : contractible_parts) {
        REQUIRE(contractibility_oracle(a, t, 5, ClosureDirection::Prefix).holds);
        for (const ConstraintDef& b : contractible_parts) {
            const auto conj = combine(CombineOp::And, a, b);
            const auto disj = combine(CombineOp::Or, a, b);
            CHECK(contractibility_oracle(conj, t, 5, ClosureDirection::Prefix).holds);
            CHECK(contractibility_oracle(disj, t, 5, ClosureDirection::Prefix).holds);
        }
        const auto ex = combine_at(CombineOp::ExistsAt, a, 1);
        const auto fa = combine_at(CombineOp::ForallAt, a, 1);
        CHECK(contractibility_oracle(ex, t, 5, ClosureDirection::Prefix).holds);
        CHECK(contractibility_oracle(fa, t, 5, ClosureDirection::Prefix).holds);
    }
}

TEST_CASE("order-free flags hold on permutations") {
    const auto t = ints({1, 2, 3});
    const std::vector<ConstraintDef> flagged{alldifferent(t), gcc({1}, {0}, {2}, t),
                                             nvalue_eq(2, t), sum_eq(4, t), among(1, 2, {2}, t)};
    Tuple w;
    for (const ConstraintDef& c : flagged) {
        REQUIRE(c.order_free);
        auto walk = [&](auto&& self) -> void {
            Tuple sorted = w;
            std::sort(sorted.begin(), sorted.end());
            do {
                CHECK(c.predicate(w) == c.predicate(sorted));
            } while (std::next_permutation(sorted.begin(), sorted.end()));
            if (w.size() >= 4) return;
            for (std::int64_t x : {1, 2, 3}) {
                w.emplace_back(x);
                self(self);
                w.pop_back();
            }
        };
        walk(walk);
    }
}
