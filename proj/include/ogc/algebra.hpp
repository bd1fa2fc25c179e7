#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ogc/automata.hpp"
#include "ogc/grammar.hpp"
#include "ogc/rational.hpp"

namespace ogc {

/// A constraint value: an integer, a symbol, or a pair of integers (used by
/// the lexicographic constraints, whose words range over aligned pairs).
using PairVal = std::pair<std::int64_t, std::int64_t>;
using Value = std::variant<std::int64_t, std::string, PairVal>;
using Tuple = std::vector<Value>;

std::string value_str(const Value& v);
std::string tuple_str(const Tuple& t);

/// An executable word predicate with its metadata: the language of the
/// constraint is the set of tuples over the static type satisfying the
/// predicate.
struct ConstraintDef {
    std::string name;
    std::function<bool(const Tuple&)> predicate;
    std::vector<Value> type;               // finite static type, uniform per position
    std::optional<std::size_t> arity;      // set for fixed-arity constraints
    bool order_free = false;
};

/// Predicate evaluation with static-type checking.
/// Throws InputError when a value is outside the declared type.
bool eval(const ConstraintDef& c, const Tuple& w);

// ---------------------------------------------------------------- catalog

ConstraintDef alldifferent(std::vector<Value> type);
ConstraintDef gcc(std::vector<std::int64_t> values, std::vector<std::int64_t> lower,
                  std::vector<std::int64_t> upper, std::vector<Value> type);
ConstraintDef weak_gcc(std::vector<std::int64_t> values, std::vector<std::int64_t> upper,
                       std::vector<Value> type);
ConstraintDef nvalue_eq(std::int64_t n, std::vector<Value> type);
ConstraintDef nvalue_le(std::int64_t n, std::vector<Value> type);
ConstraintDef sequence(std::int64_t l, std::int64_t u, std::size_t k,
                       std::vector<std::int64_t> among_values, std::vector<Value> type);
ConstraintDef sliding_sum(std::int64_t l, std::int64_t u, std::size_t k, std::vector<Value> type);
ConstraintDef among(std::int64_t l, std::int64_t u, std::vector<std::int64_t> values,
                    std::vector<Value> type);
ConstraintDef sum_eq(std::int64_t z, std::vector<Value> type);
ConstraintDef sum_le(std::int64_t z, std::vector<Value> type);
ConstraintDef sum_ge(std::int64_t z, std::vector<Value> type);
ConstraintDef lex_leq(std::vector<Value> pair_type);
ConstraintDef lex_lt(std::vector<Value> pair_type);
ConstraintDef precedence(std::int64_t s, std::int64_t t, std::vector<Value> type);
ConstraintDef contiguity();
ConstraintDef peak_eq(std::int64_t n, std::vector<Value> type);
ConstraintDef peak_le(std::int64_t n, std::vector<Value> type);
ConstraintDef nopeak(std::vector<Value> type);
ConstraintDef average_eq(const Rational& mean, std::vector<Value> type);
ConstraintDef constant_true(std::vector<Value> type, std::string name = "true");

/// Word membership in L(a), lifted to string-valued tuples.
ConstraintDef regular_constraint(Nfa a);
ConstraintDef cfg_constraint(CnfGrammar g);

// Fixed-arity building blocks for Slide / Splash.
ConstraintDef diseq2(std::vector<Value> type);
ConstraintDef min_distance2(std::int64_t p, std::vector<Value> type);
ConstraintDef window_sum_between(std::int64_t l, std::int64_t u, std::size_t k,
                                 std::vector<Value> type);
ConstraintDef window_count_between(std::int64_t l, std::int64_t u, std::size_t k,
                                   std::vector<std::int64_t> among_values,
                                   std::vector<Value> type);

// ------------------------------------------------------- meta-constraints

/// Conjunction of `inner` over the windows starting at positions
/// p, p+j, p+2j, ... (1-based), each of the inner constraint's arity;
/// vacuously true when no window fits.
bool slide_eval(std::size_t p, std::size_t j, const ConstraintDef& inner, const Tuple& w);

/// Conjunction of `inner` over every subsequence of length `inner.arity`.
bool splash_eval(const ConstraintDef& inner, const Tuple& w);

ConstraintDef slide_constraint(std::size_t p, std::size_t j, ConstraintDef inner,
                               std::vector<Value> type);
ConstraintDef splash_constraint(ConstraintDef inner, std::vector<Value> type);

// --------------------------------------------------------- logic operators

enum class CombineOp { And, Or, ExistsAt, ForallAt };

/// And/Or of two constraints on the same static type.
ConstraintDef combine(CombineOp op, ConstraintDef a, ConstraintDef b);
/// Existential/universal quantification of the value at `position` (1-based)
/// over its static type. Positions beyond the word are not quantified.
ConstraintDef combine_at(CombineOp op, ConstraintDef c, std::size_t position);

// ----------------------------------------------------------- classification

struct AccumulationSpec {
    std::function<Rational(const Tuple&)> f;
    enum class Relation { LessEq, GreaterEq, Equal };
    Relation relation = Relation::LessEq;
    Rational bound;
};

enum class Monotonicity { NonDecreasing, NonIncreasing, Constant, None };

struct AccumulationVerdict {
    bool contractible = false;
    Monotonicity monotonicity = Monotonicity::None;
    /// A pair (w, wY) with f moving against the required direction,
    /// present when not contractible.
    std::optional<std::pair<Tuple, Tuple>> witness;
    std::size_t tested_len = 0;
};

/// Tests f over all words up to max_len: a <= bound needs a non-decreasing f,
/// >= needs non-increasing, = needs constant. Verdicts are sound only up to
/// the tested bound.
AccumulationVerdict classify_accumulation(const AccumulationSpec& s,
                                          const std::vector<Value>& alphabet,
                                          std::size_t max_len);

enum class ClosureDirection { Prefix, Suffix, Subword, Subsequence };

struct ClosureVerdict {
    bool holds = false;
    /// (member of L_C, one-step reduction outside L_C) when the check fails.
    std::optional<std::pair<Tuple, Tuple>> witness;
    std::size_t tested_len = 0;
};

/// Checks the stated closure of L_C restricted to words up to max_len by
/// enumeration. "Holds" means no counterexample up to the bound.
ClosureVerdict contractibility_oracle(const ConstraintDef& c, const std::vector<Value>& alphabet,
                                      std::size_t max_len, ClosureDirection direction);

} // namespace ogc
