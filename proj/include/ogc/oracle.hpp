#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ogc/automata.hpp"
#include "ogc/grammar.hpp"
#include "ogc/rational.hpp"

namespace ogc::oracle {

// Reference implementations transliterated from the definitions they check.
// They are intentionally slow and simple; every derived expected value in the
// test suite is produced by these before being frozen.

/// A language given by a membership predicate, enumerable up to max_len.
struct LanguageOracle {
    std::function<bool(const Word&)> membership;
    std::vector<Symbol> alphabet;
    std::size_t max_len = 0;
};

/// { w | |w| <= o.max_len, o.membership(w) }, enumerated exhaustively.
std::set<Word> enumerate_language(const LanguageOracle& o);

/// All prefixes (including the empty word) of the given words.
std::set<Word> prefix_set(const std::set<Word>& words);

/// All words of length <= max_len generated by the grammar, derived
/// bottom-up per nonterminal and length (memoized derivation enumeration).
std::set<Word> enumerate_cnf_language(const CnfGrammar& g, std::size_t max_len);

struct ClosureWitness {
    Word member;  // in the language
    Word reduced; // one-step reduction, not in the language
};

/// Checks that dropping the last letter of any member (within the bound)
/// stays in the language. Empty result means no counterexample up to the bound.
std::optional<ClosureWitness> contractible_bruteforce(const LanguageOracle& o);

/// True iff some u with |w| + |u| <= total_len_cap has membership(w + u).
/// Visited-set memoization over automaton state sets when driven by an Nfa.
bool bounded_prefix_membership(const Nfa& a, const Word& w, std::size_t total_len_cap);

struct EditWeightsRef {
    Rational substitution;
    Rational insertion;
    Rational deletion;
    Rational transposition;
};

/// Uniform-cost search over whole words, one rewrite per edit operation,
/// deduplicating visited words, terminating at the first popped member.
/// Explored words stay within the oracle's declared length bound (or the
/// input's length, if longer). Throws ResourceError carrying the best bound
/// when the cost cap or the node budget is exhausted.
Rational edit_distance_bruteforce(const LanguageOracle& member_of_target,
                                  const EditWeightsRef& weights, const Word& w,
                                  const Rational& cost_cap,
                                  std::size_t node_budget = 10'000'000);

/// Value-level open consistency by definition: keep d in domain i iff some
/// word of length |domains| <= m <= support_len_bound is in the language,
/// has d at position i, and stays inside the domains on the known prefix.
/// Positions past |domains| range over `future_type`.
std::vector<std::set<Symbol>> open_dconsistency_bruteforce(
    const std::function<bool(const Word&)>& membership,
    const std::vector<std::set<Symbol>>& domains, const std::vector<Symbol>& future_type,
    std::size_t support_len_bound);

} // namespace ogc::oracle
