#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ogc {

using Symbol = std::string;
using Word = std::vector<Symbol>;
using StateId = std::string;

struct Transition {
    StateId from;
    Symbol symbol;
    StateId to;

    auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic finite automaton over an explicit finite alphabet.
/// Epsilon moves are not supported. Values are immutable after construction;
/// all operations on them are pure.
class Nfa {
public:
    /// Validates the structural invariants: nonempty alphabet and state set,
    /// start/accepting sets inside the state set, transitions referencing
    /// declared states and symbols. Throws InputError otherwise.
    static Nfa create(std::vector<Symbol> alphabet, std::vector<StateId> states,
                      std::set<StateId> start, std::set<StateId> accepting,
                      std::vector<Transition> transitions);

    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<StateId>& states() const { return states_; }
    const std::set<StateId>& start() const { return start_; }
    const std::set<StateId>& accepting() const { return accepting_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    bool has_symbol(const Symbol& s) const;
    /// Successor states of `q` on `s`; empty set when none.
    const std::set<StateId>& next(const StateId& q, const Symbol& s) const;

    /// States reachable from the start set.
    std::set<StateId> reachable() const;
    /// States from which some accepting state is reachable.
    std::set<StateId> coaccessible() const;

private:
    Nfa() = default;

    std::vector<Symbol> alphabet_;
    std::vector<StateId> states_;
    std::set<StateId> start_;
    std::set<StateId> accepting_;
    std::vector<Transition> transitions_;
    std::map<StateId, std::map<Symbol, std::set<StateId>>> delta_;
};

/// Deterministic automaton: one start state, at most one transition per
/// (state, symbol) pair. The transition function may be partial.
class Dfa {
public:
    static Dfa create(std::vector<Symbol> alphabet, std::vector<StateId> states,
                      StateId start, std::set<StateId> accepting,
                      std::map<std::pair<StateId, Symbol>, StateId> delta);

    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<StateId>& states() const { return states_; }
    const StateId& start() const { return start_; }
    const std::set<StateId>& accepting() const { return accepting_; }
    const std::map<std::pair<StateId, Symbol>, StateId>& delta() const { return delta_; }

    /// The equivalent Nfa view (same states and transitions).
    Nfa as_nfa() const;

private:
    Dfa() = default;

    std::vector<Symbol> alphabet_;
    std::vector<StateId> states_;
    StateId start_;
    std::set<StateId> accepting_;
    std::map<std::pair<StateId, Symbol>, StateId> delta_;
};

/// Subset simulation. Throws InputError when a symbol of `w` is outside the
/// automaton's alphabet.
bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& d, const Word& w);

/// The automaton accepting exactly the prefixes of words of L(a): states and
/// transitions are kept, and every reachable state that can still reach an
/// accepting state becomes accepting. Two graph searches, O(states + transitions).
Nfa prefix_closure(const Nfa& a);

/// Reachable, co-accessible states that prefix_closure would newly mark
/// accepting. Empty for a deterministic automaton iff its language is
/// prefix-closed.
std::set<StateId> promoted_states(const Nfa& a);

/// True iff L(d) is prefix-closed; linear in the automaton.
bool is_prefix_closed(const Dfa& d);

/// Subset construction restricted to reachable subsets. Throws ResourceError
/// when more than `state_cap` subset states are produced.
Dfa determinize(const Nfa& a, std::size_t state_cap = 4096);

/// Splits `text` into one-codepoint symbols (`sep` empty) or on `sep`.
Word parse_word(const std::string& text, const std::string& sep = "");
std::string format_word(const Word& w, const std::string& sep = "");

} // namespace ogc
