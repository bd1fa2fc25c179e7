#pragma once

// Shared automata fixtures and generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "ogc/automata.hpp"

namespace ogc::testing {

inline Word word(const std::string& text) { return parse_word(text); }

/// Accepts exactly {a, bb}.
inline Nfa a_plus_bb() {
    return Nfa::create({"a", "b"}, {"s", "a1", "b1", "b2"}, {"s"}, {"a1", "b2"},
                       {{"s", "a", "a1"}, {"s", "b", "b1"}, {"b1", "b", "b2"}});
}

/// a* over the alphabet {a, b}.
inline Nfa a_star() {
    return Nfa::create({"a", "b"}, {"q"}, {"q"}, {"q"}, {{"q", "a", "q"}});
}

/// (abc)*.
inline Nfa abc_star() {
    return Nfa::create({"a", "b", "c"}, {"c0", "c1", "c2"}, {"c0"}, {"c0"},
                       {{"c0", "a", "c1"}, {"c1", "b", "c2"}, {"c2", "c", "c0"}});
}

/// (abc)* extended with the letter d in the alphabet (no d-transitions).
inline Nfa abc_star_with_d() {
    return Nfa::create({"a", "b", "c", "d"}, {"c0", "c1", "c2"}, {"c0"}, {"c0"},
                       {{"c0", "a", "c1"}, {"c1", "b", "c2"}, {"c2", "c", "c0"}});
}

/// (ab)* + (ab)*a, a prefix-closed language.
inline Nfa ab_star_a() {
    return Nfa::create({"a", "b"}, {"p0", "p1"}, {"p0"}, {"p0", "p1"},
                       {{"p0", "a", "p1"}, {"p1", "b", "p0"}});
}

/// Everything over the given alphabet.
inline Nfa sigma_star(std::vector<Symbol> alphabet) {
    std::vector<Transition> trans;
    for (const Symbol& s : alphabet) trans.push_back({"q", s, "q"});
    return Nfa::create(std::move(alphabet), {"q"}, {"q"}, {"q"}, std::move(trans));
}

/// Seeded random automaton with up to max_states states over the first
/// num_symbols letters; edge density around 1.5 transitions per
/// (state, symbol) slot on average.
inline Nfa random_nfa(std::mt19937& rng, std::size_t max_states = 6,
                      std::size_t num_symbols = 3) {
    const std::vector<Symbol> full{"a", "b", "c"};
    std::uniform_int_distribution<std::size_t> state_count(1, max_states);
    std::uniform_int_distribution<std::size_t> sym_count(1, num_symbols);
    const std::size_t ns = state_count(rng);
    const std::size_t nsym = sym_count(rng);

    std::vector<Symbol> alphabet(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(nsym));
    std::vector<StateId> states;
    for (std::size_t i = 0; i < ns; ++i) states.push_back("q" + std::to_string(i));

    std::uniform_int_distribution<std::size_t> pick(0, ns - 1);
    std::bernoulli_distribution edge(std::min(1.0, 1.5 / static_cast<double>(ns)));
    std::bernoulli_distribution flag(0.4);

    std::vector<Transition> trans;
    for (const StateId& from : states)
        for (const Symbol& s : alphabet)
            for (const StateId& to : states)
                if (edge(rng)) trans.push_back({from, s, to});

    std::set<StateId> start{states[pick(rng)]};
    if (flag(rng)) start.insert(states[pick(rng)]);
    std::set<StateId> accepting;
    for (const StateId& q : states)
        if (flag(rng)) accepting.insert(q);
    if (accepting.empty()) accepting.insert(states[pick(rng)]);

    return Nfa::create(std::move(alphabet), std::move(states), std::move(start),
                       std::move(accepting), std::move(trans));
}

} // namespace ogc::testing
