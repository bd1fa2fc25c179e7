#include "ogc/automata.hpp"

#include <algorithm>
#include <deque>

#include "ogc/errors.hpp"

namespace ogc {

namespace {

const std::set<StateId> kNoStates;

std::set<StateId> closure_search(const std::set<StateId>& seeds,
                                 const std::map<StateId, std::set<StateId>>& edges) {
    std::set<StateId> seen = seeds;
    std::deque<StateId> todo(seeds.begin(), seeds.end());
    while (!todo.empty()) {
        StateId q = todo.front();
        todo.pop_front();
        auto it = edges.find(q);
        if (it == edges.end()) continue;
        for (const StateId& r : it->second) {
            if (seen.insert(r).second) todo.push_back(r);
        }
    }
    return seen;
}

} // namespace

Nfa Nfa::create(std::vector<Symbol> alphabet, std::vector<StateId> states,
                std::set<StateId> start, std::set<StateId> accepting,
                std::vector<Transition> transitions) {
    if (alphabet.empty()) throw InputError("automaton alphabet must be nonempty");
    if (states.empty()) throw InputError("automaton state set must be nonempty");
    std::set<StateId> state_set(states.begin(), states.end());
    if (state_set.size() != states.size()) throw InputError("duplicate state id");
    std::set<Symbol> symbol_set(alphabet.begin(), alphabet.end());
    if (symbol_set.size() != alphabet.size()) throw InputError("duplicate alphabet symbol");
    for (const StateId& q : start)
        if (!state_set.count(q)) throw InputError("start state not declared: " + q);
    for (const StateId& q : accepting)
        if (!state_set.count(q)) throw InputError("accepting state not declared: " + q);
    for (const Transition& t : transitions) {
        if (!state_set.count(t.from)) throw InputError("transition from undeclared state: " + t.from);
        if (!state_set.count(t.to)) throw InputError("transition to undeclared state: " + t.to);
        if (!symbol_set.count(t.symbol)) throw InputError("transition on undeclared symbol: " + t.symbol);
    }

    Nfa a;
    a.alphabet_ = std::move(alphabet);
    a.states_ = std::move(states);
    a.start_ = std::move(start);
    a.accepting_ = std::move(accepting);
    a.transitions_ = std::move(transitions);
    for (const Transition& t : a.transitions_) a.delta_[t.from][t.symbol].insert(t.to);
    return a;
}

bool Nfa::has_symbol(const Symbol& s) const {
    return std::find(alphabet_.begin(), alphabet_.end(), s) != alphabet_.end();
}

const std::set<StateId>& Nfa::next(const StateId& q, const Symbol& s) const {
    auto it = delta_.find(q);
    if (it == delta_.end()) return kNoStates;
    auto jt = it->second.find(s);
    if (jt == it->second.end()) return kNoStates;
    return jt->second;
}

std::set<StateId> Nfa::reachable() const {
    std::map<StateId, std::set<StateId>> fwd;
    for (const Transition& t : transitions_) fwd[t.from].insert(t.to);
    return closure_search(start_, fwd);
}

std::set<StateId> Nfa::coaccessible() const {
    std::map<StateId, std::set<StateId>> rev;
    for (const Transition& t : transitions_) rev[t.to].insert(t.from);
    return closure_search(accepting_, rev);
}

Dfa Dfa::create(std::vector<Symbol> alphabet, std::vector<StateId> states, StateId start,
                std::set<StateId> accepting, std::map<std::pair<StateId, Symbol>, StateId> delta) {
    std::vector<Transition> trans;
    trans.reserve(delta.size());
    for (const auto& [key, to] : delta) trans.push_back({key.first, key.second, to});
    // Reuses the Nfa validation for the shared invariants.
    Nfa::create(alphabet, states, {start}, accepting, trans);

    Dfa d;
    d.alphabet_ = std::move(alphabet);
    d.states_ = std::move(states);
    d.start_ = std::move(start);
    d.accepting_ = std::move(accepting);
    d.delta_ = std::move(delta);
    return d;
}

Nfa Dfa::as_nfa() const {
    std::vector<Transition> trans;
    trans.reserve(delta_.size());
    for (const auto& [key, to] : delta_) trans.push_back({key.first, key.second, to});
    return Nfa::create(alphabet_, states_, {start_}, accepting_, trans);
}

bool accepts(const Nfa& a, const Word& w) {
    for (const Symbol& s : w)
        if (!a.has_symbol(s)) throw InputError("symbol not in alphabet: " + s);
    std::set<StateId> current = a.start();
    for (const Symbol& s : w) {
        std::set<StateId> next;
        for (const StateId& q : current) {
            const auto& succ = a.next(q, s);
            next.insert(succ.begin(), succ.end());
        }
        current = std::move(next);
        if (current.empty()) return false;
    }
    for (const StateId& q : current)
        if (a.accepting().count(q)) return true;
    return false;
}

bool accepts(const Dfa& d, const Word& w) {
    for (const Symbol& s : w)
        if (std::find(d.alphabet().begin(), d.alphabet().end(), s) == d.alphabet().end())
            throw InputError("symbol not in alphabet: " + s);
    StateId q = d.start();
    for (const Symbol& s : w) {
        auto it = d.delta().find({q, s});
        if (it == d.delta().end()) return false;
        q = it->second;
    }
    return d.accepting().count(q) != 0;
}

std::set<StateId> promoted_states(const Nfa& a) {
    const std::set<StateId> reach = a.reachable();
    const std::set<StateId> coacc = a.coaccessible();
    std::set<StateId> promoted;
    for (const StateId& q : reach) {
        if (coacc.count(q) && !a.accepting().count(q)) promoted.insert(q);
    }
    return promoted;
}

Nfa prefix_closure(const Nfa& a) {
    const std::set<StateId> reach = a.reachable();
    const std::set<StateId> coacc = a.coaccessible();
    std::set<StateId> accepting;
    for (const StateId& q : reach) {
        if (coacc.count(q) || a.accepting().count(q)) accepting.insert(q);
    }
    return Nfa::create(a.alphabet(), a.states(), a.start(), std::move(accepting), a.transitions());
}

bool is_prefix_closed(const Dfa& d) { return promoted_states(d.as_nfa()).empty(); }

Dfa determinize(const Nfa& a, std::size_t state_cap) {
    auto name_of = [](const std::set<StateId>& subset) {
        std::string name = "{";
        for (const StateId& q : subset) {
            if (name.size() > 1) name += ",";
            name += q;
        }
        return name + "}";
    };

    std::map<std::set<StateId>, StateId> known;
    std::vector<std::set<StateId>> order;
    std::map<std::pair<StateId, Symbol>, StateId> delta;
    std::deque<std::set<StateId>> todo;

    known[a.start()] = name_of(a.start());
    order.push_back(a.start());
    todo.push_back(a.start());

    while (!todo.empty()) {
        std::set<StateId> subset = todo.front();
        todo.pop_front();
        for (const Symbol& s : a.alphabet()) {
            std::set<StateId> next;
            for (const StateId& q : subset) {
                const auto& succ = a.next(q, s);
                next.insert(succ.begin(), succ.end());
            }
            if (next.empty()) continue; // partial function: dead moves omitted
            if (!known.count(next)) {
                if (known.size() >= state_cap)
                    throw ResourceError("determinization exceeded state cap");
                known[next] = name_of(next);
                order.push_back(next);
                todo.push_back(next);
            }
            delta[{known[subset], s}] = known[next];
        }
    }

    std::vector<StateId> states;
    std::set<StateId> accepting;
    for (const auto& subset : order) {
        states.push_back(known[subset]);
        for (const StateId& q : subset) {
            if (a.accepting().count(q)) {
                accepting.insert(known[subset]);
                break;
            }
        }
    }
    return Dfa::create(a.alphabet(), std::move(states), known[a.start()], std::move(accepting),
                       std::move(delta));
}

Word parse_word(const std::string& text, const std::string& sep) {
    Word w;
    if (sep.empty()) {
        std::size_t i = 0;
        while (i < text.size()) {
            // one UTF-8 codepoint per symbol
            std::size_t len = 1;
            const auto byte = static_cast<unsigned char>(text[i]);
            if (byte >= 0xF0) len = 4;
            else if (byte >= 0xE0) len = 3;
            else if (byte >= 0xC0) len = 2;
            w.push_back(text.substr(i, len));
            i += len;
        }
        return w;
    }
    if (text.empty()) return w;
    std::size_t pos = 0;
    while (true) {
        std::size_t at = text.find(sep, pos);
        if (at == std::string::npos) {
            w.push_back(text.substr(pos));
            return w;
        }
        w.push_back(text.substr(pos, at - pos));
        pos = at + sep.size();
    }
}

std::string format_word(const Word& w, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += sep;
        out += w[i];
    }
    return out;
}

} // namespace ogc
