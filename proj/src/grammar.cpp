#include "ogc/grammar.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ogc/errors.hpp"

namespace ogc {

CnfGrammar CnfGrammar::create(std::set<std::string> nonterminals, std::set<std::string> terminals,
                              std::string start, std::vector<CnfRule> rules) {
    if (!nonterminals.count(start)) throw InputError("start symbol not declared: " + start);
    for (const std::string& t : terminals)
        if (nonterminals.count(t)) throw InputError("symbol both terminal and nonterminal: " + t);

    bool start_has_epsilon = false;
    bool start_on_rhs = false;
    for (const CnfRule& r : rules) {
        if (!nonterminals.count(r.lhs)) throw InputError("rule for undeclared nonterminal: " + r.lhs);
        switch (r.kind) {
        case CnfRule::Kind::Binary:
            if (!nonterminals.count(r.first) || !nonterminals.count(r.second))
                throw InputError("binary rule uses undeclared nonterminal");
            if (r.first == start || r.second == start) start_on_rhs = true;
            break;
        case CnfRule::Kind::Terminal:
            if (!terminals.count(r.first)) throw InputError("terminal rule uses undeclared terminal: " + r.first);
            break;
        case CnfRule::Kind::Epsilon:
            if (r.lhs != start) throw InputError("epsilon rule for non-start symbol: " + r.lhs);
            start_has_epsilon = true;
            break;
        }
    }
    if (start_has_epsilon && start_on_rhs)
        throw InputError("start symbol with an epsilon rule may not occur on a right-hand side");

    // set semantics for productions
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());

    CnfGrammar g;
    g.nonterminals_ = std::move(nonterminals);
    g.terminals_ = std::move(terminals);
    g.start_ = std::move(start);
    g.rules_ = std::move(rules);
    return g;
}

bool CnfGrammar::has_epsilon_rule() const {
    return std::any_of(rules_.begin(), rules_.end(),
                       [](const CnfRule& r) { return r.kind == CnfRule::Kind::Epsilon; });
}

bool cyk_accepts(const CnfGrammar& g, const Word& w) {
    for (const Symbol& s : w)
        if (!g.terminals().count(s)) throw InputError("unknown terminal: " + s);
    if (w.empty()) return g.has_epsilon_rule();

    const std::size_t n = w.size();
    // table[i][len] = nonterminals deriving w[i .. i+len)
    std::vector<std::vector<std::set<std::string>>> table(
        n, std::vector<std::set<std::string>>(n + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (const CnfRule& r : g.rules())
            if (r.kind == CnfRule::Kind::Terminal && r.first == w[i]) table[i][1].insert(r.lhs);

    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            for (std::size_t split = 1; split < len; ++split) {
                for (const CnfRule& r : g.rules()) {
                    if (r.kind != CnfRule::Kind::Binary) continue;
                    if (table[i][split].count(r.first) &&
                        table[i + split][len - split].count(r.second))
                        table[i][len].insert(r.lhs);
                }
            }
        }
    }
    return table[0][n].count(g.start()) != 0;
}

namespace {

// Intermediate rule form that additionally allows unit productions A -> B.
struct RawRule {
    std::string lhs;
    CnfRule::Kind kind = CnfRule::Kind::Epsilon;
    std::string first;
    std::string second;
    bool unit = false;

    bool operator<(const RawRule& o) const {
        return std::tie(lhs, kind, first, second, unit) <
               std::tie(o.lhs, o.kind, o.first, o.second, o.unit);
    }
    bool operator==(const RawRule& o) const {
        return std::tie(lhs, kind, first, second, unit) ==
               std::tie(o.lhs, o.kind, o.first, o.second, o.unit);
    }
};

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
    while (taken.count(base)) base += "'";
    return base;
}

// Strongly connected components of the unit-rule graph (Tarjan).
std::map<std::string, std::string> unit_scc_representatives(
    const std::set<std::string>& nodes, const std::map<std::string, std::set<std::string>>& edges) {
    std::map<std::string, int> index, low;
    std::map<std::string, bool> on_stack;
    std::vector<std::string> stack;
    std::map<std::string, std::string> rep;
    int counter = 0;

    auto strongconnect = [&](auto&& self, const std::string& v) -> void {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        auto it = edges.find(v);
        if (it != edges.end()) {
            for (const std::string& w : it->second) {
                if (!index.count(w)) {
                    self(self, w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::string> component;
            while (true) {
                std::string w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
                if (w == v) break;
            }
            const std::string leader = *std::min_element(component.begin(), component.end());
            for (const std::string& w : component) rep[w] = leader;
        }
    };

    for (const std::string& v : nodes)
        if (!index.count(v)) strongconnect(strongconnect, v);
    return rep;
}

} // namespace

PrefixClosureCnf prefix_closure_cnf(const CnfGrammar& g) {
    std::set<std::string> names = g.nonterminals();

    std::map<std::string, std::string> pfx; // A -> A_p
    for (const std::string& a : g.nonterminals()) {
        std::string p = fresh_name(a + "_p", names);
        names.insert(p);
        pfx[a] = p;
    }
    const std::string new_start = fresh_name(g.start() + "_p0", names);
    names.insert(new_start);

    std::set<RawRule> raw;
    for (const CnfRule& r : g.rules())
        raw.insert({r.lhs, r.kind, r.first, r.second, false});
    raw.insert({new_start, CnfRule::Kind::Epsilon, "", "", false});
    raw.insert({new_start, CnfRule::Kind::Terminal, pfx[g.start()], "", true}); // unit S' -> S_p
    for (const CnfRule& r : g.rules()) {
        if (r.kind == CnfRule::Kind::Terminal) {
            raw.insert({pfx[r.lhs], CnfRule::Kind::Terminal, r.first, "", false});
        } else if (r.kind == CnfRule::Kind::Binary) {
            raw.insert({pfx[r.lhs], CnfRule::Kind::Terminal, pfx[r.first], "", true}); // A_p -> B_p
            raw.insert({pfx[r.lhs], CnfRule::Kind::Binary, r.first, pfx[r.second], false}); // A_p -> B C_p
        }
    }
    const std::size_t raw_count = raw.size();

    // Merge strongly connected groups of unit rules.
    std::map<std::string, std::set<std::string>> unit_edges;
    for (const RawRule& r : raw)
        if (r.unit) unit_edges[r.lhs].insert(r.first);
    std::map<std::string, std::string> rep = unit_scc_representatives(names, unit_edges);
    auto canon = [&](const std::string& x) {
        auto it = rep.find(x);
        return it == rep.end() ? x : it->second;
    };

    std::set<RawRule> merged;
    for (const RawRule& r : raw) {
        RawRule m = r;
        m.lhs = canon(m.lhs);
        if (m.unit) {
            m.first = canon(m.first);
            if (m.lhs == m.first) continue; // self-loop after merging
        } else if (m.kind == CnfRule::Kind::Binary) {
            m.first = canon(m.first);
            m.second = canon(m.second);
        }
        merged.insert(m);
    }
    const std::string start2 = canon(new_start);

    // The remaining unit graph is acyclic; expand unit rules bottom-up with
    // shared bodies (set semantics keeps each body once).
    std::map<std::string, std::set<RawRule>> non_unit_bodies;
    std::map<std::string, std::set<std::string>> unit_children;
    for (const RawRule& r : merged) {
        if (r.unit) unit_children[r.lhs].insert(r.first);
        else non_unit_bodies[r.lhs].insert(r);
    }

    std::map<std::string, std::set<RawRule>> resolved;
    auto resolve = [&](auto&& self, const std::string& x) -> const std::set<RawRule>& {
        auto it = resolved.find(x);
        if (it != resolved.end()) return it->second;
        std::set<RawRule> bodies = non_unit_bodies[x];
        for (const std::string& child : unit_children[x]) {
            for (RawRule body : self(self, child)) {
                body.lhs = x;
                bodies.insert(body);
            }
        }
        return resolved.emplace(x, std::move(bodies)).first->second;
    };

    std::set<RawRule> expanded;
    for (const std::string& n : names) {
        if (!rep.count(n) || rep[n] == n) {
            for (const RawRule& r : resolve(resolve, n)) expanded.insert(r);
        }
    }

    // Useless-symbol removal: keep generating, reachable nonterminals.
    std::set<std::string> generating;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const RawRule& r : expanded) {
            if (generating.count(r.lhs)) continue;
            bool gen = false;
            if (r.kind == CnfRule::Kind::Terminal) gen = true;
            else if (r.kind == CnfRule::Kind::Epsilon) gen = true;
            else gen = generating.count(r.first) && generating.count(r.second);
            if (gen) {
                generating.insert(r.lhs);
                changed = true;
            }
        }
    }
    std::set<std::string> reachable{start2};
    std::deque<std::string> todo{start2};
    while (!todo.empty()) {
        std::string x = todo.front();
        todo.pop_front();
        for (const RawRule& r : expanded) {
            if (r.lhs != x || r.kind != CnfRule::Kind::Binary) continue;
            for (const std::string& y : {r.first, r.second})
                if (generating.count(y) && reachable.insert(y).second) todo.push_back(y);
        }
    }

    std::vector<CnfRule> final_rules;
    std::set<std::string> final_nts{start2};
    for (const RawRule& r : expanded) {
        if (!reachable.count(r.lhs) || !generating.count(r.lhs)) continue;
        if (r.kind == CnfRule::Kind::Binary &&
            (!generating.count(r.first) || !generating.count(r.second) ||
             !reachable.count(r.first) || !reachable.count(r.second)))
            continue;
        final_rules.push_back({r.lhs, r.kind, r.first, r.second});
        final_nts.insert(r.lhs);
        if (r.kind == CnfRule::Kind::Binary) {
            final_nts.insert(r.first);
            final_nts.insert(r.second);
        }
    }

    CnfGrammar out = CnfGrammar::create(std::move(final_nts), g.terminals(), start2,
                                        std::move(final_rules));
    return {std::move(out), raw_count};
}

} // namespace ogc
