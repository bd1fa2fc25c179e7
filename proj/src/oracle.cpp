#include "ogc/oracle.hpp"

#include <deque>
#include <map>
#include <queue>
#include <unordered_set>

#include "ogc/errors.hpp"

namespace ogc::oracle {

namespace {

void enumerate_rec(const LanguageOracle& o, Word& w, std::set<Word>& out) {
    if (o.membership(w)) out.insert(w);
    if (w.size() >= o.max_len) return;
    for (const Symbol& s : o.alphabet) {
        w.push_back(s);
        enumerate_rec(o, w, out);
        w.pop_back();
    }
}

std::string pack(const Word& w) {
    std::string key;
    for (const Symbol& s : w) {
        key += s;
        key += '\x1f';
    }
    return key;
}

} // namespace

std::set<Word> enumerate_language(const LanguageOracle& o) {
    std::set<Word> out;
    Word w;
    enumerate_rec(o, w, out);
    return out;
}

std::set<Word> prefix_set(const std::set<Word>& words) {
    std::set<Word> out;
    for (const Word& w : words) {
        for (std::size_t len = 0; len <= w.size(); ++len)
            out.insert(Word(w.begin(), w.begin() + len));
    }
    return out;
}

std::set<Word> enumerate_cnf_language(const CnfGrammar& g, std::size_t max_len) {
    // generated[A][n] = words of length n derivable from A
    std::map<std::string, std::vector<std::set<Word>>> generated;
    for (const std::string& a : g.nonterminals())
        generated[a].assign(max_len + 1, {});

    for (const CnfRule& r : g.rules())
        if (r.kind == CnfRule::Kind::Terminal && max_len >= 1)
            generated[r.lhs][1].insert({r.first});

    for (std::size_t n = 2; n <= max_len; ++n) {
        for (const CnfRule& r : g.rules()) {
            if (r.kind != CnfRule::Kind::Binary) continue;
            for (std::size_t k = 1; k < n; ++k) {
                for (const Word& left : generated[r.first][k]) {
                    for (const Word& right : generated[r.second][n - k]) {
                        Word w = left;
                        w.insert(w.end(), right.begin(), right.end());
                        generated[r.lhs][n].insert(std::move(w));
                    }
                }
            }
        }
    }

    std::set<Word> out;
    if (g.has_epsilon_rule()) out.insert(Word{});
    for (std::size_t n = 1; n <= max_len; ++n)
        out.insert(generated[g.start()][n].begin(), generated[g.start()][n].end());
    return out;
}

std::optional<ClosureWitness> contractible_bruteforce(const LanguageOracle& o) {
    for (const Word& w : enumerate_language(o)) {
        if (w.empty()) continue;
        Word shorter(w.begin(), w.end() - 1);
        if (!o.membership(shorter)) return ClosureWitness{w, shorter};
    }
    return std::nullopt;
}

bool bounded_prefix_membership(const Nfa& a, const Word& w, std::size_t total_len_cap) {
    std::set<StateId> current = a.start();
    for (const Symbol& s : w) {
        if (!a.has_symbol(s)) return false;
        std::set<StateId> next;
        for (const StateId& q : current) {
            const auto& succ = a.next(q, s);
            next.insert(succ.begin(), succ.end());
        }
        current = std::move(next);
        if (current.empty()) return false;
    }
    if (w.size() > total_len_cap) return false;

    // Breadth-first over state sets for the extension, one layer per letter.
    std::set<std::set<StateId>> seen{current};
    std::deque<std::set<StateId>> layer{current};
    std::size_t remaining = total_len_cap - w.size();
    while (true) {
        for (const auto& subset : layer)
            for (const StateId& q : subset)
                if (a.accepting().count(q)) return true;
        if (remaining == 0) return false;
        --remaining;
        std::deque<std::set<StateId>> next_layer;
        for (const auto& subset : layer) {
            for (const Symbol& s : a.alphabet()) {
                std::set<StateId> next;
                for (const StateId& q : subset) {
                    const auto& succ = a.next(q, s);
                    next.insert(succ.begin(), succ.end());
                }
                if (!next.empty() && seen.insert(next).second) next_layer.push_back(next);
            }
        }
        if (next_layer.empty()) return false;
        layer = std::move(next_layer);
    }
}

Rational edit_distance_bruteforce(const LanguageOracle& member_of_target,
                                  const EditWeightsRef& weights, const Word& w,
                                  const Rational& cost_cap, std::size_t node_budget) {
    if (cost_cap.is_infinite()) throw InputError("edit oracle needs a finite cost cap");

    struct Node {
        Rational cost;
        Word word;
        bool operator>(const Node& o) const {
            if (cost != o.cost) return o.cost < cost;
            return o.word < word; // deterministic pop order on ties
        }
    };

    const std::vector<Symbol>& sigma = member_of_target.alphabet;
    // explored words respect the oracle's declared length bound (free
    // insertions would otherwise grow the frontier without limit)
    const std::size_t word_cap = std::max(member_of_target.max_len, w.size());
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> frontier;
    std::unordered_set<std::string> visited;
    frontier.push({Rational(0), w});
    std::size_t work = 0; // pops and pushes both count against the budget
    Rational best_bound = cost_cap;

    while (!frontier.empty()) {
        Node node = frontier.top();
        frontier.pop();
        if (!visited.insert(pack(node.word)).second) continue;
        if (++work > node_budget)
            throw ResourceError("edit oracle node budget exceeded", best_bound.str());
        if (member_of_target.membership(node.word)) return node.cost;

        auto push = [&](const Rational& op_cost, Word next) {
            if (op_cost.is_infinite()) return;
            if (next.size() > word_cap) return;
            Rational total = node.cost + op_cost;
            if (cost_cap < total) return;
            if (visited.count(pack(next))) return;
            if (++work > node_budget)
                throw ResourceError("edit oracle node budget exceeded", best_bound.str());
            frontier.push({total, std::move(next)});
        };

        const Word& u = node.word;
        for (std::size_t i = 0; i < u.size(); ++i) {
            Word del = u;
            del.erase(del.begin() + static_cast<std::ptrdiff_t>(i));
            push(weights.deletion, std::move(del));
            for (const Symbol& s : sigma) {
                if (s == u[i]) continue;
                Word sub = u;
                sub[i] = s;
                push(weights.substitution, std::move(sub));
            }
            if (i + 1 < u.size() && u[i] != u[i + 1]) {
                Word tr = u;
                std::swap(tr[i], tr[i + 1]);
                push(weights.transposition, std::move(tr));
            }
        }
        for (std::size_t i = 0; i <= u.size(); ++i) {
            for (const Symbol& s : sigma) {
                Word ins = u;
                ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), s);
                push(weights.insertion, std::move(ins));
            }
        }
    }
    throw ResourceError("no edit within the cost cap", cost_cap.str());
}

std::vector<std::set<Symbol>> open_dconsistency_bruteforce(
    const std::function<bool(const Word&)>& membership,
    const std::vector<std::set<Symbol>>& domains, const std::vector<Symbol>& future_type,
    std::size_t support_len_bound) {
    const std::size_t n = domains.size();

    // All words of length n..bound whose first n letters come from the domains.
    std::vector<Word> supports;
    Word w;
    auto extend = [&](auto&& self, std::size_t pos) -> void {
        if (pos >= n) {
            if (membership(w)) supports.push_back(w);
            if (w.size() >= support_len_bound) return;
            for (const Symbol& s : future_type) {
                w.push_back(s);
                self(self, pos + 1);
                w.pop_back();
            }
            return;
        }
        for (const Symbol& s : domains[pos]) {
            w.push_back(s);
            self(self, pos + 1);
            w.pop_back();
        }
    };
    extend(extend, 0);

    std::vector<std::set<Symbol>> result(n);
    for (const Word& support : supports)
        for (std::size_t i = 0; i < n; ++i) result[i].insert(support[i]);
    return result;
}

} // namespace ogc::oracle
