#include "ogc/softedit.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "ogc/errors.hpp"
#include "ogc/oracle.hpp"

namespace ogc {

Rational EditWeights::min_sub_ins_del() const {
    return min(substitution, min(insertion, deletion));
}

std::size_t EditScript::count(EditOp::Kind k) const {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(), [k](const EditOp& op) { return op.kind == k; }));
}

Rational EditScript::cost(const EditWeights& w) const {
    Rational total(0);
    for (const EditOp& op : ops) {
        switch (op.kind) {
        case EditOp::Kind::Substitute: total += w.substitution; break;
        case EditOp::Kind::Insert: total += w.insertion; break;
        case EditOp::Kind::Delete: total += w.deletion; break;
        case EditOp::Kind::Transpose: total += w.transposition; break;
        }
    }
    return total;
}

Word apply_script(const EditScript& s, Word word) {
    for (const EditOp& op : s.ops) {
        switch (op.kind) {
        case EditOp::Kind::Substitute:
            if (op.pos < 1 || op.pos > word.size()) throw InputError("substitute out of range");
            word[op.pos - 1] = op.symbol;
            break;
        case EditOp::Kind::Insert:
            if (op.pos < 1 || op.pos > word.size() + 1) throw InputError("insert out of range");
            word.insert(word.begin() + static_cast<std::ptrdiff_t>(op.pos - 1), op.symbol);
            break;
        case EditOp::Kind::Delete:
            if (op.pos < 1 || op.pos > word.size()) throw InputError("delete out of range");
            word.erase(word.begin() + static_cast<std::ptrdiff_t>(op.pos - 1));
            break;
        case EditOp::Kind::Transpose:
            if (op.pos < 1 || op.pos + 1 > word.size()) throw InputError("transpose out of range");
            std::swap(word[op.pos - 1], word[op.pos]);
            break;
        }
    }
    return word;
}

namespace {

// One target-side step of an alignment, in target word order.
struct AlignStep {
    enum class Kind { Insert, Match, Sub };
    Kind kind;
    std::size_t src = 0; // consumed source position (Match / Sub)
    Symbol sym;          // produced letter (Insert / Sub)
};

struct Alignment {
    Rational cost{0};
    std::vector<AlignStep> steps;
    std::vector<bool> deleted; // per source position
};

struct QueueEntry {
    Rational cost;
    std::int64_t ops;
    std::size_t node;

    bool operator>(const QueueEntry& o) const {
        if (cost != o.cost) return o.cost < cost;
        if (ops != o.ops) return ops > o.ops;
        return node > o.node;
    }
};

struct SearchSpace {
    std::vector<StateId> states;
    std::map<StateId, std::size_t> index;
    // moves[q][a] = successor state indices on alphabet symbol a
    std::vector<std::vector<std::vector<std::size_t>>> moves;
    std::vector<bool> accepting;
    const Nfa* nfa = nullptr;

    explicit SearchSpace(const Nfa& a) : nfa(&a) {
        states = a.states();
        std::sort(states.begin(), states.end());
        for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = i;
        moves.assign(states.size(), {});
        accepting.assign(states.size(), false);
        for (std::size_t i = 0; i < states.size(); ++i) {
            moves[i].assign(a.alphabet().size(), {});
            for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
                for (const StateId& r : a.next(states[i], a.alphabet()[s]))
                    moves[i][s].push_back(index.at(r));
                std::sort(moves[i][s].begin(), moves[i][s].end());
            }
            if (a.accepting().count(states[i])) accepting[i] = true;
        }
    }

    std::optional<std::size_t> symbol_index(const Symbol& s) const {
        const auto& sigma = nfa->alphabet();
        auto it = std::find(sigma.begin(), sigma.end(), s);
        if (it == sigma.end()) return std::nullopt;
        return static_cast<std::size_t>(it - sigma.begin());
    }
};

// Shortest edit path over (consumed source prefix, automaton state); exact
// when transpositions cannot beat a deletion-insertion pair.
std::optional<Alignment> align_no_transpose(const SearchSpace& space, const EditWeights& wts,
                                            const Word& w) {
    const std::size_t n = w.size();
    const std::size_t S = space.states.size();
    const std::size_t total = (n + 1) * S;
    const Rational inf = Rational::infinity();

    std::vector<Rational> dist(total, inf);
    std::vector<std::int64_t> opcount(total, 0);
    struct Parent {
        std::size_t prev = SIZE_MAX;
        AlignStep::Kind kind = AlignStep::Kind::Insert;
        bool is_delete = false;
        std::size_t sym = 0;
    };
    std::vector<Parent> parent(total);

    std::vector<std::size_t> sym_of(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        if (auto s = space.symbol_index(w[i])) sym_of[i] = *s;
    }

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> pq;
    auto node_of = [S](std::size_t i, std::size_t q) { return i * S + q; };
    for (const StateId& q : space.nfa->start()) {
        const std::size_t node = node_of(0, space.index.at(q));
        dist[node] = Rational(0);
        pq.push({Rational(0), 0, node});
    }

    auto relax = [&](std::size_t from, std::size_t to, const Rational& c, std::int64_t extra_ops,
                     AlignStep::Kind kind, bool is_delete, std::size_t sym) {
        if (c.is_infinite()) return;
        const Rational nd = dist[from] + c;
        const std::int64_t no = opcount[from] + extra_ops;
        if (nd < dist[to] || (nd == dist[to] && no < opcount[to])) {
            dist[to] = nd;
            opcount[to] = no;
            parent[to] = {from, kind, is_delete, sym};
            pq.push({nd, no, to});
        }
    };

    while (!pq.empty()) {
        const QueueEntry e = pq.top();
        pq.pop();
        if (dist[e.node] != e.cost || opcount[e.node] != e.ops) continue;
        const std::size_t i = e.node / S;
        const std::size_t q = e.node % S;
        for (std::size_t s = 0; s < space.nfa->alphabet().size(); ++s)
            for (std::size_t r : space.moves[q][s])
                relax(e.node, node_of(i, r), wts.insertion, 1, AlignStep::Kind::Insert, false, s);
        if (i < n) {
            relax(e.node, node_of(i + 1, q), wts.deletion, 1, AlignStep::Kind::Match, true, 0);
            for (std::size_t s = 0; s < space.nfa->alphabet().size(); ++s) {
                const bool same = sym_of[i] == s;
                for (std::size_t r : space.moves[q][s]) {
                    if (same)
                        relax(e.node, node_of(i + 1, r), Rational(0), 0, AlignStep::Kind::Match,
                              false, s);
                    else
                        relax(e.node, node_of(i + 1, r), wts.substitution, 1, AlignStep::Kind::Sub,
                              false, s);
                }
            }
        }
    }

    std::size_t best = SIZE_MAX;
    for (std::size_t q = 0; q < S; ++q) {
        if (!space.accepting[q]) continue;
        const std::size_t node = node_of(n, q);
        if (dist[node].is_infinite()) continue;
        if (best == SIZE_MAX || dist[node] < dist[best] ||
            (dist[node] == dist[best] && opcount[node] < opcount[best]))
            best = node;
    }
    if (best == SIZE_MAX) return std::nullopt;

    Alignment out;
    out.cost = dist[best];
    out.deleted.assign(n, false);
    std::vector<AlignStep> rev;
    for (std::size_t node = best; parent[node].prev != SIZE_MAX; node = parent[node].prev) {
        const Parent& p = parent[node];
        const std::size_t i_to = node / S;
        if (p.is_delete) {
            out.deleted[i_to - 1] = true;
            continue;
        }
        AlignStep step;
        step.kind = p.kind;
        if (p.kind == AlignStep::Kind::Insert) {
            step.sym = space.nfa->alphabet()[p.sym];
        } else {
            step.src = i_to - 1;
            step.sym = space.nfa->alphabet()[p.sym];
        }
        rev.push_back(step);
    }
    out.steps.assign(rev.rbegin(), rev.rend());
    return out;
}

// Exact search allowing transpositions: nodes are (mask of consumed source
// positions, automaton state); consuming position j after members of the mask
// beyond j costs one transposition per crossing. Deleted positions are the
// ones never consumed, paid when accepting.
std::optional<Alignment> align_with_transpose(const SearchSpace& space, const EditWeights& wts,
                                              const Word& w, const Rational& upper_bound,
                                              std::size_t node_budget) {
    const std::size_t n = w.size();
    if (n > 17) throw ResourceError("word too long for the exact transposition search",
                                    upper_bound.str());
    const std::size_t S = space.states.size();
    const std::size_t total = (std::size_t{1} << n) * S;
    const Rational inf = Rational::infinity();

    std::vector<Rational> dist(total, inf);
    std::vector<std::int64_t> opcount(total, 0);
    struct Parent {
        std::size_t prev = SIZE_MAX;
        AlignStep::Kind kind = AlignStep::Kind::Insert;
        std::size_t src = 0;
        std::size_t sym = 0;
    };
    std::vector<Parent> parent(total);

    std::vector<std::size_t> sym_of(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
        if (auto s = space.symbol_index(w[i])) sym_of[i] = *s;
    }

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> pq;
    auto node_of = [S](std::size_t mask, std::size_t q) { return mask * S + q; };
    for (const StateId& q : space.nfa->start()) {
        const std::size_t node = node_of(0, space.index.at(q));
        dist[node] = Rational(0);
        pq.push({Rational(0), 0, node});
    }

    auto relax = [&](std::size_t from, std::size_t to, const Rational& c, std::int64_t extra_ops,
                     AlignStep::Kind kind, std::size_t src, std::size_t sym) {
        const Rational nd = dist[from] + c;
        if (upper_bound < nd) return;
        const std::int64_t no = opcount[from] + extra_ops;
        if (nd < dist[to] || (nd == dist[to] && no < opcount[to])) {
            dist[to] = nd;
            opcount[to] = no;
            parent[to] = {from, kind, src, sym};
            pq.push({nd, no, to});
        }
    };

    Rational goal_cost = inf;
    std::int64_t goal_ops = 0;
    std::size_t goal_node = SIZE_MAX;
    std::size_t pops = 0;

    while (!pq.empty()) {
        const QueueEntry e = pq.top();
        pq.pop();
        if (dist[e.node] != e.cost || opcount[e.node] != e.ops) continue;
        if (goal_cost < e.cost) break; // no cheaper goal can appear
        if (++pops > node_budget)
            throw ResourceError("edit search node budget exceeded",
                                min(goal_cost, upper_bound).str());
        const std::size_t mask = e.node / S;
        const std::size_t q = e.node % S;

        if (space.accepting[q]) {
            const auto remaining =
                static_cast<std::int64_t>(n) - static_cast<std::int64_t>(__builtin_popcountll(mask));
            if (remaining == 0 || !wts.deletion.is_infinite()) {
                const Rational final_cost = e.cost + wts.deletion * Rational(remaining);
                const std::int64_t final_ops = e.ops + remaining;
                if (final_cost < goal_cost || (final_cost == goal_cost && final_ops < goal_ops)) {
                    goal_cost = final_cost;
                    goal_ops = final_ops;
                    goal_node = e.node;
                }
            }
        }

        if (!wts.insertion.is_infinite()) {
            for (std::size_t s = 0; s < space.nfa->alphabet().size(); ++s)
                for (std::size_t r : space.moves[q][s])
                    relax(e.node, node_of(mask, r), wts.insertion, 1, AlignStep::Kind::Insert, 0, s);
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            const auto crossings =
                static_cast<std::int64_t>(__builtin_popcountll(mask >> (j + 1)));
            if (crossings > 0 && wts.transposition.is_infinite()) continue;
            const Rational move_cost = wts.transposition * Rational(crossings);
            const std::size_t next_mask = mask | (std::size_t{1} << j);
            if (sym_of[j] != SIZE_MAX) {
                for (std::size_t r : space.moves[q][sym_of[j]])
                    relax(e.node, node_of(next_mask, r), move_cost, crossings,
                          AlignStep::Kind::Match, j, sym_of[j]);
            }
            if (!wts.substitution.is_infinite()) {
                for (std::size_t s = 0; s < space.nfa->alphabet().size(); ++s) {
                    if (s == sym_of[j]) continue;
                    for (std::size_t r : space.moves[q][s])
                        relax(e.node, node_of(next_mask, r), move_cost + wts.substitution,
                              crossings + 1, AlignStep::Kind::Sub, j, s);
                }
            }
        }
    }

    if (goal_node == SIZE_MAX) return std::nullopt;

    Alignment out;
    out.cost = goal_cost;
    out.deleted.assign(n, true);
    std::vector<AlignStep> rev;
    for (std::size_t node = goal_node; parent[node].prev != SIZE_MAX; node = parent[node].prev) {
        const Parent& p = parent[node];
        AlignStep step;
        step.kind = p.kind;
        step.sym = space.nfa->alphabet()[p.sym];
        if (p.kind != AlignStep::Kind::Insert) {
            step.src = p.src;
            out.deleted[p.src] = false;
        }
        rev.push_back(step);
    }
    out.steps.assign(rev.rbegin(), rev.rend());
    return out;
}

// Normal-form script emission: deletions (descending positions), then the
// adjacent swaps realizing the target arrangement, then substitutions, then
// insertions at final positions. When a delete-insert pair is no costlier
// than the swaps a consumed letter needs (plus its substitution, if any),
// the letter is re-routed through such a pair instead.
EditScript emit_script(Alignment align, const Word& w, const EditWeights& wts) {
    const std::size_t n = w.size();

    const bool can_reroute = !wts.insertion.is_infinite() && !wts.deletion.is_infinite();
    if (can_reroute) {
        std::vector<std::size_t> matched;
        for (AlignStep& step : align.steps) {
            if (step.kind == AlignStep::Kind::Insert) continue;
            std::int64_t crossings = 0;
            for (std::size_t j : matched)
                if (j > step.src) ++crossings;
            Rational keep_cost = wts.transposition * Rational(crossings);
            if (step.kind == AlignStep::Kind::Sub) keep_cost += wts.substitution;
            const Rational pair_cost = wts.insertion + wts.deletion;
            if (crossings > 0 && pair_cost <= keep_cost) {
                align.deleted[step.src] = true;
                step.kind = AlignStep::Kind::Insert;
            } else {
                matched.push_back(step.src);
            }
        }
    }

    EditScript script;
    for (std::size_t j = n; j-- > 0;) {
        if (align.deleted[j]) script.ops.push_back({EditOp::Kind::Delete, j + 1, {}});
    }

    std::vector<std::size_t> arr; // kept source positions, in source order
    for (std::size_t j = 0; j < n; ++j)
        if (!align.deleted[j]) arr.push_back(j);

    std::vector<std::size_t> desired; // kept source positions, in target order
    for (const AlignStep& step : align.steps)
        if (step.kind != AlignStep::Kind::Insert) desired.push_back(step.src);

    for (std::size_t k = 0; k < desired.size(); ++k) {
        const auto it = std::find(arr.begin() + static_cast<std::ptrdiff_t>(k), arr.end(),
                                  desired[k]);
        auto idx = static_cast<std::size_t>(it - arr.begin());
        for (; idx > k; --idx) {
            script.ops.push_back({EditOp::Kind::Transpose, idx, {}});
            std::swap(arr[idx - 1], arr[idx]);
        }
    }

    std::size_t rank = 0;
    for (const AlignStep& step : align.steps) {
        if (step.kind == AlignStep::Kind::Insert) continue;
        ++rank;
        if (step.kind == AlignStep::Kind::Sub)
            script.ops.push_back({EditOp::Kind::Substitute, rank, step.sym});
    }

    for (std::size_t t = 0; t < align.steps.size(); ++t) {
        if (align.steps[t].kind == AlignStep::Kind::Insert)
            script.ops.push_back({EditOp::Kind::Insert, t + 1, align.steps[t].sym});
    }
    return script;
}

// Exact minimum edit from w into L(a), with a witnessing normal-form script.
EditResult min_edit_into(const Nfa& a, const EditWeights& wts, const Word& w) {
    const SearchSpace space(a);

    const bool pair_dominates =
        !wts.transposition.is_infinite()
            ? !(wts.transposition < wts.insertion + wts.deletion)
            : true;

    std::optional<Alignment> plain = align_no_transpose(space, wts, w);
    if (wts.transposition.is_infinite() || pair_dominates) {
        if (!plain) return {Rational::infinity(), {}};
        EditScript script = emit_script(*plain, w, wts);
        return {script.cost(wts), std::move(script)};
    }

    const Rational upper = plain ? plain->cost : Rational::infinity();
    std::optional<Alignment> full = align_with_transpose(space, wts, w, upper, 20'000'000);
    if (!full) {
        if (!plain) return {Rational::infinity(), {}};
        full = plain;
    }
    EditScript script = emit_script(*full, w, wts);
    return {script.cost(wts), std::move(script)};
}

Nfa line_nfa(const Word& target, const Word& extra_symbols) {
    std::vector<Symbol> alphabet;
    for (const Symbol& s : target)
        if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end()) alphabet.push_back(s);
    for (const Symbol& s : extra_symbols)
        if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end()) alphabet.push_back(s);
    if (alphabet.empty()) alphabet.push_back("a");

    std::vector<StateId> states;
    std::vector<Transition> trans;
    for (std::size_t i = 0; i <= target.size(); ++i) states.push_back("p" + std::to_string(i));
    for (std::size_t i = 0; i < target.size(); ++i)
        trans.push_back({states[i], target[i], states[i + 1]});
    return Nfa::create(std::move(alphabet), states, {states.front()}, {states.back()},
                       std::move(trans));
}

} // namespace

OpenEditMeasure::OpenEditMeasure(Nfa language, EditWeights weights)
    : language_(language), prefix_(prefix_closure(language)), weights_(std::move(weights)) {}

bool OpenEditMeasure::member(const Word& w) const {
    for (const Symbol& s : w)
        if (!prefix_.has_symbol(s)) return false;
    return accepts(prefix_, w);
}

EditResult OpenEditMeasure::measure(const Word& w) const {
    if (member(w)) return {Rational(0), {}};
    return min_edit_into(prefix_, weights_, w);
}

ContractibilityStatus contractibility_status(const EditWeights& w, bool order_free) {
    if (order_free) return ContractibilityStatus::Guaranteed;
    if (!(w.transposition < w.min_sub_ins_del())) return ContractibilityStatus::Guaranteed;
    if (w.substitution.is_zero() || w.insertion.is_zero() || w.deletion.is_zero() ||
        w.transposition.is_zero())
        return ContractibilityStatus::Guaranteed;
    return ContractibilityStatus::NotGuaranteed;
}

ApproxMeasures approx_measures(const OpenEditMeasure& m) {
    const EditWeights& w = m.weights();
    EditWeights w1 = w, w2 = w, w3 = w, w4 = w;
    w1.substitution = w.transposition;
    w2.insertion = w.transposition;
    w3.deletion = w.transposition;
    w4.transposition = Rational(0);
    return {OpenEditMeasure(m.language(), w1), OpenEditMeasure(m.language(), w2),
            OpenEditMeasure(m.language(), w3), OpenEditMeasure(m.language(), w4)};
}

Rational ApproxMeasures::m5(const Word& w) const {
    Rational best = m1.measure(w).cost;
    best = max(best, m2.measure(w).cost);
    best = max(best, m3.measure(w).cost);
    best = max(best, m4.measure(w).cost);
    return best;
}

MStarResult m_star_bounded(const OpenEditMeasure& m, const Word& w, std::size_t max_ext) {
    MStarResult result;
    result.value = m.measure(w).cost;
    result.extension = {};

    std::vector<Word> layer{{}};
    for (std::size_t len = 1; len <= max_ext; ++len) {
        std::vector<Word> next;
        for (const Word& ext : layer) {
            for (const Symbol& s : m.language().alphabet()) {
                Word longer = ext;
                longer.push_back(s);
                Word probe = w;
                probe.insert(probe.end(), longer.begin(), longer.end());
                const Rational cost = m.measure(probe).cost;
                if (cost < result.value) {
                    result.value = cost;
                    result.extension = longer;
                }
                next.push_back(std::move(longer));
            }
        }
        layer = std::move(next);
    }

    result.status = MStarResult::Status::UpperBound;
    if (result.value.is_zero()) {
        result.status = MStarResult::Status::Exact;
    } else {
        // The first three reweighted measures are non-decreasing and stay
        // below the measure, so each bounds the infimum from below; meeting
        // their max certifies exactness. The zeroed-transposition variant is
        // not a sound lower bound: free reordering can make longer words
        // strictly cheaper to repair.
        const ApproxMeasures approx = approx_measures(m);
        Rational lower = approx.m1.measure(w).cost;
        lower = max(lower, approx.m2.measure(w).cost);
        lower = max(lower, approx.m3.measure(w).cost);
        if (lower == result.value) result.status = MStarResult::Status::Exact;
    }
    return result;
}

PropernessResult properness_status(const OpenEditMeasure& m, const Nfa& ambient,
                                   std::size_t max_len) {
    const EditWeights& w = m.weights();
    PropernessResult out;
    out.tested_len = max_len;

    const bool a0 = w.substitution.is_zero();
    const bool b0 = w.insertion.is_zero();
    const bool g0 = w.deletion.is_zero();
    const bool d0 = w.transposition.is_zero();

    if (!a0 && !b0 && !g0 && !d0) {
        out.verdict = PropernessVerdict::Proper;
        out.condition = "all weights positive";
        return out;
    }
    if (g0) out.condition = "free deletions: ambient must lie inside the prefix language";
    else if (a0 && b0) out.condition = "free substitutions and insertions: ambient must not be shorter than members";
    else if (a0) out.condition = "free substitutions: same-length closure required";
    else if (b0 && d0) out.condition = "free insertions and transpositions: letter-submultiset closure required";
    else if (b0) out.condition = "free insertions: subsequence closure required";
    else out.condition = "free transpositions: permutation closure required";

    // Zero-cost reachability is decided exactly per word by the measure;
    // only the ambient enumeration is bounded.
    oracle::LanguageOracle amb{[&ambient](const Word& word) { return accepts(ambient, word); },
                               ambient.alphabet(), max_len};
    for (const Word& word : oracle::enumerate_language(amb)) {
        if (m.member(word)) continue;
        if (m.measure(word).cost.is_zero()) {
            out.verdict = PropernessVerdict::Improper;
            out.witness = word;
            return out;
        }
    }
    out.verdict = PropernessVerdict::Indeterminate;
    return out;
}

EditScript normalize_edit_script(const EditScript& s, const Word& source, const EditWeights& w) {
    const Word target = apply_script(s, source); // validates the script
    const Nfa line = line_nfa(target, source);
    EditResult best = min_edit_into(line, w, source);
    if (s.cost(w) < best.cost)
        throw InputError("normalization produced a costlier script"); // unreachable by construction
    return best.script;
}

} // namespace ogc
