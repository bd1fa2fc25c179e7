#include "ogc/engine.hpp"

#include <algorithm>

#include "ogc/errors.hpp"
#include "ogc/grammar.hpp"

namespace ogc {

std::string phase_str(Phase p) {
    switch (p) {
    case Phase::Open: return "open";
    case Phase::Closed: return "closed";
    case Phase::Failed: return "failed";
    }
    return "?";
}

SessionConstraint session_regular(Nfa a) {
    SessionConstraint c;
    c.kind = "regular";
    Nfa closed_a = a;
    Nfa prefix = prefix_closure(a);
    c.closed = regular_constraint(std::move(closed_a));
    c.open_approx = regular_constraint(prefix);
    c.tight = true;
    c.automaton = std::move(a);
    c.automaton_prefix = std::move(prefix);
    return c;
}

SessionConstraint session_cfg(const CnfGrammar& g) {
    SessionConstraint c;
    c.kind = "cfg";
    c.closed = cfg_constraint(g);
    c.open_approx = cfg_constraint(prefix_closure_cnf(g).grammar);
    c.tight = true;
    return c;
}

SessionConstraint session_catalog(ConstraintDef closed, ConstraintDef open_approx, bool tight) {
    if (closed.type != open_approx.type)
        throw InputError("session constraint pair must share a static type");
    SessionConstraint c;
    c.kind = closed.name;
    c.closed = std::move(closed);
    c.open_approx = std::move(open_approx);
    c.tight = tight;
    return c;
}

SessionConstraint session_contractible(ConstraintDef def) {
    ConstraintDef copy = def;
    return session_catalog(std::move(def), std::move(copy), true);
}

SessionConstraint session_sum_eq(std::int64_t target, std::vector<Value> type) {
    for (const Value& v : type) {
        const auto* i = std::get_if<std::int64_t>(&v);
        if (!i || *i < 0) throw InputError("sum sessions need non-negative integer types");
    }
    SessionConstraint c = session_catalog(sum_eq(target, type), sum_le(target, type), true);
    c.kind = "sum_eq";
    c.sum_target = target;
    return c;
}

Session Session::open_session(SessionConstraint constraint) {
    Session s(std::move(constraint));
    s.trace_.push_back("open");
    return s;
}

void Session::fail() {
    phase_ = Phase::Failed;
    for (Domain& d : domains_) d.clear();
    trace_.push_back("failed");
}

void Session::add_variable(const Domain& dom) {
    if (phase_ != Phase::Open)
        throw LifecycleError("variables may be added only while the constraint is open");
    for (const Value& v : dom) {
        if (std::find(constraint_.closed.type.begin(), constraint_.closed.type.end(), v) ==
            constraint_.closed.type.end())
            throw InputError("domain value outside the static type: " + value_str(v));
    }
    domains_.push_back(dom);
    trace_.push_back("add");
}

void Session::restrict_domain(std::size_t var_index, const Domain& values) {
    if (phase_ == Phase::Failed)
        throw LifecycleError("session already failed");
    if (var_index >= domains_.size()) throw InputError("no such variable");
    for (const Value& v : values) {
        if (!domains_[var_index].count(v))
            throw InputError("restriction is not a subset of the current domain");
    }
    domains_[var_index] = values;
    trace_.push_back("restrict " + std::to_string(var_index));
}

void Session::close() {
    if (phase_ != Phase::Open) throw LifecycleError("session is not open");
    phase_ = Phase::Closed;
    trace_.push_back("close");
}

void Session::propagate() {
    if (phase_ == Phase::Failed) return;
    const bool open = phase_ == Phase::Open;
    trace_.push_back(open ? "propagate(open)" : "propagate(closed)");

    if (constraint_.automaton) {
        propagate_layered(open ? *constraint_.automaton_prefix : *constraint_.automaton);
        return;
    }
    propagate_generic(open ? constraint_.open_approx : constraint_.closed);
}

void Session::propagate_generic(const ConstraintDef& active) {
    const std::size_t n = domains_.size();
    if (n == 0) {
        if (!active.predicate(Tuple{})) fail();
        return;
    }
    for (const Domain& d : domains_) {
        if (d.empty()) {
            fail();
            return;
        }
    }

    // One sweep of support enumeration is the fixpoint for a single
    // constraint: a satisfying word supports every value it uses.
    std::vector<Domain> supported(n);
    Tuple w(n);
    std::size_t visited = 0;
    constexpr std::size_t kBudget = 20'000'000;
    auto sweep = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            if (++visited > kBudget) throw ResourceError("support enumeration budget exceeded");
            if (active.predicate(w))
                for (std::size_t i = 0; i < n; ++i) supported[i].insert(w[i]);
            return;
        }
        for (const Value& v : domains_[pos]) {
            w[pos] = v;
            self(self, pos + 1);
        }
    };
    sweep(sweep, 0);

    for (std::size_t i = 0; i < n; ++i) {
        if (supported[i].empty()) {
            fail();
            return;
        }
    }
    domains_ = std::move(supported);
}

void Session::propagate_layered(const Nfa& active) {
    const std::size_t n = domains_.size();
    if (n == 0) {
        bool eps = false;
        for (const StateId& q : active.start())
            if (active.accepting().count(q)) eps = true;
        if (!eps) fail();
        return;
    }

    auto symbol_of = [](const Value& v) -> const std::string* {
        return std::get_if<std::string>(&v);
    };

    // forward[i]: states reachable consuming i letters within the domains
    std::vector<std::set<StateId>> forward(n + 1);
    forward[0] = active.start();
    for (std::size_t i = 0; i < n; ++i) {
        for (const StateId& q : forward[i]) {
            for (const Value& v : domains_[i]) {
                const std::string* s = symbol_of(v);
                if (!s) continue;
                const auto& succ = active.next(q, *s);
                forward[i + 1].insert(succ.begin(), succ.end());
            }
        }
    }

    // backward[i]: states at layer i that can still consume the rest and accept
    std::vector<std::set<StateId>> backward(n + 1);
    backward[n] = active.accepting();
    for (std::size_t i = n; i > 0; --i) {
        for (const StateId& q : forward[i - 1]) {
            for (const Value& v : domains_[i - 1]) {
                const std::string* s = symbol_of(v);
                if (!s) continue;
                for (const StateId& r : active.next(q, *s)) {
                    if (backward[i].count(r)) {
                        backward[i - 1].insert(q);
                        break;
                    }
                }
                if (backward[i - 1].count(q)) break;
            }
        }
    }

    std::vector<Domain> supported(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const Value& v : domains_[i]) {
            const std::string* s = symbol_of(v);
            if (!s) continue;
            bool ok = false;
            for (const StateId& q : forward[i]) {
                for (const StateId& r : active.next(q, *s)) {
                    if (backward[i + 1].count(r)) {
                        ok = true;
                        break;
                    }
                }
                if (ok) break;
            }
            if (ok) supported[i].insert(v);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (supported[i].empty()) {
            fail();
            return;
        }
    }
    domains_ = std::move(supported);
}

void Session::propagate_sum_bounds() {
    if (!constraint_.sum_target) throw InputError("not a sum-equality session");
    if (phase_ == Phase::Failed) return;
    const bool open = phase_ == Phase::Open;
    trace_.push_back(open ? "propagate_sum_bounds(open)" : "propagate_sum_bounds(closed)");
    const std::int64_t target = *constraint_.sum_target;
    const std::size_t n = domains_.size();

    if (n == 0) {
        const bool ok = open ? (0 <= target) : (target == 0);
        if (!ok) fail();
        return;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        std::int64_t min_sum = 0, max_sum = 0;
        for (const Domain& d : domains_) {
            if (d.empty()) {
                fail();
                return;
            }
            min_sum += std::get<std::int64_t>(*d.begin());
            max_sum += std::get<std::int64_t>(*d.rbegin());
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t dom_min = std::get<std::int64_t>(*domains_[i].begin());
            const std::int64_t dom_max = std::get<std::int64_t>(*domains_[i].rbegin());
            const std::int64_t ub = target - (min_sum - dom_min);
            Domain pruned;
            for (const Value& v : domains_[i]) {
                const std::int64_t x = std::get<std::int64_t>(v);
                if (x > ub) continue;
                if (!open) {
                    const std::int64_t lb = target - (max_sum - dom_max);
                    if (x < lb) continue;
                }
                pruned.insert(v);
            }
            if (pruned.size() != domains_[i].size()) {
                if (pruned.empty()) {
                    fail();
                    return;
                }
                domains_[i] = std::move(pruned);
                changed = true;
                break; // recompute sums
            }
        }
    }
}

} // namespace ogc
