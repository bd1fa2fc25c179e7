#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ogc/algebra.hpp"
#include "ogc/automata.hpp"

namespace ogc {

/// Per-variable domain: a finite ordered set of values, subset of the
/// variable's static type. An empty domain flags inconsistency.
using Domain = std::set<Value>;

enum class Phase { Open, Closed, Failed };

std::string phase_str(Phase p);

/// The constraint pair driving a session: the true constraint C and the
/// approximation used while the sequence of variables is still open.
struct SessionConstraint {
    std::string kind;
    ConstraintDef closed;                 // C
    ConstraintDef open_approx;            // filtered against while open
    bool tight = false;                   // open_approx accepts exactly the prefixes of L_C
    std::optional<Nfa> automaton;         // set for regular constraints
    std::optional<Nfa> automaton_prefix;  // its prefix closure
    std::optional<std::int64_t> sum_target; // set for sum_eq, used by bounds propagation
};

SessionConstraint session_regular(Nfa a);
SessionConstraint session_cfg(const CnfGrammar& g);
/// Generic pairing; callers declare whether open_approx is tight.
SessionConstraint session_catalog(ConstraintDef closed, ConstraintDef open_approx, bool tight);
/// A contractible constraint serves as its own approximation.
SessionConstraint session_contractible(ConstraintDef c);
SessionConstraint session_sum_eq(std::int64_t target, std::vector<Value> type);

/// Incremental propagation state for one open constraint. Variables are
/// appended at the right-hand end while the phase is Open; Closed switches
/// filtering from the approximation to the true constraint; Failed is
/// absorbing. Single-threaded; copy to snapshot.
class Session {
public:
    static Session open_session(SessionConstraint constraint);

    /// Appends a variable with the given domain. The domain must lie inside
    /// the constraint's static type. No propagation is performed implicitly.
    void add_variable(const Domain& dom);

    /// Replaces a domain by a subset of itself.
    void restrict_domain(std::size_t var_index, const Domain& values);

    /// Ends the open phase; filtering switches to the true constraint.
    void close();

    /// Reduces every domain to the values supported by the active constraint
    /// (approximation while open, true constraint once closed). Any emptied
    /// domain moves the session to Failed; in Failed this is a no-op.
    void propagate();

    /// Bounds propagation for sum-equality sessions: while open, enforces the
    /// upper bounds implied by the sum staying below the target; when closed,
    /// enforces both bounds of the equality.
    void propagate_sum_bounds();

    Phase phase() const { return phase_; }
    const std::vector<Domain>& domains() const { return domains_; }
    const SessionConstraint& constraint() const { return constraint_; }
    /// Whether open-phase propagation is guaranteed to reach the open
    /// value-level fixpoint (true only for a tight approximation).
    bool open_filtering_is_tight() const { return constraint_.tight; }
    const std::vector<std::string>& trace() const { return trace_; }

private:
    explicit Session(SessionConstraint c) : constraint_(std::move(c)) {}

    void fail();
    void propagate_generic(const ConstraintDef& active);
    void propagate_layered(const Nfa& active);

    SessionConstraint constraint_;
    Phase phase_ = Phase::Open;
    std::vector<Domain> domains_;
    std::vector<std::string> trace_;
};

} // namespace ogc
