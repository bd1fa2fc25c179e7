#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ogc/rational.hpp"

namespace ogc {

// Decomposition-based violation measures: a constraint over X1..Xn is
// decomposed into a weighted set of elementary constraints over the main
// variables and auxiliary variables; the measure of a valuation is the
// minimum, over auxiliary assignments, of a combining function applied to
// the per-item errors.

/// A variable name or an integer constant.
using Term = std::variant<std::string, std::int64_t>;
using Valuation = std::map<std::string, std::int64_t>;

std::string term_str(const Term& t);

/// An elementary constraint in canonical form.
struct Elementary {
    enum class Kind {
        LinearLe,  // sum of coeff*var <= constant
        LinearEq,  // sum of coeff*var == constant
        LinearNeq, // sum of coeff*var != constant
        Indicator, // a = 1 <-> lo <= x <= hi
        Pred,      // named boolean predicate over args
    };

    Kind kind = Kind::LinearEq;
    std::vector<std::pair<std::int64_t, Term>> linear; // coeff, term
    std::int64_t constant = 0;
    Term ind_a, ind_x;
    std::int64_t lo = 0, hi = 0;
    std::string pred_name;
    std::vector<Term> args;

    /// Canonical identity: like terms combined, constants folded, and for
    /// symmetric relations the sign normalized. Two items are the same
    /// element of a weighted set iff their labels are equal.
    std::string label() const;
    std::vector<std::string> variables() const;
    bool satisfied(const Valuation& v) const;
    Elementary canonicalized() const;
};

Elementary make_le(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c);
Elementary make_eq(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c);
Elementary make_neq(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c);
Elementary make_indicator(Term a, Term x, std::int64_t lo, std::int64_t hi);
Elementary make_pred(std::string name, std::vector<Term> args);

enum class ErrorKind {
    Binary, // 0 when satisfied, 1 otherwise
    Slack,  // amount of violation for linear items; binary elsewhere
};

Rational item_error(const Elementary& c, const Valuation& v, ErrorKind err);

/// One weighted element of a decomposition. The tag/params pair survives
/// substitution and identifies corresponding items across sizes.
struct WeightedItem {
    Elementary item;
    Rational weight{1};
    std::string tag;
    std::string params;
};

/// A weighted set of elementary constraints, keyed by canonical labels.
/// Union adds weights pointwise.
class WeightedSet {
public:
    WeightedSet() = default;
    explicit WeightedSet(std::vector<WeightedItem> items);

    void add(WeightedItem item); // merges weights on equal labels
    const std::vector<WeightedItem>& items() const { return items_; }
    const WeightedItem* find(const std::string& label) const;
    std::size_t size() const { return items_.size(); }

    /// No item has weight 0.
    bool proper() const;
    WeightedSet unite(const WeightedSet& other) const;
    bool sub_weighted_set_of(const WeightedSet& other) const;

private:
    std::vector<WeightedItem> items_;
    std::map<std::string, std::size_t> index_;
};

/// Variable-to-term substitution; unmapped variables stay fixed.
struct Substitution {
    std::map<std::string, Term> map;

    Term apply(const Term& t) const;
    Elementary apply(const Elementary& c) const;
    /// Applies to every item, merging unified items by summing weights.
    WeightedSet apply(const WeightedSet& s) const;
};

struct VarSpec {
    std::string name;
    std::vector<std::int64_t> type;
};

/// A decomposition instantiated at a fixed length: main variables X1..Xn,
/// auxiliary variables, and the weighted item set. Auxiliary variables are
/// either ranged over exhaustively or computed from the main valuation.
struct DecompInstance {
    std::vector<VarSpec> main_vars;
    std::vector<VarSpec> aux_vars;
    WeightedSet items;
    bool functional_aux = false;
    std::function<Valuation(const Valuation&)> determine_aux;

    const VarSpec* var(const std::string& name) const;
};

struct SemanticEmbedding {
    Substitution theta;
    /// Maps the label of each theta-image of a d1 item to the labels of a
    /// pairwise-disjoint family of d2 items dominating its error.
    std::map<std::string, std::vector<std::string>> phi;
};

/// A family of instances indexed by length, together with the reference
/// predicate it decomposes and its natural across-size mappings.
struct Decomposition {
    std::string name;
    std::vector<std::int64_t> value_type;
    std::function<DecompInstance(std::size_t)> instantiate;
    std::function<bool(const std::vector<std::int64_t>&)> reference_predicate;
    std::function<SemanticEmbedding(std::size_t)> natural_embedding; // boundary n -> n+1
};

// Registered decomposition families.
Decomposition alldiff_diseq_decomposition(std::vector<std::int64_t> type);
Decomposition alldiff_bounds_decomposition(std::int64_t d);
Decomposition contiguity_chain_decomposition();
Decomposition rising_sawtooth_decomposition(std::vector<std::int64_t> type);
Decomposition gcc_full_decomposition(std::vector<std::int64_t> lower,
                                     std::vector<std::int64_t> upper);

/// Lookup by name: alldiff_diseq, alldiff_bounds, contiguity_slide,
/// rising_sawtooth, gcc_full. Throws InputError on unknown names.
Decomposition make_decomposition(const std::string& name,
                                 const std::vector<std::int64_t>& type,
                                 const std::vector<std::int64_t>& lower,
                                 const std::vector<std::int64_t>& upper);

struct CombiningFunction {
    enum class Kind { Sum, Max, CountNonzero, SumOfSquares };
    Kind kind = Kind::Sum;

    // declared and test-validated flags
    bool monotonic() const { return true; }
    bool disjunctive() const { return true; }
    bool unit0() const { return true; }

    /// Applies to errors grouped by value with summed weights.
    Rational apply(const std::map<Rational, Rational>& grouped) const;
    std::string name() const;
};

CombiningFunction make_comb(const std::string& name);

/// Per-item errors of a valuation, grouped by error value with summed weights.
std::map<Rational, Rational> grouped_errors(const WeightedSet& s, const Valuation& v,
                                            ErrorKind err);

/// The decomposition-based violation measure: minimum over auxiliary
/// extensions of comb applied to the grouped item errors. Functional
/// auxiliaries are computed rather than enumerated.
Rational violation(const DecompInstance& d, const CombiningFunction& comb,
                   const std::vector<std::int64_t>& valuation, ErrorKind err = ErrorKind::Binary,
                   std::size_t enumeration_budget = 2'000'000);

struct CoveringResult {
    enum class Status { Covered, NotCovered, Indeterminate };
    Status status = Status::NotCovered;
    std::optional<Substitution> theta;
};

/// Searches substitutions that fix the main variables and map d1 auxiliaries
/// to the same-named d2 auxiliary or to constants of their type, looking for
/// one under which d1's weighted set becomes a sub-weighted set of d2's
/// (types included). Budget exhaustion yields Indeterminate.
CoveringResult covering_check(const DecompInstance& d1, const DecompInstance& d2,
                              std::size_t budget = 200'000);

/// Verifies the three embedding conditions; the per-valuation error
/// domination is checked by exhaustive enumeration over the variable types.
bool semantic_embedding_check(const DecompInstance& d1, const DecompInstance& d2,
                              const SemanticEmbedding& emb, const CombiningFunction& comb,
                              ErrorKind err = ErrorKind::Binary);

/// Keeps the items selected by the filter, uniformly over sizes; the natural
/// embedding is restricted to the kept items.
Decomposition weaken(const Decomposition& d,
                     const std::function<bool(const WeightedItem&)>& keep);

struct MeasureMonotonicity {
    bool non_decreasing = true;
    std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> witness;
};

/// Bounded check that the induced measure never decreases when a value is
/// appended; witnesses the first decrease found.
MeasureMonotonicity measure_non_decreasing(const Decomposition& d, const CombiningFunction& comb,
                                           ErrorKind err, std::size_t max_len);

} // namespace ogc
