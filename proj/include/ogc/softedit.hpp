#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ogc/automata.hpp"
#include "ogc/rational.hpp"

namespace ogc {

/// Costs of the four edit operations; infinity forbids an operation.
struct EditWeights {
    Rational substitution; // alpha
    Rational insertion;    // beta
    Rational deletion;     // gamma
    Rational transposition; // delta

    Rational min_sub_ins_del() const;
};

struct EditOp {
    enum class Kind { Substitute, Insert, Delete, Transpose };

    Kind kind;
    /// 1-based position at the time the operation is applied. Insert places
    /// the symbol before `pos` (pos <= len + 1); Transpose swaps pos, pos+1.
    std::size_t pos = 0;
    Symbol symbol; // for Substitute / Insert

    bool operator==(const EditOp&) const = default;
};

struct EditScript {
    std::vector<EditOp> ops;

    std::size_t count(EditOp::Kind k) const;
    Rational cost(const EditWeights& w) const;
};

/// Replays the script; throws InputError when a position is out of range.
Word apply_script(const EditScript& s, Word source);

struct EditResult {
    Rational cost;
    EditScript script;
};

/// Weighted edit distance from a word to the prefixes of a regular language.
/// The measure of any prefix of a word of L is 0. Words may contain symbols
/// outside the automaton's alphabet; those can only be deleted or substituted.
class OpenEditMeasure {
public:
    OpenEditMeasure(Nfa language, EditWeights weights);

    /// Exact minimum cost and a witnessing script in normal form
    /// (deletions, transpositions, substitutions, insertions).
    ///
    /// Without transpositions (delta infinite, or never cheaper than a
    /// deletion-insertion pair) this is a shortest path over
    /// (word position, automaton state). Otherwise transpositions may move
    /// letters arbitrarily far, and the search runs over
    /// (set of consumed source positions, automaton state), counting delta
    /// once per crossing of two consumed letters; the transposition-free
    /// value prunes it from above. Throws ResourceError (carrying that upper
    /// bound) when the word is too long for the exact search.
    EditResult measure(const Word& w) const;

    /// Membership in the prefix language; false for out-of-alphabet symbols.
    bool member(const Word& w) const;

    const Nfa& language() const { return language_; }
    const Nfa& prefix_automaton() const { return prefix_; }
    const EditWeights& weights() const { return weights_; }

private:
    Nfa language_;
    Nfa prefix_;
    EditWeights weights_;
};

enum class ContractibilityStatus { Guaranteed, NotGuaranteed };

/// Sufficient conditions only: Guaranteed when min{alpha,beta,gamma} <= delta,
/// or any weight is 0, or the underlying constraint is order-free.
/// NotGuaranteed is not a proof of incontractibility.
ContractibilityStatus contractibility_status(const EditWeights& w, bool order_free);

/// The four reweighted approximations plus their pointwise max. Each stays
/// below the base measure. Lowering a substitution, insertion or deletion
/// cost to the transposition cost gives a non-decreasing measure; zeroing
/// the transposition cost does not always (free reordering can make longer
/// words strictly cheaper to repair; see the regression tests).
struct ApproxMeasures {
    OpenEditMeasure m1; // substitution cost lowered to delta
    OpenEditMeasure m2; // insertion cost lowered to delta
    OpenEditMeasure m3; // deletion cost lowered to delta
    OpenEditMeasure m4; // transposition cost zeroed

    Rational m5(const Word& w) const;
};

ApproxMeasures approx_measures(const OpenEditMeasure& m);

struct MStarResult {
    Rational value;
    enum class Status { Exact, UpperBound };
    Status status = Status::UpperBound;
    Word extension; // a shortest extension achieving the value
};

/// min over extensions b with |b| <= max_ext of measure(w b). The full
/// infimum ranges over all finite extensions, so the result is an upper
/// bound; it is certified Exact when it reaches 0 or the max of the three
/// reweighted non-decreasing measures (each bounds the infimum from below).
MStarResult m_star_bounded(const OpenEditMeasure& m, const Word& w, std::size_t max_ext);

enum class PropernessVerdict { Proper, Improper, Indeterminate };

struct PropernessResult {
    PropernessVerdict verdict = PropernessVerdict::Indeterminate;
    /// A word of the ambient language with measure 0 outside the prefix
    /// language, when Improper.
    std::optional<Word> witness;
    std::size_t tested_len = 0;
    std::string condition; // which weight case was dispatched
};

/// Dispatches on the zero-weight pattern. With all weights positive the
/// measure is proper unconditionally; the remaining cases compare the
/// ambient language against the prefix language by enumeration up to
/// max_len, so a passing check is reported Indeterminate rather than Proper.
PropernessResult properness_status(const OpenEditMeasure& m, const Nfa& ambient,
                                   std::size_t max_len);

/// Re-derives a minimum-cost normal-form script with the same source and
/// target: operations grouped as deletions, transpositions, substitutions,
/// insertions; no letter substituted twice; cost never above the input
/// script's. When a deletion-insertion pair is no costlier than the
/// transpositions it replaces, letters moved more than one step are rewritten
/// to such pairs, so no letter is edited more than once.
EditScript normalize_edit_script(const EditScript& s, const Word& source, const EditWeights& w);

} // namespace ogc
