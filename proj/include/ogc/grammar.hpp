#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ogc/automata.hpp" // Word, Symbol

namespace ogc {

/// A production in Chomsky normal form: A -> B C, A -> a, or S -> epsilon.
struct CnfRule {
    enum class Kind { Binary, Terminal, Epsilon };

    std::string lhs;
    Kind kind = Kind::Epsilon;
    std::string first;  // B, or the terminal a
    std::string second; // C

    auto operator<=>(const CnfRule&) const = default;
};

/// Context-free grammar in Chomsky normal form. The epsilon production is
/// allowed only for the start symbol, and when it is present the start symbol
/// may not occur on any right-hand side. Immutable after construction.
class CnfGrammar {
public:
    static CnfGrammar create(std::set<std::string> nonterminals, std::set<std::string> terminals,
                             std::string start, std::vector<CnfRule> rules);

    const std::set<std::string>& nonterminals() const { return nonterminals_; }
    const std::set<std::string>& terminals() const { return terminals_; }
    const std::string& start() const { return start_; }
    const std::vector<CnfRule>& rules() const { return rules_; }

    bool has_epsilon_rule() const;

private:
    CnfGrammar() = default;

    std::set<std::string> nonterminals_;
    std::set<std::string> terminals_;
    std::string start_;
    std::vector<CnfRule> rules_;
};

/// Standard cubic CNF membership. Throws InputError on unknown terminals.
bool cyk_accepts(const CnfGrammar& g, const Word& w);

struct PrefixClosureCnf {
    CnfGrammar grammar;
    /// Production count of the intermediate grammar, before unit-rule
    /// elimination and cleanup; at most 3 * |rules| + 2 for CNF input.
    std::size_t raw_rule_count;
};

/// Grammar for the prefixes of L(g): one new nonterminal per original one
/// generating the nonempty prefixes of its derivations, a fresh start with an
/// epsilon rule, then unit-rule elimination (strongly connected groups merged,
/// remaining unit rules expanded with shared bodies) and removal of useless
/// symbols.
PrefixClosureCnf prefix_closure_cnf(const CnfGrammar& g);

} // namespace ogc
