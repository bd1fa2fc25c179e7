#pragma once

#include <string>

#include <json.hpp>

#include "ogc/algebra.hpp"
#include "ogc/automata.hpp"
#include "ogc/engine.hpp"
#include "ogc/grammar.hpp"
#include "ogc/softdecomp.hpp"

namespace ogc {

// File formats. Malformed documents raise InputError.

Nfa nfa_from_json(const nlohmann::json& j);
nlohmann::json nfa_to_json(const Nfa& a);
Nfa load_nfa(const std::string& path);

CnfGrammar grammar_from_json(const nlohmann::json& j);
nlohmann::json grammar_to_json(const CnfGrammar& g);
CnfGrammar load_grammar(const std::string& path);

Value value_from_json(const nlohmann::json& j);
nlohmann::json value_to_json(const Value& v);

/// Builds a catalog constraint from a spec object such as
/// {"kind":"gcc","values":[...],"lower":[...],"upper":[...],"type":[...]} or
/// {"kind":"regular","automaton":"file.json"}. Relative paths resolve
/// against base_dir.
ConstraintDef constraint_from_json(const nlohmann::json& j, const std::string& base_dir);

/// The same spec, paired with its registered open-phase approximation.
SessionConstraint session_from_json(const nlohmann::json& j, const std::string& base_dir);

/// Runs a scenario {"constraint": ..., "events": [...]} and returns the
/// trace: one {"phase", "domains"} object per event.
nlohmann::json run_scenario(const nlohmann::json& scenario, const std::string& base_dir);

Decomposition decomposition_from_json(const nlohmann::json& j);

} // namespace ogc
