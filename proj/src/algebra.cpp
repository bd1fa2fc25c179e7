#include "ogc/algebra.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "ogc/errors.hpp"

namespace ogc {

namespace {

std::int64_t as_int(const Value& v) {
    if (const auto* p = std::get_if<std::int64_t>(&v)) return *p;
    throw InputError("expected an integer value, got " + value_str(v));
}

const std::string& as_symbol(const Value& v) {
    if (const auto* p = std::get_if<std::string>(&v)) return *p;
    throw InputError("expected a symbol value, got " + value_str(v));
}

PairVal as_pair(const Value& v) {
    if (const auto* p = std::get_if<PairVal>(&v)) return *p;
    throw InputError("expected a pair value, got " + value_str(v));
}

std::vector<std::int64_t> as_ints(const Tuple& w) {
    std::vector<std::int64_t> out;
    out.reserve(w.size());
    for (const Value& v : w) out.push_back(as_int(v));
    return out;
}

std::size_t require_arity(const ConstraintDef& c) {
    if (!c.arity) throw InputError("constraint " + c.name + " has no fixed arity");
    return *c.arity;
}

} // namespace

std::string value_str(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    const PairVal p = std::get<PairVal>(v);
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string tuple_str(const Tuple& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += ",";
        out += value_str(t[i]);
    }
    return out + "]";
}

bool eval(const ConstraintDef& c, const Tuple& w) {
    for (const Value& v : w) {
        if (std::find(c.type.begin(), c.type.end(), v) == c.type.end())
            throw InputError("value " + value_str(v) + " outside the static type of " + c.name);
    }
    return c.predicate(w);
}

// ---------------------------------------------------------------- catalog

ConstraintDef alldifferent(std::vector<Value> type) {
    return {"alldifferent",
            [](const Tuple& w) {
                for (std::size_t i = 0; i < w.size(); ++i)
                    for (std::size_t j = i + 1; j < w.size(); ++j)
                        if (w[i] == w[j]) return false;
                return true;
            },
            std::move(type), std::nullopt, true};
}

ConstraintDef gcc(std::vector<std::int64_t> values, std::vector<std::int64_t> lower,
                  std::vector<std::int64_t> upper, std::vector<Value> type) {
    if (values.size() != lower.size() || values.size() != upper.size())
        throw InputError("gcc: values, lower and upper must align");
    return {"gcc",
            [values, lower, upper](const Tuple& w) {
                const auto ints = as_ints(w);
                for (std::size_t k = 0; k < values.size(); ++k) {
                    const auto occ = std::count(ints.begin(), ints.end(), values[k]);
                    if (occ < lower[k] || occ > upper[k]) return false;
                }
                return true;
            },
            std::move(type), std::nullopt, true};
}

ConstraintDef weak_gcc(std::vector<std::int64_t> values, std::vector<std::int64_t> upper,
                       std::vector<Value> type) {
    ConstraintDef c = gcc(values, std::vector<std::int64_t>(values.size(), 0), std::move(upper),
                          std::move(type));
    c.name = "weak_gcc";
    return c;
}

ConstraintDef nvalue_eq(std::int64_t n, std::vector<Value> type) {
    return {"nvalue_eq",
            [n](const Tuple& w) {
                return static_cast<std::int64_t>(std::set<Value>(w.begin(), w.end()).size()) == n;
            },
            std::move(type), std::nullopt, true};
}

ConstraintDef nvalue_le(std::int64_t n, std::vector<Value> type) {
    return {"nvalue_le",
            [n](const Tuple& w) {
                return static_cast<std::int64_t>(std::set<Value>(w.begin(), w.end()).size()) <= n;
            },
            std::move(type), std::nullopt, true};
}

ConstraintDef sequence(std::int64_t l, std::int64_t u, std::size_t k,
                       std::vector<std::int64_t> among_values, std::vector<Value> type) {
    return {"sequence",
            [l, u, k, among_values](const Tuple& w) {
                const auto ints = as_ints(w);
                if (ints.size() < k) return true;
                for (std::size_t i = 0; i + k <= ints.size(); ++i) {
                    std::int64_t occ = 0;
                    for (std::size_t j = i; j < i + k; ++j)
                        if (std::find(among_values.begin(), among_values.end(), ints[j]) !=
                            among_values.end())
                            ++occ;
                    if (occ < l || occ > u) return false;
                }
                return true;
            },
            std::move(type), std::nullopt, false};
}

ConstraintDef sliding_sum(std::int64_t l, std::int64_t u, std::size_t k, std::vector<Value> type) {
    return {"sliding_sum",
            [l, u, k](const Tuple& w) {
                const auto ints = as_ints(w);
                if (ints.size() < k) return true;
                for (std::size_t i = 0; i + k <= ints.size(); ++i) {
                    std::int64_t sum = 0;
                    for (std::size_t j = i; j < i + k; ++j) sum += ints[j];
                    if (sum < l || sum > u) return false;
                }
                return true;
            },
            std::move(type), std::nullopt, false};
}

ConstraintDef among(std::int64_t l, std::int64_t u, std::vector<std::int64_t> values,
                    std::vector<Value> type) {
    return {"among",
            [l, u, values](const Tuple& w) {
                const auto ints = as_ints(w);
                std::int64_t occ = 0;
                for (std::int64_t x : ints)
                    if (std::find(values.begin(), values.end(), x) != values.end()) ++occ;
                return occ >= l && occ <= u;
            },
            std::move(type), std::nullopt, true};
}

namespace {
ConstraintDef sum_rel(std::string name, std::int64_t z, std::vector<Value> type,
                      std::function<bool(std::int64_t, std::int64_t)> rel) {
    return {std::move(name),
            [z, rel](const Tuple& w) {
                std::int64_t sum = 0;
                for (const Value& v : w) sum += as_int(v);
                return rel(sum, z);
            },
            std::move(type), std::nullopt, true};
}
} // namespace

ConstraintDef sum_eq(std::int64_t z, std::vector<Value> type) {
    return sum_rel("sum_eq", z, std::move(type), [](auto s, auto z2) { return s == z2; });
}
ConstraintDef sum_le(std::int64_t z, std::vector<Value> type) {
    return sum_rel("sum_le", z, std::move(type), [](auto s, auto z2) { return s <= z2; });
}
ConstraintDef sum_ge(std::int64_t z, std::vector<Value> type) {
    return sum_rel("sum_ge", z, std::move(type), [](auto s, auto z2) { return s >= z2; });
}

namespace {
// -1, 0, 1 for the first component sequence against the second.
int lex_compare(const Tuple& w) {
    for (const Value& v : w) {
        const PairVal p = as_pair(v);
        if (p.first < p.second) return -1;
        if (p.first > p.second) return 1;
    }
    return 0;
}
} // namespace

ConstraintDef lex_leq(std::vector<Value> pair_type) {
    return {"lex_leq", [](const Tuple& w) { return lex_compare(w) <= 0; }, std::move(pair_type),
            std::nullopt, false};
}

ConstraintDef lex_lt(std::vector<Value> pair_type) {
    return {"lex_lt", [](const Tuple& w) { return lex_compare(w) < 0; }, std::move(pair_type),
            std::nullopt, false};
}

ConstraintDef precedence(std::int64_t s, std::int64_t t, std::vector<Value> type) {
    return {"precedence",
            [s, t](const Tuple& w) {
                const auto ints = as_ints(w);
                for (std::size_t i = 0; i < ints.size(); ++i) {
                    if (ints[i] != t) continue;
                    // first occurrence of t must be preceded by an s
                    for (std::size_t j = 0; j < i; ++j)
                        if (ints[j] == s) return true;
                    return false;
                }
                return true;
            },
            std::move(type), std::nullopt, false};
}

ConstraintDef contiguity() {
    return {"contiguity",
            [](const Tuple& w) {
                const auto ints = as_ints(w);
                bool seen_block_end = false;
                bool in_block = false;
                for (std::int64_t x : ints) {
                    if (x != 0 && x != 1) throw InputError("contiguity expects 0/1 values");
                    if (x == 1) {
                        if (seen_block_end) return false;
                        in_block = true;
                    } else if (in_block) {
                        seen_block_end = true;
                        in_block = false;
                    }
                }
                return true;
            },
            {Value(std::int64_t{0}), Value(std::int64_t{1})},
            std::nullopt, false};
}

namespace {
std::int64_t peak_count(const Tuple& w) {
    const auto ints = as_ints(w);
    std::int64_t peaks = 0;
    for (std::size_t i = 1; i + 1 < ints.size(); ++i)
        if (ints[i - 1] < ints[i] && ints[i] > ints[i + 1]) ++peaks;
    return peaks;
}
} // namespace

ConstraintDef peak_eq(std::int64_t n, std::vector<Value> type) {
    return {"peak_eq", [n](const Tuple& w) { return peak_count(w) == n; }, std::move(type),
            std::nullopt, false};
}

ConstraintDef peak_le(std::int64_t n, std::vector<Value> type) {
    return {"peak_le", [n](const Tuple& w) { return peak_count(w) <= n; }, std::move(type),
            std::nullopt, false};
}

ConstraintDef nopeak(std::vector<Value> type) {
    ConstraintDef c = peak_le(0, std::move(type));
    c.name = "nopeak";
    return c;
}

ConstraintDef average_eq(const Rational& mean, std::vector<Value> type) {
    return {"average_eq",
            [mean](const Tuple& w) {
                if (w.empty()) return false;
                std::int64_t sum = 0;
                for (const Value& v : w) sum += as_int(v);
                return Rational(sum) == mean * Rational(static_cast<std::int64_t>(w.size()));
            },
            std::move(type), std::nullopt, true};
}

ConstraintDef constant_true(std::vector<Value> type, std::string name) {
    return {std::move(name), [](const Tuple&) { return true; }, std::move(type), std::nullopt,
            true};
}

ConstraintDef regular_constraint(Nfa a) {
    std::vector<Value> type;
    for (const Symbol& s : a.alphabet()) type.emplace_back(s);
    auto shared = std::make_shared<Nfa>(std::move(a));
    return {"regular",
            [shared](const Tuple& w) {
                Word word;
                word.reserve(w.size());
                for (const Value& v : w) word.push_back(as_symbol(v));
                return accepts(*shared, word);
            },
            std::move(type), std::nullopt, false};
}

ConstraintDef cfg_constraint(CnfGrammar g) {
    std::vector<Value> type;
    for (const std::string& t : g.terminals()) type.emplace_back(t);
    auto shared = std::make_shared<CnfGrammar>(std::move(g));
    return {"cfg",
            [shared](const Tuple& w) {
                Word word;
                word.reserve(w.size());
                for (const Value& v : w) word.push_back(as_symbol(v));
                return cyk_accepts(*shared, word);
            },
            std::move(type), std::nullopt, false};
}

ConstraintDef diseq2(std::vector<Value> type) {
    return {"diseq2",
            [](const Tuple& w) { return w.size() == 2 && !(w[0] == w[1]); },
            std::move(type), 2, true};
}

ConstraintDef min_distance2(std::int64_t p, std::vector<Value> type) {
    return {"min_distance2",
            [p](const Tuple& w) {
                if (w.size() != 2) return false;
                const std::int64_t d = as_int(w[0]) - as_int(w[1]);
                return (d < 0 ? -d : d) >= p;
            },
            std::move(type), 2, true};
}

ConstraintDef window_sum_between(std::int64_t l, std::int64_t u, std::size_t k,
                                 std::vector<Value> type) {
    return {"window_sum_between",
            [l, u, k](const Tuple& w) {
                if (w.size() != k) return false;
                std::int64_t sum = 0;
                for (const Value& v : w) sum += as_int(v);
                return sum >= l && sum <= u;
            },
            std::move(type), k, false};
}

ConstraintDef window_count_between(std::int64_t l, std::int64_t u, std::size_t k,
                                   std::vector<std::int64_t> among_values,
                                   std::vector<Value> type) {
    return {"window_count_between",
            [l, u, k, among_values](const Tuple& w) {
                if (w.size() != k) return false;
                std::int64_t occ = 0;
                for (const Value& v : w)
                    if (std::find(among_values.begin(), among_values.end(), as_int(v)) !=
                        among_values.end())
                        ++occ;
                return occ >= l && occ <= u;
            },
            std::move(type), k, false};
}

// ------------------------------------------------------- meta-constraints

bool slide_eval(std::size_t p, std::size_t j, const ConstraintDef& inner, const Tuple& w) {
    if (p < 1 || j < 1) throw InputError("slide needs position >= 1 and stride >= 1");
    const std::size_t k = require_arity(inner);
    const std::size_t n = w.size();
    // windows at 1-based positions p + i*j while p + i*j + k - 1 <= n
    for (std::size_t startpos = p; startpos + k - 1 <= n; startpos += j) {
        Tuple window(w.begin() + static_cast<std::ptrdiff_t>(startpos - 1),
                     w.begin() + static_cast<std::ptrdiff_t>(startpos - 1 + k));
        if (!inner.predicate(window)) return false;
    }
    return true;
}

namespace {
bool splash_rec(const ConstraintDef& inner, const Tuple& w, std::size_t k, std::size_t from,
                Tuple& chosen) {
    if (chosen.size() == k) return inner.predicate(chosen);
    for (std::size_t i = from; i < w.size(); ++i) {
        chosen.push_back(w[i]);
        const bool ok = splash_rec(inner, w, k, i + 1, chosen);
        chosen.pop_back();
        if (!ok) return false;
    }
    return true;
}
} // namespace

bool splash_eval(const ConstraintDef& inner, const Tuple& w) {
    const std::size_t k = require_arity(inner);
    if (w.size() < k) return true;
    Tuple chosen;
    return splash_rec(inner, w, k, 0, chosen);
}

ConstraintDef slide_constraint(std::size_t p, std::size_t j, ConstraintDef inner,
                               std::vector<Value> type) {
    auto shared = std::make_shared<ConstraintDef>(std::move(inner));
    return {"slide(" + shared->name + ")",
            [p, j, shared](const Tuple& w) { return slide_eval(p, j, *shared, w); },
            std::move(type), std::nullopt, false};
}

ConstraintDef splash_constraint(ConstraintDef inner, std::vector<Value> type) {
    const bool of = inner.order_free;
    auto shared = std::make_shared<ConstraintDef>(std::move(inner));
    return {"splash(" + shared->name + ")",
            [shared](const Tuple& w) { return splash_eval(*shared, w); }, std::move(type),
            std::nullopt, of};
}

// --------------------------------------------------------- logic operators

ConstraintDef combine(CombineOp op, ConstraintDef a, ConstraintDef b) {
    if (op != CombineOp::And && op != CombineOp::Or)
        throw InputError("combine over two constraints supports only and/or");
    if (a.type != b.type) throw InputError("combined constraints must share a static type");
    const bool of = a.order_free && b.order_free;
    auto pa = std::make_shared<ConstraintDef>(std::move(a));
    auto pb = std::make_shared<ConstraintDef>(std::move(b));
    const bool conj = op == CombineOp::And;
    return {(conj ? "and(" : "or(") + pa->name + "," + pb->name + ")",
            [pa, pb, conj](const Tuple& w) {
                return conj ? (pa->predicate(w) && pb->predicate(w))
                            : (pa->predicate(w) || pb->predicate(w));
            },
            pa->type, std::nullopt, of};
}

ConstraintDef combine_at(CombineOp op, ConstraintDef c, std::size_t position) {
    if (op != CombineOp::ExistsAt && op != CombineOp::ForallAt)
        throw InputError("combine_at supports only exists_at/forall_at");
    if (position < 1) throw InputError("positions are 1-based");
    if (c.type.empty()) throw InputError("cannot quantify over an empty static type");
    const bool exists = op == CombineOp::ExistsAt;
    auto pc = std::make_shared<ConstraintDef>(std::move(c));
    return {(exists ? "exists_at(" : "forall_at(") + pc->name + "," + std::to_string(position) +
                ")",
            [pc, position, exists](const Tuple& w) {
                if (position > w.size()) return pc->predicate(w);
                Tuple probe = w;
                for (const Value& v : pc->type) {
                    probe[position - 1] = v;
                    const bool ok = pc->predicate(probe);
                    if (exists && ok) return true;
                    if (!exists && !ok) return false;
                }
                return !exists;
            },
            pc->type, std::nullopt, false};
}

// ----------------------------------------------------------- classification

namespace {
void for_each_word(const std::vector<Value>& alphabet, std::size_t max_len, Tuple& w,
                   const std::function<void(const Tuple&)>& visit) {
    visit(w);
    if (w.size() >= max_len) return;
    for (const Value& v : alphabet) {
        w.push_back(v);
        for_each_word(alphabet, max_len, w, visit);
        w.pop_back();
    }
}
} // namespace

AccumulationVerdict classify_accumulation(const AccumulationSpec& s,
                                          const std::vector<Value>& alphabet,
                                          std::size_t max_len) {
    bool non_decreasing = true, non_increasing = true;
    std::optional<std::pair<Tuple, Tuple>> decrease_witness, increase_witness;

    Tuple w;
    for_each_word(alphabet, max_len > 0 ? max_len - 1 : 0, w, [&](const Tuple& word) {
        const Rational here = s.f(word);
        for (const Value& v : alphabet) {
            Tuple ext = word;
            ext.push_back(v);
            const Rational there = s.f(ext);
            if (there < here && !decrease_witness) {
                non_decreasing = false;
                decrease_witness = {word, ext};
            }
            if (here < there && !increase_witness) {
                non_increasing = false;
                increase_witness = {word, ext};
            }
        }
    });

    AccumulationVerdict v;
    v.tested_len = max_len;
    if (non_decreasing && non_increasing) v.monotonicity = Monotonicity::Constant;
    else if (non_decreasing) v.monotonicity = Monotonicity::NonDecreasing;
    else if (non_increasing) v.monotonicity = Monotonicity::NonIncreasing;
    else v.monotonicity = Monotonicity::None;

    switch (s.relation) {
    case AccumulationSpec::Relation::LessEq:
        v.contractible = non_decreasing;
        if (!v.contractible) v.witness = decrease_witness;
        break;
    case AccumulationSpec::Relation::GreaterEq:
        v.contractible = non_increasing;
        if (!v.contractible) v.witness = increase_witness;
        break;
    case AccumulationSpec::Relation::Equal:
        v.contractible = non_decreasing && non_increasing;
        if (!v.contractible) v.witness = decrease_witness ? decrease_witness : increase_witness;
        break;
    }
    return v;
}

ClosureVerdict contractibility_oracle(const ConstraintDef& c, const std::vector<Value>& alphabet,
                                      std::size_t max_len, ClosureDirection direction) {
    ClosureVerdict verdict;
    verdict.tested_len = max_len;
    verdict.holds = true;

    auto reductions = [&](const Tuple& word) {
        std::vector<Tuple> out;
        if (word.empty()) return out;
        switch (direction) {
        case ClosureDirection::Prefix:
            out.emplace_back(word.begin(), word.end() - 1);
            break;
        case ClosureDirection::Suffix:
            out.emplace_back(word.begin() + 1, word.end());
            break;
        case ClosureDirection::Subword:
            out.emplace_back(word.begin(), word.end() - 1);
            out.emplace_back(word.begin() + 1, word.end());
            break;
        case ClosureDirection::Subsequence:
            for (std::size_t i = 0; i < word.size(); ++i) {
                Tuple r = word;
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
                out.push_back(std::move(r));
            }
            break;
        }
        return out;
    };

    Tuple w;
    for_each_word(alphabet, max_len, w, [&](const Tuple& word) {
        if (!verdict.holds || word.empty()) return;
        if (!c.predicate(word)) return;
        for (const Tuple& r : reductions(word)) {
            if (!c.predicate(r)) {
                verdict.holds = false;
                verdict.witness = {word, r};
                return;
            }
        }
    });
    return verdict;
}

} // namespace ogc
