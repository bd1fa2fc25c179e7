#include "ogc/softdecomp.hpp"

#include <algorithm>
#include <set>

#include "ogc/errors.hpp"

namespace ogc {

std::string term_str(const Term& t) {
    if (const auto* v = std::get_if<std::string>(&t)) return *v;
    return std::to_string(std::get<std::int64_t>(t));
}

namespace {

std::int64_t term_value(const Term& t, const Valuation& v) {
    if (const auto* c = std::get_if<std::int64_t>(&t)) return *c;
    const auto& name = std::get<std::string>(t);
    auto it = v.find(name);
    if (it == v.end()) throw InputError("unvalued variable: " + name);
    return it->second;
}

bool eval_pred(const std::string& name, const std::vector<std::int64_t>& a) {
    if (name == "or_def") return a.at(0) == ((a.at(1) != 0 || a.at(2) != 0) ? 1 : 0);
    if (name == "end_def")
        return a.at(0) == ((a.at(1) != 0 || (a.at(2) != 0 && a.at(3) == 0)) ? 1 : 0);
    if (name == "not_after_end") return !(a.at(0) != 0 && a.at(1) != 0);
    throw InputError("unknown elementary predicate: " + name);
}

} // namespace

Elementary Elementary::canonicalized() const {
    Elementary c = *this;
    if (kind == Kind::LinearLe || kind == Kind::LinearEq || kind == Kind::LinearNeq) {
        std::map<std::string, std::int64_t> by_var;
        std::int64_t rhs = c.constant;
        for (const auto& [coeff, term] : c.linear) {
            if (const auto* k = std::get_if<std::int64_t>(&term)) rhs -= coeff * *k;
            else by_var[std::get<std::string>(term)] += coeff;
        }
        c.linear.clear();
        for (const auto& [var, coeff] : by_var)
            if (coeff != 0) c.linear.push_back({coeff, Term(var)});
        c.constant = rhs;
        // symmetric relations: fix the sign of the leading coefficient
        if ((kind == Kind::LinearEq || kind == Kind::LinearNeq) && !c.linear.empty() &&
            c.linear.front().first < 0) {
            for (auto& [coeff, term] : c.linear) coeff = -coeff;
            c.constant = -c.constant;
        }
    }
    return c;
}

std::string Elementary::label() const {
    const Elementary c = canonicalized();
    std::string out;
    switch (c.kind) {
    case Kind::LinearLe: out = "le:"; break;
    case Kind::LinearEq: out = "eq:"; break;
    case Kind::LinearNeq: out = "ne:"; break;
    case Kind::Indicator:
        return "ind:" + term_str(c.ind_a) + "<->" + term_str(c.ind_x) + "in[" +
               std::to_string(c.lo) + "," + std::to_string(c.hi) + "]";
    case Kind::Pred: {
        std::string s = c.pred_name + "(";
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (i) s += ",";
            s += term_str(c.args[i]);
        }
        return s + ")";
    }
    }
    for (const auto& [coeff, term] : c.linear)
        out += (coeff >= 0 ? "+" : "") + std::to_string(coeff) + "*" + term_str(term);
    out += "|" + std::to_string(c.constant);
    return out;
}

std::vector<std::string> Elementary::variables() const {
    std::vector<std::string> out;
    auto push = [&out](const Term& t) {
        if (const auto* v = std::get_if<std::string>(&t))
            if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
    };
    for (const auto& [coeff, term] : linear) push(term);
    if (kind == Kind::Indicator) {
        push(ind_a);
        push(ind_x);
    }
    for (const Term& t : args) push(t);
    return out;
}

bool Elementary::satisfied(const Valuation& v) const {
    switch (kind) {
    case Kind::LinearLe:
    case Kind::LinearEq:
    case Kind::LinearNeq: {
        std::int64_t sum = 0;
        for (const auto& [coeff, term] : linear) sum += coeff * term_value(term, v);
        if (kind == Kind::LinearLe) return sum <= constant;
        if (kind == Kind::LinearEq) return sum == constant;
        return sum != constant;
    }
    case Kind::Indicator: {
        const std::int64_t a = term_value(ind_a, v);
        const std::int64_t x = term_value(ind_x, v);
        return (a == 1) == (x >= lo && x <= hi);
    }
    case Kind::Pred: {
        std::vector<std::int64_t> vals;
        vals.reserve(args.size());
        for (const Term& t : args) vals.push_back(term_value(t, v));
        return eval_pred(pred_name, vals);
    }
    }
    return false;
}

Elementary make_le(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c) {
    Elementary e;
    e.kind = Elementary::Kind::LinearLe;
    e.linear = std::move(linear);
    e.constant = c;
    return e.canonicalized();
}

Elementary make_eq(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c) {
    Elementary e;
    e.kind = Elementary::Kind::LinearEq;
    e.linear = std::move(linear);
    e.constant = c;
    return e.canonicalized();
}

Elementary make_neq(std::vector<std::pair<std::int64_t, Term>> linear, std::int64_t c) {
    Elementary e;
    e.kind = Elementary::Kind::LinearNeq;
    e.linear = std::move(linear);
    e.constant = c;
    return e.canonicalized();
}

Elementary make_indicator(Term a, Term x, std::int64_t lo, std::int64_t hi) {
    Elementary e;
    e.kind = Elementary::Kind::Indicator;
    e.ind_a = std::move(a);
    e.ind_x = std::move(x);
    e.lo = lo;
    e.hi = hi;
    return e;
}

Elementary make_pred(std::string name, std::vector<Term> args) {
    Elementary e;
    e.kind = Elementary::Kind::Pred;
    e.pred_name = std::move(name);
    e.args = std::move(args);
    return e;
}

Rational item_error(const Elementary& c, const Valuation& v, ErrorKind err) {
    if (err == ErrorKind::Slack &&
        (c.kind == Elementary::Kind::LinearLe || c.kind == Elementary::Kind::LinearEq)) {
        std::int64_t sum = 0;
        for (const auto& [coeff, term] : c.linear) sum += coeff * term_value(term, v);
        const std::int64_t over = sum - c.constant;
        if (c.kind == Elementary::Kind::LinearLe) return Rational(over > 0 ? over : 0);
        return Rational(over < 0 ? -over : over);
    }
    return c.satisfied(v) ? Rational(0) : Rational(1);
}

WeightedSet::WeightedSet(std::vector<WeightedItem> items) {
    for (WeightedItem& it : items) add(std::move(it));
}

void WeightedSet::add(WeightedItem item) {
    item.item = item.item.canonicalized();
    const std::string key = item.item.label();
    auto it = index_.find(key);
    if (it != index_.end()) {
        items_[it->second].weight += item.weight;
        return;
    }
    index_[key] = items_.size();
    items_.push_back(std::move(item));
}

const WeightedItem* WeightedSet::find(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? nullptr : &items_[it->second];
}

bool WeightedSet::proper() const {
    return std::all_of(items_.begin(), items_.end(),
                       [](const WeightedItem& it) { return Rational(0) < it.weight; });
}

WeightedSet WeightedSet::unite(const WeightedSet& other) const {
    WeightedSet out = *this;
    for (const WeightedItem& it : other.items_) out.add(it);
    return out;
}

bool WeightedSet::sub_weighted_set_of(const WeightedSet& other) const {
    for (const WeightedItem& it : items_) {
        const WeightedItem* o = other.find(it.item.label());
        if (!o || o->weight < it.weight) return false;
    }
    return true;
}

Term Substitution::apply(const Term& t) const {
    if (const auto* v = std::get_if<std::string>(&t)) {
        auto it = map.find(*v);
        if (it != map.end()) return it->second;
    }
    return t;
}

Elementary Substitution::apply(const Elementary& c) const {
    Elementary out = c;
    for (auto& [coeff, term] : out.linear) term = apply(term);
    out.ind_a = apply(out.ind_a);
    out.ind_x = apply(out.ind_x);
    for (Term& t : out.args) t = apply(t);
    return out.canonicalized();
}

WeightedSet Substitution::apply(const WeightedSet& s) const {
    WeightedSet out;
    for (const WeightedItem& it : s.items()) {
        WeightedItem mapped = it;
        mapped.item = apply(it.item);
        out.add(std::move(mapped));
    }
    return out;
}

const VarSpec* DecompInstance::var(const std::string& name) const {
    for (const VarSpec& v : main_vars)
        if (v.name == name) return &v;
    for (const VarSpec& v : aux_vars)
        if (v.name == name) return &v;
    return nullptr;
}

// ------------------------------------------------------------ fixtures

namespace {

std::string xvar(std::size_t i) { return "X" + std::to_string(i); }

std::vector<VarSpec> main_vars(std::size_t n, const std::vector<std::int64_t>& type) {
    std::vector<VarSpec> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back({xvar(i), type});
    return out;
}

SemanticEmbedding identity_embedding(const DecompInstance& inst) {
    SemanticEmbedding emb;
    for (const WeightedItem& it : inst.items.items())
        emb.phi[it.item.label()] = {it.item.label()};
    return emb;
}

// matches items across sizes by (tag, params)
std::map<std::pair<std::string, std::string>, std::string> label_by_tag(
    const DecompInstance& inst) {
    std::map<std::pair<std::string, std::string>, std::string> out;
    for (const WeightedItem& it : inst.items.items()) out[{it.tag, it.params}] = it.item.label();
    return out;
}

} // namespace

Decomposition alldiff_diseq_decomposition(std::vector<std::int64_t> type) {
    Decomposition d;
    d.name = "alldiff_diseq";
    d.value_type = type;
    d.instantiate = [type](std::size_t n) {
        DecompInstance inst;
        inst.main_vars = main_vars(n, type);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                inst.items.add({make_neq({{1, Term(xvar(i))}, {-1, Term(xvar(j))}}, 0), Rational(1),
                                "diseq", std::to_string(i) + "," + std::to_string(j)});
        return inst;
    };
    d.reference_predicate = [](const std::vector<std::int64_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j]) return false;
        return true;
    };
    auto instantiate = d.instantiate;
    d.natural_embedding = [instantiate](std::size_t n) {
        return identity_embedding(instantiate(n));
    };
    return d;
}

Decomposition alldiff_bounds_decomposition(std::int64_t dmax) {
    std::vector<std::int64_t> type;
    for (std::int64_t v = 1; v <= dmax; ++v) type.push_back(v);
    Decomposition d;
    d.name = "alldiff_bounds";
    d.value_type = type;
    d.instantiate = [type, dmax](std::size_t n) {
        DecompInstance inst;
        inst.main_vars = main_vars(n, type);
        for (std::int64_t l = 1; l <= dmax; ++l) {
            for (std::int64_t u = l; u <= dmax; ++u) {
                std::vector<std::pair<std::int64_t, Term>> sum;
                for (std::size_t i = 1; i <= n; ++i) {
                    const std::string a =
                        "A_" + std::to_string(i) + "_" + std::to_string(l) + "_" + std::to_string(u);
                    inst.aux_vars.push_back({a, {0, 1}});
                    inst.items.add({make_indicator(Term(a), Term(xvar(i)), l, u), Rational(1),
                                    "ind",
                                    std::to_string(i) + "," + std::to_string(l) + "," +
                                        std::to_string(u)});
                    sum.push_back({1, Term(a)});
                }
                if (n > 0)
                    inst.items.add({make_le(std::move(sum), u - l + 1), Rational(1), "card_upper",
                                    std::to_string(l) + "," + std::to_string(u)});
            }
        }
        inst.functional_aux = true;
        inst.determine_aux = [n, dmax](const Valuation& v) {
            Valuation out = v;
            for (std::size_t i = 1; i <= n; ++i) {
                const std::int64_t x = v.at(xvar(i));
                for (std::int64_t l = 1; l <= dmax; ++l)
                    for (std::int64_t u = l; u <= dmax; ++u)
                        out["A_" + std::to_string(i) + "_" + std::to_string(l) + "_" +
                            std::to_string(u)] = (x >= l && x <= u) ? 1 : 0;
            }
            return out;
        };
        return inst;
    };
    d.reference_predicate = [](const std::vector<std::int64_t>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j]) return false;
        return true;
    };
    auto instantiate = d.instantiate;
    d.natural_embedding = [instantiate](std::size_t n) {
        const DecompInstance d1 = instantiate(n);
        const DecompInstance d2 = instantiate(n + 1);
        const auto map2 = label_by_tag(d2);
        SemanticEmbedding emb;
        for (const WeightedItem& it : d1.items.items()) {
            if (it.tag == "card_upper")
                emb.phi[it.item.label()] = {map2.at({it.tag, it.params})};
            else
                emb.phi[it.item.label()] = {it.item.label()};
        }
        return emb;
    };
    return d;
}

Decomposition contiguity_chain_decomposition() {
    const std::vector<std::int64_t> type{0, 1};
    Decomposition d;
    d.name = "contiguity_slide";
    d.value_type = type;
    d.instantiate = [type](std::size_t n) {
        DecompInstance inst;
        inst.main_vars = main_vars(n, type);
        auto lvar = [](std::size_t i) { return "L" + std::to_string(i); };
        auto evar = [](std::size_t i) { return "E" + std::to_string(i); };
        for (std::size_t i = 1; i <= n; ++i) {
            const std::vector<std::int64_t> base{0};
            inst.aux_vars.push_back({lvar(i), i == 1 ? base : type});
            inst.aux_vars.push_back({evar(i), i == 1 ? base : type});
        }
        for (std::size_t i = 1; i + 1 <= n; ++i) {
            inst.items.add({make_pred("or_def", {Term(lvar(i + 1)), Term(lvar(i)), Term(xvar(i))}),
                            Rational(1), "l_chain", std::to_string(i)});
            inst.items.add({make_pred("end_def", {Term(evar(i + 1)), Term(evar(i)),
                                                  Term(lvar(i)), Term(xvar(i))}),
                            Rational(1), "e_chain", std::to_string(i)});
        }
        for (std::size_t i = 1; i <= n; ++i)
            inst.items.add({make_pred("not_after_end", {Term(evar(i)), Term(xvar(i))}),
                            Rational(1), "no_restart", std::to_string(i)});
        inst.functional_aux = true;
        inst.determine_aux = [n](const Valuation& v) {
            Valuation out = v;
            std::int64_t l = 0, e = 0;
            for (std::size_t i = 1; i <= n; ++i) {
                out["L" + std::to_string(i)] = l;
                out["E" + std::to_string(i)] = e;
                const std::int64_t x = v.at(xvar(i));
                if (e == 0 && l == 1 && x == 0) e = 1;
                if (x == 1) l = 1;
            }
            return out;
        };
        return inst;
    };
    d.reference_predicate = [](const std::vector<std::int64_t>& v) {
        bool block_over = false, in_block = false;
        for (std::int64_t x : v) {
            if (x == 1) {
                if (block_over) return false;
                in_block = true;
            } else if (in_block) {
                block_over = true;
                in_block = false;
            }
        }
        return true;
    };
    auto instantiate = d.instantiate;
    d.natural_embedding = [instantiate](std::size_t n) {
        return identity_embedding(instantiate(n));
    };
    return d;
}

Decomposition rising_sawtooth_decomposition(std::vector<std::int64_t> type) {
    Decomposition d;
    d.name = "rising_sawtooth";
    d.value_type = type;
    auto ge_item = [](std::size_t hi, std::size_t lo) {
        // X_hi >= X_lo encoded as X_lo - X_hi <= 0
        return WeightedItem{make_le({{1, Term(xvar(lo))}, {-1, Term(xvar(hi))}}, 0), Rational(1),
                            "ge", std::to_string(hi) + "," + std::to_string(lo)};
    };
    d.instantiate = [type, ge_item](std::size_t n) {
        DecompInstance inst;
        inst.main_vars = main_vars(n, type);
        // recursion over even prefixes; an odd tail adds one item that the
        // next even length replaces by two
        const std::size_t even_n = n - (n % 2);
        for (std::size_t m = 2; m <= even_n; m += 2) {
            if (m == 2) inst.items.add(ge_item(1, 2));
            else {
                inst.items.add(ge_item(m - 1, m));
                inst.items.add(ge_item(m, m - 2));
            }
        }
        if (n % 2 == 1 && n >= 3) inst.items.add(ge_item(n, n - 1));
        return inst;
    };
    d.reference_predicate = [](const std::vector<std::int64_t>& v) {
        // even 1-based positions non-decreasing; odd positions dominate
        // their adjacent neighbours
        for (std::size_t i = 2; i + 2 <= v.size(); i += 2)
            if (v[i - 1] > v[i + 1]) return false;
        for (std::size_t i = 1; i <= v.size(); i += 2) {
            if (i >= 2 && v[i - 1] < v[i - 2]) return false;
            if (i < v.size() && v[i - 1] < v[i]) return false;
        }
        return true;
    };
    auto instantiate = d.instantiate;
    d.natural_embedding = [instantiate, ge_item](std::size_t n) {
        SemanticEmbedding emb = identity_embedding(instantiate(n));
        if (n >= 3 && n % 2 == 1) {
            // the odd-length item is dominated by the two even-length items
            const std::string from = ge_item(n, n - 1).item.label();
            emb.phi[from] = {ge_item(n, n + 1).item.label(), ge_item(n + 1, n - 1).item.label()};
        }
        return emb;
    };
    return d;
}

Decomposition gcc_full_decomposition(std::vector<std::int64_t> lower,
                                     std::vector<std::int64_t> upper) {
    if (lower.size() != upper.size()) throw InputError("gcc bounds must align");
    const auto dmax = static_cast<std::int64_t>(lower.size());
    std::vector<std::int64_t> type;
    for (std::int64_t v = 1; v <= dmax; ++v) type.push_back(v);

    Decomposition d;
    d.name = "gcc_full";
    d.value_type = type;
    d.instantiate = [type, lower, upper, dmax](std::size_t n) {
        DecompInstance inst;
        inst.main_vars = main_vars(n, type);
        std::vector<std::int64_t> ntype;
        for (std::size_t v = 0; v <= n; ++v) ntype.push_back(static_cast<std::int64_t>(v));
        auto avar = [](std::size_t i, std::int64_t l, std::int64_t u) {
            return "A_" + std::to_string(i) + "_" + std::to_string(l) + "_" + std::to_string(u);
        };
        auto nvar = [](std::int64_t l, std::int64_t u) {
            return "N_" + std::to_string(l) + "_" + std::to_string(u);
        };
        for (std::int64_t l = 1; l <= dmax; ++l) {
            for (std::int64_t u = l; u <= dmax; ++u) {
                const std::string lu = std::to_string(l) + "," + std::to_string(u);
                inst.aux_vars.push_back({nvar(l, u), ntype});
                std::vector<std::pair<std::int64_t, Term>> sum{{1, Term(nvar(l, u))}};
                for (std::size_t i = 1; i <= n; ++i) {
                    inst.aux_vars.push_back({avar(i, l, u), {0, 1}});
                    inst.items.add({make_indicator(Term(avar(i, l, u)), Term(xvar(i)), l, u),
                                    Rational(1), "ind", std::to_string(i) + "," + lu});
                    sum.push_back({-1, Term(avar(i, l, u))});
                }
                inst.items.add({make_eq(std::move(sum), 0), Rational(1), "sum_def", lu});
                std::int64_t lo = 0, hi = 0;
                for (std::int64_t j = l; j <= u; ++j) {
                    lo += lower[static_cast<std::size_t>(j - 1)];
                    hi += upper[static_cast<std::size_t>(j - 1)];
                }
                inst.items.add({make_le({{-1, Term(nvar(l, u))}}, -lo), Rational(1), "card_lower",
                                lu});
                inst.items.add({make_le({{1, Term(nvar(l, u))}}, hi), Rational(1), "card_upper",
                                lu});
            }
        }
        for (std::int64_t u = 2; u <= dmax; ++u) {
            for (std::int64_t k = 1; k < u; ++k) {
                inst.items.add({make_eq({{1, Term(nvar(1, u))},
                                         {-1, Term(nvar(1, k))},
                                         {-1, Term(nvar(k + 1, u))}},
                                        0),
                                Rational(1), "split", std::to_string(k) + "," + std::to_string(u)});
            }
        }
        inst.functional_aux = true;
        inst.determine_aux = [n, dmax](const Valuation& v) {
            Valuation out = v;
            for (std::int64_t l = 1; l <= dmax; ++l) {
                for (std::int64_t u = l; u <= dmax; ++u) {
                    std::int64_t count = 0;
                    for (std::size_t i = 1; i <= n; ++i) {
                        const std::int64_t x = v.at(xvar(i));
                        const std::int64_t a = (x >= l && x <= u) ? 1 : 0;
                        out["A_" + std::to_string(i) + "_" + std::to_string(l) + "_" +
                            std::to_string(u)] = a;
                        count += a;
                    }
                    out["N_" + std::to_string(l) + "_" + std::to_string(u)] = count;
                }
            }
            return out;
        };
        return inst;
    };
    d.reference_predicate = [lower, upper, dmax](const std::vector<std::int64_t>& v) {
        for (std::int64_t t = 1; t <= dmax; ++t) {
            const auto occ = std::count(v.begin(), v.end(), t);
            if (occ < lower[static_cast<std::size_t>(t - 1)] ||
                occ > upper[static_cast<std::size_t>(t - 1)])
                return false;
        }
        return true;
    };
    auto instantiate = d.instantiate;
    d.natural_embedding = [instantiate](std::size_t n) {
        const DecompInstance d1 = instantiate(n);
        const DecompInstance d2 = instantiate(n + 1);
        const auto map2 = label_by_tag(d2);
        SemanticEmbedding emb;
        for (const WeightedItem& it : d1.items.items()) {
            if (it.tag == "sum_def")
                emb.phi[it.item.label()] = {map2.at({it.tag, it.params})};
            else
                emb.phi[it.item.label()] = {it.item.label()};
        }
        return emb;
    };
    return d;
}

Decomposition make_decomposition(const std::string& name, const std::vector<std::int64_t>& type,
                                 const std::vector<std::int64_t>& lower,
                                 const std::vector<std::int64_t>& upper) {
    if (name == "alldiff_diseq") return alldiff_diseq_decomposition(type);
    if (name == "alldiff_bounds") {
        if (type.empty()) throw InputError("alldiff_bounds needs a 1..d type");
        return alldiff_bounds_decomposition(*std::max_element(type.begin(), type.end()));
    }
    if (name == "contiguity_slide") return contiguity_chain_decomposition();
    if (name == "rising_sawtooth") return rising_sawtooth_decomposition(type);
    if (name == "gcc_full") return gcc_full_decomposition(lower, upper);
    throw InputError("unknown decomposition: " + name);
}

// ------------------------------------------------------------ measures

Rational CombiningFunction::apply(const std::map<Rational, Rational>& grouped) const {
    Rational out(0);
    switch (kind) {
    case Kind::Sum:
        for (const auto& [x, w] : grouped) out += x * w;
        return out;
    case Kind::Max:
        for (const auto& [x, w] : grouped)
            if (Rational(0) < w) out = max(out, x);
        return out;
    case Kind::CountNonzero:
        for (const auto& [x, w] : grouped)
            if (!x.is_zero()) out += w;
        return out;
    case Kind::SumOfSquares:
        for (const auto& [x, w] : grouped) out += x * x * w;
        return out;
    }
    return out;
}

std::string CombiningFunction::name() const {
    switch (kind) {
    case Kind::Sum: return "sum";
    case Kind::Max: return "max";
    case Kind::CountNonzero: return "count";
    case Kind::SumOfSquares: return "sum_of_squares";
    }
    return "?";
}

CombiningFunction make_comb(const std::string& name) {
    if (name == "sum") return {CombiningFunction::Kind::Sum};
    if (name == "max") return {CombiningFunction::Kind::Max};
    if (name == "count" || name == "count_nonzero") return {CombiningFunction::Kind::CountNonzero};
    if (name == "sum_of_squares") return {CombiningFunction::Kind::SumOfSquares};
    throw InputError("unknown combining function: " + name);
}

std::map<Rational, Rational> grouped_errors(const WeightedSet& s, const Valuation& v,
                                            ErrorKind err) {
    std::map<Rational, Rational> grouped;
    for (const WeightedItem& it : s.items()) grouped[item_error(it.item, v, err)] += it.weight;
    return grouped;
}

Rational violation(const DecompInstance& d, const CombiningFunction& comb,
                   const std::vector<std::int64_t>& valuation, ErrorKind err,
                   std::size_t enumeration_budget) {
    if (valuation.size() != d.main_vars.size())
        throw InputError("valuation length does not match the instance");
    Valuation v;
    for (std::size_t i = 0; i < valuation.size(); ++i) {
        const auto& spec = d.main_vars[i];
        if (std::find(spec.type.begin(), spec.type.end(), valuation[i]) == spec.type.end())
            throw InputError("value outside the static type: " + std::to_string(valuation[i]));
        v[spec.name] = valuation[i];
    }

    if (d.functional_aux && d.determine_aux)
        return comb.apply(grouped_errors(d.items, d.determine_aux(v), err));
    if (d.aux_vars.empty()) return comb.apply(grouped_errors(d.items, v, err));

    std::size_t visited = 0;
    std::optional<Rational> best;
    Valuation work = v;
    auto enumerate = [&](auto&& self, std::size_t idx) -> void {
        if (idx == d.aux_vars.size()) {
            if (++visited > enumeration_budget)
                throw ResourceError("auxiliary enumeration budget exceeded");
            const Rational value = comb.apply(grouped_errors(d.items, work, err));
            if (!best || value < *best) best = value;
            return;
        }
        for (std::int64_t x : d.aux_vars[idx].type) {
            work[d.aux_vars[idx].name] = x;
            self(self, idx + 1);
        }
    };
    enumerate(enumerate, 0);
    if (!best) throw InputError("auxiliary variable with an empty type");
    return *best;
}

// ------------------------------------------------------------ recognition

CoveringResult covering_check(const DecompInstance& d1, const DecompInstance& d2,
                              std::size_t budget) {
    // candidates per auxiliary: the same-named d2 variable (types permitting),
    // then constants of the variable's own type
    std::vector<std::vector<Term>> candidates(d1.aux_vars.size());
    for (std::size_t i = 0; i < d1.aux_vars.size(); ++i) {
        const VarSpec& u = d1.aux_vars[i];
        const VarSpec* same = d2.var(u.name);
        if (same) {
            const bool types_ok = std::all_of(same->type.begin(), same->type.end(),
                                              [&u](std::int64_t x) {
                                                  return std::find(u.type.begin(), u.type.end(),
                                                                   x) != u.type.end();
                                              });
            if (types_ok) candidates[i].emplace_back(u.name);
        }
        for (std::int64_t c : u.type) candidates[i].emplace_back(c);
    }

    // items checkable once all their auxiliaries are assigned
    std::map<std::string, std::size_t> aux_index;
    for (std::size_t i = 0; i < d1.aux_vars.size(); ++i) aux_index[d1.aux_vars[i].name] = i;
    std::vector<std::vector<const WeightedItem*>> ready_at(d1.aux_vars.size() + 1);
    for (const WeightedItem& it : d1.items.items()) {
        std::size_t depth = 0;
        for (const std::string& var : it.item.variables()) {
            auto jt = aux_index.find(var);
            if (jt != aux_index.end()) depth = std::max(depth, jt->second + 1);
        }
        ready_at[depth].push_back(&it);
    }

    Substitution theta;
    std::size_t tried = 0;
    bool out_of_budget = false;

    auto feasible_at = [&](std::size_t depth) {
        for (const WeightedItem* it : ready_at[depth]) {
            const Elementary image = theta.apply(it->item);
            if (!d2.items.find(image.label())) return false;
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t depth) -> bool {
        if (++tried > budget) {
            out_of_budget = true;
            return false;
        }
        if (!feasible_at(depth)) return false;
        if (depth == d1.aux_vars.size())
            return theta.apply(d1.items).sub_weighted_set_of(d2.items);
        for (const Term& cand : candidates[depth]) {
            theta.map[d1.aux_vars[depth].name] = cand;
            if (self(self, depth + 1)) return true;
            if (out_of_budget) return false;
        }
        theta.map.erase(d1.aux_vars[depth].name);
        return false;
    };

    CoveringResult result;
    if (search(search, 0)) {
        result.status = CoveringResult::Status::Covered;
        result.theta = theta;
    } else {
        result.status = out_of_budget ? CoveringResult::Status::Indeterminate
                                      : CoveringResult::Status::NotCovered;
    }
    return result;
}

bool semantic_embedding_check(const DecompInstance& d1, const DecompInstance& d2,
                              const SemanticEmbedding& emb, const CombiningFunction& comb,
                              ErrorKind err) {
    // theta must fix the main variables and respect the type condition
    for (const VarSpec& x : d1.main_vars) {
        auto it = emb.theta.map.find(x.name);
        if (it != emb.theta.map.end() && !(it->second == Term(x.name))) return false;
        if (!d2.var(x.name)) return false;
    }
    for (const VarSpec& u : d1.aux_vars) {
        const Term image = emb.theta.apply(Term(u.name));
        if (const auto* c = std::get_if<std::int64_t>(&image)) {
            if (std::find(u.type.begin(), u.type.end(), *c) == u.type.end()) return false;
        } else {
            const VarSpec* target = d2.var(std::get<std::string>(image));
            if (!target) return false;
            for (std::int64_t x : target->type)
                if (std::find(u.type.begin(), u.type.end(), x) == u.type.end()) return false;
        }
    }

    const WeightedSet mapped = emb.theta.apply(d1.items);

    // phi: injective into a family of pairwise-disjoint parts of d2's set
    std::set<std::string> used_parts;
    for (const WeightedItem& it : mapped.items()) {
        auto phi_it = emb.phi.find(it.item.label());
        const std::vector<std::string> part = phi_it != emb.phi.end()
                                                  ? phi_it->second
                                                  : std::vector<std::string>{it.item.label()};
        std::vector<const WeightedItem*> part_items;
        for (const std::string& label : part) {
            const WeightedItem* target = d2.items.find(label);
            if (!target) return false;
            if (!used_parts.insert(label).second) return false; // parts must not overlap
            part_items.push_back(target);
        }

        // error domination, checked over every valuation of the involved types
        std::vector<std::string> vars = it.item.variables();
        for (const WeightedItem* target : part_items)
            for (const std::string& v : target->item.variables())
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

        std::vector<const VarSpec*> specs;
        for (const std::string& v : vars) {
            const VarSpec* spec = d2.var(v);
            if (!spec) spec = d1.var(v);
            if (!spec) return false;
            specs.push_back(spec);
        }

        Valuation v;
        bool ok = true;
        auto enumerate = [&](auto&& self, std::size_t idx) -> void {
            if (!ok) return;
            if (idx == vars.size()) {
                std::map<Rational, Rational> lhs{{item_error(it.item, v, err), it.weight}};
                WeightedSet part_set;
                for (const WeightedItem* target : part_items) part_set.add(*target);
                if (comb.apply(part_set.items().empty()
                                   ? std::map<Rational, Rational>{}
                                   : grouped_errors(part_set, v, err)) < comb.apply(lhs))
                    ok = false;
                return;
            }
            for (std::int64_t x : specs[idx]->type) {
                v[vars[idx]] = x;
                self(self, idx + 1);
                if (!ok) return;
            }
        };
        enumerate(enumerate, 0);
        if (!ok) return false;
    }
    return true;
}

Decomposition weaken(const Decomposition& d,
                     const std::function<bool(const WeightedItem&)>& keep) {
    Decomposition out = d;
    out.name = d.name + "_weakened";
    auto base_inst = d.instantiate;
    out.instantiate = [base_inst, keep](std::size_t n) {
        DecompInstance inst = base_inst(n);
        WeightedSet kept;
        for (const WeightedItem& it : inst.items.items())
            if (keep(it)) kept.add(it);
        inst.items = std::move(kept);
        return inst;
    };
    auto base_emb = d.natural_embedding;
    auto weak_inst = out.instantiate;
    out.natural_embedding = [base_emb, weak_inst](std::size_t n) {
        SemanticEmbedding emb = base_emb ? base_emb(n) : SemanticEmbedding{};
        const DecompInstance d1 = weak_inst(n);
        SemanticEmbedding filtered;
        filtered.theta = emb.theta;
        for (const WeightedItem& it : d1.items.items()) {
            auto found = emb.phi.find(it.item.label());
            if (found != emb.phi.end()) filtered.phi[found->first] = found->second;
        }
        return filtered;
    };
    return out;
}

MeasureMonotonicity measure_non_decreasing(const Decomposition& d, const CombiningFunction& comb,
                                           ErrorKind err, std::size_t max_len) {
    MeasureMonotonicity out;
    std::vector<DecompInstance> inst;
    for (std::size_t n = 0; n <= max_len; ++n) inst.push_back(d.instantiate(n));

    std::vector<std::int64_t> v;
    auto walk = [&](auto&& self) -> void {
        if (!out.non_decreasing) return;
        const Rational here = violation(inst[v.size()], comb, v, err);
        if (v.size() >= max_len) return;
        for (std::int64_t x : d.value_type) {
            v.push_back(x);
            const Rational there = violation(inst[v.size()], comb, v, err);
            if (there < here) {
                out.non_decreasing = false;
                std::vector<std::int64_t> shorter(v.begin(), v.end() - 1);
                out.witness = {shorter, v};
                v.pop_back();
                return;
            }
            self(self);
            v.pop_back();
            if (!out.non_decreasing) return;
        }
    };
    walk(walk);
    return out;
}

} // namespace ogc
