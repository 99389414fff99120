#include "relhorn/semantics.hpp"

#include <algorithm>
#include <set>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

class Matcher {
  public:
    Matcher(const Structure& x, std::span<const Atom> atoms, std::size_t var_count, std::span<const ElementId> bound,
            const VarDomains& domains, const std::function<bool(std::span<const ElementId>)>& fn)
        : x_(x), atoms_(atoms), domains_(domains), fn_(fn), val_(var_count, kUnbound) {
        for (std::size_t v = 0; v < bound.size() && v < var_count; ++v) {
            val_[v] = bound[v];
        }
        plan();
    }

    bool run() { return step_atom(0); }

  private:
    bool allowed(VarId v, ElementId e) const {
        return v >= domains_.size() || domains_[v].empty() || domains_[v][e];
    }

    // Greedy join order: most already-bound variables first.
    void plan() {
        std::vector<bool> bound(val_.size(), false);
        for (std::size_t v = 0; v < val_.size(); ++v) {
            bound[v] = val_[v] != kUnbound;
        }
        std::vector<bool> used(atoms_.size(), false);
        for (std::size_t k = 0; k < atoms_.size(); ++k) {
            std::size_t best = atoms_.size();
            long best_score = -1;
            for (std::size_t i = 0; i < atoms_.size(); ++i) {
                if (used[i]) {
                    continue;
                }
                long score = 0;
                for (auto v : atoms_[i].vars) {
                    score += bound[v] ? 1 : 0;
                }
                if (score > best_score) {
                    best = i;
                    best_score = score;
                }
            }
            used[best] = true;
            order_.push_back(best);
            for (auto v : atoms_[best].vars) {
                bound[v] = true;
            }
        }
        for (VarId v = 0; v < val_.size(); ++v) {
            if (!bound[v]) {
                rest_.push_back(v);
            }
        }
    }

    bool step_atom(std::size_t k) {
        if (k == order_.size()) {
            return step_rest(0);
        }
        const Atom& a = atoms_[order_[k]];
        bool all_bound = std::all_of(a.vars.begin(), a.vars.end(), [&](VarId v) { return val_[v] != kUnbound; });
        if (all_bound) {
            scratch_.resize(a.vars.size());
            for (std::size_t p = 0; p < a.vars.size(); ++p) {
                scratch_[p] = val_[a.vars[p]];
            }
            if (!x_.holds(a.symbol, scratch_)) {
                return true;
            }
            return step_atom(k + 1);
        }
        const Relation& r = x_.relation(a.symbol);
        std::vector<VarId> newly;
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto t = r.tuple(i);
            bool ok = true;
            for (std::size_t p = 0; p < a.vars.size(); ++p) {
                auto v = a.vars[p];
                if (val_[v] == kUnbound) {
                    if (!allowed(v, t[p])) {
                        ok = false;
                        break;
                    }
                    val_[v] = t[p];
                    newly.push_back(v);
                } else if (val_[v] != t[p]) {
                    ok = false;
                    break;
                }
            }
            bool keep_going = !ok || step_atom(k + 1);
            for (auto v : newly) {
                val_[v] = kUnbound;
            }
            newly.clear();
            if (!keep_going) {
                return false;
            }
        }
        return true;
    }

    bool step_rest(std::size_t k) {
        if (k == rest_.size()) {
            return fn_(val_);
        }
        auto v = rest_[k];
        for (ElementId e = 0; e < x_.size(); ++e) {
            if (!allowed(v, e)) {
                continue;
            }
            val_[v] = e;
            if (!step_rest(k + 1)) {
                val_[v] = kUnbound;
                return false;
            }
        }
        val_[v] = kUnbound;
        return true;
    }

    const Structure& x_;
    std::span<const Atom> atoms_;
    const VarDomains& domains_;
    const std::function<bool(std::span<const ElementId>)>& fn_;
    std::vector<ElementId> val_;
    std::vector<std::size_t> order_;
    std::vector<VarId> rest_;
    std::vector<ElementId> scratch_;
};

bool conclusion_holds(const Structure& x, const HornFormula& phi, std::span<const ElementId> val) {
    if (const auto* eq = std::get_if<Equality>(&phi.conclusion())) {
        return val[eq->left] == val[eq->right];
    }
    return atom_holds(x, phi.conclusion_atom(), val);
}

void check_same_signature(const Theory& t, const Structure& a, const char* what) {
    if (!same_signature(t.signature_ptr(), a.signature_ptr())) {
        throw Error(std::string(what) + ": structure and theory signatures differ");
    }
}

} // namespace

bool for_each_valuation(const Structure& x, std::span<const Atom> atoms, std::size_t var_count,
                        std::span<const ElementId> bound, const VarDomains& domains,
                        const std::function<bool(std::span<const ElementId>)>& fn) {
    Matcher m(x, atoms, var_count, bound, domains, fn);
    return m.run();
}

std::vector<std::vector<ElementId>> all_valuations(const Structure& x, std::span<const Atom> atoms,
                                                   std::size_t var_count, std::span<const ElementId> bound,
                                                   const VarDomains& domains) {
    std::vector<std::vector<ElementId>> out;
    for_each_valuation(x, atoms, var_count, bound, domains, [&](std::span<const ElementId> v) {
        out.emplace_back(v.begin(), v.end());
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool atom_holds(const Structure& x, const Atom& a, std::span<const ElementId> valuation) {
    std::vector<ElementId> t(a.vars.size());
    for (std::size_t p = 0; p < t.size(); ++p) {
        t[p] = valuation[a.vars[p]];
    }
    return x.holds(a.symbol, t);
}

bool satisfies_formula(const Structure& x, const HornFormula& phi) {
    return for_each_valuation(x, phi.premises(), phi.var_count(), {}, {},
                              [&](std::span<const ElementId> v) { return conclusion_holds(x, phi, v); });
}

std::optional<std::vector<ElementId>> first_violation(const Structure& x, const HornFormula& phi) {
    std::optional<std::vector<ElementId>> best;
    for_each_valuation(x, phi.premises(), phi.var_count(), {}, {}, [&](std::span<const ElementId> v) {
        if (!conclusion_holds(x, phi, v)) {
            std::vector<ElementId> cand(v.begin(), v.end());
            if (!best || cand < *best) {
                best = std::move(cand);
            }
        }
        return true;
    });
    return best;
}

ModelCheck is_model(const Structure& x, const Theory& t) {
    check_same_signature(t, x, "is_model");
    const auto& axioms = t.all_axioms();
    for (std::size_t i = 0; i < axioms.size(); ++i) {
        if (auto bad = first_violation(x, axioms[i])) {
            return {false, i, std::move(*bad)};
        }
    }
    return {};
}

FreeModelResult free_model(const Theory& t, const Structure& a) {
    check_same_signature(t, a, "free_model");
    const auto& sig = t.signature_ptr();
    const std::size_t n = a.size();
    std::vector<ElementId> parent(n);
    for (ElementId i = 0; i < n; ++i) {
        parent[i] = i;
    }
    auto find = [&](ElementId e) {
        while (parent[e] != e) {
            parent[e] = parent[parent[e]];
            e = parent[e];
        }
        return e;
    };
    auto unite = [&](ElementId u, ElementId v) {
        u = find(u);
        v = find(v);
        if (u == v) {
            return false;
        }
        if (u < v) {
            parent[v] = u;
        } else {
            parent[u] = v;
        }
        return true;
    };

    std::vector<std::set<std::vector<ElementId>>> edges(sig->size());
    for (const auto& e : a.edges()) {
        edges[e.symbol].insert(e.args);
    }

    std::vector<ElementId> reps;
    std::vector<ElementId> position(n);
    auto rebuild = [&]() {
        reps.clear();
        for (ElementId i = 0; i < n; ++i) {
            if (find(i) == i) {
                position[i] = static_cast<ElementId>(reps.size());
                reps.push_back(i);
            }
        }
        std::vector<std::string> names;
        for (auto r : reps) {
            names.push_back(a.name(r));
        }
        std::vector<std::vector<ElementId>> flat(sig->size());
        for (SymbolId s = 0; s < sig->size(); ++s) {
            for (const auto& tup : edges[s]) {
                for (auto e : tup) {
                    flat[s].push_back(position[e]);
                }
            }
        }
        return Structure(sig, std::move(names), std::move(flat));
    };

    const auto& axioms = t.all_axioms();
    while (true) {
        Structure cur = rebuild();
        std::vector<std::pair<ElementId, ElementId>> merges;
        std::vector<std::pair<SymbolId, std::vector<ElementId>>> additions;
        for (const auto& ax : axioms) {
            for_each_valuation(cur, ax.premises(), ax.var_count(), {}, {}, [&](std::span<const ElementId> v) {
                if (const auto* eq = std::get_if<Equality>(&ax.conclusion())) {
                    if (v[eq->left] != v[eq->right]) {
                        merges.emplace_back(reps[v[eq->left]], reps[v[eq->right]]);
                    }
                } else if (!atom_holds(cur, ax.conclusion_atom(), v)) {
                    const auto& c = ax.conclusion_atom();
                    std::vector<ElementId> tup;
                    for (auto var : c.vars) {
                        tup.push_back(reps[v[var]]);
                    }
                    additions.emplace_back(c.symbol, std::move(tup));
                }
                return true;
            });
        }
        if (merges.empty() && additions.empty()) {
            break;
        }
        bool merged = false;
        for (auto [u, v] : merges) {
            merged = unite(u, v) || merged;
        }
        if (merged) {
            for (auto& rel : edges) {
                std::set<std::vector<ElementId>> moved;
                for (auto tup : rel) {
                    for (auto& e : tup) {
                        e = find(e);
                    }
                    moved.insert(std::move(tup));
                }
                rel = std::move(moved);
            }
        }
        for (auto& [s, tup] : additions) {
            for (auto& e : tup) {
                e = find(e);
            }
            edges[s].insert(std::move(tup));
        }
    }
    Structure model = rebuild();
    std::vector<ElementId> map(n);
    for (ElementId i = 0; i < n; ++i) {
        map[i] = position[find(i)];
    }
    return {model, Morphism{a, model, std::move(map)}};
}

Structure premise_structure(const SignaturePtr& sig, const HornFormula& phi) {
    std::vector<Edge> edges;
    for (const auto& p : phi.premises()) {
        edges.push_back({p.symbol, {p.vars.begin(), p.vars.end()}});
    }
    return {sig, phi.var_names(), edges};
}

bool entails(const Theory& t, const HornFormula& phi) {
    auto fm = free_model(t, premise_structure(t.signature_ptr(), phi));
    const auto& u = fm.unit_map.map;
    if (const auto* eq = std::get_if<Equality>(&phi.conclusion())) {
        return u[eq->left] == u[eq->right];
    }
    return atom_holds(fm.model, phi.conclusion_atom(), u);
}

bool is_reflexive(const Structure& x) {
    const auto& sig = x.signature();
    for (SymbolId s = 0; s < sig.size(); ++s) {
        for (ElementId e = 0; e < x.size(); ++e) {
            std::vector<ElementId> loop(sig.arity(s), e);
            if (!x.holds(s, loop)) {
                return false;
            }
        }
    }
    return true;
}

bool is_reflexive_theory(const Theory& t) {
    const auto& sig = t.signature();
    for (SymbolId s = 0; s < sig.size(); ++s) {
        HornFormula loop({"v"}, {}, Atom{s, std::vector<VarId>(sig.arity(s), 0)});
        if (!entails(t, loop)) {
            return false;
        }
    }
    return true;
}

namespace {
void require_binary(const Signature& sig) {
    for (const auto& s : sig.symbols()) {
        if (s.arity != 2) {
            throw Error("transitivity: symbol '" + s.name + "' is not binary");
        }
    }
}
} // namespace

bool is_transitive(const Structure& x) {
    const auto& sig = x.signature();
    require_binary(sig);
    for (SymbolId s = 0; s < sig.size(); ++s) {
        const auto& r = x.relation(s);
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto ab = r.tuple(i);
            for (std::size_t j = 0; j < r.size(); ++j) {
                auto bc = r.tuple(j);
                if (ab[1] == bc[0] && !x.holds(s, {ab[0], bc[1]})) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_transitive_theory(const Theory& t) {
    const auto& sig = t.signature();
    require_binary(sig);
    for (SymbolId s = 0; s < sig.size(); ++s) {
        HornFormula trans({"x", "y", "z"}, {{s, {0, 1}}, {s, {1, 2}}}, Atom{s, {0, 2}});
        if (!entails(t, trans)) {
            return false;
        }
    }
    return true;
}

} // namespace relhorn
