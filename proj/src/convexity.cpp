#include "relhorn/convexity.hpp"

#include <algorithm>

#include "relhorn/error.hpp"
#include "relhorn/limits.hpp"
#include "relhorn/semantics.hpp"

namespace relhorn {

namespace {

void require_discrete(const Theory& t, const char* what) {
    if (!t.signature().is_discrete()) {
        throw Error(std::string(what) + ": signature must be discrete");
    }
}

void require_edge_conclusion(const HornFormula& ax, const char* what) {
    if (ax.has_equality()) {
        throw Error(std::string(what) + ": axiom has an equality conclusion");
    }
}

void require_model_morphism(const Morphism& f, const Theory& t, const char* what) {
    if (!same_signature(f.source.signature_ptr(), t.signature_ptr()) ||
        !same_signature(f.target.signature_ptr(), t.signature_ptr())) {
        throw Error(std::string(what) + ": signature mismatch");
    }
    if (!validate_morphism(f)) {
        throw Error(std::string(what) + ": f is not a morphism");
    }
    if (!is_model(f.source, t) || !is_model(f.target, t)) {
        throw Error(std::string(what) + ": source and target must be models of the theory");
    }
}

std::vector<std::vector<ElementId>> fibres_of(const Morphism& f) {
    std::vector<std::vector<ElementId>> out(f.target.size());
    for (ElementId e = 0; e < f.source.size(); ++e) {
        out[f.map[e]].push_back(e);
    }
    return out;
}

std::vector<bool> mask_of(const std::vector<ElementId>& elements, std::size_t n) {
    std::vector<bool> m(n, false);
    for (auto e : elements) {
        m[e] = true;
    }
    return m;
}

// Tuples of R^X lying over `over` (componentwise f(x_i) = over_i), sorted.
std::vector<std::vector<ElementId>> tuples_over(const Morphism& f, SymbolId r, const std::vector<ElementId>& over) {
    std::vector<std::vector<ElementId>> out;
    const auto& rel = f.source.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
        auto t = rel.tuple(i);
        bool ok = true;
        for (std::size_t k = 0; k < t.size() && ok; ++k) {
            ok = f.map[t[k]] == over[k];
        }
        if (ok) {
            out.emplace_back(t.begin(), t.end());
        }
    }
    return out;
}

// Binds κ(v_i) = x_i; false when a repeated conclusion variable gets two
// different elements.
bool bind_conclusion(const Atom& c, const std::vector<ElementId>& x, std::vector<ElementId>& bound) {
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
        auto v = c.vars[i];
        if (bound[v] != kUnbound && bound[v] != x[i]) {
            return false;
        }
        bound[v] = x[i];
    }
    return true;
}

ConvexityResult convex_wrt_unchecked(const Morphism& f, const HornFormula& ax, std::size_t axiom_index,
                                     const std::vector<std::vector<ElementId>>& fibres) {
    const auto& conc = ax.conclusion_atom();
    const auto n = ax.var_count();
    const auto& x = f.source;
    for (const auto& kz : all_valuations(f.target, ax.premises(), n)) {
        std::vector<ElementId> over;
        for (auto v : conc.vars) {
            over.push_back(kz[v]);
        }
        VarDomains domains(n);
        for (std::size_t v = 0; v < n; ++v) {
            domains[v] = mask_of(fibres[kz[v]], x.size());
        }
        for (const auto& xt : tuples_over(f, conc.symbol, over)) {
            std::vector<ElementId> bound(n, kUnbound);
            bool found = bind_conclusion(conc, xt, bound) &&
                         !for_each_valuation(x, ax.premises(), n, bound, domains,
                                             [](std::span<const ElementId>) { return false; });
            if (!found) {
                return {false, ConvexityCounterexample{axiom_index, kz, xt}};
            }
        }
    }
    return {};
}

template <typename Check>
ConvexityResult over_axioms(const Theory& t, Check&& check) {
    for (auto i : t.nonbase_indices()) {
        const auto& ax = t.all_axioms()[i];
        if (ax.has_equality()) {
            continue;
        }
        auto r = check(ax, i);
        if (!r.convex) {
            return r;
        }
    }
    return {};
}

} // namespace

ConvexityResult is_convex_wrt(const Morphism& f, const HornFormula& ax, const Theory& t, std::size_t axiom_index) {
    require_discrete(t, "is_convex_wrt");
    require_edge_conclusion(ax, "is_convex_wrt");
    require_model_morphism(f, t, "is_convex_wrt");
    return convex_wrt_unchecked(f, ax, axiom_index, fibres_of(f));
}

ConvexityResult is_convex(const Morphism& f, const Theory& t) {
    require_discrete(t, "is_convex");
    require_model_morphism(f, t, "is_convex");
    const auto fibres = fibres_of(f);
    return over_axioms(t, [&](const HornFormula& ax, std::size_t i) { return convex_wrt_unchecked(f, ax, i, fibres); });
}

namespace {

struct LiftingData {
    FreeModelResult r_t;   ///< R_T on w_1..w_n
    FreeModelResult phi_t; ///< (Φ ⇒ R)_T on the axiom's variables
    std::vector<ElementId> f_phi_r;
};

LiftingData lifting_data(const HornFormula& ax, const Theory& t) {
    const auto& sig = t.signature_ptr();
    const auto& conc = ax.conclusion_atom();
    const auto n = conc.vars.size();
    std::vector<std::string> ws;
    std::vector<ElementId> args;
    for (std::size_t i = 0; i < n; ++i) {
        ws.push_back("w" + std::to_string(i + 1));
        args.push_back(static_cast<ElementId>(i));
    }
    Structure r_pi(sig, ws, std::vector<Edge>{{conc.symbol, args}});
    std::vector<Edge> edges;
    for (const auto& a : ax.premises()) {
        edges.push_back({a.symbol, {a.vars.begin(), a.vars.end()}});
    }
    edges.push_back({conc.symbol, {conc.vars.begin(), conc.vars.end()}});
    Structure phi_pi(sig, ax.var_names(), edges);

    LiftingData d{free_model(t, r_pi), free_model(t, phi_pi), {}};
    d.f_phi_r.assign(d.r_t.model.size(), kUnbound);
    for (std::size_t i = 0; i < n; ++i) {
        auto from = d.r_t.unit_map.map[i];
        auto to = d.phi_t.unit_map.map[conc.vars[i]];
        if (d.f_phi_r[from] != kUnbound && d.f_phi_r[from] != to) {
            throw Error("lifting: f_{Phi,R} is not well defined");
        }
        d.f_phi_r[from] = to;
    }
    if (!preserves_edges(d.r_t.model, d.phi_t.model, d.f_phi_r)) {
        throw Error("lifting: f_{Phi,R} is not a morphism");
    }
    return d;
}

ConvexityResult lifting_unchecked(const Morphism& f, const HornFormula& ax, const Theory& t, std::size_t axiom_index,
                                  const std::vector<std::vector<ElementId>>& fibres) {
    const auto d = lifting_data(ax, t);
    const auto& conc = ax.conclusion_atom();
    const auto& rt = d.r_t.model;
    const auto& pt = d.phi_t.model;
    std::optional<ConvexityCounterexample> bad;
    for_each_morphism(pt, f.target, {}, [&](std::span<const ElementId> b) {
        // a : R_T → X with f ∘ a = b ∘ f_{Φ,R}
        ImageCandidates a_cands(rt.size());
        for (ElementId e = 0; e < rt.size(); ++e) {
            a_cands[e] = fibres[b[d.f_phi_r[e]]];
            if (a_cands[e].empty()) {
                return true;
            }
        }
        for_each_morphism(rt, f.source, a_cands, [&](std::span<const ElementId> a) {
            // filler d : (Φ ⇒ R)_T → X with d ∘ f_{Φ,R} = a and f ∘ d = b
            ImageCandidates d_cands(pt.size());
            bool possible = true;
            for (ElementId e = 0; e < pt.size() && possible; ++e) {
                d_cands[e] = fibres[b[e]];
                possible = !d_cands[e].empty();
            }
            for (ElementId e = 0; e < rt.size() && possible; ++e) {
                auto& c = d_cands[d.f_phi_r[e]];
                if (std::find(c.begin(), c.end(), a[e]) == c.end()) {
                    possible = false;
                } else {
                    c = {a[e]};
                }
            }
            if (possible) {
                possible = !for_each_morphism(pt, f.source, d_cands, [](std::span<const ElementId>) { return false; });
            }
            if (!possible) {
                ConvexityCounterexample ce{axiom_index, {}, {}};
                for (std::size_t v = 0; v < ax.var_count(); ++v) {
                    ce.kappa_z.push_back(b[d.phi_t.unit_map.map[v]]);
                }
                for (std::size_t i = 0; i < conc.vars.size(); ++i) {
                    ce.x.push_back(a[d.r_t.unit_map.map[i]]);
                }
                bad = std::move(ce);
                return false;
            }
            return true;
        });
        return !bad;
    });
    if (bad) {
        return {false, std::move(bad)};
    }
    return {};
}

} // namespace

ConvexityResult is_convex_via_lifting_wrt(const Morphism& f, const HornFormula& ax, const Theory& t,
                                          std::size_t axiom_index) {
    require_discrete(t, "is_convex_via_lifting");
    require_edge_conclusion(ax, "is_convex_via_lifting");
    require_model_morphism(f, t, "is_convex_via_lifting");
    return lifting_unchecked(f, ax, t, axiom_index, fibres_of(f));
}

ConvexityResult is_convex_via_lifting(const Morphism& f, const Theory& t) {
    require_discrete(t, "is_convex_via_lifting");
    require_model_morphism(f, t, "is_convex_via_lifting");
    const auto fibres = fibres_of(f);
    return over_axioms(t,
                       [&](const HornFormula& ax, std::size_t i) { return lifting_unchecked(f, ax, t, i, fibres); });
}

ConvexityResult is_object_convex(const Structure& x, const Theory& t) {
    require_discrete(t, "is_object_convex");
    if (!is_model(x, t)) {
        throw Error("is_object_convex: X must be a model of the theory");
    }
    return over_axioms(t, [&](const HornFormula& ax, std::size_t i) -> ConvexityResult {
        const auto& conc = ax.conclusion_atom();
        const auto n = ax.var_count();
        const auto& rel = x.relation(conc.symbol);
        for (std::size_t k = 0; k < rel.size(); ++k) {
            auto t_span = rel.tuple(k);
            std::vector<ElementId> xt(t_span.begin(), t_span.end());
            std::vector<ElementId> bound(n, kUnbound);
            bool found = bind_conclusion(conc, xt, bound) &&
                         !for_each_valuation(x, ax.premises(), n, bound, {},
                                             [](std::span<const ElementId>) { return false; });
            if (!found) {
                return {false, ConvexityCounterexample{i, {}, xt}};
            }
        }
        return {};
    });
}

SafetyResult is_safe_axiom(const HornFormula& ax, const Theory& t) {
    require_edge_conclusion(ax, "is_safe_axiom");
    const auto& conc = ax.conclusion_atom();
    const auto n = ax.var_count();
    std::vector<VarId> targets(conc.vars.begin(), conc.vars.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<VarId> others;
    for (VarId v = 0; v < n; ++v) {
        if (!std::binary_search(targets.begin(), targets.end(), v)) {
            others.push_back(v);
        }
    }
    const auto pv = ax.premise_vars();
    const bool within = std::all_of(pv.begin(), pv.end(),
                                    [&](VarId v) { return std::binary_search(targets.begin(), targets.end(), v); });

    std::vector<VarId> kappa(n);
    for (VarId v = 0; v < n; ++v) {
        kappa[v] = v;
    }
    std::vector<std::size_t> digit(others.size(), 0);
    while (true) {
        for (std::size_t k = 0; k < others.size(); ++k) {
            kappa[others[k]] = targets[digit[k]];
        }
        bool all = std::all_of(ax.premises().begin(), ax.premises().end(), [&](const Atom& phi) {
            Atom image{phi.symbol, {}};
            for (auto v : phi.vars) {
                image.vars.push_back(kappa[v]);
            }
            return entails(t, HornFormula::compacted(ax.var_names(), {conc}, image));
        });
        if (all) {
            return {true, within, kappa};
        }
        std::size_t k = others.size();
        while (k > 0) {
            --k;
            if (++digit[k] < targets.size()) {
                break;
            }
            digit[k] = 0;
            if (k == 0) {
                return {};
            }
        }
        if (others.empty() || targets.empty()) {
            return {};
        }
    }
}

std::string to_string(SafetyClass c) {
    switch (c) {
    case SafetyClass::AllVerySafe:
        return "all_very_safe";
    case SafetyClass::AllSafe:
        return "all_safe";
    case SafetyClass::Neither:
        break;
    }
    return "neither";
}

Classification classify_theory(const Theory& t) {
    require_discrete(t, "classify_theory");
    Classification c;
    c.reflexive = is_reflexive_theory(t);
    c.has_equality = t.has_equality_axiom();
    const auto& sig = t.signature();
    c.binary_only = sig.size() > 0;
    for (SymbolId s = 0; s < sig.size(); ++s) {
        c.binary_only = c.binary_only && sig.arity(s) == 2;
    }
    c.transitive = c.binary_only && is_transitive_theory(t);
    bool all_safe = true;
    bool all_very_safe = true;
    for (auto i : t.nonbase_indices()) {
        const auto& ax = t.all_axioms()[i];
        if (ax.has_equality()) {
            continue;
        }
        auto r = is_safe_axiom(ax, t);
        all_safe = all_safe && r.safe;
        all_very_safe = all_very_safe && r.very_safe;
        c.axioms.push_back({i, std::move(r)});
    }
    c.safety = all_very_safe ? SafetyClass::AllVerySafe : all_safe ? SafetyClass::AllSafe : SafetyClass::Neither;
    if (!c.reflexive) {
        c.advisories.emplace_back("theory is not reflexive: the safety criteria give no closure verdict");
        return c;
    }
    c.locally_cartesian_closed = all_very_safe;
    c.cartesian_closed = all_safe || c.transitive;
    c.quasitopos = all_very_safe && !c.has_equality;
    if (all_very_safe) {
        c.advisories.emplace_back("all equality-free axioms very safe => locally cartesian closed");
    } else if (all_safe) {
        c.advisories.emplace_back("all equality-free axioms safe => cartesian closed");
    }
    if (c.quasitopos) {
        c.advisories.emplace_back("very safe and without equality => quasitopos (topological universe)");
    }
    if (c.transitive) {
        c.advisories.emplace_back("reflexive and transitive over binary symbols => cartesian closed");
    }
    if (!c.cartesian_closed) {
        c.advisories.emplace_back("no sufficient condition applies; closure undecided");
    }
    return c;
}

} // namespace relhorn
