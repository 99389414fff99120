#include "relhorn/schema.hpp"

#include <algorithm>

#include "relhorn/error.hpp"
#include "relhorn/semantics.hpp"

namespace relhorn {

namespace {

struct Context {
    const Theory& t;
    const Signature& sig;
    const AxiomSchema& s;
    std::size_t schema_index;
    const std::vector<SymbolId>& group;
    bool monotone;
    SchemaOptions opts;
};

Context make_context(const Theory& t, std::size_t schema_index, const SchemaOptions& opts) {
    const auto& s = t.schemas().at(schema_index);
    const auto& sig = t.signature();
    return {t, sig, s, schema_index, sig.symbols_of_arity(s.arity), sigma_is_monotone(s, sig), opts};
}

void require_heyting(const Theory& t, const char* what) {
    if (!t.signature().is_complete_heyting()) {
        throw Error(std::string(what) + ": signature must be a complete Heyting algebra");
    }
}

void require_base_model(const Structure& x, const Theory& t, const char* what) {
    if (!same_signature(x.signature_ptr(), t.signature_ptr())) {
        throw Error(std::string(what) + ": signature mismatch");
    }
    if (!is_model(x, base_theory(t.signature_ptr()))) {
        throw Error(std::string(what) + ": structures must be models of the base theory");
    }
}

SymbolId join_all(const Context& c, const std::vector<SymbolId>& xs) {
    SymbolId acc = c.sig.bottom(c.s.arity);
    for (auto x : xs) {
        acc = c.sig.join(acc, x);
    }
    return acc;
}

// Labels S with X ⊨ S κ(φ) for premise φ.
std::vector<SymbolId> holding_labels(const Context& c, const Structure& x, const std::vector<VarId>& vars,
                                     std::span<const ElementId> kappa) {
    std::vector<ElementId> tuple;
    for (auto v : vars) {
        tuple.push_back(kappa[v]);
    }
    std::vector<SymbolId> out;
    for (auto s : c.group) {
        if (x.holds(s, tuple)) {
            out.push_back(s);
        }
    }
    return out;
}

SymbolId r_kappa_full(const Context& c, const std::vector<SymbolId>& labels,
                      const std::vector<std::vector<SymbolId>>& admissible) {
    SymbolId acc = c.sig.bottom(c.s.arity);
    std::vector<std::size_t> idx(admissible.size(), 0);
    for (const auto& a : admissible) {
        if (a.empty()) {
            return acc;
        }
    }
    std::vector<SymbolId> meet(labels.size());
    while (true) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            meet[i] = c.sig.meet(labels[i], admissible[i][idx[i]]);
        }
        acc = c.sig.join(acc, apply_sigma(c.s, c.sig, meet));
        std::size_t k = idx.size();
        while (k > 0) {
            --k;
            if (++idx[k] < admissible[k].size()) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return acc;
            }
        }
        if (idx.empty()) {
            return acc;
        }
    }
}

SymbolId r_kappa(const Context& c, const Structure& x, const std::vector<SymbolId>& labels,
                 std::span<const ElementId> kappa) {
    std::vector<std::vector<SymbolId>> admissible;
    for (const auto& p : c.s.premises) {
        admissible.push_back(holding_labels(c, x, p, kappa));
    }
    if (!c.monotone) {
        return r_kappa_full(c, labels, admissible);
    }
    std::vector<SymbolId> meet(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        meet[i] = c.sig.meet(labels[i], join_all(c, admissible[i]));
    }
    auto fast = apply_sigma(c.s, c.sig, meet);
    if (c.opts.cross_check && fast != r_kappa_full(c, labels, admissible)) {
        throw Error("schema '" + c.s.name + "': monotone shortcut for R_kappa disagrees with the full join");
    }
    return fast;
}

// Checks one (κ_Z, x̄); `domains` restricts the non-conclusion variables.
std::optional<SchemaCounterexample> check_tuple(const Context& c, const Structure& x,
                                                const std::vector<SymbolId>& labels,
                                                const std::vector<ElementId>& kappa_z,
                                                const std::vector<ElementId>& xt, const VarDomains& domains) {
    const auto top = apply_sigma(c.s, c.sig, labels);
    std::vector<SymbolId> ts;
    for (auto t : c.group) {
        if (c.sig.leq(t, top) && x.holds(t, xt)) {
            ts.push_back(t);
        }
    }
    const auto need = join_all(c, ts);
    const auto nv = c.s.var_names.size();
    std::vector<ElementId> bound(nv, kUnbound);
    bool consistent = true;
    for (std::size_t i = 0; i < c.s.conclusion.size(); ++i) {
        auto v = c.s.conclusion[i];
        consistent = consistent && (bound[v] == kUnbound || bound[v] == xt[i]);
        bound[v] = xt[i];
    }
    SymbolId acc = c.sig.bottom(c.s.arity);
    if (consistent && !c.sig.leq(need, acc)) {
        for_each_valuation(x, {}, nv, bound, domains, [&](std::span<const ElementId> kappa) {
            acc = c.sig.join(acc, r_kappa(c, x, labels, kappa));
            return !c.sig.leq(need, acc);
        });
    }
    for (auto t : ts) {
        if (!c.sig.leq(t, acc)) {
            return SchemaCounterexample{c.schema_index, labels, kappa_z, xt, t, acc};
        }
    }
    return std::nullopt;
}

std::vector<Atom> instance_premises(const AxiomSchema& s, const std::vector<SymbolId>& labels) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        out.push_back({labels[i], s.premises[i]});
    }
    return out;
}

// Odometer over the cartesian product of `lists`.
template <typename Fn>
bool for_each_product(const std::vector<std::vector<ElementId>>& lists, Fn&& fn) {
    for (const auto& l : lists) {
        if (l.empty()) {
            return true;
        }
    }
    std::vector<std::size_t> idx(lists.size(), 0);
    std::vector<ElementId> pick(lists.size());
    while (true) {
        for (std::size_t k = 0; k < lists.size(); ++k) {
            pick[k] = lists[k][idx[k]];
        }
        if (!fn(pick)) {
            return false;
        }
        std::size_t k = lists.size();
        while (k > 0) {
            --k;
            if (++idx[k] < lists[k].size()) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return true;
            }
        }
        if (lists.empty()) {
            return true;
        }
    }
}

SchemaConvexityResult morphism_instance(const Context& c, const Morphism& f, const std::vector<SymbolId>& labels) {
    const auto& x = f.source;
    const auto nv = c.s.var_names.size();
    std::vector<std::vector<ElementId>> fibres(f.target.size());
    for (ElementId e = 0; e < x.size(); ++e) {
        fibres[f.map[e]].push_back(e);
    }
    const auto premises = instance_premises(c.s, labels);
    for (const auto& kz : all_valuations(f.target, premises, nv)) {
        VarDomains domains(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            domains[v].assign(x.size(), false);
            for (auto e : fibres[kz[v]]) {
                domains[v][e] = true;
            }
        }
        std::vector<std::vector<ElementId>> lists;
        for (auto v : c.s.conclusion) {
            lists.push_back(fibres[kz[v]]);
        }
        std::optional<SchemaCounterexample> bad;
        for_each_product(lists, [&](const std::vector<ElementId>& xt) {
            bad = check_tuple(c, x, labels, kz, xt, domains);
            return !bad;
        });
        if (bad) {
            return {false, std::move(bad)};
        }
    }
    return {};
}

SchemaConvexityResult object_instance(const Context& c, const Structure& x, const std::vector<SymbolId>& labels) {
    std::vector<ElementId> all(x.size());
    for (ElementId e = 0; e < x.size(); ++e) {
        all[e] = e;
    }
    std::vector<std::vector<ElementId>> lists(c.s.conclusion.size(), all);
    std::optional<SchemaCounterexample> bad;
    for_each_product(lists, [&](const std::vector<ElementId>& xt) {
        bad = check_tuple(c, x, labels, {}, xt, {});
        return !bad;
    });
    if (bad) {
        return {false, std::move(bad)};
    }
    return {};
}

} // namespace

SchemaConvexityResult is_schema_convex_wrt_instance(const Morphism& f, const Theory& t, const SchemaInstance& inst,
                                                    const SchemaOptions& opts) {
    require_heyting(t, "is_schema_convex");
    if (!validate_morphism(f)) {
        throw Error("is_schema_convex: f is not a morphism");
    }
    require_base_model(f.source, t, "is_schema_convex");
    require_base_model(f.target, t, "is_schema_convex");
    return morphism_instance(make_context(t, inst.schema, opts), f, inst.labels);
}

SchemaConvexityResult is_schema_convex(const Morphism& f, const Theory& t, const SchemaOptions& opts) {
    require_heyting(t, "is_schema_convex");
    if (!validate_morphism(f)) {
        throw Error("is_schema_convex: f is not a morphism");
    }
    require_base_model(f.source, t, "is_schema_convex");
    require_base_model(f.target, t, "is_schema_convex");
    for (const auto& inst : t.instances()) {
        auto r = morphism_instance(make_context(t, inst.schema, opts), f, inst.labels);
        if (!r.convex) {
            return r;
        }
    }
    return {};
}

SchemaConvexityResult is_schema_object_convex(const Structure& x, const Theory& t, const SchemaOptions& opts) {
    require_heyting(t, "is_schema_object_convex");
    require_base_model(x, t, "is_schema_object_convex");
    for (const auto& inst : t.instances()) {
        auto r = object_instance(make_context(t, inst.schema, opts), x, inst.labels);
        if (!r.convex) {
            return r;
        }
    }
    return {};
}

bool ch_condition_oracle(const VGraph& x, const VGraph& z, const std::vector<ElementId>& f, const Quantale& v) {
    if (!is_heyting(v)) {
        throw Error("ch_condition_oracle: quantale is not Heyting");
    }
    const auto nx = x.carrier.size();
    const auto nz = z.carrier.size();
    std::vector<std::vector<ElementId>> fibres(nz);
    for (ElementId e = 0; e < nx; ++e) {
        fibres[f[e]].push_back(e);
    }
    for (std::size_t x1 = 0; x1 < nx; ++x1) {
        for (std::size_t x3 = 0; x3 < nx; ++x3) {
            for (std::size_t z2 = 0; z2 < nz; ++z2) {
                for (Quantale::Value a = 0; a < v.size(); ++a) {
                    if (!v.leq(a, z.d[f[x1]][z2])) {
                        continue;
                    }
                    for (Quantale::Value b = 0; b < v.size(); ++b) {
                        if (!v.leq(b, z.d[z2][f[x3]])) {
                            continue;
                        }
                        auto lhs = v.meet(x.d[x1][x3], v.tensor(a, b));
                        auto rhs = v.bottom();
                        for (auto x2 : fibres[z2]) {
                            rhs = v.join(rhs, v.tensor(v.meet(x.d[x1][x2], a), v.meet(x.d[x2][x3], b)));
                        }
                        if (!v.leq(lhs, rhs)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

bool ch_condition_oracle(const Morphism& f) {
    const auto& q = f.source.signature().quantale();
    if (!q) {
        throw Error("ch_condition_oracle: signature is not quantale-induced");
    }
    return ch_condition_oracle(structure_to_vgraph(f.source), structure_to_vgraph(f.target), f.map, *q);
}

SchemaSafetyResult is_schema_safe(const AxiomSchema& s, const Theory& t) {
    const auto& sig = t.signature();
    const auto& group = sig.symbols_of_arity(s.arity);
    const auto k = s.premises.size();
    SchemaSafetyResult r;
    r.meet_equation = true;
    for_each_label_tuple(group, k, [&](const std::vector<SymbolId>& labels) {
        if (!r.meet_equation) {
            return;
        }
        for (auto cut : group) {
            std::vector<SymbolId> met;
            for (auto l : labels) {
                met.push_back(sig.meet(l, cut));
            }
            auto lhs = apply_sigma(s, sig, met);
            auto rhs = sig.meet(apply_sigma(s, sig, labels), cut);
            if (lhs != rhs) {
                r.meet_equation = false;
                r.meet_counterexample = MeetCounterexample{labels, cut, lhs, rhs};
                return;
            }
        }
    });

    const auto nv = s.var_names.size();
    std::vector<VarId> targets(s.conclusion.begin(), s.conclusion.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<VarId> others;
    std::vector<bool> in_premises(nv, false);
    for (const auto& p : s.premises) {
        for (auto v : p) {
            in_premises[v] = true;
        }
    }
    bool within = true;
    for (VarId v = 0; v < nv; ++v) {
        bool target = std::binary_search(targets.begin(), targets.end(), v);
        if (!target) {
            others.push_back(v);
            within = within && !in_premises[v];
        }
    }

    // All κ : Var → targets fixing the targets, odometer over `others`.
    std::vector<std::vector<VarId>> candidates;
    if (!targets.empty()) {
        std::vector<std::size_t> digit(others.size(), 0);
        while (true) {
            std::vector<VarId> kappa(nv);
            for (VarId v = 0; v < nv; ++v) {
                kappa[v] = v;
            }
            for (std::size_t i = 0; i < others.size(); ++i) {
                kappa[others[i]] = targets[digit[i]];
            }
            candidates.push_back(std::move(kappa));
            std::size_t pos = others.size();
            while (pos > 0 && ++digit[pos - 1] == targets.size()) {
                digit[--pos] = 0;
            }
            if (pos == 0) {
                break;
            }
        }
    }

    auto works = [&](const std::vector<VarId>& kappa, const std::vector<SymbolId>& labels) {
        Atom premise{apply_sigma(s, sig, labels), s.conclusion};
        for (std::size_t i = 0; i < k; ++i) {
            Atom image{labels[i], {}};
            for (auto v : s.premises[i]) {
                image.vars.push_back(kappa[v]);
            }
            if (!entails(t, HornFormula::compacted(s.var_names, {premise}, image))) {
                return false;
            }
        }
        return true;
    };

    // ok[c][l]: candidate c works for the l-th label tuple.
    std::vector<std::vector<bool>> ok(candidates.size());
    std::size_t tuples = 0;
    for_each_label_tuple(group, k, [&](const std::vector<SymbolId>& labels) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            ok[c].push_back(works(candidates[c], labels));
        }
        ++tuples;
    });
    bool every_tuple = true;
    for (std::size_t l = 0; l < tuples; ++l) {
        std::optional<std::size_t> first;
        for (std::size_t c = 0; c < candidates.size() && !first; ++c) {
            if (ok[c][l]) {
                first = c;
            }
        }
        if (!first) {
            every_tuple = false;
            r.kappas.clear();
            break;
        }
        r.kappas.push_back(candidates[*first]);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::all_of(ok[c].begin(), ok[c].end(), [](bool b) { return b; })) {
            r.uniform = true;
            r.kappa = candidates[c];
            break;
        }
    }
    r.safe = r.meet_equation && every_tuple;
    r.very_safe = r.safe && within;
    return r;
}

SchematicClassification classify_schematic_theory(const Theory& t) {
    require_heyting(t, "classify_schematic_theory");
    const auto& sig = t.signature();
    for (const auto& ax : t.axioms()) {
        if (!ax.has_equality() && !is_base_axiom(ax, sig)) {
            throw Error("classify_schematic_theory: axiom '" + ax.to_string(sig) +
                        "' is neither a base axiom, a schema instance nor an equality axiom");
        }
    }
    if (!t.includes_base()) {
        for (const auto& ax : base_axioms(sig)) {
            if (!entails(t, ax)) {
                throw Error("classify_schematic_theory: theory does not contain the base theory");
            }
        }
    }
    SchematicClassification c;
    c.has_equality = t.has_equality_axiom();
    for (const auto& s : t.schemas()) {
        auto r = is_schema_safe(s, t);
        c.all_safe = c.all_safe && r.safe;
        c.all_very_safe = c.all_very_safe && r.very_safe;
        c.schemas.push_back(std::move(r));
    }
    c.cartesian_closed = c.all_safe;
    c.locally_cartesian_closed = c.all_very_safe;
    c.quasitopos = c.all_very_safe && !c.has_equality;
    if (c.all_very_safe) {
        c.advisories.emplace_back("all schemas very safe => locally cartesian closed");
    } else if (c.all_safe) {
        c.advisories.emplace_back("all schemas safe => cartesian closed");
    } else {
        c.advisories.emplace_back("some schema is not safe; closure undecided");
    }
    if (c.quasitopos) {
        c.advisories.emplace_back("very safe and without equality => quasitopos (topological universe)");
    } else if (c.all_very_safe) {
        c.advisories.emplace_back("equality axiom present: quasitopos verdict withheld");
    }
    return c;
}

} // namespace relhorn
