#include "relhorn/vgraph.hpp"

#include "relhorn/error.hpp"
#include "relhorn/semantics.hpp"

namespace relhorn {

namespace {

using Value = Quantale::Value;

void require_laws(const Quantale& v) {
    auto report = check_quantale_laws(v);
    if (!report.passed) {
        std::string w;
        for (const auto& s : report.witness) {
            w += (w.empty() ? "" : ", ") + s;
        }
        throw Error("quantale fails law '" + report.failed_law + "' at (" + w + ")");
    }
}

const Quantale& quantale_of(const Signature& sig) {
    if (!sig.quantale()) {
        throw Error("signature is not quantale-induced");
    }
    return *sig.quantale();
}

HornFormula edge_rule(std::vector<Atom> premises, Atom conclusion, std::size_t vars) {
    static const std::vector<std::string> names{"x", "y", "z"};
    return {std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(vars)), std::move(premises),
            std::move(conclusion)};
}

std::vector<HornFormula> vgph_axioms(const Quantale& v) {
    std::vector<HornFormula> out;
    for (Value a = 0; a < v.size(); ++a) {
        for (Value b = 0; b < v.size(); ++b) {
            if (a != b && v.leq(b, a)) {
                out.push_back(edge_rule({{a, {0, 1}}}, {b, {0, 1}}, 2));
            }
        }
    }
    out.push_back(edge_rule({}, {v.bottom(), {0, 1}}, 2));
    for (Value a = 0; a < v.size(); ++a) {
        for (Value b = a + 1; b < v.size(); ++b) {
            if (v.leq(a, b) || v.leq(b, a)) {
                continue;
            }
            out.push_back(edge_rule({{a, {0, 1}}, {b, {0, 1}}}, {v.join(a, b), {0, 1}}, 2));
        }
    }
    return out;
}

HornFormula unit_loop(const Quantale& v) { return edge_rule({}, {v.unit(), {0, 0}}, 1); }

std::vector<HornFormula> transitivity_instances(const Quantale& v) {
    std::vector<HornFormula> out;
    for (Value a = 0; a < v.size(); ++a) {
        for (Value b = 0; b < v.size(); ++b) {
            out.push_back(edge_rule({{a, {0, 1}}, {b, {1, 2}}}, {v.tensor(a, b), {0, 2}}, 3));
        }
    }
    return out;
}

std::vector<HornFormula> symmetry_instances(const Quantale& v) {
    std::vector<HornFormula> out;
    for (Value a = 0; a < v.size(); ++a) {
        out.push_back(edge_rule({{a, {0, 1}}}, {a, {1, 0}}, 2));
    }
    return out;
}

HornFormula separation(const Quantale& v) {
    return {{"x", "y"}, {{v.unit(), {0, 1}}}, Equality{0, 1}};
}

enum class Level { RGph, Cat, PMet, Met };

Theory generate(const Quantale& v, Level level, std::string* warning) {
    auto sig = signature_of(v);
    static const char* names[] = {"V-RGph", "V-Cat", "PMet_V", "Met_V"};
    const std::string name = names[static_cast<int>(level)];
    if (schematic_path(v)) {
        std::vector<AxiomSchema> schemas;
        std::vector<HornFormula> extra;
        if (level != Level::RGph) {
            schemas.push_back(schemas::generalized_transitivity());
        }
        if (level == Level::PMet || level == Level::Met) {
            schemas.push_back(schemas::symmetry());
        }
        if (level == Level::Met) {
            extra.push_back(separation(v));
        }
        return Theory(sig, std::move(extra), std::move(schemas), true, name);
    }
    if (warning) {
        *warning = name + ": quantale is not Heyting with unit = top; built as a flat instance list";
    }
    auto axioms = vgph_axioms(v);
    axioms.push_back(unit_loop(v));
    if (level != Level::RGph) {
        auto t = transitivity_instances(v);
        axioms.insert(axioms.end(), t.begin(), t.end());
    }
    if (level == Level::PMet || level == Level::Met) {
        auto s = symmetry_instances(v);
        axioms.insert(axioms.end(), s.begin(), s.end());
    }
    if (level == Level::Met) {
        axioms.push_back(separation(v));
    }
    return Theory(sig, std::move(axioms), {}, false, name);
}

} // namespace

SignaturePtr signature_of(const Quantale& v) {
    require_laws(v);
    return make_signature(Signature::quantale_induced(v));
}

bool schematic_path(const Quantale& v) { return is_heyting(v) && v.unit() == v.top(); }

Theory theory_vgph(const Quantale& v) { return Theory(signature_of(v), vgph_axioms(v), {}, false, "V-Gph"); }
Theory theory_vrgph(const Quantale& v, std::string* warning) { return generate(v, Level::RGph, warning); }
Theory theory_vcat(const Quantale& v, std::string* warning) { return generate(v, Level::Cat, warning); }
Theory theory_pmet(const Quantale& v, std::string* warning) { return generate(v, Level::PMet, warning); }
Theory theory_met(const Quantale& v, std::string* warning) { return generate(v, Level::Met, warning); }

VGraph structure_to_vgraph(const Structure& x) {
    const auto& v = quantale_of(x.signature());
    Theory gph(x.signature_ptr(), vgph_axioms(v), {}, false, "V-Gph");
    if (!is_model(x, gph)) {
        throw Error("structure_to_vgraph: structure is not a V-graph model");
    }
    VGraph g{x.carrier(), std::vector<std::vector<Value>>(x.size(), std::vector<Value>(x.size(), v.bottom()))};
    for (ElementId a = 0; a < x.size(); ++a) {
        for (ElementId b = 0; b < x.size(); ++b) {
            std::vector<Value> labels;
            for (Value u = 0; u < v.size(); ++u) {
                if (x.holds(u, {a, b})) {
                    labels.push_back(u);
                }
            }
            g.d[a][b] = v.join_all(labels);
        }
    }
    return g;
}

Structure vgraph_to_structure(const VGraph& g, const SignaturePtr& sig) {
    const auto& v = quantale_of(*sig);
    std::vector<std::vector<ElementId>> flat(sig->size());
    for (ElementId a = 0; a < g.carrier.size(); ++a) {
        for (ElementId b = 0; b < g.carrier.size(); ++b) {
            for (Value u = 0; u < v.size(); ++u) {
                if (v.leq(u, g.d[a][b])) {
                    flat[u].push_back(a);
                    flat[u].push_back(b);
                }
            }
        }
    }
    return {sig, g.carrier, std::move(flat)};
}

bool vgraph_reflexive(const VGraph& g, const Quantale& v) {
    for (std::size_t a = 0; a < g.carrier.size(); ++a) {
        if (!v.leq(v.unit(), g.d[a][a])) {
            return false;
        }
    }
    return true;
}

bool vgraph_transitive(const VGraph& g, const Quantale& v) {
    const auto n = g.carrier.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!v.leq(v.tensor(g.d[a][b], g.d[b][c]), g.d[a][c])) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool vgraph_symmetric(const VGraph& g) {
    for (std::size_t a = 0; a < g.carrier.size(); ++a) {
        for (std::size_t b = 0; b < g.carrier.size(); ++b) {
            if (g.d[a][b] != g.d[b][a]) {
                return false;
            }
        }
    }
    return true;
}

bool vgraph_separated(const VGraph& g, const Quantale& v) {
    for (std::size_t a = 0; a < g.carrier.size(); ++a) {
        for (std::size_t b = 0; b < g.carrier.size(); ++b) {
            if (a != b && v.leq(v.unit(), g.d[a][b])) {
                return false;
            }
        }
    }
    return true;
}

bool is_vfunctor(const VGraph& x, const VGraph& y, const std::vector<ElementId>& h, const Quantale& v) {
    for (std::size_t a = 0; a < x.carrier.size(); ++a) {
        for (std::size_t b = 0; b < x.carrier.size(); ++b) {
            if (!v.leq(x.d[a][b], y.d[h[a]][h[b]])) {
                return false;
            }
        }
    }
    return true;
}

} // namespace relhorn
