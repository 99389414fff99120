#include <doctest.h>

#include "relhorn/closure.hpp"
#include "relhorn/convexity.hpp"
#include "relhorn/error.hpp"
#include "relhorn/families.hpp"
#include "relhorn/schema.hpp"
#include "support.hpp"

using namespace relhorn;
using namespace testing;

namespace {

Morphism as_morphism(const VFunctor& f, const SignaturePtr& sig) {
    return {vgraph_to_structure(f.x, sig), vgraph_to_structure(f.z, sig), f.h};
}

/// The preorder d(a, b) = ⊤ over the single symbol of `psig`.
Structure as_preorder(const VGraph& g, const Quantale& v, const SignaturePtr& psig) {
    std::vector<std::pair<ElementId, ElementId>> es;
    for (ElementId a = 0; a < g.carrier.size(); ++a) {
        for (ElementId b = 0; b < g.carrier.size(); ++b) {
            if (g.d[a][b] == v.top()) {
                es.emplace_back(a, b);
            }
        }
    }
    return binary(psig, g.carrier.size(), es);
}

std::size_t count_schemas(const Theory& t) { return t.schemas().size(); }

} // namespace

TEST_SUITE("schema") {

TEST_CASE("instance expansion") {
    auto b = builtin::boolean();
    auto sig = signature_of(b);
    auto gt = expand_instances(schemas::generalized_transitivity(), *sig);
    CHECK(gt.size() == 4);
    CHECK(expand_instances(schemas::symmetry(), *sig).size() == 2);
    CHECK(expand_instances(schemas::generalized_transitivity(), *signature_of(builtin::chain_meet(3))).size() == 9);
    // σ = ⊗ over the Boolean quantale is ∧.
    for (const auto& inst : gt) {
        auto expect = b.tensor(b.index_of(sig->symbol(inst.labels[0]).name.substr(1)),
                               b.index_of(sig->symbol(inst.labels[1]).name.substr(1)));
        CHECK(sig->symbol(inst.formula.conclusion_atom().symbol).name == "~" + b.name(expect));
    }
    auto one = make_signature(Signature::explicit_order({{"R", 2}}, {}));
    AxiomSchema s = schemas::symmetry();
    s.sigma = AxiomSchema::Projection{0};
    CHECK(expand_instances(s, *one).size() == 1);
    CHECK(sigma_is_monotone(schemas::generalized_transitivity(), *sig));
}

TEST_CASE("schema convexity is the join-inequality condition") {
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3)}) {
        auto t = theory_vcat(v);
        REQUIRE(count_schemas(t) == 1);
        auto sig = t.signature_ptr();
        std::size_t convex = 0;
        auto fs = vfunctors(v, 2);
        for (const auto& f : fs) {
            auto m = as_morphism(f, sig);
            REQUIRE(brute_is_model(m.source, t));
            REQUIRE(brute_is_model(m.target, t));
            bool got = is_schema_convex(m, t).convex;
            CHECK(got == ch_condition_oracle(f.x, f.z, f.h, v));
            CHECK(got == ch_condition_oracle(m));
            convex += got ? 1 : 0;
        }
        CHECK(convex > 0);
    }
}

TEST_CASE("the skipping chain map is not schema convex over the Boolean quantale") {
    auto v = builtin::boolean();
    auto t = theory_vcat(v);
    auto sig = t.signature_ptr();
    auto top = v.top();
    auto bot = v.bottom();
    VGraph two{numbered_carrier(2), {{top, top}, {bot, top}}};
    VGraph three{numbered_carrier(3), {{top, top, top}, {bot, top, top}, {bot, bot, top}}};
    Morphism f{vgraph_to_structure(two, sig), vgraph_to_structure(three, sig), {0, 2}};
    auto r = is_schema_convex(f, t);
    CHECK_FALSE(r.convex);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->x == std::vector<ElementId>{0, 1});
    CHECK_FALSE(ch_condition_oracle(f));
}

TEST_CASE("Boolean bridge to discrete convexity") {
    auto v = builtin::boolean();
    auto t = theory_vcat(v);
    auto pre = theories::preord();
    for (std::size_t n = 0; n <= 3; ++n) {
        std::size_t models = 0;
        for (const auto& m : models_up_to(t, n)) {
            models += m.size() == n ? 1 : 0;
        }
        CHECK(models == brute_preorders(pre.signature_ptr(), n).size());
    }
    for (const auto& f : vfunctors(v, 2)) {
        Morphism m{as_preorder(f.x, v, pre.signature_ptr()), as_preorder(f.z, v, pre.signature_ptr()), f.h};
        REQUIRE(validate_morphism(m));
        CHECK(is_schema_convex(as_morphism(f, t.signature_ptr()), t).convex == is_convex(m, pre).convex);
    }
}

TEST_CASE("the monotone fast path agrees with the full join") {
    SchemaOptions full;
    full.cross_check = true;
    SchemaOptions fast;
    fast.cross_check = false;
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3), builtin::chain3_lukasiewicz()}) {
        auto t = theory_pmet(v);
        auto sig = t.signature_ptr();
        auto xs = models_up_to(t, 2);
        for (const auto& x : xs) {
            for (const auto& z : xs) {
                for (const auto& h : brute_maps(x, z)) {
                    Morphism f{x, z, h};
                    CHECK(is_schema_convex(f, t, full).convex == is_schema_convex(f, t, fast).convex);
                }
            }
            CHECK(is_schema_object_convex(x, t, full).convex == is_schema_object_convex(x, t, fast).convex);
        }
    }
}

TEST_CASE("symmetry is very safe and every map is convex for it") {
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3), builtin::chain3_lukasiewicz()}) {
        auto t = theory_pmet(v);
        auto r = is_schema_safe(schemas::symmetry(), t);
        CHECK(r.meet_equation);
        CHECK(r.safe);
        CHECK(r.very_safe);
        CHECK(r.uniform);
        Theory sym(t.signature_ptr(), {}, {schemas::symmetry()}, true);
        auto xs = models_up_to(sym, 2);
        for (const auto& x : xs) {
            for (const auto& z : xs) {
                for (const auto& h : brute_maps(x, z)) {
                    CHECK(is_schema_convex(Morphism{x, z, h}, sym).convex);
                }
            }
        }
    }
}

TEST_CASE("generalized transitivity: safe for meet, not for truncated addition") {
    auto meet = theory_vcat(builtin::chain_meet(3));
    auto r = is_schema_safe(schemas::generalized_transitivity(), meet);
    CHECK(r.meet_equation);
    CHECK(r.safe);
    CHECK_FALSE(r.very_safe);
    CHECK(r.kappas.size() == 9);
    for (const auto& k : r.kappas) {
        // y collapses onto x or z
        CHECK((k[1] == 0 || k[1] == 2));
    }

    auto luk = builtin::chain3_lukasiewicz();
    auto lt = theory_vcat(luk);
    auto u = is_schema_safe(schemas::generalized_transitivity(), lt);
    CHECK_FALSE(u.meet_equation);
    CHECK_FALSE(u.safe);
    REQUIRE(u.meet_counterexample);
    const auto& c = *u.meet_counterexample;
    const auto& sig = lt.signature();
    // Recompute both sides from the tables.
    auto val = [&](SymbolId s) { return luk.index_of(sig.symbol(s).name.substr(1)); };
    auto r0 = val(c.labels[0]);
    auto r1 = val(c.labels[1]);
    auto s = val(c.s);
    CHECK(val(c.lhs) == luk.tensor(luk.meet(r0, s), luk.meet(r1, s)));
    CHECK(val(c.rhs) == luk.meet(luk.tensor(r0, r1), s));
    CHECK(c.lhs != c.rhs);
}

TEST_CASE("safe schemas make every model object convex") {
    auto t = theory_vcat(builtin::chain_meet(3));
    for (const auto& x : models_up_to(t, 2)) {
        CHECK(is_schema_object_convex(x, t).convex);
    }
    auto one = models_up_to(theory_vcat(builtin::chain3_lukasiewicz()), 1);
    for (const auto& x : one) {
        if (x.size() == 1) {
            CHECK(is_schema_object_convex(x, theory_vcat(builtin::chain3_lukasiewicz())).convex);
        }
    }
}

TEST_CASE("safety does not make every V-functor convex") {
    auto v = builtin::chain_meet(3);
    auto t = theory_vcat(v);
    auto sig = t.signature_ptr();
    auto top = v.top();
    // The point into an indiscrete pair: the second element's fibre is empty.
    VGraph point{numbered_carrier(1), {{top}}};
    VGraph pair{numbered_carrier(2), {{top, top}, {top, top}}};
    Morphism f{vgraph_to_structure(point, sig), vgraph_to_structure(pair, sig), {0}};
    CHECK_FALSE(is_schema_convex(f, t).convex);
    CHECK_FALSE(ch_condition_oracle(f));
    CHECK(is_schema_object_convex(f.target, t).convex);
}

TEST_CASE("schema-convex maps give model-valued, verified partial products") {
    auto v = builtin::boolean();
    auto t = theory_vcat(v);
    auto sig = t.signature_ptr();
    auto family = model_family(t, 2);
    auto ys = model_family(t, 2);
    std::size_t checked = 0;
    for (const auto& f : vfunctors(v, 2)) {
        auto m = as_morphism(f, sig);
        if (!is_schema_convex(m, t).convex) {
            continue;
        }
        for (const auto& y : ys) {
            auto pp = partial_product_refl(y, m);
            CHECK(brute_is_model(pp.object, t));
            CHECK(verify_partial_product(pp, family).passed);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("schematic classification") {
    auto pmet = classify_schematic_theory(theory_pmet(builtin::chain_meet(3)));
    CHECK(pmet.all_safe);
    CHECK_FALSE(pmet.all_very_safe);
    CHECK(pmet.cartesian_closed);
    CHECK_FALSE(pmet.locally_cartesian_closed);

    auto rgph = classify_schematic_theory(theory_vrgph(builtin::chain_meet(3)));
    CHECK(rgph.schemas.empty());
    CHECK(rgph.all_very_safe);
    CHECK(rgph.locally_cartesian_closed);
    CHECK(rgph.quasitopos);

    auto met = theory_met(builtin::chain_meet(3));
    CHECK(met.has_equality_axiom());
    auto cm = classify_schematic_theory(met);
    CHECK(cm.has_equality);
    CHECK_FALSE(cm.quasitopos);
    CHECK(cm.cartesian_closed);

    auto luk = classify_schematic_theory(theory_vcat(builtin::chain3_lukasiewicz()));
    CHECK_FALSE(luk.all_safe);
    CHECK_FALSE(luk.cartesian_closed);
    CHECK_FALSE(luk.advisories.empty());
}

TEST_CASE("schema preconditions") {
    auto pre = theories::preord();
    CHECK_THROWS_AS((void)classify_schematic_theory(pre), Error);
    auto sig = pre.signature_ptr();
    CHECK_THROWS_AS((void)is_schema_convex(identity_morphism(chain(sig, 2)), pre), Error);
}

} // TEST_SUITE
