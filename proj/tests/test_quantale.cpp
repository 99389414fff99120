#include <doctest.h>

#include "relhorn/error.hpp"
#include "relhorn/families.hpp"
#include "relhorn/json_io.hpp"
#include "relhorn/semantics.hpp"
#include "support.hpp"

using namespace relhorn;
using namespace testing;

namespace {

std::vector<Quantale> builtins() {
    return {builtin::boolean(), builtin::chain_meet(3), builtin::chain3_lukasiewicz()};
}

} // namespace

TEST_SUITE("quantale") {

TEST_CASE("builtins satisfy the laws") {
    for (const auto& v : builtins()) {
        auto r = check_quantale_laws(v);
        CHECK(r.passed);
        CHECK(r.failed_law.empty());
        CHECK(is_heyting(v));
        CHECK(is_total_order(v));
    }
    auto l = builtin::chain3_lukasiewicz();
    CHECK(l.tensor(1, 1) == 0);
    CHECK(l.meet(1, 1) == 1);
    CHECK(l.unit() == l.top());
}

TEST_CASE("every single-cell mutation of a builtin is caught or harmless") {
    for (const auto& v : builtins()) {
        for (Quantale::Value a = 0; a < v.size(); ++a) {
            for (Quantale::Value b = 0; b < v.size(); ++b) {
                for (Quantale::Value c = 0; c < v.size(); ++c) {
                    if (c == v.tensor(a, b)) {
                        continue;
                    }
                    auto r = check_quantale_laws(v.with_tensor_cell(a, b, c));
                    // Changing one off-diagonal cell breaks commutativity.
                    if (a != b) {
                        CHECK_FALSE(r.passed);
                        CHECK_FALSE(r.commutative);
                    }
                    if (!r.passed) {
                        CHECK_FALSE(r.failed_law.empty());
                        CHECK_FALSE(r.witness.empty());
                    }
                }
            }
        }
    }
    auto mutated = json::parse_quantale(json::read_file(data("chain3-meet-mutated.quantale.json")));
    auto r = check_quantale_laws(mutated);
    CHECK_FALSE(r.passed);
    CHECK(r.failed_law == "commutativity");
    CHECK_FALSE(r.witness.empty());
    CHECK_THROWS_AS((void)signature_of(mutated), Error);
}

TEST_CASE("order and lattice checks") {
    // Diamond {0, a, b, 1} with ⊗ = ∧ is Heyting but not total.
    Quantale diamond({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}},
                     {{"0", "0", "0", "0"}, {"0", "a", "0", "a"}, {"0", "0", "b", "b"}, {"0", "a", "b", "1"}}, "1");
    CHECK(check_quantale_laws(diamond).passed);
    CHECK(is_heyting(diamond));
    CHECK_FALSE(is_total_order(diamond));
    // M3 is a lattice that is not distributive.
    std::vector<std::string> m3{"0", "a", "b", "c", "1"};
    std::vector<std::vector<std::string>> table(5, std::vector<std::string>(5));
    std::vector<std::pair<std::string, std::string>> leq;
    for (const char* x : {"a", "b", "c"}) {
        leq.emplace_back("0", x);
        leq.emplace_back(x, "1");
    }
    Quantale probe(m3, leq, std::vector<std::vector<std::string>>(5, std::vector<std::string>(5, "0")), "1");
    for (Quantale::Value i = 0; i < 5; ++i) {
        for (Quantale::Value j = 0; j < 5; ++j) {
            table[i][j] = m3[probe.meet(i, j)];
        }
    }
    Quantale m3q(m3, leq, table, "1");
    CHECK(m3q.is_lattice());
    CHECK_FALSE(is_heyting(m3q));
    CHECK(check_quantale_laws(m3q).passed == false);
    // Two incomparable elements: not a lattice.
    Quantale anti({"a", "b"}, {}, {{"a", "a"}, {"a", "b"}}, "b");
    CHECK_FALSE(check_quantale_laws(anti).passed);
    CHECK_FALSE(check_quantale_laws(anti).lattice);
}

TEST_CASE("V-graph round trip") {
    for (const auto& v : builtins()) {
        auto t = theory_vgph(v);
        auto sig = t.signature_ptr();
        for (const auto& x : models_up_to(t, 2)) {
            auto g = structure_to_vgraph(x);
            CHECK(vgraph_to_structure(g, sig) == x);
        }
        for (std::size_t n = 1; n <= 2; ++n) {
            for (const auto& g : brute_vcats(v, n)) {
                CHECK(structure_to_vgraph(vgraph_to_structure(g, sig)) == g);
            }
        }
    }
}

TEST_CASE("V-category models biject with distance tables") {
    for (const auto& v : builtins()) {
        auto t = theory_vcat(v);
        for (std::size_t n = 0; n <= 2; ++n) {
            std::size_t models = 0;
            for (const auto& m : models_up_to(t, n)) {
                if (m.size() != n) {
                    continue;
                }
                ++models;
                CHECK(brute_is_model(m, t));
                auto g = structure_to_vgraph(m);
                CHECK(vgraph_reflexive(g, v));
                CHECK(vgraph_transitive(g, v));
            }
            CHECK(models == brute_vcats(v, n).size());
        }
    }
    // Over the Boolean quantale these are the preorders: 1, 1, 4, 29.
    auto b = theory_vcat(builtin::boolean());
    std::vector<std::size_t> expected{1, 1, 4, 29};
    for (std::size_t n = 0; n <= 3; ++n) {
        std::size_t models = 0;
        for (const auto& m : models_up_to(b, n)) {
            models += m.size() == n ? 1 : 0;
        }
        CHECK(models == expected[n]);
    }
}

TEST_CASE("generated theories") {
    for (const auto& v : builtins()) {
        auto pmet = theory_pmet(v);
        auto met = theory_met(v);
        CHECK_FALSE(pmet.has_equality_axiom());
        CHECK(met.has_equality_axiom());
        std::size_t eq = 0;
        for (const auto& ax : met.all_axioms()) {
            eq += ax.has_equality() ? 1 : 0;
        }
        CHECK(eq == 1);
        CHECK(met.all_axioms().size() == pmet.all_axioms().size() + 1);
        CHECK(schematic_path(v));
        CHECK(theory_vcat(v).schemas().size() == 1);
        CHECK(pmet.schemas().size() == 2);
        CHECK(theory_vrgph(v).schemas().empty());
        // Models of the generators are the expected V-graphs.
        for (const auto& m : models_up_to(pmet, 2)) {
            auto g = structure_to_vgraph(m);
            CHECK(vgraph_symmetric(g));
            CHECK(vgraph_transitive(g, v));
        }
        for (const auto& m : models_up_to(met, 2)) {
            CHECK(vgraph_separated(structure_to_vgraph(m), v));
        }
    }
}

TEST_CASE("unit below top leaves the schematic path") {
    // ({0,1,2}, max(0, a+b-1)-style tensor with unit 1): unit is not top.
    Quantale v({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}},
               {{"0", "0", "0"}, {"0", "1", "2"}, {"0", "2", "2"}}, "1");
    REQUIRE(check_quantale_laws(v).passed);
    CHECK_FALSE(schematic_path(v));
    std::string warning;
    auto t = theory_vcat(v, &warning);
    CHECK(t.schemas().empty());
    CHECK_FALSE(warning.empty());
    for (std::size_t n = 1; n <= 2; ++n) {
        std::size_t models = 0;
        for (const auto& m : models_up_to(t, n)) {
            models += m.size() == n ? 1 : 0;
        }
        CHECK(models == brute_vcats(v, n).size());
    }
}

TEST_CASE("V-functors are the morphisms of the models") {
    for (const auto& v : builtins()) {
        auto sig = signature_of(v);
        std::vector<VGraph> cats;
        for (std::size_t n = 1; n <= 2; ++n) {
            for (auto& g : brute_vcats(v, n)) {
                cats.push_back(g);
            }
        }
        for (const auto& x : cats) {
            for (const auto& y : cats) {
                auto sx = vgraph_to_structure(x, sig);
                auto sy = vgraph_to_structure(y, sig);
                for_each_function(x.carrier.size(), y.carrier.size(), [&](const std::vector<ElementId>& h) {
                    bool functor = brute_vfunctor(x, y, h, v);
                    CHECK(functor == is_vfunctor(x, y, h, v));
                    CHECK(functor == brute_preserves(sx, sy, h));
                });
            }
        }
    }
}

} // TEST_SUITE
