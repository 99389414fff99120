#include <doctest.h>

#include "relhorn/error.hpp"
#include "relhorn/families.hpp"
#include "relhorn/limits.hpp"
#include "relhorn/semantics.hpp"
#include "support.hpp"

using namespace relhorn;
using namespace testing;

namespace {

/// Number of u : Q → L with first∘u = a and second∘u = b.
std::size_t mediators(const ProductResult& l, const Structure& q, const std::vector<ElementId>& a,
                      const std::vector<ElementId>& b) {
    std::size_t n = 0;
    for (const auto& u : brute_maps(q, l.object)) {
        bool ok = true;
        for (ElementId e = 0; e < q.size() && ok; ++e) {
            ok = l.first(u[e]) == a[e] && l.second(u[e]) == b[e];
        }
        n += ok ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_SUITE("limits") {

TEST_CASE("terminal") {
    auto pre = theories::preord();
    auto one = terminal(pre.signature_ptr());
    CHECK(one.size() == 1);
    CHECK(one.holds(0, {0, 0}));
    auto empty = make_signature(Signature::discrete({}));
    CHECK(terminal(empty).size() == 1);
    CHECK(terminal(empty).edge_count() == 0);
    auto b = terminal(signature_of(builtin::boolean()));
    CHECK(b.edge_count() == 2);
}

TEST_CASE("products") {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto two = chain(sig, 2);
    auto p = product(two, two);
    CHECK(p.object.size() == 4);
    CHECK(p.object.edge_count() == 9);
    CHECK(is_model(p.object, t).ok);
    auto one = product(two, terminal(sig));
    CHECK(isomorphic(one.object, two));
    for (const auto& x : structure_family(sig, 2)) {
        for (const auto& y : structure_family(sig, 2)) {
            CHECK(product(x, y).object.edge_count() == x.edge_count() * y.edge_count());
            CHECK(product(x, y).object.size() == x.size() * y.size());
        }
    }
}

TEST_CASE("pullbacks and fibres") {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto two = chain(sig, 2);
    auto three = chain(sig, 3);
    Morphism f{two, three, {0, 2}};
    auto id = identity_morphism(three);
    CHECK(isomorphic(pullback(f, id).object, two));
    auto one = terminal(sig);
    CHECK(pullback(to_terminal(two), to_terminal(three)).object == product(two, three).object);
    CHECK(fibre(f, 1).empty());
    CHECK(fibre_structure(f, 1).size() == 0);
    CHECK(fibre_structure(Morphism{three, one, {0, 0, 0}}, 0) == three);
    for (ElementId z = 0; z < 3; ++z) {
        Morphism point{one, three, {z}};
        auto pb = pullback(f, point);
        auto fib = fibre_structure(f, z);
        CHECK(pb.object.size() == fib.size());
        CHECK(pb.object.edge_count() == fib.edge_count());
    }
    auto id3 = identity_morphism(three);
    for (ElementId z = 0; z < 3; ++z) {
        CHECK(fibre_structure(id3, z).size() == 1);
    }
    CHECK_THROWS_AS((void)pullback(f, identity_morphism(two)), Error);
    CHECK_THROWS_AS((void)fibre_structure(f, 7), Error);
}

TEST_CASE("morphism enumeration") {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto two = chain(sig, 2);
    CHECK(count_morphisms(two, two) == 3);
    CHECK(enumerate_morphisms(two, two, &t).size() == 3);
    auto one = terminal(sig);
    for (const auto& x : models_up_to(t, 3)) {
        CHECK(count_morphisms(one, x) == x.size());
        CHECK(count_morphisms(x, one) == 1);
    }
    CHECK_THROWS_AS((void)enumerate_morphisms(binary(sig, 1, {}), two, &t), Error);
}

TEST_CASE("serial and parallel enumeration agree with brute force") {
    auto sig = theories::empty_binary().signature_ptr();
    auto xs = structure_family(sig, 3, {true, 40, 11});
    for (const auto& x : xs) {
        for (const auto& y : xs) {
            auto expected = brute_maps(x, y);
            CHECK(enumerate_maps(x, y) == expected);
            CHECK(enumerate_maps_parallel(x, y) == expected);
        }
    }
}

TEST_CASE("equalizers") {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto three = chain(sig, 3);
    auto id = identity_morphism(three);
    CHECK(equalizer(id, id).object == three);
    auto one = terminal(sig);
    CHECK(equalizer(to_terminal(three), to_terminal(three)).object.size() == 3);
    Morphism constant{three, three, {1, 1, 1}};
    auto e = equalizer(id, constant);
    CHECK(e.object.size() == 1);
    CHECK(e.inclusion.map == std::vector<ElementId>{1});
    CHECK(e.object.holds(0, {0, 0}));
    CHECK_THROWS_AS((void)equalizer(id, Morphism{one, three, {0}}), Error);
}

TEST_CASE("universal properties of products and pullbacks") {
    auto t = theories::pos();
    auto sig = t.signature_ptr();
    auto family = model_family(t, 2);
    auto small = model_family(t, 2);
    for (const auto& x : small) {
        for (const auto& y : small) {
            auto p = product(x, y);
            CHECK(brute_is_model(p.object, t));
            for (const auto& q : family) {
                for (const auto& a : brute_maps(q, x)) {
                    for (const auto& b : brute_maps(q, y)) {
                        CHECK(mediators(p, q, a, b) == 1);
                    }
                }
            }
        }
    }
    auto three = chain(sig, 3);
    auto two = chain(sig, 2);
    for (const auto& fm : brute_maps(two, three)) {
        for (const auto& gm : brute_maps(two, three)) {
            Morphism f{two, three, fm};
            Morphism g{two, three, gm};
            auto pb = pullback(f, g);
            CHECK(brute_is_model(pb.object, t));
            for (const auto& q : family) {
                for (const auto& a : brute_maps(q, two)) {
                    for (const auto& b : brute_maps(q, two)) {
                        bool commutes = true;
                        for (ElementId e = 0; e < q.size(); ++e) {
                            commutes = commutes && fm[a[e]] == gm[b[e]];
                        }
                        CHECK(mediators(pb, q, a, b) == (commutes ? 1U : 0U));
                    }
                }
            }
        }
    }
}

TEST_CASE("universal property of equalizers") {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto three = chain(sig, 3);
    auto family = model_family(t, 2);
    for (const auto& fm : brute_maps(three, three)) {
        Morphism f{three, three, fm};
        Morphism g = identity_morphism(three);
        auto e = equalizer(f, g);
        for (const auto& q : family) {
            for (const auto& a : brute_maps(q, three)) {
                bool equalizes = true;
                for (ElementId x = 0; x < q.size(); ++x) {
                    equalizes = equalizes && fm[a[x]] == a[x];
                }
                std::size_t n = 0;
                for (const auto& u : brute_maps(q, e.object)) {
                    bool ok = true;
                    for (ElementId x = 0; x < q.size(); ++x) {
                        ok = ok && e.inclusion(u[x]) == a[x];
                    }
                    n += ok ? 1 : 0;
                }
                CHECK(n == (equalizes ? 1U : 0U));
            }
        }
    }
}

} // TEST_SUITE
