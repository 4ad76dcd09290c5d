#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "subnorm/lifting.hpp"

using namespace subnorm;
using testing::chain;
using testing::constant_family;

namespace {

GeneratedExample delta2_chain(unsigned depth) {
    return generate_fixed_point_example({AtomicMeasure::dirac(Rat(2)), Rat(1), depth});
}

}  // namespace

TEST_CASE("product space construction") {
    SUBCASE("unit family copies the base") {
        MeasureSpace s({0, 1}, {{0, Rat(2)}, {1, Rat(3)}});
        SelfMap id(s, {{0, 0}, {1, 1}});
        Lift lift = build_lift(s, id, constant_family(s, AtomicMeasure::dirac(Rat(1))));
        REQUIRE(lift.product.points().size() == 2);
        for (PointId x : s.points()) {
            ProductPoint p{x, Rat(1)};
            CHECK(lift.product.rho(p) == s.mass(x));
            CHECK(lift.map.image(p) == p);
        }
    }
    SUBCASE("chain with the delta_2 family") {
        auto ex = delta2_chain(5);
        Lift lift = build_lift(ex.space, ex.map, ex.family, ex.boundary);
        for (PointId x : ex.space.points())
            CHECK(lift.product.rho({x, Rat(2)}) == ex.space.mass(x));
    }
    SUBCASE("mixed measure splits the fiber") {
        MeasureSpace s({0}, {{0, Rat(4)}});
        SelfMap id(s, {{0, 0}});
        AtomicMeasure mix({{Rat(1), Rat(1, 2)}, {Rat(2), Rat(1, 2)}});
        Lift lift = build_lift(s, id, constant_family(s, mix));
        CHECK(lift.product.rho({0, Rat(1)}) == Rat(2));
        CHECK(lift.product.rho({0, Rat(2)}) == Rat(2));
    }
}

TEST_CASE("rho mass conservation") {
    auto ex = delta2_chain(7);
    Lift lift = build_lift(ex.space, ex.map, ex.family, ex.boundary);
    CHECK(lift.product.total_mass() == ex.space.total_mass());
}

TEST_CASE("lifted derivative equals the atom") {
    MeasureSpace s({0, 1}, {{0, Rat(1)}, {1, Rat(5)}});
    SelfMap id(s, {{0, 0}, {1, 1}});
    Lift unit = build_lift(s, id, constant_family(s, AtomicMeasure::dirac(Rat(1))));
    CHECK(verify_lift_derivative(s, unit).ok);

    auto ex = delta2_chain(6);
    Lift lift = build_lift(ex.space, ex.map, ex.family, ex.boundary);
    CHECK(verify_lift_derivative(ex.space, lift).ok);
    CHECK(verify_lift_quasinormal(ex.space, lift).ok);
}

TEST_CASE("CC violation shows up in the lift") {
    auto ex = delta2_chain(6);
    auto broken = ex.family.measures();
    broken[0] = AtomicMeasure::dirac(Rat(3));
    Family bad(broken);
    REQUIRE_FALSE(verify_cc(ex.space, ex.map, bad, ex.boundary).ok);
    Lift lift = build_lift(ex.space, ex.map, bad, ex.boundary);
    auto r = verify_lift_derivative(ex.space, lift);
    CHECK_FALSE(r.ok);
    CHECK(r.witness.has_value());
}

TEST_CASE("quasinormality and derivative across seed families") {
    std::vector<GeneratorSpec> specs = {
        {AtomicMeasure::dirac(Rat(2)), Rat(1), 8},
        {AtomicMeasure::dirac(Rat(2)), Rat(1, 2), 8},
        {AtomicMeasure({{Rat(2), Rat(1, 2)}, {Rat(3), Rat(1, 2)}}), Rat(1), 8},
        {AtomicMeasure({{Rat(3), Rat(1, 3)}, {Rat(5), Rat(2, 3)}}), Rat(1, 2), 8},
        {AtomicMeasure::dirac(Rat(3, 2)), Rat(1, 2), 8},
        {AtomicMeasure({{Rat(2), Rat(1, 4)}, {Rat(4), Rat(3, 4)}}), Rat(1, 4), 8},
    };
    for (const auto& spec : specs) {
        auto ex = generate_fixed_point_example(spec);
        REQUIRE(verify_cc(ex.space, ex.map, ex.family, ex.boundary).ok);
        Lift lift = build_lift(ex.space, ex.map, ex.family, ex.boundary);
        CHECK(verify_lift_derivative(ex.space, lift).ok);
        CHECK(verify_lift_quasinormal(ex.space, lift).ok);
    }
}

TEST_CASE("pullback embedding is isometric") {
    auto ex = delta2_chain(6);
    Lift lift = build_lift(ex.space, ex.map, ex.family, ex.boundary);
    std::map<PointId, Rat> f;
    for (PointId x : ex.space.points()) f[x] = Rat(static_cast<long>(x) % 3 + 1, 2);
    Rat base = 0;
    for (PointId x : ex.space.points()) base += f[x] * f[x] * ex.space.mass(x);
    Rat lifted = 0;
    for (const auto& p : lift.product.points())
        lifted += f[p.x] * f[p.x] * lift.product.rho(p);
    CHECK(base == lifted);
    // the lifted map composes with the pullback exactly as the base map
    for (const auto& p : lift.product.points())
        CHECK(f[lift.map.image(p).x] == f[ex.map.image(p.x)]);
}
