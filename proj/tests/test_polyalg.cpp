#include <doctest.h>

#include "chowfm/errors.hpp"
#include "chowfm/polyalg.hpp"
#include "test_support.hpp"

using namespace chowfm;

namespace {

VarTablePtr table_hE(int cap = 4) {
    return std::make_shared<const VarTable>(std::vector<Variable>{{"h", 1, cap}, {"E", 1, 0}});
}

ChernPoly random_chern(std::mt19937& rng, const VarTablePtr& vars, int degree) {
    std::vector<Poly> c;
    for (int l = 0; l <= degree; ++l) c.push_back(testing::random_homogeneous(rng, vars, degree - l, 3));
    c[static_cast<std::size_t>(degree)] = Poly::constant(vars, 1);
    return ChernPoly(c, degree);
}

Poly naive_eval(const ChernPoly& p, const Poly& s) {
    Poly out(p.vars());
    for (int l = 0; l <= p.degree(); ++l) out += p.coefficient(l) * pow(s, l);
    return out;
}

} // namespace

TEST_CASE("variable table for points") {
    auto vars = VarTable::for_points(3, 2, {{1, 2}, {1, 2, 3}});
    REQUIRE(vars->size() == 5);
    CHECK((*vars)[0] == Variable{"h1", 1, 3});
    CHECK((*vars)[3].name == "D{1,2}");
    CHECK((*vars)[4].name == "D{1,2,3}");
    CHECK(vars->index_of("h3") == 2);
    CHECK_FALSE(vars->find("h4"));
    CHECK_THROWS_AS(vars->index_of("x"), StructuralError);
    CHECK_THROWS_AS(vars->with_appended({"h1", 1, 0}), StructuralError);
    CHECK(vars->with_appended({"E", 1, 0})->size() == 6);
}

TEST_CASE("graded lex order and printing") {
    auto vars = table_hE(0);
    const Poly h = Poly::variable(vars, "h");
    const Poly E = Poly::variable(vars, "E");
    CHECK((E * E - 2 * h * E + h * h).to_string() == "E^2 - 2*h*E + h^2");
    CHECK((h + E).to_string() == "E + h");
    CHECK((h * h * h + E).to_string() == "h^3 + E");
    CHECK(Poly(vars).to_string() == "0");
    CHECK((-h).to_string() == "-h");
    CHECK((E - 3 * Poly::constant(vars, 1)).to_string() == "E - 3");
}

TEST_CASE("caps annihilate") {
    auto vars = table_hE(3);
    const Poly h = Poly::variable(vars, "h");
    CHECK(pow(h, 3).is_zero());
    CHECK_FALSE(pow(h, 2).is_zero());
    CHECK((pow(h, 2) * (h + Poly::variable(vars, "E"))).to_string() == "h^2*E");
}

TEST_CASE("degree and homogeneity") {
    auto vars = table_hE(0);
    const Poly h = Poly::variable(vars, "h");
    CHECK(Poly(vars).degree() == -1);
    CHECK(Poly(vars).is_homogeneous_of(7));
    CHECK((h * h + h).degree() == 2);
    CHECK_FALSE((h * h + h).is_homogeneous());
    CHECK(Poly::constant(vars, 5).is_homogeneous_of(0));
}

TEST_CASE("mixing tables is a structural error") {
    const Poly a = Poly::variable(table_hE(4), "h");
    const Poly b = Poly::variable(table_hE(3), "h");
    CHECK_THROWS_AS(a + b, StructuralError);
    // Equal tables behind different pointers are interchangeable.
    CHECK(Poly::variable(table_hE(), "h") + Poly::variable(table_hE(), "E") == Poly::variable(table_hE(), "E") + a);
}

TEST_CASE("property: ring axioms") {
    std::mt19937 rng(11);
    auto vars = VarTable::for_points(2, 2, {{1, 2}});
    for (int trial = 0; trial < 150; ++trial) {
        const Poly a = testing::random_poly(rng, vars, 3, 4);
        const Poly b = testing::random_poly(rng, vars, 3, 4);
        const Poly c = testing::random_poly(rng, vars, 2, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
        CHECK((a - a).is_zero());
        CHECK((a.sign_normalized() == a || a.sign_normalized() == -a));
        CHECK(pow(a, 2) == a * a);
        std::vector<Poly> identity;
        for (std::size_t i = 0; i < vars->size(); ++i) identity.push_back(Poly::variable(vars, i));
        CHECK(substitute(a, identity) == a);
    }
}

TEST_CASE("property: substitution is a ring map") {
    std::mt19937 rng(12);
    auto src = table_hE(0);
    auto dst = VarTable::for_points(2, 3, {{1, 2}});
    for (int trial = 0; trial < 60; ++trial) {
        const std::vector<Poly> images{testing::random_homogeneous(rng, dst, 1, 3),
                                       testing::random_homogeneous(rng, dst, 1, 3)};
        const Poly a = testing::random_poly(rng, src, 3, 3);
        const Poly b = testing::random_poly(rng, src, 3, 3);
        CHECK(substitute(a * b, images) == substitute(a, images) * substitute(b, images));
        CHECK(substitute(a + b, images) == substitute(a, images) + substitute(b, images));
    }
}

TEST_CASE("rebase by name") {
    auto small = table_hE(0);
    auto big = std::make_shared<const VarTable>(std::vector<Variable>{{"E", 1, 0}, {"x", 1, 0}, {"h", 1, 0}});
    const Poly p = pow(Poly::variable(small, "h"), 2) - Poly::variable(small, "E");
    const Poly q = rebase(p, big);
    CHECK(q == pow(Poly::variable(big, "h"), 2) - Poly::variable(big, "E"));
    CHECK_THROWS_AS(rebase(Poly::variable(big, "x"), small), StructuralError);
}

TEST_CASE("Chern polynomial validation") {
    auto vars = table_hE(0);
    const Poly h = Poly::variable(vars, "h");
    const Poly one = Poly::constant(vars, 1);
    CHECK_NOTHROW(ChernPoly({h * h, h, one}, 2));
    CHECK_THROWS_AS(ChernPoly({h, h, one}, 2), DegreeError);
    CHECK_THROWS_AS(chern_eval(ChernPoly({h * h, h, one}, 2), h * h), DegreeError);
}

TEST_CASE("property: chern_eval agrees with naive evaluation") {
    std::mt19937 rng(13);
    auto vars = table_hE(0);
    for (int trial = 0; trial < 100; ++trial) {
        const ChernPoly p = random_chern(rng, vars, 1 + trial % 4);
        const Poly s = testing::random_homogeneous(rng, vars, 1, 2);
        CHECK(chern_eval(p, s) == naive_eval(p, s));
    }
}

TEST_CASE("property: chern_shift laws") {
    std::mt19937 rng(14);
    auto vars = table_hE(0);
    for (int trial = 0; trial < 100; ++trial) {
        const ChernPoly p = random_chern(rng, vars, 1 + trial % 3);
        const Poly u = testing::random_homogeneous(rng, vars, 1, 2);
        const Poly v = testing::random_homogeneous(rng, vars, 1, 2);
        const Poly x = testing::random_homogeneous(rng, vars, 1, 2);
        const Poly zero(vars);
        CHECK(chern_shift(p, zero, 1) == p);
        CHECK(chern_shift(chern_shift(p, zero, -1), zero, -1) == p);
        CHECK(chern_shift(chern_shift(p, u, 1), v, 1) == chern_shift(p, u + v, 1));
        for (int sign : {1, -1}) {
            CHECK(chern_eval(chern_shift(p, u, sign), x) == chern_eval(p, Integer(sign) * x + u));
        }
    }
}

TEST_CASE("Chern product multiplies evaluations") {
    std::mt19937 rng(15);
    auto vars = table_hE(0);
    for (int trial = 0; trial < 40; ++trial) {
        const ChernPoly a = random_chern(rng, vars, 2);
        const ChernPoly b = random_chern(rng, vars, 1);
        const Poly s = testing::random_homogeneous(rng, vars, 1, 2);
        CHECK((a * b).degree() == 3);
        CHECK(chern_eval(a * b, s) == chern_eval(a, s) * chern_eval(b, s));
    }
}

TEST_CASE("presentation normalization") {
    auto vars = table_hE(4);
    const Poly h = Poly::variable(vars, "h");
    const Poly E = Poly::variable(vars, "E");
    const Presentation p(vars, {E * E - 2 * h * E + h * h, h * h * E, Poly(vars), -(h * h * E)}, 3);
    REQUIRE(p.relations().size() == 2);
    CHECK(p.relations()[0].to_string() == "E^2 - 2*h*E + h^2");
    CHECK(p.dump() == "vars:\nh deg 1 cap 4\nE deg 1\ntop_degree: 3\nrel: E^2 - 2*h*E + h^2\nrel: h^2*E\n");
    CHECK_THROWS_AS(Presentation(vars, {h * h + E}, 3), DegreeError);

    const std::string m2 = p.cas_script();
    CHECK(m2.find("R = QQ[h, E, Degrees => {1, 1}];") != std::string::npos);
    CHECK(m2.find("h^4") != std::string::npos);
    CHECK(m2.find("hilbertFunction") != std::string::npos);
}

TEST_CASE("M2 identifiers for divisor names") {
    auto vars = VarTable::for_points(2, 1, {{1, 2}});
    const Presentation p(vars, {Poly::variable(vars, "D{1,2}") * Poly::variable(vars, "h1")}, 2);
    const std::string m2 = p.cas_script();
    CHECK(m2.find("-- D_1_2 = D{1,2}") != std::string::npos);
    CHECK(m2.find("R = QQ[h1, h2, D_1_2, Degrees => {1, 1, 1}];") != std::string::npos);
}
