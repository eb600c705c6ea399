#include <doctest.h>

#include <random>

#include "coho/linalg.hpp"
#include "coho/rational.hpp"

using namespace coho;

TEST_CASE("rational arithmetic normalizes and stays exact") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(1, 3) * Rat(3, 7)) == Rat(1, 7));
    CHECK((Rat(1, 3) - Rat(1, 3)).is_zero());
    CHECK((Rat(5, 3) / Rat(5, 3)) == Rat(1));
    CHECK(Rat(7, 2).str() == "7/2");
    CHECK(Rat::parse("-3/9") == Rat(-1, 3));
    CHECK(Rat::parse("12") == Rat(12));
    CHECK_THROWS_AS(Rat(1, 0), error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), error);
    CHECK_THROWS_AS(Rat(1, 2).as_integer(), error);
}

TEST_CASE("rational field laws on random samples") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> d(-50, 50);
    auto draw = [&] {
        std::int64_t den = 0;
        while (den == 0) den = d(rng);
        return Rat(d(rng), den);
    };
    for (int i = 0; i < 500; ++i) {
        Rat a = draw(), b = draw(), c = draw();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a / a == Rat(1));
        CHECK((a - b) + b == a);
    }
}

TEST_CASE("overflow throws rather than wrapping") {
    Rat big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, overflow_error);
}

TEST_CASE("linear solves and kernels are exact") {
    QMat m = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
    auto x = solve(m, {Rat(5), Rat(10)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(1));
    CHECK((*x)[1] == Rat(3));

    QMat sing = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(!solve(sing, {Rat(1), Rat(3)}).has_value());
    auto ker = kernel_basis(sing, 2);
    REQUIRE(ker.size() == 1);
    CHECK(dot(sing[0], ker[0]).is_zero());

    CHECK(rank(QMat{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(0)}}) == 2);
}

TEST_CASE("primitive_integer clears denominators and content") {
    auto v = primitive_integer({Rat(1, 2), Rat(-1, 3), Rat(1)});
    CHECK(v == IVec{3, -2, 6});
    auto w = primitive_integer({Rat(-2), Rat(4)});
    CHECK(w == IVec{1, -2}); // leading sign normalized positive
}

TEST_CASE("Fourier-Motzkin feasibility with witnesses") {
    // x > 0, y > 0, x + y > 0: feasible
    std::vector<LinIneq> sys1 = {
        {{Rat(1), Rat(0)}, true}, {{Rat(0), Rat(1)}, true}, {{Rat(1), Rat(1)}, true}};
    auto w1 = FourierMotzkin::witness(sys1, 2);
    REQUIRE(w1.has_value());
    CHECK((*w1)[0] > Rat(0));
    CHECK((*w1)[1] > Rat(0));

    // x > 0 and -x >= 0: infeasible
    std::vector<LinIneq> sys2 = {{{Rat(1)}, true}, {{Rat(-1)}, false}};
    CHECK(!FourierMotzkin::feasible(sys2, 1));

    // x - y > 0, y - z > 0, z - x >= 0: infeasible cycle
    std::vector<LinIneq> sys3 = {{{Rat(1), Rat(-1), Rat(0)}, true},
                                 {{Rat(0), Rat(1), Rat(-1)}, true},
                                 {{Rat(-1), Rat(0), Rat(1)}, false}};
    CHECK(!FourierMotzkin::feasible(sys3, 3));
}

TEST_CASE("cone decomposition: membership and separation") {
    std::vector<QVec> gens = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    auto inside = cone_decompose(gens, {Rat(3), Rat(1)});
    REQUIRE(inside.inside);
    CHECK(inside.coefficients == QVec{Rat(2), Rat(1)});

    auto zero = cone_decompose(gens, {Rat(0), Rat(0)});
    REQUIRE(zero.inside);
    CHECK(is_zero(zero.coefficients));

    auto outside = cone_decompose(gens, {Rat(0), Rat(-1)});
    REQUIRE(!outside.inside);
    // separator certifies: <y, g_i> <= 0, <y, x> > 0
    for (const auto& g : gens) CHECK(dot(outside.separator, g) <= Rat(0));
    CHECK(dot(outside.separator, {Rat(0), Rat(-1)}) > Rat(0));
}

TEST_CASE("cone decomposition agrees with Fourier-Motzkin oracle on random instances") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> d(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        size_t dim = 2 + trial % 2;
        size_t ngen = 1 + size_t(trial) % 4;
        std::vector<QVec> gens;
        for (size_t g = 0; g < ngen; ++g) {
            QVec v(dim);
            for (auto& x : v) x = Rat(d(rng));
            gens.push_back(v);
        }
        QVec x(dim);
        for (auto& c : x) c = Rat(d(rng));
        auto res = cone_decompose(gens, x);
        // oracle: x in cone iff no strict separator exists
        std::vector<LinIneq> dual;
        for (const auto& g : gens) dual.push_back({scale(g, Rat(-1)), false});
        dual.push_back({x, true});
        bool separable = FourierMotzkin::feasible(dual, dim);
        CHECK(res.inside == !separable);
        if (res.inside) {
            QVec back(dim);
            for (size_t j = 0; j < gens.size(); ++j) {
                CHECK(res.coefficients[j] >= Rat(0));
                back = add(back, scale(gens[j], res.coefficients[j]));
            }
            CHECK(back == x);
        }
    }
}
