#include <doctest.h>

#include <random>

#include "coho/root_system.hpp"

using namespace coho;

namespace {
const std::vector<CartanType> kAllRank8 = {
    {'A', 1}, {'A', 2}, {'A', 3}, {'A', 8}, {'B', 2}, {'B', 3}, {'B', 8},
    {'C', 3}, {'C', 4}, {'C', 8}, {'D', 4}, {'D', 5}, {'D', 8},
    {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}};
}

TEST_CASE("Cartan type rank constraints") {
    CHECK_THROWS_AS(build_root_system({'A', 0}), validation_error);
    CHECK_THROWS_AS(build_root_system({'B', 1}), validation_error);
    CHECK_THROWS_AS(build_root_system({'C', 2}), validation_error);
    CHECK_THROWS_AS(build_root_system({'D', 3}), validation_error);
    CHECK_THROWS_AS(build_root_system({'E', 5}), validation_error);
    CHECK_THROWS_AS(build_root_system({'F', 5}), validation_error);
    CHECK_THROWS_AS(build_root_system({'G', 3}), validation_error);
    CHECK_THROWS_AS(CartanType::parse("H4"), validation_error);
}

TEST_CASE("root counts match the classical closed forms") {
    CHECK(build_root_system({'A', 2}).num_roots() == 6);
    CHECK(build_root_system({'G', 2}).num_roots() == 12);
    CHECK(build_root_system({'E', 8}).num_roots() == 240);
    for (const auto& t : kAllRank8) {
        auto R = build_root_system(t);
        CHECK(R.num_roots() == size_t(t.root_count()));
    }
}

TEST_CASE("reflection closure is exact: reflecting any root lands on a root") {
    for (const auto& t : {CartanType{'G', 2}, CartanType{'F', 4}, CartanType{'D', 5}}) {
        auto R = build_root_system(t);
        for (size_t i = 0; i < R.num_roots(); ++i)
            for (size_t s = 0; s < R.rank(); ++s)
                CHECK(R.is_root(R.reflect_simple(R.root(i), s)));
    }
}

TEST_CASE("every root pairs to 2 with its own coroot") {
    for (const auto& t : kAllRank8) {
        auto R = build_root_system(t);
        for (size_t i = 0; i < R.num_roots(); ++i) {
            Rat p = Rat(2) * R.form(R.root(i), R.root(i)) / R.length2(i);
            CHECK(p == Rat(2));
        }
    }
}

TEST_CASE("pairing examples") {
    auto A2 = build_root_system({'A', 2});
    // lambda = rho pairs to 1 with every simple coroot
    for (size_t i = 0; i < 2; ++i) {
        IVec simple(2, 0);
        simple[i] = 1;
        CHECK(A2.pairing(A2.rho(), A2.index_of(simple)) == Rat(1));
    }
    // lambda = 0
    CHECK(A2.pairing(Functional(2, Rat(0)), 0) == Rat(0));
    // A2, lambda = (2,-1), alpha = a1+a2: coroot is a1^vee + a2^vee
    size_t idx = A2.index_of({1, 1});
    CHECK(A2.coroot(idx) == IVec{1, 1});
    CHECK(A2.pairing({Rat(2), Rat(-1)}, idx) == Rat(1));
    CHECK_THROWS_AS(A2.index_of({2, 0}), precondition_error);
}

TEST_CASE("pairing is linear in the functional") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> d(-9, 9);
    auto R = build_root_system({'F', 4});
    for (int trial = 0; trial < 100; ++trial) {
        Functional a(4), b(4);
        for (size_t i = 0; i < 4; ++i) {
            a[i] = Rat(d(rng), 1 + std::abs(d(rng)));
            b[i] = Rat(d(rng), 1 + std::abs(d(rng)));
        }
        size_t idx = size_t(rng() % R.num_roots());
        CHECK(R.pairing(add(a, b), idx) == R.pairing(a, idx) + R.pairing(b, idx));
    }
}

TEST_CASE("rho equals the all-ones functional and rho-check pairs to 1") {
    for (const auto& t : kAllRank8) {
        auto R = build_root_system(t);
        // half-sum of positive roots, converted to fw coordinates
        QVec half = R.rho_root_coords();
        for (size_t i = 0; i < R.rank(); ++i) {
            Rat fw;
            for (size_t j = 0; j < R.rank(); ++j)
                fw += Rat(R.cartan_matrix()[i][j]) * half[j];
            CHECK(fw == Rat(1));
        }
        // <rho_check, alpha_i> = 1 for every simple root
        QVec rc = R.rho_check();
        for (size_t i = 0; i < R.rank(); ++i) {
            Rat v;
            for (size_t j = 0; j < R.rank(); ++j)
                v += Rat(R.cartan_matrix()[j][i]) * rc[j];
            CHECK(v == Rat(1));
        }
    }
}

TEST_CASE("A1: rho-check is half the coroot") {
    auto R = build_root_system({'A', 1});
    CHECK(R.rho_check() == QVec{Rat(1, 2)});
}

TEST_CASE("parabolic splits") {
    auto A3 = build_root_system({'A', 3});
    SUBCASE("full Levi means empty nilradical") {
        auto ps = parabolic_split(A3, {{0, 1, 2}});
        CHECK(ps.nilradical_roots.empty());
        CHECK(ps.levi_roots.size() == 12);
    }
    SUBCASE("Borel") {
        auto ps = parabolic_split(A3, {{}});
        CHECK(ps.nilradical_roots.size() == 6);
        CHECK(ps.levi_roots.empty());
    }
    SUBCASE("A3 with S={1,3} drops 4 roots to the nilradical") {
        auto ps = parabolic_split(A3, {{0, 2}});
        CHECK(ps.nilradical_roots.size() == 4);
    }
    SUBCASE("counting identity over all subsets") {
        for (const auto& t : {CartanType{'B', 3}, CartanType{'G', 2}, CartanType{'A', 3}}) {
            auto R = build_root_system(t);
            for (size_t mask = 0; mask < (size_t(1) << R.rank()); ++mask) {
                ParabolicSubset S;
                for (size_t i = 0; i < R.rank(); ++i)
                    if (mask & (size_t(1) << i)) S.levi.insert(i);
                auto ps = parabolic_split(R, S);
                CHECK(ps.nilradical_roots.size() + ps.levi_roots.size() / 2 == R.num_positive());
            }
        }
    }
}

TEST_CASE("product data keeps factors independent") {
    auto D = RootDatum::build({{'A', 2}, {'A', 2}});
    CHECK(D.rank() == 4);
    CHECK(D.num_roots() == 12);
    for (size_t i = 0; i < D.num_roots(); ++i) {
        const IVec& r = D.root(i);
        bool left = r[0] != 0 || r[1] != 0;
        bool right = r[2] != 0 || r[3] != 0;
        CHECK(left != right);
    }
}

TEST_CASE("coweight orbits have the classical sizes") {
    auto A2 = build_root_system({'A', 2});
    CHECK(coweight_orbit(A2, {1, 0}).size() == 3);
    CHECK(coweight_orbit(A2, {1, 1}).size() == 6);
    auto G2 = build_root_system({'G', 2});
    CHECK(coweight_orbit(G2, {1, 1}).size() == 12);
    auto E6 = build_root_system({'E', 6});
    CHECK(coweight_orbit(E6, {1, 0, 0, 0, 0, 0}).size() == 27);
}
