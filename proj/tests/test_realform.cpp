#include <doctest.h>

#include <fstream>

#include "coho/realform.hpp"

using namespace coho;

namespace {
const std::vector<RealForm>& catalog() {
    static std::vector<RealForm> c = load_catalog(std::string(COHO_SOURCE_DIR) + "/data/catalog");
    return c;
}
size_t root_index(const RealForm& f, const IVec& r) { return f.datum.index_of(r); }
} // namespace

TEST_CASE("catalog loads with at least 30 validated forms, sorted by id") {
    const auto& c = catalog();
    CHECK(c.size() >= 30);
    for (size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].id < c[i].id);
}

TEST_CASE("empty directory loads as an empty catalog") {
    auto dir = std::filesystem::temp_directory_path() / "coho_empty_catalog";
    std::filesystem::create_directories(dir);
    CHECK(load_catalog(dir).empty());
}

TEST_CASE("descriptor with inconsistent dim_k is rejected naming the identity") {
    nlohmann::json j = {
        {"schema_version", 1},
        {"id", "su(2,1)"},
        {"complex_type", "A2"},
        {"painted", {1}},
        {"expected", {{"dim_g", 8}, {"dim_k", 6}, {"rank_kC", 2}}},
        {"satake",
         {{"restricted_type", "BC1"}, {"mults", {2, 1}}, {"dim_a0", 1}, {"dim_m0", 1}}}};
    try {
        parse_descriptor(j, "inline");
        FAIL("expected validation error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("dim_k") != std::string::npos);
        CHECK(std::string(e.what()).find("su(2,1)") != std::string::npos);
    }
}

TEST_CASE("malformed document raises a parse error") {
    auto dir = std::filesystem::temp_directory_path() / "coho_bad_catalog";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK_THROWS_AS(load_catalog(dir), parse_error);
    std::filesystem::remove(dir / "bad.json");
}

TEST_CASE("compactness grading on catalog forms") {
    SUBCASE("compact form has trivial grading") {
        const auto& f = find_form(catalog(), "compact:g2");
        for (auto [idx, eps] : compactness_grading(f)) CHECK(eps == 0);
        CHECK(compactness_grading(f).size() == 12);
    }
    SUBCASE("sl(2,R): the painted A1 node is noncompact") {
        const auto& f = find_form(catalog(), "sl(2,R)");
        CHECK(f.epsilon(root_index(f, {1})) == 1);
    }
    SUBCASE("sp(4,R): the long simple root is noncompact") {
        const auto& f = find_form(catalog(), "sp(4,R)");
        CHECK(f.epsilon(root_index(f, {1, 0})) == 1);
    }
    SUBCASE("sl(3,R): swapped simple roots are complex, their sum is noncompact") {
        const auto& f = find_form(catalog(), "sl(3,R)");
        CHECK(!f.imaginary(root_index(f, {1, 0})));
        CHECK(!f.imaginary(root_index(f, {0, 1})));
        CHECK(f.imaginary(root_index(f, {1, 1})));
        CHECK(f.epsilon(root_index(f, {1, 1})) == 1);
    }
}

TEST_CASE("epsilon is additive on imaginary root triples") {
    for (const auto& id : {"su(3,2)", "sp(2,2)", "so(4,3)", "E II", "F II", "sl(5,R)"}) {
        const auto& f = find_form(catalog(), id);
        const auto& R = f.datum;
        for (size_t i = 0; i < R.num_roots(); ++i) {
            if (!f.imaginary(i)) continue;
            for (size_t j = 0; j < R.num_roots(); ++j) {
                if (!f.imaginary(j)) continue;
                IVec sum(R.rank());
                for (size_t k = 0; k < R.rank(); ++k) sum[k] = R.root(i)[k] + R.root(j)[k];
                if (!R.is_root(sum)) continue;
                size_t s = R.index_of(sum);
                REQUIRE(f.imaginary(s));
                CHECK(f.epsilon(s) == (f.epsilon(i) + f.epsilon(j)) % 2);
            }
        }
    }
}

TEST_CASE("cartan decomposition dimensions") {
    CHECK(cartan_decomp_dims(find_form(catalog(), "sl(3,R)")) ==
          std::pair<std::int64_t, std::int64_t>{3, 5});
    CHECK(cartan_decomp_dims(find_form(catalog(), "su(2,1)")) ==
          std::pair<std::int64_t, std::int64_t>{4, 4});
    CHECK(cartan_decomp_dims(find_form(catalog(), "compact:g2")) ==
          std::pair<std::int64_t, std::int64_t>{14, 0});
}

TEST_CASE("equal-rank forms have as many noncompact roots as dim s") {
    for (const auto& f : catalog()) {
        if (f.rank_kC != std::int64_t(f.datum.rank())) continue;
        std::int64_t noncompact = 0;
        for (size_t i = 0; i < f.datum.num_roots(); ++i)
            if (f.epsilon(i) == 1) ++noncompact;
        CHECK(noncompact == f.dim_g - f.dim_k);
    }
}

TEST_CASE("restricted root systems realize the Satake records") {
    SUBCASE("su(2,1) is BC1 with multiplicities 2 and 1") {
        auto rs = restricted_root_system(find_form(catalog(), "su(2,1)"));
        CHECK(rs.type_label == "BC1");
        CHECK(rs.non_reduced);
        REQUIRE(rs.roots.size() == 4);
        CHECK(rs.total_dimension() + 1 + 1 == 8);
    }
    SUBCASE("sl(3,R) restricted is the full A2") {
        auto rs = restricted_root_system(find_form(catalog(), "sl(3,R)"));
        CHECK(rs.type_label == "A2");
        CHECK(!rs.non_reduced);
        CHECK(rs.roots.size() == 6);
        for (auto m : rs.mult) CHECK(m == 1);
    }
    SUBCASE("sp(2,2) satisfies the dimension identity at dim 36") {
        const auto& f = find_form(catalog(), "sp(2,2)");
        auto rs = restricted_root_system(f);
        CHECK(rs.rank == 2);
        CHECK(rs.total_dimension() + f.satake.dim_m0 + 2 == 36);
    }
    SUBCASE("compact forms have no restricted roots") {
        CHECK_THROWS_AS(restricted_root_system(find_form(catalog(), "compact:f4")),
                        precondition_error);
    }
    SUBCASE("dimension identity holds for every noncompact form") {
        for (const auto& f : catalog()) {
            if (f.compact()) continue;
            auto rs = restricted_root_system(f);
            CHECK(rs.total_dimension() + f.satake.dim_m0 + f.satake.dim_a0 == f.dim_g);
        }
    }
}

TEST_CASE("q0 values") {
    CHECK(q0(find_form(catalog(), "sl(2,R)")) == 1);
    CHECK(q0(find_form(catalog(), "su(2,1)")) == 2);
    CHECK(q0(find_form(catalog(), "complex:A1")) == 1);
    for (const auto& f : catalog()) CHECK(q0(f) >= 0);
}

TEST_CASE("unknown form id raises") {
    CHECK_THROWS_AS(find_form(catalog(), "sl(99,R)"), precondition_error);
}
