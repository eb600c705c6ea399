#include <doctest.h>

#include "coho/cartan.hpp"

using namespace coho;

namespace {
const std::vector<RealForm>& catalog() {
    static std::vector<RealForm> c = load_catalog(std::string(COHO_SOURCE_DIR) + "/data/catalog");
    return c;
}
} // namespace

TEST_CASE("fundamental Cartan classifications") {
    SUBCASE("compact form: all roots imaginary compact") {
        auto c = fundamental_cartan(find_form(catalog(), "compact:g2"));
        for (auto cl : c.cls) CHECK(cl == RootClass::imaginary_compact);
        CHECK(c.dim_t == 2);
        CHECK(c.dim_a == 0);
    }
    SUBCASE("sl(2,R): the root is noncompact imaginary") {
        auto c = fundamental_cartan(find_form(catalog(), "sl(2,R)"));
        CHECK(c.cls[0] == RootClass::imaginary_noncompact);
    }
    SUBCASE("sl(3,R): swapped simples complex, their sum imaginary") {
        const auto& f = find_form(catalog(), "sl(3,R)");
        auto c = fundamental_cartan(f);
        CHECK(c.cls[f.datum.index_of({1, 0})] == RootClass::complex_pair);
        CHECK(c.cls[f.datum.index_of({0, 1})] == RootClass::complex_pair);
        CHECK(c.cls[f.datum.index_of({1, 1})] == RootClass::imaginary_noncompact);
        CHECK(c.dim_t == 1);
        CHECK(c.dim_a == 1);
    }
}

TEST_CASE("Cayley transform basics") {
    SUBCASE("sl(2,R): one transform reaches the split Cartan") {
        const auto& f = find_form(catalog(), "sl(2,R)");
        auto c = fundamental_cartan(f);
        auto s = cayley_transform(c, 0);
        CHECK(s.cls[0] == RootClass::real);
        CHECK(s.dim_a == 1);
        CHECK(!s.has_noncompact_imaginary());
    }
    SUBCASE("transform along a compact root is rejected") {
        const auto& f = find_form(catalog(), "su(2,1)");
        auto c = fundamental_cartan(f);
        size_t compact_idx = f.datum.index_of({0, 1});
        REQUIRE(c.cls[compact_idx] == RootClass::imaginary_compact);
        CHECK_THROWS_AS(cayley_transform(c, compact_idx), precondition_error);
    }
    SUBCASE("sp(4,R): two orthogonal transforms reach the split Cartan") {
        const auto& f = find_form(catalog(), "sp(4,R)");
        auto c = fundamental_cartan(f);
        size_t first = f.datum.index_of({1, 0});
        REQUIRE(c.cls[first] == RootClass::imaginary_noncompact);
        auto c1 = cayley_transform(c, first);
        size_t second = 0;
        bool found = false;
        for (size_t i = 0; i < c1.cls.size() && !found; ++i)
            if (c1.cls[i] == RootClass::imaginary_noncompact) {
                second = i;
                found = true;
            }
        REQUIRE(found);
        auto c2 = cayley_transform(c1, second);
        CHECK(c2.dim_a == 2);
        CHECK(!c2.has_noncompact_imaginary());
    }
    SUBCASE("a transform preserves rank and trades exactly one compact dimension") {
        const auto& f = find_form(catalog(), "so(4,3)");
        auto c = fundamental_cartan(f);
        size_t beta = 0;
        while (c.cls[beta] != RootClass::imaginary_noncompact) ++beta;
        auto fwd = cayley_transform(c, beta);
        CHECK(fwd.dim_t + fwd.dim_a == c.dim_t + c.dim_a);
        CHECK(fwd.dim_t + 1 == c.dim_t);
        CHECK(fwd.provenance == std::vector<size_t>{beta});
    }
}

TEST_CASE("Cartan class enumeration counts") {
    auto count = [&](const char* id) { return enumerate_cartans(find_form(catalog(), id)).size(); };
    CHECK(count("sl(2,R)") == 2);
    CHECK(count("compact:a1") == 1);
    CHECK(count("sp(4,R)") == 4);
    CHECK(count("su(2,1)") == 2);
    CHECK(count("su(2,2)") == 3);
    CHECK(count("su(3,1)") == 2);
    CHECK(count("su(3,2)") == 3);
    CHECK(count("sl(3,R)") == 2);
    CHECK(count("sl(4,R)") == 3);
    CHECK(count("so(3,2)") == 4);
    CHECK(count("complex:A2") == 1);
}

TEST_CASE("enumeration is deterministic and ordered by split rank") {
    const auto& f = find_form(catalog(), "sp(4,R)");
    auto cs = enumerate_cartans(f);
    for (size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].dim_a <= cs[i].dim_a);
    auto again = enumerate_cartans(f);
    REQUIRE(cs.size() == again.size());
    for (size_t i = 0; i < cs.size(); ++i) CHECK(cs[i].theta == again[i].theta);
}

TEST_CASE("maximally split Cartan matches the Satake record on the whole catalog") {
    for (const auto& f : catalog()) {
        if (f.compact()) continue;
        CAPTURE(f.id);
        auto ms = analyze_max_split(f); // throws on any mismatch
        CHECK(std::int64_t(ms.cartan.dim_a) == f.satake.dim_a0);
        CHECK(!ms.cartan.has_noncompact_imaginary());
        // the anisotropic kernel: its roots are exactly the imaginary roots at
        // the split end, all compact, and dim m0 = dim t + #roots(m0)
        std::int64_t m0_roots = 0;
        for (auto cl : ms.cartan.cls) {
            CHECK(cl != RootClass::imaginary_noncompact);
            if (cl == RootClass::imaginary_compact) ++m0_roots;
        }
        CHECK(m0_roots == f.satake.dim_m0 - (std::int64_t(f.datum.rank()) - f.satake.dim_a0));
    }
}

TEST_CASE("adapted Cartan: minimal parabolic of a split form is the split Cartan") {
    const auto& f = find_form(catalog(), "sl(3,R)");
    auto ac = adapted_cartan(f, {});
    CHECK(ac.base.dim_a == 2);
    CHECK(ac.cp_basis.empty());
    CHECK(ac.ap_basis.empty());
    CHECK(ac.c_basis.empty());
    CHECK(ac.a_basis.size() == 2);
    CHECK(ac.nilradical_roots.size() == 3);
}

TEST_CASE("adapted Cartan: sl(3,R) with S={1} has a one-dimensional compact part in m") {
    const auto& f = find_form(catalog(), "sl(3,R)");
    auto ac = adapted_cartan(f, {0});
    CHECK(ac.a_basis.size() == 1);
    CHECK(ac.cp_basis.size() == 1);
    CHECK(ac.ap_basis.empty());
    CHECK(ac.c_basis.empty());
    CHECK(ac.levi_roots.size() == 2);
    CHECK(ac.nilradical_roots.size() == 2);
    // m = sl(2,R): its root is noncompact imaginary on the adapted Cartan
    for (auto idx : ac.levi_roots)
        CHECK(ac.base.cls[idx] == RootClass::imaginary_noncompact);
}

TEST_CASE("adapted Cartan: full Levi recovers the fundamental Cartan") {
    for (const auto& id : {"sl(3,R)", "su(2,1)", "so(3,2)", "E IV"}) {
        const auto& f = find_form(catalog(), id);
        auto rs = restricted_root_system(f);
        std::set<size_t> full;
        for (size_t i = 0; i < rs.rank; ++i) full.insert(i);
        auto ac = adapted_cartan(f, full);
        CAPTURE(id);
        CHECK(ac.a_basis.empty());
        CHECK(ac.c_basis.empty());
        CHECK(std::int64_t(ac.base.dim_t) == f.rank_kC);
        CHECK(ac.nilradical_roots.empty());
        auto fund = fundamental_cartan(f);
        CHECK(ac.base.dim_a == fund.dim_a);
    }
}

TEST_CASE("adapted Cartan nilradical is -theta stable across forms and parabolics") {
    for (const auto& id : {"sl(4,R)", "su(2,1)", "su(3,2)", "so(4,3)", "sp(2,1)", "G", "F II"}) {
        const auto& f = find_form(catalog(), id);
        auto rs = restricted_root_system(f);
        for (size_t mask = 0; mask + 1 < (size_t(1) << rs.rank); ++mask) {
            std::set<size_t> S;
            for (size_t i = 0; i < rs.rank; ++i)
                if (mask & (size_t(1) << i)) S.insert(i);
            auto ac = adapted_cartan(f, S);
            std::set<size_t> nil(ac.nilradical_roots.begin(), ac.nilradical_roots.end());
            for (auto idx : nil) {
                IVec img = ac.base.apply(f.datum.root(idx));
                for (auto& x : img) x = -x;
                CHECK(nil.count(f.datum.index_of(img)) == 1);
            }
        }
    }
}
