#include <doctest.h>

#include "ospcert/errors.hpp"
#include "ospcert/verdicts.hpp"

using namespace ospcert;

TEST_SUITE("verdicts") {
    TEST_CASE("B(0,1) full system and primitive") {
        auto s = cached_structures(0, 1);
        B01Report r = verify_b01(*s);
        CHECK(r.full.fvars == 12);
        CHECK(r.full.rank_A == 10);
        CHECK(r.full.rank_AL == 10);
        CHECK(r.full.rank_L == 2);
        CHECK(r.full.condition());
        CHECK(r.directions.size() == 5);
        for (const auto& d : r.directions) {
            CAPTURE(d.name);
            CHECK(d.primitive_ok);
            CHECK(d.solver_ok);
        }
        CHECK(r.pass());
    }

    TEST_CASE("the explicit primitive fails for a wrong sign") {
        auto s = cached_structures(0, 1);
        const Basis& b = s->sc.basis();
        std::vector<QuadScalar> gb{1, 0};
        std::vector<SparseVec> f = b01_primitive(b, gb);
        for (auto& v : f)
            for (auto& [k, c] : v) c = -c;
        bool all_equal = true;
        for (int x = 0; x < b.size(); ++x)
            for (int y = 0; y < b.size(); ++y)
                if (coboundary_of(s->sc, f, x, y) != gamma_at(s->gamma, x, y, gb)) all_equal = false;
        CHECK_FALSE(all_equal);
        CHECK_THROWS_AS(b01_primitive(build_basis(0, 2), gb), UsageError);
    }

    TEST_CASE("short-root sector ranks") {
        for (int n = 2; n <= 4; ++n) {
            auto s = cached_structures(0, n);
            auto ranks = sector_ranks(*s, short_root_sectors(n), 3);
            REQUIRE(ranks.size() == static_cast<std::size_t>(2 * n));
            for (std::size_t k = 0; k < ranks.size(); ++k) {
                const auto& r = ranks[k];
                CHECK(r.mu == short_root_sectors(n)[k]);
                CHECK(r.dim == static_cast<std::size_t>(6 * n - 2));
                CHECK(r.rank_A == static_cast<std::size_t>(6 * n - 3));
                CHECK(r.corank() == 1);
                CHECK(r.rank_L == 1);
                CHECK(r.rank_AL == r.rank_A + 1);
            }
        }
    }

    TEST_CASE("parallel and serial sector ranks agree") {
        auto s = cached_structures(1, 1);
        auto sectors = all_sectors(s->sc.basis(), s->gamma);
        auto a = sector_ranks(*s, sectors, 1);
        auto b = sector_ranks(*s, sectors, 4);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].mu == b[k].mu);
            CHECK(a[k].rank_A == b[k].rank_A);
            CHECK(a[k].rank_AL == b[k].rank_AL);
        }
    }

    TEST_CASE("B(1,1) strong condition") {
        auto s = cached_structures(1, 1);
        FullSystem f = full_system(*s, 2);
        CHECK(f.fvars == 72);
        CHECK(f.params == 6);
        CHECK(f.rows == 390);
        CHECK(f.rank_A == 66);
        CHECK(f.rank_L == 6);
        CHECK(f.rank_AL == 72);
        CHECK(f.strong_condition());
    }

    TEST_CASE("B(m,n) driver with and without the row cap") {
        BmnResult r = verify_bmn(1, 2, 1000000, 2);
        CHECK(r.dim == 25);
        CHECK(r.params == 12);
        REQUIRE(r.full.has_value());
        CHECK(r.pass());
        BmnResult skipped = verify_bmn(2, 2, 1000, 1);
        CHECK_FALSE(skipped.full.has_value());
        CHECK_FALSE(skipped.pass());
        CHECK_FALSE(skipped.skip_reason.empty());
        CHECK(skipped.estimated_rows > 1000);
    }

    TEST_CASE("triviality verdicts") {
        TrivialityVerdict v01 = triviality_verdict(0, 1);
        CHECK(v01.kind == TrivialityKind::AlwaysTrivial);
        CHECK(v01.b01.has_value());
        TrivialityVerdict v03 = triviality_verdict(0, 3, 1000000, 2);
        CHECK(v03.kind == TrivialityKind::TrivialOnlyAtZero);
        REQUIRE(v03.certs.has_value());
        CHECK(v03.certs->passed() == 6);
        TrivialityVerdict v12 = triviality_verdict(1, 2, 1000000, 2);
        CHECK(v12.kind == TrivialityKind::StrongConditionHolds);
        CHECK_THROWS_AS(triviality_verdict(2, 2, 100), ResourceError);
        CHECK(triviality_name(TrivialityKind::Undecided) != triviality_name(TrivialityKind::AlwaysTrivial));
    }
}
