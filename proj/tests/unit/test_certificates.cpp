#include <doctest.h>

#include "ospcert/certificates.hpp"
#include "ospcert/errors.hpp"
#include "ospcert/verdicts.hpp"

using namespace ospcert;

namespace {

SectorSystem sector_of(const Structures& s, const Certificate& c) { return assemble_sector(s.sc, s.gamma, c.sector); }

}  // namespace

TEST_SUITE("certificates") {
    TEST_CASE("builders and names") {
        Basis b3 = build_basis(0, 3);
        auto all = all_certificates(b3);
        REQUIRE(all.size() == 6);
        CHECK(all[0].name() == "I(j=1)");
        CHECK(all[2].name() == "II(j=1)");
        CHECK(all[4].name() == "III+(n=3)");
        CHECK(all[5].name() == "III-(n=3)");
        CHECK(all[0].target_param.label() == "gb[a0,b1+]");
        CHECK(all[0].sector == Weight{-1, 0, 0});
        CHECK(all[3].target_param.label() == "gb[a0,b2-]");
        CHECK(all[3].sector == Weight{0, 1, 0});
        CHECK(family_name(Family::IIIMinus) == "III-");
        for (int n = 2; n <= 5; ++n) CHECK(all_certificates(build_basis(0, n)).size() == static_cast<std::size_t>(2 * n));
    }

    TEST_CASE("builder preconditions") {
        Basis b2 = build_basis(0, 2);
        CHECK_THROWS_AS(build_family_I(b2, 2), UsageError);
        CHECK_THROWS_AS(build_family_II(b2, 0), UsageError);
        CHECK_THROWS_AS(build_family_III(build_basis(0, 1), Sign::Plus), UsageError);
        CHECK_THROWS_AS(build_family_I(build_basis(1, 2), 1), UsageError);
        CHECK_THROWS_AS(family_III_correction(1), UsageError);
    }

    TEST_CASE("Family III correction from root geometry") {
        CHECK(family_III_correction(2) == QuadScalar(2));
        for (int n = 3; n <= 5; ++n) CHECK(family_III_correction(n) == QuadScalar(1));
        CHECK(build_family_III(build_basis(0, 2), Sign::Minus).components[1].coeff == QuadScalar(2));
        CHECK(build_family_III(build_basis(0, 4), Sign::Plus).components[1].coeff == QuadScalar(1));
    }

    TEST_CASE("every certificate annihilates A and pairs to its lambda") {
        for (int n = 2; n <= 5; ++n) {
            auto s = cached_structures(0, n);
            for (const auto& c : all_certificates(s->sc.basis())) {
                SectorSystem sys = sector_of(*s, c);
                CertVerdict v = verify_certificate(c, sys);
                CAPTURE(n);
                CAPTURE(c.name());
                CHECK(v.null_ok);
                CHECK(v.pass);
                CHECK(v.lambda == c.expected_lambda);
                QuadScalar total = 0;
                for (const auto& x : v.component_lambda) total += x;
                CHECK(total == v.lambda);
                for (const auto& e : v.table) {
                    QuadScalar sum = 0;
                    for (const auto& x : e.per_component) sum += x;
                    CHECK(sum == e.total);
                    CHECK(e.total == QuadScalar(0));
                }
                CHECK(in_left_nullspace(sys.A, certificate_vector(c, sys)));
            }
        }
    }

    TEST_CASE("expected lambdas by family") {
        Basis b = build_basis(0, 3);
        CHECK(build_family_I(b, 2).expected_lambda == QuadScalar(4));
        CHECK(build_family_II(b, 2).expected_lambda == QuadScalar(2));
        CHECK(build_family_III(b, Sign::Plus).expected_lambda == QuadScalar(1));
    }

    TEST_CASE("perturbed certificates are rejected") {
        auto s = cached_structures(0, 3);
        Certificate c = build_family_I(s->sc.basis(), 1);
        c.components[2].coeff = c.components[2].coeff + QuadScalar(1);
        CertVerdict v = verify_certificate(c, sector_of(*s, c));
        CHECK_FALSE(v.null_ok);
        CHECK_FALSE(v.pass);
    }

    TEST_CASE("wrong sector is a usage error") {
        auto s = cached_structures(0, 2);
        Certificate c = build_family_I(s->sc.basis(), 1);
        SectorSystem other = assemble_sector(s->sc, s->gamma, Weight{1, 0});
        CHECK_THROWS_AS(verify_certificate(c, other), UsageError);
    }

    TEST_CASE("Family III tables agree under the exchanges d1 <-> -d1, dn <-> -dn") {
        for (int n = 2; n <= 4; ++n) {
            const Basis b = build_basis(0, n);
            for (Sign sg : {Sign::Plus, Sign::Minus}) {
                Certificate c = build_family_III(b, sg);
                Certificate m = mirror_family_III(b, c);
                Certificate other = build_family_III(b, flip(sg));
                CHECK(m.sector == other.sector);
                CHECK(m.target_param == other.target_param);
                CHECK(m.family == other.family);
                REQUIRE(m.components.size() == other.components.size());
                for (std::size_t k = 0; k < m.components.size(); ++k) {
                    CAPTURE(k);
                    CHECK(m.components[k].row == other.components[k].row);
                    QuadScalar x = m.components[k].coeff, y = other.components[k].coeff;
                    // the first component changes sign, the others carry over
                    CHECK(x == (k == 0 ? -y : y));
                }
                Certificate back = mirror_family_III(b, m);
                for (std::size_t k = 0; k < c.components.size(); ++k) CHECK(back.components[k].row == c.components[k].row);
            }
        }
    }

    TEST_CASE("certificates lie in the computed left nullspace") {
        for (int n = 2; n <= 3; ++n) {
            auto s = cached_structures(0, n);
            CertSuite suite = verify_certificates(*s, 2, true);
            CHECK(suite.passed() == static_cast<std::size_t>(2 * n));
            for (const auto& r : suite.results) CHECK(r.in_nullspace_span);
        }
    }

    TEST_CASE("each short-root sector has a nontrivial left kernel") {
        for (int n = 1; n <= 4; ++n) {
            auto s = cached_structures(0, n);
            for (const auto& mu : short_root_sectors(n)) {
                SectorSystem sys = assemble_sector(s->sc, s->gamma, mu);
                CHECK(sys.rows.size() >= rank(sys.A) + 1);
            }
        }
    }

    TEST_CASE("slot-relative labels") {
        Basis b = build_basis(0, 3);
        CHECK(slot_label(b, b.id("H1"), 2) == "H[j-1]");
        CHECK(slot_label(b, b.id("E+2d2"), 2) == "E+2d[j]");
    }

    TEST_CASE("Families I and II do not depend on n") {
        for (Family f : {Family::I, Family::II})
            for (int j = 1; j <= 2; ++j) {
                std::vector<int> ns;
                for (int n = j + 1; n <= 5; ++n) ns.push_back(n);
                InvarianceReport r = n_invariance_check(f, j, ns);
                CAPTURE(family_name(f));
                CAPTURE(j);
                CHECK(r.identical);
                CHECK(r.tables.size() == ns.size());
                for (const auto& l : r.lambdas) CHECK(l == (f == Family::I ? QuadScalar(4) : QuadScalar(2)));
            }
        CHECK_THROWS_AS(n_invariance_check(Family::I, 2, {2, 3}), UsageError);
        CHECK_THROWS_AS(n_invariance_check(Family::IIIPlus, 1, {2}), UsageError);
    }
}
