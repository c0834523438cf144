#include <doctest.h>

#include <map>
#include <set>

#include "ospcert/algebra.hpp"
#include "ospcert/errors.hpp"

using namespace ospcert;

namespace {

QuadScalar coeff(const SparseVec& v, int id) {
    for (const auto& [k, c] : v)
        if (k == id) return c;
    return QuadScalar(0);
}

// [X_a, X_b] only has the single component c * X_b.
void check_eigen(const StructureConstants& sc, const std::string& h, const std::string& e, long value) {
    const Basis& b = sc.basis();
    SparseVec v = bracket(sc, b.id(h), b.id(e));
    CAPTURE(h);
    CAPTURE(e);
    if (value == 0) {
        CHECK(v.empty());
    } else {
        REQUIRE(v.size() == 1);
        CHECK(v[0].first == b.id(e));
        CHECK(v[0].second == QuadScalar(value));
    }
}

}  // namespace

TEST_SUITE("algebra") {
    TEST_CASE("basis sizes") {
        CHECK(build_basis(0, 1).size() == 5);
        CHECK(build_basis(0, 2).size() == 14);
        CHECK(build_basis(1, 1).size() == 12);
        for (int m = 0; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n) {
                Basis b = build_basis(m, n);
                CAPTURE(m);
                CAPTURE(n);
                CHECK(b.size() == m * (2 * m + 1) + n * (2 * n + 1) + 2 * n * (2 * m + 1));
                CHECK(b.odd_dim() == 2 * n * (2 * m + 1));
                CHECK(b.cartan_ids().size() == static_cast<std::size_t>(m + n));
            }
    }

    TEST_CASE("basis order for B(0,1)") {
        Basis b = build_basis(0, 1);
        std::vector<std::string> want{"H1", "E-2d1", "E+2d1", "E+d1", "E-d1"};
        for (int i = 0; i < b.size(); ++i) CHECK(b[i].label == want[static_cast<std::size_t>(i)]);
        CHECK(b.find("E+3d1") == -1);
        CHECK_THROWS_AS(b.id("E+3d1"), UsageError);
    }

    TEST_CASE("every weight carries one root vector per parity") {
        for (auto [m, n] : {std::pair{0, 3}, {1, 2}, {2, 1}}) {
            Basis b = build_basis(m, n);
            std::map<std::pair<Weight, int>, int> seen;
            for (const auto& e : b.elements()) {
                if (e.role == Role::Cartan) {
                    CHECK(weight_is_zero(e.weight));
                    CHECK(e.parity == 0);
                    continue;
                }
                CHECK_FALSE(weight_is_zero(e.weight));
                CHECK(e.parity == (e.role == Role::OddRoot ? 1 : 0));
                CHECK(b.find_weight(e.weight, e.parity) == e.id);
                ++seen[{e.weight, e.parity}];
            }
            for (const auto& [k, count] : seen) CHECK(count == 1);
        }
    }

    TEST_CASE("Cartan eigenvalues on root vectors") {
        StructureConstants s1 = build_structure(0, 1);
        check_eigen(s1, "H1", "E+d1", 1);
        check_eigen(s1, "H1", "E-2d1", -2);
        StructureConstants s2 = build_structure(0, 2);
        check_eigen(s2, "H1", "E+d1", 1);
        check_eigen(s2, "H1", "E+d2", -1);
        check_eigen(s2, "H2", "E+d2", 1);
        StructureConstants s3 = build_structure(0, 3);
        check_eigen(s3, "H2", "E+d1", 0);
        check_eigen(s3, "H2", "E+d2", 1);
        check_eigen(s3, "H2", "E+d3", -1);
        check_eigen(s3, "H3", "E+d3", 1);
        for (const auto* sc : {&s1, &s2, &s3}) CHECK(cartan_eigenvalue_check(*sc).pass());
        CHECK(cartan_eigenvalue_check(build_structure(1, 1)).pass());
    }

    TEST_CASE("weight labels round trip") {
        CHECK(weight_label(Weight{2, 0}, 2) == "+2d1");
        CHECK(weight_label(Weight{1, -1}, 2) == "+d1-d2");
        CHECK(weight_label(Weight{0, 0, -1}, 2) == "-e1");
        CHECK(weight_label(Weight{0, 0}, 2) == "0");
        for (auto [m, n] : {std::pair{0, 3}, {2, 2}}) {
            Basis b = build_basis(m, n);
            for (const auto& e : b.elements()) CHECK(weight_parse(weight_label(e.weight, n), m, n) == e.weight);
        }
        CHECK_THROWS_AS(weight_parse("+d4", 0, 2), UsageError);
    }

    TEST_CASE("fields of the structure constants") {
        CHECK(build_structure(0, 2).is_rational());
        CHECK_FALSE(build_structure(1, 1).is_rational());
    }

    TEST_CASE("odd-odd bracket of B(0,1)") {
        StructureConstants sc = build_structure(0, 1);
        const Basis& b = sc.basis();
        SparseVec v = bracket(sc, b.id("E+d1"), b.id("E-d1"));
        CHECK(v == SparseVec{{b.id("H1"), QuadScalar(1)}});
        // symmetric for odd pairs
        CHECK(bracket(sc, b.id("E-d1"), b.id("E+d1")) == v);
        CHECK(coeff(bracket(sc, b.id("E+d1"), b.id("E+d1")), b.id("E+2d1")) != QuadScalar(0));
    }

    TEST_CASE("projection refuses elements outside the algebra") {
        Basis b = build_basis(0, 1);
        Monomial cubic{Generator::boson(1, Sign::Plus), Generator::boson(1, Sign::Plus), Generator::boson(1, Sign::Plus)};
        CHECK_THROWS_AS(project(b, OscElement::monomial(cubic)), IntegrityError);
        Projection id = project(b, OscElement::scalar(3));
        CHECK(id.coords.empty());
        CHECK(id.central == QuadScalar(3));
    }

    TEST_CASE("antisymmetry and weight additivity") {
        for (auto [m, n] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {2, 1}}) {
            StructureConstants sc = build_structure(m, n);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(antisymmetry_check(sc).pass());
            CheckReport w = weight_additivity_check(sc);
            CHECK(w.pass());
            CHECK(w.checked > 0);
        }
    }

    TEST_CASE("super-Jacobi exhaustive for B(0,1) and B(0,2)") {
        for (int n : {1, 2}) {
            CheckReport r = jacobi_check(build_structure(0, n));
            CHECK(r.pass());
            std::size_t d = static_cast<std::size_t>(build_basis(0, n).size());
            CHECK(r.checked == d * d * d);
        }
    }

    TEST_CASE("super-Jacobi sampled for B(1,1)") {
        CheckReport r = jacobi_check(build_structure(1, 1), 10000, 3);
        CHECK(r.pass());
        CHECK(r.checked == 10000);
    }

    TEST_CASE("bracket_vec is bilinear") {
        StructureConstants sc = build_structure(0, 2);
        const Basis& b = sc.basis();
        SparseVec x{{b.id("H1"), QuadScalar(2)}, {b.id("E+2d1"), QuadScalar(-1)}};
        SparseVec y{{b.id("E+d1"), QuadScalar(3)}};
        SparseVec want;
        vec_add(want, bracket(sc, b.id("H1"), b.id("E+d1")), QuadScalar(6));
        vec_add(want, bracket(sc, b.id("E+2d1"), b.id("E+d1")), QuadScalar(-3));
        CHECK(bracket_vec(sc, x, y) == want);
        CHECK(vec_parity(b, y) == 1);
        CHECK(vec_parity(b, {{b.id("H1"), QuadScalar(1)}, {b.id("E+d1"), QuadScalar(1)}}) == -1);
    }

    TEST_CASE("frame names") {
        CHECK(frame_parse(frame_name(CartanFrame::Coroot)) == CartanFrame::Coroot);
        CHECK(frame_parse(frame_name(CartanFrame::Orthonormal)) == CartanFrame::Orthonormal);
        CHECK_THROWS_AS(frame_parse("polar"), UsageError);
        CHECK(role_parse(role_name(Role::OddRoot)) == Role::OddRoot);
    }
}
