#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ospcert/cohomology.hpp"
#include "ospcert/errors.hpp"
#include "ospcert/linalg.hpp"

using namespace ospcert;

namespace {

using QM = ExactMatrix<Rational>;
using KM = ExactMatrix<QuadScalar>;

QM random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density_pct, long range) {
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<long> val(-range, range);
    QM m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (pct(rng) < density_pct) m.set(i, j, Rational(val(rng), 1 + std::abs(val(rng))));
    return m;
}

// Rank-deficient by construction: rows are combinations of `k` seed rows.
QM low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
    QM seed = random_matrix(rng, k, c, 70, 5);
    std::uniform_int_distribution<long> val(-3, 3);
    QM m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t s = 0; s < k; ++s) {
            long w = val(rng);
            for (const auto& [j, v] : seed.row(s)) m.add_to(i, j, Rational(w) * v);
        }
    return m;
}

template <class T>
ExactMatrix<T> permuted(const ExactMatrix<T>& m, const std::vector<std::size_t>& rp, const std::vector<std::size_t>& cp) {
    ExactMatrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(rp[i])) out.set(i, cp[j], v);
    return out;
}

std::vector<QuadScalar> column(const KM& m, std::size_t c) {
    std::vector<QuadScalar> v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.get(r, c);
    return v;
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("trivial shapes") {
        CHECK(rank(QM(4, 6)) == 0);
        CHECK(rank(QM::identity(5)) == 5);
        CHECK(left_nullspace(QM::identity(4)).empty());
        QM m(5, 4);
        for (std::size_t i = 0; i < 4; ++i) m.set(i, i, 1);
        auto ns = left_nullspace(m);
        REQUIRE(ns.size() == 1);
        CHECK(ns[0] == SparseRow<Rational>{{4, Rational(1)}});
        CHECK(rank(QM(0, 0)) == 0);
    }

    TEST_CASE("no stored zeros") {
        QM m(2, 2);
        m.set(0, 0, 3);
        m.add_to(0, 0, -3);
        m.set(1, 1, 0);
        CHECK(m.nnz() == 0);
        m.set(1, 0, Rational(1, 2));
        CHECK(m.get(1, 0) == Rational(1, 2));
        CHECK(m.transpose().get(0, 1) == Rational(1, 2));
    }

    TEST_CASE("sparse elimination agrees with dense Bareiss") {
        std::mt19937_64 rng(41);
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 3 + t % 9, c = 2 + (t * 7) % 11;
            QM m = (t % 2) ? random_matrix(rng, r, c, 15 + 10 * (t % 7), 9) : low_rank(rng, r, c, 1 + t % 4);
            CHECK(rank(m) == rank_dense_bareiss(m));
            CHECK(rank(m) <= std::min(r, c));
        }
        CHECK(rank(low_rank(rng, 12, 10, 3)) <= 3);
    }

    TEST_CASE("rank is invariant under row and column permutations") {
        std::mt19937_64 rng(43);
        for (int t = 0; t < 30; ++t) {
            QM m = low_rank(rng, 8, 9, 1 + t % 6);
            std::vector<std::size_t> rp(8), cp(9);
            std::iota(rp.begin(), rp.end(), 0);
            std::iota(cp.begin(), cp.end(), 0);
            std::shuffle(rp.begin(), rp.end(), rng);
            std::shuffle(cp.begin(), cp.end(), rng);
            CHECK(rank(permuted(m, rp, cp)) == rank(m));
        }
    }

    TEST_CASE("rank is preserved when promoting Q to Q(sqrt2)") {
        std::mt19937_64 rng(47);
        for (int t = 0; t < 20; ++t) {
            QM m = (t % 3 == 0) ? low_rank(rng, 10, 10, 2 + t % 7) : random_matrix(rng, 10, 10, 40, 6);
            CHECK(rank(promote(m)) == rank(m));
        }
    }

    TEST_CASE("genuinely irrational matrices") {
        // [[1, sqrt2], [sqrt2, 2]] is singular; [[1, sqrt2], [sqrt2, 1]] is not
        KM a(2, 2), b(2, 2);
        a.set(0, 0, 1);
        a.set(0, 1, QuadScalar::sqrt2());
        a.set(1, 0, QuadScalar::sqrt2());
        a.set(1, 1, 2);
        b = a;
        b.set(1, 1, 1);
        CHECK(rank(a) == 1);
        CHECK(rank(b) == 2);
        CHECK(rank_dense_bareiss(a) == 1);
        auto ns = left_nullspace(a);
        REQUIRE(ns.size() == 1);
        CHECK(in_left_nullspace(a, ns[0]));
    }

    TEST_CASE("left nullspace basis") {
        std::mt19937_64 rng(53);
        for (int t = 0; t < 25; ++t) {
            QM m = low_rank(rng, 9, 6, 1 + t % 5);
            auto ns = left_nullspace(m);
            CHECK(ns.size() + rank(m) == m.rows());
            for (const auto& c : ns) {
                CHECK(in_left_nullspace(m, c));
                CHECK(c.back().second == Rational(1));
                for (const auto& other : ns)
                    if (&other != &c)
                        for (const auto& [k, v] : other) CHECK(k != c.back().first);
            }
            if (ns.size() >= 2) {
                SparseRow<Rational> combo;
                for (const auto& [k, v] : ns[0]) combo.emplace_back(k, Rational(2) * v);
                std::map<std::size_t, Rational> acc(combo.begin(), combo.end());
                for (const auto& [k, v] : ns[1]) acc[k] -= v;
                SparseRow<Rational> sum;
                for (const auto& [k, v] : acc)
                    if (!v.is_zero()) sum.emplace_back(k, v);
                auto coords = express_in_basis(ns, sum);
                REQUIRE(coords.has_value());
                CHECK((*coords)[0] == Rational(2));
                CHECK((*coords)[1] == Rational(-1));
            }
        }
        QM id = QM::identity(3);
        CHECK_FALSE(express_in_basis(left_nullspace(id), SparseRow<Rational>{{0, Rational(1)}}).has_value());
    }

    TEST_CASE("rank plus nullity") {
        std::mt19937_64 rng(59);
        for (int t = 0; t < 20; ++t) {
            QM m = random_matrix(rng, 7, 5 + t % 4, 35, 4);
            Rref<Rational> rr = rref(m);
            CHECK(rr.pivots.size() == rank(m));
            CHECK(left_nullspace(m).size() == m.rows() - rank(m));
            CHECK(left_nullspace(m.transpose()).size() == m.cols() - rank(m));
        }
    }

    TEST_CASE("feasibility verdict") {
        QM a(3, 2), l(3, 1);
        a.set(0, 0, 1);
        a.set(1, 1, 1);
        l.set(2, 0, 1);
        RankVerdict v = feasibility_rank_test(a, l);
        CHECK(v.rank_A == 2);
        CHECK(v.rank_L == 1);
        CHECK(v.rank_AL == 3);
        CHECK(v.strong_condition());
        CHECK_FALSE(v.condition());
        QM l2(3, 1);
        l2.set(0, 0, 5);
        CHECK(feasibility_rank_test(a, l2).condition());
        CHECK_THROWS_AS(feasibility_rank_test(a, QM(2, 1)), UsageError);
    }

    TEST_CASE("particular solutions and witnesses") {
        QM a(3, 2);
        a.set(0, 0, 2);
        a.set(1, 1, 3);
        a.set(2, 0, 4);
        auto ok = particular_solution(a, std::vector<Rational>{2, 3, 4});
        CHECK(ok.feasible);
        CHECK(verify_solution(a, std::vector<Rational>{2, 3, 4}, ok));
        auto zero = particular_solution(a, std::vector<Rational>{0, 0, 0});
        CHECK(zero.feasible);
        CHECK(std::all_of(zero.x.begin(), zero.x.end(), [](const Rational& r) { return r.is_zero(); }));
        auto bad = particular_solution(a, std::vector<Rational>{1, 0, 0});
        CHECK_FALSE(bad.feasible);
        CHECK(verify_solution(a, std::vector<Rational>{1, 0, 0}, bad));
        CHECK_THROWS_AS(particular_solution(a, std::vector<Rational>{1, 0}), UsageError);
    }

    TEST_CASE("B(0,1): the explicit primitive solves the gb+ sector") {
        StructureConstants sc = build_structure(0, 1);
        GammaStructure gs = build_gamma(sc);
        const Basis& b = sc.basis();
        SectorSystem sys = assemble_sector(sc, gs, Weight{-1});
        REQUIRE(sys.params.size() == 1);
        CHECK(sys.params[0].label() == "gb[a0,b1+]");
        std::vector<QuadScalar> rhs = column(sys.L, 0);
        std::vector<QuadScalar> x(sys.fvars.size());
        x[static_cast<std::size_t>(sys.find_fvar({b.id("H1"), b.id("E-d1")}))] = -1;
        x[static_cast<std::size_t>(sys.find_fvar({b.id("E+2d1"), b.id("E+d1")}))] = -2;
        SolveResult<QuadScalar> given{true, x, {}};
        CHECK(verify_solution(sys.A, rhs, given));
        auto found = particular_solution(sys.A, rhs);
        CHECK(found.feasible);
        CHECK(verify_solution(sys.A, rhs, found));
        CHECK(rank(sys.A) == 3);
    }

    TEST_CASE("B(0,2): the gb+ column is infeasible") {
        StructureConstants sc = build_structure(0, 2);
        GammaStructure gs = build_gamma(sc);
        SectorSystem sys = assemble_sector(sc, gs, Weight{-1, 0});
        CHECK(rank(sys.A) == 9);
        RankVerdict v = feasibility_rank_test(sys.A, sys.L);
        CHECK_FALSE(v.condition());
        auto r = particular_solution(sys.A, column(sys.L, 0));
        CHECK_FALSE(r.feasible);
        CHECK(verify_solution(sys.A, column(sys.L, 0), r));
        CHECK(rank(sys.A) == rank_dense_bareiss(sys.A));
    }

    TEST_CASE("short-root ranks for n up to 5") {
        for (int n = 2; n <= 5; ++n) {
            auto s = cached_structures(0, n);
            SectorSystem sys = assemble_sector(s->sc, s->gamma, unit_weight(n, n - 1, 1));
            CHECK(rank(sys.A) == static_cast<std::size_t>(6 * n - 3));
        }
    }
}
