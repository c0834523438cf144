#include <doctest.h>

#include <random>

#include "ospcert/algebra.hpp"
#include "ospcert/errors.hpp"

using namespace ospcert;

namespace {

Generator B(int j, Sign s) { return Generator::boson(j, s); }
Generator F(int i, Sign s) { return Generator::fermion(i, s); }
const Sign P = Sign::Plus, M = Sign::Minus;

OscElement mono(const Word& w, QuadScalar c = 1) { return OscElement::monomial(w, c); }

// Random word over a0, a_1^+-, b_1^+-, b_2^+-.
Word random_word(std::mt19937_64& rng, int len) {
    std::vector<Generator> gens{Generator::a0(), F(1, P), F(1, M), B(1, P), B(1, M), B(2, P), B(2, M)};
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    Word w;
    for (int k = 0; k < len; ++k) w.push_back(gens[pick(rng)]);
    return w;
}

}  // namespace

TEST_SUITE("oscillator") {
    TEST_CASE("generator labels and order") {
        CHECK(Generator::a0() < F(1, P));
        CHECK(F(1, P) < F(1, M));
        CHECK(F(2, M) < B(1, P));
        CHECK(B(1, M) < B(2, P));
        CHECK(Generator::parse("b2-") == B(2, M));
        CHECK(Generator::parse("a1+") == F(1, P));
        CHECK(B(3, P).label() == "b3+");
        CHECK_THROWS_AS(Generator::parse("c1+"), UsageError);
    }

    TEST_CASE("boson exchange follows b^- b^+ = b^+ b^- + 1") {
        OscElement e = normal_order({B(1, M), B(1, P)});
        OscElement want = mono({B(1, P), B(1, M)});
        want.add_term({}, 1);
        CHECK(e == want);
        // different modes commute
        CHECK(normal_order({B(2, M), B(1, P)}) == mono({B(1, P), B(2, M)}));
    }

    TEST_CASE("a0 squares to one half") { CHECK(normal_order({Generator::a0(), Generator::a0()}) == OscElement::scalar(QuadScalar(Rational(1, 2), Rational(0)))); }

    TEST_CASE("ordered words are left alone") { CHECK(normal_order({B(1, P), B(2, P)}) == mono({B(1, P), B(2, P)})); }

    TEST_CASE("fermion relations") {
        CHECK(normal_order({F(1, P), F(1, P)}).is_zero());
        // a^- a^+ = 1 - a^+ a^-
        OscElement e = normal_order({F(1, M), F(1, P)});
        OscElement want = OscElement::scalar(1);
        want.add_term({F(1, P), F(1, M)}, -1);
        CHECK(e == want);
        // a^+ a^- a^+ = a^+
        CHECK(normal_order({F(1, P), F(1, M), F(1, P)}) == mono({F(1, P)}));
        // distinct odd generators anticommute, bosons commute with them
        CHECK(normal_order({F(1, P), Generator::a0()}) == mono({Generator::a0(), F(1, P)}, -1));
        CHECK(normal_order({F(2, P), F(1, M)}) == mono({F(1, M), F(2, P)}, -1));
        CHECK(normal_order({B(1, P), Generator::a0()}) == mono({Generator::a0(), B(1, P)}));
    }

    TEST_CASE("normal ordering is idempotent") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 200; ++t) {
            OscElement e = normal_order(random_word(rng, 1 + t % 6));
            OscElement again;
            for (const auto& [m, c] : e.terms()) again.add(normal_order(m, c));
            CHECK(again == e);
        }
    }

    TEST_CASE("super-antisymmetry on random homogeneous words") {
        std::mt19937_64 rng(12);
        for (int t = 0; t < 200; ++t) {
            OscElement x = normal_order(random_word(rng, 1 + t % 3));
            OscElement y = normal_order(random_word(rng, 1 + (t / 3) % 3));
            if (x.is_zero() || y.is_zero() || x.parity() < 0 || y.parity() < 0) continue;
            OscElement lhs = super_commutator(x, y);
            OscElement rhs = super_commutator(y, x).scaled((x.parity() & y.parity()) ? -1 : 1);
            lhs.add(rhs);
            CHECK(lhs.is_zero());
        }
    }

    TEST_CASE("super-commutator parity and homogeneity") {
        OscElement x = mono({Generator::a0(), B(1, P)});
        OscElement y = mono({B(1, M), B(2, P)});
        CHECK(super_commutator(x, y).parity() == 1);
        CHECK(super_commutator(x, y) == mono({Generator::a0(), B(2, P)}, -1));
        OscElement mixed = mono({B(1, P)});
        mixed.add_term({Generator::a0()}, 1);
        CHECK(mixed.parity() == -1);
        CHECK_THROWS_AS(super_commutator(mixed, y), UsageError);
        CHECK_THROWS_AS(gamma_substitute(mixed, y), UsageError);
        OscElement e = mono({B(1, P), B(2, P)});
        CHECK(super_commutator(e, e).is_zero());
    }

    TEST_CASE("odd root vectors close onto the Cartan") {
        // {a0 b1+, a0 b1-} = h_1 = N_1 + 1/2, the Cartan element H_1 of B(0,1)
        Basis basis = build_basis(0, 1);
        OscElement c = super_commutator(mono({Generator::a0(), B(1, P)}), mono({Generator::a0(), B(1, M)}));
        Projection pr = project(basis, c);
        CHECK(pr.central.is_zero());
        REQUIRE(pr.coords.size() == 1);
        CHECK(pr.coords[0].first == basis.id("H1"));
        CHECK(pr.coords[0].second == QuadScalar(1));
    }

    TEST_CASE("Cartan acts on an odd root vector") {
        Basis basis = build_basis(0, 2);
        const auto& H1 = basis[basis.id("H1")].realization;
        const auto& Ed1 = basis[basis.id("E+d1")].realization;
        CHECK(super_commutator(H1, Ed1) == Ed1);
    }

    TEST_CASE("deformed exchange b u = u b - gb") {
        DeformedElement d = normal_order_deformed({B(1, P), Generator::a0()});
        CHECK(d.body == mono({Generator::a0(), B(1, P)}));
        REQUIRE(d.tail.size() == 1);
        GbIndex p{Generator::a0(), B(1, P)};
        CHECK(d.tail.begin()->first == p);
        CHECK(d.tail.begin()->second == OscElement::scalar(-1));
        CHECK(p.label() == "gb[a0,b1+]");
        CHECK(GbIndex::parse("gb[a1-,b2+]") == GbIndex{F(1, M), B(2, P)});
    }

    TEST_CASE("gamma substitution: even pairs of B(0,n) give nothing, parity shifts by one") {
        Basis basis = build_basis(0, 2);
        for (int i = 0; i < basis.size(); ++i) {
            for (int j = 0; j < basis.size(); ++j) {
                DeformedTail t = gamma_substitute(basis[i].realization, basis[j].realization);
                if (basis[i].parity == 0 && basis[j].parity == 0) {
                    CHECK(t.empty());
                    continue;
                }
                for (const auto& [param, e] : t)
                    if (!e.is_zero()) CHECK(e.parity() == (basis[i].parity + basis[j].parity + 1) % 2);
            }
        }
    }

    TEST_CASE("deformed super-commutator body equals the undeformed one") {
        Basis basis = build_basis(1, 1);
        for (int i = 0; i < basis.size(); ++i)
            for (int j = 0; j < basis.size(); ++j) {
                DeformedElement d = deformed_super_commutator(basis[i].realization, basis[j].realization);
                CHECK(d.body == super_commutator(basis[i].realization, basis[j].realization));
                CHECK(d.tail == gamma_substitute(basis[i].realization, basis[j].realization));
            }
    }
}
