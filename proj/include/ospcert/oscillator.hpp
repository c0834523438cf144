#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ospcert/field.hpp"

namespace ospcert {

enum class GenKind : std::uint8_t { A0 = 0, Fermion = 1, Boson = 2 };
enum class Sign : std::uint8_t { Plus = 0, Minus = 1 };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/*
 * One oscillator generator: the auxiliary fermion a0, a Clifford pair member
 * a_i^{+-} or a boson b_j^{+-}. The defaulted comparison is the PBW order
 * used for normal ordering: a0 < a_1^+ < a_1^- < ... < b_1^+ < b_1^- < ...
 */
struct Generator {
    GenKind kind = GenKind::A0;
    std::uint8_t index = 0;  // 1-based; 0 for a0
    Sign sign = Sign::Plus;

    static Generator a0() { return {GenKind::A0, 0, Sign::Plus}; }
    static Generator fermion(int i, Sign s) { return {GenKind::Fermion, static_cast<std::uint8_t>(i), s}; }
    static Generator boson(int j, Sign s) { return {GenKind::Boson, static_cast<std::uint8_t>(j), s}; }

    bool odd() const { return kind != GenKind::Boson; }
    std::string label() const;  // "a0", "a1+", "b2-"
    static Generator parse(const std::string& label);

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

// A PBW-ordered word. a0 and each a_i^s occur at most once; bosons may repeat.
using Monomial = std::vector<Generator>;
using Word = std::vector<Generator>;

int parity(const Monomial& m);
std::string monomial_label(const Monomial& m);  // "1" for the empty word

class OscElement {
public:
    using Terms = std::map<Monomial, QuadScalar>;

    OscElement() = default;
    static OscElement scalar(const QuadScalar& c);
    static OscElement monomial(const Monomial& m, const QuadScalar& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Common parity of all terms, 0 for the zero element, -1 if mixed.
    int parity() const;
    QuadScalar coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const QuadScalar& c);
    void add(const OscElement& other, const QuadScalar& factor = 1);
    OscElement scaled(const QuadScalar& c) const;

    std::string to_string() const;

    friend bool operator==(const OscElement& x, const OscElement& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const OscElement& x, const OscElement& y) { return !(x == y); }

private:
    Terms terms_;
};

/*
 * Deformation parameter gb_{u,b}: an odd symbol attached to an odd generator
 * u (a0 or a fermion) and a boson b. It enters through the exchange relation
 *     u b - b u = gb_{u,b},
 * plus the rule that products of two parameters are dropped (first order).
 */
struct GbIndex {
    Generator odd;
    Generator boson;

    std::string label() const;  // "gb[a0,b1+]"
    static GbIndex parse(const std::string& label);
    friend auto operator<=>(const GbIndex&, const GbIndex&) = default;
};

// Per-parameter coefficient element of the first-order part. The parameter
// symbol is understood to stand to the left of the element.
using DeformedTail = std::map<GbIndex, OscElement>;

struct DeformedElement {
    OscElement body;
    DeformedTail tail;
};

/*
 * Rewrites c * w into PBW order using
 *     a0 a0 = 1/2,  {a_i^+, a_k^-} = delta_ik,  a_i^s a_i^s = 0,
 *     distinct odd generators anticommute,
 *     [b_j^-, b_k^+] = delta_jk,  bosons commute with odd generators.
 */
OscElement normal_order(const Word& w, const QuadScalar& c = 1);

// Same rewriting with the deformed exchange relation switched on.
DeformedElement normal_order_deformed(const Word& w, const QuadScalar& c = 1);

OscElement multiply(const OscElement& x, const OscElement& y);
DeformedElement multiply_deformed(const OscElement& x, const OscElement& y);

// xy - (-1)^{p(x)p(y)} yx. Throws UsageError on non-homogeneous input.
OscElement super_commutator(const OscElement& x, const OscElement& y);

// First-order part of the super-commutator computed with the deformed
// relation, one element per parameter direction. Throws UsageError on
// non-homogeneous input.
DeformedTail gamma_substitute(const OscElement& x, const OscElement& y);

// Body and tail of the deformed super-commutator in one pass.
DeformedElement deformed_super_commutator(const OscElement& x, const OscElement& y);

}  // namespace ospcert
