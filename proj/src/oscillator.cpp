#include "ospcert/oscillator.hpp"

#include <optional>
#include <sstream>
#include <utility>

namespace ospcert {

std::string Generator::label() const {
    switch (kind) {
        case GenKind::A0: return "a0";
        case GenKind::Fermion: return "a" + std::to_string(index) + (sign == Sign::Plus ? "+" : "-");
        case GenKind::Boson: return "b" + std::to_string(index) + (sign == Sign::Plus ? "+" : "-");
    }
    return "?";
}

Generator Generator::parse(const std::string& s) {
    if (s == "a0") return a0();
    if (s.size() < 3 || (s[0] != 'a' && s[0] != 'b') || (s.back() != '+' && s.back() != '-'))
        throw UsageError("bad generator label '" + s + "'");
    int idx = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw UsageError("bad generator label '" + s + "'");
        idx = idx * 10 + (s[i] - '0');
    }
    if (idx < 1 || idx > 255) throw UsageError("bad generator index in '" + s + "'");
    Sign sg = s.back() == '+' ? Sign::Plus : Sign::Minus;
    return s[0] == 'a' ? fermion(idx, sg) : boson(idx, sg);
}

int parity(const Monomial& m) {
    int p = 0;
    for (const auto& g : m) p ^= g.odd() ? 1 : 0;
    return p;
}

std::string monomial_label(const Monomial& m) {
    if (m.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ' ';
        out += m[i].label();
    }
    return out;
}

OscElement OscElement::scalar(const QuadScalar& c) {
    OscElement e;
    e.add_term({}, c);
    return e;
}

OscElement OscElement::monomial(const Monomial& m, const QuadScalar& c) {
    return normal_order(m, c);
}

int OscElement::parity() const {
    int p = -2;
    for (const auto& [m, c] : terms_) {
        int q = ospcert::parity(m);
        if (p == -2) p = q;
        else if (p != q) return -1;
    }
    return p == -2 ? 0 : p;
}

QuadScalar OscElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? QuadScalar(0) : it->second;
}

void OscElement::add_term(const Monomial& m, const QuadScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void OscElement::add(const OscElement& other, const QuadScalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [m, c] : other.terms_) add_term(m, c * factor);
}

OscElement OscElement::scaled(const QuadScalar& c) const {
    OscElement out;
    out.add(*this, c);
    return out;
}

std::string OscElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (!m.empty()) os << " " << monomial_label(m);
    }
    return os.str();
}

std::string GbIndex::label() const { return "gb[" + odd.label() + "," + boson.label() + "]"; }

GbIndex GbIndex::parse(const std::string& s) {
    auto comma = s.find(',');
    if (s.rfind("gb[", 0) != 0 || s.back() != ']' || comma == std::string::npos)
        throw UsageError("bad parameter label '" + s + "'");
    GbIndex p{Generator::parse(s.substr(3, comma - 3)), Generator::parse(s.substr(comma + 1, s.size() - comma - 2))};
    if (!p.odd.odd() || p.boson.odd()) throw UsageError("bad parameter label '" + s + "'");
    return p;
}

namespace {

struct Item {
    std::optional<GbIndex> param;
    Word word;
    QuadScalar coeff;
};

// Finds the first position that needs rewriting, or -1 if w is PBW ordered.
int first_violation(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1] < w[i]) return static_cast<int>(i);
        if (w[i] == w[i + 1] && w[i].odd()) return static_cast<int>(i);
    }
    return -1;
}

Word without_pair(const Word& w, std::size_t i) {
    Word out;
    out.reserve(w.size() - 2);
    out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(i));
    out.insert(out.end(), w.begin() + static_cast<long>(i) + 2, w.end());
    return out;
}

DeformedElement rewrite(const Word& start, const QuadScalar& c, bool deformed) {
    DeformedElement out;
    std::vector<Item> stack;
    stack.push_back({std::nullopt, start, c});
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        if (it.coeff.is_zero()) continue;
        int pos = first_violation(it.word);
        if (pos < 0) {
            if (it.param) out.tail[*it.param].add_term(it.word, it.coeff);
            else out.body.add_term(it.word, it.coeff);
            continue;
        }
        std::size_t i = static_cast<std::size_t>(pos);
        const Generator x = it.word[i];
        const Generator y = it.word[i + 1];

        if (x == y) {  // odd generator squared
            if (x.kind == GenKind::A0) {
                stack.push_back({it.param, without_pair(it.word, i), it.coeff * QuadScalar(Rational(1, 2), 0)});
            }
            continue;  // a_i^s a_i^s = 0
        }

        Word swapped = it.word;
        std::swap(swapped[i], swapped[i + 1]);
        bool same_pair = x.kind == y.kind && x.index == y.index && x.kind != GenKind::A0;

        if (x.odd() && y.odd()) {
            stack.push_back({it.param, std::move(swapped), -it.coeff});
            if (same_pair) stack.push_back({it.param, without_pair(it.word, i), it.coeff});  // a^- a^+ = -a^+ a^- + 1
        } else if (!x.odd() && !y.odd()) {
            stack.push_back({it.param, std::move(swapped), it.coeff});
            if (same_pair) stack.push_back({it.param, without_pair(it.word, i), it.coeff});  // b^- b^+ = b^+ b^- + 1
        } else {
            // Only "boson before odd" can be out of order.
            stack.push_back({it.param, std::move(swapped), it.coeff});
            if (deformed && !it.param) {
                // b u = u b - gb_{u,b}; the odd parameter is carried to the far
                // left, passing every odd generator in front of position i.
                int odd_before = 0;
                for (std::size_t k = 0; k < i; ++k) odd_before ^= it.word[k].odd() ? 1 : 0;
                QuadScalar s = odd_before ? it.coeff : -it.coeff;
                stack.push_back({GbIndex{y, x}, without_pair(it.word, i), s});
            }
        }
    }
    return out;
}

int homogeneous_parity(const OscElement& e, const char* what) {
    int p = e.parity();
    if (p < 0) throw UsageError(std::string("non-homogeneous operand in ") + what);
    return p;
}

}  // namespace

OscElement normal_order(const Word& w, const QuadScalar& c) { return rewrite(w, c, false).body; }

DeformedElement normal_order_deformed(const Word& w, const QuadScalar& c) { return rewrite(w, c, true); }

OscElement multiply(const OscElement& x, const OscElement& y) {
    OscElement out;
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            Word w = mx;
            w.insert(w.end(), my.begin(), my.end());
            out.add(normal_order(w, cx * cy));
        }
    }
    return out;
}

DeformedElement multiply_deformed(const OscElement& x, const OscElement& y) {
    DeformedElement out;
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            Word w = mx;
            w.insert(w.end(), my.begin(), my.end());
            DeformedElement part = normal_order_deformed(w, cx * cy);
            out.body.add(part.body);
            for (const auto& [p, e] : part.tail) out.tail[p].add(e);
        }
    }
    return out;
}

OscElement super_commutator(const OscElement& x, const OscElement& y) {
    int px = homogeneous_parity(x, "super_commutator");
    int py = homogeneous_parity(y, "super_commutator");
    OscElement out = multiply(x, y);
    out.add(multiply(y, x), (px & py) ? QuadScalar(1) : QuadScalar(-1));
    return out;
}

DeformedElement deformed_super_commutator(const OscElement& x, const OscElement& y) {
    int px = homogeneous_parity(x, "gamma_substitute");
    int py = homogeneous_parity(y, "gamma_substitute");
    QuadScalar s = (px & py) ? QuadScalar(1) : QuadScalar(-1);
    DeformedElement out = multiply_deformed(x, y);
    DeformedElement yx = multiply_deformed(y, x);
    out.body.add(yx.body, s);
    for (const auto& [p, e] : yx.tail) out.tail[p].add(e, s);
    for (auto it = out.tail.begin(); it != out.tail.end();) {
        if (it->second.is_zero()) it = out.tail.erase(it);
        else ++it;
    }
    return out;
}

DeformedTail gamma_substitute(const OscElement& x, const OscElement& y) {
    return deformed_super_commutator(x, y).tail;
}

}  // namespace ospcert
