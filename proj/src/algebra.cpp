#include "ospcert/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <random>
#include <sstream>
#include <tuple>

namespace ospcert {

Weight weight_add(const Weight& a, const Weight& b) {
    Weight out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Weight weight_sub(const Weight& a, const Weight& b) {
    Weight out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

Weight weight_neg(const Weight& a) {
    Weight out(a);
    for (auto& x : out) x = -x;
    return out;
}

int weight_dot(const Weight& a, const Weight& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool weight_is_zero(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

Weight unit_weight(int dim, int coord, int coeff) {
    Weight w(static_cast<std::size_t>(dim), 0);
    w.at(static_cast<std::size_t>(coord)) = coeff;
    return w;
}

std::string weight_label(const Weight& w, int n) {
    std::string out;
    for (std::size_t c = 0; c < w.size(); ++c) {
        int v = w[c];
        if (v == 0) continue;
        out += v > 0 ? '+' : '-';
        if (std::abs(v) != 1) out += std::to_string(std::abs(v));
        int ci = static_cast<int>(c);
        out += ci < n ? "d" + std::to_string(ci + 1) : "e" + std::to_string(ci - n + 1);
    }
    return out.empty() ? "0" : out;
}

Weight weight_parse(const std::string& s, int m, int n) {
    Weight w(static_cast<std::size_t>(m + n), 0);
    if (s == "0") return w;
    std::size_t i = 0;
    auto fail = [&]() { throw UsageError("bad weight '" + s + "' for B(" + std::to_string(m) + "," + std::to_string(n) + ")"); };
    if (s.empty()) fail();
    while (i < s.size()) {
        if (s[i] != '+' && s[i] != '-') fail();
        int sg = s[i] == '+' ? 1 : -1;
        ++i;
        int coeff = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coeff = coeff * 10 + (s[i++] - '0');
        if (coeff == 0) coeff = 1;
        if (i >= s.size() || (s[i] != 'd' && s[i] != 'e')) fail();
        bool boson = s[i++] == 'd';
        int idx = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx = idx * 10 + (s[i++] - '0');
        int coord = boson ? idx - 1 : n + idx - 1;
        if (idx < 1 || (boson && idx > n) || (!boson && idx > m)) fail();
        w[static_cast<std::size_t>(coord)] += sg * coeff;
    }
    return w;
}

std::string role_name(Role r) {
    switch (r) {
        case Role::Cartan: return "cartan";
        case Role::EvenRoot: return "even_root";
        case Role::OddRoot: return "odd_root";
    }
    return "?";
}

Role role_parse(const std::string& s) {
    if (s == "cartan") return Role::Cartan;
    if (s == "even_root") return Role::EvenRoot;
    if (s == "odd_root") return Role::OddRoot;
    throw UsageError("unknown basis role '" + s + "'");
}

std::string frame_name(CartanFrame f) { return f == CartanFrame::Orthonormal ? "orthonormal" : "coroot"; }

CartanFrame frame_parse(const std::string& s) {
    if (s == "orthonormal") return CartanFrame::Orthonormal;
    if (s == "coroot") return CartanFrame::Coroot;
    throw UsageError("unknown Cartan frame '" + s + "' (expected orthonormal or coroot)");
}

namespace {

// h_c as an oscillator element: N + 1/2 for bosons, N - 1/2 for fermions.
OscElement orthonormal_cartan(int n, int coord) {
    bool boson = coord < n;
    int idx = boson ? coord + 1 : coord - n + 1;
    Generator p = boson ? Generator::boson(idx, Sign::Plus) : Generator::fermion(idx, Sign::Plus);
    Generator q = boson ? Generator::boson(idx, Sign::Minus) : Generator::fermion(idx, Sign::Minus);
    OscElement h = normal_order({p, q});
    h.add_term({}, QuadScalar(Rational(boson ? 1 : -1, 2), 0));
    return h;
}

int sign_coeff(Sign s) { return s == Sign::Plus ? 1 : -1; }

}  // namespace

Basis::Basis(int m, int n, std::vector<BasisElement> elems) : m_(m), n_(n), elems_(std::move(elems)) {
    const int D = m + n;
    for (int c = 0; c < D; ++c) {
        bool boson = c < n;
        int idx = boson ? c + 1 : c - n + 1;
        Generator p = boson ? Generator::boson(idx, Sign::Plus) : Generator::fermion(idx, Sign::Plus);
        Generator q = boson ? Generator::boson(idx, Sign::Minus) : Generator::fermion(idx, Sign::Minus);
        number_ops_.push_back({p, q});
        shifts_.push_back(QuadScalar(Rational(boson ? 1 : -1, 2), 0));
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        BasisElement& e = elems_[i];
        if (e.id != static_cast<int>(i)) throw IntegrityError("basis ids must be dense and ordered");
        if (static_cast<int>(e.weight.size()) != D) throw IntegrityError("weight length mismatch for " + e.label);
        if (e.realization.parity() != e.parity) throw IntegrityError("realization parity mismatch for " + e.label);
        if (!by_label_.emplace(e.label, e.id).second) throw IntegrityError("duplicate basis label " + e.label);
        if (e.parity == 0) ++even_dim_;
        if (e.role == Role::Cartan) {
            int k = e.cartan_index - 1;
            if (k < 0 || k >= D || !weight_is_zero(e.weight)) throw IntegrityError("bad Cartan element " + e.label);
            OscElement expect = orthonormal_cartan(n, k);
            if (k + 1 < D) expect.add(orthonormal_cartan(n, k + 1), -1);
            if (e.realization != expect) throw IntegrityError("Cartan element " + e.label + " is not h_k - h_{k+1}");
            cartan_ids_.push_back(e.id);
        } else {
            if (e.realization.terms().size() != 1) throw IntegrityError("root vector " + e.label + " is not a monomial");
            const auto& [mono, coeff] = *e.realization.terms().begin();
            if (!root_monomials_.emplace(mono, std::make_pair(e.id, coeff)).second)
                throw IntegrityError("two root vectors share a monomial");
            if (!by_weight_.emplace(std::make_pair(e.weight, e.parity), e.id).second)
                throw IntegrityError("root multiplicity above one at " + e.label);
        }
    }
    if (static_cast<int>(cartan_ids_.size()) != D) throw IntegrityError("wrong number of Cartan elements");
}

int Basis::find(const std::string& label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? -1 : it->second;
}

int Basis::id(const std::string& label) const {
    int i = find(label);
    if (i < 0) throw UsageError("no basis element '" + label + "' in B(" + std::to_string(m_) + "," + std::to_string(n_) + ")");
    return i;
}

int Basis::find_weight(const Weight& w, int parity) const {
    auto it = by_weight_.find({w, parity});
    return it == by_weight_.end() ? -1 : it->second;
}

Basis build_basis(int m, int n) {
    if (m < 0 || n < 1) throw UsageError("B(m,n) needs m >= 0 and n >= 1");
    if (m + n > kMaxRank) throw UsageError("B(" + std::to_string(m) + "," + std::to_string(n) + ") exceeds the supported rank " + std::to_string(kMaxRank));
    const int D = m + n;
    std::vector<BasisElement> out;

    for (int k = 0; k < D; ++k) {
        BasisElement e;
        e.role = Role::Cartan;
        e.cartan_index = k + 1;
        e.weight = Weight(static_cast<std::size_t>(D), 0);
        e.parity = 0;
        e.realization = orthonormal_cartan(n, k);
        if (k + 1 < D) e.realization.add(orthonormal_cartan(n, k + 1), -1);
        e.label = "H" + std::to_string(k + 1);
        out.push_back(std::move(e));
    }

    std::vector<Generator> bos, fer;
    for (int j = 1; j <= n; ++j)
        for (Sign s : {Sign::Plus, Sign::Minus}) bos.push_back(Generator::boson(j, s));
    for (int i = 1; i <= m; ++i)
        for (Sign s : {Sign::Plus, Sign::Minus}) fer.push_back(Generator::fermion(i, s));
    auto coord_of = [&](const Generator& g) { return g.kind == GenKind::Boson ? g.index - 1 : n + g.index - 1; };
    auto wt_of = [&](const std::vector<Generator>& gs) {
        Weight w(static_cast<std::size_t>(D), 0);
        for (const auto& g : gs)
            if (g.kind != GenKind::A0) w[static_cast<std::size_t>(coord_of(g))] += sign_coeff(g.sign);
        return w;
    };

    std::vector<std::pair<Weight, OscElement>> even;
    for (std::size_t x = 0; x < bos.size(); ++x) {
        for (std::size_t y = x; y < bos.size(); ++y) {
            if (bos[x].index == bos[y].index && bos[x].sign != bos[y].sign) continue;
            even.emplace_back(wt_of({bos[x], bos[y]}), normal_order({bos[x], bos[y]}));
        }
    }
    for (std::size_t x = 0; x < fer.size(); ++x)
        for (std::size_t y = x + 1; y < fer.size(); ++y)
            if (fer[x].index != fer[y].index) even.emplace_back(wt_of({fer[x], fer[y]}), normal_order({fer[x], fer[y]}));
    // Short roots +-e_i carry sqrt 2 so that [E_{e_i}, E_{-e_i}] is the coroot 2h.
    for (const auto& f : fer) even.emplace_back(wt_of({f}), normal_order({f, Generator::a0()}, QuadScalar::sqrt2()));
    std::sort(even.begin(), even.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [w, r] : even) {
        BasisElement e;
        e.role = Role::EvenRoot;
        e.weight = w;
        e.parity = 0;
        e.realization = std::move(r);
        out.push_back(std::move(e));
    }

    for (const auto& b : bos) {
        BasisElement e;
        e.role = Role::OddRoot;
        e.weight = wt_of({b});
        e.parity = 1;
        e.realization = normal_order({Generator::a0(), b});
        out.push_back(std::move(e));
    }
    for (const auto& f : fer) {
        for (const auto& b : bos) {
            BasisElement e;
            e.role = Role::OddRoot;
            e.weight = wt_of({f, b});
            e.parity = 1;
            e.realization = normal_order({f, b});
            out.push_back(std::move(e));
        }
    }

    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].id = static_cast<int>(i);
        if (out[i].role != Role::Cartan) out[i].label = "E" + weight_label(out[i].weight, n);
    }
    return Basis(m, n, std::move(out));
}

Projection project(const Basis& basis, const OscElement& e, CartanFrame frame) {
    const int D = basis.rank();
    Projection p;
    std::vector<QuadScalar> y(static_cast<std::size_t>(D));
    std::map<int, QuadScalar> roots;
    for (const auto& [mono, c] : e.terms()) {
        if (mono.empty()) {
            p.central += c;
            continue;
        }
        bool matched = false;
        if (mono.size() == 2) {
            for (int k = 0; k < D; ++k) {
                if (mono == basis.number_operator(k)) {
                    y[static_cast<std::size_t>(k)] += c;
                    p.central -= c * basis.cartan_shift(k);
                    matched = true;
                    break;
                }
            }
        }
        if (matched) continue;
        auto it = basis.root_monomials().find(mono);
        if (it == basis.root_monomials().end())
            throw IntegrityError("monomial " + monomial_label(mono) + " is outside the span of the basis");
        roots[it->second.first] += c / it->second.second;
    }
    QuadScalar run;
    for (int k = 0; k < D; ++k) {
        QuadScalar x;
        if (frame == CartanFrame::Coroot) {
            run += y[static_cast<std::size_t>(k)];
            x = run;
        } else {
            x = y[static_cast<std::size_t>(k)];
        }
        if (!x.is_zero()) p.coords.emplace_back(basis.cartan_ids()[static_cast<std::size_t>(k)], x);
    }
    for (auto& [id, c] : roots)
        if (!c.is_zero()) p.coords.emplace_back(id, c);
    std::sort(p.coords.begin(), p.coords.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return p;
}

StructureConstants::StructureConstants(Basis basis, std::vector<SparseVec> table)
    : basis_(std::move(basis)), table_(std::move(table)) {
    if (table_.size() != static_cast<std::size_t>(dim()) * static_cast<std::size_t>(dim()))
        throw IntegrityError("structure table has the wrong size");
}

bool StructureConstants::is_rational() const {
    for (const auto& v : table_)
        for (const auto& [z, c] : v)
            if (!c.is_rational()) return false;
    return true;
}

StructureConstants build_structure(const Basis& basis) {
    const int N = basis.size();
    std::vector<SparseVec> table(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            OscElement r = super_commutator(basis[i].realization, basis[j].realization);
            Projection p = project(basis, r, CartanFrame::Coroot);
            if (!p.central.is_zero())
                throw IntegrityError("[" + basis[i].label + ", " + basis[j].label + "] has a central part " + p.central.to_string());
            table[static_cast<std::size_t>(i) * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)] = std::move(p.coords);
        }
    }
    return StructureConstants(basis, std::move(table));
}

StructureConstants build_structure(int m, int n) { return build_structure(build_basis(m, n)); }

SparseVec bracket(const StructureConstants& sc, int i, int j) {
    if (i < 0 || j < 0 || i >= sc.dim() || j >= sc.dim()) throw UsageError("basis id out of range");
    return sc.bracket(i, j);
}

void vec_add(SparseVec& acc, const SparseVec& v, const QuadScalar& factor) {
    if (factor.is_zero() || v.empty()) return;
    SparseVec out;
    out.reserve(acc.size() + v.size());
    std::size_t a = 0, b = 0;
    while (a < acc.size() || b < v.size()) {
        if (b == v.size() || (a < acc.size() && acc[a].first < v[b].first)) {
            out.push_back(std::move(acc[a++]));
        } else if (a == acc.size() || v[b].first < acc[a].first) {
            out.emplace_back(v[b].first, v[b].second * factor);
            ++b;
        } else {
            QuadScalar s = acc[a].second + v[b].second * factor;
            if (!s.is_zero()) out.emplace_back(acc[a].first, std::move(s));
            ++a;
            ++b;
        }
    }
    acc = std::move(out);
}

SparseVec bracket_vec(const StructureConstants& sc, const SparseVec& x, const SparseVec& y) {
    SparseVec out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) vec_add(out, sc.bracket(i, j), ci * cj);
    return out;
}

int vec_parity(const Basis& basis, const SparseVec& v) {
    int p = -2;
    for (const auto& [i, c] : v) {
        int q = basis[i].parity;
        if (p == -2) p = q;
        else if (p != q) return -1;
    }
    return p == -2 ? 0 : p;
}

namespace {

void note_failure(CheckReport& r, const std::string& what) {
    ++r.failures;
    if (r.offending.size() < 10) r.offending.push_back(what);
}

}  // namespace

CheckReport cartan_eigenvalue_check(const StructureConstants& sc) {
    const Basis& B = sc.basis();
    const int D = B.rank();
    CheckReport rep;
    for (int k = 0; k < D; ++k) {
        Weight coroot(static_cast<std::size_t>(D), 0);
        coroot[static_cast<std::size_t>(k)] = 1;
        if (k + 1 < D) coroot[static_cast<std::size_t>(k + 1)] = -1;
        int h = B.cartan_ids()[static_cast<std::size_t>(k)];
        for (int a = 0; a < B.size(); ++a) {
            ++rep.checked;
            SparseVec expect;
            if (B[a].role != Role::Cartan) {
                int ev = weight_dot(coroot, B[a].weight);
                if (ev != 0) expect.emplace_back(a, QuadScalar(ev));
            }
            if (sc.bracket(h, a) != expect) note_failure(rep, "[" + B[h].label + ", " + B[a].label + "]");
        }
    }
    return rep;
}

CheckReport weight_additivity_check(const StructureConstants& sc) {
    const Basis& B = sc.basis();
    CheckReport rep;
    for (int i = 0; i < B.size(); ++i) {
        for (int j = 0; j < B.size(); ++j) {
            Weight w = weight_add(B[i].weight, B[j].weight);
            int p = (B[i].parity + B[j].parity) % 2;
            for (const auto& [z, c] : sc.bracket(i, j)) {
                ++rep.checked;
                if (B[z].weight != w || B[z].parity != p)
                    note_failure(rep, "[" + B[i].label + ", " + B[j].label + "] -> " + B[z].label);
            }
        }
    }
    return rep;
}

CheckReport antisymmetry_check(const StructureConstants& sc) {
    const Basis& B = sc.basis();
    CheckReport rep;
    for (int i = 0; i < B.size(); ++i) {
        for (int j = i; j < B.size(); ++j) {
            ++rep.checked;
            // [x,y] + (-1)^{p(x)p(y)} [y,x] = 0
            SparseVec sum = sc.bracket(i, j);
            vec_add(sum, sc.bracket(j, i), (B[i].parity & B[j].parity) ? QuadScalar(-1) : QuadScalar(1));
            if (!sum.empty()) note_failure(rep, B[i].label + ", " + B[j].label);
        }
    }
    return rep;
}

CheckReport jacobi_check(const StructureConstants& sc, std::size_t samples, std::uint64_t seed) {
    const Basis& B = sc.basis();
    const int N = B.size();
    CheckReport rep;
    auto one = [&](int x, int y, int z) {
        ++rep.checked;
        int px = B[x].parity, py = B[y].parity, pz = B[z].parity;
        SparseVec total;
        SparseVec yz = sc.bracket(y, z), zx = sc.bracket(z, x), xy = sc.bracket(x, y);
        vec_add(total, bracket_vec(sc, {{x, QuadScalar(1)}}, yz), (px & pz) ? QuadScalar(-1) : QuadScalar(1));
        vec_add(total, bracket_vec(sc, {{y, QuadScalar(1)}}, zx), (py & px) ? QuadScalar(-1) : QuadScalar(1));
        vec_add(total, bracket_vec(sc, {{z, QuadScalar(1)}}, xy), (pz & py) ? QuadScalar(-1) : QuadScalar(1));
        if (!total.empty()) note_failure(rep, "(" + B[x].label + ", " + B[y].label + ", " + B[z].label + ")");
    };
    if (samples == 0) {
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                for (int z = 0; z < N; ++z) one(x, y, z);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, N - 1);
        for (std::size_t s = 0; s < samples; ++s) {
            int x = pick(rng), y = pick(rng), z = pick(rng);
            one(x, y, z);
        }
    }
    return rep;
}

}  // namespace ospcert
