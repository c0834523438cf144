#include "ospcert/certificates.hpp"

#include <algorithm>
#include <cstdlib>

namespace ospcert {

std::string family_name(Family f) {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::IIIPlus: return "III+";
        case Family::IIIMinus: return "III-";
    }
    return "?";
}

std::string Certificate::name() const {
    if (family == Family::IIIPlus || family == Family::IIIMinus) return family_name(family) + "(n=" + std::to_string(n) + ")";
    return family_name(family) + "(j=" + std::to_string(j) + ")";
}

namespace {

std::string H(int k) { return "H" + std::to_string(k); }
std::string d(int k) { return "d" + std::to_string(k); }

// Root label from (coefficient, coordinate) terms, coordinates ascending.
std::string E(std::vector<std::pair<int, int>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::string s = "E";
    for (auto [c, k] : terms) {
        s += c > 0 ? '+' : '-';
        if (std::abs(c) != 1) s += std::to_string(std::abs(c));
        s += d(k);
    }
    return s;
}

// Component from the written pair (X, Y) and target Z. Stored with x <= y;
// swapping the arguments multiplies delta f by -(-1)^{p(X)p(Y)}.
CertComponent comp(const Basis& b, const std::string& X, const std::string& Y, const std::string& Z, const QuadScalar& c) {
    int x = b.id(X), y = b.id(Y), z = b.id(Z);
    if (x <= y) return {{x, y, z}, c};
    QuadScalar s = (b[x].parity & b[y].parity) ? c : -c;
    return {{y, x, z}, s};
}

void require_b0n(const Basis& b) {
    if (b.m() != 0) throw UsageError("certificate families are defined for B(0,n)");
}

}  // namespace

Certificate build_family_I(const Basis& b, int j) {
    require_b0n(b);
    const int n = b.n();
    if (n < 2 || j < 1 || j > n - 1) throw UsageError("Family I needs n >= 2 and 1 <= j <= n-1");
    Certificate c;
    c.family = Family::I;
    c.n = n;
    c.j = j;
    c.target_param = {Generator::a0(), Generator::boson(j, Sign::Plus)};
    c.sector = unit_weight(n, j - 1, -1);
    c.expected_lambda = 4;
    if (j == 1) {
        c.components = {
            comp(b, H(1), E({{2, 1}}), E({{1, 1}}), 1),
            comp(b, H(1), E({{1, 1}}), H(2), 2),
            comp(b, H(1), E({{-1, 1}}), E({{-2, 1}}), -4),
            comp(b, E({{2, 1}}), E({{-1, 1}}), H(2), 1),
        };
    } else {
        c.components = {
            comp(b, H(j - 1), E({{2, j}}), E({{1, j}}), -1),
            comp(b, H(j - 1), E({{1, j}}), H(j + 1), -2),
            comp(b, H(j - 1), E({{-1, j}}), E({{-2, j}}), 4),
            comp(b, E({{2, j}}), E({{-1, j}}), H(j + 1), 1),
        };
    }
    return c;
}

Certificate build_family_II(const Basis& b, int j) {
    require_b0n(b);
    const int n = b.n();
    if (n < 2 || j < 1 || j > n - 1) throw UsageError("Family II needs n >= 2 and 1 <= j <= n-1");
    Certificate c;
    c.family = Family::II;
    c.n = n;
    c.j = j;
    c.target_param = {Generator::a0(), Generator::boson(j, Sign::Minus)};
    c.sector = unit_weight(n, j - 1, 1);
    c.expected_lambda = 2;
    if (j == 1) {
        c.components = {
            comp(b, H(1), E({{-1, 1}}), H(1), -2),
            comp(b, H(1), E({{-1, 1}}), H(2), 2),
            comp(b, E({{2, 2}}), E({{-1, 1}}), E({{2, 2}}), 1),
        };
    } else {
        c.components = {
            comp(b, H(j - 1), E({{-1, j}}), H(j), 2),
            comp(b, H(j - 1), E({{-1, j}}), H(j + 1), -2),
            comp(b, E({{2, j + 1}}), E({{-1, j}}), E({{2, j + 1}}), 1),
        };
    }
    return c;
}

QuadScalar family_III_correction(int n) {
    if (n < 2) throw UsageError("Family III needs n >= 2");
    Weight alpha(static_cast<std::size_t>(n), 0);
    alpha[static_cast<std::size_t>(n - 2)] += 1;
    alpha[static_cast<std::size_t>(n - 1)] -= 1;
    return QuadScalar(1 + weight_dot(alpha, unit_weight(n, 0)));
}

Certificate build_family_III(const Basis& b, Sign sign) {
    require_b0n(b);
    const int n = b.n();
    if (n < 2) throw UsageError("Family III needs n >= 2");
    Certificate c;
    c.n = n;
    c.j = n;
    c.expected_lambda = 1;
    QuadScalar c2 = family_III_correction(n);
    if (sign == Sign::Minus) {
        c.family = Family::IIIMinus;
        c.target_param = {Generator::a0(), Generator::boson(n, Sign::Minus)};
        c.sector = unit_weight(n, n - 1, 1);
        c.components = {
            comp(b, H(n - 1), E({{-1, 1}, {-1, n}}), E({{-1, 1}}), 1),
            comp(b, H(n - 1), E({{1, 1}}), E({{1, 1}, {1, n}}), c2),
            comp(b, H(n - 1), E({{-1, n}}), H(2), -1),
            comp(b, E({{-1, 1}, {-1, n}}), E({{1, 1}}), H(2), 1),
        };
    } else {
        c.family = Family::IIIPlus;
        c.target_param = {Generator::a0(), Generator::boson(n, Sign::Plus)};
        c.sector = unit_weight(n, n - 1, -1);
        c.components = {
            comp(b, H(n - 1), E({{1, 1}, {1, n}}), E({{1, 1}}), -1),
            comp(b, H(n - 1), E({{-1, 1}}), E({{-1, 1}, {-1, n}}), c2),
            comp(b, H(n - 1), E({{1, n}}), H(2), -1),
            comp(b, E({{1, 1}, {1, n}}), E({{-1, 1}}), H(2), 1),
        };
    }
    return c;
}

std::vector<Certificate> all_certificates(const Basis& b) {
    std::vector<Certificate> out;
    for (int j = 1; j < b.n(); ++j) out.push_back(build_family_I(b, j));
    for (int j = 1; j < b.n(); ++j) out.push_back(build_family_II(b, j));
    out.push_back(build_family_III(b, Sign::Plus));
    out.push_back(build_family_III(b, Sign::Minus));
    return out;
}

Certificate mirror_family_III(const Basis& b, const Certificate& c) {
    const int n = b.n();
    auto swap_label = [&](int id) {
        const auto& e = b[id];
        if (e.role == Role::Cartan) return id;
        Weight w = e.weight;
        bool only_1n = true;
        for (int k = 0; k < n; ++k)
            if (w[static_cast<std::size_t>(k)] != 0 && k != 0 && k != n - 1) only_1n = false;
        if (!only_1n) return id;
        int z = b.find_weight(weight_neg(w), e.parity);
        return z < 0 ? id : z;
    };
    Certificate out = c;
    out.family = c.family == Family::IIIPlus ? Family::IIIMinus : Family::IIIPlus;
    out.target_param.boson.sign = flip(c.target_param.boson.sign);
    out.sector = weight_neg(c.sector);
    out.components.clear();
    for (const auto& k : c.components) {
        int x = swap_label(k.row.x), y = swap_label(k.row.y), z = swap_label(k.row.z);
        QuadScalar s = k.coeff;
        if (x > y) {
            std::swap(x, y);
            if (!(b[x].parity & b[y].parity)) s = -s;
        }
        out.components.push_back({{x, y, z}, s});
    }
    return out;
}

SparseRow<QuadScalar> certificate_vector(const Certificate& cert, const SectorSystem& sys) {
    std::map<std::size_t, QuadScalar> acc;
    for (const auto& k : cert.components) {
        int r = sys.find_row(k.row);
        if (r < 0) throw UsageError("certificate " + cert.name() + " refers to a row outside sector");
        acc[static_cast<std::size_t>(r)] += k.coeff;
    }
    SparseRow<QuadScalar> out;
    for (auto& [r, v] : acc)
        if (!v.is_zero()) out.emplace_back(r, v);
    return out;
}

CertVerdict verify_certificate(const Certificate& cert, const SectorSystem& sys) {
    int target = -1;
    for (std::size_t p = 0; p < sys.params.size(); ++p)
        if (sys.params[p] == cert.target_param) target = static_cast<int>(p);
    if (target < 0 || sys.mu != cert.sector)
        throw UsageError("certificate " + cert.name() + " does not belong to this sector");

    CertVerdict v;
    std::vector<int> rows;
    for (const auto& k : cert.components) {
        int r = sys.find_row(k.row);
        if (r < 0) throw UsageError("certificate " + cert.name() + " refers to a row outside sector");
        rows.push_back(r);
    }
    std::map<std::size_t, std::vector<QuadScalar>> per;
    const std::size_t K = cert.components.size();
    for (std::size_t k = 0; k < K; ++k) {
        const auto& row = sys.A.row(static_cast<std::size_t>(rows[k]));
        for (const auto& [col, a] : row) {
            auto& slot = per[col];
            if (slot.empty()) slot.assign(K, QuadScalar(0));
            slot[k] += cert.components[k].coeff * a;
        }
        v.component_lambda.push_back(cert.components[k].coeff * sys.L.get(static_cast<std::size_t>(rows[k]), static_cast<std::size_t>(target)));
        v.lambda += v.component_lambda.back();
    }
    v.null_ok = true;
    for (auto& [col, vals] : per) {
        ContributionEntry e;
        e.fvar = sys.fvars[col];
        e.per_component = vals;
        for (const auto& x : vals) e.total += x;
        if (!e.total.is_zero()) v.null_ok = false;
        v.table.push_back(std::move(e));
    }
    v.pass = v.null_ok && !v.lambda.is_zero() && v.lambda == cert.expected_lambda;
    return v;
}

std::string slot_label(const Basis& b, int id, int j) {
    auto off = [&](int k) {
        int o = k - j;
        if (o == 0) return std::string("[j]");
        return std::string("[j") + (o > 0 ? "+" : "-") + std::to_string(std::abs(o)) + "]";
    };
    const auto& e = b[id];
    if (e.role == Role::Cartan) return "H" + off(e.cartan_index);
    std::string s = "E";
    for (std::size_t c = 0; c < e.weight.size(); ++c) {
        int v = e.weight[c];
        if (v == 0) continue;
        s += v > 0 ? '+' : '-';
        if (std::abs(v) != 1) s += std::to_string(std::abs(v));
        s += "d" + off(static_cast<int>(c) + 1);
    }
    return s;
}

InvarianceReport n_invariance_check(Family family, int j, const std::vector<int>& n_values) {
    if (family != Family::I && family != Family::II) throw UsageError("n-invariance is stated for Families I and II");
    for (int n : n_values)
        if (n < j + 1) throw UsageError("n-invariance at slot " + std::to_string(j) + " needs n >= " + std::to_string(j + 1));
    InvarianceReport rep;
    rep.family = family;
    rep.j = j;
    rep.n_values = n_values;
    for (int n : n_values) {
        auto data = cached_structures(0, n, CartanFrame::Orthonormal);
        const Basis& b = data->sc.basis();
        Certificate cert = family == Family::I ? build_family_I(b, j) : build_family_II(b, j);
        SectorSystem sys = assemble_sector(data->sc, data->gamma, cert.sector);
        CertVerdict v = verify_certificate(cert, sys);
        std::map<std::string, std::vector<std::string>> table;
        for (const auto& e : v.table) {
            std::vector<std::string> vals;
            for (const auto& x : e.per_component) vals.push_back(x.to_string());
            table[slot_label(b, e.fvar.input, j) + "->" + slot_label(b, e.fvar.output, j)] = vals;
        }
        rep.tables.push_back(std::move(table));
        rep.lambdas.push_back(v.lambda);
    }
    rep.identical = !rep.tables.empty();
    for (std::size_t i = 1; i < rep.tables.size(); ++i)
        if (rep.tables[i] != rep.tables[0] || rep.lambdas[i] != rep.lambdas[0]) rep.identical = false;
    return rep;
}

}  // namespace ospcert
