#include "ospcert/cohomology.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace ospcert {

std::string fvar_label(const Basis& b, const FVariable& f) {
    return "f(" + b[f.input].label + "->" + b[f.output].label + ")";
}

std::string row_label(const Basis& b, const RowKey& r) {
    return "(" + b[r.x].label + "," + b[r.y].label + ")@" + b[r.z].label;
}

int SectorSystem::find_row(const RowKey& k) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), k);
    return (it != rows.end() && *it == k) ? static_cast<int>(it - rows.begin()) : -1;
}

int SectorSystem::find_fvar(const FVariable& f) const {
    auto it = std::lower_bound(fvars.begin(), fvars.end(), f);
    return (it != fvars.end() && *it == f) ? static_cast<int>(it - fvars.begin()) : -1;
}

bool is_short_root(const Weight& mu) {
    int nonzero = 0;
    for (int v : mu) {
        if (v == 0) continue;
        if (std::abs(v) != 1) return false;
        ++nonzero;
    }
    return nonzero == 1;
}

namespace {

// Basis ids of the given weight and parity.
std::vector<int> ids_of(const Basis& basis, const Weight& w, int parity) {
    if (parity == 0 && weight_is_zero(w)) return basis.cartan_ids();
    int id = basis.find_weight(w, parity);
    if (id < 0) return {};
    return {id};
}

QuadScalar coeff_of(const SparseVec& v, int id) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const auto& e, int k) { return e.first < k; });
    return (it != v.end() && it->first == id) ? it->second : QuadScalar(0);
}

std::size_t column_of(const std::map<FVariable, std::size_t>& index, const FVariable& f) {
    auto it = index.find(f);
    if (it == index.end()) throw IntegrityError("coboundary row touches an f-variable outside its sector");
    return it->second;
}

void accumulate(std::map<std::size_t, QuadScalar>& acc, std::size_t col, const QuadScalar& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(col, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) acc.erase(it);
    }
}

}  // namespace

std::vector<FVariable> enumerate_fvars_any(const Basis& basis, const Weight& mu) {
    if (static_cast<int>(mu.size()) != basis.rank()) throw UsageError("sector weight has the wrong length");
    std::vector<FVariable> out;
    for (int x = 0; x < basis.size(); ++x)
        for (int z : ids_of(basis, weight_add(basis[x].weight, mu), 1 - basis[x].parity)) out.push_back({x, z});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FVariable> enumerate_fvars(const Basis& basis, const Weight& mu) {
    if (basis.m() == 0 && (static_cast<int>(mu.size()) != basis.rank() || !is_short_root(mu)))
        throw UsageError("sector " + weight_label(mu, basis.n()) + " is not a short root of B(0," + std::to_string(basis.n()) + ")");
    return enumerate_fvars_any(basis, mu);
}

std::vector<RowKey> enumerate_rows(const Basis& basis, const Weight& mu) {
    std::vector<RowKey> out;
    const int N = basis.size();
    for (int x = 0; x < N; ++x) {
        for (int y = x; y < N; ++y) {
            if (x == y && basis[x].parity == 0) continue;
            Weight w = weight_add(weight_add(basis[x].weight, basis[y].weight), mu);
            int pz = (basis[x].parity + basis[y].parity + 1) % 2;
            for (int z : ids_of(basis, w, pz)) out.push_back({x, y, z});
        }
    }
    return out;
}

SparseRow<QuadScalar> expand_coboundary(const StructureConstants& sc, const RowKey& row,
                                        const std::map<FVariable, std::size_t>& fvar_index) {
    const Basis& B = sc.basis();
    const int X = row.x, Y = row.y, Z = row.z;
    const int pX = B[X].parity, pY = B[Y].parity;
    std::map<std::size_t, QuadScalar> acc;

    // (-1)^{p(X)} [X, f(Y)]
    QuadScalar s1 = pX ? QuadScalar(-1) : QuadScalar(1);
    for (int V : ids_of(B, weight_sub(B[Z].weight, B[X].weight), 1 - pY)) {
        QuadScalar c = coeff_of(sc.bracket(X, V), Z);
        if (!c.is_zero()) accumulate(acc, column_of(fvar_index, {Y, V}), s1 * c);
    }
    // -(-1)^{(p(X)+1)p(Y)} [Y, f(X)]
    QuadScalar s2 = (((pX + 1) * pY) % 2) ? QuadScalar(1) : QuadScalar(-1);
    for (int V : ids_of(B, weight_sub(B[Z].weight, B[Y].weight), 1 - pX)) {
        QuadScalar c = coeff_of(sc.bracket(Y, V), Z);
        if (!c.is_zero()) accumulate(acc, column_of(fvar_index, {X, V}), s2 * c);
    }
    // -f([X,Y])
    for (const auto& [W, c] : sc.bracket(X, Y)) accumulate(acc, column_of(fvar_index, {W, Z}), -c);

    SparseRow<QuadScalar> out;
    out.reserve(acc.size());
    for (auto& [col, v] : acc) out.emplace_back(col, std::move(v));
    return out;
}

SectorSystem assemble_sector(const StructureConstants& sc, const GammaStructure& gs, const Weight& mu) {
    const Basis& B = sc.basis();
    SectorSystem sys;
    sys.mu = mu;
    sys.fvars = enumerate_fvars_any(B, mu);
    sys.rows = enumerate_rows(B, mu);
    std::vector<int> pids;
    for (int p = 0; p < gs.param_count(); ++p)
        if (gs.weight_of(p) == mu) {
            pids.push_back(p);
            sys.params.push_back(gs.params()[static_cast<std::size_t>(p)]);
        }
    std::map<FVariable, std::size_t> index;
    for (std::size_t i = 0; i < sys.fvars.size(); ++i) index.emplace(sys.fvars[i], i);
    sys.A = ExactMatrix<QuadScalar>(0, sys.fvars.size());
    sys.L = ExactMatrix<QuadScalar>(0, pids.size());
    for (const auto& r : sys.rows) {
        sys.A.append_row(expand_coboundary(sc, r, index));
        SparseRow<QuadScalar> lrow;
        for (std::size_t k = 0; k < pids.size(); ++k) {
            QuadScalar g = coeff_of(gs.get(r.x, r.y, pids[k]), r.z);
            if (!g.is_zero()) lrow.emplace_back(k, g);
        }
        sys.L.append_row(std::move(lrow));
    }
    return sys;
}

std::vector<Weight> all_sectors(const Basis& basis, const GammaStructure& gs) {
    std::set<Weight> s;
    for (int x = 0; x < basis.size(); ++x)
        for (int z = 0; z < basis.size(); ++z)
            if (basis[x].parity != basis[z].parity) s.insert(weight_sub(basis[z].weight, basis[x].weight));
    for (int p = 0; p < gs.param_count(); ++p) s.insert(gs.weight_of(p));
    return {s.begin(), s.end()};
}

std::size_t full_system_row_count(const Basis& basis) {
    std::size_t even = static_cast<std::size_t>(basis.even_dim()), odd = static_cast<std::size_t>(basis.odd_dim());
    // even-even pairs (x<y) and odd-odd pairs (x<=y) target odd Z; mixed pairs target even Z.
    std::size_t ee = even * (even - 1) / 2, oo = odd * (odd + 1) / 2, eo = even * odd;
    return (ee + oo) * odd + eo * even;
}

std::array<int, 8> fvar_census(const Basis& basis, const Weight& mu) {
    if (basis.m() != 0 || !is_short_root(mu)) throw UsageError("census is defined for short-root sectors of B(0,n)");
    int j = 0, s = 0;
    for (int c = 0; c < basis.rank(); ++c)
        if (mu[static_cast<std::size_t>(c)] != 0) {
            j = c;
            s = mu[static_cast<std::size_t>(c)];
        }
    auto odd_sign = [&](const Weight& w, int& coord) {
        for (int c = 0; c < basis.rank(); ++c)
            if (w[static_cast<std::size_t>(c)] != 0) {
                coord = c;
                return w[static_cast<std::size_t>(c)];
            }
        return 0;
    };
    Weight minus2mu = weight_neg(weight_add(mu, mu));
    std::array<int, 8> cnt{};
    for (const auto& f : enumerate_fvars(basis, mu)) {
        const auto& X = basis[f.input];
        const auto& Z = basis[f.output];
        int coord = -1;
        if (X.role == Role::Cartan) {
            ++cnt[0];
        } else if (Z.role == Role::Cartan) {
            ++cnt[1];
        } else if (X.parity == 1) {
            if (X.weight == mu) {
                ++cnt[5];
            } else {
                int sg = odd_sign(X.weight, coord);
                if (coord == j) throw IntegrityError("unexpected f-variable in census");
                ++cnt[sg == -s ? 2 : 3];
            }
        } else {
            if (X.weight == minus2mu) {
                ++cnt[4];
            } else {
                int sg = odd_sign(Z.weight, coord);
                if (coord == j) throw IntegrityError("unexpected f-variable in census");
                ++cnt[sg == s ? 6 : 7];
            }
        }
    }
    return cnt;
}

std::vector<Weight> short_root_sectors(int n) {
    std::vector<Weight> out;
    for (int j = 0; j < n; ++j)
        for (int s : {1, -1}) out.push_back(unit_weight(n, j, s));
    return out;
}

bool DimReport::pass() const {
    return !sectors.empty() && std::all_of(sectors.begin(), sectors.end(), [](const auto& s) { return s.pass; });
}

DimReport dim_check(const Basis& basis) {
    if (basis.m() != 0) throw UsageError("dim_check applies to B(0,n)");
    const int n = basis.n();
    DimReport rep;
    rep.n = n;
    rep.expected = static_cast<std::size_t>(6 * n - 2);
    rep.expected_census = {n, n, n - 1, n - 1, 1, 1, n - 1, n - 1};
    for (const auto& mu : short_root_sectors(n)) {
        DimSectorReport s;
        s.mu = mu;
        s.count = enumerate_fvars(basis, mu).size();
        s.census = fvar_census(basis, mu);
        s.pass = s.count == rep.expected && s.census == rep.expected_census;
        rep.sectors.push_back(s);
    }
    return rep;
}

DimReport dim_check(int n) { return dim_check(build_basis(0, n)); }

ExactMatrix<QuadScalar> cocycle_operator(const StructureConstants& sc, const Weight& mu, const std::vector<RowKey>& cochains) {
    const Basis& B = sc.basis();
    const int N = B.size();
    std::map<RowKey, std::size_t> index;
    for (std::size_t i = 0; i < cochains.size(); ++i) index.emplace(cochains[i], i);

    // Coordinates of g(b,c)|_z as (column, sign); empty for the zero diagonal of even b.
    auto coord = [&](int b, int c, int z, std::size_t& col) -> QuadScalar {
        if (b == c && B[b].parity == 0) return QuadScalar(0);
        bool swap = b > c;
        auto it = index.find(swap ? RowKey{c, b, z} : RowKey{b, c, z});
        if (it == index.end()) throw IntegrityError("2-cochain coordinate outside its sector");
        col = it->second;
        if (!swap) return QuadScalar(1);
        return (B[b].parity & B[c].parity) ? QuadScalar(1) : QuadScalar(-1);
    };

    ExactMatrix<QuadScalar> D(0, cochains.size());
    for (int x = 0; x < N; ++x) {
        for (int y = 0; y < N; ++y) {
            for (int w = 0; w < N; ++w) {
                Weight wt = weight_add(weight_add(weight_add(B[x].weight, B[y].weight), B[w].weight), mu);
                int pv = (B[x].parity + B[y].parity + B[w].parity + 1) % 2;
                std::vector<int> targets = ids_of(B, wt, pv);
                if (targets.empty()) continue;
                std::map<int, std::map<std::size_t, QuadScalar>> acc;
                const int tri[3][3] = {{x, y, w}, {y, w, x}, {w, x, y}};
                for (const auto& t : tri) {
                    const int a = t[0], b = t[1], c = t[2];
                    QuadScalar s = (B[a].parity & B[c].parity) ? QuadScalar(-1) : QuadScalar(1);
                    QuadScalar sa = B[a].parity ? -s : s;
                    // (-1)^{p(a)} [a, g(b,c)]
                    int pz = (B[b].parity + B[c].parity + 1) % 2;
                    for (int z : ids_of(B, weight_add(weight_add(B[b].weight, B[c].weight), mu), pz)) {
                        std::size_t col = 0;
                        QuadScalar sg = coord(b, c, z, col);
                        if (sg.is_zero()) continue;
                        for (const auto& [v, k] : sc.bracket(a, z)) accumulate(acc[v], col, sa * sg * k);
                    }
                    // g(a, [b,c])
                    for (const auto& [k, ck] : sc.bracket(b, c)) {
                        for (int v : targets) {
                            std::size_t col = 0;
                            QuadScalar sg = coord(a, k, v, col);
                            if (!sg.is_zero()) accumulate(acc[v], col, s * ck * sg);
                        }
                    }
                }
                for (auto& [v, row] : acc) {
                    if (row.empty()) continue;
                    SparseRow<QuadScalar> r;
                    for (auto& [c, val] : row) r.emplace_back(c, std::move(val));
                    D.append_row(std::move(r));
                }
            }
        }
    }
    return D;
}

bool columns_in_kernel(const ExactMatrix<QuadScalar>& D, const ExactMatrix<QuadScalar>& M) {
    if (M.rows() != D.cols()) throw UsageError("columns_in_kernel: dimension mismatch");
    ExactMatrix<QuadScalar> Mt = M.transpose();
    for (std::size_t c = 0; c < Mt.rows(); ++c) {
        const auto& v = Mt.row(c);
        for (std::size_t r = 0; r < D.rows(); ++r) {
            QuadScalar dot(0);
            const auto& dr = D.row(r);
            std::size_t i = 0, j = 0;
            while (i < dr.size() && j < v.size()) {
                if (dr[i].first < v[j].first) ++i;
                else if (dr[i].first > v[j].first) ++j;
                else dot += dr[i++].second * v[j++].second;
            }
            if (!dot.is_zero()) return false;
        }
    }
    return true;
}

CocycleSpace cocycle_space(const StructureConstants& sc, const GammaStructure& gs, const Weight& mu) {
    SectorSystem sys = assemble_sector(sc, gs, mu);
    ExactMatrix<QuadScalar> D = cocycle_operator(sc, mu, sys.rows);
    CocycleSpace cs;
    cs.mu = mu;
    cs.cochains = sys.rows.size();
    cs.rank_d = rank(D);
    cs.cocycles = cs.cochains - cs.rank_d;
    cs.coboundaries = rank(sys.A);
    cs.delta_squared_zero = columns_in_kernel(D, sys.A);
    cs.gamma_closed = columns_in_kernel(D, sys.L);
    return cs;
}

}  // namespace ospcert
