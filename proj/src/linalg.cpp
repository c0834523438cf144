#include "ospcert/linalg.hpp"

#include <algorithm>
#include <type_traits>

namespace ospcert {

// ---------------------------------------------------------------------------
// ExactMatrix

template <class T>
void ExactMatrix<T>::set(std::size_t r, std::size_t c, const T& v) {
    if (c >= cols_) throw UsageError("column index out of range");
    auto& row = data_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero()) row.erase(it);
        else it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

template <class T>
void ExactMatrix<T>::add_to(std::size_t r, std::size_t c, const T& v) {
    if (v.is_zero()) return;
    set(r, c, get(r, c) + v);
}

template <class T>
void ExactMatrix<T>::append_row(SparseRow<T> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].first >= cols_ || row[i].second.is_zero() || (i && row[i - 1].first >= row[i].first))
            throw UsageError("append_row: malformed sparse row");
    }
    data_.push_back(std::move(row));
}

template <class T>
ExactMatrix<T> ExactMatrix<T>::transpose() const {
    ExactMatrix<T> t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

template <class T>
ExactMatrix<T> ExactMatrix<T>::hcat(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) throw UsageError("hcat: row counts differ");
    ExactMatrix<T> out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        out.data_[r] = a.data_[r];
        for (const auto& [c, v] : b.data_[r]) out.data_[r].emplace_back(c + a.cols(), v);
    }
    return out;
}

template <class T>
ExactMatrix<T> ExactMatrix<T>::identity(std::size_t n) {
    ExactMatrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.data_[i].emplace_back(i, T(1));
    return out;
}

ExactMatrix<QuadScalar> promote(const ExactMatrix<Rational>& m) {
    ExactMatrix<QuadScalar> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) out.set(r, c, promote(v));
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Integral domains used by the fraction-free routes: Z and Z[sqrt 2].

struct QuadInt {
    mpz_class a, b;
};

bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
bool is_zero(const QuadInt& x) { return sgn(x.a) == 0 && sgn(x.b) == 0; }

std::size_t bits(const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }
std::size_t bits(const QuadInt& x) { return bits(x.a) + bits(x.b); }

mpz_class mul(const mpz_class& x, const mpz_class& y) { return x * y; }
QuadInt mul(const QuadInt& x, const QuadInt& y) { return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a}; }

mpz_class sub(const mpz_class& x, const mpz_class& y) { return x - y; }
QuadInt sub(const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b}; }

void gcd_into(mpz_class& g, const mpz_class& x) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t()); }
void gcd_into(mpz_class& g, const QuadInt& x) {
    gcd_into(g, x.a);
    gcd_into(g, x.b);
}

void divexact(mpz_class& x, const mpz_class& g) { mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t()); }
void divexact(QuadInt& x, const mpz_class& g) {
    divexact(x.a, g);
    divexact(x.b, g);
}

mpz_class exact_quotient(const mpz_class& x, const mpz_class& y) {
    if (!mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t())) throw IntegrityError("Bareiss division is not exact");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

QuadInt exact_quotient(const QuadInt& x, const QuadInt& y) {
    mpz_class n = y.a * y.a - 2 * y.b * y.b;
    QuadInt t = mul(x, QuadInt{y.a, -y.b});
    return {exact_quotient(t.a, n), exact_quotient(t.b, n)};
}

template <class R>
using IRow = std::vector<std::pair<std::size_t, R>>;

// Divides the row by the gcd of all its integer coordinates.
template <class R>
void make_primitive(IRow<R>& row) {
    if (row.empty()) return;
    mpz_class g = 0;
    for (const auto& e : row) gcd_into(g, e.second);
    if (g != 1 && g != 0)
        for (auto& e : row) divexact(e.second, g);
}

mpz_class lcm_of_denominators(const SparseRow<Rational>& row) {
    mpz_class l = 1;
    for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.raw().get_den_mpz_t());
    return l;
}

mpz_class lcm_of_denominators(const SparseRow<QuadScalar>& row) {
    mpz_class l = 1;
    for (const auto& e : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.a().raw().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.b().raw().get_den_mpz_t());
    }
    return l;
}

mpz_class scaled_int(const Rational& x, const mpz_class& l) { return x.raw().get_num() * (l / x.raw().get_den()); }

IRow<mpz_class> to_int_row(const SparseRow<Rational>& row) {
    mpz_class l = lcm_of_denominators(row);
    IRow<mpz_class> out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) out.emplace_back(c, scaled_int(v, l));
    return out;
}

IRow<mpz_class> to_int_row_rational(const SparseRow<QuadScalar>& row) {
    mpz_class l = lcm_of_denominators(row);
    IRow<mpz_class> out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) out.emplace_back(c, scaled_int(v.a(), l));
    return out;
}

IRow<QuadInt> to_quad_row(const SparseRow<QuadScalar>& row) {
    mpz_class l = lcm_of_denominators(row);
    IRow<QuadInt> out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) out.push_back({c, QuadInt{scaled_int(v.a(), l), scaled_int(v.b(), l)}});
    return out;
}

// row := p*row - a*pivot, where p, a are the leading entries of pivot and row.
void eliminate(IRow<mpz_class>& row, const IRow<mpz_class>& pivot) {
    mpz_class p = pivot.front().second, a = row.front().second, g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
    divexact(p, g);
    divexact(a, g);
    IRow<mpz_class> out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, p * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -(a * pivot[j].second));
            ++j;
        } else {
            mpz_class v = p * row[i].second - a * pivot[j].second;
            if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    row = std::move(out);
}

void eliminate(IRow<QuadInt>& row, const IRow<QuadInt>& pivot) {
    QuadInt p = pivot.front().second, a = row.front().second;
    IRow<QuadInt> out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, mul(p, row[i].second));
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            QuadInt v = mul(a, pivot[j].second);
            out.push_back({pivot[j].first, QuadInt{-v.a, -v.b}});
            ++j;
        } else {
            QuadInt v = sub(mul(p, row[i].second), mul(a, pivot[j].second));
            if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    row = std::move(out);
}

template <class R>
std::size_t bareiss_dense(std::vector<std::vector<R>> M, std::size_t cols) {
    const std::size_t rows = M.size();
    std::size_t r = 0;
    R prev;
    if constexpr (std::is_same_v<R, mpz_class>) prev = 1;
    else prev = QuadInt{1, 0};
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!is_zero(M[i][c]) && (best == rows || bits(M[i][c]) < bits(M[best][c]))) best = i;
        if (best == rows) continue;
        std::swap(M[r], M[best]);
        const R& p = M[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const R a = M[i][c];
            for (std::size_t j = c + 1; j < cols; ++j)
                M[i][j] = exact_quotient(sub(mul(p, M[i][j]), mul(a, M[r][j])), prev);
            if constexpr (std::is_same_v<R, mpz_class>) M[i][c] = 0;
            else M[i][c] = QuadInt{0, 0};
        }
        prev = M[r][c];
        ++r;
    }
    return r;
}

template <class R>
std::vector<std::vector<R>> densify(const std::vector<IRow<R>>& rows, std::size_t col0, std::size_t cols) {
    std::vector<std::vector<R>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<R> d(cols - col0);
        if constexpr (!std::is_same_v<R, mpz_class>)
            for (auto& x : d) x = QuadInt{0, 0};
        for (const auto& [c, v] : row) d[c - col0] = v;
        out.push_back(std::move(d));
    }
    return out;
}

template <class R>
std::size_t fraction_free_rank(std::vector<IRow<R>> input, std::size_t cols) {
    std::vector<std::vector<IRow<R>>> bucket(cols);
    std::size_t active = 0, nnz = 0;
    for (auto& row : input) {
        if (row.empty()) continue;
        make_primitive(row);
        nnz += row.size();
        ++active;
        bucket[row.front().first].push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        auto& here = bucket[c];
        if (here.empty()) continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < here.size(); ++i) {
            std::size_t bi = bits(here[i].front().second), bb = bits(here[best].front().second);
            if (bi < bb || (bi == bb && here[i].size() < here[best].size())) best = i;
        }
        IRow<R> pivot = std::move(here[best]);
        here.erase(here.begin() + static_cast<long>(best));
        ++rank;
        --active;
        nnz -= pivot.size();
        std::vector<IRow<R>> moving = std::move(here);
        here.clear();
        for (auto& row : moving) {
            nnz -= row.size();
            eliminate(row, pivot);
            if (row.empty()) {
                --active;
                continue;
            }
            make_primitive(row);
            nnz += row.size();
            bucket[row.front().first].push_back(std::move(row));
        }
        std::size_t remaining_cols = cols - c - 1;
        double area = static_cast<double>(active) * static_cast<double>(remaining_cols);
        if (active > 8 && remaining_cols > 8 && static_cast<double>(nnz) > kDenseFillThreshold * area) {
            std::vector<IRow<R>> rest;
            for (std::size_t k = c + 1; k < cols; ++k)
                for (auto& row : bucket[k]) rest.push_back(std::move(row));
            return rank + bareiss_dense(densify(rest, c + 1, cols), remaining_cols);
        }
    }
    return rank;
}

template <class R>
std::size_t dense_route(const std::vector<IRow<R>>& rows, std::size_t cols) {
    return bareiss_dense(densify(rows, 0, cols), cols);
}

bool all_rational(const ExactMatrix<QuadScalar>& m) {
    for (const auto& row : m.data())
        for (const auto& e : row)
            if (!e.second.is_rational()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Field routines

template <class T>
void axpy(SparseRow<T>& x, const T& a, const SparseRow<T>& y) {
    if (a.is_zero() || y.empty()) return;
    SparseRow<T> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(std::move(x[i++]));
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            T v = x[i].second + a * y[j].second;
            if (!v.is_zero()) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    x = std::move(out);
}

template <class T>
T entry_at(const SparseRow<T>& row, std::size_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    return (it != row.end() && it->first == c) ? it->second : T(0);
}

}  // namespace

template <class T>
std::size_t rank(const ExactMatrix<T>& m) {
    if constexpr (std::is_same_v<T, Rational>) {
        std::vector<IRow<mpz_class>> rows;
        rows.reserve(m.rows());
        for (const auto& r : m.data()) rows.push_back(to_int_row(r));
        return fraction_free_rank(std::move(rows), m.cols());
    } else {
        if (all_rational(m)) {
            std::vector<IRow<mpz_class>> rows;
            rows.reserve(m.rows());
            for (const auto& r : m.data()) rows.push_back(to_int_row_rational(r));
            return fraction_free_rank(std::move(rows), m.cols());
        }
        std::vector<IRow<QuadInt>> rows;
        rows.reserve(m.rows());
        for (const auto& r : m.data()) rows.push_back(to_quad_row(r));
        return fraction_free_rank(std::move(rows), m.cols());
    }
}

template <class T>
std::size_t rank_dense_bareiss(const ExactMatrix<T>& m) {
    if constexpr (std::is_same_v<T, Rational>) {
        std::vector<IRow<mpz_class>> rows;
        for (const auto& r : m.data()) rows.push_back(to_int_row(r));
        return dense_route(rows, m.cols());
    } else {
        std::vector<IRow<QuadInt>> rows;
        for (const auto& r : m.data()) rows.push_back(to_quad_row(r));
        return dense_route(rows, m.cols());
    }
}

template <class T>
Rref<T> rref(const ExactMatrix<T>& m) {
    const std::size_t cols = m.cols();
    std::vector<std::vector<SparseRow<T>>> bucket(cols);
    for (const auto& row : m.data())
        if (!row.empty()) bucket[row.front().first].push_back(row);
    Rref<T> out;
    for (std::size_t c = 0; c < cols; ++c) {
        auto& here = bucket[c];
        if (here.empty()) continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < here.size(); ++i) {
            std::size_t bi = here[i].front().second.bit_size(), bb = here[best].front().second.bit_size();
            if (bi < bb || (bi == bb && here[i].size() < here[best].size())) best = i;
        }
        SparseRow<T> pivot = std::move(here[best]);
        here.erase(here.begin() + static_cast<long>(best));
        T inv = pivot.front().second.inverse();
        for (auto& e : pivot) e.second *= inv;
        std::vector<SparseRow<T>> moving = std::move(here);
        here.clear();
        for (auto& row : moving) {
            T a = -row.front().second;
            axpy(row, a, pivot);
            if (!row.empty()) bucket[row.front().first].push_back(std::move(row));
        }
        out.pivots.push_back(c);
        out.rows.push_back(std::move(pivot));
    }
    // Back substitution, last pivot first.
    for (std::size_t k = out.rows.size(); k-- > 0;) {
        for (std::size_t i = 0; i < k; ++i) {
            T a = entry_at(out.rows[i], out.pivots[k]);
            if (!a.is_zero()) axpy(out.rows[i], T(-a), out.rows[k]);
        }
    }
    return out;
}

template <class T>
std::vector<SparseRow<T>> left_nullspace(const ExactMatrix<T>& m) {
    Rref<T> r = rref(m.transpose());
    std::vector<bool> is_pivot(m.rows(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<SparseRow<T>> basis;
    for (std::size_t f = 0; f < m.rows(); ++f) {
        if (is_pivot[f]) continue;
        SparseRow<T> v;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            T a = entry_at(r.rows[i], f);
            if (!a.is_zero()) v.emplace_back(r.pivots[i], -a);
        }
        v.emplace_back(f, T(1));
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
SparseRow<T> row_combination(const ExactMatrix<T>& m, const SparseRow<T>& c) {
    SparseRow<T> acc;
    for (const auto& [r, v] : c) {
        if (r >= m.rows()) throw UsageError("row_combination: index out of range");
        axpy(acc, v, m.row(r));
    }
    return acc;
}

template <class T>
std::optional<std::vector<T>> express_in_basis(const std::vector<SparseRow<T>>& basis, const SparseRow<T>& c) {
    std::vector<T> coeff;
    SparseRow<T> rest = c;
    for (const auto& v : basis) {
        if (v.empty()) throw UsageError("express_in_basis: empty basis vector");
        T a = entry_at(c, v.back().first);
        coeff.push_back(a);
        axpy(rest, T(-a), v);
    }
    if (!rest.empty()) return std::nullopt;
    return coeff;
}

template <class T>
RankVerdict feasibility_rank_test(const ExactMatrix<T>& a, const ExactMatrix<T>& l) {
    if (a.rows() != l.rows()) throw UsageError("feasibility_rank_test: A and L have different row counts");
    RankVerdict v;
    v.rank_A = rank(a);
    v.rank_L = rank(l);
    v.rank_AL = rank(ExactMatrix<T>::hcat(a, l));
    return v;
}

template <class T>
SolveResult<T> particular_solution(const ExactMatrix<T>& a, const std::vector<T>& b) {
    if (b.size() != a.rows()) throw UsageError("particular_solution: right-hand side has the wrong length");
    const std::size_t n = a.cols();
    ExactMatrix<T> aug(0, n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseRow<T> row = a.row(r);
        if (!b[r].is_zero()) row.emplace_back(n, b[r]);
        aug.append_row(std::move(row));
    }
    Rref<T> red = rref(aug);
    SolveResult<T> out;
    bool inconsistent = !red.pivots.empty() && red.pivots.back() == n;
    if (!inconsistent) {
        out.feasible = true;
        out.x.assign(n, T(0));
        for (std::size_t i = 0; i < red.rows.size(); ++i) out.x[red.pivots[i]] = entry_at(red.rows[i], n);
        return out;
    }
    // Witness: solve [A^T; b^T] y = e_last, consistent because b is outside Im(A).
    ExactMatrix<T> sys(0, a.rows() + 1);
    ExactMatrix<T> at = a.transpose();
    for (std::size_t c = 0; c < n; ++c) sys.append_row(at.row(c));
    SparseRow<T> last;
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (!b[r].is_zero()) last.emplace_back(r, b[r]);
    last.emplace_back(a.rows(), T(1));
    sys.append_row(std::move(last));
    Rref<T> w = rref(sys);
    if (!w.pivots.empty() && w.pivots.back() == a.rows()) throw IntegrityError("Farkas system unexpectedly inconsistent");
    out.witness.assign(a.rows(), T(0));
    for (std::size_t i = 0; i < w.rows.size(); ++i) out.witness[w.pivots[i]] = entry_at(w.rows[i], a.rows());
    return out;
}

template <class T>
bool verify_solution(const ExactMatrix<T>& a, const std::vector<T>& b, const SolveResult<T>& r) {
    if (r.feasible) {
        if (r.x.size() != a.cols()) return false;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            T s(0);
            for (const auto& [c, v] : a.row(i)) s += v * r.x[c];
            if (s != b[i]) return false;
        }
        return true;
    }
    if (r.witness.size() != a.rows()) return false;
    SparseRow<T> c;
    T cb(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!r.witness[i].is_zero()) {
            c.emplace_back(i, r.witness[i]);
            cb += r.witness[i] * b[i];
        }
    return row_combination(a, c).empty() && !cb.is_zero();
}

#define OSPCERT_INSTANTIATE(T)                                                                               \
    template class ExactMatrix<T>;                                                                           \
    template std::size_t rank<T>(const ExactMatrix<T>&);                                                     \
    template std::size_t rank_dense_bareiss<T>(const ExactMatrix<T>&);                                       \
    template Rref<T> rref<T>(const ExactMatrix<T>&);                                                         \
    template std::vector<SparseRow<T>> left_nullspace<T>(const ExactMatrix<T>&);                             \
    template SparseRow<T> row_combination<T>(const ExactMatrix<T>&, const SparseRow<T>&);                    \
    template std::optional<std::vector<T>> express_in_basis<T>(const std::vector<SparseRow<T>>&,             \
                                                               const SparseRow<T>&);                         \
    template RankVerdict feasibility_rank_test<T>(const ExactMatrix<T>&, const ExactMatrix<T>&);             \
    template SolveResult<T> particular_solution<T>(const ExactMatrix<T>&, const std::vector<T>&);            \
    template bool verify_solution<T>(const ExactMatrix<T>&, const std::vector<T>&, const SolveResult<T>&);

OSPCERT_INSTANTIATE(Rational)
OSPCERT_INSTANTIATE(QuadScalar)

#undef OSPCERT_INSTANTIATE

}  // namespace ospcert
