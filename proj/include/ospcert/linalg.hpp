#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ospcert/field.hpp"

namespace ospcert {

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;  // sorted by column, no zeros

/*
 * Row-major sparse matrix over Rational or QuadScalar. Entries are never
 * stored as zero.
 */
template <class T>
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const {
        std::size_t k = 0;
        for (const auto& r : data_) k += r.size();
        return k;
    }

    const SparseRow<T>& row(std::size_t r) const { return data_.at(r); }
    const std::vector<SparseRow<T>>& data() const { return data_; }

    T get(std::size_t r, std::size_t c) const {
        for (const auto& [k, v] : data_.at(r))
            if (k == c) return v;
        return T(0);
    }

    void set(std::size_t r, std::size_t c, const T& v);
    void add_to(std::size_t r, std::size_t c, const T& v);
    void append_row(SparseRow<T> row);

    ExactMatrix transpose() const;
    static ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b);
    static ExactMatrix identity(std::size_t n);

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.cols_ == b.cols_ && a.data_ == b.data_; }

private:
    std::size_t cols_ = 0;
    std::vector<SparseRow<T>> data_;
};

// Exact rank through fraction-free elimination over Z or Z[sqrt 2] (rows
// are first cleared of denominators). Sparse echelon elimination with pivot
// choice by least bit size; switches to dense Bareiss when fill passes
// kDenseFillThreshold.
template <class T>
std::size_t rank(const ExactMatrix<T>& m);

// Dense Bareiss elimination on the same integral-domain rows. Exposed so the
// two elimination routes can be cross-checked.
template <class T>
std::size_t rank_dense_bareiss(const ExactMatrix<T>& m);

// Reduced row echelon form carried out with field division. Used where
// explicit transformation data (kernels, solutions) is needed.
template <class T>
struct Rref {
    std::vector<SparseRow<T>> rows;  // one per pivot, leading entry 1
    std::vector<std::size_t> pivots;
};

template <class T>
Rref<T> rref(const ExactMatrix<T>& m);

// Vectors c with c^T M = 0, exactly rows - rank(M) of them, as sparse vectors
// over the row index. Each vector has entry 1 at its largest index, and that
// index is zero in every other basis vector.
template <class T>
std::vector<SparseRow<T>> left_nullspace(const ExactMatrix<T>& m);

// c^T M, sparse over the column index.
template <class T>
SparseRow<T> row_combination(const ExactMatrix<T>& m, const SparseRow<T>& c);

template <class T>
bool in_left_nullspace(const ExactMatrix<T>& m, const SparseRow<T>& c) {
    return row_combination(m, c).empty();
}

// Coordinates of c in a basis produced by left_nullspace, or nullopt when c
// lies outside its span.
template <class T>
std::optional<std::vector<T>> express_in_basis(const std::vector<SparseRow<T>>& basis, const SparseRow<T>& c);

struct RankVerdict {
    std::size_t rank_A = 0, rank_L = 0, rank_AL = 0;
    bool condition() const { return rank_AL == rank_A; }
    bool strong_condition() const { return rank_AL == rank_A + rank_L; }
};

template <class T>
RankVerdict feasibility_rank_test(const ExactMatrix<T>& a, const ExactMatrix<T>& l);

template <class T>
struct SolveResult {
    bool feasible = false;
    std::vector<T> x;        // A x = b when feasible
    std::vector<T> witness;  // c^T A = 0, c^T b != 0 otherwise
};

template <class T>
SolveResult<T> particular_solution(const ExactMatrix<T>& a, const std::vector<T>& b);

template <class T>
bool verify_solution(const ExactMatrix<T>& a, const std::vector<T>& b, const SolveResult<T>& r);

ExactMatrix<QuadScalar> promote(const ExactMatrix<Rational>& m);

// Above this density of the active block the sparse route hands over to the
// dense Bareiss routine.
constexpr double kDenseFillThreshold = 0.35;

}  // namespace ospcert
