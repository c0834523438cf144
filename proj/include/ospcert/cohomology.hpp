#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ospcert/deformation.hpp"
#include "ospcert/linalg.hpp"

namespace ospcert {

// Odd cochain coordinate f(X -> Z): the coefficient of Z in f(X).
struct FVariable {
    int input = 0;
    int output = 0;
    friend auto operator<=>(const FVariable&, const FVariable&) = default;
};

// Equation (delta f)(X, Y)|_Z with x <= y.
struct RowKey {
    int x = 0, y = 0, z = 0;
    friend auto operator<=>(const RowKey&, const RowKey&) = default;
};

std::string fvar_label(const Basis& b, const FVariable& f);  // "f(H1->E-d1)"
std::string row_label(const Basis& b, const RowKey& r);      // "(H1,E+2d1)@E+d1"

struct SectorSystem {
    Weight mu;
    std::vector<FVariable> fvars;
    std::vector<RowKey> rows;
    std::vector<GbIndex> params;
    ExactMatrix<QuadScalar> A;  // |rows| x |fvars|
    ExactMatrix<QuadScalar> L;  // |rows| x |params|

    int find_row(const RowKey& k) const;   // -1 when absent
    int find_fvar(const FVariable& f) const;
};

bool is_short_root(const Weight& mu);

/*
 * f-variables of sector mu in (input, output) order. For m = 0 mu must be a
 * short root +-e_j (UsageError otherwise); for m >= 1 any weight is allowed.
 */
std::vector<FVariable> enumerate_fvars(const Basis& basis, const Weight& mu);
// No restriction on mu.
std::vector<FVariable> enumerate_fvars_any(const Basis& basis, const Weight& mu);

// Rows of sector mu: pairs x <= y (x == y only for odd x) and targets z with
// wt(z) = wt(x) + wt(y) + mu and p(z) = p(x) + p(y) + 1.
std::vector<RowKey> enumerate_rows(const Basis& basis, const Weight& mu);

// Coefficients of the f-variables (indices into fvars) in
// (delta f)(X,Y)|_Z = (-1)^{p(X)} [X, f(Y)] - (-1)^{(p(X)+1)p(Y)} [Y, f(X)] - f([X,Y]).
SparseRow<QuadScalar> expand_coboundary(const StructureConstants& sc, const RowKey& row,
                                        const std::map<FVariable, std::size_t>& fvar_index);

SectorSystem assemble_sector(const StructureConstants& sc, const GammaStructure& gs, const Weight& mu);

// Every sector of the full system: weights wt(Z) - wt(X) of f-variables and
// parameter weights, sorted.
std::vector<Weight> all_sectors(const Basis& basis, const GammaStructure& gs);

// Total row count of the full system, computed without assembling it.
std::size_t full_system_row_count(const Basis& basis);

/*
 * Category census of a short-root sector mu = s e_j of B(0,n), in order:
 *   1 Cartan -> odd of weight mu          2 odd of weight -mu -> Cartan
 *   3 odd -s e_i -> even (i != j)         4 odd +s e_i -> even (i != j)
 *   5 even of weight -2mu -> odd -mu      6 odd mu -> even 2mu
 *   7 even -> odd +s e_i (i != j)         8 even -> odd -s e_i (i != j)
 */
std::array<int, 8> fvar_census(const Basis& basis, const Weight& mu);

struct DimSectorReport {
    Weight mu;
    std::size_t count = 0;
    std::array<int, 8> census{};
    bool pass = false;
};

struct DimReport {
    int n = 0;
    std::size_t expected = 0;
    std::array<int, 8> expected_census{};
    std::vector<DimSectorReport> sectors;
    bool pass() const;
};

DimReport dim_check(int n);
DimReport dim_check(const Basis& basis);

// Short-root sectors of B(0,n) in the order +e_1, -e_1, +e_2, ...
std::vector<Weight> short_root_sectors(int n);

/*
 * Odd 2-cochains g of sector mu, coordinatized by enumerate_rows(basis, mu)
 * (the value g(X,Y)|_Z for X <= Y; g(Y,X) = -(-1)^{p(X)p(Y)} g(X,Y)). The
 * operator sends g to
 *   (dg)(X,Y,W) = sum_cyc (-1)^{p(X)p(W)} ( (-1)^{p(X)} [X, g(Y,W)] + g(X, [Y,W]) )
 * evaluated on every ordered triple; its kernel is the cocycle space Z^2_mu.
 */
ExactMatrix<QuadScalar> cocycle_operator(const StructureConstants& sc, const Weight& mu, const std::vector<RowKey>& cochains);

// D * v for every column v of M (M has one row per cochain coordinate). True
// when all products vanish.
bool columns_in_kernel(const ExactMatrix<QuadScalar>& D, const ExactMatrix<QuadScalar>& M);

struct CocycleSpace {
    Weight mu;
    std::size_t cochains = 0;      // dim C^2_mu
    std::size_t rank_d = 0;
    std::size_t cocycles = 0;      // dim Z^2_mu
    std::size_t coboundaries = 0;  // dim B^2_mu = rank(A_mu)
    bool delta_squared_zero = false;  // every column of A_mu lies in Z^2_mu
    bool gamma_closed = false;        // every column of L_mu lies in Z^2_mu
    std::size_t h2() const { return cocycles - coboundaries; }
};

CocycleSpace cocycle_space(const StructureConstants& sc, const GammaStructure& gs, const Weight& mu);

}  // namespace ospcert
