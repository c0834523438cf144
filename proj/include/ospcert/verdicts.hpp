#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ospcert/certificates.hpp"

namespace ospcert {

struct SectorRank {
    Weight mu;
    std::size_t dim = 0;   // f-variables
    std::size_t rows = 0;
    std::size_t params = 0;
    std::size_t rank_A = 0, rank_L = 0, rank_AL = 0;
    std::size_t corank() const { return dim - rank_A; }
};

SectorRank sector_rank(const Structures& s, const Weight& mu);

// Sectors are processed on up to `jobs` threads; the result keeps the order
// of `sectors`.
std::vector<SectorRank> sector_ranks(const Structures& s, const std::vector<Weight>& sectors, int jobs);

struct FullSystem {
    std::size_t fvars = 0, params = 0, rows = 0;
    std::size_t rank_A = 0, rank_L = 0, rank_AL = 0;
    std::vector<SectorRank> sectors;
    bool condition() const { return rank_AL == rank_A; }
    bool strong_condition() const { return rank_AL == rank_A + rank_L; }
};

// Block-diagonal over sectors, so ranks add up.
FullSystem full_system(const Structures& s, int jobs = 1);

// (delta f)(X,Y) for an odd cochain given as f[input] = image vector.
SparseVec coboundary_of(const StructureConstants& sc, const std::vector<SparseVec>& f, int X, int Y);

// gamma(X,Y) evaluated at the parameter values gb (indexed like gs.params()).
SparseVec gamma_at(const GammaStructure& gs, int X, int Y, const std::vector<QuadScalar>& gb);

struct B01Direction {
    std::string name;
    std::vector<QuadScalar> gb;  // (gb[a0,b1+], gb[a0,b1-])
    bool primitive_ok = false;   // explicit f satisfies delta f = gamma on all pairs
    bool solver_ok = false;      // particular_solution finds and verifies a solution
};

struct B01Report {
    FullSystem full;
    std::vector<B01Direction> directions;
    bool pass() const;
};

// Explicit primitive f(H1) = -gb+ E-d1 - gb- E+d1, f(E+-2d1) = -2 gb+- E+-d1.
std::vector<SparseVec> b01_primitive(const Basis& basis, const std::vector<QuadScalar>& gb);

B01Report verify_b01(const Structures& s);

struct CertResult {
    Certificate cert;
    CertVerdict verdict;
    bool in_nullspace_span = false;  // c lies in span(left_nullspace(A_mu)); only when requested
};

struct CertSuite {
    int n = 0;
    std::vector<CertResult> results;
    std::size_t passed() const;
};

CertSuite verify_certificates(const Structures& s, int jobs, bool check_span);

struct BmnResult {
    int m = 0, n = 0;
    int dim = 0, params = 0;
    std::size_t estimated_rows = 0;
    std::optional<FullSystem> full;  // empty when skipped
    std::string skip_reason;
    bool pass() const { return full && full->strong_condition(); }
};

// Refuses (skip entry) when the full system would exceed row_cap rows.
BmnResult verify_bmn(int m, int n, std::size_t row_cap, int jobs, CartanFrame frame = CartanFrame::Orthonormal);

enum class TrivialityKind { AlwaysTrivial, TrivialOnlyAtZero, StrongConditionHolds, Undecided };

std::string triviality_name(TrivialityKind k);  // "always trivial", "trivial iff gb = 0", ...

/*
 * B(0,1): AlwaysTrivial when the rank pair and the explicit primitive check out.
 * B(0,n), n >= 2: TrivialOnlyAtZero when all 2n certificates pass.
 * B(m,n), m >= 1: StrongConditionHolds when rank([A|L]) = rank(A) + rank(L).
 * Anything else is Undecided. Throws ResourceError above row_cap.
 */
struct TrivialityVerdict {
    int m = 0, n = 0;
    TrivialityKind kind = TrivialityKind::Undecided;
    std::optional<B01Report> b01;
    std::optional<CertSuite> certs;
    std::optional<BmnResult> bmn;
};

TrivialityVerdict triviality_verdict(int m, int n, std::size_t row_cap = 1000000, int jobs = 1);

}  // namespace ospcert
