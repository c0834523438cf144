#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "ospcert/algebra.hpp"

namespace ospcert {

// All parameters of B(m,n): u ranges over a0, a_1^+, a_1^-, ... and b over
// b_1^+, b_1^-, ...; 2n(2m+1) in total.
std::vector<GbIndex> all_params(int m, int n);

// wt(gb_{u,b}) = -(wt(u) + wt(b)). With this weight every gamma entry obeys
// wt(Z) = wt(X) + wt(Y) + wt(param).
Weight param_weight(const GbIndex& p, int m, int n);

/*
 * First-order deformation gamma(X,Y) = sum_p gb_p * gamma_p(X,Y), projected
 * onto the basis. Only nonzero coefficient vectors are stored; for m = 0 the
 * even-even pairs never contribute. Identity components are discarded: they
 * are not in the algebra.
 */
class GammaStructure {
public:
    GammaStructure() = default;
    GammaStructure(int m, int n, CartanFrame frame, std::map<std::array<int, 3>, SparseVec> table);

    int m() const { return m_; }
    int n() const { return n_; }
    CartanFrame frame() const { return frame_; }
    const std::vector<GbIndex>& params() const { return params_; }
    int param_count() const { return static_cast<int>(params_.size()); }
    int param_id(const GbIndex& p) const;  // throws UsageError when absent
    const Weight& weight_of(int param) const { return weights_.at(static_cast<std::size_t>(param)); }

    // gamma_p(X_i, X_j); empty when zero.
    const SparseVec& get(int i, int j, int param) const;
    // Keys are (i, j, param).
    const std::map<std::array<int, 3>, SparseVec>& table() const { return table_; }

private:
    int m_ = 0, n_ = 0;
    CartanFrame frame_ = CartanFrame::Orthonormal;
    std::vector<GbIndex> params_;
    std::vector<Weight> weights_;
    std::map<std::array<int, 3>, SparseVec> table_;
};

GammaStructure build_gamma(const StructureConstants& sc, CartanFrame frame = CartanFrame::Orthonormal);

/*
 * Parameters whose weight equals mu. For m = 0 mu must be a short root
 * +-e_j and the result is the single parameter gb_{a0, b_j^-+}; other weights
 * throw UsageError. For m >= 1 any weight is accepted (possibly empty result).
 */
std::vector<GbIndex> gamma_sector_params(int m, int n, const Weight& mu);

CheckReport gamma_parity_check(const StructureConstants& sc, const GammaStructure& gs);
CheckReport gamma_weight_check(const StructureConstants& sc, const GammaStructure& gs);

/*
 * First-order super-Jacobi identity of [X,Y] + kappa*gamma(X,Y), kappa odd with
 * kappa^2 = 0:
 *   sum_cyc (-1)^{p(X)p(W)} ( (-1)^{p(X)} [X, gamma(Y,W)] + gamma(X, [Y,W]) ) = 0
 * checked per parameter direction. samples == 0 means exhaustive.
 */
CheckReport gamma_cocycle_check(const StructureConstants& sc, const GammaStructure& gs, std::size_t samples = 0,
                                std::uint64_t seed = 7);

struct Structures {
    StructureConstants sc;
    GammaStructure gamma;
};

// Builds (once per process) and shares the structure constants and gamma of
// B(m,n) in the given frame. Thread-safe.
std::shared_ptr<const Structures> cached_structures(int m, int n, CartanFrame frame = CartanFrame::Orthonormal);

}  // namespace ospcert
