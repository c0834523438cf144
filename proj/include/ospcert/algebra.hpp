#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ospcert/field.hpp"
#include "ospcert/oscillator.hpp"

namespace ospcert {

// Integer weight vector in the coordinates (d_1..d_n, e_1..e_m): boson
// coordinates first, then fermion coordinates.
using Weight = std::vector<int>;

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);
Weight weight_neg(const Weight& a);
int weight_dot(const Weight& a, const Weight& b);
bool weight_is_zero(const Weight& a);
// "+2d1", "+d1-d2", "-e1", "0"
std::string weight_label(const Weight& w, int n);
Weight weight_parse(const std::string& s, int m, int n);
Weight unit_weight(int dim, int coord, int coeff = 1);

enum class Role : std::uint8_t { Cartan = 0, EvenRoot = 1, OddRoot = 2 };

std::string role_name(Role r);
Role role_parse(const std::string& s);

struct BasisElement {
    int id = 0;
    Role role = Role::Cartan;
    int cartan_index = 0;  // 1-based for Cartan elements, 0 otherwise
    Weight weight;
    int parity = 0;
    OscElement realization;
    std::string label;  // "H1", "E+2d1", "E-d1-d2", "E+d2" ...
};

using SparseVec = std::vector<std::pair<int, QuadScalar>>;  // sorted by id, no zeros

/*
 * Basis of B(m,n) together with the lookup tables the projection needs.
 * Index order: Cartans (k ascending), even roots by lexicographic weight,
 * odd roots. For m = 0 the odd roots are +-d_j in order j ascending, + first.
 */
class Basis {
public:
    Basis() = default;
    Basis(int m, int n, std::vector<BasisElement> elems);

    int m() const { return m_; }
    int n() const { return n_; }
    int rank() const { return m_ + n_; }
    int size() const { return static_cast<int>(elems_.size()); }
    int even_dim() const { return even_dim_; }
    int odd_dim() const { return size() - even_dim_; }

    const BasisElement& operator[](int id) const { return elems_.at(static_cast<std::size_t>(id)); }
    const std::vector<BasisElement>& elements() const { return elems_; }

    int find(const std::string& label) const;  // -1 when absent
    int id(const std::string& label) const;    // throws UsageError when absent
    int find_weight(const Weight& w, int parity) const;  // non-Cartan lookup, -1 when absent
    const std::vector<int>& cartan_ids() const { return cartan_ids_; }

    // Number-operator monomial of a coordinate and the shift s with h_c = N_c + s.
    const Monomial& number_operator(int coord) const { return number_ops_.at(static_cast<std::size_t>(coord)); }
    const QuadScalar& cartan_shift(int coord) const { return shifts_.at(static_cast<std::size_t>(coord)); }

    // Root-vector identification of a monomial: (id, coefficient of the monomial
    // in that element's realization).
    const std::map<Monomial, std::pair<int, QuadScalar>>& root_monomials() const { return root_monomials_; }

private:
    int m_ = 0, n_ = 0, even_dim_ = 0;
    std::vector<BasisElement> elems_;
    std::vector<int> cartan_ids_;
    std::map<std::string, int> by_label_;
    std::map<std::pair<Weight, int>, int> by_weight_;
    std::vector<Monomial> number_ops_;
    std::vector<QuadScalar> shifts_;
    std::map<Monomial, std::pair<int, QuadScalar>> root_monomials_;
};

Basis build_basis(int m, int n);

// Largest sizes accepted by build_basis; beyond this the realization tables
// become too large to be useful.
constexpr int kMaxRank = 12;

/*
 * How Cartan components are expressed. Coroot: in the basis H_k actually used
 * for brackets. Orthonormal: coefficients of the orthonormal Cartan elements
 * h_k (x_k - x_{k-1} in terms of the coroot coefficients x), stored under the
 * H_k slot. Brackets always use the coroot reading.
 */
enum class CartanFrame : std::uint8_t { Orthonormal = 0, Coroot = 1 };

std::string frame_name(CartanFrame f);
CartanFrame frame_parse(const std::string& s);

struct Projection {
    SparseVec coords;
    QuadScalar central;  // multiple of the identity left over
};

// Expresses e in the basis plus the identity. Throws IntegrityError when a
// monomial lies outside that span.
Projection project(const Basis& basis, const OscElement& e, CartanFrame frame = CartanFrame::Coroot);

class StructureConstants {
public:
    StructureConstants() = default;
    StructureConstants(Basis basis, std::vector<SparseVec> table);

    const Basis& basis() const { return basis_; }
    int dim() const { return basis_.size(); }
    const SparseVec& bracket(int i, int j) const {
        return table_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(j)];
    }
    const std::vector<SparseVec>& table() const { return table_; }
    bool is_rational() const;

private:
    Basis basis_;
    std::vector<SparseVec> table_;
};

StructureConstants build_structure(const Basis& basis);
StructureConstants build_structure(int m, int n);

SparseVec bracket(const StructureConstants& sc, int i, int j);
// Bilinear extension of the table to sparse vectors.
SparseVec bracket_vec(const StructureConstants& sc, const SparseVec& x, const SparseVec& y);
int vec_parity(const Basis& basis, const SparseVec& v);  // -1 when mixed, 0 for zero
void vec_add(SparseVec& acc, const SparseVec& v, const QuadScalar& factor);

struct CheckReport {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> offending;  // first few failures, human readable
    bool pass() const { return failures == 0; }
};

CheckReport cartan_eigenvalue_check(const StructureConstants& sc);
CheckReport weight_additivity_check(const StructureConstants& sc);
CheckReport antisymmetry_check(const StructureConstants& sc);

// samples == 0 means exhaustive over all ordered triples.
CheckReport jacobi_check(const StructureConstants& sc, std::size_t samples = 0, std::uint64_t seed = 1);

}  // namespace ospcert
