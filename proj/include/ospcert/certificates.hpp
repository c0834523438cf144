#pragma once

#include <map>
#include <string>
#include <vector>

#include "ospcert/cohomology.hpp"

namespace ospcert {

enum class Family { I, II, IIIPlus, IIIMinus };

std::string family_name(Family f);  // "I", "II", "III+", "III-"

struct CertComponent {
    RowKey row;
    QuadScalar coeff;
};

/*
 * Left-nullspace witness c for one short-root sector of B(0,n): a sparse
 * combination of coboundary rows with c^T A = 0 whose pairing with L is a
 * nonzero multiple of the sector's parameter.
 */
struct Certificate {
    Family family = Family::I;
    int n = 0;
    int j = 0;  // slot; n for Family III
    std::vector<CertComponent> components;
    GbIndex target_param;
    Weight sector;
    QuadScalar expected_lambda;

    std::string name() const;  // "I(j=1)", "III-(n=3)"
};

// Builders take the B(0,n) basis so row keys can be resolved to ids.
Certificate build_family_I(const Basis& basis, int j);
Certificate build_family_II(const Basis& basis, int j);
Certificate build_family_III(const Basis& basis, Sign sign);

// Family I and II for j = 1..n-1 followed by III+ and III-: 2n certificates.
std::vector<Certificate> all_certificates(const Basis& basis);

// Component-2 coefficient of Family III from root geometry:
// 1 + <e_{n-1} - e_n, e_1>.
QuadScalar family_III_correction(int n);

// Applies the exchanges E_{d1} <-> E_{-d1}, E_{dn} <-> E_{-dn},
// E_{d1+dn} <-> E_{-d1-dn} to the row keys of c (coefficients unchanged).
Certificate mirror_family_III(const Basis& basis, const Certificate& c);

struct ContributionEntry {
    FVariable fvar;
    std::vector<QuadScalar> per_component;  // c_k * A[row_k, fvar]
    QuadScalar total;
};

struct CertVerdict {
    bool null_ok = false;
    QuadScalar lambda;
    bool pass = false;
    std::vector<ContributionEntry> table;     // f-variables touched by any component
    std::vector<QuadScalar> component_lambda;  // c_k * L[row_k, target]
};

// Throws UsageError when a component row is missing from the sector.
CertVerdict verify_certificate(const Certificate& cert, const SectorSystem& sys);

// Dense certificate vector over the sector's rows.
SparseRow<QuadScalar> certificate_vector(const Certificate& cert, const SectorSystem& sys);

// Slot-relative name of a basis element for slot j, e.g. "H[j-1]", "E+2d[j]".
std::string slot_label(const Basis& basis, int id, int j);

struct InvarianceReport {
    Family family = Family::I;
    int j = 0;
    std::vector<int> n_values;
    // Per n: relabelled f-variable -> per-component values; plus lambda.
    std::vector<std::map<std::string, std::vector<std::string>>> tables;
    std::vector<QuadScalar> lambdas;
    bool identical = false;
};

// Families I and II only. Throws UsageError when some n < j + 1.
InvarianceReport n_invariance_check(Family family, int j, const std::vector<int>& n_values);

}  // namespace ospcert
