// Fast sector computation from a single table of all 2^N bipartition
// purities, plus the superoperator toolbox used by the identity checks:
// generalized inversions, the full-support projector, R matrices and the
// associated seminorm.
#pragma once

#include <utility>
#include <vector>

#include "qsector/qstate.hpp"

namespace qsector {

// All sector lengths are the squared Hilbert-Schmidt quantities S_k.
struct SectorDistribution {
    int n_parties = 0;
    int local_dim = 0;
    std::vector<double> lengths;  // S_0..S_N

    double total() const;
};

// Clamps rounding-level negatives (>= -1e-9) to zero; anything more negative
// is treated as a genuine bug and throws.
SectorDistribution make_sector_distribution(int n, int d, std::vector<double> raw);

struct PurityTable {
    int n_parties = 0;
    int local_dim = 0;
    std::vector<double> values;  // length 2^N, values[mask] = Tr(rho_B^2)

    double value(PartySubset b) const { return values[b.mask]; }
};

// Product over sites of [alpha_j * Tr_j(.)(x)1_j - beta_j * id].
struct InversionMap {
    std::vector<std::pair<double, double>> site_coeffs;  // (alpha_j, beta_j)

    int n_sites() const { return static_cast<int>(site_coeffs.size()); }

    // projector onto the full-support sector: alpha = -1/d, beta = -1
    static InversionMap projector_p(int n, int d);
    // complement-purity companion map: alpha = 1, beta = 1/d
    static InversionMap map_q(int n, int d);
    // universal state inversion: alpha = beta = 1
    static InversionMap standard_inversion(int n);
};

PurityTable purity_table(const PureState& state);

// S_N as the alternating, d-weighted sum over the purity table
double n_sector_from_table(const PurityTable& table);
double n_sector_via_projector(const PureState& state);

// Full distribution from one purity table: the full-support sector of every
// k-party reduction, accumulated over all subsets of each size.
SectorDistribution sectors_from_table(const PurityTable& table);
SectorDistribution sectors_from_purities(const PureState& state);

// Inclusion-exclusion expansion over subsets of the operator's parties.
// The result is generally not positive (it is for actual inversions of
// states only in special cases); no density validation is applied.
DensityOperator apply_inversion(const InversionMap& map, const DensityOperator& op);
// one site at a time; reference path for the expansion above
DensityOperator apply_inversion_sequential(const InversionMap& map, const DensityOperator& op);

// The operator carrying exactly the weight-k part of |psi><psi|.
// Oracle-scale only (full d^N x d^N matrices).
Matrix sector_component(const PureState& state, int k);

// rho_[p] * I_-(rho_[p]) for the reduction with party p traced out
Matrix r_matrix(const PureState& state, int traced_party);
double r_matrix_trace(const PureState& state, int traced_party);
// all N traces at once from the purity table (termwise expansion of the
// inversion turns each trace into an alternating sum of purities); agrees
// with r_matrix_trace and never materializes operators
std::vector<double> r_matrix_traces_from_table(const PurityTable& table);

// sqrt(Tr[M^dag P(M)]) with P the full-support projector on n sites
double seminorm_p(const Matrix& op, int n_parties, int d);

}  // namespace qsector
