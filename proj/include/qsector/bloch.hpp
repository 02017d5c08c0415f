// Brute-force ground truth: expand a state in a product basis of traceless
// Hermitian local operators and read the sector lengths directly off the
// squared coefficients.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsector/qstate.hpp"
#include "qsector/sector_engine.hpp"

namespace qsector {

// Local operator basis {g_0 = identity, g_1 .. g_{d^2-1}} with every element
// normalized to Tr(g_j g_k) = d * delta_jk and g_j traceless for j >= 1.
struct LocalBasis {
    int local_dim = 0;
    std::vector<Matrix> matrices;

    LocalBasis conjugated(const Matrix& u) const;  // g -> u g u^dag
};

// Generalized Gell-Mann construction, rescaled so Tr(g^2) = d. Ordering:
// for each index pair j<k (lexicographic) the symmetric then the
// antisymmetric matrix, followed by the d-1 diagonal matrices. For d = 2
// this is exactly [1, X, Y, Z].
LocalBasis gell_mann_basis(int d);
void validate_local_basis(const LocalBasis& basis, double tol = 1e-12);

// Sparse coefficient map. Keys pack the index tuple (j_1..j_N) in base d^2
// with party 1 as the most significant digit, so ascending key order is
// lexicographic tuple order.
struct BlochCoefficients {
    int n_parties = 0;
    int local_dim = 0;
    std::vector<std::pair<std::uint64_t, double>> entries;  // sorted by key

    std::vector<int> decode(std::uint64_t key) const;
    std::uint64_t encode(const std::vector<int>& idx) const;
    int support_size(std::uint64_t key) const;  // # nonzero tuple entries
    double coefficient(const std::vector<int>& idx) const;
    double sum_of_squares() const;
};

// All d^{2N} coefficients by successive single-site contractions of the
// amplitude vector; rejects d^{2N} > 1e8. Coefficients below 1e-12 in
// magnitude are dropped.
BlochCoefficients bloch_expand(const PureState& state);
BlochCoefficients bloch_expand(const PureState& state,
                               const std::vector<LocalBasis>& site_bases);

SectorDistribution sectors_from_bloch(const BlochCoefficients& coeffs);

}  // namespace qsector
