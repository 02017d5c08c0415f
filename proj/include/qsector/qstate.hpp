// Pure states of N qudits with equal local dimension d, plus the linear
// algebra the rest of the toolkit is built on: named state families, tensor
// products, Haar sampling, partial traces and bipartition purities.
//
// Index convention (fixed throughout): amplitudes are indexed by base-d digit
// strings with party 1 as the most significant digit, so |j_1 j_2 ... j_N>
// sits at index j_1*d^(N-1) + ... + j_N.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qsector {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Subset of parties as a bitmask: bit j set <=> party j+1 is in the subset.
struct PartySubset {
    std::uint32_t mask = 0;

    int size() const;
    bool contains(int party) const { return (mask >> (party - 1)) & 1u; }
    PartySubset complement(int n_parties) const;
    bool empty() const { return mask == 0; }

    static PartySubset full(int n_parties);
    static PartySubset single(int party);
    static PartySubset of(std::initializer_list<int> parties);
};

struct PureState {
    int n_parties = 0;
    int local_dim = 0;
    std::vector<cplx> amplitudes;  // length d^N, unit norm

    std::size_t dim() const { return amplitudes.size(); }
    // base-d digit of `party` (1-based) in basis index `index`
    int digit(std::size_t index, int party) const;

    // requires the amplitudes to be unit-norm already (within 1e-12)
    static PureState from_amplitudes(int n, int d, std::vector<cplx> amps);
    // rescales to unit norm; rejects (near-)zero vectors
    static PureState normalized(int n, int d, std::vector<cplx> amps);
};

// Reduced state on an ordered list of parties; the first listed party is the
// most significant digit of the reduced index.
struct DensityOperator {
    std::vector<int> parties;
    int local_dim = 0;
    Matrix matrix;

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
    // Hermiticity, unit trace, eigenvalue floor. Throws on violation.
    void validate_density(double tol = 1e-12, double psd_floor = -1e-10) const;
};

// d^n as a vector length, guarded against anything too large to hold in RAM.
std::size_t pow_dim(int d, int n);

PureState make_ghz(int n, int d);
PureState make_product(int n, int d, int j);
// even n: Bell^{(n/2)}; odd n: GHZ^3 (x) Bell^{((n-3)/2)}; equals GHZ for n=2,3
PureState make_bell_product(int n, int d);
PureState tensor(const PureState& a, const PureState& b);
// Haar-distributed; fully determined by the seed
PureState random_state(int n, int d, std::uint64_t seed);

// amplitudes reshaped into a (row = digits of `rows` parties, col = the
// rest) matrix; within each side the parties keep their significance order
Matrix bipartition_matrix(const PureState& state, PartySubset rows);

// partial trace onto `keep` (must be non-empty)
DensityOperator reduce(const PureState& state, PartySubset keep);
// Tr(rho_B^2), evaluated on the smaller side of the bipartition via the Gram
// matrix of the reshaped amplitude vector; purity of the empty subset is 1
double purity(const PureState& state, PartySubset subset);

PureState apply_local_unitary(const PureState& state, int party, const Matrix& u);

// Haar-distributed unitary (QR of a Gaussian matrix with phase fix)
Matrix random_unitary(int dim, std::mt19937_64& rng);

// N(0,1) draw that does not depend on the standard library's distribution
// implementation, so seeded runs reproduce across platforms
double standard_gaussian(std::mt19937_64& rng);

double state_norm(const std::vector<cplx>& amps);

}  // namespace qsector
