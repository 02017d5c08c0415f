#include "qsector/qstate.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsector {

namespace {

constexpr std::size_t kMaxDim = std::size_t(1) << 26;

void check_shape(int n, int d) {
    if (n < 1) throw std::invalid_argument("n_parties must be >= 1");
    if (d < 2) throw std::invalid_argument("local_dim must be >= 2");
}

void check_subset(PartySubset s, int n) {
    if (n < 1 || n > 31) throw std::invalid_argument("party count out of range");
    if (s.mask >> n) throw std::invalid_argument("subset references parties beyond N");
}

// digits of every party, most significant (party 1) first
void index_digits(std::size_t index, int n, int d, int* dig) {
    for (int p = n; p >= 1; --p) {
        dig[p - 1] = static_cast<int>(index % d);
        index /= d;
    }
}

}  // namespace

int PartySubset::size() const { return std::popcount(mask); }

PartySubset PartySubset::complement(int n_parties) const {
    return PartySubset{full(n_parties).mask & ~mask};
}

PartySubset PartySubset::full(int n_parties) {
    if (n_parties < 0 || n_parties > 31) throw std::invalid_argument("party count out of range");
    return PartySubset{(n_parties == 0) ? 0u : ((std::uint32_t(1) << n_parties) - 1u)};
}

PartySubset PartySubset::single(int party) {
    if (party < 1 || party > 31) throw std::invalid_argument("party label out of range");
    return PartySubset{std::uint32_t(1) << (party - 1)};
}

PartySubset PartySubset::of(std::initializer_list<int> parties) {
    PartySubset s;
    for (int p : parties) s.mask |= single(p).mask;
    return s;
}

int PureState::digit(std::size_t index, int party) const {
    if (party < 1 || party > n_parties) throw std::invalid_argument("party label out of range");
    std::size_t div = 1;
    for (int i = 0; i < n_parties - party; ++i) div *= local_dim;
    return static_cast<int>((index / div) % local_dim);
}

PureState PureState::from_amplitudes(int n, int d, std::vector<cplx> amps) {
    check_shape(n, d);
    if (amps.size() != pow_dim(d, n))
        throw std::invalid_argument("amplitude vector length is not d^N");
    double nrm = state_norm(amps);
    if (std::abs(nrm - 1.0) > 1e-12)
        throw std::invalid_argument("amplitudes are not unit-norm");
    return PureState{n, d, std::move(amps)};
}

PureState PureState::normalized(int n, int d, std::vector<cplx> amps) {
    check_shape(n, d);
    if (amps.size() != pow_dim(d, n))
        throw std::invalid_argument("amplitude vector length is not d^N");
    double nrm = state_norm(amps);
    if (nrm < 1e-12) throw std::invalid_argument("cannot normalize a zero vector");
    for (auto& a : amps) a /= nrm;
    return PureState{n, d, std::move(amps)};
}

void DensityOperator::validate_density(double tol, double psd_floor) const {
    if (matrix.rows() != matrix.cols()) throw std::runtime_error("density matrix not square");
    double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw std::runtime_error("density matrix not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > tol || std::abs(matrix.trace().imag()) > tol)
        throw std::runtime_error("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < psd_floor)
        throw std::runtime_error("density matrix has a negative eigenvalue");
}

std::size_t pow_dim(int d, int n) {
    check_shape(std::max(n, 1), d);
    if (n < 0) throw std::invalid_argument("negative exponent");
    std::size_t result = 1;
    for (int i = 0; i < n; ++i) {
        if (result > kMaxDim / static_cast<std::size_t>(d))
            throw std::length_error("d^N exceeds the supported state size");
        result *= static_cast<std::size_t>(d);
    }
    return result;
}

PureState make_ghz(int n, int d) {
    if (n < 2) throw std::invalid_argument("GHZ needs at least 2 parties");
    check_shape(n, d);
    std::size_t dim = pow_dim(d, n);
    std::size_t rep = 0;  // index of |11...1>
    for (int i = 0; i < n; ++i) rep = rep * d + 1;
    std::vector<cplx> amps(dim, cplx(0, 0));
    double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) amps[static_cast<std::size_t>(j) * rep] = a;
    return PureState{n, d, std::move(amps)};
}

PureState make_product(int n, int d, int j) {
    check_shape(n, d);
    if (j < 0 || j >= d) throw std::invalid_argument("local level j out of range");
    std::size_t dim = pow_dim(d, n);
    std::size_t rep = 0;
    for (int i = 0; i < n; ++i) rep = rep * d + 1;
    std::vector<cplx> amps(dim, cplx(0, 0));
    amps[static_cast<std::size_t>(j) * rep] = 1.0;
    return PureState{n, d, std::move(amps)};
}

PureState make_bell_product(int n, int d) {
    if (n < 2) throw std::invalid_argument("Bell product needs at least 2 parties");
    check_shape(n, d);
    PureState state = (n % 2 == 0) ? make_ghz(2, d) : make_ghz(3, d);
    int pairs = (n % 2 == 0) ? n / 2 - 1 : (n - 3) / 2;
    for (int i = 0; i < pairs; ++i) state = tensor(state, make_ghz(2, d));
    return state;
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.local_dim != b.local_dim)
        throw std::invalid_argument("tensor factors must share the local dimension");
    std::size_t dim = pow_dim(a.local_dim, a.n_parties + b.n_parties);
    std::vector<cplx> amps(dim);
    std::size_t bd = b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < bd; ++j) amps[i * bd + j] = a.amplitudes[i] * b.amplitudes[j];
    return PureState{a.n_parties + b.n_parties, a.local_dim, std::move(amps)};
}

double standard_gaussian(std::mt19937_64& rng) {
    // Box-Muller on hand-rolled uniforms: the stdlib's normal_distribution is
    // not specified bit-for-bit, and seeded runs must reproduce everywhere.
    double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0,1]
    double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;          // [0,1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

PureState random_state(int n, int d, std::uint64_t seed) {
    check_shape(n, d);
    std::size_t dim = pow_dim(d, n);
    std::mt19937_64 rng(seed);
    std::vector<cplx> amps(dim);
    for (auto& a : amps) {
        double re = standard_gaussian(rng);
        double im = standard_gaussian(rng);
        a = cplx(re, im);
    }
    return PureState::normalized(n, d, std::move(amps));
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
    if (dim < 1) throw std::invalid_argument("unitary dimension must be positive");
    Matrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z(i, j) = cplx(standard_gaussian(rng), standard_gaussian(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        double mag = std::abs(r(j, j));
        q.col(j) *= (mag > 0) ? r(j, j) / mag : cplx(1, 0);
    }
    return q;
}

Matrix bipartition_matrix(const PureState& state, PartySubset rows) {
    check_subset(rows, state.n_parties);
    const int n = state.n_parties;
    const int d = state.local_dim;
    std::size_t nrows = pow_dim(d, rows.size());
    std::size_t ncols = state.dim() / nrows;
    Matrix m(nrows, ncols);
    std::vector<int> dig(n);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        index_digits(i, n, d, dig.data());
        std::size_t r = 0, c = 0;
        for (int p = 1; p <= n; ++p) {
            if (rows.contains(p))
                r = r * d + dig[p - 1];
            else
                c = c * d + dig[p - 1];
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state.amplitudes[i];
    }
    return m;
}

DensityOperator reduce(const PureState& state, PartySubset keep) {
    check_subset(keep, state.n_parties);
    if (keep.empty()) throw std::invalid_argument("cannot reduce onto the empty subset");
    Matrix m = bipartition_matrix(state, keep);
    DensityOperator op;
    op.local_dim = state.local_dim;
    for (int p = 1; p <= state.n_parties; ++p)
        if (keep.contains(p)) op.parties.push_back(p);
    op.matrix = m * m.adjoint();
    return op;
}

double purity(const PureState& state, PartySubset subset) {
    check_subset(subset, state.n_parties);
    int n = state.n_parties;
    if (subset.empty() || subset.size() == n) {
        double nrm2 = 0;
        for (const auto& a : state.amplitudes) nrm2 += std::norm(a);
        return nrm2 * nrm2;  // (Tr rho)^2 resp. Tr(rho^2) of a pure state
    }
    PartySubset side = subset;
    if (side.size() * 2 > n) side = side.complement(n);  // Tr(rho_B^2) = Tr(rho_Bbar^2)
    Matrix m = bipartition_matrix(state, side);
    Matrix g = m * m.adjoint();
    return g.squaredNorm();
}

PureState apply_local_unitary(const PureState& state, int party, const Matrix& u) {
    if (party < 1 || party > state.n_parties) throw std::invalid_argument("party label out of range");
    const int d = state.local_dim;
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("unitary has the wrong size");
    std::size_t stride = 1;
    for (int i = 0; i < state.n_parties - party; ++i) stride *= d;
    std::size_t block = stride * static_cast<std::size_t>(d);
    std::vector<cplx> out(state.dim());
    std::vector<cplx> in(d);
    for (std::size_t base = 0; base < state.dim(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int a = 0; a < d; ++a) in[a] = state.amplitudes[base + a * stride + off];
            for (int a = 0; a < d; ++a) {
                cplx acc(0, 0);
                for (int b = 0; b < d; ++b) acc += u(a, b) * in[b];
                out[base + a * stride + off] = acc;
            }
        }
    }
    return PureState{state.n_parties, state.local_dim, std::move(out)};
}

double state_norm(const std::vector<cplx>& amps) {
    double nrm2 = 0;
    for (const auto& a : amps) nrm2 += std::norm(a);
    return std::sqrt(nrm2);
}

}  // namespace qsector
