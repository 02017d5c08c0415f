#include "qsector/bloch.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsector {

LocalBasis LocalBasis::conjugated(const Matrix& u) const {
    LocalBasis out;
    out.local_dim = local_dim;
    out.matrices.reserve(matrices.size());
    for (const auto& g : matrices) out.matrices.push_back(u * g * u.adjoint());
    return out;
}

LocalBasis gell_mann_basis(int d) {
    if (d < 2) throw std::invalid_argument("local_dim must be >= 2");
    LocalBasis basis;
    basis.local_dim = d;
    basis.matrices.reserve(static_cast<std::size_t>(d) * d);
    basis.matrices.push_back(Matrix::Identity(d, d));
    const double scale = std::sqrt(d / 2.0);  // Tr(g^2): 2 -> d
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix sym = Matrix::Zero(d, d);
            sym(j, k) = sym(k, j) = scale;
            basis.matrices.push_back(sym);
            Matrix asym = Matrix::Zero(d, d);
            asym(j, k) = cplx(0, -scale);
            asym(k, j) = cplx(0, scale);
            basis.matrices.push_back(asym);
        }
    for (int l = 1; l < d; ++l) {
        Matrix diag = Matrix::Zero(d, d);
        double w = scale * std::sqrt(2.0 / (l * (l + 1.0)));
        for (int m = 0; m < l; ++m) diag(m, m) = w;
        diag(l, l) = -w * l;
        basis.matrices.push_back(diag);
    }
    return basis;
}

void validate_local_basis(const LocalBasis& basis, double tol) {
    const int d = basis.local_dim;
    const std::size_t count = static_cast<std::size_t>(d) * d;
    if (basis.matrices.size() != count)
        throw std::invalid_argument("local basis must have d^2 matrices");
    for (std::size_t j = 0; j < count; ++j) {
        const Matrix& g = basis.matrices[j];
        if (g.rows() != d || g.cols() != d)
            throw std::invalid_argument("basis matrix has the wrong size");
        if ((g - g.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("basis matrix is not Hermitian");
    }
    if ((basis.matrices[0] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("g_0 must be the identity");
    for (std::size_t j = 1; j < count; ++j) {
        if (std::abs(basis.matrices[j].trace()) > tol)
            throw std::invalid_argument("basis matrix is not traceless");
        for (std::size_t k = 1; k <= j; ++k) {
            cplx ip = (basis.matrices[j].adjoint() * basis.matrices[k]).trace();
            double want = (j == k) ? d : 0.0;
            if (std::abs(ip - want) > tol * d)
                throw std::invalid_argument("basis normalization Tr(g_j g_k) = d delta_jk violated");
        }
    }
}

std::vector<int> BlochCoefficients::decode(std::uint64_t key) const {
    const std::uint64_t base = static_cast<std::uint64_t>(local_dim) * local_dim;
    std::vector<int> idx(n_parties);
    for (int p = n_parties; p >= 1; --p) {
        idx[p - 1] = static_cast<int>(key % base);
        key /= base;
    }
    return idx;
}

std::uint64_t BlochCoefficients::encode(const std::vector<int>& idx) const {
    if (idx.size() != static_cast<std::size_t>(n_parties))
        throw std::invalid_argument("index tuple has the wrong length");
    const std::uint64_t base = static_cast<std::uint64_t>(local_dim) * local_dim;
    std::uint64_t key = 0;
    for (int j : idx) {
        if (j < 0 || static_cast<std::uint64_t>(j) >= base)
            throw std::invalid_argument("basis index out of range");
        key = key * base + static_cast<std::uint64_t>(j);
    }
    return key;
}

int BlochCoefficients::support_size(std::uint64_t key) const {
    const std::uint64_t base = static_cast<std::uint64_t>(local_dim) * local_dim;
    int count = 0;
    while (key != 0) {
        if (key % base != 0) ++count;
        key /= base;
    }
    return count;
}

double BlochCoefficients::coefficient(const std::vector<int>& idx) const {
    std::uint64_t key = encode(idx);
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, std::uint64_t k) { return e.first < k; });
    return (it != entries.end() && it->first == key) ? it->second : 0.0;
}

double BlochCoefficients::sum_of_squares() const {
    double s = 0;
    for (const auto& [key, r] : entries) s += r * r;
    return s;
}

namespace {

struct Expander {
    const PureState& state;
    const std::vector<LocalBasis>& bases;
    int n;
    int d;
    std::uint64_t base;
    BlochCoefficients out;

    // contract one more site: T'(x',y') = sum_{a,b} g(a,b) T(a*D+x', b*D+y'),
    // where the row index of T is the conjugated (bra) leg
    Matrix contract(const Matrix& t, const Matrix& g) const {
        const Eigen::Index dd = t.rows() / d;
        Matrix next = Matrix::Zero(dd, dd);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                cplx w = g(a, b);
                if (w == cplx(0, 0)) continue;
                next += w * t.block(a * dd, b * dd, dd, dd);
            }
        return next;
    }

    void emit(std::uint64_t key, cplx value) {
        if (std::abs(value.imag()) > 1e-10)
            throw std::runtime_error("Bloch coefficient has a nonzero imaginary part");
        double r = value.real();
        if (std::abs(r) >= 1e-12) out.entries.emplace_back(key, r);
    }

    void descend(int level, std::uint64_t key, const Matrix& t) {
        if (level == n) {
            emit(key, t(0, 0));
            return;
        }
        for (std::uint64_t j = 0; j < base; ++j)
            descend(level + 1, key * base + j, contract(t, bases[level].matrices[j]));
    }

    void run() {
        out.n_parties = n;
        out.local_dim = d;
        const Eigen::Index dim = static_cast<Eigen::Index>(state.dim());
        const Eigen::Index rest = dim / d;
        Eigen::Map<const Matrix> psi_rows(state.amplitudes.data(), rest, d);
        // amplitudes are row-major in the party index; Eigen maps are
        // column-major, so psi_rows.col(a) is the block with party-1 digit a
        for (std::uint64_t j = 0; j < base; ++j) {
            const Matrix& g = bases[0].matrices[j];
            Matrix t = Matrix::Zero(rest, rest);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    cplx w = g(a, b);
                    if (w == cplx(0, 0)) continue;
                    t.noalias() += w * (psi_rows.col(a).conjugate() * psi_rows.col(b).transpose());
                }
            descend(1, j, t);
        }
    }
};

}  // namespace

BlochCoefficients bloch_expand(const PureState& state,
                               const std::vector<LocalBasis>& site_bases) {
    const int n = state.n_parties;
    const int d = state.local_dim;
    if (site_bases.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("need one local basis per party");
    for (const auto& b : site_bases)
        if (b.local_dim != d) throw std::invalid_argument("basis dimension mismatch");
    double tuples = std::pow(static_cast<double>(d), 2.0 * n);
    if (tuples > 1e8) throw std::length_error("d^{2N} > 1e8: expansion too large");

    Expander ex{state, site_bases, n, d, static_cast<std::uint64_t>(d) * d, {}};
    ex.run();
    return std::move(ex.out);
}

BlochCoefficients bloch_expand(const PureState& state) {
    std::vector<LocalBasis> bases(state.n_parties, gell_mann_basis(state.local_dim));
    return bloch_expand(state, bases);
}

SectorDistribution sectors_from_bloch(const BlochCoefficients& coeffs) {
    std::vector<double> s(coeffs.n_parties + 1, 0.0);
    for (const auto& [key, r] : coeffs.entries) s[coeffs.support_size(key)] += r * r;
    return make_sector_distribution(coeffs.n_parties, coeffs.local_dim, std::move(s));
}

}  // namespace qsector
