#include "qsector/sector_engine.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsector {

double SectorDistribution::total() const {
    double t = 0;
    for (double s : lengths) t += s;
    return t;
}

SectorDistribution make_sector_distribution(int n, int d, std::vector<double> raw) {
    if (raw.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("sector vector must have N+1 entries");
    for (double& s : raw) {
        if (s < -1e-9) throw std::runtime_error("sector length is negative beyond tolerance");
        if (s < 0) s = 0;
    }
    return SectorDistribution{n, d, std::move(raw)};
}

InversionMap InversionMap::projector_p(int n, int d) {
    InversionMap m;
    m.site_coeffs.assign(n, {-1.0 / d, -1.0});
    return m;
}

InversionMap InversionMap::map_q(int n, int d) {
    InversionMap m;
    m.site_coeffs.assign(n, {1.0, 1.0 / d});
    return m;
}

InversionMap InversionMap::standard_inversion(int n) {
    InversionMap m;
    m.site_coeffs.assign(n, {1.0, 1.0});
    return m;
}

PurityTable purity_table(const PureState& state) {
    const int n = state.n_parties;
    if (n > 24) throw std::length_error("purity table needs 2^N entries, N > 24 rejected");
    const std::uint32_t size = std::uint32_t(1) << n;
    PurityTable table;
    table.n_parties = n;
    table.local_dim = state.local_dim;
    table.values.assign(size, 0.0);
    const std::uint32_t full = size - 1;
    for (std::uint32_t mask = 0; mask < size; ++mask) {
        std::uint32_t comp = full & ~mask;
        if (comp < mask) continue;  // complement symmetry: compute each pair once
        double p = purity(state, PartySubset{mask});
        table.values[mask] = p;
        table.values[comp] = p;
    }
    return table;
}

double n_sector_from_table(const PurityTable& table) {
    // S_N = d^N sum_B (-1/d)^{N-|B|} Tr(rho_B^2) = sum_B (-1)^{N-|B|} d^{|B|} Tr(rho_B^2)
    const int n = table.n_parties;
    const int d = table.local_dim;
    std::vector<double> dpow(n + 1);
    dpow[0] = 1;
    for (int k = 1; k <= n; ++k) dpow[k] = dpow[k - 1] * d;
    double s = 0;
    for (std::uint32_t mask = 0; mask < table.values.size(); ++mask) {
        int b = std::popcount(mask);
        double term = dpow[b] * table.values[mask];
        s += ((n - b) % 2 == 0) ? term : -term;
    }
    return s;
}

double n_sector_via_projector(const PureState& state) {
    return n_sector_from_table(purity_table(state));
}

SectorDistribution sectors_from_table(const PurityTable& table) {
    const int n = table.n_parties;
    const int d = table.local_dim;
    const std::size_t size = table.values.size();
    // h[A] = sum_{B subseteq A} (-1/d)^{|A|-|B|} Tr(rho_B^2): weighted subset-sum
    // transform, one bit at a time
    std::vector<double> h(table.values);
    const double c = -1.0 / d;
    for (int p = 0; p < n; ++p) {
        const std::size_t bit = std::size_t(1) << p;
        for (std::size_t mask = 0; mask < size; ++mask)
            if (mask & bit) h[mask] += c * h[mask ^ bit];
    }
    std::vector<double> dpow(n + 1);
    dpow[0] = 1;
    for (int k = 1; k <= n; ++k) dpow[k] = dpow[k - 1] * d;
    std::vector<double> s(n + 1, 0.0);
    for (std::size_t mask = 0; mask < size; ++mask) {
        int k = std::popcount(static_cast<std::uint32_t>(mask));
        s[k] += dpow[k] * h[mask];
    }
    return make_sector_distribution(n, d, std::move(s));
}

SectorDistribution sectors_from_purities(const PureState& state) {
    return sectors_from_table(purity_table(state));
}

namespace {

std::size_t ipow(int d, int n) {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::size_t>(d);
    return r;
}

// trace out the sites in `traced` (positions, bit i <-> site i+1) and
// re-embed tensored with identity on those sites, all in the original order
Matrix trace_and_embed(const Matrix& mat, int m, int d, std::uint32_t traced) {
    if (traced == 0) return mat;
    const std::size_t dim = static_cast<std::size_t>(mat.rows());
    // strides of each site in the composite index, site 1 most significant
    std::vector<std::size_t> stride(m);
    for (int s = m - 1, w = 1; s >= 0; --s, w *= d) stride[s] = static_cast<std::size_t>(w);
    std::vector<int> kept, out;
    for (int s = 0; s < m; ++s) ((traced >> s) & 1u) ? out.push_back(s) : kept.push_back(s);
    const std::size_t kept_dim = ipow(d, static_cast<int>(kept.size()));
    const std::size_t out_dim = ipow(d, static_cast<int>(out.size()));

    auto compose = [&](std::size_t kept_idx, std::size_t out_idx) {
        std::size_t full = 0;
        for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
            full += (kept_idx % d) * stride[kept[i]];
            kept_idx /= d;
        }
        for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
            full += (out_idx % d) * stride[out[i]];
            out_idx /= d;
        }
        return full;
    };

    Matrix small = Matrix::Zero(kept_dim, kept_dim);
    for (std::size_t r = 0; r < kept_dim; ++r)
        for (std::size_t c = 0; c < kept_dim; ++c) {
            cplx acc(0, 0);
            for (std::size_t t = 0; t < out_dim; ++t)
                acc += mat(compose(r, t), compose(c, t));
            small(r, c) = acc;
        }

    Matrix result = Matrix::Zero(dim, dim);
    for (std::size_t r = 0; r < kept_dim; ++r)
        for (std::size_t c = 0; c < kept_dim; ++c) {
            if (small(r, c) == cplx(0, 0)) continue;
            for (std::size_t t = 0; t < out_dim; ++t)
                result(compose(r, t), compose(c, t)) = small(r, c);
        }
    return result;
}

Matrix apply_inversion_matrix(const InversionMap& map, const Matrix& mat, int d) {
    const int m = map.n_sites();
    const std::uint32_t subsets = std::uint32_t(1) << m;
    Matrix acc = Matrix::Zero(mat.rows(), mat.cols());
    for (std::uint32_t t = 0; t < subsets; ++t) {
        double coeff = 1.0;
        for (int s = 0; s < m; ++s)
            coeff *= ((t >> s) & 1u) ? map.site_coeffs[s].first : -map.site_coeffs[s].second;
        if (coeff == 0.0) continue;
        acc += coeff * trace_and_embed(mat, m, d, t);
    }
    return acc;
}

void check_op_shape(const InversionMap& map, const DensityOperator& op) {
    const int m = map.n_sites();
    if (static_cast<int>(op.parties.size()) != m)
        throw std::invalid_argument("inversion map and operator disagree on the site count");
    if (op.dim() != ipow(op.local_dim, m))
        throw std::invalid_argument("operator size is not d^m");
}

}  // namespace

DensityOperator apply_inversion(const InversionMap& map, const DensityOperator& op) {
    check_op_shape(map, op);
    DensityOperator out;
    out.parties = op.parties;
    out.local_dim = op.local_dim;
    out.matrix = apply_inversion_matrix(map, op.matrix, op.local_dim);
    return out;
}

DensityOperator apply_inversion_sequential(const InversionMap& map, const DensityOperator& op) {
    check_op_shape(map, op);
    const int m = map.n_sites();
    DensityOperator out;
    out.parties = op.parties;
    out.local_dim = op.local_dim;
    Matrix cur = op.matrix;
    for (int s = 0; s < m; ++s) {
        auto [alpha, beta] = map.site_coeffs[s];
        cur = alpha * trace_and_embed(cur, m, op.local_dim, std::uint32_t(1) << s) - beta * cur;
    }
    out.matrix = std::move(cur);
    return out;
}

Matrix sector_component(const PureState& state, int k) {
    const int n = state.n_parties;
    const int d = state.local_dim;
    if (k < 0 || k > n) throw std::invalid_argument("sector index out of range");
    const std::size_t dim = state.dim();
    if (dim > 4096) throw std::length_error("sector_component materializes d^N x d^N operators");
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes.data(), static_cast<Eigen::Index>(dim));
    Matrix rho = psi * psi.adjoint();

    // split rho site by site into identity-trace and traceless parts, keeping
    // only assignments with exactly k traceless sites
    Matrix acc = Matrix::Zero(dim, dim);
    const std::uint32_t subsets = std::uint32_t(1) << n;
    for (std::uint32_t a = 0; a < subsets; ++a) {
        if (std::popcount(a) != k) continue;
        Matrix cur = rho;
        for (int s = 0; s < n; ++s) {
            Matrix avg = trace_and_embed(cur, n, d, std::uint32_t(1) << s) / d;
            cur = ((a >> s) & 1u) ? Matrix(cur - avg) : avg;
        }
        acc += cur;
    }
    return acc;
}

Matrix r_matrix(const PureState& state, int traced_party) {
    if (state.n_parties < 2) throw std::invalid_argument("R matrix needs at least 2 parties");
    if (traced_party < 1 || traced_party > state.n_parties)
        throw std::invalid_argument("party label out of range");
    PartySubset keep = PartySubset::single(traced_party).complement(state.n_parties);
    DensityOperator rho = reduce(state, keep);
    Matrix inv = apply_inversion_matrix(InversionMap::standard_inversion(state.n_parties - 1),
                                        rho.matrix, state.local_dim);
    return rho.matrix * inv;
}

double r_matrix_trace(const PureState& state, int traced_party) {
    Matrix r = r_matrix(state, traced_party);
    cplx tr = r.trace();
    if (std::abs(tr.imag()) > 1e-10) throw std::runtime_error("Tr R has a nonzero imaginary part");
    return tr.real();
}

std::vector<double> r_matrix_traces_from_table(const PurityTable& table) {
    // Tr R_[p] = sum_{K subseteq parties\{p}} (-1)^{|K|} Tr(rho_K^2): expanding
    // the inversion termwise turns each trace against rho_[p] into a purity
    const int n = table.n_parties;
    std::vector<double> traces(n, 0.0);
    const std::uint32_t size = std::uint32_t(1) << n;
    for (int p = 1; p <= n; ++p) {
        const std::uint32_t pbit = std::uint32_t(1) << (p - 1);
        double acc = 0;
        for (std::uint32_t mask = 0; mask < size; ++mask) {
            if (mask & pbit) continue;
            double v = table.values[mask];
            acc += (std::popcount(mask) % 2 == 0) ? v : -v;
        }
        traces[p - 1] = acc;
    }
    return traces;
}

double seminorm_p(const Matrix& op, int n_parties, int d) {
    if (op.rows() != op.cols()) throw std::invalid_argument("seminorm needs a square operator");
    if (static_cast<std::size_t>(op.rows()) != ipow(d, n_parties))
        throw std::invalid_argument("operator size is not d^N");
    Matrix p = apply_inversion_matrix(InversionMap::projector_p(n_parties, d), op, d);
    double val = (op.adjoint() * p).trace().real();
    if (val < -1e-9) throw std::runtime_error("seminorm argument is negative beyond tolerance");
    return std::sqrt(std::max(val, 0.0));
}

}  // namespace qsector
