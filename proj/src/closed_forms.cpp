#include "qsector/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qsector {

BigInt SectorPolynomial::total() const {
    BigInt t = 0;
    for (const auto& c : coeffs) t += c;
    return t;
}

SectorDistribution SectorPolynomial::to_distribution() const {
    std::vector<double> s;
    s.reserve(coeffs.size());
    for (const auto& c : coeffs) s.push_back(c.convert_to<double>());
    return make_sector_distribution(n_parties, local_dim, std::move(s));
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is C(n-k+i, i) after each step
    }
    return r;
}

namespace {

BigInt ipow(BigInt base, int exp) {
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

void check_family_args(int n, int d, int n_min) {
    if (n < n_min) throw std::invalid_argument("too few parties for this family");
    if (d < 2) throw std::invalid_argument("local_dim must be >= 2");
}

}  // namespace

SectorPolynomial ghz_sectors_exact(int n, int d) {
    check_family_args(n, d, 2);
    SectorPolynomial poly{n, d, std::vector<BigInt>(n + 1)};
    for (int k = 0; k <= n; ++k) {
        BigInt bracket = ipow(d - 1, k) + ((k % 2 == 0) ? BigInt(d - 1) : BigInt(1 - d));
        if (bracket % d != 0) throw std::runtime_error("GHZ sector bracket not divisible by d");
        poly.coeffs[k] = binomial(n, k) * (bracket / d);
    }
    poly.coeffs[n] += BigInt(d - 1) * ipow(d, n - 1);
    return poly;
}

SectorPolynomial product_sectors_exact(int n, int d) {
    check_family_args(n, d, 1);
    SectorPolynomial poly{n, d, std::vector<BigInt>(n + 1)};
    for (int k = 0; k <= n; ++k) poly.coeffs[k] = binomial(n, k) * ipow(d - 1, k);
    return poly;
}

SectorPolynomial poly_tensor(const SectorPolynomial& a, const SectorPolynomial& b) {
    if (a.n_parties > 0 && b.n_parties > 0 && a.local_dim != b.local_dim)
        throw std::invalid_argument("tensor factors must share the local dimension");
    SectorPolynomial out;
    out.n_parties = a.n_parties + b.n_parties;
    out.local_dim = (a.n_parties > 0) ? a.local_dim : b.local_dim;
    out.coeffs.assign(out.n_parties + 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

SectorPolynomial bell_product_sectors_exact(int n, int d) {
    check_family_args(n, d, 2);
    SectorPolynomial poly = (n % 2 == 0) ? ghz_sectors_exact(2, d) : ghz_sectors_exact(3, d);
    int pairs = (n % 2 == 0) ? n / 2 - 1 : (n - 3) / 2;
    SectorPolynomial bell = ghz_sectors_exact(2, d);
    for (int i = 0; i < pairs; ++i) poly = poly_tensor(poly, bell);
    return poly;
}

BigInt ghz_nsector_exact(int n, int d) {
    check_family_args(n, d, 2);
    BigInt bracket = ipow(d - 1, n) + ((n % 2 == 0) ? BigInt(d - 1) : BigInt(1 - d));
    if (bracket % d != 0) throw std::runtime_error("GHZ sector bracket not divisible by d");
    return bracket / d + BigInt(d - 1) * ipow(d, n - 1);
}

BigInt bell_family_nsector_exact(int n, int d) {
    check_family_args(n, d, 2);
    if (n % 2 == 0) return ipow(BigInt(d) * d - 1, n / 2);
    return BigInt(d - 1) * (d - 1) * (d + 2) * ipow(BigInt(d) * d - 1, (n - 3) / 2);
}

double ghz_nsector_approx(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("invalid (n, d)");
    const double ld = std::log(static_cast<double>(d));
    const double a = n * ld + std::log1p(-1.0 / d);                      // d^N (1 - 1/d)
    const double b = (n - 1) * ld - static_cast<double>(n) / d;         // d^{N-1} e^{-N/d}
    const double m = std::max(a, b);
    return std::exp(m + std::log(std::exp(a - m) + std::exp(b - m)));
}

double ame_nsector_approx(int n, int d) {
    if (n < 1 || d < 2) throw std::invalid_argument("invalid (n, d)");
    const double ld = std::log(static_cast<double>(d));
    return std::exp(n * ld + n * std::log1p(-1.0 / (static_cast<double>(d) * d)));
}

double log_big(const BigInt& value) {
    if (value <= 0) throw std::invalid_argument("log of a non-positive integer");
    using BigFloat = boost::multiprecision::cpp_bin_float_100;
    return log(BigFloat(value)).convert_to<double>();
}

}  // namespace qsector
