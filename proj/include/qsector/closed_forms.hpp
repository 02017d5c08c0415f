// Exact closed-form sector values for the named families, their generating
// polynomial (S_0..S_N as big integers), and the two large-parameter
// approximation curves. Everything here is arbitrary precision: the sweep
// needs exact signs of differences where d^N has hundreds of digits.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "qsector/sector_engine.hpp"

namespace qsector {

using BigInt = boost::multiprecision::cpp_int;

struct SectorPolynomial {
    int n_parties = 0;
    int local_dim = 0;
    std::vector<BigInt> coeffs;  // exact S_0..S_N

    BigInt total() const;
    // lossy, for comparison against the floating-point engine
    SectorDistribution to_distribution() const;
};

BigInt binomial(int n, int k);

// S_k = C(N,k)[(d-1)^k + (-1)^k (d-1)]/d + delta_{kN} (d-1) d^{N-1};
// throws if the division by d is not exact (transcription bug guard).
SectorPolynomial ghz_sectors_exact(int n, int d);

// S_k = C(N,k)(d-1)^k
SectorPolynomial product_sectors_exact(int n, int d);

// convolution: S_k(a (x) b) = sum_{i+j=k} S_i(a) S_j(b)
SectorPolynomial poly_tensor(const SectorPolynomial& a, const SectorPolynomial& b);

// full distribution of the Bell-product family (even n: Bell^{n/2};
// odd n: GHZ^3 (x) Bell^{(n-3)/2})
SectorPolynomial bell_product_sectors_exact(int n, int d);

// top coefficients only
BigInt ghz_nsector_exact(int n, int d);
// even n: (d^2-1)^{n/2}; odd n: (d-1)^2 (d+2) (d^2-1)^{(n-3)/2}
BigInt bell_family_nsector_exact(int n, int d);

// S_N(GHZ) ~ d^N (1 - 1/d) + d^{N-1} e^{-N/d}, evaluated in log space
double ghz_nsector_approx(int n, int d);
// S_N ~ d^N (1 - 1/d^2)^N reference curve
double ame_nsector_approx(int n, int d);

// natural log of a positive big integer (for log-scale output columns)
double log_big(const BigInt& value);

}  // namespace qsector
