#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "qsector/qstate.hpp"

using namespace qsector;
using qsector::testing::corpus_state;

namespace {

double max_abs_diff(const PureState& a, const PureState& b) {
    REQUIRE(a.dim() == b.dim());
    double m = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    return m;
}

}  // namespace

TEST_CASE("party subsets") {
    PartySubset s = PartySubset::of({1, 3});
    CHECK(s.mask == 0b101u);
    CHECK(s.size() == 2);
    CHECK(s.contains(1));
    CHECK(!s.contains(2));
    CHECK(s.contains(3));
    CHECK(s.complement(4).mask == 0b1010u);
    CHECK(PartySubset::full(3).mask == 0b111u);
    CHECK(PartySubset::single(2).mask == 0b010u);
    CHECK(PartySubset{}.empty());
    CHECK_THROWS_AS(PartySubset::single(0), std::invalid_argument);
}

TEST_CASE("pow_dim guards") {
    CHECK(pow_dim(2, 0) == 1);
    CHECK(pow_dim(3, 4) == 81);
    CHECK(pow_dim(2, 26) == (std::size_t(1) << 26));
    CHECK_THROWS_AS(pow_dim(2, 27), std::length_error);
    CHECK_THROWS_AS(pow_dim(10, 30), std::length_error);
    CHECK_THROWS_AS(pow_dim(1, 3), std::invalid_argument);
}

TEST_CASE("ghz construction") {
    PureState bell = make_ghz(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(bell.amplitudes[0] == cplx(r, 0));
    CHECK(bell.amplitudes[3] == cplx(r, 0));
    CHECK(bell.amplitudes[1] == cplx(0, 0));
    CHECK(bell.amplitudes[2] == cplx(0, 0));

    PureState g32 = make_ghz(3, 2);
    CHECK(g32.dim() == 8);
    CHECK(std::abs(g32.amplitudes[0] - r) < 1e-15);
    CHECK(std::abs(g32.amplitudes[7] - r) < 1e-15);
    for (std::size_t i = 1; i < 7; ++i) CHECK(g32.amplitudes[i] == cplx(0, 0));

    PureState g33 = make_ghz(3, 3);
    const double t = 1.0 / std::sqrt(3.0);
    CHECK(g33.dim() == 27);
    for (std::size_t i = 0; i < 27; ++i) {
        bool diag = (i == 0 || i == 13 || i == 26);
        CHECK(std::abs(g33.amplitudes[i] - (diag ? t : 0.0)) < 1e-15);
    }
    CHECK(std::abs(state_norm(g33.amplitudes) - 1.0) < 1e-14);

    CHECK_THROWS_AS(make_ghz(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_ghz(3, 1), std::invalid_argument);
}

TEST_CASE("product states") {
    PureState p = make_product(2, 2, 0);
    CHECK(p.amplitudes[0] == cplx(1, 0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(p.amplitudes[i] == cplx(0, 0));

    PureState p2 = make_product(3, 3, 2);
    CHECK(p2.amplitudes[26] == cplx(1, 0));
    CHECK(state_norm(p2.amplitudes) == 1.0);

    CHECK_THROWS_AS(make_product(2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_product(2, 2, -1), std::invalid_argument);
}

TEST_CASE("digit convention: party 1 is the most significant digit") {
    PureState p2 = make_product(3, 3, 2);
    CHECK(p2.digit(26, 1) == 2);
    CHECK(p2.digit(26, 3) == 2);
    CHECK(p2.digit(5, 1) == 0);   // 5 = 012 base 3
    CHECK(p2.digit(5, 2) == 1);
    CHECK(p2.digit(5, 3) == 2);
    CHECK_THROWS_AS(p2.digit(0, 4), std::invalid_argument);
}

TEST_CASE("tensor products") {
    PureState bell = make_ghz(2, 2);
    PureState two = tensor(bell, bell);
    CHECK(two.n_parties == 4);
    for (std::size_t i = 0; i < 16; ++i) {
        bool hit = (i == 0 || i == 3 || i == 12 || i == 15);
        CHECK(std::abs(two.amplitudes[i] - (hit ? 0.5 : 0.0)) < 1e-15);
    }
    CHECK_THROWS_AS(tensor(make_ghz(2, 2), make_ghz(2, 3)), std::invalid_argument);

    PureState a = corpus_state(2, 2, 0);
    PureState b = corpus_state(1, 2, 1);
    PureState c = corpus_state(2, 2, 2);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-15);
}

TEST_CASE("bell product family") {
    CHECK(max_abs_diff(make_bell_product(2, 3), make_ghz(2, 3)) == 0.0);
    CHECK(max_abs_diff(make_bell_product(3, 4), make_ghz(3, 4)) == 0.0);
    PureState b4 = make_bell_product(4, 2);
    CHECK(max_abs_diff(b4, tensor(make_ghz(2, 2), make_ghz(2, 2))) == 0.0);
    PureState b5 = make_bell_product(5, 3);
    CHECK(b5.n_parties == 5);
    CHECK(max_abs_diff(b5, tensor(make_ghz(3, 3), make_ghz(2, 3))) == 0.0);
    CHECK_THROWS_AS(make_bell_product(1, 2), std::invalid_argument);
}

TEST_CASE("amplitude constructors") {
    std::vector<cplx> v{cplx(1, 0), cplx(1, 0)};
    CHECK_THROWS_AS(PureState::from_amplitudes(1, 2, v), std::invalid_argument);
    PureState s = PureState::normalized(1, 2, v);
    CHECK(std::abs(s.amplitudes[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(PureState::normalized(1, 2, {cplx(0, 0), cplx(0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(PureState::from_amplitudes(2, 2, v), std::invalid_argument);  // wrong length
}

TEST_CASE("random states: determinism and norm") {
    PureState a = random_state(3, 2, 42);
    PureState b = random_state(3, 2, 42);
    CHECK(max_abs_diff(a, b) == 0.0);
    PureState c = random_state(3, 2, 43);
    CHECK(max_abs_diff(a, c) > 1e-3);
    CHECK(std::abs(state_norm(a.amplitudes) - 1.0) < 1e-14);
}

TEST_CASE("random states: Haar marginal purity") {
    // mean one-party purity of a Haar d x d^(n-1) state is (dA+dB)/(dA dB+1);
    // for (n,d)=(2,2) that is 4/5
    const int samples = 20000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < samples; ++i) {
        double p = purity(random_state(2, 2, 1000 + i), PartySubset::single(1));
        sum += p;
        sumsq += p * p;
    }
    double mean = sum / samples;
    double stderr_ = std::sqrt((sumsq / samples - mean * mean) / samples);
    INFO("observed mean ", mean, " +- ", stderr_);
    CHECK(stderr_ < 2e-3);
    CHECK(std::abs(mean - 0.8) < 5 * stderr_);
}

TEST_CASE("reduce") {
    DensityOperator m = reduce(make_ghz(3, 2), PartySubset::single(1));
    CHECK(m.parties == std::vector<int>{1});
    CHECK(m.dim() == 2);
    CHECK(std::abs(m.matrix(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(m.matrix(1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(m.matrix(0, 1)) < 1e-14);
    m.validate_density();

    DensityOperator z = reduce(make_product(2, 2, 0), PartySubset::single(2));
    CHECK(std::abs(z.matrix(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(z.matrix(1, 1)) < 1e-14);

    // GHZ reductions are completely mixed on their span: purity 1/d
    for (std::uint32_t mask = 1; mask < 15; ++mask) {
        DensityOperator r = reduce(make_ghz(4, 3), PartySubset{mask});
        r.validate_density();
        CHECK(std::abs((r.matrix * r.matrix).trace().real() - 1.0 / 3.0) < 1e-12);
    }
    CHECK_THROWS_AS(reduce(make_ghz(2, 2), PartySubset{}), std::invalid_argument);
    CHECK_THROWS_AS(reduce(make_ghz(2, 2), PartySubset{0b100}), std::invalid_argument);
}

TEST_CASE("purity") {
    CHECK(std::abs(purity(make_ghz(4, 2), PartySubset::of({1, 2})) - 0.5) < 1e-14);
    CHECK(std::abs(purity(make_ghz(4, 2), PartySubset::full(4)) - 1.0) < 1e-13);
    CHECK(purity(make_ghz(4, 2), PartySubset{}) == doctest::Approx(1.0));

    for (auto [n, d] : {std::pair{4, 2}, std::pair{3, 3}, std::pair{2, 5}}) {
        PureState psi = corpus_state(n, d, 9);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            PartySubset b{mask};
            CHECK(std::abs(purity(psi, b) - purity(psi, b.complement(n))) < 1e-10);
        }
    }

    // Gram-matrix shortcut agrees with reduce-then-trace
    for (auto [n, d] : {std::pair{5, 2}, std::pair{4, 3}, std::pair{3, 3}}) {
        PureState psi = corpus_state(n, d, 17);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Matrix rho = reduce(psi, PartySubset{mask}).matrix;
            double direct = (rho * rho).trace().real();
            CHECK(std::abs(purity(psi, PartySubset{mask}) - direct) < 1e-10);
        }
    }
}

TEST_CASE("bipartition matrix reshape") {
    PureState psi = corpus_state(3, 2, 3);
    Matrix m = bipartition_matrix(psi, PartySubset::of({2}));
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    // index (j1 j2 j3): row = j2, col = j1*2 + j3
    CHECK(m(1, 2) == psi.amplitudes[0b110]);
    CHECK(m(0, 3) == psi.amplitudes[0b101]);
}

TEST_CASE("local unitaries preserve norm and marginal spectra") {
    PureState psi = corpus_state(3, 3, 5);
    std::mt19937_64 rng(7);
    Matrix u = random_unitary(3, rng);
    CHECK((u * u.adjoint() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    PureState rotated = apply_local_unitary(psi, 2, u);
    CHECK(std::abs(state_norm(rotated.amplitudes) - 1.0) < 1e-12);
    for (std::uint32_t mask = 1; mask < 8; ++mask)
        CHECK(std::abs(purity(psi, PartySubset{mask}) - purity(rotated, PartySubset{mask})) < 1e-10);
    CHECK_THROWS_AS(apply_local_unitary(psi, 4, u), std::invalid_argument);
    CHECK_THROWS_AS(apply_local_unitary(psi, 1, Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("validate_density rejects broken operators") {
    DensityOperator op;
    op.parties = {1};
    op.local_dim = 2;
    op.matrix = Matrix::Zero(2, 2);
    op.matrix(0, 0) = 1.2;
    op.matrix(1, 1) = -0.2;
    CHECK_THROWS_AS(op.validate_density(), std::runtime_error);
    op.matrix(0, 0) = 0.5;
    op.matrix(1, 1) = 0.5;
    op.matrix(0, 1) = cplx(0, 0.3);  // not Hermitian
    CHECK_THROWS_AS(op.validate_density(), std::runtime_error);
}
