// Verifiers for the linear and quadratic relations every pure-state sector
// distribution must satisfy. Each check returns a small report rather than a
// bare bool so callers (tests, CLI) can print the two sides and the residual.
#pragma once

#include <string>
#include <vector>

#include "qsector/sector_engine.hpp"

namespace qsector {

struct RelationReport {
    std::string relation;
    double left = 0.0;
    double right = 0.0;
    double residual = 0.0;   // |left - right|, or -left for one-sided checks
    double tolerance = 0.0;
    bool pass = false;
    std::string note;  // optional: equality/degeneracy flags etc.
};

// d^N S_N = sum_k (-1)^k (d^2-1)^{N-k} S_k; tolerance 1e-9 * d^N
RelationReport check_pq_relation(const SectorDistribution& s);

// d^{N-2k} sum_{m<=k} C(N-m,k-m) S_m = sum_{n<=N-k} C(N-n,k) S_n,
// valid for 0 <= k <= floor((N-1)/2)
RelationReport check_k_purity(const SectorDistribution& s, int k);

// 0 <= d^{N-1} sum_j Tr R_[j] = sum_k (-1)^k (N-k) (d-1)^{N-k-1} S_k
// (for qubits the (d-1) weights disappear)
RelationReport check_trR_relation(const PureState& state);

// qubits, even N >= 4:
// (d^{N-2}/2)[N + S_1 + d sum_j Tr R_[j]] = sum_{even k<=N-2} (N-k) S_k
RelationReport check_even_sector_relation(const PureState& state);

// qubits, odd N: S_even = S_odd = 2^{N-1}
RelationReport check_odd_qubit_balance(const SectorDistribution& s);

// Tr[Pi Y^{xN} Pi^* Y^{xN}] for qubit states; zero for odd N.
// (Y^{xN} v)[i] = i^N (-1)^{N - popcount(i)} conj-free flip of v[~i].
double h_invariant(const PureState& state);
RelationReport check_h_invariant(const PureState& state);  // odd-N qubits

// the one linear identity specific to each N in 2..6 (see implementation
// for the exact forms; the N=5 d=3 and N=6 d=2 leading coefficients vanish
// and the residual identity is still asserted)
RelationReport check_small_n_identity(const SectorDistribution& s);

struct SchmidtDelta {
    double lambda1 = 0.0;  // larger squared Schmidt coefficient of party p
    double delta = 0.0;    // |<X_0| Y^{x(N-1)} X_1^*>|, 0 when degenerate
    double value = 0.0;    // 2l^2 + 2(1-l)^2 - 1 + 4 l (1-l) delta^2
    bool degenerate = false;  // lambda1 within 1e-12 of 0 or 1
};

// qubits, even N; Schmidt split of `party` vs the rest
SchmidtDelta schmidt_delta_check(const PureState& state, int party);
RelationReport check_schmidt_delta(const PureState& state, int party);

// qubits, even N: S_1 + 2 sum_j Tr R_[j] <= N, equality noted
RelationReport check_symmetrized_max(const PureState& state);

// every relation applicable to (n, d), evaluated on one state
std::vector<RelationReport> check_all(const PureState& state);

}  // namespace qsector
