// The (d,N) phase diagram with exact arithmetic, the analytic boundary of
// the GHZ/Bell crossover, and randomized searches for states with large
// full-support sectors.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsector/closed_forms.hpp"
#include "qsector/qstate.hpp"

namespace qsector {

enum class Dominance { GHZ, BELL, TIE, UNDECIDED };

const char* to_string(Dominance d);

struct SweepRecord {
    int d = 0;
    int n = 0;
    BigInt s_ghz;
    BigInt s_bell;
    BigInt diff;  // s_ghz - s_bell
    Dominance dominance = Dominance::UNDECIDED;
};

struct BoundaryResult {
    double gamma = 0.0;
    double slope = 0.0;  // 1/gamma
    double residual = 0.0;
};

struct SearchResult {
    int n_parties = 0;
    int local_dim = 0;
    std::uint64_t seed = 0;
    double best_value = 0.0;
    long samples_evaluated = 0;
    long improvements = 0;
    BigInt reference_ghz;
    BigInt reference_bell;
    PureState best_state;
};

// One record per cell, 2 <= d <= d_max, 2 <= n <= n_max, ordered by n then
// d. The families coincide for n = 2, 3, where dominance is UNDECIDED.
std::vector<SweepRecord> sweep(int d_max, int n_max, int threads = 1);

// sign(diff) * log10(1 + |diff|), exact input, 6-decimal output column
double sweep_log_magnitude(const SweepRecord& rec);

// header: d,n,s_ghz,s_bell,diff,dominance,log_mag
void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out);

// nonzero root of e^{-gamma} = 1 - gamma/2, bisected on [1,2] to 1e-12
BoundaryResult boundary();

// Haar sampling plus hill climbing (Gaussian perturbation with decaying
// step, accept on improvement) maximizing S_N. Deterministic per seed.
// `initial` seeds the climb with a known state instead of the best sample.
SearchResult search_max_nsector(int n, int d, long samples, int hillclimb_steps,
                                std::uint64_t seed, const PureState* initial = nullptr);

}  // namespace qsector
