#include "qsector/explorer.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qsector/sector_engine.hpp"

namespace qsector {

const char* to_string(Dominance d) {
    switch (d) {
        case Dominance::GHZ: return "GHZ";
        case Dominance::BELL: return "BELL";
        case Dominance::TIE: return "TIE";
        case Dominance::UNDECIDED: return "UNDECIDED";
    }
    return "?";
}

namespace {

SweepRecord sweep_cell(int d, int n) {
    SweepRecord rec;
    rec.d = d;
    rec.n = n;
    rec.s_ghz = ghz_nsector_exact(n, d);
    rec.s_bell = bell_family_nsector_exact(n, d);
    rec.diff = rec.s_ghz - rec.s_bell;
    if (n <= 3)
        rec.dominance = Dominance::UNDECIDED;  // the two families coincide
    else if (rec.diff > 0)
        rec.dominance = Dominance::GHZ;
    else if (rec.diff < 0)
        rec.dominance = Dominance::BELL;
    else
        rec.dominance = Dominance::TIE;
    return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(int d_max, int n_max, int threads) {
    if (d_max < 2 || n_max < 2) throw std::invalid_argument("sweep needs d_max, n_max >= 2");
    const int d_count = d_max - 1;
    const std::size_t cells = static_cast<std::size_t>(d_count) * (n_max - 1);
    std::vector<SweepRecord> records(cells);
    auto fill = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < cells; i += stride) {
            int n = 2 + static_cast<int>(i) / d_count;
            int d = 2 + static_cast<int>(i) % d_count;
            records[i] = sweep_cell(d, n);
        }
    };
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(cells)));
    if (workers == 1) {
        fill(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(fill, t, workers);
        for (auto& th : pool) th.join();
    }
    return records;
}

double sweep_log_magnitude(const SweepRecord& rec) {
    if (rec.diff == 0) return 0.0;
    BigInt mag = (rec.diff < 0) ? BigInt(-rec.diff) : rec.diff;
    double l = log_big(mag + 1) / std::log(10.0);
    return (rec.diff < 0) ? -l : l;
}

void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << "d,n,s_ghz,s_bell,diff,dominance,log_mag\n";
    char buf[40];
    for (const auto& rec : records) {
        std::snprintf(buf, sizeof buf, "%.6f", sweep_log_magnitude(rec));
        out << rec.d << ',' << rec.n << ',' << rec.s_ghz << ',' << rec.s_bell << ',' << rec.diff
            << ',' << to_string(rec.dominance) << ',' << buf << '\n';
    }
}

BoundaryResult boundary() {
    // nonzero root of e^{-g} = 1 - g/2; the function below is negative at 1
    // and positive at 2, and gamma = 0 (the other root) is outside [1,2]
    auto f = [](double g) { return std::exp(-g) - (1.0 - 0.5 * g); };
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    BoundaryResult res;
    res.gamma = 0.5 * (lo + hi);
    res.slope = 1.0 / res.gamma;
    res.residual = std::abs(f(res.gamma));
    return res;
}

SearchResult search_max_nsector(int n, int d, long samples, int hillclimb_steps,
                                std::uint64_t seed, const PureState* initial) {
    if (samples < 1) throw std::invalid_argument("search needs at least one sample");
    if (initial && (initial->n_parties != n || initial->local_dim != d))
        throw std::invalid_argument("initial state does not match (n, d)");

    SearchResult result;
    result.n_parties = n;
    result.local_dim = d;
    result.seed = seed;
    result.reference_ghz = ghz_nsector_exact(n, d);
    result.reference_bell = bell_family_nsector_exact(n, d);

    std::mt19937_64 rng(seed);
    PureState best = random_state(n, d, rng());
    double best_val = n_sector_via_projector(best);
    ++result.samples_evaluated;
    for (long i = 1; i < samples; ++i) {
        PureState cand = random_state(n, d, rng());
        double val = n_sector_via_projector(cand);
        ++result.samples_evaluated;
        if (val > best_val) {
            best = std::move(cand);
            best_val = val;
        }
    }
    if (initial) {
        double val = n_sector_via_projector(*initial);
        ++result.samples_evaluated;
        if (val > best_val) {
            best = *initial;
            best_val = val;
        }
    }

    double sigma = 0.1;
    for (int t = 0; t < hillclimb_steps; ++t) {
        std::vector<cplx> amps = best.amplitudes;
        for (auto& a : amps) a += sigma * cplx(standard_gaussian(rng), standard_gaussian(rng));
        PureState cand = PureState::normalized(n, d, std::move(amps));
        double val = n_sector_via_projector(cand);
        ++result.samples_evaluated;
        if (val > best_val) {
            best = std::move(cand);
            best_val = val;
            ++result.improvements;
        }
        sigma *= 0.98;
    }

    result.best_value = best_val;
    result.best_state = std::move(best);
    return result;
}

}  // namespace qsector
