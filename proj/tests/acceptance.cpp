// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion enforces both its numeric statement and its time
// budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qsector/bloch.hpp"
#include "qsector/closed_forms.hpp"
#include "qsector/explorer.hpp"
#include "qsector/identities.hpp"
#include "qsector/sector_engine.hpp"

using namespace qsector;
using qsector::testing::corpus_cells;
using qsector::testing::corpus_state;

namespace {

struct Gate {
    int failures = 0;

    void run(int id, const char* label, double budget_seconds,
             const std::function<bool(std::string&)>& body) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= budget_seconds) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "over time budget";
        }
        if (!ok) ++failures;
        std::printf("criterion %2d: %s  (%.2f s / %.0f s)  %s%s%s\n", id, ok ? "PASS" : "FAIL",
                    elapsed, budget_seconds, label, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
};

bool expect(bool cond, std::string& detail, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

BigInt ipow_big(int b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int main() {
    Gate gate;

    gate.run(1, "two-, three- and four-party maxima for d = 2..10", 1.0, [](std::string& detail) {
        bool ok = true;
        for (int d = 2; d <= 10; ++d) {
            BigInt q = BigInt(d) * d - 1;
            ok &= expect(ghz_nsector_exact(2, d) == q, detail, "S2 mismatch at d=" + std::to_string(d));
            ok &= expect(ghz_nsector_exact(3, d) == BigInt(d - 1) * (d - 1) * (d + 2), detail,
                         "S3 mismatch at d=" + std::to_string(d));
            ok &= expect(bell_family_nsector_exact(4, d) == q * q, detail,
                         "S4 mismatch at d=" + std::to_string(d));
        }
        return ok;
    });

    gate.run(2, "five-party GHZ/Bell comparison rows", 1.0, [](std::string& detail) {
        struct Row {
            int d;
            long ghz, bell;
            char sign;
        };
        const Row rows[] = {{3, 172, 160, '>'},
                            {4, 828, 810, '>'},
                            {5, 2704, 2688, '>'},
                            {6, 7000, 7000, '='},
                            {7, 15516, 15552, '<'}};
        bool ok = true;
        for (const Row& r : rows) {
            BigInt g = ghz_nsector_exact(5, r.d);
            BigInt b = bell_family_nsector_exact(5, r.d);
            char sign = (g > b) ? '>' : (g < b) ? '<' : '=';
            ok &= expect(g == r.ghz && b == r.bell && sign == r.sign, detail,
                         "row d=" + std::to_string(r.d));
        }
        return ok;
    });

    gate.run(3, "six-party GHZ/Bell comparison rows", 1.0, [](std::string& detail) {
        struct Row {
            int d;
            long ghz, bell;
            char sign;
        };
        const Row rows[] = {{2, 33, 27, '>'}, {3, 508, 512, '<'}, {4, 3255, 3375, '<'}};
        bool ok = true;
        for (const Row& r : rows) {
            BigInt g = ghz_nsector_exact(6, r.d);
            BigInt b = bell_family_nsector_exact(6, r.d);
            char sign = (g > b) ? '>' : (g < b) ? '<' : '=';
            ok &= expect(g == r.ghz && b == r.bell && sign == r.sign, detail,
                         "row d=" + std::to_string(r.d));
        }
        return ok;
    });

    gate.run(4, "purity engine vs Bloch oracle, 100 states per cell", 300.0,
             [](std::string& detail) {
                 bool ok = true;
                 for (auto [n, d] : corpus_cells()) {
                     for (std::uint64_t sample = 0; sample < 100 && ok; ++sample) {
                         PureState psi = corpus_state(n, d, sample);
                         auto a = sectors_from_purities(psi);
                         auto b = sectors_from_bloch(bloch_expand(psi));
                         for (int k = 0; k <= n; ++k)
                             ok &= expect(std::abs(a.lengths[k] - b.lengths[k]) <= 1e-9, detail,
                                          "cell (" + std::to_string(n) + "," + std::to_string(d) +
                                              ") sample " + std::to_string(sample) + " k=" +
                                              std::to_string(k));
                     }
                 }
                 return ok;
             });

    gate.run(5, "identity suite over the random corpus", 300.0, [](std::string& detail) {
        bool ok = true;
        auto cells = corpus_cells();
        cells.emplace_back(6, 2);  // exercise the six-party identity as well
        cells.emplace_back(6, 3);
        for (auto [n, d] : cells) {
            for (std::uint64_t sample = 0; sample < 100 && ok; ++sample) {
                for (const auto& rep : check_all(corpus_state(n, d, sample)))
                    ok &= expect(rep.pass, detail,
                                 rep.relation + " failed on (" + std::to_string(n) + "," +
                                     std::to_string(d) + ") sample " + std::to_string(sample));
            }
        }
        return ok;
    });

    gate.run(6, "qubit N-sector maxima stand against random search", 600.0,
             [](std::string& detail) {
                 bool ok = true;
                 const double bounds[] = {4.0, 9.0, 16.0};  // N = 3, 4, 5
                 for (int n = 3; n <= 5; ++n) {
                     SearchResult res = search_max_nsector(n, 2, 10000, 200, 1000 + n);
                     ok &= expect(res.best_value <= bounds[n - 3] + 1e-6, detail,
                                  "N=" + std::to_string(n) + " reached " +
                                      std::to_string(res.best_value));
                 }
                 return ok;
             });

    gate.run(7, "crossover boundary slope and residual", 1.0, [](std::string& detail) {
        BoundaryResult b = boundary();
        bool ok = expect(b.slope >= 0.6270 && b.slope <= 0.6280, detail,
                         "slope " + std::to_string(b.slope));
        ok &= expect(b.residual <= 1e-12, detail, "residual " + std::to_string(b.residual));
        return ok;
    });

    gate.run(8, "exact 2..100 x 2..100 sweep and its known structure", 60.0,
             [](std::string& detail) {
                 auto recs = sweep(100, 100, 4);
                 bool ok = expect(recs.size() == 99u * 99u, detail, "grid size");
                 for (const auto& r : recs) {
                     ok &= expect(r.diff == r.s_ghz - r.s_bell, detail, "diff bookkeeping");
                     Dominance want = (r.n <= 3) ? Dominance::UNDECIDED
                                      : (r.diff > 0) ? Dominance::GHZ
                                      : (r.diff < 0) ? Dominance::BELL
                                                     : Dominance::TIE;
                     ok &= expect(r.dominance == want, detail, "dominance sign");
                     if (r.d == 2 && r.n >= 4) {
                         ok &= expect(r.diff >= 0, detail, "d=2 dip at n=" + std::to_string(r.n));
                         ok &= expect(r.n == 4 ? r.dominance == Dominance::TIE
                                               : r.dominance == Dominance::GHZ,
                                      detail, "d=2 column at n=" + std::to_string(r.n));
                     }
                     if (r.n == 5 && r.d >= 3 && r.d <= 7) {
                         const long ghz[] = {172, 828, 2704, 7000, 15516};
                         const long bell[] = {160, 810, 2688, 7000, 15552};
                         ok &= expect(r.s_ghz == ghz[r.d - 3] && r.s_bell == bell[r.d - 3], detail,
                                      "embedded five-party row d=" + std::to_string(r.d));
                     }
                     if (r.n == 6 && r.d >= 2 && r.d <= 4) {
                         const long ghz[] = {33, 508, 3255};
                         const long bell[] = {27, 512, 3375};
                         ok &= expect(r.s_ghz == ghz[r.d - 2] && r.s_bell == bell[r.d - 2], detail,
                                      "embedded six-party row d=" + std::to_string(r.d));
                     }
                     if (!ok) break;
                 }
                 return ok;
             });

    gate.run(9, "GHZ approximation at (N,d) = (40,20)", 1.0, [](std::string& detail) {
        double exact_log = log_big(ghz_nsector_exact(40, 20));
        double approx_log = std::log(ghz_nsector_approx(40, 20));
        double rel = std::abs(std::expm1(approx_log - exact_log));
        return expect(rel <= 1e-3, detail, "relative error " + std::to_string(rel));
    });

    gate.run(10, "Schmidt-delta and symmetrized bound checks", 300.0, [](std::string& detail) {
        SchmidtDelta sd = schmidt_delta_check(make_ghz(4, 2), 1);
        bool ok = expect(std::abs(sd.lambda1 - 0.5) <= 1e-10 && std::abs(sd.delta - 1.0) <= 1e-10 &&
                             std::abs(sd.value - 1.0) <= 1e-10,
                         detail, "GHZ_2^4 Schmidt triple");
        ok &= expect(std::abs(check_symmetrized_max(make_ghz(4, 2)).left - 4.0) <= 1e-9, detail,
                     "GHZ_2^4 symmetrized maximum");
        ok &= expect(std::abs(check_symmetrized_max(make_ghz(6, 2)).left - 6.0) <= 1e-9, detail,
                     "GHZ_2^6 symmetrized maximum");
        for (std::uint64_t sample = 0; sample < 9000 && ok; ++sample) {
            PureState psi = corpus_state(4, 2, sample);
            ok &= expect(check_symmetrized_max(psi).left <= 4.0 + 1e-9, detail,
                         "four-qubit sample " + std::to_string(sample));
            ok &= expect(schmidt_delta_check(psi, 1).value <= 1.0 + 1e-9, detail,
                         "four-qubit Schmidt sample " + std::to_string(sample));
        }
        for (std::uint64_t sample = 0; sample < 1000 && ok; ++sample) {
            PureState psi = corpus_state(6, 2, sample);
            ok &= expect(check_symmetrized_max(psi).left <= 6.0 + 1e-9, detail,
                         "six-qubit sample " + std::to_string(sample));
            ok &= expect(schmidt_delta_check(psi, 1).value <= 1.0 + 1e-9, detail,
                         "six-qubit Schmidt sample " + std::to_string(sample));
        }
        return ok;
    });

    if (gate.failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", gate.failures);
    return 1;
}
