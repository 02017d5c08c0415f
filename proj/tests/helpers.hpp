// shared fixtures for the test suites
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qsector/qstate.hpp"

namespace qsector::testing {

// every (n, d) cell where the brute-force expansion stays cheap; the engine
// vs oracle cross-checks and the identity suite run over all of them
inline const std::vector<std::pair<int, int>>& corpus_cells() {
    static const std::vector<std::pair<int, int>> cells = {
        {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {4, 3}, {2, 4}, {3, 4}, {2, 5}};
    return cells;
}

// deterministic per-cell seeds so suites can be rerun / bisected in isolation
inline std::uint64_t cell_seed(int n, int d, int sample) {
    return 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(n) +
           0xbf58476d1ce4e5b9ull * static_cast<std::uint64_t>(d) +
           static_cast<std::uint64_t>(sample);
}

inline PureState corpus_state(int n, int d, int sample) {
    return random_state(n, d, cell_seed(n, d, sample));
}

}  // namespace qsector::testing
