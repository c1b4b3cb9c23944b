#pragma once

// (max,+) product of two similarity matrices straight from the definition:
// C(i,j) = max over i <= k <= j of A(i,k) + B(k,j), valid cells only.

#include <algorithm>
#include <vector>

#include "uted/score.hpp"

namespace uted::testing {

/// Values of the product on valid cells, indexed [i][j] (1-based, -inf elsewhere).
template <class A, class B>
std::vector<std::vector<Score>> naive_star(const A& a, const B& b) {
    const int n = a.side();
    const int w = a.window();
    std::vector<std::vector<Score>> c(static_cast<std::size_t>(n + 1), std::vector<Score>(static_cast<std::size_t>(n + 1), kNegInf));
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= std::min(n, i + w); ++j) {
            Score best = kNegInf;
            for (int k = i; k <= j; ++k) {
                Score x = a.value(i, k);
                Score y = b.value(k, j);
                if (is_finite(x) && is_finite(y)) {
                    best = std::max(best, x + y);
                }
            }
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best;
        }
    }
    return c;
}

/// Plain triple loop over a dense grid, written independently of the
/// library's backend.
inline std::vector<std::vector<Score>> grid_product(const std::vector<std::vector<Score>>& a,
                                                    const std::vector<std::vector<Score>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<Score>> c(n, std::vector<Score>(n, kNegInf));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i][k] > kNegInf && b[k][j] > kNegInf) {
                    c[i][j] = std::max(c[i][j], a[i][k] + b[k][j]);
                }
            }
        }
    }
    return c;
}

}  // namespace uted::testing
