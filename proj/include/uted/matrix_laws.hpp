#pragma once

// Structural checks every similarity matrix S(T', Q) must pass.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>

#include "uted/matrix_model.hpp"
#include "uted/matrix_product.hpp"

namespace uted {

/// Checks, on valid cells: zero diagonal, values in [0, 2 * edges], rows
/// non-decreasing and columns non-increasing in i with steps of at most 2.
/// Returns a description of the first violation.
template <SimilarityStore M>
std::optional<std::string> check_similarity_laws(const M& m, int edges) {
    const int n = m.side();
    const int w = m.window();
    auto fail = [](const char* what, int i, int j, Score v) {
        std::ostringstream os;
        os << what << " at (" << i << "," << j << "), value " << v;
        return std::optional<std::string>(os.str());
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= std::min(n, i + w); ++j) {
            Score v = m.value(i, j);
            if (i == j && v != 0) {
                return fail("nonzero diagonal", i, j, v);
            }
            if (v < 0 || v > 2 * edges) {
                return fail("value out of range", i, j, v);
            }
            if (j > i) {
                Score d = v - m.value(i, j - 1);
                if (d < 0 || d > 2) {
                    return fail("row step outside [0,2]", i, j, v);
                }
                Score e = m.value(i, j) - m.value(i + 1, j);
                if (e < 0 || e > 2) {
                    return fail("column step outside [0,2]", i, j, v);
                }
            }
        }
    }
    return std::nullopt;
}

/// Laws of a fixed dense matrix: upper triangle finite, lower triangle -inf,
/// monotone with steps in [0, 2] everywhere on the upper triangle.
inline std::optional<std::string> check_fixed_laws(const SquareMatrix& a) {
    const int n = a.side();
    auto fail = [](const char* what, int i, int j) {
        std::ostringstream os;
        os << what << " at (" << i << "," << j << ")";
        return std::optional<std::string>(os.str());
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j < i) {
                if (is_finite(a(i, j))) {
                    return fail("finite cell under the diagonal", i, j);
                }
                continue;
            }
            if (!is_finite(a(i, j))) {
                return fail("-inf cell on or above the diagonal", i, j);
            }
            if (j > i) {
                Score d = a(i, j) - a(i, j - 1);
                Score e = a(i, j) - a(i + 1, j);
                if (d < 0 || d > 2 || e < 0 || e > 2) {
                    return fail("step outside [0,2]", i, j);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace uted
