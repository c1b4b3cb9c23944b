#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

namespace uted {

/// Similarity values. Reachable values are small non-negative integers
/// (at most 2n); kNegInf sits far below them and absorbs addition.
using Score = std::int32_t;

inline constexpr Score kNegInf = std::numeric_limits<Score>::min() / 4;

/// Returned by mincol / maxrow when no index qualifies. Matrix indices are 1-based.
inline constexpr int kNotFound = 0;

constexpr bool is_finite(Score s) { return s > kNegInf; }

/// (max,+) multiplication: kNegInf is absorbing.
constexpr Score plus(Score a, Score b) {
    return (is_finite(a) && is_finite(b)) ? a + b : kNegInf;
}

constexpr Score plus(Score a, Score b, Score c) { return plus(plus(a, b), c); }

}  // namespace uted
