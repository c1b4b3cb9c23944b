#pragma once

// (max,+) products of similarity matrices.
//
// mul_bounded works directly in the computation model and costs
// O(t_A * t_B * side) queries. star_similarity instead fills the invalid
// cells so both operands become plain bounded-difference matrices, hands
// them to a pluggable dense product and masks the result again.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uted/matrix_model.hpp"
#include "uted/score.hpp"

namespace uted {

/// Dense side x side matrix, 1-based.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int side, Score fill = kNegInf)
        : side_(side), cells_(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), fill) {}

    int side() const { return side_; }

    Score& operator()(int i, int j) { return cells_[at(i, j)]; }
    Score operator()(int i, int j) const { return cells_[at(i, j)]; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(j - 1);
    }

    int side_ = 0;
    std::vector<Score> cells_;
};

class BoundViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws BoundViolation if some valid cell of `m` exceeds `bound`.
template <SimilarityStore M>
void check_bound(const M& m, Score bound, const char* operand) {
    for (int j = 1; j <= m.side(); ++j) {
        if (m.maxrow(j, bound + 1) != kNotFound) {
            throw BoundViolation(std::string("mul_bounded: operand ") + operand + " exceeds its declared bound " +
                                 std::to_string(bound));
        }
    }
}

/// C = A * B for similarity matrices bounded by t_a and t_b.
///
/// For each column j and threshold x, k is the last row of column j of B
/// reaching x; for each threshold y, i is the last row of column k of A
/// reaching y, and A(i,k) + B(k,j) is pushed to the quadrant at (i, j).
/// Thresholds jump straight past the value just found, since every x up to
/// that value selects the same row.
template <SimilarityStore M>
M mul_bounded(const M& a, const M& b, Score t_a, Score t_b) {
    if (a.side() != b.side() || a.window() != b.window()) {
        throw std::invalid_argument("mul_bounded: operand shapes differ");
    }
    check_bound(a, t_a, "A");
    check_bound(b, t_b, "B");
    typename M::Builder c(a.side(), a.window());
    for (int j = 1; j <= a.side(); ++j) {
        for (Score x = 0; x <= t_b;) {
            int k = b.maxrow(j, x);
            if (k == kNotFound) {
                break;
            }
            Score bkj = b.value(k, j);
            for (Score y = 0; y <= t_a;) {
                int i = a.maxrow(k, y);
                if (i == kNotFound) {
                    break;
                }
                Score aik = a.value(i, k);
                c.rangemax(i, j, plus(aik, bkj));
                y = aik + 1;
            }
            x = bkj + 1;
        }
    }
    return c.build();
}

/// Dense copy where each invalid cell (j - i > window) holds the largest
/// valid value inside it, i.e. max over i <= i' <= j' <= j. Cells under the
/// diagonal stay -inf.
template <SimilarityStore M>
SquareMatrix fix_invalid(const M& a) {
    const int n = a.side();
    const int w = a.window();
    SquareMatrix out(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= std::min(n, i + w); ++j) {
            out(i, j) = a.value(i, j);
        }
    }
    // both neighbors of an invalid cell are one shorter, so go by length
    for (int len = w + 1; len < n; ++len) {
        for (int i = 1; i + len <= n; ++i) {
            int j = i + len;
            out(i, j) = std::max(out(i + 1, j), out(i, j - 1));
        }
    }
    return out;
}

/// Exact (max,+) product by triple loop.
inline SquareMatrix bd_product_naive(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.side() != b.side()) {
        throw std::invalid_argument("bd_product_naive: sides differ");
    }
    const int n = a.side();
    SquareMatrix c(n);
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
            Score aik = a(i, k);
            if (!is_finite(aik)) {
                continue;
            }
            for (int j = 1; j <= n; ++j) {
                Score v = plus(aik, b(k, j));
                if (v > c(i, j)) {
                    c(i, j) = v;
                }
            }
        }
    }
    return c;
}

/// A dense (max,+) product for monotone bounded-difference matrices.
struct BdBackend {
    std::string name;
    std::function<SquareMatrix(const SquareMatrix&, const SquareMatrix&)> multiply;
};

inline BdBackend naive_backend() { return BdBackend{"naive", bd_product_naive}; }

/// C = A * B through the dense backend.
template <SimilarityStore M>
M star_similarity(const M& a, const M& b, const BdBackend& backend) {
    if (a.side() != b.side() || a.window() != b.window()) {
        throw std::invalid_argument("star_similarity: operand shapes differ");
    }
    for (int t = 1; t <= a.side(); ++t) {
        if (a.value(t, t) != 0 || b.value(t, t) != 0) {
            throw std::logic_error("star_similarity: valid diagonal must be zero");
        }
    }
    SquareMatrix c = backend.multiply(fix_invalid(a), fix_invalid(b));
    if (c.side() != a.side()) {
        throw std::runtime_error("star_similarity: backend returned a matrix of the wrong side");
    }
    typename M::Builder out(a.side(), a.window());
    for (int i = a.side(); i >= 1; --i) {
        for (int j = i; j <= std::min(a.side(), i + a.window()); ++j) {
            out.rangemax(i, j, c(i, j));
        }
    }
    return out.build();
}

}  // namespace uted
