#pragma once

// The operations every similarity-matrix store provides, plus helpers
//        written once against them.
//
// Matrices are values: a Builder starts from an existing matrix (or from
// all -inf), accumulates quadrant updates and produces a new matrix. The base
// is never modified. Indices are 1-based; a cell (i, j) is valid when
// i <= j <= side and j - i <= window.

#include <algorithm>
#include <concepts>
#include <optional>
#include <ostream>
#include <utility>

#include "uted/dense_matrix.hpp"
#include "uted/persistent_matrix.hpp"
#include "uted/score.hpp"

namespace uted {

template <class M>
concept SimilarityStore = std::copy_constructible<M> && requires(const M& a, int i, int j, Score x) {
    { M(i, j) };
    { a.side() } -> std::convertible_to<int>;
    { a.window() } -> std::convertible_to<int>;
    { a.value(i, j) } -> std::same_as<Score>;
    { a.mincol(i, x) } -> std::convertible_to<int>;
    { a.maxrow(j, x) } -> std::convertible_to<int>;
    typename M::Builder;
    requires std::constructible_from<typename M::Builder, const M&>;
    requires std::constructible_from<typename M::Builder, int, int>;
    requires requires(typename M::Builder b) {
        b.rangemax(i, j, x);
        { b.build() } -> std::same_as<M>;
    };
};

static_assert(SimilarityStore<DenseSimMatrix>);
static_assert(SimilarityStore<PersistentSimMatrix>);

inline bool is_valid_cell(int side, int window, int i, int j) {
    return i >= 1 && i <= j && j <= side && j - i <= window;
}

template <SimilarityStore M>
M new_matrix(int side, int window) {
    return M(side, window);
}

/// Single-update convenience; prefer a Builder for batches.
template <SimilarityStore M>
M rangemax(const M& a, int i, int j, Score x) {
    typename M::Builder b(a);
    b.rangemax(i, j, x);
    return b.build();
}

/// The similarity matrix of the single-vertex tree: 0 on every valid cell.
template <SimilarityStore M>
M zero_matrix(int side, int window) {
    typename M::Builder b(side, window);
    for (int t = 1; t <= side; ++t) {
        b.rangemax(t, t, 0);
    }
    return b.build();
}

struct Cell {
    int i = 0;
    int j = 0;
    friend bool operator==(Cell, Cell) = default;
};

/// First valid cell (row-major) where the matrices differ.
template <SimilarityStore A, SimilarityStore B>
std::optional<Cell> first_valid_mismatch(const A& a, const B& b) {
    if (a.side() != b.side() || a.window() != b.window()) {
        return Cell{0, 0};
    }
    for (int i = 1; i <= a.side(); ++i) {
        for (int j = i; j <= std::min(a.side(), i + a.window()); ++j) {
            if (a.value(i, j) != b.value(i, j)) {
                return Cell{i, j};
            }
        }
    }
    return std::nullopt;
}

/// The =_valid relation.
template <SimilarityStore A, SimilarityStore B>
bool equal_valid(const A& a, const B& b) {
    return !first_valid_mismatch(a, b).has_value();
}

/// Converts between backends cell by cell.
template <SimilarityStore To, SimilarityStore From>
To convert(const From& m) {
    typename To::Builder b(m.side(), m.window());
    for (int i = 1; i <= m.side(); ++i) {
        for (int j = i; j <= std::min(m.side(), i + m.window()); ++j) {
            b.rangemax(i, j, m.value(i, j));
        }
    }
    return b.build();
}

/// CSV dump: header ",1,...,side", then one line per row; non-valid cells
/// are written as -inf.
template <SimilarityStore M>
void write_csv(std::ostream& out, const M& m) {
    for (int j = 1; j <= m.side(); ++j) {
        out << ',' << j;
    }
    out << '\n';
    for (int i = 1; i <= m.side(); ++i) {
        out << i;
        for (int j = 1; j <= m.side(); ++j) {
            Score v = m.value(i, j);
            out << ',';
            if (is_finite(v)) {
                out << v;
            } else {
                out << "-inf";
            }
        }
        out << '\n';
    }
}

}  // namespace uted
