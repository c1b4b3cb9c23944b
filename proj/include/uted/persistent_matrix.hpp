#pragma once

// Similarity matrix as a persistent 2D dominance-max structure.
//
// The matrix is the upper envelope of its anchors: cell (i, j) holds the
// largest x over anchors (r, c, x) with r >= i and c <= j, masked to -inf
// outside the valid band. Anchors live in a segment tree over rows whose
// nodes carry segment trees over columns. Updates copy O(log^2) nodes, so
// every earlier version stays readable.
//
// A builder owns a fresh edit token and mutates nodes carrying that token in
// place; nodes reachable from a published matrix never carry a live token.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include "uted/score.hpp"

namespace uted {

namespace detail {

inline std::uint64_t fresh_edit_token() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

struct ColumnNode {
    Score max = kNegInf;
    std::shared_ptr<ColumnNode> left;
    std::shared_ptr<ColumnNode> right;
    std::uint64_t edit = 0;
};

struct RowNode {
    std::shared_ptr<ColumnNode> columns;
    std::shared_ptr<RowNode> left;
    std::shared_ptr<RowNode> right;
    std::uint64_t edit = 0;
};

template <class Node>
std::shared_ptr<Node> own(const std::shared_ptr<Node>& n, std::uint64_t token) {
    if (n && n->edit == token) {
        return n;
    }
    auto copy = n ? std::make_shared<Node>(*n) : std::make_shared<Node>();
    copy->edit = token;
    return copy;
}

inline std::shared_ptr<ColumnNode> column_raise(const std::shared_ptr<ColumnNode>& n, int lo, int hi, int col, Score x,
                                                std::uint64_t token) {
    auto m = own(n, token);
    m->max = std::max(m->max, x);
    if (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (col <= mid) {
            m->left = column_raise(m->left, lo, mid, col, x, token);
        } else {
            m->right = column_raise(m->right, mid + 1, hi, col, x, token);
        }
    }
    return m;
}

/// max over columns [1, col].
inline Score column_prefix(const ColumnNode* n, int lo, int hi, int col) {
    Score best = kNegInf;
    while (n && lo < hi) {
        if (col >= hi) {
            return std::max(best, n->max);
        }
        int mid = lo + (hi - lo) / 2;
        if (col <= mid) {
            n = n->left.get();
            hi = mid;
        } else {
            if (n->left) {
                best = std::max(best, n->left->max);
            }
            n = n->right.get();
            lo = mid + 1;
        }
    }
    if (n && col >= lo) {
        best = std::max(best, n->max);
    }
    return best;
}

/// Leftmost column holding a value >= x, or kNotFound.
inline int column_leftmost(const ColumnNode* n, int lo, int hi, Score x) {
    if (!n || n->max < x) {
        return kNotFound;
    }
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (n->left && n->left->max >= x) {
            n = n->left.get();
            hi = mid;
        } else {
            n = n->right.get();
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace detail

class PersistentSimMatrix {
public:
    class Builder;

    /// The all -inf matrix.
    PersistentSimMatrix(int side, int window) : side_(side), window_(window) {
        if (side < 1 || window < 0) {
            throw std::invalid_argument("matrix side must be positive");
        }
    }

    int side() const { return side_; }
    int window() const { return window_; }

    bool is_valid(int i, int j) const { return i >= 1 && i <= j && j <= side_ && j - i <= window_; }

    Score value(int i, int j) const { return is_valid(i, j) ? raw(i, j) : kNegInf; }

    int mincol(int i, Score x) const {
        if (i < 1 || i > side_) {
            return kNotFound;
        }
        int c = leftmost_col(root_.get(), 1, side_, i, x);
        if (c == kNotFound) {
            return kNotFound;
        }
        c = std::max(c, i);
        return c <= std::min(side_, i + window_) ? c : kNotFound;
    }

    int maxrow(int j, Score x) const {
        if (j < 1 || j > side_) {
            return kNotFound;
        }
        int r = rightmost_row(root_.get(), 1, side_, j, x);
        if (r == kNotFound) {
            return kNotFound;
        }
        r = std::min(r, j);
        return r >= std::max(1, j - window_) ? r : kNotFound;
    }

private:
    using RowPtr = std::shared_ptr<detail::RowNode>;

    /// Envelope value ignoring the band mask.
    Score raw(int i, int j) const {
        Score best = kNegInf;
        const detail::RowNode* n = root_.get();
        int lo = 1;
        int hi = side_;
        // rows [i, side]: walk towards leaf i, collecting right siblings
        while (n) {
            if (i <= lo) {
                return std::max(best, detail::column_prefix(n->columns.get(), 1, side_, j));
            }
            int mid = lo + (hi - lo) / 2;
            if (i <= mid) {
                if (n->right) {
                    best = std::max(best, detail::column_prefix(n->right->columns.get(), 1, side_, j));
                }
                n = n->left.get();
                hi = mid;
            } else {
                n = n->right.get();
                lo = mid + 1;
            }
        }
        return best;
    }

    int leftmost_col(const detail::RowNode* n, int lo, int hi, int i, Score x) const {
        if (!n || hi < i) {
            return kNotFound;
        }
        if (i <= lo) {
            return detail::column_leftmost(n->columns.get(), 1, side_, x);
        }
        int mid = lo + (hi - lo) / 2;
        int a = leftmost_col(n->left.get(), lo, mid, i, x);
        int b = leftmost_col(n->right.get(), mid + 1, hi, i, x);
        if (a == kNotFound) {
            return b;
        }
        return b == kNotFound ? a : std::min(a, b);
    }

    int rightmost_row(const detail::RowNode* n, int lo, int hi, int j, Score x) const {
        if (!n || detail::column_prefix(n->columns.get(), 1, side_, j) < x) {
            return kNotFound;
        }
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            const detail::RowNode* r = n->right.get();
            if (r && detail::column_prefix(r->columns.get(), 1, side_, j) >= x) {
                n = r;
                lo = mid + 1;
            } else {
                n = n->left.get();
                hi = mid;
            }
        }
        return lo;
    }

    int side_;
    int window_;
    RowPtr root_;
};

class PersistentSimMatrix::Builder {
public:
    Builder(int side, int window) : current_(side, window), token_(detail::fresh_edit_token()) {}
    explicit Builder(const PersistentSimMatrix& base) : current_(base), token_(detail::fresh_edit_token()) {}

    int side() const { return current_.side_; }
    int window() const { return current_.window_; }

    /// Raises every cell (i, j) with i <= i2, j >= j2 to at least x.
    void rangemax(int i2, int j2, Score x) {
        const int n = side();
        if (!is_finite(x) || i2 < 1 || j2 > n) {
            return;
        }
        i2 = std::min(i2, n);
        j2 = std::max(j2, 1);
        if (j2 - i2 > window() || current_.raw(i2, j2) >= x) {
            return;
        }
        current_.root_ = insert(current_.root_, 1, n, i2, j2, x);
    }

    PersistentSimMatrix build() {
        token_ = detail::fresh_edit_token();
        return current_;
    }

private:
    RowPtr insert(const RowPtr& node, int lo, int hi, int row, int col, Score x) {
        auto m = detail::own(node, token_);
        m->columns = detail::column_raise(m->columns, 1, side(), col, x, token_);
        if (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (row <= mid) {
                m->left = insert(m->left, lo, mid, row, col, x);
            } else {
                m->right = insert(m->right, mid + 1, hi, row, col, x);
            }
        }
        return m;
    }

    PersistentSimMatrix current_;
    std::uint64_t token_;
};

}  // namespace uted
