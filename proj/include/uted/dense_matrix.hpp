#pragma once

// Band-stored similarity matrix with copy-on-write snapshots.
//
// Only cells with 0 <= j - i <= window are stored (one row of window + 1
// entries per i). Everything outside the band reads as kNegInf.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "uted/score.hpp"

namespace uted {

class DenseSimMatrix {
public:
    class Builder;

    /// The all -inf matrix.
    DenseSimMatrix(int side, int window) : side_(side), window_(window) {
        if (side < 1 || window < 0) {
            throw std::invalid_argument("matrix side must be positive");
        }
    }

    int side() const { return side_; }
    int window() const { return window_; }

    bool is_valid(int i, int j) const { return i >= 1 && i <= j && j <= side_ && j - i <= window_; }

    Score value(int i, int j) const {
        if (!is_valid(i, j) || !cells_) {
            return kNegInf;
        }
        return (*cells_)[offset(i, j - i)];
    }

    /// Smallest valid j with value(i, j) >= x, or kNotFound.
    int mincol(int i, Score x) const {
        if (i < 1 || i > side_ || !cells_) {
            return kNotFound;
        }
        int lo = i;
        int hi = std::min(side_, i + window_);
        if (value(i, hi) < x) {
            return kNotFound;
        }
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (value(i, mid) >= x) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo;
    }

    /// Largest valid i with value(i, j) >= x, or kNotFound.
    int maxrow(int j, Score x) const {
        if (j < 1 || j > side_ || !cells_) {
            return kNotFound;
        }
        int lo = std::max(1, j - window_);
        int hi = j;
        if (value(lo, j) < x) {
            return kNotFound;
        }
        while (lo < hi) {
            int mid = lo + (hi - lo + 1) / 2;
            if (value(mid, j) >= x) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return lo;
    }

private:
    std::size_t offset(int i, int d) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(window_ + 1) + static_cast<std::size_t>(d);
    }

    int side_;
    int window_;
    std::shared_ptr<const std::vector<Score>> cells_;
};

/// Collects quadrant updates and materializes them in one O(side * window)
/// pass. Reads during construction see only the base matrix, which is all the
/// algorithms need.
class DenseSimMatrix::Builder {
public:
    Builder(int side, int window) : base_(side, window) {}
    explicit Builder(const DenseSimMatrix& base) : base_(base) {}

    int side() const { return base_.side_; }
    int window() const { return base_.window_; }

    /// Raises every cell (i, j) with i <= i2, j >= j2 to at least x.
    void rangemax(int i2, int j2, Score x) {
        const int n = side();
        if (!is_finite(x) || i2 < 1 || j2 > n) {
            return;
        }
        i2 = std::min(i2, n);
        j2 = std::max(j2, 1);
        if (j2 - i2 > window()) {
            return;
        }
        if (seeds_.empty()) {
            seeds_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(window() + 1), kNegInf);
        }
        if (j2 >= i2) {
            raise(i2, j2 - i2, x);
            return;
        }
        // the quadrant reaches below the diagonal; cover its upper part with
        // diagonal anchors
        for (int t = j2; t <= i2; ++t) {
            raise(t, 0, x);
        }
    }

    DenseSimMatrix build() {
        if (seeds_.empty()) {
            return base_;
        }
        const int n = side();
        const int w = window();
        auto at = [&](int i, int d) { return base_.offset(i, d); };
        // R(i, d) = max(seed, R(i, d - 1), R(i + 1, d - 1))
        for (int i = n; i >= 1; --i) {
            for (int d = 1; d <= w; ++d) {
                Score best = seeds_[at(i, d)];
                best = std::max(best, seeds_[at(i, d - 1)]);
                if (i < n) {
                    best = std::max(best, seeds_[at(i + 1, d - 1)]);
                }
                seeds_[at(i, d)] = best;
            }
        }
        if (base_.cells_) {
            const auto& old = *base_.cells_;
            for (std::size_t k = 0; k < seeds_.size(); ++k) {
                seeds_[k] = std::max(seeds_[k], old[k]);
            }
        }
        DenseSimMatrix out(n, w);
        out.cells_ = std::make_shared<const std::vector<Score>>(std::move(seeds_));
        seeds_.clear();
        base_ = out;
        return out;
    }

private:
    void raise(int i, int d, Score x) {
        auto& s = seeds_[base_.offset(i, d)];
        s = std::max(s, x);
    }

    DenseSimMatrix base_;
    std::vector<Score> seeds_;
};

}  // namespace uted
