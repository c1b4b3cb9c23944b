#pragma once

// Doubled Euler tour of an unrooted tree and the segments built on it.
//
// Positions are 1-based: the walk has 4|E| steps T(1)..T(4|E|) and every edge
// occurs at exactly four positions. A segment [l, r) with r - l <= 2|E| names
// the rooted tree obtained by contracting every edge seen fewer than twice in
// T(l)..T(r-1); its first surviving edge fixes the rooting.

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uted/tree.hpp"

namespace uted {

/// One step of the walk: edge `edge` traversed from vertex `from` to `to`.
struct Traversal {
    int edge = -1;
    int from = -1;
    int to = -1;
};

class EulerTour {
public:
    /// Tour starting on the edge from the root to its first child, going down.
    explicit EulerTour(const LabeledTree& q)
        : EulerTour(q, q.empty() ? -1 : LabeledTree::edge_of(q.children(LabeledTree::root()).front()), true) {}

    /// Tour starting on `start_edge`. `descending` selects the direction from
    /// the parent endpoint towards the child endpoint.
    EulerTour(const LabeledTree& q, int start_edge, bool descending) : edges_(q.edge_count()) {
        if (edges_ < 1) {
            throw std::invalid_argument("euler tour: tree has no edges");
        }
        if (start_edge < 0 || start_edge >= edges_) {
            throw std::out_of_range("euler tour: start edge out of range");
        }
        int lower = LabeledTree::lower_vertex(start_edge);
        int upper = q.parent(lower);
        Traversal step = descending ? Traversal{start_edge, upper, lower} : Traversal{start_edge, lower, upper};
        const int single = 2 * edges_;
        walk_.reserve(static_cast<std::size_t>(2 * single));
        for (int s = 0; s < single; ++s) {
            walk_.push_back(step);
            // at `to`, continue with the neighbor after `from` in cyclic order
            auto nb = q.neighbors(step.to);
            std::size_t k = 0;
            while (nb[k] != step.from) {
                ++k;
            }
            int next = nb[(k + 1) % nb.size()];
            int e = q.parent(next) == step.to ? LabeledTree::edge_of(next) : LabeledTree::edge_of(step.to);
            step = Traversal{e, step.to, next};
        }
        for (int s = 0; s < single; ++s) {
            walk_.push_back(walk_[static_cast<std::size_t>(s)]);
        }
        occ_.assign(static_cast<std::size_t>(edges_), {});
        std::vector<int> seen(static_cast<std::size_t>(edges_), 0);
        for (int pos = 1; pos <= length(); ++pos) {
            int e = edge_at(pos);
            auto& cnt = seen[static_cast<std::size_t>(e)];
            if (cnt >= 4) {
                throw std::logic_error("euler tour: edge visited more than four times");
            }
            occ_[static_cast<std::size_t>(e)][static_cast<std::size_t>(cnt++)] = pos;
        }
    }

    int edge_count() const { return edges_; }
    /// 4|E|, the side of every similarity matrix over this tour.
    int length() const { return 4 * edges_; }
    /// 2|E|, the longest segment.
    int window() const { return 2 * edges_; }

    int edge_at(int pos) const { return step(pos).edge; }
    const Traversal& step(int pos) const { return walk_.at(static_cast<std::size_t>(pos - 1)); }

    /// I(e)_c for c in 1..4.
    int occurrence(int e, int c) const {
        return occ_.at(static_cast<std::size_t>(e)).at(static_cast<std::size_t>(c - 1));
    }
    const std::array<int, 4>& occurrences(int e) const { return occ_.at(static_cast<std::size_t>(e)); }

private:
    int edges_;
    std::vector<Traversal> walk_;
    std::vector<std::array<int, 4>> occ_;
};

/// Half-open window [l, r) into the doubled tour, 1-based.
struct Segment {
    int l = 1;
    int r = 1;

    int length() const { return r - l; }
    friend bool operator==(Segment, Segment) = default;
};

inline void check_segment(const EulerTour& tour, Segment s) {
    if (s.l < 1 || s.l > s.r || s.r > tour.length() + 1 || s.length() > tour.window()) {
        throw std::out_of_range("segment out of range");
    }
}

/// Q[l, r) as a rooted tree. Origins are edge ids of q.
inline LabeledTree segment_tree_of(const LabeledTree& q, const EulerTour& tour, Segment s) {
    check_segment(tour, s);
    std::vector<int> count(static_cast<std::size_t>(tour.edge_count()), 0);
    for (int p = s.l; p < s.r; ++p) {
        ++count[static_cast<std::size_t>(tour.edge_at(p))];
    }
    // surviving edges occur exactly twice and never interleave, so their
    // occurrences read as a balanced bracket sequence
    std::vector<Bracket> tokens;
    std::vector<bool> opened(static_cast<std::size_t>(tour.edge_count()), false);
    for (int p = s.l; p < s.r; ++p) {
        int e = tour.edge_at(p);
        auto ue = static_cast<std::size_t>(e);
        if (count[ue] < 2) {
            continue;
        }
        int lower = LabeledTree::lower_vertex(e);
        tokens.push_back(Bracket{!opened[ue], q.label(lower), q.origin(lower)});
        opened[ue] = true;
    }
    return LabeledTree::from_brackets(tokens);
}

/// Number of edges of Q[l, r).
inline int segment_edge_count(const EulerTour& tour, Segment s) {
    check_segment(tour, s);
    std::vector<int> count(static_cast<std::size_t>(tour.edge_count()), 0);
    int edges = 0;
    for (int p = s.l; p < s.r; ++p) {
        if (++count[static_cast<std::size_t>(tour.edge_at(p))] == 2) {
            ++edges;
        }
    }
    return edges;
}

/// True iff no edge occurs exactly once in T(l)..T(r-1).
inline bool is_connected_segment(const EulerTour& tour, Segment s) {
    check_segment(tour, s);
    std::vector<int> count(static_cast<std::size_t>(tour.edge_count()), 0);
    for (int p = s.l; p < s.r; ++p) {
        ++count[static_cast<std::size_t>(tour.edge_at(p))];
    }
    for (int c : count) {
        if (c == 1) {
            return false;
        }
    }
    return true;
}

/// Q together with its tour; the fixed second argument of every similarity
/// matrix.
struct TourContext {
    explicit TourContext(LabeledTree q) : tree(std::move(q)), tour(tree) {}
    TourContext(LabeledTree q, int start_edge, bool descending)
        : tree(std::move(q)), tour(tree, start_edge, descending) {}

    int edges() const { return tour.edge_count(); }
    int side() const { return tour.length(); }
    int window() const { return tour.window(); }
    Label edge_label(int e) const { return tree.edge_label(e); }

    LabeledTree tree;
    EulerTour tour;
};

}  // namespace uted
