#pragma once

// Random (outer, inner) connected-segment pairs for type II transitions.

#include <optional>
#include <random>
#include <vector>

#include "uted/random_tree.hpp"
#include "uted/subcubic.hpp"

namespace uted::testing {

inline std::vector<ConnectedSegment> all_segments(const LabeledTree& t) {
    std::vector<ConnectedSegment> out;
    for (int v = 0; v < t.vertex_count(); ++v) {
        for (int lo = 0; lo <= t.degree(v); ++lo) {
            for (int hi = lo; hi <= t.degree(v); ++hi) {
                out.push_back(ConnectedSegment{v, lo, hi});
            }
        }
    }
    return out;
}

inline bool contains(const LabeledTree& t, ConnectedSegment outer, ConnectedSegment inner) {
    if (inner.root == outer.root) {
        return outer.lo <= inner.lo && inner.hi <= outer.hi;
    }
    int v = inner.root;
    while (v != LabeledTree::root() && t.parent(v) != outer.root) {
        v = t.parent(v);
    }
    if (v == LabeledTree::root()) {
        return false;
    }
    return outer.lo <= t.child_index(v) && t.child_index(v) < outer.hi;
}

inline LabeledTree segment_tree(const LabeledTree& t, ConnectedSegment s) { return t.extract(s.root, s.lo, s.hi); }

struct HatCase {
    ConnectedSegment outer;
    ConnectedSegment inner;
};

// Random (outer, inner) pair with 1 <= |outer| - |inner| <= max_hat.
inline std::optional<HatCase> random_hat(std::mt19937_64& rng, const LabeledTree& t, int max_hat, bool need_path) {
    SegmentSizes sizes(t);
    auto segs = all_segments(t);
    std::vector<HatCase> cands;
    for (auto o : segs) {
        for (auto i : segs) {
            int hat = sizes.size(o) - sizes.size(i);
            if (hat < 1 || hat > max_hat || !contains(t, o, i)) {
                continue;
            }
            if (need_path && i.root == o.root) {
                continue;
            }
            cands.push_back({o, i});
        }
    }
    if (cands.empty()) {
        return std::nullopt;
    }
    return cands[uniform_below(rng, cands.size())];
}

}  // namespace uted::testing
