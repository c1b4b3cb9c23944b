#pragma once

// Slow reference answers for small trees.
//
// rooted_ted_oracle is the classical Zhang-Shasha forest recursion run on
// node-labeled trees: every non-root vertex takes the label of the edge to
// its parent and both roots get the same private label, so roots always map
// to each other at no cost. exhaustive_similarity enumerates matchings
// directly.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "uted/tree.hpp"

namespace uted {

namespace detail {

/// Postorder view used by the Zhang-Shasha recursion (1-based).
struct PostorderTree {
    explicit PostorderTree(const LabeledTree& t) {
        const int n = t.vertex_count();
        label.assign(static_cast<std::size_t>(n + 1), -1);
        leftmost.assign(static_cast<std::size_t>(n + 1), 0);
        std::vector<int> post_of(static_cast<std::size_t>(n), 0);
        int counter = 0;
        // iterative postorder
        std::vector<std::pair<int, std::size_t>> stack{{LabeledTree::root(), 0}};
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            const auto& ch = t.children(v);
            if (k < ch.size()) {
                int c = ch[k++];
                stack.emplace_back(c, 0);
                continue;
            }
            int p = ++counter;
            post_of[static_cast<std::size_t>(v)] = p;
            label[static_cast<std::size_t>(p)] = v == LabeledTree::root() ? -1 : t.label(v).id;
            leftmost[static_cast<std::size_t>(p)] =
                ch.empty() ? p : leftmost[static_cast<std::size_t>(post_of[static_cast<std::size_t>(ch.front())])];
            stack.pop_back();
        }
        size = n;
        // keyroots: highest node of each distinct leftmost leaf
        std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
        for (int p = n; p >= 1; --p) {
            auto l = static_cast<std::size_t>(leftmost[static_cast<std::size_t>(p)]);
            if (!seen[l]) {
                seen[l] = true;
                keyroots.push_back(p);
            }
        }
        std::reverse(keyroots.begin(), keyroots.end());
    }

    int size = 0;
    std::vector<int> label;
    std::vector<int> leftmost;
    std::vector<int> keyroots;
};

}  // namespace detail

/// Unit-cost edit distance between two rooted, ordered, edge-labeled trees
/// (contractions, splits and relabelings).
inline int rooted_ted_oracle(const LabeledTree& t1, const LabeledTree& t2) {
    detail::PostorderTree a(t1);
    detail::PostorderTree b(t2);
    const int n = a.size;
    const int m = b.size;
    std::vector<std::vector<int>> td(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(m + 1), 0));
    std::vector<std::vector<int>> fd(static_cast<std::size_t>(n + 2), std::vector<int>(static_cast<std::size_t>(m + 2), 0));
    auto lm1 = [&](int i) { return a.leftmost[static_cast<std::size_t>(i)]; };
    auto lm2 = [&](int j) { return b.leftmost[static_cast<std::size_t>(j)]; };
    for (int k1 : a.keyroots) {
        for (int k2 : b.keyroots) {
            const int i0 = lm1(k1);
            const int j0 = lm2(k2);
            // fd indices are shifted: fd[x - i0 + 1][y - j0 + 1], 0 = empty forest
            auto F = [&](int x, int y) -> int& {
                return fd[static_cast<std::size_t>(x - i0 + 1)][static_cast<std::size_t>(y - j0 + 1)];
            };
            F(i0 - 1, j0 - 1) = 0;
            for (int x = i0; x <= k1; ++x) {
                F(x, j0 - 1) = F(x - 1, j0 - 1) + 1;
            }
            for (int y = j0; y <= k2; ++y) {
                F(i0 - 1, y) = F(i0 - 1, y - 1) + 1;
            }
            for (int x = i0; x <= k1; ++x) {
                for (int y = j0; y <= k2; ++y) {
                    int del = F(x - 1, y) + 1;
                    int ins = F(x, y - 1) + 1;
                    if (lm1(x) == i0 && lm2(y) == j0) {
                        int ren = F(x - 1, y - 1) +
                                  (a.label[static_cast<std::size_t>(x)] == b.label[static_cast<std::size_t>(y)] ? 0 : 1);
                        F(x, y) = std::min({del, ins, ren});
                        td[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = F(x, y);
                    } else {
                        int sub = F(lm1(x) - 1, lm2(y) - 1) + td[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                        F(x, y) = std::min({del, ins, sub});
                    }
                }
            }
        }
    }
    return td[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

class SizeGuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Heaviest matching between the edges of two rooted trees that preserves
/// ancestry and left-to-right order in both directions; pairs weigh eta.
inline int exhaustive_similarity(const LabeledTree& t1, const LabeledTree& t2, int max_edges = 5) {
    const int n1 = t1.edge_count();
    const int n2 = t2.edge_count();
    if (n1 > max_edges || n2 > max_edges) {
        throw SizeGuardError("exhaustive_similarity: trees exceed the size guard");
    }
    // relation between two distinct edges: 0 = a above b, 1 = b above a,
    // 2 = a left of b, 3 = b left of a
    auto relation = [](const LabeledTree& t, int ea, int eb) {
        int va = LabeledTree::lower_vertex(ea);
        int vb = LabeledTree::lower_vertex(eb);
        if (t.is_ancestor(va, vb)) {
            return 0;
        }
        if (t.is_ancestor(vb, va)) {
            return 1;
        }
        return va < vb ? 2 : 3;
    };
    std::vector<int> partner(static_cast<std::size_t>(n1), -1);
    std::vector<bool> used(static_cast<std::size_t>(n2), false);
    int best = 0;
    auto search = [&](auto&& self, int e, int weight) -> void {
        if (e == n1) {
            best = std::max(best, weight);
            return;
        }
        self(self, e + 1, weight);
        for (int f = 0; f < n2; ++f) {
            if (used[static_cast<std::size_t>(f)]) {
                continue;
            }
            bool ok = true;
            for (int g = 0; g < e && ok; ++g) {
                int h = partner[static_cast<std::size_t>(g)];
                if (h >= 0) {
                    ok = relation(t1, g, e) == relation(t2, h, f);
                }
            }
            if (!ok) {
                continue;
            }
            partner[static_cast<std::size_t>(e)] = f;
            used[static_cast<std::size_t>(f)] = true;
            self(self, e + 1, weight + eta(t1.edge_label(e), t2.edge_label(f)));
            used[static_cast<std::size_t>(f)] = false;
            partner[static_cast<std::size_t>(e)] = -1;
        }
    };
    search(search, 0, 0);
    return best;
}

/// Unrooted distance: the written rooting of t1 against every rooting of t2.
inline int unrooted_ted_oracle(const LabeledTree& t1, const LabeledTree& t2) {
    if (t2.empty()) {
        return t1.edge_count();
    }
    int best = -1;
    for (const auto& r : enumerate_rootings(t2)) {
        int d = rooted_ted_oracle(t1, r);
        best = best < 0 ? d : std::min(best, d);
    }
    return best;
}

}  // namespace uted
