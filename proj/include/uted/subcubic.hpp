#pragma once

// Block decomposition of S(T) into type I and type II transitions.
//
// Every intermediate tree is a connected segment of T: a vertex together with
// a contiguous run of its children. A type I transition multiplies the
// matrices of two halves that both have at least delta edges. A type II
// transition grows a segment T1 into an enclosing segment T2 by a "hat" of
// at most 2 * delta edges: a downward path from the root of T2 to the root
// of T1 plus the subtrees hanging off that path on either side.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uted/cubic.hpp"
#include "uted/euler_tour.hpp"
#include "uted/matrix_model.hpp"
#include "uted/matrix_product.hpp"
#include "uted/tree.hpp"

namespace uted {

/// Vertex `root` of the host tree with its children lo..hi-1.
struct ConnectedSegment {
    int root = 0;
    int lo = 0;
    int hi = 0;

    friend bool operator==(ConnectedSegment, ConnectedSegment) = default;
};

/// Edge counts of connected segments in O(1).
class SegmentSizes {
public:
    explicit SegmentSizes(const LabeledTree& t) : t_(&t), prefix_(static_cast<std::size_t>(t.vertex_count())) {
        for (int v = 0; v < t.vertex_count(); ++v) {
            auto& p = prefix_[static_cast<std::size_t>(v)];
            p.push_back(0);
            for (int c : t.children(v)) {
                p.push_back(p.back() + hung(c));
            }
        }
    }

    /// Edges of the subtree below c plus the edge above it.
    int hung(int c) const { return t_->subtree_edges(c) + 1; }

    int size(ConnectedSegment s) const {
        const auto& p = prefix_[static_cast<std::size_t>(s.root)];
        return p[static_cast<std::size_t>(s.hi)] - p[static_cast<std::size_t>(s.lo)];
    }

    int child(ConnectedSegment s, int k) const { return t_->children(s.root)[static_cast<std::size_t>(k)]; }

private:
    const LabeledTree* t_;
    std::vector<std::vector<int>> prefix_;
};

/// The whole tree as a connected segment.
inline ConnectedSegment whole_tree(const LabeledTree& t) {
    return ConnectedSegment{LabeledTree::root(), 0, t.degree(LabeledTree::root())};
}

/// One step of the decomposition of a non-empty segment.
struct TransitionPlan {
    bool type1 = false;
    ConnectedSegment left;   // type I: T - R_T
    ConnectedSegment right;  // type I: R_T
    ConnectedSegment inner;  // type II: T'
    int max_removal = 0;     // type II: largest single removal in the loop
};

inline int default_delta(int t_edges) {
    return std::max(1, static_cast<int>(std::lround(std::cbrt(static_cast<double>(t_edges)))));
}

/// Type I when the root has at least two children and both the first and
/// the last hung subtree have >= delta edges. Otherwise peel the segment:
/// drop the only root edge, or the smaller of the first and last hung
/// subtree (the last one on ties), while the total removed stays <= 2 delta.
inline TransitionPlan plan_transition(const LabeledTree& t, const SegmentSizes& sizes, ConnectedSegment s, int delta) {
    TransitionPlan plan;
    const int deg = s.hi - s.lo;
    if (deg >= 2 && sizes.hung(sizes.child(s, s.lo)) >= delta && sizes.hung(sizes.child(s, s.hi - 1)) >= delta) {
        plan.type1 = true;
        plan.left = ConnectedSegment{s.root, s.lo, s.hi - 1};
        plan.right = ConnectedSegment{s.root, s.hi - 1, s.hi};
        return plan;
    }
    ConnectedSegment cur = s;
    int removed = 0;
    while (sizes.size(cur) > 0) {
        ConnectedSegment next;
        int cost = 0;
        if (cur.hi - cur.lo == 1) {
            int c = sizes.child(cur, cur.lo);
            next = ConnectedSegment{c, 0, t.degree(c)};
            cost = 1;
        } else {
            int hl = sizes.hung(sizes.child(cur, cur.lo));
            int hr = sizes.hung(sizes.child(cur, cur.hi - 1));
            if (hl < hr) {
                next = ConnectedSegment{cur.root, cur.lo + 1, cur.hi};
                cost = hl;
            } else {
                next = ConnectedSegment{cur.root, cur.lo, cur.hi - 1};
                cost = hr;
            }
        }
        if (removed + cost > 2 * delta) {
            break;
        }
        cur = next;
        removed += cost;
        plan.max_removal = std::max(plan.max_removal, cost);
    }
    plan.inner = cur;
    return plan;
}

struct TransitionCensus {
    long type1 = 0;
    long type2_large = 0;
    long type2_small = 0;
    long type2_base = 0;

    long total() const { return type1 + type2_large + type2_small + type2_base; }
};

namespace detail {

inline void count_type2(TransitionCensus& census, int inner_size, int hat_size, int delta) {
    if (inner_size == 0) {
        ++census.type2_base;
    } else if (hat_size >= delta) {
        ++census.type2_large;
    } else {
        ++census.type2_small;
    }
}

inline void census_rec(const LabeledTree& t, const SegmentSizes& sizes, ConnectedSegment s, int delta,
                       TransitionCensus& out) {
    const int n = sizes.size(s);
    if (n == 0) {
        return;
    }
    TransitionPlan plan = plan_transition(t, sizes, s, delta);
    if (plan.type1) {
        census_rec(t, sizes, plan.left, delta, out);
        census_rec(t, sizes, plan.right, delta, out);
        ++out.type1;
        return;
    }
    census_rec(t, sizes, plan.inner, delta, out);
    int inner = sizes.size(plan.inner);
    count_type2(out, inner, n - inner, delta);
}

}  // namespace detail

/// Transition counts of the decomposition of t, without computing matrices.
inline TransitionCensus transition_census(const LabeledTree& t, int delta) {
    if (delta < 1) {
        throw std::invalid_argument("delta must be >= 1");
    }
    SegmentSizes sizes(t);
    TransitionCensus out;
    detail::census_rec(t, sizes, whole_tree(t), delta, out);
    return out;
}

/// Hat of a type II transition from T1 (inner) to T2 (outer). path holds
/// the lower vertices p_1..p_k of the path edges e_1..e_k. left[i] and
/// right[i] hold the flanks L_{i+1} and R_{i+1} as separate trees whose
/// origins are edge ids of the host tree.
struct HatDecomposition {
    ConnectedSegment outer;
    ConnectedSegment inner;
    std::vector<int> path;
    std::vector<LabeledTree> left;
    std::vector<LabeledTree> right;

    int k() const { return static_cast<int>(path.size()); }
};

/// Host edges of T2 - T1.
inline std::vector<int> hat_edges(const LabeledTree& t, ConnectedSegment outer, ConnectedSegment inner) {
    std::vector<char> mark(static_cast<std::size_t>(t.edge_count()), 0);
    auto paint = [&](ConnectedSegment s, char value) {
        for (int k = s.lo; k < s.hi; ++k) {
            int c = t.children(s.root)[static_cast<std::size_t>(k)];
            for (int v = c; v < t.subtree_end(c); ++v) {
                mark[static_cast<std::size_t>(LabeledTree::edge_of(v))] = value;
            }
        }
    };
    paint(outer, 1);
    paint(inner, 0);
    std::vector<int> out;
    for (int e = 0; e < t.edge_count(); ++e) {
        if (mark[static_cast<std::size_t>(e)]) {
            out.push_back(e);
        }
    }
    return out;
}

inline HatDecomposition hat_decompose(const LabeledTree& t, ConnectedSegment outer, ConnectedSegment inner) {
    HatDecomposition h;
    h.outer = outer;
    h.inner = inner;
    for (int v = inner.root; v != outer.root; v = t.parent(v)) {
        if (v == LabeledTree::root()) {
            throw std::invalid_argument("hat_decompose: inner segment is not below the outer root");
        }
        h.path.push_back(v);
    }
    std::reverse(h.path.begin(), h.path.end());
    const int k = h.k();
    if (k == 0) {
        if (inner.lo < outer.lo || inner.hi > outer.hi || inner.lo > inner.hi) {
            throw std::invalid_argument("hat_decompose: inner segment is not contained in the outer one");
        }
        h.left.push_back(t.extract(outer.root, outer.lo, inner.lo));
        h.right.push_back(t.extract(outer.root, inner.hi, outer.hi));
        return h;
    }
    int first = t.child_index(h.path.front());
    if (first < outer.lo || first >= outer.hi) {
        throw std::invalid_argument("hat_decompose: inner segment is not contained in the outer one");
    }
    h.left.push_back(t.extract(outer.root, outer.lo, first));
    h.right.push_back(t.extract(outer.root, first + 1, outer.hi));
    for (int x = 1; x < k; ++x) {
        int up = h.path[static_cast<std::size_t>(x - 1)];
        int idx = t.child_index(h.path[static_cast<std::size_t>(x)]);
        h.left.push_back(t.extract(up, 0, idx));
        h.right.push_back(t.extract(up, idx + 1, t.degree(up)));
    }
    h.left.push_back(t.extract(inner.root, 0, inner.lo));
    h.right.push_back(t.extract(inner.root, inner.hi, t.degree(inner.root)));
    return h;
}

/// S(L_{i,j}) and S(R_{i,j}) for 1 <= i <= j <= k + 1, where
/// L_{i,j} = L_i + ... + L_j and R_{i,j} = R_j + ... + R_i.
template <SimilarityStore M>
class FlankMatrices {
public:
    FlankMatrices(const HatDecomposition& h, CubicEngine<M>& engine) : count_(h.k() + 1) {
        const int n = count_;
        auto degree = [](const LabeledTree& x) { return x.degree(LabeledTree::root()); };
        for (int i = 1; i <= n; ++i) {
            LabeledTree tree;
            for (int j = i; j <= n; ++j) {
                tree = compose(tree, h.left[static_cast<std::size_t>(j - 1)]);
            }
            auto pre = engine.root_prefixes(tree);
            std::vector<M> row;
            int taken = 0;
            for (int j = i; j <= n; ++j) {
                taken += degree(h.left[static_cast<std::size_t>(j - 1)]);
                row.push_back(pre[static_cast<std::size_t>(taken)]);
            }
            left_.push_back(std::move(row));
        }
        for (int j = 1; j <= n; ++j) {
            LabeledTree tree;
            for (int i = j; i >= 1; --i) {
                tree = compose(tree, h.right[static_cast<std::size_t>(i - 1)]);
            }
            auto pre = engine.root_prefixes(tree);
            // column j, rows j down to 1
            std::vector<M> col;
            int taken = 0;
            for (int i = j; i >= 1; --i) {
                taken += degree(h.right[static_cast<std::size_t>(i - 1)]);
                col.push_back(pre[static_cast<std::size_t>(taken)]);
            }
            std::reverse(col.begin(), col.end());
            right_.push_back(std::move(col));
        }
    }

    const M& left(int i, int j) const {
        check(i, j);
        return left_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - i)];
    }

    const M& right(int i, int j) const {
        check(i, j);
        return right_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
    }

private:
    void check(int i, int j) const {
        if (i < 1 || i > j || j > count_) {
            throw std::out_of_range("flank index out of range");
        }
    }

    int count_;
    std::vector<std::vector<M>> left_;   // [i-1][j-i]
    std::vector<std::vector<M>> right_;  // [j-1][i-1]
};

/// Restricted matrices S^(sub(e_x)) for x = 1..k (index x - 1), computed
/// from e_k upwards. `bound` caps the flank cost guesses, 2(|T2| - |T1|).
template <SimilarityStore M>
std::vector<M> restricted_matrices(const LabeledTree& t, const HatDecomposition& h, const M& s_t1,
                                   const FlankMatrices<M>& fl, const TourContext& q, Score bound) {
    const int k = h.k();
    std::vector<std::optional<M>> hat(static_cast<std::size_t>(k + 1));
    // one family of updates: e_x matched to e, flank pair (lm, rm) around a
    // middle matrix, anchored on the occurrence pair of e
    auto sweep = [&](typename M::Builder& b, Label top, const M& lm, const M& mid, const M& rm) {
        for (int e = 0; e < q.edges(); ++e) {
            const auto& occ = q.tour.occurrences(e);
            Score w = eta(top, q.edge_label(e));
            for (std::size_t c = 0; c < 3; ++c) {
                const int lo = occ[c];
                const int hi = occ[c + 1];
                for (Score a = 0; a <= bound;) {
                    int i = lm.mincol(lo, a);
                    if (i == kNotFound) {
                        break;
                    }
                    Score la = lm.value(lo, i);
                    for (Score bb = 0; bb <= bound;) {
                        int j = rm.maxrow(hi, bb);
                        if (j == kNotFound) {
                            break;
                        }
                        Score rb = rm.value(j, hi);
                        b.rangemax(lo, hi + 1, plus(plus(w, la), plus(mid.value(i, j), rb)));
                        bb = rb + 1;
                    }
                    a = la + 1;
                }
            }
        }
    };
    for (int x = k; x >= 1; --x) {
        typename M::Builder b(q.side(), q.window());
        Label top = t.label(h.path[static_cast<std::size_t>(x - 1)]);
        sweep(b, top, fl.left(x + 1, k + 1), s_t1, fl.right(x + 1, k + 1));
        for (int y = x + 1; y <= k; ++y) {
            sweep(b, top, fl.left(x + 1, y), *hat[static_cast<std::size_t>(y)], fl.right(x + 1, y));
        }
        hat[static_cast<std::size_t>(x)] = b.build();
    }
    std::vector<M> out;
    for (int x = 1; x <= k; ++x) {
        out.push_back(std::move(*hat[static_cast<std::size_t>(x)]));
    }
    return out;
}

/// S(T2) from S(T1): both flanks around T1 with no path edge matched, then
/// every first matched path edge e_x with its restricted matrix.
template <SimilarityStore M>
M type2_transition(const HatDecomposition& h, const M& s_t1, const FlankMatrices<M>& fl, const std::vector<M>& hat,
                   const TourContext& q, const BdBackend& backend, Score bound) {
    const int k = h.k();
    M init = star_similarity(star_similarity(fl.left(1, k + 1), s_t1, backend), fl.right(1, k + 1), backend);
    typename M::Builder b(init);
    const int n = q.side();
    for (int x = 1; x <= k; ++x) {
        const M& lm = fl.left(1, x);
        const M& rm = fl.right(1, x);
        const M& sx = hat[static_cast<std::size_t>(x - 1)];
        for (int e = 0; e < q.edges(); ++e) {
            const auto& occ = q.tour.occurrences(e);
            for (std::size_t c = 0; c < 3; ++c) {
                const int lo = occ[c];
                const int hi = occ[c + 1] + 1;
                if (hi > n) {
                    continue;
                }
                Score middle = sx.value(lo, hi);
                if (!is_finite(middle)) {
                    continue;
                }
                for (Score a = 0; a <= bound;) {
                    int i = lm.maxrow(lo, a);
                    if (i == kNotFound) {
                        break;
                    }
                    Score la = lm.value(i, lo);
                    for (Score bb = 0; bb <= bound;) {
                        int j = rm.mincol(hi, bb);
                        if (j == kNotFound) {
                            break;
                        }
                        Score rb = rm.value(hi, j);
                        b.rangemax(i, j, plus(plus(la, middle), rb));
                        bb = rb + 1;
                    }
                    a = la + 1;
                }
            }
        }
    }
    return b.build();
}

struct SubcubicConfig {
    int delta = 0;  // 0: default_delta(|E(T)|)
    BdBackend backend = naive_backend();
    std::ostream* trace = nullptr;
    bool record_hats = false;
};

struct SubcubicStats {
    TransitionCensus census;
    int max_hat = 0;
    int max_removal = 0;
    std::vector<std::vector<int>> hats;  // host edges of T2 - T1, if recorded
};

inline void write_trace_header(std::ostream& out) {
    out << "kind\tleft_edges\tright_edges\tdelta\telapsed_us\n";
}

template <SimilarityStore M>
class SubcubicEngine {
public:
    using Observer = typename CubicEngine<M>::Observer;

    /// `observer` sees every similarity matrix produced, flank matrices and
    /// transition results alike, with the edge count of its tree.
    SubcubicEngine(const LabeledTree& t, const TourContext& q, SubcubicConfig cfg = {}, Observer observer = {})
        : t_(t.with_fresh_origins()),
          q_(q),
          cfg_(std::move(cfg)),
          sizes_(t_),
          cubic_(q, observer),
          observer_(std::move(observer)),
          delta_(cfg_.delta > 0 ? cfg_.delta : default_delta(t.edge_count())) {}

    SubcubicEngine(const SubcubicEngine&) = delete;
    SubcubicEngine& operator=(const SubcubicEngine&) = delete;

    int delta() const { return delta_; }
    const LabeledTree& tree() const { return t_; }
    const SubcubicStats& stats() const { return stats_; }

    M compute() { return compute(whole_tree(t_)); }

    M compute(ConnectedSegment s) {
        const int n = sizes_.size(s);
        if (n == 0) {
            return cubic_.zero();
        }
        TransitionPlan plan = plan_transition(t_, sizes_, s, delta_);
        if (plan.type1) {
            int nl = sizes_.size(plan.left);
            int nr = sizes_.size(plan.right);
            if (nl < delta_ || nr < delta_) {
                throw std::logic_error("type I operand smaller than delta");
            }
            M left = compute(plan.left);
            M right = compute(plan.right);
            auto start = Clock::now();
            M out = star_similarity(left, right, cfg_.backend);
            ++stats_.census.type1;
            observe(out, n);
            trace("type1", nl, nr, start);
            return out;
        }
        M inner = compute(plan.inner);
        const int ni = sizes_.size(plan.inner);
        auto start = Clock::now();
        M out = type2(s, plan.inner, inner);
        observe(out, n);
        detail::count_type2(stats_.census, ni, n - ni, delta_);
        stats_.max_hat = std::max(stats_.max_hat, n - ni);
        stats_.max_removal = std::max(stats_.max_removal, plan.max_removal);
        if (cfg_.record_hats) {
            stats_.hats.push_back(hat_edges(t_, s, plan.inner));
        }
        trace(ni == 0 ? "type2_base" : (n - ni >= delta_ ? "type2_large" : "type2_small"), ni, n - ni, start);
        return out;
    }

    /// One type II transition from S(inner) to S(outer).
    M type2(ConnectedSegment outer, ConnectedSegment inner, const M& s_inner) {
        HatDecomposition h = hat_decompose(t_, outer, inner);
        FlankMatrices<M> fl(h, cubic_);
        Score bound = 2 * (sizes_.size(outer) - sizes_.size(inner));
        std::vector<M> hat = restricted_matrices(t_, h, s_inner, fl, q_, bound);
        return type2_transition(h, s_inner, fl, hat, q_, cfg_.backend, bound);
    }

private:
    using Clock = std::chrono::steady_clock;

    void observe(const M& m, int edges) {
        if (observer_) {
            observer_(m, edges);
        }
    }

    void trace(const char* kind, int left, int right, Clock::time_point start) {
        if (!cfg_.trace) {
            return;
        }
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
        *cfg_.trace << kind << '\t' << left << '\t' << right << '\t' << delta_ << '\t' << us << '\n';
    }

    LabeledTree t_;
    const TourContext& q_;
    SubcubicConfig cfg_;
    SegmentSizes sizes_;
    CubicEngine<M> cubic_;
    Observer observer_;
    int delta_;
    SubcubicStats stats_;
};

/// S(t, q) by the block decomposition.
template <SimilarityStore M>
M compute_S_subcubic(const LabeledTree& t, const TourContext& q, SubcubicConfig cfg = {}) {
    SubcubicEngine<M> engine(t, q, std::move(cfg));
    return engine.compute();
}

}  // namespace uted
