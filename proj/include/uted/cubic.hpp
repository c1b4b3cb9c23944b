#pragma once

// The cubic dynamic program for S(T, Q).
//
// Subproblems are the hung subtrees (a vertex's subtree plus the edge above
// it) and the child prefixes of every vertex. A single-vertex tree has the
// zero matrix; a hung subtree adds its top edge to the prefix of all its
// children (case_b_step); a longer prefix multiplies the previous prefix with
// the next hung subtree (case_c_step).

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uted/euler_tour.hpp"
#include "uted/matrix_model.hpp"
#include "uted/matrix_product.hpp"
#include "uted/tree.hpp"

namespace uted {

/// S(T') from S(T' - ru) where ru is the only root edge of T' and carries
/// `top`. For every edge e of Q and consecutive occurrences I_c, I_{c+1},
/// the windows starting at or before I_c and ending after I_{c+1} may match
/// ru to e and fit T' - ru strictly between the two occurrences.
template <SimilarityStore M>
M case_b_step(const M& prev, Label top, const TourContext& q) {
    typename M::Builder b(prev);
    for (int e = 0; e < q.edges(); ++e) {
        const auto& occ = q.tour.occurrences(e);
        Score w = eta(top, q.edge_label(e));
        for (std::size_t c = 0; c < 3; ++c) {
            b.rangemax(occ[c], occ[c + 1] + 1, plus(prev.value(occ[c] + 1, occ[c + 1]), w));
        }
    }
    return b.build();
}

/// S(A + B) = S(A) * S(B), with the similarity bounds 2|E(A)|, 2|E(B)|.
template <SimilarityStore M>
M case_c_step(const M& left, const M& right, int left_edges, int right_edges) {
    return mul_bounded(left, right, 2 * left_edges, 2 * right_edges);
}

/// Runs the dynamic program for trees against a fixed Q. `observer` sees
/// every matrix produced together with the edge count of its tree.
template <SimilarityStore M>
class CubicEngine {
public:
    using Observer = std::function<void(const M&, int)>;

    explicit CubicEngine(const TourContext& q, Observer observer = {})
        : q_(q), observer_(std::move(observer)), zero_(zero_matrix<M>(q.side(), q.window())) {}

    const TourContext& context() const { return q_; }
    const M& zero() const { return zero_; }

    /// S of the root of t together with its first c children, c = 0..deg.
    std::vector<M> root_prefixes(const LabeledTree& t) {
        t_ = &t;
        std::vector<M> out;
        prefixes(LabeledTree::root(), &out);
        t_ = nullptr;
        return out;
    }

    /// S(t, Q).
    M similarity(const LabeledTree& t) {
        t_ = &t;
        M out = prefixes(LabeledTree::root(), nullptr);
        t_ = nullptr;
        return out;
    }

    /// Subproblems evaluated since construction.
    long subproblems() const { return subproblems_; }

private:
    void produced(const M& m, int edges) {
        ++subproblems_;
        if (observer_) {
            observer_(m, edges);
        }
    }

    M hung(int v) {
        M inner = prefixes(v, nullptr);
        M out = case_b_step(inner, t_->label(v), q_);
        produced(out, t_->subtree_edges(v) + 1);
        return out;
    }

    /// Child prefixes of v; returns the full one. The largest child goes
    /// first so that at most O(log n) partial prefixes are alive at once.
    M prefixes(int v, std::vector<M>* all) {
        const auto& ch = t_->children(v);
        produced(zero_, 0);
        if (all) {
            all->push_back(zero_);
        }
        if (ch.empty()) {
            return zero_;
        }
        std::size_t heavy = 0;
        for (std::size_t k = 1; k < ch.size(); ++k) {
            if (t_->subtree_edges(ch[k]) > t_->subtree_edges(ch[heavy])) {
                heavy = k;
            }
        }
        M heavy_matrix = hung(ch[heavy]);
        M acc = zero_;
        int acc_edges = 0;
        for (std::size_t k = 0; k < ch.size(); ++k) {
            int c_edges = t_->subtree_edges(ch[k]) + 1;
            if (k == 0) {
                acc = k == heavy ? heavy_matrix : hung(ch[k]);
            } else {
                acc = case_c_step(acc, k == heavy ? heavy_matrix : hung(ch[k]), acc_edges, c_edges);
            }
            acc_edges += c_edges;
            if (k > 0) {
                produced(acc, acc_edges);
            } else {
                ++subproblems_;
            }
            if (all) {
                all->push_back(acc);
            }
        }
        return acc;
    }

    const TourContext& q_;
    Observer observer_;
    M zero_;
    const LabeledTree* t_ = nullptr;
    long subproblems_ = 0;
};

/// S(t, q) by the cubic dynamic program.
template <SimilarityStore M>
M compute_S_cubic(const LabeledTree& t, const TourContext& q) {
    CubicEngine<M> engine(q);
    return engine.similarity(t);
}

/// Distance from T to the rooting of Q that starts its tour at position i,
/// for i = 1..2|E(Q)|.
template <SimilarityStore M>
std::vector<int> distances_all_rootings(const M& s, int t_edges) {
    const int m = s.window() / 2;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(2 * m));
    for (int i = 1; i <= 2 * m; ++i) {
        Score v = s.value(i, i + 2 * m);
        if (!is_finite(v)) {
            throw std::logic_error("distances_all_rootings: full window not computed");
        }
        out.push_back(t_edges + m - v);
    }
    return out;
}

}  // namespace uted
