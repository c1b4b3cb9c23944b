#pragma once

// Unrooted tree edit distance, end to end.

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "uted/cubic.hpp"
#include "uted/euler_tour.hpp"
#include "uted/matrix_model.hpp"
#include "uted/oracle.hpp"
#include "uted/subcubic.hpp"
#include "uted/tree.hpp"

namespace uted {

enum class Algorithm { cubic, subcubic, oracle };
enum class Backend { dense, persistent };

inline Algorithm parse_algorithm(std::string_view s) {
    if (s == "cubic") {
        return Algorithm::cubic;
    }
    if (s == "subcubic") {
        return Algorithm::subcubic;
    }
    if (s == "oracle") {
        return Algorithm::oracle;
    }
    throw std::invalid_argument("unknown algorithm");
}

inline Backend parse_backend(std::string_view s) {
    if (s == "dense") {
        return Backend::dense;
    }
    if (s == "persistent") {
        return Backend::persistent;
    }
    throw std::invalid_argument("unknown backend");
}

struct DistanceOptions {
    Algorithm algorithm = Algorithm::cubic;
    Backend backend = Backend::dense;
    SubcubicConfig subcubic;
};

struct DistanceResult {
    int distance = 0;
    /// Distance to the rooting of the second tree whose tour starts at
    /// position i, for i = 1..2|E|. Empty when both trees are empty.
    std::vector<int> per_rooting;
};

/// S(t, q) with the selected matrix algorithm (cubic or subcubic).
template <SimilarityStore M>
M similarity_matrix(const LabeledTree& t, const TourContext& q, Algorithm algorithm, const SubcubicConfig& cfg = {}) {
    switch (algorithm) {
        case Algorithm::cubic:
            return compute_S_cubic<M>(t, q);
        case Algorithm::subcubic:
            return compute_S_subcubic<M>(t, q, cfg);
        case Algorithm::oracle:
            break;
    }
    throw std::invalid_argument("similarity_matrix: the oracle does not produce matrices");
}

namespace detail {

template <SimilarityStore M>
DistanceResult distance_via_matrix(const LabeledTree& t, const TourContext& q, const DistanceOptions& opt) {
    M s = similarity_matrix<M>(t, q, opt.algorithm, opt.subcubic);
    DistanceResult r;
    r.per_rooting = distances_all_rootings(s, t.edge_count());
    r.distance = *std::min_element(r.per_rooting.begin(), r.per_rooting.end());
    return r;
}

}  // namespace detail

/// Edit distance between the unrooted views of t and q. The rooting of t
/// is irrelevant; every rooting of q is tried. If q has no edges the roles
/// are swapped.
inline DistanceResult unrooted_distance(const LabeledTree& t, const LabeledTree& q, const DistanceOptions& opt = {}) {
    if (q.empty()) {
        if (t.empty()) {
            return DistanceResult{};
        }
        return unrooted_distance(q, t, opt);
    }
    TourContext ctx(q);
    if (opt.algorithm == Algorithm::oracle) {
        DistanceResult r;
        for (int i = 1; i <= ctx.window(); ++i) {
            auto rooting = segment_tree_of(ctx.tree, ctx.tour, Segment{i, i + ctx.window()});
            r.per_rooting.push_back(rooted_ted_oracle(t, rooting));
        }
        r.distance = *std::min_element(r.per_rooting.begin(), r.per_rooting.end());
        return r;
    }
    if (opt.backend == Backend::persistent) {
        return detail::distance_via_matrix<PersistentSimMatrix>(t, ctx, opt);
    }
    return detail::distance_via_matrix<DenseSimMatrix>(t, ctx, opt);
}

}  // namespace uted
