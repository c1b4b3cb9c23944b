// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// gating criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/brute_fix.hpp"
#include "support/hats.hpp"
#include "support/naive_star.hpp"
#include "support/random_pairs.hpp"
#include "support/restricted_brute.hpp"
#include "support/segment_oracle.hpp"
#include "uted/uted.hpp"

using namespace uted;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Counts law violations over every matrix handed to it.
struct LawTally {
    long matrices = 0;
    long violations = 0;
    std::string first;

    template <class M>
    void operator()(const M& m, int edges) {
        ++matrices;
        if (auto bad = check_similarity_laws(m, edges)) {
            if (violations++ == 0) {
                first = *bad;
            }
        }
    }
};

LawTally g_laws;

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// All rooted ordered trees with exactly n edges over labels {a, b}.
std::vector<std::vector<Bracket>> forests(int n, Label a, Label b) {
    if (n == 0) {
        return {{}};
    }
    std::vector<std::vector<Bracket>> out;
    for (int below = 0; below < n; ++below) {
        auto inner = forests(below, a, b);
        auto rest = forests(n - 1 - below, a, b);
        for (Label top : {a, b}) {
            for (const auto& in : inner) {
                for (const auto& r : rest) {
                    std::vector<Bracket> f{Bracket{true, top, -1}};
                    f.insert(f.end(), in.begin(), in.end());
                    f.push_back(Bracket{false, top, -1});
                    f.insert(f.end(), r.begin(), r.end());
                    out.push_back(std::move(f));
                }
            }
        }
    }
    return out;
}

Outcome oracle_triangle() {
    Alphabet names;
    Label a = names.intern("a");
    Label b = names.intern("b");
    std::vector<LabeledTree> all;
    for (int n = 0; n <= 4; ++n) {
        for (const auto& f : forests(n, a, b)) {
            all.push_back(LabeledTree::from_brackets(f));
        }
    }
    long pairs = 0;
    long bad = 0;
    for (const auto& x : all) {
        for (const auto& y : all) {
            ++pairs;
            if (rooted_ted_oracle(x, y) != x.edge_count() + y.edge_count() - exhaustive_similarity(x, y)) {
                ++bad;
            }
        }
    }
    return {bad == 0 && all.size() == 275,
            std::to_string(all.size()) + " trees, " + std::to_string(pairs) + " pairs, " + std::to_string(bad) +
                " mismatches"};
}

Outcome rooting_invariance() {
    std::mt19937_64 rng(3001);
    Alphabet names;
    int bad = 0;
    const int pairs = 120;
    for (int it = 0; it < pairs; ++it) {
        auto t = random_tree(uniform_int(rng, 1, 5), TreeShape::random, 2, rng, names);
        auto q = random_tree(uniform_int(rng, 1, 5), TreeShape::random, 2, rng, names);
        int d = unrooted_ted_oracle(t, q);
        for (const auto& r : enumerate_rootings(t)) {
            if (unrooted_ted_oracle(r, q) != d) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " rooting-dependent"};
}

Outcome cubic_correctness() {
    std::mt19937_64 rng(3002);
    Alphabet names;
    const int pairs = 500;
    long cells = 0;
    int cell_bad = 0;
    int dist_bad = 0;
    for (int it = 0; it < pairs; ++it) {
        auto [t, qt] = testing::random_pair(rng, names, 10);
        TourContext q(qt);
        CubicEngine<DenseSimMatrix> engine(q, std::ref(g_laws));
        auto s = engine.similarity(t);
        testing::SegmentOracle oracle(t, q);
        bool ok = true;
        for (int i = 1; i <= q.side(); ++i) {
            for (int j = i; j <= std::min(q.side(), i + q.window()); ++j) {
                ++cells;
                ok = ok && s.value(i, j) == oracle.similarity(i, j);
            }
        }
        cell_bad += ok ? 0 : 1;
        auto d = distances_all_rootings(s, t.edge_count());
        for (int i = 1; i <= q.window(); ++i) {
            auto rooting = segment_tree_of(qt, q.tour, Segment{i, i + q.window()});
            if (d[static_cast<std::size_t>(i - 1)] != rooted_ted_oracle(t, rooting)) {
                ++dist_bad;
                break;
            }
        }
    }
    return {cell_bad == 0 && dist_bad == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(cells) + " cells; " + std::to_string(cell_bad) +
                " matrix mismatches, " + std::to_string(dist_bad) + " distance mismatches"};
}

Outcome subcubic_equivalence() {
    std::mt19937_64 rng(3003);
    Alphabet names;
    const int pairs = 500;
    int runs = 0;
    int bad = 0;
    for (int it = 0; it < pairs; ++it) {
        auto [t, qt] = testing::random_pair(rng, names, 10);
        TourContext q(qt);
        auto cubic = compute_S_cubic<DenseSimMatrix>(t, q);
        for (int delta : {1, 2, 3, std::max(1, t.edge_count())}) {
            SubcubicConfig cfg;
            cfg.delta = delta;
            SubcubicEngine<DenseSimMatrix> engine(t, q, cfg, std::ref(g_laws));
            ++runs;
            if (!equal_valid(engine.compute(), cubic)) {
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(runs) + " subcubic runs, " +
                          std::to_string(bad) + " differ from cubic"};
}

template <class M>
bool equals_naive(const M& got, const std::vector<std::vector<Score>>& expect) {
    for (int i = 1; i <= got.side(); ++i) {
        for (int j = i; j <= std::min(got.side(), i + got.window()); ++j) {
            if (got.value(i, j) != expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                return false;
            }
        }
    }
    return true;
}

Outcome matrix_laws() {
    std::mt19937_64 rng(3004);
    Alphabet names;
    const int pairs = 250;
    int mul_bad = 0;
    int star_bad = 0;
    for (int it = 0; it < pairs; ++it) {
        TourContext q(random_tree(uniform_int(rng, 1, 8), TreeShape::random, 2, rng, names));
        auto x = random_tree(uniform_int(rng, 0, 8), TreeShape::random, 2, rng, names);
        auto y = random_tree(uniform_int(rng, 0, 8), TreeShape::random, 2, rng, names);
        auto sx = compute_S_cubic<DenseSimMatrix>(x, q);
        auto sy = compute_S_cubic<DenseSimMatrix>(y, q);
        g_laws(sx, x.edge_count());
        g_laws(sy, y.edge_count());
        auto expect = testing::naive_star(sx, sy);
        mul_bad += equals_naive(mul_bounded(sx, sy, 2 * x.edge_count(), 2 * y.edge_count()), expect) ? 0 : 1;
        star_bad += equals_naive(star_similarity(sx, sy, naive_backend()), expect) ? 0 : 1;
        auto px = convert<PersistentSimMatrix>(sx);
        auto py = convert<PersistentSimMatrix>(sy);
        mul_bad += equals_naive(mul_bounded(px, py, 2 * x.edge_count(), 2 * y.edge_count()), expect) ? 0 : 1;
        star_bad += equals_naive(star_similarity(px, py, naive_backend()), expect) ? 0 : 1;
    }
    bool ok = g_laws.violations == 0 && mul_bad == 0 && star_bad == 0;
    std::string detail = std::to_string(g_laws.matrices) + " matrices checked, " + std::to_string(g_laws.violations) +
                         " law violations";
    if (g_laws.violations > 0) {
        detail += " (first: " + g_laws.first + ")";
    }
    detail += "; " + std::to_string(2 * pairs) + " operand pairs per product: mul_bounded " +
              std::to_string(mul_bad) + " wrong, star_similarity " + std::to_string(star_bad) + " wrong";
    return {ok, detail};
}

Outcome fix_invalid_check() {
    std::mt19937_64 rng(3005);
    Alphabet names;
    int law_bad = 0;
    int brute_bad = 0;
    int checked = 0;
    int max_side = 0;
    for (int it = 0; it < 300; ++it) {
        auto [t, qt] = testing::random_pair(rng, names, 10);
        TourContext q(qt);
        auto s = compute_S_cubic<DenseSimMatrix>(t, q);
        auto fixed = fix_invalid(s);
        law_bad += check_fixed_laws(fixed).has_value() ? 1 : 0;
        if (it % 2 == 0) {
            brute_bad += fixed == testing::brute_fix_invalid(s) ? 0 : 1;
            ++checked;
            max_side = std::max(max_side, q.side());
        }
    }
    return {law_bad == 0 && brute_bad == 0,
            "300 transformed matrices, " + std::to_string(law_bad) + " law violations; " + std::to_string(checked) +
                " compared with brute force (sides up to " + std::to_string(max_side) + "), " +
                std::to_string(brute_bad) + " mismatches"};
}

Outcome restricted_oracle() {
    std::mt19937_64 rng(3006);
    Alphabet names;
    int instances = 0;
    int matrices = 0;
    int bad = 0;
    while (instances < 150) {
        auto t = random_tree(uniform_int(rng, 1, 7), TreeShape::random, 2, rng, names).with_fresh_origins();
        auto pick = testing::random_hat(rng, t, 3, true);
        if (!pick) {
            continue;
        }
        ++instances;
        TourContext q(random_tree(uniform_int(rng, 1, 6), TreeShape::random, 2, rng, names));
        auto h = hat_decompose(t, pick->outer, pick->inner);
        CubicEngine<DenseSimMatrix> engine(q);
        FlankMatrices<DenseSimMatrix> fl(h, engine);
        auto s_t1 = compute_S_cubic<DenseSimMatrix>(testing::segment_tree(t, pick->inner), q);
        SegmentSizes sizes(t);
        Score bound = 2 * (sizes.size(pick->outer) - sizes.size(pick->inner));
        auto hat = restricted_matrices(t, h, s_t1, fl, q, bound);
        for (int x = 1; x <= h.k(); ++x) {
            ++matrices;
            int p = h.path[static_cast<std::size_t>(x - 1)];
            auto expect = testing::brute_restricted(t.extract(t.parent(p), t.child_index(p), t.child_index(p) + 1), q);
            if (!equals_naive(hat[static_cast<std::size_t>(x - 1)], expect)) {
                ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(instances) + " hats, " + std::to_string(matrices) + " restricted matrices, " +
                          std::to_string(bad) + " mismatches"};
}

Outcome transition_bound() {
    std::mt19937_64 rng(3007);
    Alphabet names;
    double worst = 0;
    std::ostringstream per_n;
    for (int n : {64, 128, 256, 512}) {
        int delta = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        double high = 0;
        for (int k = 0; k < 10; ++k) {
            auto t = random_tree(n, TreeShape::random, 2, rng, names);
            double ratio = static_cast<double>(transition_census(t, delta).total()) * delta / n;
            high = std::max(high, ratio);
        }
        worst = std::max(worst, high);
        per_n << " n=" << n << ":" << fmt("%.3f", high);
    }
    return {worst <= 8.0, "max ratio" + per_n.str()};
}

Outcome scaling() {
    std::mt19937_64 rng(3008);
    Alphabet names;
    std::vector<double> xs;
    std::vector<double> ys;
    std::ostringstream times;
    for (int n : {50, 100, 200, 400}) {
        auto t = random_tree(n, TreeShape::random, 4, rng, names);
        TourContext q(random_tree(n, TreeShape::random, 4, rng, names));
        auto start = std::chrono::steady_clock::now();
        auto s = compute_S_cubic<PersistentSimMatrix>(t, q);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        (void)s;
        xs.push_back(std::log(n));
        ys.push_back(std::log(secs));
        times << " n=" << n << ":" << fmt("%.2fs", secs);
    }
    double mx = 0;
    double my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k] / static_cast<double>(xs.size());
        my += ys[k] / static_cast<double>(ys.size());
    }
    double num = 0;
    double den = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        num += (xs[k] - mx) * (ys[k] - my);
        den += (xs[k] - mx) * (xs[k] - mx);
    }
    double slope = num / den;
    return {slope >= 2.5 && slope <= 3.5, "slope " + fmt("%.2f", slope) + times.str()};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        bool gating;
    };
    // matrix_laws reads the tally filled by the cubic and subcubic runs, so
    // it has to come after them
    std::vector<Criterion> criteria{
        {"oracle-triangle", oracle_triangle, true},
        {"rooting-invariance", rooting_invariance, true},
        {"cubic-correctness", cubic_correctness, true},
        {"subcubic-equivalence", subcubic_equivalence, true},
        {"matrix-laws", matrix_laws, true},
        {"fix-invalid", fix_invalid_check, true},
        {"restricted-matrix-oracle", restricted_oracle, true},
        {"transition-bound", transition_bound, true},
        {"scaling-smoke (soft)", scaling, false},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << fmt("%.1f", secs) << "s]"
                  << std::endl;
        if (!o.pass && c.gating) {
            ++failed;
        }
    }
    return failed == 0 ? 0 : 1;
}
