#pragma once

// Seeded random trees for tests, sweeps and benchmarks.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uted/tree.hpp"

namespace uted {

enum class TreeShape { random, path, star, caterpillar };

inline TreeShape parse_shape(std::string_view name) {
    if (name == "random") {
        return TreeShape::random;
    }
    if (name == "path") {
        return TreeShape::path;
    }
    if (name == "star") {
        return TreeShape::star;
    }
    if (name == "caterpillar") {
        return TreeShape::caterpillar;
    }
    throw std::invalid_argument("unknown tree shape: " + std::string(name));
}

/// Uniform integer in [0, n). Implemented here rather than with
/// std::uniform_int_distribution so the output does not depend on the
/// standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_below: empty range");
    }
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n + 1) % n;
    std::uint64_t x = rng();
    while (x > limit) {
        x = rng();
    }
    return x % n;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// A tree with `edges` edges whose labels are drawn from x0..x{alphabet-1}.
/// random: each new vertex picks a uniform parent and a uniform slot among
/// that parent's children.
inline LabeledTree random_tree(int edges, TreeShape shape, int alphabet, std::mt19937_64& rng, Alphabet& names) {
    if (edges < 0 || alphabet < 1) {
        throw std::invalid_argument("random_tree: bad size or alphabet");
    }
    const int n = edges + 1;
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    auto attach = [&](int parent, int v, bool random_slot) {
        auto& ch = children[static_cast<std::size_t>(parent)];
        auto slot = random_slot ? uniform_below(rng, ch.size() + 1) : ch.size();
        ch.insert(ch.begin() + static_cast<std::ptrdiff_t>(slot), v);
    };
    switch (shape) {
        case TreeShape::random:
            for (int v = 1; v < n; ++v) {
                attach(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v))), v, true);
            }
            break;
        case TreeShape::path:
            for (int v = 1; v < n; ++v) {
                attach(v - 1, v, false);
            }
            break;
        case TreeShape::star:
            for (int v = 1; v < n; ++v) {
                attach(0, v, false);
            }
            break;
        case TreeShape::caterpillar: {
            int spine = (edges + 1) / 2;
            for (int v = 1; v <= spine; ++v) {
                attach(v - 1, v, false);
            }
            for (int v = spine + 1; v < n; ++v) {
                attach(static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(spine))), v, true);
            }
            break;
        }
    }
    std::vector<Label> label(static_cast<std::size_t>(n));
    for (int v = 1; v < n; ++v) {
        label[static_cast<std::size_t>(v)] =
            names.intern("x" + std::to_string(uniform_below(rng, static_cast<std::uint64_t>(alphabet))));
    }
    std::vector<Bracket> tokens;
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [v, k] = stack.back();
        const auto& ch = children[static_cast<std::size_t>(v)];
        if (k < ch.size()) {
            stack.back().second++;
            int c = ch[k];
            tokens.push_back(Bracket{true, label[static_cast<std::size_t>(c)], -1});
            stack.emplace_back(c, 0);
        } else {
            if (v != 0) {
                tokens.push_back(Bracket{false, label[static_cast<std::size_t>(v)], -1});
            }
            stack.pop_back();
        }
    }
    return LabeledTree::from_brackets(tokens).with_fresh_origins();
}

}  // namespace uted
