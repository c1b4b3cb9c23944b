#pragma once

// Ordered, edge-labeled trees.
//
// A LabeledTree is stored in rooted form with vertices numbered in preorder
// (vertex 0 is the root). Every non-root vertex v owns the edge to its parent;
// that edge has id v - 1. The unrooted view is read off the same structure:
// the cyclic order of neighbors at a vertex is (parent, children...), or just
// (children...) at the root.
//
// Trees are immutable values. Structural operations (contraction, composition,
// extraction of child blocks, re-rooting) all go through the bracket form of a
// tree: its Euler walk written as a balanced sequence of open/close tokens.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <span>
#include <vector>

namespace uted {

struct Label {
    std::int32_t id = -1;

    friend bool operator==(Label, Label) = default;
    friend auto operator<=>(Label, Label) = default;
};

/// Weight of matching two edges: 2 for equal labels, 1 otherwise.
constexpr int eta(Label a, Label b) { return a == b ? 2 : 1; }

/// Interning table for edge labels. Labels compare equal iff their names do.
class Alphabet {
public:
    Label intern(std::string_view name) {
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) {
            return Label{it->second};
        }
        auto id = static_cast<std::int32_t>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return Label{id};
    }

    std::optional<Label> find(std::string_view name) const {
        auto it = ids_.find(std::string(name));
        if (it == ids_.end()) {
            return std::nullopt;
        }
        return Label{it->second};
    }

    const std::string& name(Label label) const {
        if (label.id < 0 || static_cast<std::size_t>(label.id) >= names_.size()) {
            throw std::out_of_range("label id not in alphabet");
        }
        return names_[static_cast<std::size_t>(label.id)];
    }

    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::int32_t> ids_;
};

/// One token of the bracket form. `origin` identifies the edge in the tree
/// this one was derived from, so that sub-trees can be subtracted later.
struct Bracket {
    bool open = true;
    Label label;
    int origin = -1;
};

class LabeledTree {
public:
    /// The single-vertex tree.
    LabeledTree() : parent_{-1}, label_{Label{}}, origin_{-1}, children_(1), subtree_end_{1}, child_index_{-1} {}

    /// Builds a tree from a balanced bracket sequence. Each open token adds a
    /// child (carrying the token's label and origin) below the current vertex.
    static LabeledTree from_brackets(std::span<const Bracket> tokens) {
        LabeledTree t;
        std::vector<int> stack{0};
        for (const auto& tok : tokens) {
            if (tok.open) {
                int v = static_cast<int>(t.parent_.size());
                int p = stack.back();
                t.child_index_.push_back(static_cast<int>(t.children_[static_cast<std::size_t>(p)].size()));
                t.children_[static_cast<std::size_t>(p)].push_back(v);
                t.parent_.push_back(p);
                t.label_.push_back(tok.label);
                t.origin_.push_back(tok.origin);
                t.children_.emplace_back();
                t.subtree_end_.push_back(0);
                stack.push_back(v);
            } else {
                if (stack.size() < 2) {
                    throw std::invalid_argument("unbalanced bracket sequence");
                }
                t.subtree_end_[static_cast<std::size_t>(stack.back())] = static_cast<int>(t.parent_.size());
                stack.pop_back();
            }
        }
        if (stack.size() != 1) {
            throw std::invalid_argument("unbalanced bracket sequence");
        }
        t.subtree_end_[0] = static_cast<int>(t.parent_.size());
        return t;
    }

    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int edge_count() const { return vertex_count() - 1; }
    bool empty() const { return edge_count() == 0; }

    static constexpr int root() { return 0; }
    int parent(int v) const { return parent_[idx(v)]; }
    const std::vector<int>& children(int v) const { return children_[idx(v)]; }
    int degree(int v) const { return static_cast<int>(children_[idx(v)].size()); }
    /// Position of v in its parent's child list.
    int child_index(int v) const { return child_index_[idx(v)]; }
    /// Preorder range of v's subtree is [v, subtree_end(v)).
    int subtree_end(int v) const { return subtree_end_[idx(v)]; }
    /// Edges strictly below v.
    int subtree_edges(int v) const { return subtree_end(v) - v - 1; }
    bool is_ancestor(int a, int v) const { return a <= v && v < subtree_end(a); }

    static constexpr int edge_of(int v) { return v - 1; }
    static constexpr int lower_vertex(int e) { return e + 1; }

    /// Label of the edge from v to its parent.
    Label label(int v) const { return label_[idx(v)]; }
    Label edge_label(int e) const { return label(lower_vertex(e)); }
    int origin(int v) const { return origin_[idx(v)]; }

    /// Neighbors of v in cyclic order: parent first (if any), then children.
    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        if (v != root()) {
            out.push_back(parent(v));
        }
        const auto& ch = children(v);
        out.insert(out.end(), ch.begin(), ch.end());
        return out;
    }

    std::vector<Bracket> brackets() const { return brackets(root(), 0, degree(root())); }

    /// Bracket form of the children lo..hi-1 of v together with their subtrees
    /// and the edges from v.
    std::vector<Bracket> brackets(int v, int lo, int hi) const {
        std::vector<Bracket> out;
        const auto& ch = children(v);
        for (int c = lo; c < hi; ++c) {
            append_subtree(ch[static_cast<std::size_t>(c)], out);
        }
        return out;
    }

    /// Tree rooted at v holding only the children lo..hi-1 of v.
    LabeledTree extract(int v, int lo, int hi) const {
        if (lo < 0 || hi > degree(v) || lo > hi) {
            throw std::out_of_range("child interval out of range");
        }
        return from_brackets(brackets(v, lo, hi));
    }

    /// Returns a copy whose origins are the edge ids of this tree.
    LabeledTree with_fresh_origins() const {
        LabeledTree t = *this;
        for (int v = 1; v < vertex_count(); ++v) {
            t.origin_[idx(v)] = edge_of(v);
        }
        return t;
    }

    /// Shape and labels only; origins are ignored.
    friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
        return a.parent_ == b.parent_ && a.label_ == b.label_;
    }

private:
    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

    void append_subtree(int v, std::vector<Bracket>& out) const {
        // iterative: trees can be deep paths
        std::vector<std::pair<int, std::size_t>> stack{{v, 0}};
        out.push_back(Bracket{true, label(v), origin(v)});
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            const auto& ch = children(u);
            if (next < ch.size()) {
                int c = ch[next++];
                out.push_back(Bracket{true, label(c), origin(c)});
                stack.emplace_back(c, 0);
            } else {
                out.push_back(Bracket{false, label(u), origin(u)});
                stack.pop_back();
            }
        }
    }

    std::vector<int> parent_;
    std::vector<Label> label_;
    std::vector<int> origin_;
    std::vector<std::vector<int>> children_;
    std::vector<int> subtree_end_;
    std::vector<int> child_index_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + what), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

inline constexpr std::string_view kRootLabel = "root";

namespace detail {

inline bool is_label_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

class TreeParser {
public:
    TreeParser(std::string_view text, Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    LabeledTree parse() {
        skip_ws();
        expect('(');
        std::string_view top = read_label();
        std::vector<Bracket> tokens;
        if (top == kRootLabel) {
            parse_children(tokens);
        } else {
            tokens.push_back(Bracket{true, alphabet_.intern(top), -1});
            parse_children(tokens);
            tokens.push_back(Bracket{false, tokens.front().label, -1});
        }
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(pos_, "trailing characters after tree");
        }
        int next_id = 0;
        for (auto& tok : tokens) {
            if (tok.open) {
                tok.origin = next_id++;
            }
        }
        return LabeledTree::from_brackets(tokens);
    }

private:
    // children := tree* ')'
    void parse_children(std::vector<Bracket>& tokens) {
        std::vector<Label> open;
        std::size_t depth = 0;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) {
                throw ParseError(pos_, "unexpected end of input, expected '(' or ')'");
            }
            char c = text_[pos_];
            if (c == ')') {
                ++pos_;
                if (depth == 0) {
                    return;
                }
                --depth;
                tokens.push_back(Bracket{false, open.back(), -1});
                open.pop_back();
            } else if (c == '(') {
                ++pos_;
                std::size_t at = pos_;
                std::string_view name = read_label();
                if (name == kRootLabel) {
                    throw ParseError(at, "label 'root' is reserved for the outermost group");
                }
                Label label = alphabet_.intern(name);
                tokens.push_back(Bracket{true, label, -1});
                open.push_back(label);
                ++depth;
            } else {
                throw ParseError(pos_, std::string("unexpected character '") + c + "'");
            }
        }
    }

    std::string_view read_label() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_label_char(text_[pos_])) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError(start, "expected a label");
        }
        return text_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw ParseError(pos_, std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    std::string_view text_;
    Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the parenthesized tree format. "(a (b) (c))" is an edge `a` hanging
/// from the root whose lower end has children `b` and `c`; "(root (a) (b))"
/// is a root with two children; "(root)" is the single-vertex tree. Origins
/// are set to the edge ids of the result.
inline LabeledTree parse_tree(std::string_view text, Alphabet& alphabet) {
    return detail::TreeParser(text, alphabet).parse();
}

/// Inverse of parse_tree. Roots of degree 1 use the edge-hung form.
inline std::string format_tree(const LabeledTree& t, const Alphabet& alphabet) {
    std::string out;
    auto emit = [&](const std::vector<Bracket>& tokens) {
        for (const auto& tok : tokens) {
            if (tok.open) {
                if (!out.empty() && out.back() != '(') {
                    out += ' ';
                }
                out += '(';
                out += alphabet.name(tok.label);
            } else {
                out += ')';
            }
        }
    };
    if (t.degree(LabeledTree::root()) == 1) {
        emit(t.brackets());
    } else {
        out = "(";
        out += kRootLabel;
        emit(t.brackets());
        out += ')';
    }
    return out;
}

/// T1 + T2: merge the roots, edges of T1 to the left.
inline LabeledTree compose(const LabeledTree& left, const LabeledTree& right) {
    auto tokens = left.brackets();
    auto rest = right.brackets();
    tokens.insert(tokens.end(), rest.begin(), rest.end());
    return LabeledTree::from_brackets(tokens);
}

/// Contracts every edge whose lower vertex satisfies `contract`. Children of a
/// contracted vertex take its place in the parent's child list, in order.
inline LabeledTree contract_edges(const LabeledTree& t, const std::function<bool(int)>& contract) {
    std::vector<Bracket> kept;
    std::vector<bool> drop_stack;
    // bracket order is preorder, so open tokens arrive as vertices 1, 2, ...
    int next_vertex = 1;
    for (const auto& tok : t.brackets()) {
        if (tok.open) {
            bool drop = contract(next_vertex++);
            drop_stack.push_back(drop);
            if (!drop) {
                kept.push_back(tok);
            }
        } else {
            if (!drop_stack.back()) {
                kept.push_back(tok);
            }
            drop_stack.pop_back();
        }
    }
    return LabeledTree::from_brackets(kept);
}

/// T2 - T1: contracts in T2 every edge that appears in T1, matched by origin.
inline LabeledTree subtract(const LabeledTree& whole, const LabeledTree& part) {
    std::unordered_set<int> removed;
    for (int v = 1; v < part.vertex_count(); ++v) {
        removed.insert(part.origin(v));
    }
    std::unordered_set<int> present;
    for (int v = 1; v < whole.vertex_count(); ++v) {
        present.insert(whole.origin(v));
    }
    for (int o : removed) {
        if (!present.contains(o)) {
            throw std::invalid_argument("subtract: tree is not contained in the minuend");
        }
    }
    return contract_edges(whole, [&](int v) { return removed.contains(whole.origin(v)); });
}

/// L_T: subtree of the leftmost child of the root with the edge to the root.
inline LabeledTree left_tree(const LabeledTree& t) {
    if (t.degree(LabeledTree::root()) == 0) {
        throw std::invalid_argument("left_tree: root has no children");
    }
    return t.extract(LabeledTree::root(), 0, 1);
}

/// R_T: subtree of the rightmost child of the root with the edge to the root.
inline LabeledTree right_tree(const LabeledTree& t) {
    int d = t.degree(LabeledTree::root());
    if (d == 0) {
        throw std::invalid_argument("right_tree: root has no children");
    }
    return t.extract(LabeledTree::root(), d - 1, d);
}

/// Rooting of the unrooted view of `t` at vertex v whose first child is the
/// neighbor at position `first` of v's cyclic order. Origins are edge ids of t.
inline LabeledTree reroot(const LabeledTree& t, int v, int first) {
    auto nb = t.neighbors(v);
    if (first < 0 || static_cast<std::size_t>(first) >= nb.size()) {
        throw std::out_of_range("reroot: neighbor index out of range");
    }
    auto edge_between = [&](int a, int b) { return t.parent(b) == a ? LabeledTree::edge_of(b) : LabeledTree::edge_of(a); };
    std::vector<Bracket> tokens;
    struct Frame {
        int vertex;
        int from;          // neighbor we arrived from, -1 at the new root
        std::vector<int> order;
        std::size_t next;
    };
    auto rotated = [&](int u, int start_after_or_at, bool at) {
        auto n = t.neighbors(u);
        std::vector<int> out;
        std::size_t k = 0;
        for (; k < n.size(); ++k) {
            if (n[k] == start_after_or_at) {
                break;
            }
        }
        std::size_t begin = at ? k : k + 1;
        std::size_t count = at ? n.size() : n.size() - 1;
        for (std::size_t s = 0; s < count; ++s) {
            out.push_back(n[(begin + s) % n.size()]);
        }
        return out;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{v, -1, rotated(v, nb[static_cast<std::size_t>(first)], true), 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.order.size()) {
            int w = f.order[f.next++];
            int e = edge_between(f.vertex, w);
            tokens.push_back(Bracket{true, t.edge_label(e), t.origin(LabeledTree::lower_vertex(e))});
            int u = f.vertex;
            stack.push_back(Frame{w, u, rotated(w, u, false), 0});
        } else {
            if (f.from >= 0) {
                int e = edge_between(f.from, f.vertex);
                tokens.push_back(Bracket{false, t.edge_label(e), t.origin(LabeledTree::lower_vertex(e))});
            }
            stack.pop_back();
        }
    }
    return LabeledTree::from_brackets(tokens);
}

/// All 2(n-1) rootings of the unrooted view, ordered by (vertex, first
/// neighbor). Symmetric trees yield duplicates; they are kept.
inline std::vector<LabeledTree> enumerate_rootings(const LabeledTree& t) {
    if (t.edge_count() < 1) {
        throw std::invalid_argument("enumerate_rootings: tree has no edges");
    }
    std::vector<LabeledTree> out;
    out.reserve(static_cast<std::size_t>(2 * t.edge_count()));
    for (int v = 0; v < t.vertex_count(); ++v) {
        int deg = static_cast<int>(t.neighbors(v).size());
        for (int s = 0; s < deg; ++s) {
            out.push_back(reroot(t, v, s));
        }
    }
    return out;
}

}  // namespace uted
