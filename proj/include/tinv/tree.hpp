#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tinv/diagram.hpp"

namespace tinv {

// One endpoint on a tree component: its role and the component holding the other end.
struct TreeToken {
    Role role;
    int partner;
    friend bool operator==(const TreeToken&, const TreeToken&) = default;
};

// Tree diagram over leaf positions 1..size(). Every non-trunk component carries exactly one
// tail, placed after all of its heads; an arrow is named by the component holding its tail.
// The default value is the empty diagram: one leaf, no arrows.
class TreeDiagram {
public:
    TreeDiagram() : trunk_(1), order_(1) {}

    TreeDiagram(int trunk, std::vector<std::vector<TreeToken>> order) : trunk_(trunk), order_(std::move(order)) {
        const int r = size();
        if (r < 1 || trunk_ < 1 || trunk_ > r) throw domain_error("tree trunk out of range");
        head_.assign(r + 1, 0);
        std::vector<int> heads_from(r + 1, 0);
        for (int c = 1; c <= r; ++c) {
            const auto& seq = order_[c - 1];
            for (std::size_t p = 0; p < seq.size(); ++p) {
                const auto& t = seq[p];
                if (t.partner < 1 || t.partner > r || t.partner == c) throw domain_error("tree arrow has a bad partner");
                if (t.role == Role::tail) {
                    if (c == trunk_) throw domain_error("trunk carries a tail");
                    if (p + 1 != seq.size()) throw domain_error("tail must be the last endpoint of its component");
                    head_[c] = t.partner;
                } else {
                    ++heads_from[t.partner];
                }
            }
            if (c != trunk_ && head_[c] == 0) throw domain_error("leaf without a tail");
        }
        for (int c = 1; c <= r; ++c) {
            if (c == trunk_) {
                if (heads_from[c] != 0) throw domain_error("head paired with the trunk");
                continue;
            }
            if (heads_from[c] != 1) throw domain_error("tail without a matching head");
            int h = head_[c];
            const auto& hs = order_[h - 1];
            if (std::count(hs.begin(), hs.end(), TreeToken{Role::head, c}) != 1)
                throw domain_error("tail without a matching head");
            int steps = 0;
            for (int x = c; x != trunk_; x = head_[x])
                if (++steps > r) throw domain_error("arrows do not form a tree");
        }
    }

    int size() const { return static_cast<int>(order_.size()); }
    int trunk() const { return trunk_; }
    bool empty() const { return size() == 1; }
    int arrow_count() const { return size() - 1; }
    const std::vector<TreeToken>& component(int c) const { return order_.at(c - 1); }
    const std::vector<std::vector<TreeToken>>& order() const { return order_; }
    // Component holding the head of the arrow whose tail is on c.
    int head_of(int c) const { return head_.at(c); }
    int left_leaves() const { return trunk_ - 1; }
    int right_leaves() const { return size() - trunk_; }

    std::string key() const {
        std::string s;
        for (int c = 1; c <= size(); ++c) {
            if (c > 1) s += '|';
            bool first = true;
            for (const auto& t : order_[c - 1]) {
                if (!first) s += ',';
                first = false;
                s += t.role == Role::head ? 'h' : 't';
                s += std::to_string(t.partner);
            }
        }
        return s;
    }

    friend bool operator==(const TreeDiagram& a, const TreeDiagram& b) {
        return a.trunk_ == b.trunk_ && a.order_ == b.order_;
    }

private:
    int trunk_;
    std::vector<std::vector<TreeToken>> order_;
    std::vector<int> head_{0};
};

// Key with leaf positions replaced by the labels in I, e.g. "1:h2,h3 2:t1 3:t1".
inline std::string labeled_key(const TreeDiagram& a, const std::vector<int>& I) {
    if (static_cast<int>(I.size()) != a.size()) throw domain_error("label set size differs from tree size");
    std::string s;
    for (int c = 1; c <= a.size(); ++c) {
        if (c > 1) s += ' ';
        s += std::to_string(I[c - 1]) + ':';
        bool first = true;
        for (const auto& t : a.component(c)) {
            if (!first) s += ',';
            first = false;
            s += t.role == Role::head ? 'h' : 't';
            s += std::to_string(I[t.partner - 1]);
        }
    }
    return s;
}

// Inverse of key(); the trunk is the component without a tail (position 1 for the empty key).
inline TreeDiagram tree_from_key(const std::string& key) {
    std::vector<std::vector<TreeToken>> order(1);
    std::size_t i = 0;
    while (i < key.size()) {
        char ch = key[i];
        if (ch == '|') {
            order.emplace_back();
            ++i;
        } else if (ch == ',') {
            ++i;
        } else if (ch == 'h' || ch == 't') {
            std::size_t b = ++i;
            while (i < key.size() && std::isdigit(static_cast<unsigned char>(key[i]))) ++i;
            if (i == b) throw domain_error("bad tree key: " + key);
            order.back().push_back(TreeToken{ch == 'h' ? Role::head : Role::tail, std::stoi(key.substr(b, i - b))});
        } else {
            throw domain_error("bad tree key: " + key);
        }
    }
    int trunk = 1;
    for (std::size_t c = 0; c < order.size(); ++c)
        if (order[c].empty() || order[c].back().role != Role::tail) trunk = static_cast<int>(c) + 1;
    return TreeDiagram(trunk, std::move(order));
}

// Elementary trees: e has its head on 1 and tail on 2 (trunk 1); ebar is its mirror (trunk 2).
inline TreeDiagram elementary(bool bar = false) {
    if (!bar) return TreeDiagram(1, {{{Role::head, 2}}, {{Role::tail, 1}}});
    return TreeDiagram(2, {{{Role::tail, 2}}, {{Role::head, 1}}});
}

// (-1)^q with q the number of arrows whose tail component is left of the head component.
inline int sign_tree(const TreeDiagram& a) {
    int q = 0;
    for (int c = 1; c <= a.size(); ++c)
        if (c != a.trunk() && c < a.head_of(c)) ++q;
    return q % 2 ? -1 : 1;
}

// Planar iff arrows admit distinct depths compatible with every component's endpoint order and
// every arrow passes below the bottom end of each component strictly between its endpoints.
inline bool is_planar(const TreeDiagram& a) {
    const int r = a.size();
    std::vector<std::vector<int>> out(r + 1);
    std::vector<int> indeg(r + 1, 0);
    auto arrow_of = [](int c, const TreeToken& t) { return t.role == Role::tail ? c : t.partner; };
    auto edge = [&](int u, int v) {
        out[u].push_back(v);
        ++indeg[v];
    };
    for (int c = 1; c <= r; ++c) {
        const auto& seq = a.component(c);
        for (std::size_t p = 1; p < seq.size(); ++p) edge(arrow_of(c, seq[p - 1]), arrow_of(c, seq[p]));
    }
    for (int c = 1; c <= r; ++c) {
        if (c == a.trunk()) continue;
        const int h = a.head_of(c);
        for (int k = std::min(h, c) + 1; k < std::max(h, c); ++k) {
            if (k == a.trunk()) return false;
            edge(k, c);
        }
    }
    std::vector<int> ready;
    for (int c = 1; c <= r; ++c)
        if (c != a.trunk() && indeg[c] == 0) ready.push_back(c);
    int done = 0;
    while (!ready.empty()) {
        int u = ready.back();
        ready.pop_back();
        ++done;
        for (int v : out[u])
            if (--indeg[v] == 0) ready.push_back(v);
    }
    return done == r - 1;
}

// Leaf maps of P <_k Q: where leaf p of P and leaf q of Q land in the stacked tree.
struct StackMaps {
    std::vector<int> p;  // index 1..|P|
    std::vector<int> q;  // index 1..|Q|
    int trunk;
};

inline StackMaps stack_maps(int n, int r, int k, int m, int s) {
    StackMaps sm;
    sm.p.assign(n + 1, 0);
    sm.q.assign(m + 1, 0);
    for (int x = 1; x <= n; ++x) sm.p[x] = x < k ? x : (x == k ? k + s - 1 : x + m - 1);
    for (int y = 1; y <= m; ++y) sm.q[y] = k + y - 1;
    sm.trunk = r < k ? r : (r > k ? r + m - 1 : r + s - 1);
    return sm;
}

inline StackMaps stack_maps(const TreeDiagram& P, int k, const TreeDiagram& Q) {
    return stack_maps(P.size(), P.trunk(), k, Q.size(), Q.trunk());
}

// Glues the trunk of Q onto leaf k of P. On the glued component Q's endpoints come first.
inline TreeDiagram stack(const TreeDiagram& P, int k, const TreeDiagram& Q) {
    const int n = P.size();
    const int m = Q.size();
    if (k < 1 || k > n) throw domain_error("stacking leaf out of range");
    const StackMaps sm = stack_maps(P, k, Q);
    std::vector<std::vector<TreeToken>> order(n + m - 1);
    auto put = [](std::vector<TreeToken>& dst, const std::vector<TreeToken>& src, const std::vector<int>& map) {
        for (const auto& t : src) dst.push_back(TreeToken{t.role, map[t.partner]});
    };
    for (int y = 1; y <= m; ++y) put(order[sm.q[y] - 1], Q.component(y), sm.q);
    for (int x = 1; x <= n; ++x) put(order[sm.p[x] - 1], P.component(x), sm.p);
    return TreeDiagram(sm.trunk, std::move(order));
}

namespace detail {

inline std::vector<TreeDiagram> sorted_unique(std::vector<TreeDiagram> v) {
    std::map<std::string, TreeDiagram> by_key;
    for (auto& a : v) by_key.try_emplace(a.key(), std::move(a));
    std::vector<TreeDiagram> out;
    out.reserve(by_key.size());
    for (auto& [k, a] : by_key) out.push_back(std::move(a));
    return out;
}

struct TreeCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::vector<TreeDiagram>> sets;
};

inline TreeCache& tree_cache() {
    static TreeCache c;
    return c;
}

inline std::vector<TreeDiagram> generate_rec(int n, int r) {
    if (n == 1) return {TreeDiagram()};
    {
        auto& c = tree_cache();
        std::lock_guard lock(c.mu);
        if (auto it = c.sets.find({n, r}); it != c.sets.end()) return it->second;
    }
    const TreeDiagram e = elementary(false);
    const TreeDiagram eb = elementary(true);
    std::vector<TreeDiagram> out;
    if (r >= 2) {
        for (const auto& a : generate_rec(n - 1, r - 1)) {
            for (int k = 1; k <= r - 2; ++k) out.push_back(stack(a, k, e));
            for (int j = 1; j <= r - 1; ++j) out.push_back(stack(a, j, eb));
        }
    }
    if (r <= n - 1) {
        for (const auto& a : generate_rec(n - 1, r)) {
            for (int k = r; k <= n - 1; ++k) out.push_back(stack(a, k, e));
            for (int j = r + 1; j <= n - 1; ++j) out.push_back(stack(a, j, eb));
        }
    }
    out = sorted_unique(std::move(out));
    auto& c = tree_cache();
    std::lock_guard lock(c.mu);
    c.sets.emplace(std::pair{n, r}, out);
    return out;
}

}  // namespace detail

// The planar tree diagrams on leaves 1..r with trunk t, built by repeated elementary stacking.
inline std::vector<TreeDiagram> generate(int r, int t) {
    if (t < 1 || t > std::max(r, 1)) throw domain_error("trunk outside the leaf range");
    if (r < 2) return {};
    return detail::generate_rec(r, t);
}

// Direct search over all arrow sets and head orders, filtered by is_planar.
inline std::vector<TreeDiagram> enumerate_all(int r, int t) {
    if (r > 6) throw domain_error("enumerate_all is limited to 6 leaves");
    if (t < 1 || t > std::max(r, 1)) throw domain_error("trunk outside the leaf range");
    if (r < 2) return {};
    std::vector<TreeDiagram> out;
    std::vector<int> head(r + 1, 0);
    std::vector<int> leaves;
    for (int c = 1; c <= r; ++c)
        if (c != t) leaves.push_back(c);

    auto reaches_trunk = [&] {
        for (int c : leaves) {
            int x = c;
            for (int steps = 0; x != t; ++steps) {
                if (steps > r) return false;
                x = head[x];
            }
        }
        return true;
    };
    auto orders = [&] {
        std::vector<std::vector<int>> heads(r + 1);
        for (int c : leaves) heads[head[c]].push_back(c);
        for (auto& h : heads) std::sort(h.begin(), h.end());
        for (;;) {
            std::vector<std::vector<TreeToken>> order(r);
            for (int c = 1; c <= r; ++c) {
                for (int p : heads[c]) order[c - 1].push_back({Role::head, p});
                if (c != t) order[c - 1].push_back({Role::tail, head[c]});
            }
            TreeDiagram a(t, std::move(order));
            if (is_planar(a)) out.push_back(std::move(a));
            int c = 1;
            while (c <= r && !std::next_permutation(heads[c].begin(), heads[c].end())) ++c;
            if (c > r) break;
        }
    };
    std::size_t idx = 0;
    auto rec = [&](auto&& self) -> void {
        if (idx == leaves.size()) {
            if (reaches_trunk()) orders();
            return;
        }
        const int c = leaves[idx];
        for (int h = 1; h <= r; ++h) {
            if (h == c) continue;
            head[c] = h;
            ++idx;
            self(self);
            --idx;
        }
        head[c] = 0;
    };
    rec(rec);
    return detail::sorted_unique(std::move(out));
}

// A = P <_v ((x <_2 R) <_1 S), x = e when the head of the arrow is left of its tail, else ebar.
// With x = e, R hangs below the tail component and S collects what sits above the head;
// with x = ebar the two roles swap, matching the leaves of ebar.
struct Decomposition {
    TreeDiagram P, R, S;
    bool bar;
    int v;
    TreeDiagram Q() const { return stack(stack(elementary(bar), 2, R), 1, S); }
    TreeDiagram recompose() const { return stack(P, v, Q()); }
};

namespace detail {

// Subdiagram on the given components (sorted), renumbered by rank; tokens of each kept
// component come from `tokens`.
inline TreeDiagram extract(const std::vector<int>& comps, int trunk, const std::vector<std::vector<TreeToken>>& tokens) {
    std::map<int, int> rank;
    for (std::size_t x = 0; x < comps.size(); ++x) rank[comps[x]] = static_cast<int>(x) + 1;
    std::vector<std::vector<TreeToken>> order(comps.size());
    for (std::size_t x = 0; x < comps.size(); ++x)
        for (const auto& t : tokens[comps[x] - 1]) order[x].push_back(TreeToken{t.role, rank.at(t.partner)});
    return TreeDiagram(rank.at(trunk), std::move(order));
}

inline void collect_subtree(const TreeDiagram& a, int x, std::vector<int>& acc) {
    acc.push_back(x);
    for (const auto& t : a.component(x))
        if (t.role == Role::head) collect_subtree(a, t.partner, acc);
}

}  // namespace detail

// The arrow is named by its tail component j.
inline Decomposition decompose(const TreeDiagram& a, int j) {
    if (j < 1 || j > a.size() || j == a.trunk()) throw domain_error("no arrow with that tail component");
    const int i = a.head_of(j);
    const auto& seq_i = a.component(i);
    const auto at = std::find(seq_i.begin(), seq_i.end(), TreeToken{Role::head, j});
    const std::size_t hpos = static_cast<std::size_t>(at - seq_i.begin());

    std::vector<std::vector<TreeToken>> tokens = a.order();

    std::vector<int> below;
    detail::collect_subtree(a, j, below);
    std::sort(below.begin(), below.end());
    std::vector<std::vector<TreeToken>> tb = tokens;
    tb[j - 1].pop_back();
    TreeDiagram Rj = detail::extract(below, j, tb);

    std::vector<int> above{i};
    for (std::size_t p = 0; p < hpos; ++p) detail::collect_subtree(a, seq_i[p].partner, above);
    std::sort(above.begin(), above.end());
    std::vector<std::vector<TreeToken>> ta = tokens;
    ta[i - 1].assign(seq_i.begin(), seq_i.begin() + static_cast<std::ptrdiff_t>(hpos));
    TreeDiagram Si = detail::extract(above, i, ta);

    std::vector<bool> gone(a.size() + 1, false);
    for (int x : below) gone[x] = true;
    for (int x : above) gone[x] = x != i;
    std::vector<int> rest;
    for (int x = 1; x <= a.size(); ++x)
        if (!gone[x]) rest.push_back(x);
    std::vector<std::vector<TreeToken>> tr = tokens;
    tr[i - 1].assign(seq_i.begin() + static_cast<std::ptrdiff_t>(hpos) + 1, seq_i.end());
    TreeDiagram P = detail::extract(rest, a.trunk(), tr);
    const int v = static_cast<int>(std::find(rest.begin(), rest.end(), i) - rest.begin()) + 1;

    const bool bar = i > j;
    if (!bar) return Decomposition{std::move(P), std::move(Rj), std::move(Si), false, v};
    return Decomposition{std::move(P), std::move(Si), std::move(Rj), true, v};
}

// Formal integer combination of tree diagrams over one (I; j).
struct ArrowPolynomial {
    std::vector<int> I;
    int trunk = 0;  // a label from I
    std::map<std::string, std::pair<TreeDiagram, std::int64_t>> terms;

    void add(const TreeDiagram& a, std::int64_t coef) {
        if (coef == 0) return;
        auto [it, fresh] = terms.try_emplace(a.key(), a, coef);
        if (!fresh && (it->second.second += coef) == 0) terms.erase(it);
    }
};

struct SignedTree {
    TreeDiagram tree;
    int sign;
};

// generate(r, t) paired with signs, computed once per (r, t).
inline const std::vector<SignedTree>& signed_trees(int r, int t) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<SignedTree>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({r, t}); it != cache.end()) return it->second;
    }
    std::vector<SignedTree> v;
    for (auto& a : generate(r, t)) {
        const int s = sign_tree(a);
        v.push_back(SignedTree{std::move(a), s});
    }
    std::lock_guard lock(mu);
    return cache.try_emplace({r, t}, std::move(v)).first->second;
}

// Checks that I is strictly increasing with |I| >= 1 and j in I; returns the trunk's leaf position.
inline int trunk_position(const std::vector<int>& I, int j) {
    if (I.empty()) throw domain_error("empty index set");
    for (std::size_t k = 1; k < I.size(); ++k)
        if (I[k] <= I[k - 1]) throw domain_error("index set must be strictly increasing");
    auto it = std::find(I.begin(), I.end(), j);
    if (it == I.end()) throw domain_error("trunk " + std::to_string(j) + " is not in the index set");
    return static_cast<int>(it - I.begin()) + 1;
}

inline ArrowPolynomial tree_polynomial(const std::vector<int>& I, int j) {
    const int t = trunk_position(I, j);
    if (I.size() < 2) throw domain_error("tree polynomials need at least two indices");
    ArrowPolynomial p;
    p.I = I;
    p.trunk = j;
    for (const auto& a : generate(static_cast<int>(I.size()), t)) p.add(a, sign_tree(a));
    return p;
}

}  // namespace tinv
