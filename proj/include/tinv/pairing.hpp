#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tinv/diagram.hpp"
#include "tinv/tree.hpp"

namespace tinv {

enum class Condition { force, forbid };

namespace detail {

struct EndRef {
    int comp;                    // tree leaf position
    int index;                   // position in that component's token list
};

// Counts signed embeddings of the tree (leaf c labelled I[c-1]) into g by backtracking over
// the tree's arrows, parents before children. Arrow c is the one whose tail is on leaf c.
inline std::int64_t count_embeddings(const TreeDiagram& a, const std::vector<int>& I, const GaussDiagram& g,
                                     int fixed_arrow, int fixed_target, std::optional<Condition> cond) {
    const int r = a.size();
    if (r < 2) return 0;
    check_index_set(I, g.n());
    if (static_cast<int>(I.size()) != r) throw domain_error("label set size differs from tree size");

    std::vector<int> order;
    std::vector<int> frontier{a.trunk()};
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (const auto& t : a.component(x))
            if (t.role == Role::head) {
                order.push_back(t.partner);
                frontier.push_back(t.partner);
            }
    }

    std::vector<std::vector<int>> cands(r + 1);
    std::vector<EndRef> head_ref(r + 1), tail_ref(r + 1);
    for (int x = 1; x <= r; ++x) {
        const auto& seq = a.component(x);
        for (std::size_t p = 0; p < seq.size(); ++p) {
            if (seq[p].role == Role::head) head_ref[seq[p].partner] = {x, static_cast<int>(p)};
            else tail_ref[x] = {x, static_cast<int>(p)};
        }
    }
    for (int c : order) {
        const int hc = I[a.head_of(c) - 1];
        const int tc = I[c - 1];
        for (int ga = 0; ga < g.arrow_count(); ++ga) {
            const auto& ar = g.arrow(ga);
            if (ar.head != hc || ar.tail != tc) continue;
            if (c == fixed_arrow && cond) {
                if (*cond == Condition::force && ga != fixed_target) continue;
                if (*cond == Condition::forbid && ga == fixed_target) continue;
            }
            cands[c].push_back(ga);
        }
        if (cands[c].empty()) return 0;
    }

    // assigned[x][p] = position in g of the image of token p of leaf x, or -1.
    std::vector<std::vector<int>> assigned(r + 1);
    for (int x = 1; x <= r; ++x) assigned[x].assign(a.component(x).size(), -1);

    auto fits = [&](const EndRef& e, int gpos) {
        const auto& row = assigned[e.comp];
        for (int p = e.index - 1; p >= 0; --p)
            if (row[p] >= 0) {
                if (row[p] >= gpos) return false;
                break;
            }
        for (int p = e.index + 1; p < static_cast<int>(row.size()); ++p)
            if (row[p] >= 0) {
                if (row[p] <= gpos) return false;
                break;
            }
        return true;
    };

    std::int64_t total = 0;
    auto rec = [&](auto&& self, std::size_t depth, std::int64_t sign) -> void {
        if (depth == order.size()) {
            total += sign;
            return;
        }
        const int c = order[depth];
        const EndRef h = head_ref[c];
        const EndRef t = tail_ref[c];
        for (int ga : cands[c]) {
            const int hp = g.position(ga, Role::head);
            const int tp = g.position(ga, Role::tail);
            if (!fits(h, hp) || !fits(t, tp)) continue;
            assigned[h.comp][h.index] = hp;
            assigned[t.comp][t.index] = tp;
            self(self, depth + 1, sign * g.arrow(ga).sign);
            assigned[h.comp][h.index] = -1;
            assigned[t.comp][t.index] = -1;
        }
    };
    rec(rec, 0, 1);
    return total;
}

}  // namespace detail

// Signed count of order-preserving embeddings of the tree into g, leaf c going to component I[c-1].
inline std::int64_t pair(const TreeDiagram& a, const std::vector<int>& I, const GaussDiagram& g) {
    return detail::count_embeddings(a, I, g, 0, -1, std::nullopt);
}

// Embeddings that do (force) or do not (forbid) send the tree arrow with tail on leaf c to arrow ga of g.
inline std::int64_t pair_conditional(const TreeDiagram& a, const std::vector<int>& I, const GaussDiagram& g, int c,
                                     int ga, Condition mode) {
    if (c < 1 || c > a.size() || c == a.trunk()) throw domain_error("no tree arrow with that tail component");
    if (ga < 0 || ga >= g.arrow_count()) throw domain_error("no diagram arrow with that id");
    return detail::count_embeddings(a, I, g, c, ga, mode);
}

inline std::int64_t pair_poly(const ArrowPolynomial& p, const GaussDiagram& g) {
    std::int64_t s = 0;
    for (const auto& [key, term] : p.terms) s += term.second * pair(term.first, p.I, g);
    return s;
}

}  // namespace tinv
