#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tinv/diagram.hpp"
#include "tinv/pairing.hpp"
#include "tinv/residue.hpp"
#include "tinv/tree.hpp"

namespace tinv {

namespace detail {

inline void check_tree_indices(const GaussDiagram& g, const std::vector<int>& I, int j) {
    check_index_set(I, g.n());
    if (I.size() < 2) throw domain_error("index set needs at least two components");
    trunk_position(I, j);
}

}  // namespace detail

// <Z_{I;j}, G> for any kind of diagram.
inline std::int64_t z_value(const GaussDiagram& g, const std::vector<int>& I, int j) {
    detail::check_tree_indices(g, I, j);
    std::int64_t s = 0;
    for (const auto& [a, sgn] : signed_trees(static_cast<int>(I.size()), trunk_position(I, j))) s += sgn * pair(a, I, g);
    return s;
}

inline std::int64_t z_string(const GaussDiagram& g, const std::vector<int>& I, int j) {
    if (g.kind() != Kind::string_link) throw domain_error("z_string needs a string-link diagram");
    return z_value(g, I, j);
}

// all: every proper J of I with |J| >= 2 and every trunk in J.
// reduced: only the trunks min J and max J; middle trunks factor into smaller values.
enum class ZFamily { all, reduced };

// Memo of <Z_{J;k}, G> over subsets of [n], so that a whole batch of residues on one diagram
// evaluates each value once.
class ZTable {
public:
    explicit ZTable(const GaussDiagram& g) : g_(g) {}

    std::int64_t value(const std::vector<int>& J, int k) {
        auto key = std::pair{J, k};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const std::int64_t v = z_value(g_, J, k);
        memo_.emplace(std::move(key), v);
        return v;
    }

    std::int64_t delta(const std::vector<int>& I, int j, ZFamily family = ZFamily::all) {
        detail::check_tree_indices(g_, I, j);
        const int r = static_cast<int>(I.size());
        std::vector<std::int64_t> vals;
        for (std::uint32_t mask = 1; mask + 1 < (1u << r); ++mask) {
            std::vector<int> J;
            for (int b = 0; b < r; ++b)
                if ((mask >> b) & 1u) J.push_back(I[b]);
            if (J.size() < 2) continue;
            for (std::size_t t = 0; t < J.size(); ++t) {
                if (family == ZFamily::reduced && t != 0 && t + 1 != J.size()) continue;
                vals.push_back(value(J, J[t]));
            }
        }
        return gcd_all(vals);
    }

    Residue residue(const std::vector<int>& I, int j, ZFamily family = ZFamily::all) {
        return make_residue(value(I, j), delta(I, j, family));
    }

private:
    const GaussDiagram& g_;
    std::map<std::pair<std::vector<int>, int>, std::int64_t> memo_;
};

inline std::int64_t delta_z(const GaussDiagram& g, const std::vector<int>& I, int j, ZFamily family = ZFamily::all) {
    if (g.kind() != Kind::closed) throw domain_error("delta_z needs a closed diagram");
    return ZTable(g).delta(I, j, family);
}

inline Residue z_bar(const GaussDiagram& g, const std::vector<int>& I, int j, ZFamily family = ZFamily::all) {
    if (g.kind() != Kind::closed) throw domain_error("z_bar needs a closed diagram");
    return ZTable(g).residue(I, j, family);
}

// Z_{I;i_k} = Z_{I+;i_k} Z_{I-;i_k}, I- = {i_1..i_k}, I+ = {i_k..i_r}, for 1 < k < r (k is 1-based).
inline bool check_s1(const GaussDiagram& g, const std::vector<int>& I, int k) {
    const int r = static_cast<int>(I.size());
    if (k <= 1 || k >= r) throw domain_error("split position must satisfy 1 < k < |I|");
    detail::check_tree_indices(g, I, I[k - 1]);
    const std::vector<int> lo(I.begin(), I.begin() + k);
    const std::vector<int> hi(I.begin() + k - 1, I.end());
    return z_value(g, I, I[k - 1]) == z_value(g, hi, I[k - 1]) * z_value(g, lo, I[k - 1]);
}

// Reflecting the component order: Z_{I;j}(reflect G) = (-1)^{|I|-1} Z_{Ibar;jbar}(G), ibar = n+1-i.
inline bool check_s2(const GaussDiagram& g, const std::vector<int>& I, int j) {
    detail::check_tree_indices(g, I, j);
    const int n = g.n();
    std::vector<int> Ib;
    for (auto it = I.rbegin(); it != I.rend(); ++it) Ib.push_back(n + 1 - *it);
    const std::int64_t sgn = I.size() % 2 == 0 ? -1 : 1;
    return z_value(reflect(g), I, j) == sgn * z_value(g, Ib, n + 1 - j);
}

// The permutation of [n] cycling i_1 -> i_2 -> ... -> i_r -> i_1.
inline std::vector<int> cyclic_permutation(int n, const std::vector<int>& I) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1;
    for (std::size_t m = 0; m < I.size(); ++m) s[I[m] - 1] = I[(m + 1) % I.size()];
    return s;
}

// Z_{I;i_r}(G^s) = Z_{I;i_1}(G), with G^s = permute(G, s) for the cycle s above.
inline bool check_s3(const GaussDiagram& g, const std::vector<int>& I) {
    detail::check_tree_indices(g, I, I.front());
    const GaussDiagram gs = permute(g, cyclic_permutation(g.n(), I));
    return z_value(gs, I, I.back()) == z_value(g, I, I.front());
}

// The permutation of [n] reversing the order of I and fixing everything else.
inline std::vector<int> reversal_permutation(int n, const std::vector<int>& I) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1;
    for (std::size_t m = 0; m < I.size(); ++m) s[I[m] - 1] = I[I.size() - 1 - m];
    return s;
}

// Z_{I;i_r}(G^rho) = (-1)^{|I|-1} Z_{I;i_1}(G) for the reversal rho of I.
inline bool check_reversal(const GaussDiagram& g, const std::vector<int>& I) {
    detail::check_tree_indices(g, I, I.front());
    const GaussDiagram gr = permute(g, reversal_permutation(g.n(), I));
    const std::int64_t sgn = I.size() % 2 == 0 ? -1 : 1;
    return z_value(gr, I, I.back()) == sgn * z_value(g, I, I.front());
}

}  // namespace tinv
