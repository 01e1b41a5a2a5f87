#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tinv/diagram.hpp"
#include "tinv/residue.hpp"

namespace tinv {

using Monomial = std::vector<int>;  // X_{w[0]} X_{w[1]} ..., letters 1..n

// Where a truncated series lives: n noncommuting variables, total degree cap, a set of live
// variables (the others are sent to 0) and optionally the quotient by monomials with a repeated
// letter. Both reductions are ring maps, so products may be reduced termwise.
struct SeriesSpace {
    int n = 0;
    int cap = 0;
    std::uint32_t live = ~0u;
    bool distinct = false;

    bool keeps(int letter) const { return (live >> (letter - 1)) & 1u; }
    friend bool operator==(const SeriesSpace&, const SeriesSpace&) = default;
};

class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(SeriesSpace sp) : sp_(sp) {}
    TruncatedSeries(int n, int cap) : sp_{n, cap, ~0u, false} {}

    static TruncatedSeries constant(SeriesSpace sp, std::int64_t c) {
        TruncatedSeries s(sp);
        s.add(Monomial{}, c);
        return s;
    }
    // 1 + X_i
    static TruncatedSeries generator(SeriesSpace sp, int i) {
        if (i < 1 || i > sp.n) throw domain_error("generator index out of range");
        TruncatedSeries s = constant(sp, 1);
        s.add(Monomial{i}, 1);
        return s;
    }

    const SeriesSpace& space() const { return sp_; }
    const std::map<Monomial, std::int64_t>& terms() const { return c_; }

    std::int64_t coefficient(const Monomial& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? 0 : it->second;
    }

    void add(const Monomial& w, std::int64_t v) {
        if (v == 0 || !admissible(w)) return;
        auto [it, fresh] = c_.try_emplace(w, v);
        if (!fresh && (it->second += v) == 0) c_.erase(it);
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a.same_space(b);
        for (const auto& [w, v] : b.c_) a.add(w, v);
        return a;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        a.same_space(b);
        for (const auto& [w, v] : b.c_) a.add(w, -v);
        return a;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.same_space(b);
        TruncatedSeries r(a.sp_);
        Monomial w;
        for (const auto& [u, x] : a.c_)
            for (const auto& [v, y] : b.c_) {
                if (static_cast<int>(u.size() + v.size()) > a.sp_.cap) continue;
                w = u;
                w.insert(w.end(), v.begin(), v.end());
                r.add(w, x * y);
            }
        return r;
    }

    // Inverse of a unit c(1 + x) with c = +-1: c * sum_k (-x)^k up to the cap.
    TruncatedSeries inverse() const {
        const std::int64_t c = coefficient({});
        if (c != 1 && c != -1) throw domain_error("series is not a unit");
        TruncatedSeries x = *this * constant(sp_, c) - constant(sp_, 1);
        TruncatedSeries minus_x = constant(sp_, 0) - x;
        TruncatedSeries sum = constant(sp_, 1);
        TruncatedSeries pw = constant(sp_, 1);
        for (int k = 1; k <= sp_.cap; ++k) {
            pw = pw * minus_x;
            sum = sum + pw;
        }
        return sum * constant(sp_, c);
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    bool admissible(const Monomial& w) const {
        if (static_cast<int>(w.size()) > sp_.cap) return false;
        std::uint32_t seen = 0;
        for (int l : w) {
            if (l < 1 || l > sp_.n) throw domain_error("monomial letter out of range");
            if (!sp_.keeps(l)) return false;
            if (sp_.distinct) {
                if ((seen >> (l - 1)) & 1u) return false;
                seen |= 1u << (l - 1);
            }
        }
        return true;
    }
    void same_space(const TruncatedSeries& o) const {
        if (!(sp_ == o.sp_)) throw domain_error("series from different spaces");
    }

    SeriesSpace sp_;
    std::map<Monomial, std::int64_t> c_;
};

struct Letter {
    int gen;
    int exp;  // +1 or -1
};
using FreeWord = std::vector<Letter>;

// Magnus expansion m_i -> 1 + X_i of a free-group word, truncated at degree d.
inline TruncatedSeries series_of_word(const FreeWord& w, int d, int n = 0) {
    for (const auto& l : w) n = std::max(n, l.gen);
    SeriesSpace sp{n, d, ~0u, false};
    TruncatedSeries s = TruncatedSeries::constant(sp, 1);
    for (const auto& l : w) {
        if (l.exp != 1 && l.exp != -1) throw domain_error("letter exponent must be +1 or -1");
        TruncatedSeries g = TruncatedSeries::generator(sp, l.gen);
        s = s * (l.exp > 0 ? g : g.inverse());
    }
    return s;
}

// at_overpass: arcs of a component end at the heads (over-endpoints) it carries and the
// conjugating meridian is read at the tail. at_underpass: the same with every arrow reversed.
enum class ArcBreak { at_overpass, at_underpass };

// Longitude series of every component (index 0 is component 1).
inline std::vector<TruncatedSeries> longitudes(const GaussDiagram& g0, SeriesSpace sp, ArcBreak arc = ArcBreak::at_overpass) {
    const GaussDiagram g = arc == ArcBreak::at_overpass ? g0 : reverse_arrows(g0);
    const int n = g.n();
    if (sp.n != n) throw domain_error("series space does not match the diagram");

    // arc_at[c][p]: arc of component c containing endpoint p (arcs advance after each head).
    std::vector<std::vector<int>> arc_at(n + 1);
    std::vector<std::vector<int>> breaks(n + 1);
    for (int c = 1; c <= n; ++c) {
        int k = 0;
        for (const auto& ep : g.component(c)) {
            arc_at[c].push_back(k);
            if (ep.role == Role::head) {
                breaks[c].push_back(ep.arrow);
                ++k;
            }
        }
    }
    std::vector<std::vector<TruncatedSeries>> mer(n + 1);
    std::vector<std::vector<TruncatedSeries>> mer_inv(n + 1);
    for (int c = 1; c <= n; ++c) {
        mer[c].assign(breaks[c].size() + 1, TruncatedSeries::generator(sp, c));
        mer_inv[c].assign(breaks[c].size() + 1, TruncatedSeries::generator(sp, c).inverse());
    }
    auto partner = [&](int a, bool inv) -> const TruncatedSeries& {
        const int tc = g.arrow(a).tail;
        const int k = arc_at[tc][g.position(a, Role::tail)];
        return inv ? mer_inv[tc][k] : mer[tc][k];
    };
    // Each sweep fixes at least one more degree of every meridian.
    for (int sweep = 0; sweep <= sp.cap; ++sweep) {
        for (int c = 1; c <= n; ++c) {
            for (std::size_t k = 0; k < breaks[c].size(); ++k) {
                const int a = breaks[c][k];
                const bool pos = g.arrow(a).sign > 0;
                // A kink's partner arc is the arc being updated; read it before overwriting.
                TruncatedSeries next = partner(a, pos) * mer[c][k] * partner(a, !pos);
                TruncatedSeries next_inv = partner(a, pos) * mer_inv[c][k] * partner(a, !pos);
                mer[c][k + 1] = std::move(next);
                mer_inv[c][k + 1] = std::move(next_inv);
            }
        }
    }
    std::vector<TruncatedSeries> out;
    for (int c = 1; c <= n; ++c) {
        TruncatedSeries l = TruncatedSeries::constant(sp, 1);
        for (int a : breaks[c]) l = l * partner(a, g.arrow(a).sign < 0);
        out.push_back(std::move(l));
    }
    return out;
}

inline TruncatedSeries longitude(const GaussDiagram& g, int j, int d, ArcBreak arc = ArcBreak::at_overpass) {
    if (j < 1 || j > g.n()) throw domain_error("component index out of range");
    return longitudes(g, SeriesSpace{g.n(), d, ~0u, false}, arc)[j - 1];
}

namespace detail {

inline void check_mu_indices(const GaussDiagram& g, const std::vector<int>& seq, int j) {
    if (seq.empty()) throw domain_error("mu needs a nonempty index sequence");
    if (j < 1 || j > g.n()) throw domain_error("component index out of range");
    for (std::size_t a = 0; a < seq.size(); ++a) {
        if (seq[a] < 1 || seq[a] > g.n()) throw domain_error("component index out of range");
        if (seq[a] == j) throw domain_error("mu index sequence must not contain the longitude component");
        for (std::size_t b = 0; b < a; ++b)
            if (seq[a] == seq[b]) throw domain_error("repeated indices are not supported");
    }
}

}  // namespace detail

// Coefficient of X_{seq[0]}...X_{seq[s-1]} in the longitude of component j.
inline std::int64_t mu(const GaussDiagram& g, const std::vector<int>& seq, int j, ArcBreak arc = ArcBreak::at_overpass) {
    detail::check_mu_indices(g, seq, j);
    SeriesSpace sp{g.n(), static_cast<int>(seq.size()), 0u, true};
    for (int i : seq) sp.live |= 1u << (i - 1);
    const auto ls = longitudes(g, sp, arc);
    return ls[j - 1].coefficient(seq);
}

// full: every proper subsequence of (seq..., j) of length >= 2 in all cyclic rotations.
// reduced: the same subsequences without rotation.
enum class MuFamily { full, reduced };

inline std::int64_t delta_mu(const GaussDiagram& g, const std::vector<int>& seq, int j,
                             MuFamily family = MuFamily::full, ArcBreak arc = ArcBreak::at_overpass) {
    detail::check_mu_indices(g, seq, j);
    std::vector<int> q = seq;
    q.push_back(j);
    const int len = static_cast<int>(q.size());
    std::vector<std::int64_t> vals;
    for (std::uint32_t mask = 1; mask + 1 < (1u << len); ++mask) {
        std::vector<int> sub;
        for (int b = 0; b < len; ++b)
            if ((mask >> b) & 1u) sub.push_back(q[b]);
        if (sub.size() < 2) continue;
        const std::size_t rots = family == MuFamily::full ? sub.size() : 1;
        for (std::size_t r = 0; r < rots; ++r) {
            std::vector<int> rot(sub.begin() + static_cast<std::ptrdiff_t>(r), sub.end());
            rot.insert(rot.end(), sub.begin(), sub.begin() + static_cast<std::ptrdiff_t>(r));
            const int last = rot.back();
            rot.pop_back();
            vals.push_back(mu(g, rot, last, arc));
        }
    }
    return gcd_all(vals);
}

inline Residue mu_bar(const GaussDiagram& g, const std::vector<int>& seq, int j,
                      MuFamily family = MuFamily::full, ArcBreak arc = ArcBreak::at_overpass) {
    if (g.kind() != Kind::closed) throw domain_error("mu_bar needs a closed diagram");
    const GaussDiagram s = g.with_kind(Kind::string_link);
    return make_residue(mu(s, seq, j, arc), delta_mu(s, seq, j, family, arc));
}

}  // namespace tinv
