#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tinv/diagram.hpp"

namespace tinv {

enum class MoveKind { r1_insert, r1_delete, r2_insert, r2_delete, r3, basepoint };
enum class Direction { forward, backward };

inline std::string_view move_name(MoveKind k) {
    switch (k) {
        case MoveKind::r1_insert: return "r1_insert";
        case MoveKind::r1_delete: return "r1_delete";
        case MoveKind::r2_insert: return "r2_insert";
        case MoveKind::r2_delete: return "r2_delete";
        case MoveKind::r3: return "r3";
        case MoveKind::basepoint: return "basepoint";
    }
    return "?";
}

// Field use by kind:
//   r1_insert  comp a, gap pa, sign, head_first
//   r1_delete  arrow x
//   r2_insert  heads on comp a at gap pa, tails on comp b at gap pb, sign of the first head,
//              crossed = tails in the opposite order to the heads
//   r2_delete  arrows x, y
//   r3         arrows x, y, z as (g, h, k): g from M to T, h from B to T, k from B to M
//   basepoint  comp a, dir
// Arrow ids refer to the diagram the move is applied to.
struct Move {
    MoveKind kind = MoveKind::r1_insert;
    int a = 0, pa = 0, b = 0, pb = 0;
    int sign = 1;
    bool head_first = true;
    bool crossed = false;
    int x = -1, y = -1, z = -1;
    Direction dir = Direction::forward;
};

namespace detail {

struct Editable {
    Kind kind;
    std::vector<std::vector<Endpoint>> comps;
    std::vector<int> signs;

    explicit Editable(const GaussDiagram& g) : kind(g.kind()), comps(g.components()), signs(g.signs()) {}
    GaussDiagram build() const { return GaussDiagram(kind, comps, signs); }

    int add_arrow(int sign) {
        signs.push_back(sign);
        return static_cast<int>(signs.size()) - 1;
    }
    void insert(int c, int gap, std::initializer_list<Endpoint> eps) {
        auto& v = comps.at(c - 1);
        if (gap < 0 || gap > static_cast<int>(v.size())) throw domain_error("insertion gap out of range");
        v.insert(v.begin() + gap, eps);
    }
    // Removes arrows (ids are renumbered by the GaussDiagram constructor afterwards).
    void erase(const std::vector<int>& ids) {
        std::vector<int> remap(signs.size(), 0);
        std::vector<bool> gone(signs.size(), false);
        for (int a : ids) gone.at(a) = true;
        std::vector<int> ns;
        for (std::size_t a = 0; a < signs.size(); ++a) {
            remap[a] = static_cast<int>(ns.size());
            if (!gone[a]) ns.push_back(signs[a]);
        }
        for (auto& comp : comps) {
            std::vector<Endpoint> keep;
            for (auto ep : comp)
                if (!gone[ep.arrow]) keep.push_back(Endpoint{remap[ep.arrow], ep.role});
            comp = std::move(keep);
        }
        signs = std::move(ns);
    }
    void swap_positions(int c, int p, int q) { std::swap(comps.at(c - 1).at(p), comps.at(c - 1).at(q)); }
};

inline void check_arrow(const GaussDiagram& g, int a) {
    if (a < 0 || a >= g.arrow_count()) throw domain_error("no arrow with id " + std::to_string(a));
}

inline bool adjacent(int p, int q) { return p - q == 1 || q - p == 1; }

}  // namespace detail

inline bool r1_deletable(const GaussDiagram& g, int x) {
    if (x < 0 || x >= g.arrow_count()) return false;
    const auto& ar = g.arrow(x);
    return ar.head == ar.tail && detail::adjacent(g.position(x, Role::head), g.position(x, Role::tail));
}

inline bool r2_deletable(const GaussDiagram& g, int x, int y) {
    if (x < 0 || y < 0 || x >= g.arrow_count() || y >= g.arrow_count() || x == y) return false;
    const auto& u = g.arrow(x);
    const auto& v = g.arrow(y);
    return u.head == v.head && u.tail == v.tail && u.sign == -v.sign &&
           detail::adjacent(g.position(x, Role::head), g.position(y, Role::head)) &&
           detail::adjacent(g.position(x, Role::tail), g.position(y, Role::tail));
}

// Legal third-move triangles. g runs M -> T, h runs B -> T, k runs B -> M over three distinct
// components; the heads of g, h are adjacent on T, the tail of g and head of k on M, the tails
// of h, k on B. Writing oT for "g before h on T", oM for "g before k on M", oB for "h before k
// on B", a planar picture exists iff (oT != oM) == (sign h != sign k) and
// (oM != oB) == (sign g != sign h).
inline bool r3_legal(const GaussDiagram& g, int ga, int ha, int ka) {
    const int m = g.arrow_count();
    if (ga < 0 || ha < 0 || ka < 0 || ga >= m || ha >= m || ka >= m) return false;
    const auto& G = g.arrow(ga);
    const auto& H = g.arrow(ha);
    const auto& K = g.arrow(ka);
    const int T = G.head, M = G.tail, B = H.tail;
    if (T == M || T == B || M == B) return false;
    if (H.head != T || K.head != M || K.tail != B) return false;
    const int gT = g.position(ga, Role::head), hT = g.position(ha, Role::head);
    const int gM = g.position(ga, Role::tail), kM = g.position(ka, Role::head);
    const int hB = g.position(ha, Role::tail), kB = g.position(ka, Role::tail);
    if (!detail::adjacent(gT, hT) || !detail::adjacent(gM, kM) || !detail::adjacent(hB, kB)) return false;
    const bool oT = gT < hT, oM = gM < kM, oB = hB < kB;
    return ((oT != oM) == (H.sign != K.sign)) && ((oM != oB) == (G.sign != H.sign));
}

inline GaussDiagram apply_move(const GaussDiagram& g, const Move& mv) {
    detail::Editable e(g);
    switch (mv.kind) {
        case MoveKind::r1_insert: {
            if (mv.a < 1 || mv.a > g.n()) throw domain_error("component index out of range");
            if (mv.sign != 1 && mv.sign != -1) throw domain_error("sign must be +1 or -1");
            const int x = e.add_arrow(mv.sign);
            if (mv.head_first) e.insert(mv.a, mv.pa, {Endpoint{x, Role::head}, Endpoint{x, Role::tail}});
            else e.insert(mv.a, mv.pa, {Endpoint{x, Role::tail}, Endpoint{x, Role::head}});
            break;
        }
        case MoveKind::r1_delete:
            if (!r1_deletable(g, mv.x)) throw domain_error("no removable kink at that arrow");
            e.erase({mv.x});
            break;
        case MoveKind::r2_insert: {
            if (mv.a < 1 || mv.a > g.n() || mv.b < 1 || mv.b > g.n()) throw domain_error("component index out of range");
            if (mv.sign != 1 && mv.sign != -1) throw domain_error("sign must be +1 or -1");
            if (mv.a == mv.b && mv.pa == mv.pb) throw domain_error("r2 on one component needs two different gaps");
            const int u = e.add_arrow(mv.sign);
            const int v = e.add_arrow(-mv.sign);
            const Endpoint hu{u, Role::head}, hv{v, Role::head};
            const Endpoint tu{u, Role::tail}, tv{v, Role::tail};
            auto put_heads = [&] { e.insert(mv.a, mv.pa, {hu, hv}); };
            auto put_tails = [&] {
                if (mv.crossed) e.insert(mv.b, mv.pb, {tv, tu});
                else e.insert(mv.b, mv.pb, {tu, tv});
            };
            if (mv.a == mv.b && mv.pa < mv.pb) {
                put_tails();
                put_heads();
            } else {
                put_heads();
                put_tails();
            }
            break;
        }
        case MoveKind::r2_delete:
            if (!r2_deletable(g, mv.x, mv.y)) throw domain_error("arrows do not form a removable bigon");
            e.erase({mv.x, mv.y});
            break;
        case MoveKind::r3: {
            if (!r3_legal(g, mv.x, mv.y, mv.z)) throw domain_error("arrows do not form a legal triangle");
            const auto& G = g.arrow(mv.x);
            const auto& H = g.arrow(mv.y);
            e.swap_positions(G.head, g.position(mv.x, Role::head), g.position(mv.y, Role::head));
            e.swap_positions(G.tail, g.position(mv.x, Role::tail), g.position(mv.z, Role::head));
            e.swap_positions(H.tail, g.position(mv.y, Role::tail), g.position(mv.z, Role::tail));
            break;
        }
        case MoveKind::basepoint: {
            if (g.kind() != Kind::closed) throw domain_error("basepoints of a string link are fixed");
            if (mv.a < 1 || mv.a > g.n()) throw domain_error("component index out of range");
            auto& v = e.comps[mv.a - 1];
            if (v.empty()) break;
            if (mv.dir == Direction::forward) std::rotate(v.begin(), v.begin() + 1, v.end());
            else std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
            break;
        }
    }
    return e.build();
}

inline GaussDiagram apply_r1(const GaussDiagram& g, int comp, int gap, int sign, bool head_first) {
    Move m;
    m.kind = MoveKind::r1_insert;
    m.a = comp;
    m.pa = gap;
    m.sign = sign;
    m.head_first = head_first;
    return apply_move(g, m);
}

inline GaussDiagram apply_r1_delete(const GaussDiagram& g, int x) {
    Move m;
    m.kind = MoveKind::r1_delete;
    m.x = x;
    return apply_move(g, m);
}

inline GaussDiagram apply_r2(const GaussDiagram& g, int head_comp, int head_gap, int tail_comp, int tail_gap, int sign,
                             bool crossed) {
    Move m;
    m.kind = MoveKind::r2_insert;
    m.a = head_comp;
    m.pa = head_gap;
    m.b = tail_comp;
    m.pb = tail_gap;
    m.sign = sign;
    m.crossed = crossed;
    return apply_move(g, m);
}

inline GaussDiagram apply_r2_delete(const GaussDiagram& g, int x, int y) {
    Move m;
    m.kind = MoveKind::r2_delete;
    m.x = x;
    m.y = y;
    return apply_move(g, m);
}

inline GaussDiagram apply_r3(const GaussDiagram& g, int ga, int ha, int ka) {
    Move m;
    m.kind = MoveKind::r3;
    m.x = ga;
    m.y = ha;
    m.z = ka;
    return apply_move(g, m);
}

inline GaussDiagram basepoint_move(const GaussDiagram& g, int comp, Direction dir) {
    Move m;
    m.kind = MoveKind::basepoint;
    m.a = comp;
    m.dir = dir;
    return apply_move(g, m);
}

inline GaussDiagram close(const GaussDiagram& g) {
    if (g.kind() != Kind::string_link) throw domain_error("close needs a string-link diagram");
    return g.with_kind(Kind::closed);
}

inline GaussDiagram cut(const GaussDiagram& g) {
    if (g.kind() != Kind::closed) throw domain_error("cut needs a closed diagram");
    return g.with_kind(Kind::string_link);
}

// Every legal application of one move kind to g.
inline std::vector<Move> sites(const GaussDiagram& g, MoveKind kind) {
    std::vector<Move> out;
    const int n = g.n();
    const int m = g.arrow_count();
    auto len = [&](int c) { return static_cast<int>(g.component(c).size()); };
    switch (kind) {
        case MoveKind::r1_insert:
            for (int c = 1; c <= n; ++c)
                for (int p = 0; p <= len(c); ++p)
                    for (int s : {1, -1})
                        for (bool hf : {true, false}) {
                            Move mv;
                            mv.kind = kind;
                            mv.a = c;
                            mv.pa = p;
                            mv.sign = s;
                            mv.head_first = hf;
                            out.push_back(mv);
                        }
            break;
        case MoveKind::r1_delete:
            for (int x = 0; x < m; ++x)
                if (r1_deletable(g, x)) {
                    Move mv;
                    mv.kind = kind;
                    mv.x = x;
                    out.push_back(mv);
                }
            break;
        case MoveKind::r2_insert:
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    for (int pa = 0; pa <= len(a); ++pa)
                        for (int pb = 0; pb <= len(b); ++pb) {
                            if (a == b && pa == pb) continue;
                            for (int s : {1, -1})
                                for (bool cr : {false, true}) {
                                    Move mv;
                                    mv.kind = kind;
                                    mv.a = a;
                                    mv.pa = pa;
                                    mv.b = b;
                                    mv.pb = pb;
                                    mv.sign = s;
                                    mv.crossed = cr;
                                    out.push_back(mv);
                                }
                        }
            break;
        case MoveKind::r2_delete:
            for (int x = 0; x < m; ++x)
                for (int y = x + 1; y < m; ++y)
                    if (r2_deletable(g, x, y)) {
                        Move mv;
                        mv.kind = kind;
                        mv.x = x;
                        mv.y = y;
                        out.push_back(mv);
                    }
            break;
        case MoveKind::r3:
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y) {
                    if (y == x || g.arrow(y).head != g.arrow(x).head) continue;
                    for (int z = 0; z < m; ++z)
                        if (z != x && z != y && r3_legal(g, x, y, z)) {
                            Move mv;
                            mv.kind = kind;
                            mv.x = x;
                            mv.y = y;
                            mv.z = z;
                            out.push_back(mv);
                        }
                }
            break;
        case MoveKind::basepoint:
            if (g.kind() != Kind::closed) break;
            for (int c = 1; c <= n; ++c) {
                if (len(c) == 0) continue;
                for (Direction d : {Direction::forward, Direction::backward}) {
                    Move mv;
                    mv.kind = kind;
                    mv.a = c;
                    mv.dir = d;
                    out.push_back(mv);
                }
            }
            break;
    }
    return out;
}

// Diagram of a braid word on n strands: letter (i, e) crosses the strands at positions i and
// i+1, the left one passing over when e = +1. The crossing sign is -e and the arrow head sits on
// the over strand. The word must be a pure braid.
inline GaussDiagram braid_diagram(int n, const std::vector<std::pair<int, int>>& word, Kind kind = Kind::string_link) {
    std::vector<int> at(n);
    for (int i = 0; i < n; ++i) at[i] = i + 1;
    std::vector<std::vector<Endpoint>> comps(n);
    std::vector<int> signs;
    for (const auto& [i, e] : word) {
        if (i < 1 || i >= n || (e != 1 && e != -1)) throw domain_error("bad braid letter");
        const int left = at[i - 1], right = at[i];
        const int over = e > 0 ? left : right;
        const int under = e > 0 ? right : left;
        const int a = static_cast<int>(signs.size());
        signs.push_back(-e);
        comps[over - 1].push_back(Endpoint{a, Role::head});
        comps[under - 1].push_back(Endpoint{a, Role::tail});
        std::swap(at[i - 1], at[i]);
    }
    for (int i = 0; i < n; ++i)
        if (at[i] != i + 1) throw domain_error("braid word is not pure");
    return GaussDiagram(kind, std::move(comps), signs);
}

// Arbitrary (virtual) diagram: up to max_arrows arrows, self-arrows allowed, uniform positions.
// With triangles > 0 and n >= 3, that many legal r3 triangles are planted first.
inline GaussDiagram random_diagram(int n, int max_arrows, Kind kind, std::uint64_t seed, int triangles = 0) {
    if (n < 1) throw domain_error("need at least one component");
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::vector<Endpoint>> comps(n);
    std::vector<int> signs;
    int budget = std::max(0, max_arrows);
    if (n >= 3) {
        for (int t = 0; t < triangles && budget >= 3; ++t, budget -= 3) {
            std::vector<int> c{1, 2, 3};
            for (int i = 4; i <= n; ++i) c.push_back(i);
            std::shuffle(c.begin(), c.end(), rng);
            const int T = c[0], M = c[1], B = c[2];
            const int sg = uni(0, 1) ? 1 : -1, sh = uni(0, 1) ? 1 : -1, sk = uni(0, 1) ? 1 : -1;
            const bool oT = uni(0, 1);
            const bool oM = oT != (sh != sk);
            const bool oB = oM != (sg != sh);
            const int ga = static_cast<int>(signs.size());
            signs.insert(signs.end(), {sg, sh, sk});
            const int ha = ga + 1, ka = ga + 2;
            auto put2 = [&](int comp, Endpoint first, Endpoint second) {
                auto& v = comps[comp - 1];
                const int gap = uni(0, static_cast<int>(v.size()));
                v.insert(v.begin() + gap, {first, second});
            };
            const Endpoint gh{ga, Role::head}, hh{ha, Role::head}, gt{ga, Role::tail};
            const Endpoint kh{ka, Role::head}, ht{ha, Role::tail}, kt{ka, Role::tail};
            oT ? put2(T, gh, hh) : put2(T, hh, gh);
            oM ? put2(M, gt, kh) : put2(M, kh, gt);
            oB ? put2(B, ht, kt) : put2(B, kt, ht);
        }
    }
    const int count = uni(0, budget);
    for (int k = 0; k < count; ++k) {
        const int a = static_cast<int>(signs.size());
        signs.push_back(uni(0, 1) ? 1 : -1);
        for (Role role : {Role::head, Role::tail}) {
            auto& v = comps[uni(1, n) - 1];
            v.insert(v.begin() + uni(0, static_cast<int>(v.size())), Endpoint{a, role});
        }
    }
    return GaussDiagram(kind, std::move(comps), signs);
}

// Realizable pure braid w * reverse(w) with fresh exponents on the way back; 2 * half_length arrows.
inline GaussDiagram random_pure_braid(int n, int half_length, Kind kind, std::uint64_t seed) {
    if (n < 2) return GaussDiagram(kind, std::vector<std::vector<Endpoint>>(std::max(n, 0)), {});
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<std::pair<int, int>> w;
    for (int k = 0; k < half_length; ++k) w.emplace_back(uni(1, n - 1), uni(0, 1) ? 1 : -1);
    for (int k = half_length - 1; k >= 0; --k) w.emplace_back(w[k].first, uni(0, 1) ? 1 : -1);
    return braid_diagram(n, w, kind);
}

struct WalkStep {
    std::optional<Move> move;  // empty for the starting diagram
    GaussDiagram diagram;
};

// Random sequence of legal moves (basepoint moves only on closed diagrams). Each step picks a
// kind uniformly among those with at least one site, then a site uniformly.
inline std::vector<WalkStep> random_walk(const GaussDiagram& g, int moves, std::uint64_t seed,
                                         const std::vector<MoveKind>& kinds = {MoveKind::r1_insert, MoveKind::r1_delete,
                                                                               MoveKind::r2_insert, MoveKind::r2_delete,
                                                                               MoveKind::r3, MoveKind::basepoint}) {
    std::mt19937_64 rng(seed);
    std::vector<WalkStep> out{{std::nullopt, g}};
    for (int step = 0; step < moves; ++step) {
        const GaussDiagram& cur = out.back().diagram;
        std::vector<std::vector<Move>> options;
        for (MoveKind k : kinds) {
            auto s = sites(cur, k);
            if (!s.empty()) options.push_back(std::move(s));
        }
        if (options.empty()) break;
        const auto& pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        const Move mv = pick[std::uniform_int_distribution<std::size_t>(0, pick.size() - 1)(rng)];
        out.push_back(WalkStep{mv, apply_move(cur, mv)});
    }
    return out;
}

// Pure braid followed by a few r1/r2-delete/r3 moves, so that self-crossings and rearranged
// triangles occur while the diagram stays realizable.
inline GaussDiagram random_string_link(int n, int max_arrows, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int half = uni(0, std::max(0, max_arrows - 2) / 2);
    GaussDiagram g = random_pure_braid(n, half, Kind::string_link, rng());
    const int extra = uni(0, 3);
    for (int k = 0; k < extra; ++k) {
        std::vector<MoveKind> kinds{MoveKind::r3, MoveKind::r2_delete, MoveKind::r1_delete};
        if (g.arrow_count() < max_arrows) kinds.push_back(MoveKind::r1_insert);
        g = random_walk(g, 1, rng(), kinds).back().diagram;
    }
    return g;
}

}  // namespace tinv
