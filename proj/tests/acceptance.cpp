// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tinv/invariants.hpp"
#include "tinv/milnor.hpp"
#include "tinv/moves.hpp"
#include "tinv/tree.hpp"

using namespace tinv;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %s: %s [%.2fs, limit %.0fs%s]\n", pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
                secs, limit_s, in_time ? "" : ", too slow");
    std::fflush(stdout);
}

void info(const std::string& line) {
    std::printf("INFO    %s\n", line.c_str());
    std::fflush(stdout);
}

std::vector<int> reversed(std::vector<int> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

// Corpus seeds are fixed here; changing them changes what the run checks.
constexpr std::uint64_t kStringSeed = 2024;
constexpr std::uint64_t kMoveSeed = 77;
constexpr std::uint64_t kClosedSeed = 4096;
constexpr std::uint64_t kWalkSeed = 9;

std::vector<GaussDiagram> string_links() { return oracle::string_corpus(200, 4, 12, kStringSeed); }

std::vector<GaussDiagram> closed_links() {
    std::vector<GaussDiagram> out;
    for (const auto& g : oracle::string_corpus(50, 4, 10, kClosedSeed)) out.push_back(close(g));
    return out;
}

std::string counts(long checked, long bad) {
    std::ostringstream s;
    s << checked << " checks, " << bad << " mismatches";
    return s.str();
}

// Every tree on at most `max_size` leaves plus the empty one.
std::vector<TreeDiagram> small_trees(int max_size) {
    std::vector<TreeDiagram> out{TreeDiagram()};
    for (int r = 2; r <= max_size; ++r)
        for (int t = 1; t <= r; ++t)
            for (auto& a : generate(r, t)) out.push_back(a);
    return out;
}

std::map<std::string, std::int64_t> read_golden(const std::string& path) {
    std::map<std::string, std::int64_t> m;
    std::istringstream in(oracle::read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto sp = line.find(' ');
        m[line.substr(sp + 1)] = std::stoll(line.substr(0, sp));
    }
    return m;
}

}  // namespace

int main() {
    run(1, "Borromean value", 1, [] {
        const GaussDiagram g = oracle::fixture("borromean_string.gauss");
        const std::int64_t z = z_string(g, {1, 2, 3}, 1);
        const std::int64_t m = mu(g, {2, 3}, 1);
        return Outcome{z == 1 && m == 1, "Z_{123;1} = " + std::to_string(z) + ", mu_{23;1} = " + std::to_string(m)};
    });

    run(2, "degree-one identity", 5, [] {
        long bad = 0;
        for (std::uint64_t s = 0; s < 500; ++s) {
            const GaussDiagram g = random_string_link(2, 12, kStringSeed + s);
            const std::int64_t lk = linking_sum(g, 1, 2);
            if (z_string(g, {1, 2}, 1) != lk || z_string(g, {1, 2}, 2) != -lk) ++bad;
        }
        return Outcome{bad == 0, counts(500, bad)};
    });

    run(3, "tree generation", 30, [] {
        long bad = 0, pairs = 0;
        for (int r = 2; r <= 5; ++r)
            for (int t = 1; t <= r; ++t) {
                ++pairs;
                std::set<std::string> a, b;
                for (const auto& x : generate(r, t)) a.insert(x.key());
                for (const auto& x : enumerate_all(r, t)) b.insert(x.key());
                if (a != b) ++bad;
            }
        const std::size_t n31 = generate(3, 1).size();
        const auto golden = read_golden(std::string(TINV_FIXTURES) + "/z234_1.golden");
        std::map<std::string, std::int64_t> got;
        const ArrowPolynomial p = tree_polynomial({1, 2, 3, 4}, 1);
        for (const auto& [k, term] : p.terms) got[labeled_key(term.first, p.I)] = term.second;
        const bool golden_ok = got == golden && golden.size() == 13;
        std::ostringstream d;
        d << pairs << " (r,t) pairs, " << bad << " differ; |A(3;1)| = " << n31 << "; golden "
          << (golden_ok ? "matches" : "differs") << " (" << got.size() << " terms)";
        return Outcome{bad == 0 && n31 == 3 && golden_ok, d.str()};
    });

    const auto strings = string_links();

    run(4, "Milnor equivalence and product formula", 60, [&] {
        long checked = 0, bad_thm = 0, checked_prod = 0, bad_prod = 0, bad_fixed = 0;
        for (const auto& g : strings)
            for (const auto& I : oracle::subsets(g.n())) {
                const std::vector<int> rest(I.begin() + 1, I.end());
                ++checked;
                if (z_string(g, I, I.front()) != mu(g, rest, I.front())) ++bad_thm;
                for (std::size_t k = 1; k + 1 < I.size(); ++k) {
                    // As printed: mu_{i3 .. ik i1; i2} * mu_{ik+1 .. ir; ik} (k is 0-based here).
                    std::vector<int> first(I.begin() + 2, I.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                    first.push_back(I[0]);
                    const std::vector<int> second(I.begin() + static_cast<std::ptrdiff_t>(k) + 1, I.end());
                    const std::int64_t z = z_string(g, I, I[k]);
                    ++checked_prod;
                    if (z != mu(g, first, I[1]) * mu(g, second, I[k])) ++bad_prod;
                    const std::vector<int> lo = reversed(std::vector<int>(I.begin(), I.begin() + static_cast<std::ptrdiff_t>(k)));
                    const std::int64_t sgn = k % 2 ? -1 : 1;
                    if (z != sgn * mu(g, lo, I[k]) * mu(g, second, I[k])) ++bad_fixed;
                }
            }
        info("criterion 4, signed product Z_{I;i_k} = (-1)^(k-1) mu_{i_(k-1)..i_1;i_k} mu_{i_(k+1)..i_r;i_k}: " +
             counts(checked_prod, bad_fixed));
        return Outcome{bad_thm == 0 && bad_prod == 0,
                       "trunk-min identity " + counts(checked, bad_thm) + "; printed product formula " +
                           counts(checked_prod, bad_prod)};
    });

    run(5, "relations s1 s2 s3", 30, [&] {
        long c1 = 0, b1 = 0, c2 = 0, b2 = 0, c3 = 0, b3 = 0, br = 0;
        for (const auto& g : strings)
            for (const auto& I : oracle::subsets(g.n())) {
                for (int k = 2; k < static_cast<int>(I.size()); ++k, ++c1)
                    if (!check_s1(g, I, k)) ++b1;
                for (int j : I) {
                    ++c2;
                    if (!check_s2(g, I, j)) ++b2;
                }
                ++c3;
                if (!check_s3(g, I)) ++b3;
                if (!check_reversal(g, I)) ++br;
            }
        info("criterion 5, reversal Z_{I;i_r}(G^rho) = (-1)^(r-1) Z_{I;i_1}(G): " + counts(c3, br));
        return Outcome{b1 == 0 && b2 == 0 && b3 == 0,
                       "s1 " + counts(c1, b1) + "; s2 " + counts(c2, b2) + "; s3 " + counts(c3, b3)};
    });

    run(6, "Reidemeister invariance", 60, [] {
        long checked = 0, bad = 0;
        for (int s = 0; s < 100; ++s) {
            const int n = 2 + s % 3;
            const GaussDiagram g = random_diagram(n, 10, Kind::string_link, kMoveSeed + static_cast<std::uint64_t>(s), 1);
            const auto I = oracle::iota_set(n);
            std::vector<std::int64_t> want;
            for (int t = 1; t <= n; ++t) want.push_back(z_value(g, I, t));
            for (MoveKind k : {MoveKind::r1_insert, MoveKind::r1_delete, MoveKind::r2_insert, MoveKind::r2_delete,
                               MoveKind::r3})
                for (const auto& mv : sites(g, k)) {
                    const GaussDiagram h = apply_move(g, mv);
                    ++checked;
                    for (int t = 1; t <= n; ++t)
                        if (z_value(h, I, t) != want[t - 1]) {
                            ++bad;
                            break;
                        }
                }
        }
        return Outcome{bad == 0, counts(checked, bad) + " (moves)"};
    });

    const auto closed = closed_links();
    std::vector<GaussDiagram> walk_ends;

    run(7, "closed residue invariance along walks", 300, [&] {
        long checked = 0, bad = 0;
        for (std::size_t d = 0; d < closed.size(); ++d) {
            const GaussDiagram& g = closed[d];
            const auto walk = random_walk(g, 20, kWalkSeed + d);
            ZTable base(g);
            std::vector<std::pair<std::vector<int>, int>> idx;
            std::vector<Residue> want;
            for (const auto& I : oracle::subsets(g.n(), 2, 4))
                for (int j : I) {
                    idx.emplace_back(I, j);
                    want.push_back(base.residue(I, j));
                }
            for (std::size_t s = 1; s < walk.size(); ++s) {
                ZTable t(walk[s].diagram);
                for (std::size_t q = 0; q < idx.size(); ++q) {
                    ++checked;
                    if (!(t.residue(idx[q].first, idx[q].second) == want[q])) ++bad;
                }
            }
            walk_ends.push_back(walk.back().diagram);
        }
        return Outcome{bad == 0, counts(checked, bad) + " over " + std::to_string(closed.size()) + " walks of 20 moves"};
    });

    run(8, "residues agree with Milnor residues", 120, [&] {
        long checked = 0, bad = 0, bad_mod = 0;
        std::vector<GaussDiagram> all = closed;
        all.insert(all.end(), walk_ends.begin(), walk_ends.end());
        for (const auto& g : all)
            for (const auto& I : oracle::subsets(g.n(), 2, 4)) {
                const std::vector<int> rest(I.begin() + 1, I.end());
                const Residue z = z_bar(g, I, I.front());
                const Residue m = mu_bar(g, rest, I.front());
                ++checked;
                if (!(z == m)) ++bad;
                if (z.modulus != m.modulus) ++bad_mod;
            }
        return Outcome{bad == 0, counts(checked, bad) + " (" + std::to_string(bad_mod) + " modulus mismatches)"};
    });

    run(9, "stacking identities", 30, [] {
        long sign_checks = 0, sign_bad = 0, shuffle_checks = 0, shuffle_bad = 0, dec_checks = 0, dec_bad = 0;
        const auto trees = small_trees(5);
        for (const auto& P : trees)
            for (const auto& Q : trees) {
                if (P.size() + Q.size() - 1 > 5) continue;
                for (int k = 1; k <= P.size(); ++k) {
                    ++sign_checks;
                    if (sign_tree(stack(P, k, Q)) != sign_tree(P) * sign_tree(Q)) ++sign_bad;
                }
            }
        for (const auto& P : trees)
            for (const auto& Q : trees)
                for (const auto& R : trees) {
                    if (P.size() + Q.size() + R.size() - 2 > 5) continue;
                    for (int i = 1; i <= P.size(); ++i) {
                        const TreeDiagram A = stack(P, i, Q);
                        const StackMaps a = stack_maps(P, i, Q);
                        for (int j = 1; j <= A.size(); ++j) {
                            const TreeDiagram B = stack(A, j, R);
                            ++shuffle_checks;
                            const auto inQ = std::find(a.q.begin() + 1, a.q.end(), j);
                            bool ok;
                            if (inQ != a.q.end()) {
                                ok = B == stack(P, i, stack(Q, static_cast<int>(inQ - a.q.begin()), R));
                            } else {
                                const int jp = static_cast<int>(std::find(a.p.begin() + 1, a.p.end(), j) - a.p.begin());
                                ok = B == stack(stack(P, jp, R), stack_maps(P, jp, R).p[i], Q);
                            }
                            if (!ok) ++shuffle_bad;
                        }
                    }
                }
        for (int r = 2; r <= 5; ++r)
            for (int t = 1; t <= r; ++t)
                for (const auto& a : generate(r, t))
                    for (int j = 1; j <= r; ++j) {
                        if (j == t) continue;
                        ++dec_checks;
                        if (!(decompose(a, j).recompose() == a)) ++dec_bad;
                    }
        return Outcome{sign_bad == 0 && shuffle_bad == 0 && dec_bad == 0,
                       "sign " + counts(sign_checks, sign_bad) + "; shuffle " + counts(shuffle_checks, shuffle_bad) +
                           "; decomposition " + counts(dec_checks, dec_bad)};
    });

    run(10, "self-arrow insensitivity", 30, [&] {
        long checked = 0, bad = 0;
        auto edit = [](const GaussDiagram& g, int x, bool remove) {
            std::vector<std::vector<Endpoint>> comps;
            for (const auto& c : g.components()) {
                std::vector<Endpoint> keep;
                for (auto ep : c) {
                    if (remove && ep.arrow == x) continue;
                    keep.push_back(Endpoint{remove && ep.arrow > x ? ep.arrow - 1 : ep.arrow, ep.role});
                }
                comps.push_back(std::move(keep));
            }
            std::vector<int> signs = g.signs();
            if (remove) signs.erase(signs.begin() + x);
            else signs[x] = -signs[x];
            return GaussDiagram(g.kind(), comps, signs);
        };
        std::vector<GaussDiagram> all = strings;
        all.insert(all.end(), closed.begin(), closed.end());
        for (const auto& g : all) {
            ZTable base(g);
            for (int x = 0; x < g.arrow_count(); ++x) {
                if (g.arrow(x).head != g.arrow(x).tail) continue;
                for (bool remove : {true, false}) {
                    const GaussDiagram h = edit(g, x, remove);
                    ZTable th(h);
                    for (const auto& I : oracle::subsets(g.n()))
                        for (int j : I) {
                            ++checked;
                            const bool same = g.kind() == Kind::closed ? th.residue(I, j) == base.residue(I, j)
                                                                       : th.value(I, j) == base.value(I, j);
                            if (!same) ++bad;
                        }
                }
            }
        }
        return Outcome{bad == 0, counts(checked, bad)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
