#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tinv/tree.hpp"

using namespace tinv;

namespace {

std::set<std::string> keys(const std::vector<TreeDiagram>& v) {
    std::set<std::string> s;
    for (const auto& a : v) s.insert(a.key());
    return s;
}

const TreeDiagram kE = elementary(false);
const TreeDiagram kEbar = elementary(true);

// All trees with at most `max_size` leaves, the empty tree included.
std::vector<TreeDiagram> small_trees(int max_size) {
    std::vector<TreeDiagram> out{TreeDiagram()};
    for (int r = 2; r <= max_size; ++r)
        for (int t = 1; t <= r; ++t)
            for (auto& a : generate(r, t)) out.push_back(a);
    return out;
}

}  // namespace

TEST(Tree, ElementaryTrees) {
    EXPECT_EQ(kE.key(), "h2|t1");
    EXPECT_EQ(kEbar.key(), "t2|h1");
    EXPECT_EQ(sign_tree(kE), 1);
    EXPECT_EQ(sign_tree(kEbar), -1);
    EXPECT_TRUE(is_planar(kE));
    EXPECT_TRUE(is_planar(kEbar));
    EXPECT_EQ(keys(generate(2, 1)), std::set<std::string>{"h2|t1"});
    EXPECT_EQ(keys(generate(2, 2)), std::set<std::string>{"t2|h1"});
}

TEST(Tree, EmptyIsUnit) {
    const TreeDiagram empty;
    EXPECT_EQ(stack(empty, 1, kE), kE);
    for (const auto& a : small_trees(4)) {
        EXPECT_EQ(stack(empty, 1, a), a);
        for (int k = 1; k <= a.size(); ++k) EXPECT_EQ(stack(a, k, empty), a);
    }
}

TEST(Tree, ThreeLeafTrunkOne) {
    const TreeDiagram A = stack(kE, 2, kE);
    const TreeDiagram B = stack(kE, 1, kE);
    const TreeDiagram C = stack(kE, 2, kEbar);
    EXPECT_EQ(A.key(), "h2|h3,t1|t2");
    EXPECT_EQ(B.key(), "h2,h3|t1|t1");
    EXPECT_EQ(C.key(), "h3|t3|h2,t1");
    EXPECT_EQ(keys(generate(3, 1)), (std::set<std::string>{A.key(), B.key(), C.key()}));
    EXPECT_EQ(sign_tree(A), 1);
    EXPECT_EQ(sign_tree(B), 1);
    EXPECT_EQ(sign_tree(C), -1);
}

TEST(Tree, Cardinalities) {
    // Frozen from enumerate_all.
    const std::vector<std::vector<std::size_t>> want{{1, 1}, {3, 2, 3}, {13, 7, 7, 13}, {67, 32, 26, 32, 67}};
    for (int r = 2; r <= 5; ++r)
        for (int t = 1; t <= r; ++t) EXPECT_EQ(generate(r, t).size(), want[r - 2][t - 1]) << r << ";" << t;
    EXPECT_TRUE(generate(1, 1).empty());
}

TEST(Tree, MiddleTrunkOfThree) {
    EXPECT_EQ(keys(generate(3, 2)), (std::set<std::string>{"t2|h1,h3|t2", "t2|h3,h1|t2"}));
    for (const auto& a : generate(3, 2)) EXPECT_EQ(sign_tree(a), -1);
}

TEST(Tree, GenerateMatchesEnumeration) {
    for (int r = 2; r <= 5; ++r)
        for (int t = 1; t <= r; ++t) EXPECT_EQ(keys(generate(r, t)), keys(enumerate_all(r, t))) << r << ";" << t;
}

TEST(Tree, GenerateSixLeavesTrunkOne) { EXPECT_EQ(keys(generate(6, 1)), keys(enumerate_all(6, 1))); }

TEST(Tree, EnumerateGuard) { EXPECT_THROW(enumerate_all(7, 1), domain_error); }

TEST(Tree, PlanarityAgreesWithDepthSearch) {
    // Every arrow set and head order on up to 5 leaves, planar or not.
    for (int r = 2; r <= 5; ++r)
        for (int t = 1; t <= r; ++t) {
            std::set<std::string> planar;
            for (const auto& a : generate(r, t)) {
                EXPECT_TRUE(oracle::planar_by_depths(a)) << a.key();
                planar.insert(a.key());
            }
            std::vector<int> head(r + 1, 0);
            std::function<void(int)> rec = [&](int c) {
                if (c > r) {
                    for (int x = 1; x <= r; ++x) {
                        int y = x;
                        for (int s = 0; y != t; ++s) {
                            if (s > r) return;
                            y = head[y];
                        }
                    }
                    std::vector<std::vector<int>> hs(r + 1);
                    for (int x = 1; x <= r; ++x)
                        if (x != t) hs[head[x]].push_back(x);
                    for (;;) {
                        std::vector<std::vector<TreeToken>> order(r);
                        for (int x = 1; x <= r; ++x) {
                            for (int p : hs[x]) order[x - 1].push_back({Role::head, p});
                            if (x != t) order[x - 1].push_back({Role::tail, head[x]});
                        }
                        TreeDiagram a(t, order);
                        EXPECT_EQ(is_planar(a), oracle::planar_by_depths(a)) << a.key();
                        EXPECT_EQ(is_planar(a), planar.count(a.key()) == 1) << a.key();
                        int x = 1;
                        while (x <= r && !std::next_permutation(hs[x].begin(), hs[x].end())) ++x;
                        if (x > r) break;
                    }
                    return;
                }
                if (c == t) return rec(c + 1);
                for (int h = 1; h <= r; ++h)
                    if (h != c) {
                        head[c] = h;
                        rec(c + 1);
                    }
            };
            rec(1);
        }
}

TEST(Tree, NonPlanarExamples) {
    // The arrow from 3 passes above the bottom end of leaf 2.
    EXPECT_FALSE(is_planar(tree_from_key("h3,h2|t1|t1")));
    // An arrow cannot cross the trunk.
    EXPECT_FALSE(is_planar(tree_from_key("t3|h3|h1,t2")));
    EXPECT_THROW(tree_from_key("h2|h1"), domain_error);
}

TEST(Tree, InvariantsOfGenerated) {
    for (int r = 2; r <= 5; ++r)
        for (int t = 1; t <= r; ++t)
            for (const auto& a : generate(r, t)) {
                EXPECT_TRUE(is_planar(a));
                EXPECT_EQ(a.trunk(), t);
                EXPECT_EQ(a.arrow_count(), r - 1);
                EXPECT_EQ(a.size(), a.left_leaves() + a.right_leaves() + 1);
                EXPECT_EQ(tree_from_key(a.key()), a);
            }
}

TEST(Tree, LabeledKey) {
    EXPECT_EQ(labeled_key(stack(kE, 1, kE), {2, 5, 7}), "2:h5,h7 5:t2 7:t2");
    EXPECT_THROW(labeled_key(kE, {1, 2, 3}), domain_error);
}

TEST(Stack, TrunkFormulaAndSigns) {
    const auto trees = small_trees(5);
    for (const auto& P : trees)
        for (const auto& Q : trees) {
            if (P.size() + Q.size() > 6) continue;
            for (int k = 1; k <= P.size(); ++k) {
                const TreeDiagram Z = stack(P, k, Q);
                const int r = P.trunk(), s = Q.trunk(), m = Q.size();
                const int t = r < k ? r : (r > k ? r + m - 1 : r + s - 1);
                EXPECT_EQ(Z.trunk(), t);
                EXPECT_EQ(Z.size(), P.size() + Q.size() - 1);
                EXPECT_EQ(sign_tree(Z), sign_tree(P) * sign_tree(Q)) << P.key() << " <" << k << " " << Q.key();
                EXPECT_TRUE(is_planar(Z));
            }
        }
}

TEST(Stack, LeafMaps) {
    // Images of P's leaves: 1..k-1, k+s-1, k+m..m+n-1; images of Q's leaves: k..k+m-1.
    const StackMaps sm = stack_maps(4, 2, 3, 3, 2);
    EXPECT_EQ(sm.p, (std::vector<int>{0, 1, 2, 4, 6}));
    EXPECT_EQ(sm.q, (std::vector<int>{0, 3, 4, 5}));
    EXPECT_EQ(sm.trunk, 2);
    EXPECT_THROW(stack(kE, 3, kE), domain_error);
}

TEST(Stack, Shuffle) {
    const auto trees = small_trees(4);
    int first = 0, second = 0;
    for (const auto& P : trees)
        for (const auto& Q : trees)
            for (const auto& R : trees) {
                if (P.size() + Q.size() + R.size() - 2 > 5) continue;
                for (int i = 1; i <= P.size(); ++i) {
                    const TreeDiagram A = stack(P, i, Q);
                    const StackMaps a = stack_maps(P, i, Q);
                    for (int j = 1; j <= A.size(); ++j) {
                        const TreeDiagram B = stack(A, j, R);
                        const auto inQ = std::find(a.q.begin() + 1, a.q.end(), j);
                        if (inQ != a.q.end()) {
                            const int jj = static_cast<int>(inQ - a.q.begin());
                            EXPECT_EQ(B, stack(P, i, stack(Q, jj, R)));
                            ++second;
                        } else {
                            const int jp = static_cast<int>(std::find(a.p.begin() + 1, a.p.end(), j) - a.p.begin());
                            const StackMaps b = stack_maps(P, jp, R);
                            EXPECT_EQ(B, stack(stack(P, jp, R), b.p[i], Q));
                            ++first;
                        }
                    }
                }
            }
    EXPECT_GT(first, 1000);
    EXPECT_GT(second, 1000);
}

TEST(Decompose, Examples) {
    const TreeDiagram empty;
    const Decomposition d = decompose(kE, 2);
    EXPECT_EQ(d.P, empty);
    EXPECT_EQ(d.R, empty);
    EXPECT_EQ(d.S, empty);
    EXPECT_FALSE(d.bar);

    const TreeDiagram A = stack(kE, 2, kE);
    const Decomposition top = decompose(A, 3);
    EXPECT_EQ(top.P, kE);
    EXPECT_EQ(top.R, empty);
    EXPECT_EQ(top.S, empty);
    EXPECT_EQ(top.v, 2);
    EXPECT_EQ(top.recompose(), A);

    EXPECT_TRUE(decompose(kEbar, 1).bar);
    EXPECT_THROW(decompose(A, 1), domain_error);
}

TEST(Decompose, RoundTripExhaustive) {
    int count = 0;
    for (int r = 2; r <= 5; ++r)
        for (int t = 1; t <= r; ++t)
            for (const auto& a : generate(r, t))
                for (int j = 1; j <= r; ++j) {
                    if (j == t) continue;
                    const Decomposition d = decompose(a, j);
                    EXPECT_EQ(d.recompose(), a) << a.key() << " arrow " << j;
                    EXPECT_EQ(d.bar, a.head_of(j) > j);
                    ++count;
                }
    EXPECT_GT(count, 1000);
}

TEST(Polynomial, SmallCases) {
    const ArrowPolynomial p = tree_polynomial({1, 2}, 1);
    ASSERT_EQ(p.terms.size(), 1u);
    EXPECT_EQ(p.terms.begin()->second.second, 1);

    const ArrowPolynomial q = tree_polynomial({1, 2, 3}, 1);
    std::map<std::string, std::int64_t> got;
    for (const auto& [k, term] : q.terms) got[k] = term.second;
    EXPECT_EQ(got, (std::map<std::string, std::int64_t>{{"h2|h3,t1|t2", 1}, {"h2,h3|t1|t1", 1}, {"h3|t3|h2,t1", -1}}));
    EXPECT_THROW(tree_polynomial({1}, 1), domain_error);
    EXPECT_THROW(tree_polynomial({1, 2}, 3), domain_error);
}

TEST(Polynomial, GoldenFourLeaves) {
    std::map<std::string, std::int64_t> golden;
    std::istringstream in(oracle::read_file(std::string(TINV_FIXTURES) + "/z234_1.golden"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto sp = line.find(' ');
        golden[line.substr(sp + 1)] = std::stoll(line.substr(0, sp));
    }
    ASSERT_EQ(golden.size(), 13u);
    std::map<std::string, std::int64_t> got;
    const ArrowPolynomial p = tree_polynomial({1, 2, 3, 4}, 1);
    for (const auto& [k, term] : p.terms) got[labeled_key(term.first, p.I)] = term.second;
    EXPECT_EQ(got, golden);
}

TEST(Polynomial, AddCancels) {
    ArrowPolynomial p;
    p.add(kE, 2);
    p.add(kE, -2);
    EXPECT_TRUE(p.terms.empty());
}
