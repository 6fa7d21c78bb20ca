#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dowling/poset.hpp"

using namespace dowling;

namespace
{

poset antichain_with_bounds(int k)
{
    // 0 = bottom, 1..k atoms, k+1 = top
    return poset::from_leq(k + 2, [k](int a, int b) { return a == b || a == 0 || b == k + 1; });
}

// Set partitions of [n] as block-id vectors.
std::vector<std::vector<int>> set_partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == n) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            cur[static_cast<std::size_t>(k)] = b;
            rec(k + 1, std::max(used, b + 1));
        }
    };
    rec(1, 1);
    return out;
}

poset partitions_poset(int n)
{
    auto parts = set_partitions(n);
    return poset::from_leq(static_cast<int>(parts.size()), [&](int a, int b) {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (parts[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)]
                        == parts[static_cast<std::size_t>(a)][static_cast<std::size_t>(y)]
                    && parts[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)]
                           != parts[static_cast<std::size_t>(b)][static_cast<std::size_t>(y)]) {
                    return false;
                }
            }
        }
        return true;
    });
}

// Automorphism of boolean_lattice(k) from a permutation of the ground set,
// on the poset's internal indices.
element_map boolean_map(int k, const std::vector<int> &perm)
{
    const auto orig = boolean_lattice(k).original_index();
    std::vector<int> where(orig.size());
    for (std::size_t i = 0; i < orig.size(); ++i) {
        where[static_cast<std::size_t>(orig[i])] = static_cast<int>(i);
    }
    element_map g(static_cast<std::size_t>(1 << k));
    for (std::size_t i = 0; i < orig.size(); ++i) {
        const int s = orig[i];
        int img = 0;
        for (int i = 0; i < k; ++i) {
            if (s >> i & 1) {
                img |= 1 << perm[static_cast<std::size_t>(i)];
            }
        }
        g[i] = where[static_cast<std::size_t>(img)];
    }
    return g;
}

} // namespace

TEST(Poset, MobiusExamples)
{
    EXPECT_EQ(mobius_bottom_top(chain_poset(1)), -1);
    EXPECT_EQ(mobius_bottom_top(chain_poset(2)), 0);
    EXPECT_EQ(mobius_bottom_top(chain_poset(0)), 1);
    EXPECT_EQ(mobius_bottom_top(partitions_poset(3)), 2);
    EXPECT_EQ(mobius_bottom_top(partitions_poset(4)), -6);
    EXPECT_EQ(mobius_bottom_top(boolean_lattice(3)), -1);
    EXPECT_THROW(chain_poset(2).mobius(2, 0), domain_error);
}

TEST(Poset, HomologyExamples)
{
    auto A = antichain_with_bounds(3);
    auto h = A.order_complex_homology(0, 4);
    EXPECT_EQ(h.rank_in_degree(0), 2);
    EXPECT_TRUE(h.concentrated_in(0));

    auto B = boolean_lattice(3);
    auto hb = B.order_complex_homology(0, 7);
    EXPECT_EQ(hb.rank_in_degree(1), 1);
    EXPECT_TRUE(hb.concentrated_in(1));

    // two-element chain: empty proper part, homology in degree -1
    auto hc = chain_poset(1).order_complex_homology(0, 1);
    EXPECT_EQ(hc.rank_in_degree(-1), 1);
    EXPECT_THROW(chain_poset(1).order_complex_homology(1, 0), domain_error);
}

TEST(Poset, RankAndPurity)
{
    auto r = chain_poset(3).rank_and_purity();
    EXPECT_TRUE(r.pure);
    EXPECT_EQ(r.length, 3);
    // bottom < a < b < top and bottom < c < top
    auto P = poset::from_leq(5, [](int x, int y) {
        static const std::set<std::pair<int, int>> rel = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4},
                                                          {2, 4}, {3, 4}};
        return x == y || rel.count({x, y});
    });
    auto rp = P.rank_and_purity();
    EXPECT_FALSE(rp.pure);
    EXPECT_EQ(rp.length, 3);
    auto open = poset::from_leq(2, [](int x, int y) { return x == y; });
    EXPECT_THROW(open.rank_and_purity(), contract_error);
}

TEST(Poset, FromLeqSortsLinearExtension)
{
    // reversed chain input
    auto P = poset::from_leq(4, [](int a, int b) { return a >= b; }, {"a", "b", "c", "d"});
    EXPECT_EQ(P.labels(), (std::vector<std::string>{"d", "c", "b", "a"}));
    EXPECT_EQ(P.original_index(), (std::vector<int>{3, 2, 1, 0}));
    EXPECT_EQ(*P.bottom(), 0);
    EXPECT_EQ(*P.top(), 3);
}

TEST(Poset, LefschetzOnBooleanLattice)
{
    // S_3 on B_3: top homology is the sign representation
    auto B = boolean_lattice(3);
    EXPECT_EQ(lefschetz_top_trace(B, identity_map(8), true), 1);
    EXPECT_EQ(lefschetz_top_trace(B, boolean_map(3, {1, 0, 2})), -1);
    EXPECT_EQ(lefschetz_top_trace(B, boolean_map(3, {1, 2, 0})), 1);
    auto bad = poset::from_leq(5, [](int x, int y) {
        static const std::set<std::pair<int, int>> rel = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4},
                                                          {2, 4}, {3, 4}};
        return x == y || rel.count({x, y});
    });
    EXPECT_THROW(lefschetz_top_trace(bad, identity_map(5)), hypothesis_violation);
}

TEST(Poset, CharacteristicPolynomial)
{
    auto B = boolean_lattice(2);
    EXPECT_EQ(equivariant_char_poly(B, identity_map(4)), (std::vector<long long>{1, -2, 1}));
    EXPECT_EQ(equivariant_char_poly(B, boolean_map(2, {1, 0})), (std::vector<long long>{1, 0, -1}));
    auto Pi3 = partitions_poset(3);
    EXPECT_EQ(equivariant_char_poly(Pi3, identity_map(Pi3.size())), (std::vector<long long>{1, -3, 2}));
}

TEST(PosetProperty, MobiusRecursion)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        // random order from random DAG edges i<j, transitively closed
        std::vector<std::vector<char>> rel(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) {
            rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
            for (int j = i + 1; j < n; ++j) {
                rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng() % 3 == 0;
            }
        }
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                        && rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
                        rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                    }
                }
            }
        }
        auto P = poset::from_leq(n, [&](int a, int b) { return rel[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; });
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (!P.less(x, y)) {
                    continue;
                }
                // sum over [x, y] of mu(z, y) vanishes (dual recursion)
                long long s = 0;
                for (int z = 0; z < n; ++z) {
                    if (P.leq(x, z) && P.leq(z, y)) {
                        s += P.mobius(z, y);
                    }
                }
                EXPECT_EQ(s, 0);
                // Hall: mu(x, y) = reduced Euler characteristic of (x, y)
                const auto chains = P.open_interval_chains(x, y);
                long long chi = 0;
                for (std::size_t k = 0; k < chains.size(); ++k) {
                    chi += (k % 2 ? 1 : -1) * static_cast<long long>(chains[k].size());
                }
                EXPECT_EQ(P.mobius(x, y), chi);
                // Euler-Poincare against the homology ranks
                const auto h = P.order_complex_homology(x, y);
                long long euler = 0;
                for (std::size_t k = 0; k < h.betti.size(); ++k) {
                    euler += (k % 2 ? 1 : -1) * h.betti[k];
                }
                EXPECT_EQ(euler, chi);
            }
        }
    }
}

TEST(PosetProperty, LefschetzDualOracleAgrees)
{
    auto B = boolean_lattice(4);
    fixed_chain_counter counter(B);
    std::vector<int> perm{0, 1, 2, 3};
    do {
        auto g = boolean_map(4, perm);
        EXPECT_TRUE(B.is_automorphism(g));
        EXPECT_EQ(lefschetz_top_trace(B, g), counter.trace(g));
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(lefschetz_via_chains(chain_poset(0), identity_map(1)), 1);
}

TEST(PosetProperty, NonAutomorphismDetected)
{
    auto B = boolean_lattice(2);
    EXPECT_FALSE(B.is_automorphism({1, 0, 2, 3}));
    EXPECT_FALSE(B.is_automorphism({0, 0, 2, 3}));
}
