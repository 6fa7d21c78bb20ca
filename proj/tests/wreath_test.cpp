#include <random>
#include <set>

#include <gtest/gtest.h>

#include "dowling/wreath.hpp"

using namespace dowling;

namespace
{

// Conjugacy classes of G wr S_n by brute-force orbit computation.
std::vector<std::set<std::size_t>> brute_classes(const finite_group &G, int n)
{
    auto els = all_elements(G, n);
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> index;
    for (std::size_t i = 0; i < els.size(); ++i) {
        index[{els[i].perm, els[i].labels}] = i;
    }
    std::vector<int> cls(els.size(), -1);
    std::vector<std::set<std::size_t>> out;
    for (std::size_t i = 0; i < els.size(); ++i) {
        if (cls[i] >= 0) {
            continue;
        }
        std::set<std::size_t> orbit;
        for (const auto &v : els) {
            auto c = wreath_mul(G, wreath_mul(G, v, els[i]), wreath_inverse(G, v));
            orbit.insert(index.at({c.perm, c.labels}));
        }
        for (auto j : orbit) {
            cls[j] = static_cast<int>(out.size());
        }
        out.push_back(orbit);
    }
    return out;
}

std::size_t brute_centralizer(const finite_group &G, const wreath_element &w)
{
    std::size_t count = 0;
    for (const auto &v : all_elements(G, w.n())) {
        if (wreath_mul(G, v, w) == wreath_mul(G, w, v)) {
            ++count;
        }
    }
    return count;
}

wreath_class_type type_of(int n, std::map<series_var, int> a)
{
    return {n, std::move(a)};
}

} // namespace

TEST(Wreath, EnumerateClassTypes)
{
    auto c2 = cyclic_group(2);
    EXPECT_EQ(enumerate_class_types(*c2, 2).size(), brute_classes(*c2, 2).size());
    EXPECT_EQ(enumerate_class_types(*c2, 2).size(), 5u);
    EXPECT_EQ(enumerate_class_types(*trivial_group(), 3).size(), 3u);
    EXPECT_EQ(enumerate_class_types(*symmetric_group(3), 0).size(), 1u);
    EXPECT_EQ(enumerate_class_types(*symmetric_group(3), 2).size(), brute_classes(*symmetric_group(3), 2).size());
    EXPECT_EQ(enumerate_class_types(*cyclic_group(3), 3).size(), brute_classes(*cyclic_group(3), 3).size());
}

TEST(Wreath, CentralizerOrders)
{
    auto c2 = cyclic_group(2);
    const int one = c2->class_of(0), minus = c2->class_of(1);
    EXPECT_EQ(centralizer_order(*c2, type_of(2, {{{1, one}, 2}})), 8);
    auto t2 = type_of(2, {{{2, one}, 1}});
    EXPECT_EQ(centralizer_order(*c2, t2), 4);
    EXPECT_EQ(brute_centralizer(*c2, representative(*c2, t2)), 4u);
    auto t11 = type_of(2, {{{1, one}, 1}, {{1, minus}, 1}});
    EXPECT_EQ(centralizer_order(*c2, t11), 4);
    EXPECT_EQ(brute_centralizer(*c2, representative(*c2, t11)), 4u);
}

TEST(Wreath, CentralizersMatchBruteForce)
{
    for (auto G : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
        for (int n = 1; n <= 2; ++n) {
            for (const auto &t : enumerate_class_types(*G, n)) {
                EXPECT_EQ(centralizer_order(*G, t), brute_centralizer(*G, representative(*G, t))) << t.str();
            }
        }
    }
}

TEST(Wreath, CycleIndexExamples)
{
    auto c2 = cyclic_group(2);
    const int one = c2->class_of(0), minus = c2->class_of(1);
    EXPECT_EQ(cycle_index(*c2, identity_type(*c2, 2)), monomial::var(1, one, 2));
    EXPECT_EQ(cycle_index(*c2, type_of(2, {{{2, minus}, 1}})), monomial::var(2, minus));
    EXPECT_EQ(cycle_index(*c2, type_of(2, {{{1, one}, 1}, {{1, minus}, 1}})),
              monomial::var(1, one) * monomial::var(1, minus));
}

TEST(Wreath, ElementTypeExamples)
{
    auto c2 = cyclic_group(2);
    const int one = c2->class_of(0), minus = c2->class_of(1);
    EXPECT_EQ(element_type(*c2, wreath_element::identity(3)), identity_type(*c2, 3));
    EXPECT_EQ(element_type(*c2, {{1, 0}, {0, 0}}), type_of(2, {{{2, one}, 1}}));
    EXPECT_EQ(element_type(*c2, {{1, 0}, {0, 1}}), type_of(2, {{{2, minus}, 1}}));
    auto rep = representative(*c2, type_of(2, {{{2, minus}, 1}}));
    EXPECT_EQ(rep.perm, (std::vector<int>{1, 0}));
    EXPECT_EQ(rep.labels, (std::vector<int>{1, 0}));
    EXPECT_EQ(representative(*c2, identity_type(*c2, 3)), wreath_element::identity(3));
}

TEST(Wreath, RepresentativeRoundTrip)
{
    for (auto G : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
        for (int n = 0; n <= 4; ++n) {
            for (const auto &t : enumerate_class_types(*G, n)) {
                EXPECT_EQ(element_type(*G, representative(*G, t)), t);
            }
        }
    }
}

TEST(Wreath, ActionCommutesWithLeftMultiplication)
{
    auto G = symmetric_group(3);
    std::mt19937 rng(1);
    auto els = all_elements(*G, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto &w = els[rng() % els.size()];
        for (int h = 0; h < G->order(); ++h) {
            for (int g = 0; g < G->order(); ++g) {
                for (int m = 0; m < 2; ++m) {
                    auto [g1, m1] = w.apply(*G, G->mul(h, g), m);
                    auto [g2, m2] = w.apply(*G, g, m);
                    EXPECT_EQ(g1, G->mul(h, g2));
                    EXPECT_EQ(m1, m2);
                }
            }
        }
    }
}

TEST(Wreath, ElementTypeIsClassInvariant)
{
    std::mt19937 rng(2);
    for (auto G : {cyclic_group(3), symmetric_group(3)}) {
        auto els = all_elements(*G, 3);
        for (int trial = 0; trial < 300; ++trial) {
            const auto &w = els[rng() % els.size()];
            const auto &v = els[rng() % els.size()];
            auto c = wreath_mul(*G, wreath_mul(*G, v, w), wreath_inverse(*G, v));
            EXPECT_EQ(element_type(*G, c), element_type(*G, w));
        }
    }
}

TEST(Wreath, ClassSizesSumToOrder)
{
    for (auto G : {trivial_group(), cyclic_group(2), cyclic_group(3), symmetric_group(3), klein_four_group()}) {
        for (int n = 0; n <= 4; ++n) {
            if (G->order() == 6 && n > 3) {
                continue;
            }
            const integer order = wreath_order(*G, n);
            integer total = 0;
            for (const auto &t : enumerate_class_types(*G, n)) {
                total += order / centralizer_order(*G, t);
            }
            EXPECT_EQ(total, order);
        }
    }
}

TEST(Wreath, FrobeniusExamples)
{
    auto c2 = cyclic_group(2);
    class_function triv, reg, zero;
    for (const auto &t : enumerate_class_types(*c2, 2)) {
        triv[t] = 1;
        reg[t] = t == identity_type(*c2, 2) ? rational(wreath_order(*c2, 2)) : rational(0);
        zero[t] = 0;
    }
    EXPECT_EQ(frobenius_ch(c2, 2, triv, 2), exp_G(c2, 2).homogeneous(2));
    graded_series p11(c2, 2);
    p11.add_term(monomial::var(1, c2->identity_class(), 2), 0, 1);
    EXPECT_EQ(frobenius_ch(c2, 2, reg, 2), p11);
    EXPECT_TRUE(frobenius_ch(c2, 2, zero).is_zero());
    class_function partial = triv;
    partial.erase(partial.begin());
    EXPECT_THROW(frobenius_ch(c2, 2, partial), incomplete_class_function);
}

TEST(Wreath, TraceExtractExamples)
{
    auto c2 = cyclic_group(2);
    auto h2 = exp_G(c2, 2).homogeneous(2);
    EXPECT_EQ(trace_extract(*c2, h2, identity_type(*c2, 2)), 1);
    graded_series p11(c2, 2);
    p11.add_term(monomial::var(1, c2->identity_class(), 2), 0, 1);
    EXPECT_EQ(trace_extract(*c2, p11, identity_type(*c2, 2)), 8);
    EXPECT_THROW(trace_extract(*c2, exp_G(c2, 2), identity_type(*c2, 2)), contract_error);
}

TEST(Wreath, FrobeniusTraceRoundTrip)
{
    std::mt19937 rng(4);
    for (auto G : {cyclic_group(2), symmetric_group(3)}) {
        for (int n = 1; n <= 3; ++n) {
            class_function phi;
            for (const auto &t : enumerate_class_types(*G, n)) {
                phi[t] = make_rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
            }
            auto f = frobenius_ch(G, n, phi);
            EXPECT_EQ(trace_function(*G, f, n), phi);
            EXPECT_EQ(frobenius_ch(G, n, trace_function(*G, f, n)), f);
        }
    }
}

TEST(Wreath, ClassSumMatchesElementSum)
{
    // (1/|W|) sum_x tr(x) Psi(x) with tr = number of fixed positions
    for (auto G : {cyclic_group(2), symmetric_group(3)}) {
        const int n = 2;
        graded_series direct(G, n);
        const rational w(wreath_order(*G, n));
        for (const auto &x : all_elements(*G, n)) {
            int fixed = 0;
            for (int m = 0; m < n; ++m) {
                fixed += x.perm[static_cast<std::size_t>(m)] == m ? 1 : 0;
            }
            direct.add_term(cycle_index(*G, element_type(*G, x)), 0, rational(fixed) / w);
        }
        class_function phi;
        for (const auto &t : enumerate_class_types(*G, n)) {
            const auto rep = representative(*G, t);
            int fixed = 0;
            for (int m = 0; m < n; ++m) {
                fixed += rep.perm[static_cast<std::size_t>(m)] == m ? 1 : 0;
            }
            phi[t] = fixed;
        }
        EXPECT_EQ(frobenius_ch(G, n, phi), direct);
    }
}

TEST(Wreath, InductionProductOfTrivials)
{
    // Ind from (G wr S_a) x (G wr S_b) of the trivial module is the permutation
    // module on a-subsets of [n]; its characteristic is h_a h_b.
    for (auto G : {trivial_group(), cyclic_group(2), symmetric_group(3)}) {
        for (int n = 1; n <= 3; ++n) {
            const auto E = exp_G(G, n);
            for (int a = 0; a <= n; ++a) {
                class_function phi;
                for (const auto &t : enumerate_class_types(*G, n)) {
                    const auto rep = representative(*G, t);
                    int count = 0;
                    for (int mask = 0; mask < (1 << n); ++mask) {
                        if (__builtin_popcount(static_cast<unsigned>(mask)) != a) {
                            continue;
                        }
                        int img = 0;
                        for (int m = 0; m < n; ++m) {
                            if (mask >> m & 1) {
                                img |= 1 << rep.perm[static_cast<std::size_t>(m)];
                            }
                        }
                        count += img == mask ? 1 : 0;
                    }
                    phi[t] = count;
                }
                auto prod = (E.homogeneous(a) * E.homogeneous(n - a)).truncated(n);
                EXPECT_EQ(frobenius_ch(G, n, phi), prod);
            }
        }
    }
}
