#include <sstream>

#include <gtest/gtest.h>

#include "dowling/group.hpp"

using namespace dowling;

namespace
{

// Independent conjugacy enumeration: orbit of x under g x g^{-1}, computed
// from the raw table without using the library's inverse table.
std::vector<std::vector<int>> brute_classes(const std::vector<std::vector<int>> &t)
{
    const int m = static_cast<int>(t.size());
    auto inv = [&](int g) {
        for (int h = 0; h < m; ++h) {
            if (t[g][h] == 0) {
                return h;
            }
        }
        return -1;
    };
    std::vector<int> seen(m, 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < m; ++x) {
        if (seen[x]) {
            continue;
        }
        std::vector<int> cls;
        for (int g = 0; g < m; ++g) {
            int y = t[t[g][x]][inv(g)];
            if (!seen[y]) {
                seen[y] = 1;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back(cls);
    }
    return out;
}

} // namespace

TEST(Group, CyclicClassCounts)
{
    EXPECT_EQ(cyclic_group(1)->num_classes(), 1);
    auto c2 = cyclic_group(2);
    EXPECT_EQ(c2->num_classes(), 2);
    EXPECT_EQ(c2->class_power(c2->class_of(1), 2), c2->class_of(0));
    auto c4 = cyclic_group(4);
    EXPECT_EQ(c4->num_classes(), 4);
    EXPECT_EQ(c4->class_power(c4->class_of(1), 2), c4->class_of(2));
    EXPECT_THROW(cyclic_group(0), invalid_argument);
}

TEST(Group, SymmetricThreeClasses)
{
    auto s3 = symmetric_group(3);
    auto expect = brute_classes(s3->table());
    ASSERT_EQ(s3->num_classes(), 3);
    std::vector<int> sizes;
    for (const auto &c : s3->classes()) {
        sizes.push_back(c.size());
        EXPECT_EQ(c.members, expect[static_cast<std::size_t>(c.class_id)]);
    }
    EXPECT_EQ(sizes, (std::vector<int>{1, 3, 2}));
}

TEST(Group, TranspositionSquaresToIdentity)
{
    auto s3 = symmetric_group(3);
    const int tr = s3->class_of(1); // 132
    EXPECT_EQ(s3->class_size(tr), 3);
    for (int g : s3->classes()[static_cast<std::size_t>(tr)].members) {
        EXPECT_EQ(s3->mul(g, g), 0);
    }
    EXPECT_EQ(s3->class_power(tr, 2), s3->identity_class());
}

TEST(Group, KleinFourSingletons)
{
    auto k = klein_four_group();
    EXPECT_EQ(k->num_classes(), 4);
    for (const auto &c : k->classes()) {
        EXPECT_EQ(c.size(), 1);
    }
    EXPECT_EQ(brute_classes(k->table()).size(), 4u);
}

TEST(Group, CorruptedEntryReportsAssociativity)
{
    auto t = symmetric_group(3)->table();
    std::swap(t[1][2], t[1][3]);
    try {
        group_from_table(t);
        FAIL() << "expected validation_error";
    } catch (const validation_error &e) {
        EXPECT_EQ(e.kind, "associativity");
        EXPECT_NE(std::string(e.what()).find("triple"), std::string::npos);
    }
}

TEST(Group, ValidationKinds)
{
    auto kind_of = [](std::vector<std::vector<int>> t) {
        try {
            group_from_table(std::move(t));
        } catch (const validation_error &e) {
            return e.kind;
        }
        return std::string("ok");
    };
    EXPECT_EQ(kind_of({{0, 1}, {1}}), "shape");
    EXPECT_EQ(kind_of({{0, 1}, {1, 2}}), "range");
    EXPECT_EQ(kind_of({{1, 0}, {0, 1}}), "identity");
    EXPECT_EQ(kind_of({{0, 1}, {1, 0}}), "ok");
}

TEST(Group, PowerMapComposes)
{
    for (auto g : {cyclic_group(6), symmetric_group(3), symmetric_group(4), klein_four_group()}) {
        for (const auto &cc : g->classes()) {
            EXPECT_EQ(g->class_power(cc.class_id, 1), cc.class_id);
            for (int j = 1; j <= 6; ++j) {
                for (int k = 1; k <= 6; ++k) {
                    EXPECT_EQ(g->class_power(g->class_power(cc.class_id, j), k), g->class_power(cc.class_id, j * k));
                }
                // independent of the representative
                for (int x : cc.members) {
                    EXPECT_EQ(g->class_of(g->power(x, j)), g->class_power(cc.class_id, j));
                }
            }
        }
    }
}

TEST(Group, ClassSizesSumToOrderAndDivide)
{
    for (auto g : {cyclic_group(5), symmetric_group(4), klein_four_group()}) {
        int total = 0;
        for (const auto &c : g->classes()) {
            total += c.size();
            EXPECT_EQ(g->order() % c.size(), 0);
        }
        EXPECT_EQ(total, g->order());
    }
}

TEST(Group, DeterministicClassIds)
{
    auto a = symmetric_group(4);
    auto b = group_from_table(a->table());
    ASSERT_EQ(a->num_classes(), b->num_classes());
    for (int c = 0; c < a->num_classes(); ++c) {
        EXPECT_EQ(a->classes()[c].members, b->classes()[c].members);
    }
}

TEST(Group, TableTextRoundTrip)
{
    auto s3 = symmetric_group(3);
    std::istringstream in(format_group_table(*s3));
    auto back = parse_group_table(in);
    EXPECT_TRUE(*back == *s3);
    EXPECT_EQ(back->names(), s3->names());
    std::istringstream bad("2\n0 1\n");
    EXPECT_THROW(parse_group_table(bad), validation_error);
}
