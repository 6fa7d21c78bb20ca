#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dowling/serialize.hpp"
#include "test_util.hpp"

using namespace dowling;

TEST(Serialize, SeriesRoundTrip)
{
    std::mt19937 rng(11);
    for (auto G : {trivial_group(), cyclic_group(2), symmetric_group(3)}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto f = testutil::random_series(G, 6, rng, 8, false, true);
            EXPECT_EQ(series_from_json(series_to_json(f), G), f);
            // through text
            auto text = series_to_json(f).dump();
            EXPECT_EQ(series_from_json(json::parse(text), G), f);
        }
    }
}

TEST(Serialize, FractionalTExponents)
{
    // closed forms normalize to integral t powers, so build t^{1/2} directly
    auto c2 = cyclic_group(2);
    auto f = exp_G(c2, 4) * graded_series::t_power(c2, 4, make_rational(1, 2));
    auto j = series_to_json(f);
    bool saw_half = false;
    for (const auto &t : j["terms"]) {
        saw_half = saw_half || t["t_den"].get<long>() == 2;
    }
    EXPECT_TRUE(saw_half);
    EXPECT_EQ(series_from_json(j, c2), f);
}

TEST(Serialize, LargeCoefficientsSurvive)
{
    auto G = trivial_group();
    graded_series f(G, 2);
    rational big(integer("123456789012345678901234567891"), integer(7));
    big.canonicalize();
    f.add_term(monomial::var(1, 0), 0, big);
    EXPECT_EQ(series_from_json(series_to_json(f), G).coefficient(monomial::var(1, 0)), big);
}

TEST(Serialize, WrongGroupRejected)
{
    auto f = exp_G(cyclic_group(2), 3);
    EXPECT_THROW(series_from_json(series_to_json(f), cyclic_group(3)), invalid_argument);
}

TEST(Serialize, ReportFormats)
{
    auto rep = verify(theorem_id::hanlon, cyclic_group(2), "c2", 2, 0, 4);
    auto j = report_to_json(rep);
    EXPECT_EQ(j["theorem"], "hanlon");
    EXPECT_TRUE(j["verified"].get<bool>());
    EXPECT_EQ(j["degrees"].size(), 2u);
    EXPECT_EQ(j["natural_specialization"], "equal");
    auto csv = report_to_csv(rep);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_NE(report_to_text(rep).find("verified"), std::string::npos);
}

TEST(Serialize, GroupJson)
{
    auto j = group_to_json(*symmetric_group(3));
    EXPECT_EQ(j["order"], 6);
    EXPECT_EQ(j["classes"].size(), 3u);
    auto pm = power_map_to_json(*cyclic_group(3));
    EXPECT_EQ(pm.size(), 3u);
    // cube of anything is the identity class
    for (const auto &row : pm) {
        EXPECT_EQ(row[2], cyclic_group(3)->identity_class());
    }
}
