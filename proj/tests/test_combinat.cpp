#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace faberhurwitz;

TEST_CASE("aut sizes", "[combinat]")
{
    CHECK(aut_size(partition({1})) == 1);
    CHECK(aut_size(partition({2, 2, 1})) == 2);
    CHECK(aut_size(partition({1, 1, 1, 1})) == 24);
}

TEST_CASE("partition enumeration", "[combinat]")
{
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(0)[0].empty());
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(6).size() == 11);

    // reverse-lexicographic order, (n) first
    auto p4 = partitions_of(4);
    CHECK(p4[0] == partition({4}));
    CHECK(p4[1] == partition({3, 1}));
    CHECK(p4[2] == partition({2, 2}));
    CHECK(p4[3] == partition({2, 1, 1}));
    CHECK(p4[4] == partition({1, 1, 1, 1}));
}

TEST_CASE("class-size identity", "[combinat]")
{
    // sum over partitions of n of n!/z_alpha = n!  <=>  sum 1/z_alpha = 1
    for (int n = 1; n <= 12; ++n) {
        rat total = 0;
        for (auto& p : partitions_of(n)) {
            total += rat(1, centralizer_size(p));
        }
        CHECK(total == 1);
    }
}

TEST_CASE("aut matches multiplicities", "[combinat]")
{
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> parts;
        int len = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < len; ++i) {
            parts.push_back(1 + static_cast<int>(rng() % 5));
        }
        partition p(parts);
        bigint prod = 1;
        for (auto& [part, mult] : p.multiplicities()) {
            (void)part;
            prod *= factorial(mult);
        }
        CHECK(aut_size(p) == prod);
    }
}

TEST_CASE("double factorial", "[combinat]")
{
    CHECK(double_factorial_odd(-1) == 1);
    CHECK(double_factorial_odd(1) == 1);
    CHECK(double_factorial_odd(5) == 15);
    CHECK(double_factorial_odd(9) == 945);
    CHECK_THROWS_AS(double_factorial_odd(4), std::invalid_argument);
    CHECK_THROWS_AS(double_factorial_odd(-3), std::invalid_argument);
}

TEST_CASE("branch counts", "[combinat]")
{
    auto r = branch_counts(0, partition({2, 1}));
    CHECK(r.r_g_alpha == 3);
    CHECK(r.r_fab == 4);

    CHECK(branch_counts(1, partition({2})).r_fab == 2);

    auto rab = branch_counts(0, partition({3}), partition({1, 1, 1}));
    REQUIRE(rab.r_g_alpha_beta.has_value());
    CHECK(*rab.r_g_alpha_beta == 2);

    CHECK_THROWS_AS(branch_counts(0, partition({3}), partition({1, 1})), std::invalid_argument);

    // r^Fab = r^g_alpha - (2g - 1) exactly
    for (int g = 0; g <= 3; ++g) {
        for (int n = 1; n <= 8; ++n) {
            for (auto& p : partitions_of(n)) {
                auto b = branch_counts(g, p);
                CHECK(b.r_fab == b.r_g_alpha - (2 * g - 1));
            }
        }
    }
}
