#include <faberhurwitz/localization.hpp>
#include <faberhurwitz/loctree.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace faberhurwitz;

TEST_CASE("unique tree with r_inf = 0 for one-part alpha", "[loctree]")
{
    hurwitz_oracle oracle;
    for (int d = 1; d <= 3; ++d) {
        auto trees = enumerate_trees(1, partition::one_part(d), oracle);
        int with_r0 = 0;
        for (auto& t : trees) {
            if (t.r_inf == 0) {
                ++with_r0;
                // the chain root--infinity--t with both edges of weight d
                CHECK(t.delta_root == partition::one_part(d));
                CHECK(t.eta0 == 0);
                CHECK(t.labelings == 1);
            }
        }
        CHECK(with_r0 == 1);
    }
}

TEST_CASE("tree count for alpha=(2), genus 1", "[loctree]")
{
    hurwitz_oracle oracle;
    auto trees = enumerate_trees(1, partition({2}), oracle);
    CHECK(trees.size() == 2);
}

TEST_CASE("balance condition enforced by construction", "[loctree]")
{
    hurwitz_oracle oracle;
    for (auto& t : enumerate_trees(1, partition({2, 1}), oracle)) {
        // every enumerated tree satisfied |beta^v| = |gamma^v| during
        // collection (a violation throws); check the alpha bookkeeping
        CHECK(t.alpha == partition({2, 1}));
        CHECK(t.r_inf <= 1);
    }
}

TEST_CASE("tree sum equals the join-cut recursion at genus 1", "[loctree]")
{
    hurwitz_oracle oracle;
    localization_context ctx(
        []{
            trunc_profile pr;
            pr.z_max = 5;
            pr.p_index_max = 5;
            pr.q_index_max = 5;
            pr.p_len_max = 3;
            pr.u_min = -10;
            pr.u_max = 10;
            return pr;
        }(),
        oracle);
    faber_hurwitz_table fh;
    auto res = solve_symbols(1, 3, 5, ctx, fh);

    for (int d = 1; d <= 3; ++d) {
        for (auto& alpha : partitions_of(d)) {
            CHECK(tree_sum(1, alpha, res.table, oracle) == fh.value(1, alpha));
        }
    }
}

TEST_CASE("tree sum with an empty table reports the missing symbol", "[loctree]")
{
    hurwitz_oracle oracle;
    symbol_table empty;
    CHECK_THROWS_AS(tree_sum(1, partition({1}), empty, oracle), std::out_of_range);
}
