#include <faberhurwitz/hurwitz.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace faberhurwitz;

TEST_CASE("closed formula values", "[hurwitz]")
{
    CHECK(hurwitz_single_closed(partition({1})) == 1);
    CHECK(hurwitz_single_closed(partition({2})) == rat(1, 2));
    CHECK(hurwitz_single_closed(partition({2, 1})) == 4);
    CHECK(hurwitz_single_closed(partition({1, 1})) == 1);
    CHECK(hurwitz_single_closed(partition({3})) == 1);
    CHECK(hurwitz_single_closed(partition({1, 1, 1})) == 24);
}

TEST_CASE("transposition table is a full class sum", "[hurwitz]")
{
    for (int d = 1; d <= 7; ++d) {
        transposition_table tbl(d);
        for (auto& lam : tbl.classes()) {
            std::vector<bigint> e(tbl.classes().size(), 0);
            e[tbl.class_index(lam)] = 1;
            auto out = tbl.step(e);
            bigint total = 0;
            for (auto& v : out) {
                total += v;
            }
            CHECK(total == bigint(d) * (d - 1) / 2);
        }
    }
}

TEST_CASE("disconnected monodromy counts", "[hurwitz]")
{
    hurwitz_oracle oracle;
    // alpha = (2), no beta: r = 1, the single transposition is forced
    CHECK(oracle.monodromy_disconnected(0, partition({2})) == rat(1, 2));
    // alpha = (1,1), no beta: r = 2, tuples ((12),(12))
    CHECK(oracle.monodromy_disconnected(0, partition({1, 1})) == rat(1, 2));
    // alpha = beta = (j): r = 0, trivial covers count 1/j
    for (int j = 1; j <= 5; ++j) {
        partition pj({j});
        CHECK(oracle.monodromy_disconnected(0, pj, pj) == rat(1, j));
    }
}

TEST_CASE("connected equals closed form up to degree 6", "[hurwitz]")
{
    hurwitz_oracle oracle;
    for (int d = 1; d <= 6; ++d) {
        for (auto& alpha : partitions_of(d)) {
            CHECK(oracle.connected(0, alpha) == hurwitz_single_closed(alpha));
        }
    }
}

TEST_CASE("connected double values", "[hurwitz]")
{
    hurwitz_oracle oracle;
    CHECK(oracle.connected(0, partition({1, 1})) == 1);
    CHECK(oracle.connected(0, partition({2}), partition({1, 1})) == 1);
    CHECK(oracle.connected(0, partition({2, 1}), partition({2, 1})) == 4);
    for (int j = 1; j <= 5; ++j) {
        partition pj({j});
        CHECK(oracle.connected(0, pj, pj) == rat(1, j));
    }
}

TEST_CASE("double Hurwitz symmetry", "[hurwitz]")
{
    hurwitz_oracle oracle;
    for (int d = 1; d <= 4; ++d) {
        for (auto& alpha : partitions_of(d)) {
            for (auto& beta : partitions_of(d)) {
                for (int g = 0; g <= 1; ++g) {
                    CHECK(oracle.connected(g, alpha, beta) == oracle.connected(g, beta, alpha));
                }
            }
        }
    }
}

TEST_CASE("single series coefficients", "[hurwitz]")
{
    trunc_profile pr;
    pr.z_max = 4;
    pr.p_index_max = 4;
    series h = hurwitz_series_single(pr);
    CHECK(h.coefficient(mono::of(var_z(), 1).times(var_p(1), 1)) == 1);
    CHECK(h.coefficient(mono::of(var_z(), 2).times(var_p(2), 1)) == rat(1, 2));
}

TEST_CASE("double series coefficients", "[hurwitz]")
{
    trunc_profile pr;
    pr.z_max = 3;
    pr.p_index_max = 3;
    pr.q_index_max = 3;
    pr.u_min = 0;
    pr.u_max = 3;
    hurwitz_oracle oracle;
    series h = hurwitz_series_double(pr, oracle);
    CHECK(h.coefficient(mono::of(var_z(), 1).times(var_p(1), 1).times(var_q(1), 1).times(var_u(), 1)) == 1);
}
