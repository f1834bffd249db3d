#include <faberhurwitz/degeneration.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace faberhurwitz;

TEST_CASE("spot Faber-Hurwitz values", "[degeneration]")
{
    faber_hurwitz_table tbl;
    CHECK(tbl.value(1, partition({1})) == 1);
    CHECK(tbl.value(1, partition({2})) == 5);
    CHECK(tbl.value(1, partition({3})) == 39);
    CHECK(tbl.value(2, partition({1})) == 1);
    CHECK(tbl.value(1, partition({1, 1})) == 12);
}

TEST_CASE("one-part closed form values", "[degeneration]")
{
    CHECK(one_part_closed(1, 1) == 1);
    CHECK(one_part_closed(1, 2) == 5);
    CHECK(one_part_closed(2, 1) == 1);
}

TEST_CASE("recursion matches one-part closed form", "[degeneration]")
{
    faber_hurwitz_table tbl;
    for (int g = 1; g <= 3; ++g) {
        for (int d = 1; d <= 6; ++d) {
            CHECK(tbl.value(g, partition::one_part(d)) == one_part_closed(g, d));
        }
    }
}

TEST_CASE("Faber-Hurwitz numbers observed nonnegative", "[degeneration]")
{
    faber_hurwitz_table tbl;
    for (int g = 1; g <= 3; ++g) {
        for (int d = 1; d <= 6; ++d) {
            for (auto& alpha : partitions_of(d)) {
                CHECK(tbl.value(g, alpha) >= 0);
            }
        }
    }
}

TEST_CASE("fh series coefficients", "[degeneration]")
{
    faber_hurwitz_table tbl;
    trunc_profile pr;
    pr.z_max = 3;
    pr.p_index_max = 3;
    series f1 = fh_series(1, pr, tbl);
    CHECK(f1.coefficient(mono::of(var_z(), 1).times(var_p(1), 1)) == 1);
    CHECK(f1.coefficient(mono::of(var_z(), 2).times(var_p(2), 1)) == rat(5, 2));
    CHECK(f1.coefficient(mono::of(var_z(), 2).times(var_p(1), 2)) == 1);
}

TEST_CASE("join-cut residual vanishes", "[degeneration]")
{
    faber_hurwitz_table tbl;
    trunc_profile pr;
    pr.z_max = 4;
    pr.p_index_max = 4;
    for (int g = 1; g <= 2; ++g) {
        CHECK(joincut_residual(g, pr, tbl).is_zero());
    }
}

TEST_CASE("perturbing one value breaks the join-cut equation", "[degeneration]")
{
    faber_hurwitz_table tbl;
    trunc_profile pr;
    pr.z_max = 3;
    pr.p_index_max = 3;
    series fg = fh_series(1, pr, tbl);
    series h0 = hurwitz_series_single(pr);

    // residual recomputed with F^1_{(2)} shifted by +1
    series bad = fg;
    bad.add_term(mono::of(var_z(), 2).times(var_p(2), 1), rat(1, factorial(r_fab(partition({2})))));

    series lhs = bad.euler(var_z()) - bad + bad.euler_kind(var_kind::p);
    series rhs(pr);
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j + i <= 3; ++j) {
            rhs += (h0.derive(var_p(i)).scaled(i) * bad.derive(var_p(j)).scaled(j))
                       .times_monomial(mono::of(var_p(i + j), 1), 1);
        }
    }
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; i + j <= 3; ++j) {
            rhs += bad.derive(var_p(i + j)).scaled(rat(i + j, 2)).times_monomial(
                mono::of(var_p(i), 1).times(var_p(j), 1), 1);
        }
    }
    for (int i = 1; i <= 3; ++i) {
        rhs += h0.derive(var_p(i)).scaled(rat(ipow(i, 3))).times_monomial(mono::of(var_p(i), 1), 1);
    }
    series residual = lhs - rhs;
    CHECK(!residual.is_zero());
    CHECK(residual.coefficient(mono::of(var_z(), 2).times(var_p(2), 1)) != 0);
}
