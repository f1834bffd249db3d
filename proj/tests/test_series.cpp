#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>
#include <faberhurwitz/transforms.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace faberhurwitz;

namespace {

trunc_profile zprof(int zmax)
{
    trunc_profile pr;
    pr.z_max = zmax;
    return pr;
}

series zpow(int k, const trunc_profile& pr)
{
    return series::monomial(mono::of(var_z(), k), 1, pr);
}

series random_series(std::mt19937& rng, const trunc_profile& pr, int zmax)
{
    series s(pr);
    for (int k = 0; k <= zmax; ++k) {
        int num = static_cast<int>(rng() % 11) - 5;
        int den = 1 + static_cast<int>(rng() % 4);
        s.add_term(mono::of(var_z(), k), rat(num, den));
    }
    return s;
}

} // namespace

TEST_CASE("basic arithmetic", "[series]")
{
    auto pr = zprof(8);
    series one = series::constant(1, pr);
    series z = series::variable(var_z(), pr);

    CHECK((one + z) * (one - z) == one - z * z);
    CHECK((z + z * z) + (z - z * z) == z.scaled(2));
    CHECK((z * series(pr)).is_zero());
}

TEST_CASE("ring axioms on random series", "[series]")
{
    std::mt19937 rng(99);
    auto pr = zprof(6);
    for (int trial = 0; trial < 25; ++trial) {
        series a = random_series(rng, pr, 6);
        series b = random_series(rng, pr, 6);
        series c = random_series(rng, pr, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("derive and euler", "[series]")
{
    auto pr = zprof(8);
    series z3 = zpow(3, pr);
    CHECK(z3.euler(var_z()) == z3.scaled(3));

    trunc_profile pr2 = pr;
    pr2.p_index_max = 4;
    series f = series::monomial(mono::of(var_p(2), 1).times(var_z(), 2), 1, pr2);
    CHECK(f.derive(var_p(2)) == zpow(2, pr2));

    // euler applied (2g+1) = 3 times to z^2 gives 8 z^2
    series z2 = zpow(2, pr);
    series e = z2;
    for (int i = 0; i < 3; ++i) {
        e = e.euler(var_z());
    }
    CHECK(e == z2.scaled(8));
}

TEST_CASE("substitute", "[series]")
{
    trunc_profile pr;
    pr.z_max = 5;
    pr.u_min = 0;
    pr.u_max = 5;

    // z -> z/(1-u) applied to z^2 gives z^2 (1 + 2u + 3u^2 + ...)
    series zz = zpow(2, pr);
    series geom(pr); // z/(1-u) = z * sum u^k
    for (int k = 0; k <= 5; ++k) {
        geom.add_term(mono::of(var_z(), 1).times(var_u(), k), 1);
    }
    series got = substitute(zz, {{var_z(), geom}});
    for (int k = 0; k <= 3; ++k) {
        CHECK(got.coefficient(mono::of(var_z(), 2).times(var_u(), k)) == rat(k + 1));
    }

    // identity binding
    CHECK(substitute(zz, {{var_z(), series::variable(var_z(), pr)}}) == zz);
}

TEST_CASE("invert and log", "[series]")
{
    auto pr = zprof(8);
    series one = series::constant(1, pr);
    series z = series::variable(var_z(), pr);
    series f = one - z;
    series g = invert(f);
    CHECK(f * g == one);

    series lg = log_series(invert(one - z));
    // -log(1-z) = sum z^k / k
    for (int k = 1; k <= 8; ++k) {
        CHECK(lg.coefficient(mono::of(var_z(), k)) == rat(1, k));
    }
}

TEST_CASE("exact division", "[series]")
{
    trunc_profile pr;
    pr.x_total_max = 8;
    series x1 = series::variable(var_x(1), pr);
    series x2 = series::variable(var_x(2), pr);
    series num = x1 * x1 - x2 * x2;
    CHECK(divide_exact(num, x1 - x2) == x1 + x2);
    CHECK_THROWS(divide_exact(x1, x1 - x2));
}

TEST_CASE("fixed point: tree equation", "[series]")
{
    auto pr = zprof(10);
    // w = z e^w; coefficients n^{n-1}/n!
    auto rhs = [&pr](const std::vector<series>& s) {
        series expw = series::constant(1, pr);
        series pw = series::constant(1, pr);
        for (int k = 1; k <= 10; ++k) {
            pw = pw * s[0];
            if (pw.is_zero()) {
                break;
            }
            expw += pw.scaled(rat(1, factorial(k)));
        }
        return series::variable(var_z(), pr) * expw;
    };
    auto sol = solve_fixed_point<rat>({rhs}, pr);
    for (int n = 1; n <= 10; ++n) {
        CHECK(sol[0].coefficient(mono::of(var_z(), n)) == rat(ipow(n, n - 1), factorial(n)));
    }

    // trivially closed system s = z
    auto idrhs = [&pr](const std::vector<series>&) { return series::variable(var_z(), pr); };
    auto sol2 = solve_fixed_point<rat>({idrhs}, pr);
    CHECK(sol2[0] == series::variable(var_z(), pr));
}

TEST_CASE("fixed point: v = x e^{u q1 v}", "[series]")
{
    trunc_profile pr;
    pr.z_max = 4;
    pr.u_min = 0;
    pr.u_max = 4;
    pr.q_index_max = 1;
    pr.q_len_max = 4;
    auto rhs = [&pr](const std::vector<series>& s) {
        series arg = s[0].times_monomial(mono::of(var_u(), 1).times(var_q(1), 1), 1);
        series e = series::constant(1, pr);
        series pw = series::constant(1, pr);
        for (int k = 1; k <= 4; ++k) {
            pw = pw * arg;
            if (pw.is_zero()) {
                break;
            }
            e += pw.scaled(rat(1, factorial(k)));
        }
        return series::variable(var_z(), pr) * e;
    };
    auto v = solve_fixed_point<rat>({rhs}, pr)[0];
    CHECK(v.coefficient(mono::of(var_z(), 1)) == 1);
    CHECK(v.coefficient(mono::of(var_z(), 2).times(var_u(), 1).times(var_q(1), 1)) == 1);
    CHECK(v.coefficient(mono::of(var_z(), 3).times(var_u(), 2).times(var_q(1), 2)) == rat(3, 2));
}

TEST_CASE("lagrange inversion", "[series]")
{
    auto pr = zprof(8);
    series z = series::variable(var_z(), pr);

    CHECK(lagrange_invert(z, var_z(), 8) == z);

    // f = z - z^2 inverts to the Catalan series
    series f = z - z * z;
    series g = lagrange_invert(f, var_z(), 8);
    CHECK(g.coefficient(mono::of(var_z(), 1)) == 1);
    CHECK(g.coefficient(mono::of(var_z(), 2)) == 1);
    CHECK(g.coefficient(mono::of(var_z(), 3)) == 2);
    CHECK(g.coefficient(mono::of(var_z(), 4)) == 5);
    CHECK(substitute(g, {{var_z(), f}}) == z);
    CHECK(substitute(f, {{var_z(), g}}) == z);

    // f = sum n^n z^n / n! (= y - 1); composition both ways to degree 6
    auto pr6 = zprof(6);
    series ym1(pr6);
    for (int n = 1; n <= 6; ++n) {
        ym1.add_term(mono::of(var_z(), n), rat(ipow(n, n), factorial(n)));
    }
    series gg = lagrange_invert(ym1, var_z(), 6);
    CHECK(substitute(gg, {{var_z(), ym1}}) == series::variable(var_z(), pr6));
    CHECK(substitute(ym1, {{var_z(), gg}}) == series::variable(var_z(), pr6));

    CHECK_THROWS(lagrange_invert(z * z, var_z(), 8));
}

TEST_CASE("lagrange round trips on random admissible series", "[series]")
{
    std::mt19937 rng(7);
    auto pr = zprof(6);
    for (int trial = 0; trial < 20; ++trial) {
        series f(pr);
        int c1 = 1 + static_cast<int>(rng() % 3);
        f.add_term(mono::of(var_z(), 1), rat(c1, 1 + static_cast<int>(rng() % 2)));
        for (int k = 2; k <= 6; ++k) {
            f.add_term(mono::of(var_z(), k), rat(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3)));
        }
        series g = lagrange_invert(f, var_z(), 6);
        CHECK(substitute(g, {{var_z(), f}}) == series::variable(var_z(), pr));
        CHECK(substitute(f, {{var_z(), g}}) == series::variable(var_z(), pr));
    }
}

TEST_CASE("symmetrize", "[series]")
{
    trunc_profile pr;
    pr.z_max = 4;
    pr.p_index_max = 4;

    series f = series::monomial(mono::of(var_z(), 3).times(var_p(2), 1).times(var_p(1), 1), 1, pr);
    series s = symmetrize(f, 2);
    CHECK(s.coefficient(mono::of(var_x(1), 2).times(var_x(2), 1)) == 1);
    CHECK(s.coefficient(mono::of(var_x(1), 1).times(var_x(2), 2)) == 1);
    CHECK(s.term_count() == 2);

    series g = series::monomial(mono::of(var_z(), 2).times(var_p(1), 2), 1, pr);
    series s2 = symmetrize(g, 2);
    CHECK(s2.coefficient(mono::of(var_x(1), 1).times(var_x(2), 1)) == 2);
    CHECK(s2.term_count() == 1);

    series h = series::monomial(mono::of(var_z(), 2).times(var_p(2), 1), 1, pr);
    CHECK(symmetrize(h, 1).coefficient(mono::of(var_x(1), 2)) == 1);
    // wrong length maps to zero
    CHECK(symmetrize(h, 2).is_zero());

    // linearity and symmetry under transpositions of the x variables
    std::mt19937 rng(3);
    series a(pr), b(pr);
    for (auto& alpha : partitions_of(4)) {
        mono m = mono::of(var_z(), 4);
        for (auto& [part, mult] : alpha.multiplicities()) {
            m = m.times(var_p(part), mult);
        }
        a.add_term(m, rat(static_cast<int>(rng() % 5), 1));
        b.add_term(m, rat(static_cast<int>(rng() % 5), 1));
    }
    CHECK(symmetrize(a + b, 2) == symmetrize(a, 2) + symmetrize(b, 2));
    series sym = symmetrize(a, 2);
    series swapped(sym.profile());
    for (auto& [m, c] : sym.terms()) {
        mono sm = mono::of(var_x(1), m.exponent(var_x(2))).times(var_x(2), m.exponent(var_x(1)));
        swapped.add_term(sm, c);
    }
    CHECK(sym == swapped);
}

TEST_CASE("lambda substitution on x series", "[series]")
{
    trunc_profile pr;
    pr.x_total_max = 4;
    pr.u_min = -4;
    pr.u_max = 4;

    // Lambda on u x1: u -> -u, x1 -> x1/(1-u)
    series f = series::monomial(mono::of(var_u(), 1).times(var_x(1), 1), 1, pr);
    series g = lambda_x(f);
    for (int k = 0; k <= 3; ++k) {
        CHECK(g.coefficient(mono::of(var_u(), 1 + k).times(var_x(1), 1)) == rat(-1));
    }

    // involution on the u-substitution alone
    series uu = series::monomial(mono::of(var_u(), 3), 1, pr);
    CHECK(lambda_x(lambda_x(uu)) == uu);
}

TEST_CASE("omega substitution", "[series]")
{
    trunc_profile pr;
    pr.q_index_max = 4;
    pr.q_len_max = 4;
    series f = series::variable(var_q(1), pr) + series::variable(var_q(2), pr);
    series g = omega_sub(f);
    CHECK(g == series::constant(2, pr)); // 1^0/1! + 2^1/2! = 1 + 1
}

TEST_CASE("change of variables C", "[series]")
{
    trunc_profile pr;
    pr.x_total_max = 6;
    pr.y_total_max = 6;

    // defining property: y(x1) - 1 maps to the monomial h1 = y1 - 1
    series ym1(pr);
    for (int n = 1; n <= 6; ++n) {
        ym1.add_term(mono::of(var_x(1), n), rat(ipow(n, n), factorial(n)));
    }
    change_to_y_cache cache;
    series img = change_to_y(ym1, 1, cache);
    CHECK(img == series::monomial(mono::of(var_h(1), 1), 1, img.profile()));

    // w(x1) maps to 1 - 1/y1 = h - h^2 + h^3 - ...
    series w(pr);
    for (int n = 1; n <= 6; ++n) {
        w.add_term(mono::of(var_x(1), n), rat(ipow(n, n - 1), factorial(n)));
    }
    series wimg = change_to_y(w, 1, cache);
    for (int k = 1; k <= 6; ++k) {
        CHECK(wimg.coefficient(mono::of(var_h(1), k)) == rat(k % 2 == 1 ? 1 : -1));
    }

    // operator identity: C (x d/dx) = y^2 (y-1) d/dy C on monomials x1^a
    for (int a = 1; a <= 5; ++a) {
        series xa = series::monomial(mono::of(var_x(1), a), 1, pr);
        series lhs = change_to_y(xa.euler(var_x(1)), 1, cache);
        series rhs_h = change_to_y(xa, 1, cache);
        series rhs = euler_y_operator(rhs_h, 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("top degree and even part", "[series]")
{
    trunc_profile pr;
    pr.y_total_max = 10;
    pr.t_max = 6;
    series y1 = series::variable(var_y(1), pr);
    series f = y1 * y1 * series::constant(rat(1, 2), pr) + y1;
    CHECK(top_degree_slice(f, 2) == y1 * y1 * series::constant(rat(1, 2), pr));

    series t = series::variable(var_t(), pr);
    series g = t + t * t + t * t * t;
    CHECK(even_t_part(g) == t * t);
    CHECK(even_t_part(t * t) == t * t);
}
