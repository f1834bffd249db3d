#ifndef FABERHURWITZ_PSIPHI_HPP
#define FABERHURWITZ_PSIPHI_HPP

#include <faberhurwitz/degeneration.hpp>
#include <faberhurwitz/faber_symbols.hpp>
#include <faberhurwitz/ratfun.hpp>
#include <faberhurwitz/series.hpp>
#include <faberhurwitz/symmetrized.hpp>
#include <faberhurwitz/transforms.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

namespace psiphi_detail {

// rename the h variables of a top-degree slice to y variables (valid on
// top slices: the leading coefficients agree in both bases)
inline series h_slice_to_y(const series& f)
{
    series out(f.profile());
    for (auto& [m, c] : f.terms()) {
        mono ym;
        for (auto& [v, k] : m.e) {
            if (v.kind() == var_kind::h) {
                ym = ym.times(var_y(v.index()), k);
            } else {
                ym = ym.times(v, k);
            }
        }
        out.add_term(ym, c);
    }
    return out;
}

} // namespace psiphi_detail

// ---------------------------------------------------------------------
// Degeneration side: T F^g_m and Phi_m
// ---------------------------------------------------------------------

// Xi_m F^g as a series in x_1..x_m, assembled directly from the
// Faber-Hurwitz numbers with parts <= m
inline series symmetrized_fh(int g, int m, int x_deg, faber_hurwitz_table& fh)
{
    trunc_profile pr;
    pr.x_total_max = x_deg;
    pr.y_total_max = x_deg;
    series out(pr);
    if (m == 1) {
        for (int d = 1; d <= x_deg; ++d) {
            out.add_term(mono::of(var_x(1), d),
                         fh.value(g, partition::one_part(d)) / rat(factorial(r_fab(partition::one_part(d)))));
        }
        return out;
    }
    if (m == 2) {
        for (int a = 1; a < x_deg; ++a) {
            for (int b = 1; a + b <= x_deg; ++b) {
                partition alpha(std::vector<int>{a, b});
                rat c = fh.value(g, alpha) / rat(aut_size(alpha) * factorial(r_fab(alpha)));
                // Xi_2 places both orderings; for a = b the two coincide
                // and |Aut| = 2 makes the net coefficient c per monomial
                out.add_term(mono::of(var_x(1), a).times(var_x(2), b),
                             a == b ? c * 2 : c);
            }
        }
        return out;
    }
    throw std::invalid_argument("symmetrized_fh: m must be 1 or 2");
}

// T F^g_m as a polynomial in y (top slice of degree 4g+3m-5)
inline series t_fh(int g, int m, int x_deg, faber_hurwitz_table& fh, change_to_y_cache& cy)
{
    series img = change_to_y(symmetrized_fh(g, m, x_deg, fh), m, cy);
    series top = top_degree_expected(img, 4 * g + 3 * m - 5);
    return psiphi_detail::h_slice_to_y(top);
}

// Phi_m(y, t) = sum_g 2^{2g-1} t^{2g}/(2g-1)! T F^g_m
inline series build_phi(int m, int t_max, int x_deg, faber_hurwitz_table& fh,
                        change_to_y_cache& cy)
{
    trunc_profile pr;
    pr.t_max = t_max;
    series out(pr);
    for (int g = 1; 2 * g <= t_max; ++g) {
        rat c = rat(ipow(2, 2 * g - 1), factorial(2 * g - 1));
        out += t_fh(g, m, x_deg, fh, cy)
                   .times_monomial(mono::of(var_t(), 2 * g), c);
    }
    return out;
}

// ---------------------------------------------------------------------
// Localization side: T Lambda zeta^g_m and Psi_m
// ---------------------------------------------------------------------

// (-1)^m [u^{2g-1-m}] T Lambda zeta^g_m with table values substituted,
// as a polynomial in y
inline series psi_piece(int g, int m, const symbol_table& table, sym_localization& sym,
                        change_to_y_cache& cy)
{
    series zeta(sym.profile());
    for (auto& [key, s] : sym.zeta_basis(g, m)) {
        zeta += s.scaled(table.value(key));
    }
    series lam = lambda_x(zeta);
    series layer = lam.coefficient_of(var_u(), 2 * g - 1 - m);
    series img = change_to_y(layer, m, cy);
    if (img.is_zero()) {
        throw std::domain_error("psi_piece: empty u-layer");
    }
    int top = img.max_degree_of_kind(var_kind::h);
    series sliced = top_degree_slice(img, top);
    series out = psiphi_detail::h_slice_to_y(sliced);
    return m % 2 == 0 ? out : -out;
}

// Psi_m(y, t) = sum_g t^{2g}/(2g-1)!! [u^{2g-1}] (-u)^m T Lambda zeta^g_m
inline series build_psi(int m, int t_max, const symbol_table& table, sym_localization& sym,
                        change_to_y_cache& cy)
{
    trunc_profile pr;
    pr.t_max = t_max;
    series out(pr);
    for (int g = 1; 2 * g <= t_max; ++g) {
        series piece = psi_piece(g, m, table, sym, cy);
        out += piece.times_monomial(mono::of(var_t(), 2 * g),
                                    rat(1, double_factorial_odd(2 * g - 1)));
    }
    return out;
}

// ---------------------------------------------------------------------
// Upsilon_m and the join-cut recursion route for Phi
// ---------------------------------------------------------------------

// Xi_m \hat H^0 assembled from the closed single Hurwitz numbers
inline series symmetrized_single_hurwitz(int m, int x_deg)
{
    trunc_profile pr;
    pr.x_total_max = x_deg;
    pr.y_total_max = x_deg;
    series out(pr);
    if (m == 1) {
        for (int d = 1; d <= x_deg; ++d) {
            partition alpha = partition::one_part(d);
            out.add_term(mono::of(var_x(1), d),
                         hurwitz_single_closed(alpha) / rat(factorial(r0_single(alpha))));
        }
        return out;
    }
    if (m == 2) {
        for (int a = 1; a < x_deg; ++a) {
            for (int b = 1; a + b <= x_deg; ++b) {
                partition alpha(std::vector<int>{a, b});
                rat c = hurwitz_single_closed(alpha) /
                        rat(aut_size(alpha) * factorial(r0_single(alpha)));
                out.add_term(mono::of(var_x(1), a).times(var_x(2), b), a == b ? c * 2 : c);
            }
        }
        return out;
    }
    throw std::invalid_argument("symmetrized_single_hurwitz: m must be 1 or 2");
}

// Upsilon_m = sum_g 2^{2g-1} t^{2g}/(2g-1)! T sum_i (x_i d/dx_i)^{2g+1} \hat H^0_m
inline series build_upsilon(int m, int t_max, int x_deg, change_to_y_cache& cy)
{
    trunc_profile pr;
    pr.t_max = t_max;
    series out(pr);
    series h = symmetrized_single_hurwitz(m, x_deg);
    for (int g = 1; 2 * g <= t_max; ++g) {
        series op(h.profile());
        for (int i = 1; i <= m; ++i) {
            series e = h;
            for (int r = 0; r < 2 * g + 1; ++r) {
                e = e.euler(var_x(i));
            }
            op += e;
        }
        series img = change_to_y(op, m, cy);
        series top = top_degree_expected(img, 4 * g + 3 * m - 4);
        out += psiphi_detail::h_slice_to_y(top).times_monomial(
            mono::of(var_t(), 2 * g), rat(ipow(2, 2 * g - 1), factorial(2 * g - 1)));
    }
    return out;
}

// Right-hand side of the join-cut equation for Phi_2:
//   Delta_2 Phi_2 = sym_{1,1} (y_1^5 y_2 / (y_1 - y_2)) dPhi_1/dy_1 + Upsilon_2
inline series phi2_joincut_rhs(const series& phi1, const series& upsilon2)
{
    trunc_profile pr = upsilon2.profile();
    series d1 = phi1.derive(var_y(1));
    // phi1 in variable y2
    series phi1_y2(pr);
    for (auto& [m, c] : phi1.terms()) {
        mono mm;
        for (auto& [v, k] : m.e) {
            mm = mm.times(v.kind() == var_kind::y ? var_y(2) : v, k);
        }
        phi1_y2.add_term(mm, c);
    }
    series d2 = phi1_y2.derive(var_y(2));
    series y1 = series::variable(var_y(1), pr);
    series y2 = series::variable(var_y(2), pr);
    series num = y1 * y1 * y1 * y1 * y1 * y2 * d1 - y2 * y2 * y2 * y2 * y2 * y1 * d2;
    series symterm = divide_exact(num, y1 - y2);
    return symterm + upsilon2;
}

} // namespace faberhurwitz

#endif
