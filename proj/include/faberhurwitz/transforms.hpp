#ifndef FABERHURWITZ_TRANSFORMS_HPP
#define FABERHURWITZ_TRANSFORMS_HPP

#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// ---------------------------------------------------------------------
// Symmetrization  Xi_m : p_alpha z^{|alpha|} -> sum over orderings of the
// parts of alpha placed on x_1..x_m; zero unless l(alpha) = m.
// ---------------------------------------------------------------------

template <typename C>
multi_series<C> symmetrize(const multi_series<C>& f, int m)
{
    multi_series<C> out(f.profile());
    for (auto& [mm, c] : f.terms()) {
        std::vector<int> parts;
        mono rest;
        int zdeg = 0;
        for (auto& [v, k] : mm.e) {
            if (v.kind() == var_kind::p) {
                for (int r = 0; r < k; ++r) {
                    parts.push_back(v.index());
                }
            } else if (v.kind() == var_kind::z) {
                zdeg = k;
            } else {
                rest = rest.times(v, k);
            }
        }
        if (static_cast<int>(parts.size()) != m) {
            continue;
        }
        if (std::accumulate(parts.begin(), parts.end(), 0) != zdeg) {
            throw std::domain_error("symmetrize: z-degree does not match |alpha|");
        }
        // The sum runs over all m! assignments; repeated parts repeat
        // monomials, so each distinct assignment carries a factor of
        // prod (multiplicities)!.
        bigint rep = 1;
        std::map<int, int> mult;
        for (int p : parts) {
            ++mult[p];
        }
        for (auto& [p, k] : mult) {
            (void)p;
            rep *= factorial(k);
        }
        std::vector<int> perm = parts;
        std::sort(perm.begin(), perm.end());
        do {
            mono xm = rest;
            for (int i = 0; i < m; ++i) {
                xm = xm.times(var_x(i + 1), perm[i]);
            }
            out.add_term(xm, c * C(rat(rep)));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// ---------------------------------------------------------------------
// Lambda substitutions
// ---------------------------------------------------------------------

// (eLSO)  u -> -u, x_i -> x_i / (1-u), on symmetrized series.
template <typename C>
multi_series<C> lambda_x(const multi_series<C>& f)
{
    const trunc_profile& pr = f.profile();
    multi_series<C> out(pr);
    for (auto& [m, c] : f.terms()) {
        int b = m.exponent(var_u());
        int n = m.degree_of_kind(var_kind::x);
        C base = (b % 2 == 0) ? c : C(0) - c;
        if (n == 0) {
            out.add_term(m, base);
            continue;
        }
        for (int k = 0; b + k <= pr.u_max; ++k) {
            out.add_term(m.times(var_u(), k), base * C(rat(binomial(n - 1 + k, k))));
        }
    }
    return out;
}

// The substitution of the Localization Tree Theorem on (z, u, p) series:
// z -> z/(1-u), u -> -u, p_i -> (-u/(1-u)) p_i.  A monomial z^a u^b
// p_alpha with l = l(alpha) becomes (-1)^{b+l} u^{b+l} (1-u)^{-(a+l)}
// z^a p_alpha.
template <typename C>
multi_series<C> lambda_zp(const multi_series<C>& f)
{
    const trunc_profile& pr = f.profile();
    multi_series<C> out(pr);
    for (auto& [m, c] : f.terms()) {
        int a = m.exponent(var_z());
        int b = m.exponent(var_u());
        int l = m.degree_of_kind(var_kind::p);
        C base = ((b + l) % 2 == 0) ? c : C(0) - c;
        int n = a + l;
        if (n == 0) {
            out.add_term(m.times(var_u(), l), base);
            continue;
        }
        for (int k = 0; b + l + k <= pr.u_max; ++k) {
            out.add_term(m.times(var_u(), l + k), base * C(rat(binomial(n - 1 + k, k))));
        }
    }
    return out;
}

// (eLSOm)  Omega: q_i -> i^{i-1} / i!
template <typename C>
multi_series<C> omega_sub(const multi_series<C>& f)
{
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        mono rest;
        rat scale = 1;
        for (auto& [v, k] : m.e) {
            if (v.kind() == var_kind::q) {
                int i = v.index();
                scale *= rat_pow(rat(ipow(i, i - 1), factorial(i)), k);
            } else {
                rest = rest.times(v, k);
            }
        }
        out.add_term(rest, c * C(scale));
    }
    return out;
}

// ---------------------------------------------------------------------
// Change of variables C: x_i = G(y_i - 1), where G is the compositional
// inverse of sum n^n z^n / n!.  Images are produced in the shifted
// variables h_i = y_i - 1; h_to_y converts stabilized polynomials.
// ---------------------------------------------------------------------

struct change_to_y_cache
{
    std::vector<rat> g_coeffs; // g_coeffs[k] = [z^k] G

    void ensure(int deg)
    {
        if (static_cast<int>(g_coeffs.size()) > deg) {
            return;
        }
        trunc_profile pr;
        pr.z_max = deg;
        series phi(pr);
        for (int n = 1; n <= deg; ++n) {
            phi.add_term(mono::of(var_z(), n), rat(ipow(n, n), factorial(n)));
        }
        series g = lagrange_invert(phi, var_z(), deg);
        g_coeffs.assign(deg + 1, 0);
        for (auto& [m, c] : g.terms()) {
            g_coeffs[m.exponent(var_z())] = c;
        }
    }
};

template <typename C>
multi_series<C> change_to_y(const multi_series<C>& f, int m, change_to_y_cache& cache)
{
    int deg = f.profile().x_total_max;
    if (deg >= unbounded) {
        deg = 0;
        for (auto& [mm, c] : f.terms()) {
            (void)c;
            deg = std::max(deg, mm.degree_of_kind(var_kind::x));
        }
    }
    cache.ensure(deg);
    trunc_profile pr = f.profile();
    if (pr.y_total_max >= unbounded) {
        pr.y_total_max = deg;
    }
    std::map<var, multi_series<C>> bindings;
    for (int i = 1; i <= m; ++i) {
        multi_series<C> gi(pr);
        for (int k = 1; k <= deg; ++k) {
            gi.add_term(mono::of(var_h(i), k), C(cache.g_coeffs[k]));
        }
        bindings.emplace(var_x(i), std::move(gi));
    }
    multi_series<C> shifted = f;
    shifted.set_profile(pr);
    return substitute(shifted, bindings);
}

// y_i^2 (y_i - 1) d/dy_i expressed in the shifted basis h_i = y_i - 1:
// (1 + h)^2 h d/dh.
template <typename C>
multi_series<C> euler_y_operator(const multi_series<C>& f, int i)
{
    multi_series<C> d = f.derive(var_h(i));
    multi_series<C> h = multi_series<C>::variable(var_h(i), f.profile());
    multi_series<C> one = multi_series<C>::constant(C(1), f.profile());
    return (one + h) * (one + h) * h * d;
}

// shifted polynomial -> polynomial in the y variables (exact binomials)
template <typename C>
multi_series<C> h_to_y(const multi_series<C>& f)
{
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        multi_series<C> term = multi_series<C>::constant(c, f.profile());
        for (auto& [v, k] : m.e) {
            if (v.kind() == var_kind::h) {
                multi_series<C> ym1(f.profile());
                ym1.add_term(mono::of(var_y(v.index()), 1), C(1));
                ym1.add_term(mono::unit(), C(-1));
                for (int r = 0; r < k; ++r) {
                    term = term * ym1;
                }
            } else {
                term = term.times_monomial(mono::of(v, k), C(1));
            }
        }
        out += term;
    }
    return out;
}

template <typename C>
multi_series<C> y_to_h(const multi_series<C>& f)
{
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        multi_series<C> term = multi_series<C>::constant(c, f.profile());
        for (auto& [v, k] : m.e) {
            if (v.kind() == var_kind::y) {
                multi_series<C> hp1(f.profile());
                hp1.add_term(mono::of(var_h(v.index()), 1), C(1));
                hp1.add_term(mono::unit(), C(1));
                for (int r = 0; r < k; ++r) {
                    term = term * hp1;
                }
            } else {
                term = term.times_monomial(mono::of(v, k), C(1));
            }
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------
// Top-degree restriction T'
// ---------------------------------------------------------------------

namespace detail {

inline int y_like_degree(const mono& m)
{
    return m.degree_of_kind(var_kind::y) + m.degree_of_kind(var_kind::h);
}

} // namespace detail

// terms of total y-degree exactly d
template <typename C>
multi_series<C> top_degree_slice(const multi_series<C>& f, int d)
{
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        if (detail::y_like_degree(m) == d) {
            out.add_term(m, c);
        }
    }
    return out;
}

// T' with a known expected top degree (Faber and Hurwitz modes).  A term
// above the expected degree or an empty slice at it signals that the
// operand was not the polynomial the theory promises.
template <typename C>
multi_series<C> top_degree_expected(const multi_series<C>& f, int expected)
{
    int maxdeg = -1;
    for (auto& [m, c] : f.terms()) {
        (void)c;
        maxdeg = std::max(maxdeg, detail::y_like_degree(m));
    }
    if (maxdeg > expected) {
        throw std::domain_error("top_degree: terms above the expected degree");
    }
    multi_series<C> out = top_degree_slice(f, expected);
    if (out.is_zero()) {
        throw std::domain_error("top_degree: empty result at the expected degree");
    }
    return out;
}

// T' in xi mode: in each u-coefficient independently, keep the terms of
// maximal total y-degree actually present.
template <typename C>
multi_series<C> top_degree_xi(const multi_series<C>& f)
{
    std::map<int, int> maxdeg;
    for (auto& [m, c] : f.terms()) {
        (void)c;
        int b = m.exponent(var_u());
        auto it = maxdeg.find(b);
        int d = detail::y_like_degree(m);
        if (it == maxdeg.end() || it->second < d) {
            maxdeg[b] = d;
        }
    }
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        if (detail::y_like_degree(m) == maxdeg.at(m.exponent(var_u()))) {
            out.add_term(m, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// E: even part in t
// ---------------------------------------------------------------------

template <typename C>
multi_series<C> even_t_part(const multi_series<C>& f)
{
    multi_series<C> out(f.profile());
    for (auto& [m, c] : f.terms()) {
        if (m.exponent(var_t()) % 2 == 0) {
            out.add_term(m, c);
        }
    }
    return out;
}

} // namespace faberhurwitz

#endif
