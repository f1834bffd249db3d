#ifndef FABERHURWITZ_SYMMETRIZED_HPP
#define FABERHURWITZ_SYMMETRIZED_HPP

#include <faberhurwitz/faber_symbols.hpp>
#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>
#include <faberhurwitz/transforms.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// ---------------------------------------------------------------------
// Base series of the symmetrized picture
// ---------------------------------------------------------------------

// w(x_i) = sum n^{n-1} x^n / n!, the tree series
inline series tree_w(int i, const trunc_profile& pr)
{
    series out(pr);
    for (int n = 1; n <= pr.x_total_max; ++n) {
        out.add_term(mono::of(var_x(i), n), rat(ipow(n, n - 1), factorial(n)));
    }
    return out;
}

// y(x_i) = 1/(1 - w) = sum n^n x^n / n!
inline series tree_y(int i, const trunc_profile& pr)
{
    series out = series::constant(1, pr);
    for (int n = 1; n <= pr.x_total_max; ++n) {
        out.add_term(mono::of(var_x(i), n), rat(ipow(n, n), factorial(n)));
    }
    return out;
}

// substitute t := s into a univariate polynomial-in-t expression given by
// coefficients c_n, n = 1..deg (used for w(v), w'(v), ...)
inline series apply_coeff_series(const series& s, const std::vector<rat>& coeffs)
{
    series out(s.profile());
    series pw = series::constant(1, s.profile());
    for (size_t n = 1; n < coeffs.size(); ++n) {
        pw = pw * s;
        if (pw.is_zero()) {
            break;
        }
        if (coeffs[n] != 0) {
            out += pw.scaled(coeffs[n]);
        }
    }
    return out;
}

inline std::vector<rat> w_coeffs(int deg)
{
    std::vector<rat> c(deg + 1, 0);
    for (int n = 1; n <= deg; ++n) {
        c[n] = rat(ipow(n, n - 1), factorial(n));
    }
    return c;
}

// vtilde_i = Omega v_i: the unique solution of V = x_i e^{u w(V)}
inline series vtilde(int i, const trunc_profile& pr)
{
    const int deg = pr.x_total_max;
    auto wc = w_coeffs(deg);
    auto rhs = [&](const std::vector<series>& s) {
        series arg = apply_coeff_series(s[0], wc).times_monomial(mono::of(var_u(), 1), 1);
        series e = series::constant(1, pr);
        series pw = series::constant(1, pr);
        for (int k = 1; k <= deg; ++k) {
            pw = pw * arg;
            if (pw.is_zero()) {
                break;
            }
            e += pw.scaled(rat(1, factorial(k)));
        }
        return series::variable(var_x(i), pr) * e;
    };
    return solve_fixed_point<rat>({rhs}, pr, pr.x_total_max + 4)[0];
}

// mutilde_i = (1 - u vtilde_i w'(vtilde_i))^{-1}
inline series mutilde(const series& vt, const trunc_profile& pr)
{
    const int deg = pr.x_total_max;
    // w'(v) = 1 + sum_{k>=1} (k+1)^k / k! v^k
    series wp = series::constant(1, pr);
    series pw = series::constant(1, pr);
    for (int k = 1; k <= deg; ++k) {
        pw = pw * vt;
        if (pw.is_zero()) {
            break;
        }
        wp += pw.scaled(rat(ipow(k + 1, k), factorial(k)));
    }
    series one = series::constant(1, pr);
    return invert(one - (vt * wp).times_monomial(mono::of(var_u(), 1), 1));
}

// ---------------------------------------------------------------------
// Symmetrized localization tree series (remsymco route), m <= 2
// ---------------------------------------------------------------------

// f_{j,m}, g_{j,m} and xi^{(i)}_m built from the closed expressions for
// the symmetrized double Hurwitz series; the q-substitution Omega is
// already absorbed (it matches the constant parts of the g_j).
class sym_localization
{
public:
    explicit sym_localization(const trunc_profile& pr) : pr_(pr), deg_(pr.x_total_max)
    {
        if (deg_ >= unbounded) {
            throw std::invalid_argument("sym_localization: x truncation required");
        }
        for (int i = 1; i <= 2; ++i) {
            vt_[i] = vtilde(i, pr_);
            mt_[i] = mutilde(vt_[i], pr_);
            vpow_[i].push_back(series::constant(1, pr_));
            for (int j = 1; j <= deg_; ++j) {
                vpow_[i].push_back(vpow_[i].back() * vt_[i]);
            }
            // K_j(x_i) = sum_{j2} 1/(j+j2) * j2^{j2}/j2! * vtilde^{j2}
            for (int j = 1; j <= deg_; ++j) {
                series k(pr_);
                for (int j2 = 1; j2 <= deg_; ++j2) {
                    k += vpow_[i][j2].scaled(rat(ipow(j2, j2), factorial(j2) * (j + j2)));
                }
                kj_[i].push_back(std::move(k));
            }
        }
        // W(x1, x2) = sum_{j1} j1^{j1+1}/j1! vtilde_1^{j1} K_{j1}(x2)
        w12_ = series(pr_);
        for (int j1 = 1; j1 <= deg_; ++j1) {
            w12_ += (vpow_[1][j1] * kj_[2][j1 - 1]).scaled(rat(ipow(j1, j1 + 1), factorial(j1)));
        }
        w21_ = series(pr_);
        for (int j1 = 1; j1 <= deg_; ++j1) {
            w21_ += (vpow_[2][j1] * kj_[1][j1 - 1]).scaled(rat(ipow(j1, j1 + 1), factorial(j1)));
        }
    }

    const trunc_profile& profile() const { return pr_; }
    const series& vt(int i) const { return vt_.at(i); }
    const series& mt(int i) const { return mt_.at(i); }

    // f_{j,1}(x_i) = u^{-1} vtilde_i^j
    series f1(int j, int i = 1) const
    {
        return vpow_.at(i)[j].times_monomial(mono::of(var_u(), -1), 1);
    }

    // g_{j,1}(x_i) = u^{-1} j^{j+1}/j! K_j(x_i)
    series g1(int j, int i = 1) const
    {
        return kj_.at(i)[j - 1].times_monomial(mono::of(var_u(), -1),
                                               rat(ipow(j, j + 1), factorial(j)));
    }

    // f_{j,2}(x1, x2) = u^{-2} Omega j d/dq_j H^0_2
    //                 + sym_{1,1} sum_{j1} u^{-2} (Omega j d^2/dq_j dq_{j1} H^0_1)(x1) g_{j1,1}(x2)
    series f2(int j)
    {
        auto it = f2_.find(j);
        if (it != f2_.end()) {
            return it->second;
        }
        // R_j / (j u): sym v1^j mu1 v2 / (v1 - v2)
        series num = vpow_[1][j] * mt_.at(1) * vt_.at(2) - vpow_[2][j] * mt_.at(2) * vt_.at(1);
        series ratio = divide_exact(num, series::variable(var_x(1), pr_) -
                                             series::variable(var_x(2), pr_)) *
                       unit_inverse_12();
        series s1 = ratio.times_monomial(mono::of(var_u(), -1), j);

        series s2 = (mt_.at(1) * vpow_[1][j] * w12_).times_monomial(mono::of(var_u(), -1), j);
        series s2s = (mt_.at(2) * vpow_[2][j] * w21_).times_monomial(mono::of(var_u(), -1), j);

        series out = s1 + s2 + s2s;
        f2_.emplace(j, out);
        return out;
    }

    // xi^{(i)}_m, m = 1, 2
    series xi(int i, int m)
    {
        auto key = std::make_pair(i, m);
        auto it = xi_.find(key);
        if (it != xi_.end()) {
            return it->second;
        }
        series out(pr_);
        for (int j = 1; j <= deg_; ++j) {
            rat c(ipow(j, j + i), factorial(j));
            out += (m == 1 ? f1(j, 1) : f2(j)).scaled(c);
        }
        xi_.emplace(key, out);
        return out;
    }

    // xi^{(i)}_1 expressed in the second variable
    series xi1_on_x2(int i)
    {
        auto it = xi_x2_.find(i);
        if (it != xi_x2_.end()) {
            return it->second;
        }
        series out(pr_);
        for (int j = 1; j <= deg_; ++j) {
            out += f1(j, 2).scaled(rat(ipow(j, j + i), factorial(j)));
        }
        xi_x2_.emplace(i, out);
        return out;
    }

    // zeta^g_m in basis form (m <= 2): per Faber key the coefficient
    // series of the symmetrized tree sum
    std::map<symbol_key, series> zeta_basis(int g, int m)
    {
        if (m < 1 || m > 2) {
            throw std::invalid_argument("zeta_basis: m must be 1 or 2");
        }
        std::map<symbol_key, series> out;
        for (auto& key : symbol_keys_with_parts(g, 1)) {
            series s = xi(key.a[0], m);
            if (key.k % 2 == 1) {
                s = -s;
            }
            if (!s.is_zero()) {
                out[key] = std::move(s);
            }
        }
        if (m == 2) {
            for (auto& key : symbol_keys_with_parts(g, 2)) {
                // (1/2!) sum over ordered (a1, a2) of sym_{1,1} products;
                // both orderings of a distinct pair give the same sym term
                series prod = xi(key.a[0], 1) * xi1_on_x2(key.a[1]) +
                              xi(key.a[1], 1) * xi1_on_x2(key.a[0]);
                rat c = key.a[0] == key.a[1] ? rat(1, 2) : rat(1);
                if (key.k % 2 == 1) {
                    c = -c;
                }
                series s = prod.scaled(c);
                if (!s.is_zero()) {
                    auto [it2, fresh] = out.emplace(key, s);
                    if (!fresh) {
                        it2->second += s;
                    }
                }
            }
        }
        return out;
    }

private:
    const series& unit_inverse_12()
    {
        if (!unit_inv_) {
            series diff = vt_.at(1) - vt_.at(2);
            series unit = divide_exact(diff, series::variable(var_x(1), pr_) -
                                                 series::variable(var_x(2), pr_));
            unit_inv_ = invert(unit);
        }
        return *unit_inv_;
    }

    trunc_profile pr_;
    int deg_;
    std::map<int, series> vt_, mt_;
    std::map<int, std::vector<series>> vpow_;
    std::map<int, std::vector<series>> kj_;
    series w12_, w21_;
    std::map<int, series> f2_;
    std::map<std::pair<int, int>, series> xi_;
    std::map<int, series> xi_x2_;
    std::optional<series> unit_inv_;
};

// ---------------------------------------------------------------------
// Symmetrized double Hurwitz series with live q variables (m <= 3)
// ---------------------------------------------------------------------

// v_i = x_i exp(u Q(v_i)) with Q(t) = sum q_j t^j, plus mu_i and the
// closed forms for H^0_1, H^0_2, H^0_3 used by the appendix checks.
class sym_double_hurwitz
{
public:
    explicit sym_double_hurwitz(const trunc_profile& pr, int m) : pr_(pr), m_(m)
    {
        if (m < 1 || m > 3) {
            throw std::invalid_argument("sym_double_hurwitz: m must be 1..3");
        }
        for (int i = 1; i <= m; ++i) {
            v_[i] = solve_v(i);
            mu_[i] = build_mu(v_[i]);
        }
    }

    const series& v(int i) const { return v_.at(i); }
    const series& mu(int i) const { return mu_.at(i); }

    series q_series(const series& arg) const
    {
        // Q(arg) = sum_j q_j arg^j
        series out(pr_);
        series pw = series::constant(1, pr_);
        for (int j = 1; j <= pr_.q_index_max; ++j) {
            pw = pw * arg;
            if (pw.is_zero()) {
                break;
            }
            out += pw.times_monomial(mono::of(var_q(j), 1), 1);
        }
        return out;
    }

    // H^0_1: x1 d/dx1 H = u Q(v1)
    series h1() const
    {
        series rhs = q_series(v_.at(1)).times_monomial(mono::of(var_u(), 1), 1);
        return rhs.euler_kind_inverse(var_kind::x);
    }

    // H^0_2 = log((v1 - v2)/(x1 - x2)) - u Q(v1) - u Q(v2)
    series h2() const
    {
        series unit = divide_exact(v_.at(1) - v_.at(2),
                                   series::variable(var_x(1), pr_) -
                                       series::variable(var_x(2), pr_));
        series out = log_series(unit);
        out -= q_series(v_.at(1)).times_monomial(mono::of(var_u(), 1), 1);
        out -= q_series(v_.at(2)).times_monomial(mono::of(var_u(), 1), 1);
        return out;
    }

    // H^0_3 = sum_i (mu_i - 1) prod_{j != i} v_j / (v_i - v_j)
    series h3() const
    {
        const series& v1 = v_.at(1);
        const series& v2 = v_.at(2);
        const series& v3 = v_.at(3);
        series one = series::constant(1, pr_);
        series num = (mu_.at(1) - one) * v2 * v3 * (v2 - v3) -
                     (mu_.at(2) - one) * v1 * v3 * (v1 - v3) +
                     (mu_.at(3) - one) * v1 * v2 * (v1 - v2);
        series x1 = series::variable(var_x(1), pr_);
        series x2 = series::variable(var_x(2), pr_);
        series x3 = series::variable(var_x(3), pr_);
        series q = divide_exact(divide_exact(divide_exact(num, x1 - x2), x1 - x3), x2 - x3);
        q = q * invert(divide_exact(v1 - v2, x1 - x2));
        q = q * invert(divide_exact(v1 - v3, x1 - x3));
        q = q * invert(divide_exact(v2 - v3, x2 - x3));
        return q;
    }

private:
    series solve_v(int i)
    {
        auto rhs = [this, i](const std::vector<series>& s) {
            series arg = q_series(s[0]).times_monomial(mono::of(var_u(), 1), 1);
            series e = series::constant(1, pr_);
            series pw = series::constant(1, pr_);
            for (int k = 1; k <= pr_.x_total_max; ++k) {
                pw = pw * arg;
                if (pw.is_zero()) {
                    break;
                }
                e += pw.scaled(rat(1, factorial(k)));
            }
            return series::variable(var_x(i), pr_) * e;
        };
        return solve_fixed_point<rat>({rhs}, pr_, pr_.x_total_max + 4)[0];
    }

    series build_mu(const series& v)
    {
        // Q'(t) = sum_j j q_j t^{j-1}
        series qp(pr_);
        series pw = series::constant(1, pr_);
        for (int j = 1; j <= pr_.q_index_max; ++j) {
            if (j >= 2) {
                pw = pw * v;
            }
            if (pw.is_zero()) {
                break;
            }
            qp += pw.times_monomial(mono::of(var_q(j), 1), j);
        }
        series one = series::constant(1, pr_);
        return invert(one - (v * qp).times_monomial(mono::of(var_u(), 1), 1));
    }

    trunc_profile pr_;
    int m_;
    std::map<int, series> v_, mu_;
};

} // namespace faberhurwitz

#endif
