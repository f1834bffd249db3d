#ifndef FABERHURWITZ_RATFUN_HPP
#define FABERHURWITZ_RATFUN_HPP

#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>
#include <faberhurwitz/transforms.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// polynomials in the y variables (a series with unbounded polynomial profile)
using ypoly = multi_series<rat>;

inline trunc_profile ypoly_profile()
{
    return trunc_profile{};
}

// ---------------------------------------------------------------------
// Multivariate gcd (primitive PRS, recursing on the variable set)
// ---------------------------------------------------------------------

namespace ratfun_detail {

inline std::vector<var> poly_vars(const ypoly& f)
{
    std::vector<var> vs;
    for (auto& [m, c] : f.terms()) {
        (void)c;
        for (auto& [v, k] : m.e) {
            (void)k;
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) {
                vs.push_back(v);
            }
        }
    }
    std::sort(vs.begin(), vs.end());
    return vs;
}

inline int degree_in(const ypoly& f, var v)
{
    int d = 0;
    for (auto& [m, c] : f.terms()) {
        (void)c;
        d = std::max(d, m.exponent(v));
    }
    return d;
}

// coefficient of v^k, as a polynomial in the remaining variables
inline ypoly coeff_in(const ypoly& f, var v, int k)
{
    return f.coefficient_of(v, k);
}

inline rat content_rat(const ypoly& f)
{
    // gcd of numerators / lcm of denominators, signed by the leading term
    bigint num = 0, den = 1;
    for (auto& [m, c] : f.terms()) {
        (void)m;
        num = boost::multiprecision::gcd(num, rat_num(c));
        den = boost::multiprecision::lcm(den, rat_den(c));
    }
    if (num == 0) {
        return 1;
    }
    return rat(num, den);
}

ypoly gcd_poly(const ypoly& a, const ypoly& b);

// content of f with respect to variable v: gcd of the coefficients
inline ypoly content_in(const ypoly& f, var v)
{
    ypoly c(f.profile());
    bool first = true;
    for (int k = 0; k <= degree_in(f, v); ++k) {
        ypoly ck = coeff_in(f, v, k);
        if (ck.is_zero()) {
            continue;
        }
        if (first) {
            c = ck;
            first = false;
        } else {
            c = gcd_poly(c, ck);
        }
    }
    return c;
}

// pseudo-remainder of a by b in variable v
inline ypoly pseudo_rem(ypoly a, const ypoly& b, var v)
{
    const int db = degree_in(b, v);
    ypoly lb = coeff_in(b, v, db);
    int da = degree_in(a, v);
    int steps = da - db + 1;
    for (int s = 0; s < steps && !a.is_zero(); ++s) {
        da = degree_in(a, v);
        if (da < db) {
            break;
        }
        ypoly la = coeff_in(a, v, da);
        a = a * lb - (la.times_monomial(mono::of(v, da - db), 1)) * b;
    }
    return a;
}

inline ypoly gcd_poly(const ypoly& a, const ypoly& b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    auto va = poly_vars(a);
    auto vb = poly_vars(b);
    if (va.empty() || vb.empty()) {
        return ypoly::constant(1, a.profile());
    }
    // main variable: first common variable; without one, gcd is constant
    var v;
    bool found = false;
    for (auto& cand : va) {
        if (std::find(vb.begin(), vb.end(), cand) != vb.end()) {
            v = cand;
            found = true;
            break;
        }
    }
    if (!found) {
        return ypoly::constant(1, a.profile());
    }

    ypoly ca = content_in(a, v), cb = content_in(b, v);
    ypoly f = divide_exact(a, ca);
    ypoly g = divide_exact(b, cb);
    if (degree_in(f, v) < degree_in(g, v)) {
        std::swap(f, g);
    }
    while (!g.is_zero()) {
        ypoly r = pseudo_rem(f, g, v);
        if (!r.is_zero()) {
            r = divide_exact(r, content_in(r, v));
        }
        f = g;
        g = r;
    }
    ypoly result = gcd_poly(ca, cb) * f;
    rat c = content_rat(result);
    return result.scaled(1 / c);
}

} // namespace ratfun_detail

// ---------------------------------------------------------------------
// Fractions of polynomials in the y variables
// ---------------------------------------------------------------------

// Coefficient domain of the rational-function layer: num/den kept with
// coprime parts, content-normalized, sign-canonical denominator.
struct yfrac
{
    ypoly num{ypoly_profile()};
    ypoly den{ypoly::constant(1, ypoly_profile())};

    yfrac() = default;
    explicit yfrac(const rat& c) : num(ypoly::constant(c, ypoly_profile())) {}
    explicit yfrac(ypoly n) : num(std::move(n)) {}
    yfrac(ypoly n, ypoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const
    {
        return den == ypoly::constant(den.constant_term(), den.profile()) &&
               den.constant_term() == 1;
    }

    void normalize()
    {
        if (den.is_zero()) {
            throw std::domain_error("yfrac: zero denominator");
        }
        if (num.is_zero()) {
            den = ypoly::constant(1, ypoly_profile());
            return;
        }
        ypoly g = ratfun_detail::gcd_poly(num, den);
        if (!(g == ypoly::constant(1, g.profile()))) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
        // canonical sign/content: graded-lex leading coefficient of den is 1
        auto lead = den.terms().begin();
        for (auto it = den.terms().begin(); it != den.terms().end(); ++it) {
            if (detail::graded_lex_less(lead->first, it->first)) {
                lead = it;
            }
        }
        rat lc = lead->second;
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }

    friend yfrac operator+(const yfrac& a, const yfrac& b)
    {
        return yfrac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend yfrac operator-(const yfrac& a, const yfrac& b)
    {
        return yfrac(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend yfrac operator*(const yfrac& a, const yfrac& b)
    {
        return yfrac(a.num * b.num, a.den * b.den);
    }
    friend yfrac operator/(const yfrac& a, const yfrac& b)
    {
        if (b.is_zero()) {
            throw std::domain_error("yfrac: division by zero");
        }
        return yfrac(a.num * b.den, a.den * b.num);
    }

    // equality by cross multiplication (independent of normalization)
    bool operator==(const yfrac& o) const { return num * o.den == o.num * den; }
    bool operator!=(const yfrac& o) const { return !(*this == o); }
};

// Truncated series in t whose coefficients are exact fractions of
// polynomials in y_1..y_m.
class rational_function_series
{
public:
    explicit rational_function_series(int t_max = 8) : t_max_(t_max) {}

    int t_max() const { return t_max_; }
    const std::map<int, yfrac>& coeffs() const { return c_; }

    void set(int k, yfrac v)
    {
        if (k < 0 || k > t_max_) {
            return;
        }
        if (v.is_zero()) {
            c_.erase(k);
        } else {
            c_[k] = std::move(v);
        }
    }

    yfrac coeff(int k) const
    {
        auto it = c_.find(k);
        return it == c_.end() ? yfrac() : it->second;
    }

    static rational_function_series from_poly_series(const multi_series<rat>& f, int t_max)
    {
        rational_function_series out(t_max);
        std::map<int, ypoly> buckets;
        for (auto& [m, c] : f.terms()) {
            int k = m.exponent(var_t());
            if (k > t_max) {
                continue;
            }
            auto it = buckets.emplace(k, ypoly(ypoly_profile())).first;
            it->second.add_term(m.times(var_t(), -k), c);
        }
        for (auto& [k, p] : buckets) {
            out.set(k, yfrac(p));
        }
        return out;
    }

    bool operator==(const rational_function_series& o) const
    {
        if (t_max_ != o.t_max_) {
            return false;
        }
        for (int k = 0; k <= t_max_; ++k) {
            if (!(coeff(k) == o.coeff(k))) {
                return false;
            }
        }
        return true;
    }

    friend rational_function_series operator+(const rational_function_series& a,
                                              const rational_function_series& b)
    {
        rational_function_series out(std::min(a.t_max_, b.t_max_));
        for (int k = 0; k <= out.t_max_; ++k) {
            out.set(k, a.coeff(k) + b.coeff(k));
        }
        return out;
    }

    friend rational_function_series operator-(const rational_function_series& a,
                                              const rational_function_series& b)
    {
        rational_function_series out(std::min(a.t_max_, b.t_max_));
        for (int k = 0; k <= out.t_max_; ++k) {
            out.set(k, a.coeff(k) - b.coeff(k));
        }
        return out;
    }

    friend rational_function_series operator*(const rational_function_series& a,
                                              const rational_function_series& b)
    {
        rational_function_series out(std::min(a.t_max_, b.t_max_));
        for (auto& [i, ci] : a.c_) {
            for (auto& [j, cj] : b.c_) {
                if (i + j > out.t_max_) {
                    continue;
                }
                out.set(i + j, out.coeff(i + j) + ci * cj);
            }
        }
        return out;
    }

    // keeps even t-powers only
    rational_function_series even_part() const
    {
        rational_function_series out(t_max_);
        for (auto& [k, c] : c_) {
            if (k % 2 == 0) {
                out.set(k, c);
            }
        }
        return out;
    }

private:
    int t_max_;
    std::map<int, yfrac> c_;
};

// ---------------------------------------------------------------------
// A_i, B_i, Y_i and friends as (t, y)-polynomial series
// ---------------------------------------------------------------------

inline trunc_profile ty_profile(int t_max)
{
    trunc_profile pr;
    pr.t_max = t_max;
    return pr;
}

// A_i: the solution of y_i A^2 - A + y_i t = 0 with A = y_i t + O(t^2)
inline series a_series(int i, int t_max)
{
    auto pr = ty_profile(t_max);
    series yi = series::variable(var_y(i), pr);
    auto rhs = [&, yi](const std::vector<series>& s) {
        return yi.times_monomial(mono::of(var_t(), 1), 1) + yi * s[0] * s[0];
    };
    return solve_fixed_point<rat>({rhs}, pr, t_max + 3)[0];
}

// B_i = 1 - 2 y_i A_i  (so that B^2 = 1 - 4 y_i^2 t)
inline series b_series(int i, int t_max)
{
    auto pr = ty_profile(t_max);
    return series::constant(1, pr) -
           (series::variable(var_y(i), pr) * a_series(i, t_max)).scaled(2);
}

inline series b_inverse_series(int i, int t_max)
{
    return invert(b_series(i, t_max));
}

// Y_i(u) = y_i / (1 - u y_i) as a (u, y)-series
inline series y_of_u_series(int i, int u_max)
{
    trunc_profile pr;
    pr.u_min = 0;
    pr.u_max = u_max;
    series out(pr);
    for (int k = 0; k <= u_max; ++k) {
        out.add_term(mono::of(var_y(i), k + 1).times(var_u(), k), 1);
    }
    return out;
}

// \hat Y_i = Y_i(A_1) = y_i / (1 - A_1 y_i), a t-series
inline series y_hat_series(int i, int t_max)
{
    auto pr = ty_profile(t_max);
    series yi = series::variable(var_y(i), pr);
    return yi * invert(series::constant(1, pr) - a_series(1, t_max) * yi);
}

// Delta_k = sum_i y_i^k d/dy_i on polynomial (t, y)-series over m variables
inline series delta_k(const series& f, int k, int m)
{
    series out(f.profile());
    for (int i = 1; i <= m; ++i) {
        out += f.derive(var_y(i)).times_monomial(mono::of(var_y(i), k), 1);
    }
    return out;
}

// Inverse of Delta_k on the span of monomials with every y-exponent >= 1,
// by the triangular recursion of the invertibility proof.
inline series delta_k_inverse(const series& b, int k, int m)
{
    // candidate support: shift one variable down by k-1
    std::map<mono, rat> target;
    for (auto& [mm, c] : b.terms()) {
        target.emplace(mm, c);
    }
    // collect candidate monomials of the preimage
    std::vector<mono> cand;
    {
        std::map<mono, bool> seen;
        for (auto& [mm, c] : b.terms()) {
            (void)c;
            for (int i = 1; i <= m; ++i) {
                int e = mm.exponent(var_y(i));
                if (e - (k - 1) >= 1) {
                    mono cm = mm.times(var_y(i), -(k - 1));
                    bool ok = true;
                    for (int j = 1; j <= m; ++j) {
                        if (cm.exponent(var_y(j)) < 1) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && !seen.count(cm)) {
                        seen.emplace(cm, true);
                        cand.push_back(cm);
                    }
                }
            }
        }
    }
    // order: lexicographic on the sorted exponent vector, then tie-break
    auto sorted_exps = [m](const mono& mm) {
        std::vector<int> v;
        for (int i = 1; i <= m; ++i) {
            v.push_back(mm.exponent(var_y(i)));
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    std::sort(cand.begin(), cand.end(), [&](const mono& a, const mono& bb) {
        auto sa = sorted_exps(a), sb = sorted_exps(bb);
        if (sa != sb) {
            return sa < sb;
        }
        return a < bb;
    });

    series out(b.profile());
    std::map<mono, rat> solved;
    for (auto& cm : cand) {
        // pick i with maximal exponent
        int besti = 1;
        for (int i = 2; i <= m; ++i) {
            if (cm.exponent(var_y(i)) > cm.exponent(var_y(besti))) {
                besti = i;
            }
        }
        const int ni = cm.exponent(var_y(besti));
        mono probe = cm.times(var_y(besti), k - 1);
        rat rhs = 0;
        auto it = target.find(probe);
        if (it != target.end()) {
            rhs = it->second;
        }
        // subtract the known contributions of other solved monomials
        for (int j = 1; j <= m; ++j) {
            mono pre = probe.times(var_y(j), -(k - 1));
            bool valid = true;
            for (int l = 1; l <= m; ++l) {
                if (pre.exponent(var_y(l)) < 1) {
                    valid = false;
                    break;
                }
            }
            if (!valid || pre == cm) {
                continue;
            }
            auto st = solved.find(pre);
            if (st != solved.end()) {
                rhs -= st->second * pre.exponent(var_y(j));
            }
        }
        rat val = rhs / ni;
        if (val != 0) {
            solved.emplace(cm, val);
            out.add_term(cm, val);
        } else {
            solved.emplace(cm, 0);
        }
    }
    if (!(delta_k(out, k, m) == b)) {
        throw std::domain_error("delta_k_inverse: target not in the image");
    }
    return out;
}

} // namespace faberhurwitz

#endif
