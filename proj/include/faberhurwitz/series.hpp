#ifndef FABERHURWITZ_SERIES_HPP
#define FABERHURWITZ_SERIES_HPP

#include <faberhurwitz/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace faberhurwitz {

// ---------------------------------------------------------------------
// Variables and monomials
// ---------------------------------------------------------------------

// The variable universe of the paper's series: z, u, t, the families
// p_1.., q_1.., x_1.., y_1.., plus two internal families: h_i stands for
// y_i - 1 (the basis in which the change of variables C is computed) and
// w is the transposition marker of the monodromy oracle.
enum class var_kind : std::uint8_t {
    z = 1,
    u = 2,
    t = 3,
    w = 4,
    p = 5,
    q = 6,
    x = 7,
    y = 8,
    h = 9,
};

struct var
{
    std::uint32_t code = 0;

    var() = default;
    var(var_kind k, int index) : code((static_cast<std::uint32_t>(k) << 16) | static_cast<std::uint32_t>(index)) {}

    var_kind kind() const { return static_cast<var_kind>(code >> 16); }
    int index() const { return static_cast<int>(code & 0xffffu); }

    bool operator==(const var& o) const { return code == o.code; }
    bool operator!=(const var& o) const { return code != o.code; }
    bool operator<(const var& o) const { return code < o.code; }

    std::string name() const
    {
        switch (kind()) {
            case var_kind::z: return "z";
            case var_kind::u: return "u";
            case var_kind::t: return "t";
            case var_kind::w: return "w";
            case var_kind::p: return "p" + std::to_string(index());
            case var_kind::q: return "q" + std::to_string(index());
            case var_kind::x: return "x" + std::to_string(index());
            case var_kind::y: return "y" + std::to_string(index());
            case var_kind::h: return "h" + std::to_string(index());
        }
        return "?";
    }
};

inline var var_z() { return var(var_kind::z, 0); }
inline var var_u() { return var(var_kind::u, 0); }
inline var var_t() { return var(var_kind::t, 0); }
inline var var_w() { return var(var_kind::w, 0); }
inline var var_p(int i) { return var(var_kind::p, i); }
inline var var_q(int i) { return var(var_kind::q, i); }
inline var var_x(int i) { return var(var_kind::x, i); }
inline var var_y(int i) { return var(var_kind::y, i); }
inline var var_h(int i) { return var(var_kind::h, i); }

// Sparse exponent vector, kept sorted by variable code.  Only u may carry
// negative exponents.
struct mono
{
    std::vector<std::pair<var, int>> e;

    mono() = default;

    static mono unit() { return mono(); }

    static mono of(var v, int exp)
    {
        mono m;
        if (exp != 0) {
            m.e.emplace_back(v, exp);
        }
        return m;
    }

    int exponent(var v) const
    {
        for (auto& [w, k] : e) {
            if (w == v) {
                return k;
            }
        }
        return 0;
    }

    bool is_unit() const { return e.empty(); }

    mono times(const mono& o) const
    {
        mono out;
        out.e.reserve(e.size() + o.e.size());
        size_t i = 0, j = 0;
        while (i < e.size() && j < o.e.size()) {
            if (e[i].first < o.e[j].first) {
                out.e.push_back(e[i++]);
            } else if (o.e[j].first < e[i].first) {
                out.e.push_back(o.e[j++]);
            } else {
                int k = e[i].second + o.e[j].second;
                if (k != 0) {
                    out.e.emplace_back(e[i].first, k);
                }
                ++i;
                ++j;
            }
        }
        for (; i < e.size(); ++i) {
            out.e.push_back(e[i]);
        }
        for (; j < o.e.size(); ++j) {
            out.e.push_back(o.e[j]);
        }
        return out;
    }

    mono times(var v, int exp) const { return times(mono::of(v, exp)); }

    // total exponent over one kind
    int degree_of_kind(var_kind k) const
    {
        int d = 0;
        for (auto& [v, n] : e) {
            if (v.kind() == k) {
                d += n;
            }
        }
        return d;
    }

    int total_degree() const
    {
        int d = 0;
        for (auto& [v, n] : e) {
            (void)v;
            d += n;
        }
        return d;
    }

    bool operator==(const mono& o) const { return e == o.e; }
    bool operator<(const mono& o) const
    {
        return std::lexicographical_compare(
            e.begin(), e.end(), o.e.begin(), o.e.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) {
                    return a.first < b.first;
                }
                return a.second < b.second;
            });
    }

    std::string str() const
    {
        if (e.empty()) {
            return "1";
        }
        std::string s;
        for (auto& [v, n] : e) {
            if (!s.empty()) {
                s += "*";
            }
            s += v.name();
            if (n != 1) {
                s += "^" + std::to_string(n);
            }
        }
        return s;
    }
};

// ---------------------------------------------------------------------
// Truncation profile
// ---------------------------------------------------------------------

inline constexpr int unbounded = std::numeric_limits<int>::max() / 4;

// The paper works with full series; we truncate.  Every bound below is a
// hard wall: monomials beyond it are dropped on insertion, so arithmetic
// is exact on everything kept.
struct trunc_profile
{
    int z_max = unbounded;
    int u_min = -unbounded;
    int u_max = unbounded;
    int t_max = unbounded;
    int w_max = unbounded;
    int p_index_max = unbounded;
    int q_index_max = unbounded;
    int p_len_max = unbounded;   // total p-exponent (number of p factors)
    int q_len_max = unbounded;   // total q-exponent
    int x_total_max = unbounded; // total degree over all x_i
    int y_total_max = unbounded; // total degree over all y_i (and h_i)
    int x_var_max = unbounded;   // per-variable x_i bound
    int y_var_max = unbounded;   // per-variable y_i / h_i bound

    bool admits(const mono& m) const
    {
        int plen = 0, qlen = 0, xtot = 0, ytot = 0;
        for (auto& [v, n] : m.e) {
            switch (v.kind()) {
                case var_kind::z:
                    if (n < 0 || n > z_max) {
                        return false;
                    }
                    break;
                case var_kind::u:
                    if (n < u_min || n > u_max) {
                        return false;
                    }
                    break;
                case var_kind::t:
                    if (n < 0 || n > t_max) {
                        return false;
                    }
                    break;
                case var_kind::w:
                    if (n < 0 || n > w_max) {
                        return false;
                    }
                    break;
                case var_kind::p:
                    if (n < 0 || v.index() > p_index_max) {
                        return false;
                    }
                    plen += n;
                    break;
                case var_kind::q:
                    if (n < 0 || v.index() > q_index_max) {
                        return false;
                    }
                    qlen += n;
                    break;
                case var_kind::x:
                    if (n < 0 || n > x_var_max) {
                        return false;
                    }
                    xtot += n;
                    break;
                case var_kind::y:
                case var_kind::h:
                    if (n < 0 || n > y_var_max) {
                        return false;
                    }
                    ytot += n;
                    break;
            }
        }
        return plen <= p_len_max && qlen <= q_len_max && xtot <= x_total_max && ytot <= y_total_max;
    }

    trunc_profile intersect(const trunc_profile& o) const
    {
        trunc_profile r;
        r.z_max = std::min(z_max, o.z_max);
        r.u_min = std::max(u_min, o.u_min);
        r.u_max = std::min(u_max, o.u_max);
        r.t_max = std::min(t_max, o.t_max);
        r.w_max = std::min(w_max, o.w_max);
        r.p_index_max = std::min(p_index_max, o.p_index_max);
        r.q_index_max = std::min(q_index_max, o.q_index_max);
        r.p_len_max = std::min(p_len_max, o.p_len_max);
        r.q_len_max = std::min(q_len_max, o.q_len_max);
        r.x_total_max = std::min(x_total_max, o.x_total_max);
        r.y_total_max = std::min(y_total_max, o.y_total_max);
        r.x_var_max = std::min(x_var_max, o.x_var_max);
        r.y_var_max = std::min(y_var_max, o.y_var_max);
        return r;
    }

    bool operator==(const trunc_profile& o) const
    {
        return z_max == o.z_max && u_min == o.u_min && u_max == o.u_max && t_max == o.t_max &&
               w_max == o.w_max && p_index_max == o.p_index_max && q_index_max == o.q_index_max &&
               p_len_max == o.p_len_max && q_len_max == o.q_len_max && x_total_max == o.x_total_max &&
               y_total_max == o.y_total_max && x_var_max == o.x_var_max && y_var_max == o.y_var_max;
    }

    // The default desk-scale profile used by the generating-series
    // pipeline: z <= 6, p/q indices <= 6, t <= 8, u in [-12, 12].
    static trunc_profile desk()
    {
        trunc_profile pr;
        pr.z_max = 6;
        pr.p_index_max = 6;
        pr.q_index_max = 6;
        pr.t_max = 8;
        pr.u_min = -12;
        pr.u_max = 12;
        pr.y_total_max = 40;
        return pr;
    }
};

namespace detail {

template <typename C>
bool coeff_is_zero(const C& c)
{
    return c == C(0);
}

} // namespace detail

// ---------------------------------------------------------------------
// multi_series
// ---------------------------------------------------------------------

// Truncated multivariate formal series with exact coefficients.  No zero
// coefficient is ever stored and nothing beyond the attached profile is
// kept, so equality of stored maps is equality of truncated series.
template <typename C = rat>
class multi_series
{
public:
    using coeff_type = C;
    using term_map = std::map<mono, C>;

    multi_series() = default;
    explicit multi_series(trunc_profile pr) : prof_(std::move(pr)) {}

    static multi_series zero(const trunc_profile& pr) { return multi_series(pr); }

    static multi_series constant(const C& c, const trunc_profile& pr)
    {
        multi_series s(pr);
        s.add_term(mono::unit(), c);
        return s;
    }

    static multi_series monomial(const mono& m, const C& c, const trunc_profile& pr)
    {
        multi_series s(pr);
        s.add_term(m, c);
        return s;
    }

    static multi_series variable(var v, const trunc_profile& pr)
    {
        return monomial(mono::of(v, 1), C(1), pr);
    }

    const term_map& terms() const { return terms_; }
    const trunc_profile& profile() const { return prof_; }
    void set_profile(const trunc_profile& pr)
    {
        prof_ = pr;
        retruncate();
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const mono& m, const C& c)
    {
        if (detail::coeff_is_zero(c) || !prof_.admits(m)) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (detail::coeff_is_zero(it->second)) {
                terms_.erase(it);
            }
        }
    }

    C coefficient(const mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    C constant_term() const { return coefficient(mono::unit()); }

    multi_series& operator+=(const multi_series& o)
    {
        prof_ = prof_.intersect(o.prof_);
        retruncate();
        for (auto& [m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    multi_series& operator-=(const multi_series& o)
    {
        prof_ = prof_.intersect(o.prof_);
        retruncate();
        for (auto& [m, c] : o.terms_) {
            add_term(m, C(0) - c);
        }
        return *this;
    }

    friend multi_series operator+(multi_series a, const multi_series& b) { return a += b; }
    friend multi_series operator-(multi_series a, const multi_series& b) { return a -= b; }

    multi_series operator-() const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            out.terms_.emplace(m, C(0) - c);
        }
        return out;
    }

    friend multi_series operator*(const multi_series& a, const multi_series& b)
    {
        multi_series out(a.prof_.intersect(b.prof_));
        const multi_series& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const multi_series& large = a.terms_.size() <= b.terms_.size() ? b : a;
        for (auto& [ma, ca] : small.terms_) {
            for (auto& [mb, cb] : large.terms_) {
                mono m = ma.times(mb);
                if (!out.prof_.admits(m)) {
                    continue;
                }
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }

    multi_series& operator*=(const multi_series& o) { return *this = *this * o; }

    template <typename S>
    multi_series scaled(const S& s) const
    {
        multi_series out(prof_);
        if (detail::coeff_is_zero(C(s))) {
            return out;
        }
        for (auto& [m, c] : terms_) {
            C v = c * C(s);
            if (!detail::coeff_is_zero(v)) {
                out.terms_.emplace(m, v);
            }
        }
        return out;
    }

    multi_series times_monomial(const mono& mm, const C& cc) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            out.add_term(m.times(mm), c * cc);
        }
        return out;
    }

    bool operator==(const multi_series& o) const { return terms_ == o.terms_; }
    bool operator!=(const multi_series& o) const { return !(*this == o); }

    // formal partial derivative
    multi_series derive(var v) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            int k = m.exponent(v);
            if (k == 0) {
                continue;
            }
            out.add_term(m.times(v, -1), c * C(k));
        }
        return out;
    }

    // v d/dv: multiplies each monomial by its v-exponent
    multi_series euler(var v) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            int k = m.exponent(v);
            if (k == 0) {
                continue;
            }
            out.add_term(m, c * C(k));
        }
        return out;
    }

    // sum of euler over every variable of the given kind present
    multi_series euler_kind(var_kind k) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            int d = m.degree_of_kind(k);
            if (d == 0) {
                continue;
            }
            out.add_term(m, c * C(d));
        }
        return out;
    }

    // inverse of the euler operator for kind k; every term must have
    // positive total degree in that kind
    multi_series euler_kind_inverse(var_kind k) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            int d = m.degree_of_kind(k);
            if (d == 0) {
                throw std::domain_error("euler_kind_inverse: term with zero degree");
            }
            out.add_term(m, c / C(d));
        }
        return out;
    }

    // coefficient of v^k as a series in the remaining variables
    multi_series coefficient_of(var v, int k) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            if (m.exponent(v) != k) {
                continue;
            }
            out.add_term(m.times(v, -k), c);
        }
        return out;
    }

    // substitute v := v * scalar (rescales each monomial by scalar^exp)
    multi_series rescale_var(var v, const C& s) const
    {
        multi_series out(prof_);
        for (auto& [m, c] : terms_) {
            int k = m.exponent(v);
            out.add_term(m, c * static_cast<C>(rat_pow(s, k)));
        }
        return out;
    }

    int min_degree_of_kind(var_kind k) const
    {
        int best = unbounded;
        for (auto& [m, c] : terms_) {
            (void)c;
            best = std::min(best, m.degree_of_kind(k));
        }
        return best;
    }

    int max_degree_of_kind(var_kind k) const
    {
        int best = -unbounded;
        for (auto& [m, c] : terms_) {
            (void)c;
            best = std::max(best, m.degree_of_kind(k));
        }
        return best;
    }

    template <typename D, typename F>
    multi_series<D> map_coefficients(F&& f) const
    {
        multi_series<D> out(prof_);
        for (auto& [m, c] : terms_) {
            out.add_term(m, f(c));
        }
        return out;
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += coeff_str(c) + "*" + m.str();
        }
        return s;
    }

private:
    static std::string coeff_str(const rat& c) { return c.str(); }
    template <typename T>
    static std::string coeff_str(const T& c)
    {
        return c.str();
    }

    void retruncate()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (!prof_.admits(it->first)) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }

    term_map terms_;
    trunc_profile prof_;
};

using series = multi_series<rat>;

// ---------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------

// Composition f(bindings).  Unbound variables pass through.  Bound
// variables with negative exponents are rejected.  Powers of each bound
// series are cached per call.
template <typename C>
multi_series<C> substitute(const multi_series<C>& f,
                           const std::map<var, multi_series<C>>& bindings)
{
    using S = multi_series<C>;
    const trunc_profile& pr = f.profile();
    std::map<var, std::vector<S>> powers; // powers[v][k] = binding^k
    auto power_of = [&](var v, int k) -> const S& {
        auto& vec = powers[v];
        if (vec.empty()) {
            vec.push_back(S::constant(C(1), pr));
        }
        while (static_cast<int>(vec.size()) <= k) {
            vec.push_back(vec.back() * bindings.at(v));
        }
        return vec[k];
    };
    S out(pr);
    for (auto& [m, c] : f.terms()) {
        mono rest;
        std::vector<std::pair<var, int>> bound;
        for (auto& [v, k] : m.e) {
            if (bindings.count(v)) {
                if (k < 0) {
                    throw std::domain_error("substitute: negative exponent on bound variable");
                }
                bound.emplace_back(v, k);
            } else {
                rest = rest.times(v, k);
            }
        }
        S term = S::monomial(rest, c, pr);
        for (auto& [v, k] : bound) {
            if (term.is_zero()) {
                break;
            }
            term = term * power_of(v, k);
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------
// Inverse, log, exact division
// ---------------------------------------------------------------------

// 1/f for f with invertible constant term; the tail must have positive
// degree in at least one truncated direction so powers die out.
template <typename C>
multi_series<C> invert(const multi_series<C>& f)
{
    const C c0 = f.constant_term();
    if (detail::coeff_is_zero(c0)) {
        throw std::domain_error("invert: zero constant term");
    }
    multi_series<C> h = f.scaled(C(1) / c0);
    h.add_term(mono::unit(), C(-1)); // h = f/c0 - 1, positive valuation
    multi_series<C> out = multi_series<C>::constant(C(1), f.profile());
    multi_series<C> pw = multi_series<C>::constant(C(1), f.profile());
    int guard = 0;
    while (true) {
        pw = pw * h;
        if (pw.is_zero()) {
            break;
        }
        if (++guard > 4096) {
            throw std::runtime_error("invert: no convergence (tail does not truncate)");
        }
        if (guard % 2 == 1) {
            out -= pw;
        } else {
            out += pw;
        }
    }
    return out.scaled(C(1) / c0);
}

// log f for f with constant term 1.
template <typename C>
multi_series<C> log_series(const multi_series<C>& f)
{
    if (!(f.constant_term() == C(1))) {
        throw std::domain_error("log_series: constant term must be 1");
    }
    multi_series<C> h = f;
    h.add_term(mono::unit(), C(-1));
    multi_series<C> out(f.profile());
    multi_series<C> pw = multi_series<C>::constant(C(1), f.profile());
    int k = 0;
    while (true) {
        pw = pw * h;
        if (pw.is_zero()) {
            break;
        }
        ++k;
        if (k > 4096) {
            throw std::runtime_error("log_series: no convergence");
        }
        out += pw.scaled(C(k % 2 == 1 ? 1 : -1) / C(k));
    }
    return out;
}

namespace detail {

// Graded lexicographic order (variable precedence by code) on monomials
// with non-negative exponents; multiplicative, so usable for division.
inline bool graded_lex_less(const mono& a, const mono& b)
{
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) {
        return da < db;
    }
    size_t i = 0, j = 0;
    while (i < a.e.size() || j < b.e.size()) {
        if (i < a.e.size() && (j >= b.e.size() || a.e[i].first < b.e[j].first)) {
            return false; // a carries the higher-precedence variable
        }
        if (j < b.e.size() && (i >= a.e.size() || b.e[j].first < a.e[i].first)) {
            return true;
        }
        if (a.e[i].second != b.e[j].second) {
            return a.e[i].second < b.e[j].second;
        }
        ++i;
        ++j;
    }
    return false;
}

} // namespace detail

// Exact division f / d where d is a polynomial divisor (no negative
// exponents anywhere).  Reduction by the graded-lex leading term; throws
// if the division is not exact, which the callers treat as a broken
// antisymmetrization invariant.
template <typename C>
multi_series<C> divide_exact(const multi_series<C>& f, const multi_series<C>& d)
{
    if (d.is_zero()) {
        throw std::domain_error("divide_exact: zero divisor");
    }
    // leading term of the divisor
    auto lead = d.terms().begin();
    for (auto it = d.terms().begin(); it != d.terms().end(); ++it) {
        if (detail::graded_lex_less(lead->first, it->first)) {
            lead = it;
        }
    }
    const mono lm = lead->first;
    const C lc = lead->second;
    multi_series<C> rem = f;
    multi_series<C> quot(f.profile());
    int guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 2000000) {
            throw std::runtime_error("divide_exact: runaway division");
        }
        auto rlead = rem.terms().begin();
        for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
            if (detail::graded_lex_less(rlead->first, it->first)) {
                rlead = it;
            }
        }
        // quotient monomial = rlead / lm (must divide exactly)
        mono qm = rlead->first;
        for (auto& [v, k] : lm.e) {
            int have = qm.exponent(v);
            if (have < k) {
                throw std::domain_error("divide_exact: not divisible");
            }
            qm = qm.times(v, -k);
        }
        for (auto& [v, k] : qm.e) {
            (void)v;
            if (k < 0) {
                throw std::domain_error("divide_exact: not divisible");
            }
        }
        C qc = rlead->second / lc;
        quot.add_term(qm, qc);
        rem -= d.times_monomial(qm, qc);
    }
    return quot;
}

// ---------------------------------------------------------------------
// Fixed points and Lagrange inversion
// ---------------------------------------------------------------------

// Unique truncated solution of the system s_k = rhs_k(s), computed by
// iteration from zero.  Each full pass must reach a fixed point within
// max_passes or the system is reported as non-contracting.
template <typename C>
std::vector<multi_series<C>> solve_fixed_point(
    const std::vector<std::function<multi_series<C>(const std::vector<multi_series<C>>&)>>& rhs,
    const trunc_profile& pr, int max_passes = 256)
{
    std::vector<multi_series<C>> cur(rhs.size(), multi_series<C>::zero(pr));
    for (int pass = 0; pass < max_passes; ++pass) {
        std::vector<multi_series<C>> next;
        next.reserve(rhs.size());
        bool changed = false;
        for (size_t k = 0; k < rhs.size(); ++k) {
            next.push_back(rhs[k](cur));
            if (!(next.back() == cur[k])) {
                changed = true;
            }
        }
        cur = std::move(next);
        if (!changed) {
            return cur;
        }
    }
    throw std::runtime_error("solve_fixed_point: no degree progress (non-contracting system)");
}

// Compositional inverse of a univariate series with zero constant term
// and nonzero linear coefficient, in the same variable.
template <typename C>
multi_series<C> lagrange_invert(const multi_series<C>& f, var v, int deg)
{
    if (!detail::coeff_is_zero(f.constant_term())) {
        throw std::domain_error("lagrange_invert: nonzero constant term");
    }
    const C c1 = f.coefficient(mono::of(v, 1));
    if (detail::coeff_is_zero(c1)) {
        throw std::domain_error("lagrange_invert: zero linear term");
    }
    // f = c1 v + N(v), N of valuation >= 2: iterate G = (v - N(G)) / c1.
    multi_series<C> n = f;
    n.add_term(mono::of(v, 1), C(0) - c1);
    multi_series<C> g = multi_series<C>::monomial(mono::of(v, 1), C(1) / c1, f.profile());
    for (int it = 0; it <= deg + 1; ++it) {
        multi_series<C> ng = substitute(n, {{v, g}});
        multi_series<C> next = (multi_series<C>::variable(v, f.profile()) - ng).scaled(C(1) / c1);
        if (next == g) {
            return g;
        }
        g = next;
    }
    return g;
}

} // namespace faberhurwitz

#endif
