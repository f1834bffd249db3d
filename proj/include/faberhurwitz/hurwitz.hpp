#ifndef FABERHURWITZ_HURWITZ_HPP
#define FABERHURWITZ_HURWITZ_HPP

#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// H^0_alpha = (d - 2 + l)! d^{l-3} prod alpha_i^{alpha_i} / alpha_i!
inline rat hurwitz_single_closed(const partition& alpha)
{
    if (alpha.empty()) {
        throw std::invalid_argument("hurwitz_single_closed: empty partition");
    }
    const long d = alpha.size();
    const long l = alpha.length();
    rat out(factorial(d - 2 + l));
    out *= rat_pow(rat(d), l - 3);
    for (int a : alpha.parts()) {
        out *= rat(ipow(a, a), factorial(a));
    }
    return out;
}

// ---------------------------------------------------------------------
// Class-algebra convolution oracle
// ---------------------------------------------------------------------

// Multiplication by the transposition class sum in the class algebra of
// S_d, tabulated on conjugacy classes.  Entry (mu, lambda) counts the
// transpositions tau with tau * sigma in class mu for one fixed sigma of
// class lambda.  Joining two cycles of lengths a, b contributes a*b
// choices per cycle pair; cutting a cycle of length c into (k, c-k)
// contributes c choices (c/2 when k = c-k).
class transposition_table
{
public:
    explicit transposition_table(int d) : d_(d), classes_(partitions_of(d))
    {
        for (size_t i = 0; i < classes_.size(); ++i) {
            index_[classes_[i]] = i;
        }
        matrix_.assign(classes_.size(), {});
        for (size_t ci = 0; ci < classes_.size(); ++ci) {
            const partition& lam = classes_[ci];
            auto mult = lam.multiplicities();
            // joins
            for (auto it1 = mult.begin(); it1 != mult.end(); ++it1) {
                for (auto it2 = it1; it2 != mult.end(); ++it2) {
                    int a = it1->first, b = it2->first;
                    bigint ways;
                    if (a == b) {
                        if (it1->second < 2) {
                            continue;
                        }
                        ways = bigint(a) * b * binomial(it1->second, 2);
                    } else {
                        ways = bigint(a) * b * it1->second * it2->second;
                    }
                    partition mu = lam.without_one_part(a).without_one_part(b).with_part(a + b);
                    matrix_[ci].emplace_back(index_.at(mu), ways);
                }
            }
            // cuts
            for (auto& [c, m] : mult) {
                for (int k = 1; 2 * k <= c; ++k) {
                    if (c - k < k) {
                        continue;
                    }
                    bigint ways = (2 * k == c) ? bigint(c) / 2 : bigint(c);
                    ways *= m;
                    partition mu = lam.without_one_part(c).with_part(k).with_part(c - k);
                    matrix_[ci].emplace_back(index_.at(mu), ways);
                }
            }
        }
    }

    int d() const { return d_; }
    const std::vector<partition>& classes() const { return classes_; }
    size_t class_index(const partition& p) const { return index_.at(p); }

    // one convolution step: out[mu] = sum_lambda T(mu, lambda) in[lambda]
    std::vector<bigint> step(const std::vector<bigint>& in) const
    {
        std::vector<bigint> out(classes_.size(), 0);
        for (size_t ci = 0; ci < classes_.size(); ++ci) {
            if (in[ci] == 0) {
                continue;
            }
            for (auto& [target, ways] : matrix_[ci]) {
                out[target] += ways * in[ci];
            }
        }
        return out;
    }

private:
    int d_;
    std::vector<partition> classes_;
    std::map<partition, size_t> index_;
    std::vector<std::vector<std::pair<size_t, bigint>>> matrix_;
};

// Cached per-degree tables of the raw tuple counts
//   D_r(alpha, beta) = (1/d!) #{(sigma_0, tau_1..tau_r) :
//        sigma_0 in C_alpha, tau_i transpositions, tau_r...tau_1 sigma_0 in C_beta}
// evaluated by r convolution steps, never by tuple enumeration.
class monodromy_oracle
{
public:
    // raw possibly-disconnected count at r transpositions
    rat disconnected_count(const partition& alpha, const partition& beta, long r)
    {
        if (alpha.size() != beta.size()) {
            throw std::invalid_argument("monodromy: |alpha| != |beta|");
        }
        if (r < 0) {
            return rat(0);
        }
        const int d = alpha.size();
        auto& tbl = table(d);
        auto& row = counts(d, alpha, r);
        return rat(row[tbl.class_index(beta)], centralizer_size(alpha));
    }

    const transposition_table& table(int d)
    {
        auto it = tables_.find(d);
        if (it == tables_.end()) {
            it = tables_.emplace(d, transposition_table(d)).first;
        }
        return it->second;
    }

private:
    const std::vector<bigint>& counts(int d, const partition& alpha, long r)
    {
        auto key = std::make_pair(alpha, r);
        auto& memo = counts_[d];
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        auto& tbl = table(d);
        std::vector<bigint> v;
        if (r == 0) {
            v.assign(tbl.classes().size(), 0);
            v[tbl.class_index(alpha)] = 1;
        } else {
            v = tbl.step(counts(d, alpha, r - 1));
        }
        return memo.emplace(key, std::move(v)).first->second;
    }

    std::map<int, transposition_table> tables_;
    std::map<int, std::map<std::pair<partition, long>, std::vector<bigint>>> counts_;
};

// ---------------------------------------------------------------------
// Connected numbers via the exponential formula
// ---------------------------------------------------------------------

// Holds, per degree bound, the formal log of the disconnected generating
// series in marker variables z, w, p, q.  Connected counts are read off
// as coefficients; the covers are counted with both fibres marked, i.e.
// the output is |Aut alpha| |Aut beta| [p_alpha q_beta w^r / r!] log D.
class hurwitz_oracle
{
public:
    // genus cap for the monodromy path; the paper needs genus 0 everywhere
    // except sanity checks
    explicit hurwitz_oracle(int genus_cap = 1) : genus_cap_(genus_cap) {}

    rat monodromy_disconnected(int g, const partition& alpha,
                               const std::optional<partition>& beta = std::nullopt)
    {
        check_genus(g);
        partition b = beta ? *beta : trivial_beta(alpha);
        long r = beta ? (alpha.length() + b.length() + 2L * g - 2)
                      : (alpha.size() + alpha.length() + 2L * g - 2);
        return raw_.disconnected_count(alpha, b, r);
    }

    // Connected count in the marked-fibre normalization of the paper's
    // generating series.  Single Hurwitz numbers mark the fibre over
    // infinity only; double Hurwitz numbers mark both special fibres.
    // With these factors the genus-0 values match the closed formula and
    // the dHser coefficients used by the localization side.
    rat connected(int g, const partition& alpha,
                  const std::optional<partition>& beta = std::nullopt)
    {
        check_genus(g);
        partition b = beta ? *beta : trivial_beta(alpha);
        long r = beta ? (alpha.length() + b.length() + 2L * g - 2)
                      : (alpha.size() + alpha.length() + 2L * g - 2);
        if (r < 0) {
            return rat(0);
        }
        const series& lg = log_table(alpha.size(), r);
        mono m = mono::of(var_z(), alpha.size()).times(var_w(), static_cast<int>(r));
        for (auto& [part, mult] : alpha.multiplicities()) {
            m = m.times(var_p(part), mult);
        }
        for (auto& [part, mult] : b.multiplicities()) {
            m = m.times(var_q(part), mult);
        }
        rat c = lg.coefficient(m);
        c *= rat(factorial(r));
        c *= rat(aut_size(alpha));
        if (beta) {
            c *= rat(aut_size(b));
        }
        return c;
    }

    monodromy_oracle& raw() { return raw_; }

private:
    static partition trivial_beta(const partition& alpha)
    {
        return partition(std::vector<int>(alpha.size(), 1));
    }

    void check_genus(int g) const
    {
        if (g < 0 || g > genus_cap_) {
            throw std::invalid_argument("hurwitz_oracle: genus outside configured cap");
        }
    }

    const series& log_table(int d, long r_needed)
    {
        long r_cap = 2L * d + 2L * genus_cap_; // covers every genus <= cap
        if (r_needed > r_cap) {
            throw std::invalid_argument("hurwitz_oracle: transposition count beyond cap");
        }
        auto it = logs_.find(d);
        if (it != logs_.end()) {
            return it->second;
        }
        trunc_profile pr;
        pr.z_max = d;
        pr.w_max = static_cast<int>(r_cap);
        series disc = series::constant(1, pr);
        for (int e = 1; e <= d; ++e) {
            for (auto& alpha : partitions_of(e)) {
                for (auto& beta : partitions_of(e)) {
                    mono base = mono::of(var_z(), e);
                    for (auto& [part, mult] : alpha.multiplicities()) {
                        base = base.times(var_p(part), mult);
                    }
                    for (auto& [part, mult] : beta.multiplicities()) {
                        base = base.times(var_q(part), mult);
                    }
                    for (long r = 0; r <= r_cap; ++r) {
                        rat c = raw_.disconnected_count(alpha, beta, r);
                        if (c == 0) {
                            continue;
                        }
                        disc.add_term(base.times(var_w(), static_cast<int>(r)),
                                      c / rat(factorial(r)));
                    }
                }
            }
        }
        return logs_.emplace(d, log_series(disc)).first->second;
    }

    int genus_cap_;
    monodromy_oracle raw_;
    std::map<int, series> logs_;
};

// ---------------------------------------------------------------------
// Generating series
// ---------------------------------------------------------------------

// \hat H^0(z; p) = sum_alpha z^{|alpha|} p_alpha / |Aut alpha| * H^0_alpha / r^0_alpha!
inline series hurwitz_series_single(const trunc_profile& pr)
{
    series out(pr);
    int plen = std::min(pr.p_len_max, pr.z_max);
    for (int d = 1; d <= pr.z_max; ++d) {
        for (auto& alpha : partitions_of_max_length(d, plen)) {
            if (alpha.parts().front() > pr.p_index_max) {
                continue;
            }
            mono m = mono::of(var_z(), d);
            for (auto& [part, mult] : alpha.multiplicities()) {
                m = m.times(var_p(part), mult);
            }
            rat c = hurwitz_single_closed(alpha);
            c /= rat(aut_size(alpha) * factorial(r0_single(alpha)));
            out.add_term(m, c);
        }
    }
    return out;
}

// H^0(z, u; p; q), built from connected double Hurwitz numbers
inline series hurwitz_series_double(const trunc_profile& pr, hurwitz_oracle& oracle)
{
    series out(pr);
    int plen = std::min(pr.p_len_max, pr.z_max);
    for (int d = 1; d <= pr.z_max; ++d) {
        for (auto& alpha : partitions_of_max_length(d, plen)) {
            if (alpha.parts().front() > pr.p_index_max) {
                continue;
            }
            for (auto& beta : partitions_of(d)) {
                if (beta.parts().front() > pr.q_index_max || beta.length() > pr.q_len_max) {
                    continue;
                }
                rat h = oracle.connected(0, alpha, beta);
                if (h == 0) {
                    continue;
                }
                mono m = mono::of(var_z(), d).times(var_u(), beta.length());
                for (auto& [part, mult] : alpha.multiplicities()) {
                    m = m.times(var_p(part), mult);
                }
                for (auto& [part, mult] : beta.multiplicities()) {
                    m = m.times(var_q(part), mult);
                }
                rat c = h / rat(factorial(r0_double(alpha, beta)) * aut_size(alpha) * aut_size(beta));
                out.add_term(m, c);
            }
        }
    }
    return out;
}

} // namespace faberhurwitz

#endif
