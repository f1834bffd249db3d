#ifndef FABERHURWITZ_DEGENERATION_HPP
#define FABERHURWITZ_DEGENERATION_HPP

#include <faberhurwitz/hurwitz.hpp>
#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>
#include <faberhurwitz/series.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// One-part closed form: F^g_{(d)} = (1/d) sum_i C(d,i) i^{2g+i-1} (d-i)^{d-i},
// with the convention 0^0 = 1 at i = d.
inline rat one_part_closed(int g, int d)
{
    if (g < 1 || d < 1) {
        throw std::invalid_argument("one_part_closed: need g, d >= 1");
    }
    rat sum = 0;
    for (int i = 1; i <= d; ++i) {
        sum += rat(binomial(d, i) * ipow(i, 2 * g + i - 1) * ipow(d - i, d - i));
    }
    return sum / d;
}

// Faber-Hurwitz numbers F^g_alpha by the join-cut recursion.  The
// summation conventions below are the ones forced by the Join-cut
// Equation (the normative statement); the residual check joincut_residual
// vanishing is what certifies them.
//
//  F_alpha = sum over one removed part s = i + j, ordered (i, j) >= 1,
//            and ordered splits A ++ B of the remaining parts:
//              C(rFab(alpha) - 1, rFab(B+j))
//              * i m_i(A+i) j m_j(B+j) * |Aut alpha| / (|Aut A+i| |Aut B+j|)
//              * H^0_{A+i} F_{B+j}
//        + sum over unordered pairs of part positions {k1, k2}:
//              (alpha_{k1} + alpha_{k2}) F_{alpha - k1 - k2 + (k1+k2)}
//        + sum over part positions: alpha_k^{2g+1} H^0_alpha.
class faber_hurwitz_table
{
public:
    rat value(int g, const partition& alpha)
    {
        if (g < 1) {
            throw std::invalid_argument("faber_hurwitz: g >= 1 required");
        }
        if (alpha.empty()) {
            throw std::invalid_argument("faber_hurwitz: empty partition");
        }
        auto key = std::make_pair(g, alpha);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            return it->second;
        }
        rat out = case_split_join(g, alpha) + case_merge(g, alpha) + case_top(g, alpha);
        memo_.emplace(key, out);
        return out;
    }

private:
    rat hurwitz(const partition& a)
    {
        auto it = h_memo_.find(a);
        if (it != h_memo_.end()) {
            return it->second;
        }
        rat h = hurwitz_single_closed(a);
        h_memo_.emplace(a, h);
        return h;
    }

    // genus 0 piece splits off, carrying part i; C(...) distributes the
    // fixed branch points
    rat case_split_join(int g, const partition& alpha)
    {
        rat total = 0;
        const long rfab1 = r_fab(alpha) - 1;
        const bigint auta = aut_size(alpha);
        auto mult = alpha.multiplicities();
        std::vector<std::pair<int, int>> mv(mult.begin(), mult.end());
        for (auto& [s, ms] : mult) {
            (void)ms;
            partition rest = alpha.without_one_part(s);
            // ordered splits of rest into A (genus 0 side) and B
            auto rm = rest.multiplicities();
            std::vector<std::pair<int, int>> rv(rm.begin(), rm.end());
            std::vector<int> take(rv.size(), 0);
            auto rec = [&](auto&& self, size_t pos) -> void {
                if (pos == rv.size()) {
                    std::vector<int> a_parts, b_parts;
                    for (size_t t = 0; t < rv.size(); ++t) {
                        for (int c = 0; c < take[t]; ++c) {
                            a_parts.push_back(rv[t].first);
                        }
                        for (int c = take[t]; c < rv[t].second; ++c) {
                            b_parts.push_back(rv[t].first);
                        }
                    }
                    for (int i = 1; i < s; ++i) {
                        const int j = s - i;
                        std::vector<int> ap = a_parts;
                        ap.push_back(i);
                        std::vector<int> bp = b_parts;
                        bp.push_back(j);
                        partition ap_part(ap), bp_part(bp);
                        rat term(binomial(rfab1, r_fab(bp_part)));
                        term *= rat(bigint(i) * ap_part.multiplicity(i) * bigint(j) *
                                    bp_part.multiplicity(j));
                        term *= rat(auta, aut_size(ap_part) * aut_size(bp_part));
                        term *= hurwitz(ap_part);
                        term *= value(g, bp_part);
                        total += term;
                    }
                    return;
                }
                for (take[pos] = 0; take[pos] <= rv[pos].second; ++take[pos]) {
                    self(self, pos + 1);
                }
                take[pos] = 0;
            };
            rec(rec, 0);
        }
        return total;
    }

    // two parts of alpha merge into one
    rat case_merge(int g, const partition& alpha)
    {
        rat total = 0;
        auto mult = alpha.multiplicities();
        std::vector<std::pair<int, int>> mv(mult.begin(), mult.end());
        for (size_t i = 0; i < mv.size(); ++i) {
            for (size_t j = i; j < mv.size(); ++j) {
                const int v1 = mv[i].first, v2 = mv[j].first;
                bigint pairs = (i == j) ? binomial(mv[i].second, 2)
                                        : bigint(mv[i].second) * mv[j].second;
                if (pairs == 0) {
                    continue;
                }
                partition merged =
                    alpha.without_one_part(v1).without_one_part(v2).with_part(v1 + v2);
                total += rat(pairs * (v1 + v2)) * value(g, merged);
            }
        }
        return total;
    }

    // the genus g curve covers the right component completely
    rat case_top(int g, const partition& alpha)
    {
        rat total = 0;
        for (auto& [v, m] : alpha.multiplicities()) {
            total += rat(bigint(m) * ipow(v, 2 * g + 1));
        }
        return total * hurwitz(alpha);
    }

    std::map<std::pair<int, partition>, rat> memo_;
    std::map<partition, rat> h_memo_;
};

// F^g(z; p) = sum_alpha z^{|alpha|} p_alpha / |Aut alpha| * F^g_alpha / rFab!
inline series fh_series(int g, const trunc_profile& pr, faber_hurwitz_table& tbl)
{
    series out(pr);
    int plen = std::min(pr.p_len_max, pr.z_max);
    for (int d = 1; d <= pr.z_max; ++d) {
        for (auto& alpha : partitions_of_max_length(d, plen)) {
            if (alpha.parts().front() > pr.p_index_max) {
                continue;
            }
            mono m = mono::of(var_z(), d);
            for (auto& [part, mm] : alpha.multiplicities()) {
                m = m.times(var_p(part), mm);
            }
            out.add_term(m, tbl.value(g, alpha) / rat(aut_size(alpha) * factorial(r_fab(alpha))));
        }
    }
    return out;
}

// LHS - RHS of the Join-cut Equation for the Faber-Hurwitz series;
// identically zero when the recursion's conventions are right.
inline series joincut_residual(int g, const trunc_profile& pr, faber_hurwitz_table& tbl)
{
    series fg = fh_series(g, pr, tbl);
    series h0 = hurwitz_series_single(pr);

    series lhs = fg.euler(var_z()) - fg + fg.euler_kind(var_kind::p);

    series rhs(pr);
    const int imax = pr.p_index_max;
    for (int i = 1; i <= imax; ++i) {
        series dh = h0.derive(var_p(i)).scaled(i);
        if (dh.is_zero()) {
            continue;
        }
        for (int j = 1; j <= imax; ++j) {
            if (i + j > pr.p_index_max) {
                continue;
            }
            series df = fg.derive(var_p(j)).scaled(j);
            if (df.is_zero()) {
                continue;
            }
            rhs += (dh * df).times_monomial(mono::of(var_p(i + j), 1), 1);
        }
    }
    for (int i = 1; i <= imax; ++i) {
        for (int j = 1; j <= imax; ++j) {
            if (i + j > imax) {
                continue;
            }
            series df = fg.derive(var_p(i + j)).scaled(rat(i + j, 2));
            rhs += df.times_monomial(mono::of(var_p(i), 1).times(var_p(j), 1), 1);
        }
    }
    for (int i = 1; i <= imax; ++i) {
        rhs += h0.derive(var_p(i)).scaled(rat(ipow(i, 2 * g + 1))).times_monomial(mono::of(var_p(i), 1), 1);
    }
    return lhs - rhs;
}

} // namespace faberhurwitz

#endif
