#ifndef FABERHURWITZ_LOCALIZATION_HPP
#define FABERHURWITZ_LOCALIZATION_HPP

#include <faberhurwitz/degeneration.hpp>
#include <faberhurwitz/faber_symbols.hpp>
#include <faberhurwitz/hurwitz.hpp>
#include <faberhurwitz/linsolve.hpp>
#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/series.hpp>
#include <faberhurwitz/transforms.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace faberhurwitz {

// The localization tree series f_j, g_j (Localization Tree Theorem,
// functional-equation form) and everything derived from them on the
// (z, u; p) side: xi^{(i)}, zeta^g, and the predicted Faber-Hurwitz
// numbers, linear in the Faber symbols.
class localization_context
{
public:
    localization_context(const trunc_profile& pr, hurwitz_oracle& oracle)
        : pr_(pr), oracle_(&oracle)
    {
        if (pr_.z_max >= unbounded) {
            throw std::invalid_argument("localization_context: z truncation required");
        }
        solve();
    }

    const trunc_profile& profile() const { return pr_; }

    const series& f_series(int j) const { return f_.at(j - 1); }
    const series& g_series(int j) const { return g_.at(j - 1); }

    // xi^{(i)} = sum_j j^{j+i}/j! f_j
    const series& xi(int i)
    {
        auto it = xi_.find(i);
        if (it != xi_.end()) {
            return it->second;
        }
        series out(pr_);
        for (int j = 1; j <= pr_.z_max; ++j) {
            out += f_.at(j - 1).scaled(rat(ipow(j, j + i), factorial(j)));
        }
        return xi_.emplace(i, std::move(out)).first->second;
    }

    // zeta^g in basis form: one rational series per Faber-symbol key,
    //   zeta^g = sum_key (-1)^k / prod_e mult_e(a)! * <key> * prod_j xi^{(a_j)}
    const std::map<symbol_key, series>& zeta_basis(int g)
    {
        auto it = zeta_.find(g);
        if (it != zeta_.end()) {
            return it->second;
        }
        std::map<symbol_key, series> basis;
        const int n_cap = std::min(pr_.z_max, pr_.p_len_max);
        for (int n = 1; n <= n_cap; ++n) {
            for (auto& key : symbol_keys_with_parts(g, n)) {
                series prod = xi_product(key.a);
                if (prod.is_zero()) {
                    continue;
                }
                rat c = 1;
                std::map<int, int> mult;
                for (int a : key.a) {
                    ++mult[a];
                }
                for (auto& [a, m] : mult) {
                    (void)a;
                    c /= rat(factorial(m));
                }
                if (key.k % 2 == 1) {
                    c = -c;
                }
                basis.emplace(key, prod.scaled(c));
            }
        }
        return zeta_.emplace(g, std::move(basis)).first->second;
    }

    // [u^{2g-1}] zeta^g(z/(1-u), -u; -u/(1-u) p), coefficientwise per key
    const std::map<symbol_key, series>& lambda_zeta_layer(int g)
    {
        auto it = lambda_zeta_.find(g);
        if (it != lambda_zeta_.end()) {
            return it->second;
        }
        if (pr_.u_max < 2 * g - 1) {
            throw std::invalid_argument("localization_context: u window too small for genus");
        }
        std::map<symbol_key, series> layer;
        for (auto& [key, s] : zeta_basis(g)) {
            series lam = lambda_zp(s).coefficient_of(var_u(), 2 * g - 1);
            if (!lam.is_zero()) {
                layer.emplace(key, std::move(lam));
            }
        }
        return lambda_zeta_.emplace(g, std::move(layer)).first->second;
    }

    // Predicted F^g_alpha as a linear form in the Faber symbols:
    //   (g-1)!/2^g * rFab! * |Aut alpha| * [p_alpha z^{|alpha|} u^{2g-1}] Lambda zeta^g
    std::map<partition, symbol_linear> predicted_fh(int g)
    {
        std::map<partition, symbol_linear> out;
        const rat unit = rat(factorial(g - 1), ipow(2, g));
        for (auto& [key, s] : lambda_zeta_layer(g)) {
            for (auto& [m, c] : s.terms()) {
                std::vector<int> parts;
                int zdeg = 0;
                for (auto& [v, k] : m.e) {
                    if (v.kind() == var_kind::p) {
                        for (int r = 0; r < k; ++r) {
                            parts.push_back(v.index());
                        }
                    } else if (v.kind() == var_kind::z) {
                        zdeg = k;
                    } else {
                        throw std::logic_error("predicted_fh: unexpected variable");
                    }
                }
                if (parts.empty()) {
                    continue;
                }
                partition alpha(parts);
                if (alpha.size() != zdeg) {
                    continue; // off-diagonal truncation debris cannot occur
                }
                rat coeff = c * unit * rat(factorial(r_fab(alpha)) * aut_size(alpha));
                out[alpha] += symbol_linear::unknown(key, coeff);
            }
        }
        return out;
    }

private:
    void solve()
    {
        const int zmax = pr_.z_max;
        f_.assign(zmax, series(pr_));
        g_.assign(zmax, series(pr_));

        // skeleton of j d/dq_j H^0(z,u;p;q): per j, a list of
        // (coefficient, monomial z^{|beta|} u^{l(beta)-2} p_gamma, beta \ j)
        struct skel_term
        {
            rat coeff;
            mono base;
            partition rest;
        };
        std::vector<std::vector<skel_term>> fskel(zmax + 1);
        for (int d = 1; d <= zmax; ++d) {
            for (auto& beta : partitions_of(d)) {
                auto bm = beta.multiplicities();
                for (auto& gamma : partitions_of_max_length(d, pr_.p_len_max)) {
                    if (gamma.parts().front() > pr_.p_index_max) {
                        continue;
                    }
                    rat h = oracle_->connected(0, gamma, beta);
                    if (h == 0) {
                        continue;
                    }
                    rat base_c = h / rat(factorial(r0_double(gamma, beta)) * aut_size(gamma) *
                                         aut_size(beta));
                    mono base = mono::of(var_z(), d).times(var_u(), beta.length() - 2);
                    for (auto& [part, mm] : gamma.multiplicities()) {
                        base = base.times(var_p(part), mm);
                    }
                    for (auto& [j, mj] : bm) {
                        if (j > zmax) {
                            continue;
                        }
                        fskel[j].push_back(
                            skel_term{base_c * rat(bigint(j) * mj), base, beta.without_one_part(j)});
                    }
                }
            }
        }

        // skeleton of j d/dq_j \hat H^0(1;q): per j, (coefficient, delta \ j)
        struct gskel_term
        {
            rat coeff;
            partition rest;
        };
        std::vector<std::vector<gskel_term>> gskel(zmax + 1);
        for (int d = 1; d <= 2 * zmax; ++d) {
            for (auto& delta : partitions_of(d)) {
                rat h = hurwitz_single_closed(delta);
                rat base_c = h / rat(factorial(r0_single(delta)) * aut_size(delta));
                for (auto& [j, mj] : delta.multiplicities()) {
                    if (j > zmax) {
                        continue;
                    }
                    partition rest = delta.without_one_part(j);
                    if (rest.size() > zmax) {
                        continue; // the f-product alone carries z^{|rest|}
                    }
                    gskel[j].push_back(gskel_term{base_c * rat(bigint(j) * mj), rest});
                }
            }
        }

        for (int pass = 0; pass < zmax + 4; ++pass) {
            bool changed = false;

            std::map<partition, series> gprod;
            auto product_g = [&](auto&& self, const partition& lam) -> const series& {
                auto it = gprod.find(lam);
                if (it != gprod.end()) {
                    return it->second;
                }
                series val(pr_);
                if (lam.empty()) {
                    val = series::constant(1, pr_);
                } else {
                    int first = lam.parts().front();
                    val = self(self, lam.without_one_part(first)) * g_.at(first - 1);
                }
                return gprod.emplace(lam, std::move(val)).first->second;
            };
            std::vector<series> fnew(zmax, series(pr_));
            for (int j = 1; j <= zmax; ++j) {
                series acc(pr_);
                for (auto& t : fskel[j]) {
                    bool skip = false;
                    for (int part : t.rest.parts()) {
                        if (part > zmax) {
                            skip = true;
                            break;
                        }
                    }
                    if (skip) {
                        continue;
                    }
                    acc += product_g(product_g, t.rest).times_monomial(t.base, t.coeff);
                }
                fnew[j - 1] = std::move(acc);
                if (!(fnew[j - 1] == f_[j - 1])) {
                    changed = true;
                }
            }
            f_ = std::move(fnew);

            std::map<partition, series> fprod;
            auto product_f = [&](auto&& self, const partition& lam) -> const series& {
                auto it = fprod.find(lam);
                if (it != fprod.end()) {
                    return it->second;
                }
                series val(pr_);
                if (lam.empty()) {
                    val = series::constant(1, pr_);
                } else {
                    int first = lam.parts().front();
                    val = self(self, lam.without_one_part(first)) * f_.at(first - 1);
                }
                return fprod.emplace(lam, std::move(val)).first->second;
            };
            std::vector<series> gnew(zmax, series(pr_));
            for (int j = 1; j <= zmax; ++j) {
                series acc(pr_);
                for (auto& t : gskel[j]) {
                    bool skip = false;
                    for (int part : t.rest.parts()) {
                        if (part > zmax) {
                            skip = true;
                            break;
                        }
                    }
                    if (skip) {
                        continue;
                    }
                    acc += product_f(product_f, t.rest).scaled(t.coeff);
                }
                gnew[j - 1] = std::move(acc);
                if (!(gnew[j - 1] == g_[j - 1])) {
                    changed = true;
                }
            }
            g_ = std::move(gnew);

            if (!changed) {
                return;
            }
        }
        throw std::runtime_error("localization_context: fixed point did not converge "
                                 "(profile too small?)");
    }

    series xi_product(const std::vector<int>& sorted_a)
    {
        auto it = xi_products_.find(sorted_a);
        if (it != xi_products_.end()) {
            return it->second;
        }
        series out(pr_);
        if (sorted_a.empty()) {
            out = series::constant(1, pr_);
        } else {
            std::vector<int> prefix(sorted_a.begin(), sorted_a.end() - 1);
            out = xi_product(prefix) * xi(sorted_a.back());
        }
        xi_products_.emplace(sorted_a, out);
        return out;
    }

    trunc_profile pr_;
    hurwitz_oracle* oracle_;
    std::vector<series> f_, g_;
    std::map<int, series> xi_;
    std::map<std::vector<int>, series> xi_products_;
    std::map<int, std::map<symbol_key, series>> zeta_;
    std::map<int, std::map<symbol_key, series>> lambda_zeta_;
};

// ---------------------------------------------------------------------
// Solving for the Faber symbols
// ---------------------------------------------------------------------

struct solve_symbols_result
{
    symbol_table table;
    std::vector<symbol_key> unknowns;
    int equations = 0;
};

// Assemble predicted_fh(alpha) = F^g_alpha for every alpha with
// |alpha| <= d_max, l(alpha) <= n_max and solve the exact linear system.
// The system is overdetermined; rank deficiency or inconsistency throws.
inline solve_symbols_result solve_symbols(int g, int n_max, int d_max,
                                          localization_context& ctx,
                                          faber_hurwitz_table& fh)
{
    if (n_max > ctx.profile().p_len_max) {
        throw std::invalid_argument("solve_symbols: n_max exceeds the profile's p length");
    }
    if (d_max > ctx.profile().z_max) {
        throw std::invalid_argument("solve_symbols: d_max exceeds the profile's z bound");
    }
    auto unknowns = symbol_keys_up_to_parts(g, n_max);
    std::map<symbol_key, size_t> col;
    for (size_t i = 0; i < unknowns.size(); ++i) {
        col.emplace(unknowns[i], i);
    }

    auto predicted = ctx.predicted_fh(g);

    std::vector<std::vector<rat>> a;
    std::vector<rat> b;
    for (int d = 1; d <= d_max; ++d) {
        for (auto& alpha : partitions_of_max_length(d, n_max)) {
            auto it = predicted.find(alpha);
            std::vector<rat> row(unknowns.size(), 0);
            if (it != predicted.end()) {
                if (it->second.constant != 0) {
                    throw std::logic_error("solve_symbols: affine part should vanish");
                }
                for (auto& [key, c] : it->second.coeffs) {
                    auto jt = col.find(key);
                    if (jt == col.end()) {
                        throw std::logic_error("solve_symbols: prediction involves key <" +
                                               key.str() + "> outside the unknown set");
                    }
                    row[jt->second] = c;
                }
            }
            a.push_back(std::move(row));
            b.push_back(fh.value(g, alpha));
        }
    }

    auto res = solve_exact(a, b);

    solve_symbols_result out;
    out.unknowns = unknowns;
    out.equations = static_cast<int>(b.size());
    for (size_t i = 0; i < unknowns.size(); ++i) {
        out.table.set(unknowns[i], res.solution[i], symbol_provenance::solved);
    }
    return out;
}

// ---------------------------------------------------------------------
// Rank certificate of Lemma nonsing
// ---------------------------------------------------------------------

// The designated row subset of the top-block system: rows are exponent
// tuples (i_1..i_n), i_j >= 3 odd for j < n, sum_{j<n} i_j <= 2g-7+3n,
// total 4g-5+3n; columns are ordered positive tuples (a_1..a_n) with
// sum = g-2+n.  Entry prod_j (2a_j-1)!! C(2a_j+m_j, m_j) at
// m_j = i_j - 2a_j - 1, zero if any m_j < 0.  Returns true when the
// square submatrix in lexicographic order is lower triangular with a
// nonzero diagonal.
inline bool nonsing_rank_property(int g, int n)
{
    if (g < 2 || n < 2) {
        throw std::invalid_argument("nonsing_rank_property: need g, n >= 2");
    }
    std::vector<std::vector<int>> cols;
    {
        std::vector<int> cur(n, 1);
        auto rec = [&](auto&& self, int pos, int rem) -> void {
            if (pos == n - 1) {
                if (rem >= 1) {
                    cur[pos] = rem;
                    cols.push_back(cur);
                }
                return;
            }
            for (int v = 1; v <= rem - (n - 1 - pos); ++v) {
                cur[pos] = v;
                self(self, pos + 1, rem - v);
            }
        };
        rec(rec, 0, g - 2 + n);
    }
    std::sort(cols.begin(), cols.end());

    const int total = 4 * g - 5 + 3 * n;
    std::vector<std::vector<int>> rows;
    {
        std::vector<int> cur(n, 0);
        auto rec = [&](auto&& self, int pos, int used) -> void {
            if (pos == n - 1) {
                int last = total - used;
                if (last >= 3) {
                    cur[pos] = last;
                    rows.push_back(cur);
                }
                return;
            }
            for (int v = 3; used + v <= 2 * g - 7 + 3 * n; v += 2) {
                cur[pos] = v;
                self(self, pos + 1, used + v);
            }
        };
        rec(rec, 0, 0);
    }
    std::sort(rows.begin(), rows.end());

    if (rows.size() != cols.size()) {
        return false;
    }
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < cols.size(); ++c) {
            bool nonzero = true;
            for (int j = 0; j < n; ++j) {
                if (rows[r][j] - 2 * cols[c][j] - 1 < 0) {
                    nonzero = false;
                    break;
                }
            }
            if (c == r && !nonzero) {
                return false;
            }
            if (c > r && nonzero) {
                return false;
            }
        }
    }
    return true;
}

} // namespace faberhurwitz

#endif
