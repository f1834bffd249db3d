#ifndef FABERHURWITZ_FABER_SYMBOLS_HPP
#define FABERHURWITZ_FABER_SYMBOLS_HPP

#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace faberhurwitz {

// Key of a Faber symbol <tau_{a_1} ... tau_{a_n} lambda_k>_g, stored with
// the tau indices sorted decreasingly (the symbol is symmetric in them).
// Values are kept in psi_1^{g-1} units throughout.
struct symbol_key
{
    int g = 0;
    std::vector<int> a; // sorted decreasing, entries >= 0
    int k = 0;

    symbol_key() = default;
    symbol_key(int genus, std::vector<int> taus, int lambda) : g(genus), a(std::move(taus)), k(lambda)
    {
        std::sort(a.begin(), a.end(), std::greater<int>());
    }

    int n() const { return static_cast<int>(a.size()); }

    int tau_sum() const
    {
        int s = 0;
        for (int v : a) {
            s += v;
        }
        return s;
    }

    // dimension constraint k + sum a_i = g - 2 + n; anything else is the
    // zero symbol
    bool dimension_ok() const
    {
        if (g < 1 || k < 0 || n() < 1) {
            return false;
        }
        for (int v : a) {
            if (v < 0) {
                return false;
            }
        }
        return k + tau_sum() == g - 2 + n() && k <= g;
    }

    bool operator<(const symbol_key& o) const
    {
        if (g != o.g) {
            return g < o.g;
        }
        if (a.size() != o.a.size()) {
            return a.size() < o.a.size();
        }
        if (a != o.a) {
            return a < o.a;
        }
        return k < o.k;
    }
    bool operator==(const symbol_key& o) const { return g == o.g && a == o.a && k == o.k; }
    bool operator!=(const symbol_key& o) const { return !(*this == o); }

    // "g;a1,...,an;k"
    std::string str() const
    {
        std::string s = std::to_string(g) + ";";
        for (size_t i = 0; i < a.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(a[i]);
        }
        s += ";" + std::to_string(k);
        return s;
    }
};

// every key with n parts for fixed genus (dimension-admissible)
inline std::vector<symbol_key> symbol_keys_with_parts(int g, int n)
{
    std::vector<symbol_key> out;
    for (int k = 0; k <= g; ++k) {
        int asum = g - 2 + n - k;
        if (asum < 0) {
            continue;
        }
        // weakly decreasing n-tuples of nonnegative integers summing to asum
        std::vector<int> cur;
        auto rec = [&](auto&& self, int rem, int slots, int maxv) -> void {
            if (slots == 0) {
                if (rem == 0) {
                    out.emplace_back(g, cur, k);
                }
                return;
            }
            for (int v = std::min(rem, maxv); v >= 0; --v) {
                if (v * slots < rem) {
                    break;
                }
                cur.push_back(v);
                self(self, rem - v, slots - 1, v);
                cur.pop_back();
            }
        };
        rec(rec, asum, n, asum);
    }
    return out;
}

inline std::vector<symbol_key> symbol_keys_up_to_parts(int g, int n_max)
{
    std::vector<symbol_key> out;
    for (int n = 1; n <= n_max; ++n) {
        auto v = symbol_keys_with_parts(g, n);
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Affine-linear combination of Faber-symbol unknowns.
struct symbol_linear
{
    rat constant = 0;
    std::map<symbol_key, rat> coeffs;

    symbol_linear() = default;
    explicit symbol_linear(const rat& c) : constant(c) {}
    explicit symbol_linear(int c) : constant(c) {}

    static symbol_linear unknown(const symbol_key& key, const rat& c = 1)
    {
        symbol_linear s;
        if (c != 0) {
            s.coeffs.emplace(key, c);
        }
        return s;
    }

    bool is_zero() const { return constant == 0 && coeffs.empty(); }

    symbol_linear& operator+=(const symbol_linear& o)
    {
        constant += o.constant;
        for (auto& [k, c] : o.coeffs) {
            rat& v = coeffs[k];
            v += c;
            if (v == 0) {
                coeffs.erase(k);
            }
        }
        return *this;
    }

    symbol_linear& operator-=(const symbol_linear& o)
    {
        constant -= o.constant;
        for (auto& [k, c] : o.coeffs) {
            rat& v = coeffs[k];
            v -= c;
            if (v == 0) {
                coeffs.erase(k);
            }
        }
        return *this;
    }

    friend symbol_linear operator+(symbol_linear a, const symbol_linear& b) { return a += b; }
    friend symbol_linear operator-(symbol_linear a, const symbol_linear& b) { return a -= b; }

    symbol_linear operator*(const rat& s) const
    {
        symbol_linear out;
        if (s == 0) {
            return out;
        }
        out.constant = constant * s;
        for (auto& [k, c] : coeffs) {
            out.coeffs.emplace(k, c * s);
        }
        return out;
    }

    bool operator==(const symbol_linear& o) const
    {
        return constant == o.constant && coeffs == o.coeffs;
    }
    bool operator!=(const symbol_linear& o) const { return !(*this == o); }

    std::string str() const
    {
        std::string s = constant.str();
        for (auto& [k, c] : coeffs) {
            s += " + " + c.str() + "*<" + k.str() + ">";
        }
        return s;
    }
};

enum class symbol_provenance { solved, string_dilaton, conjectured };

inline std::string provenance_name(symbol_provenance p)
{
    switch (p) {
        case symbol_provenance::solved: return "solved";
        case symbol_provenance::string_dilaton: return "string-dilaton";
        case symbol_provenance::conjectured: return "conjectured";
    }
    return "?";
}

struct symbol_table
{
    struct entry
    {
        rat value;
        symbol_provenance provenance;
    };

    std::map<symbol_key, entry> entries;

    bool has(const symbol_key& k) const { return entries.count(k) != 0; }

    rat value(const symbol_key& k) const
    {
        if (!k.dimension_ok()) {
            return 0;
        }
        auto it = entries.find(k);
        if (it == entries.end()) {
            throw std::out_of_range("symbol_table: missing symbol <" + k.str() + ">");
        }
        return it->second.value;
    }

    void set(const symbol_key& k, const rat& v, symbol_provenance prov)
    {
        entries[k] = entry{v, prov};
    }

    rat evaluate(const symbol_linear& lin) const
    {
        rat out = lin.constant;
        for (auto& [k, c] : lin.coeffs) {
            out += c * value(k);
        }
        return out;
    }
};

// String / dilaton reduction.  Requires a 0 or 1 among the tau indices
// and at least one remaining tau; returns the reduced combination or
// nothing when the key is irreducible.
inline std::optional<symbol_linear> string_dilaton_reduce(const symbol_key& key)
{
    if (!key.dimension_ok()) {
        return symbol_linear(0);
    }
    if (key.n() < 2) {
        return std::nullopt;
    }
    // prefer the string equation when a 0 is present
    auto it0 = std::find(key.a.begin(), key.a.end(), 0);
    if (it0 != key.a.end()) {
        symbol_linear out;
        std::vector<int> rest = key.a;
        rest.erase(rest.begin() + (it0 - key.a.begin()));
        for (size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == 0) {
                continue; // tau_{-1} term is zero
            }
            std::vector<int> red = rest;
            --red[i];
            symbol_key rk(key.g, red, key.k);
            if (rk.dimension_ok()) {
                out += symbol_linear::unknown(rk);
            }
        }
        return out;
    }
    auto it1 = std::find(key.a.begin(), key.a.end(), 1);
    if (it1 != key.a.end()) {
        std::vector<int> rest = key.a;
        rest.erase(rest.begin() + (it1 - key.a.begin()));
        symbol_key rk(key.g, rest, key.k);
        const int n_rest = static_cast<int>(rest.size());
        if (!rk.dimension_ok()) {
            return symbol_linear(0);
        }
        return symbol_linear::unknown(rk, rat(2 * key.g - 2 + n_rest));
    }
    return std::nullopt;
}

// value if every reduced symbol is known; nullopt if reduction hits a
// missing entry or the key is irreducible and absent
inline std::optional<rat> string_dilaton(const symbol_key& key, const symbol_table& table)
{
    if (!key.dimension_ok()) {
        return rat(0);
    }
    if (table.has(key)) {
        return table.value(key);
    }
    auto red = string_dilaton_reduce(key);
    if (!red) {
        return std::nullopt;
    }
    rat out = red->constant;
    for (auto& [k, c] : red->coeffs) {
        auto v = string_dilaton(k, table);
        if (!v) {
            return std::nullopt;
        }
        out += c * *v;
    }
    return out;
}

// Conjectured value (2g-3+n)! (2g-1)!! / ((2g-1)! prod (2d_j - 1)!!) for
// positive d_j with sum d_j = g - 2 + n.
inline rat conjecture_value(int g, const std::vector<int>& d)
{
    const int n = static_cast<int>(d.size());
    int sum = 0;
    for (int v : d) {
        if (v < 1) {
            throw std::invalid_argument("conjecture_value: parts must be positive");
        }
        sum += v;
    }
    if (g < 1 || n < 1 || sum != g - 2 + n) {
        throw std::invalid_argument("conjecture_value: dimension constraint violated");
    }
    rat out(factorial(2 * g - 3 + n) * double_factorial_odd(2 * g - 1), factorial(2 * g - 1));
    for (int v : d) {
        out /= rat(double_factorial_odd(2 * v - 1));
    }
    return out;
}

// two-part smoothing (fabtwo): allows zero indices via the string equation
inline rat conjecture_two_part(int g, int d1, int d2)
{
    if (d1 + d2 != g || d1 < 0 || d2 < 0) {
        throw std::invalid_argument("conjecture_two_part: need d1 + d2 = g");
    }
    return rat(double_factorial_odd(2 * g - 1),
               double_factorial_odd(2 * d1 - 1) * double_factorial_odd(2 * d2 - 1));
}

// Faber polynomial P^g_m evaluated at positive integer arguments, in
// psi_1^{g-1} units:  sum (-1)^k <tau_a lambda_k> arg^a over
// a_1 + ... + a_m + k = g - 2 + m.
inline rat faber_polynomial(int g, int m, const std::vector<int>& args, const symbol_table& table)
{
    if (static_cast<int>(args.size()) != m) {
        throw std::invalid_argument("faber_polynomial: argument count != m");
    }
    rat total = 0;
    // iterate over ordered exponent tuples; key sorting handles symmetry
    std::vector<int> a(m, 0);
    const int top = g - 2 + m;
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == m) {
            const int k = rem;
            if (k > g) {
                return;
            }
            symbol_key key(g, a, k);
            if (!key.dimension_ok()) {
                return;
            }
            rat term = table.value(key);
            if (k % 2 == 1) {
                term = -term;
            }
            for (int i = 0; i < m; ++i) {
                term *= rat_pow(rat(args[i]), a[i]);
            }
            total += term;
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            a[pos] = v;
            self(self, pos + 1, rem - v);
        }
        a[pos] = 0;
    };
    if (top >= 0) {
        rec(rec, 0, top);
    }
    return total;
}

} // namespace faberhurwitz

#endif
