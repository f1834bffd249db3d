#ifndef FABERHURWITZ_PARTITION_HPP
#define FABERHURWITZ_PARTITION_HPP

#include <faberhurwitz/rational.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace faberhurwitz {

// Weakly decreasing list of positive integers.  Indexes every Hurwitz and
// Faber quantity in the library.
class partition
{
public:
    partition() = default;

    explicit partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_) {
            if (p < 1) {
                throw std::invalid_argument("partition: parts must be >= 1");
            }
        }
    }

    static partition one_part(int d) { return partition(std::vector<int>{d}); }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    int size() const
    {
        int d = 0;
        for (int p : parts_) {
            d += p;
        }
        return d;
    }

    // multiplicity map j -> i_j = #{parts equal to j}
    std::map<int, int> multiplicities() const
    {
        std::map<int, int> m;
        for (int p : parts_) {
            ++m[p];
        }
        return m;
    }

    int multiplicity(int j) const
    {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), j));
    }

    partition with_part(int j) const
    {
        std::vector<int> q = parts_;
        q.push_back(j);
        return partition(std::move(q));
    }

    partition without_one_part(int j) const
    {
        std::vector<int> q = parts_;
        auto it = std::find(q.begin(), q.end(), j);
        if (it == q.end()) {
            throw std::invalid_argument("partition: no part to remove");
        }
        q.erase(it);
        partition out;
        out.parts_ = std::move(q);
        return out;
    }

    bool operator==(const partition& o) const { return parts_ == o.parts_; }
    bool operator!=(const partition& o) const { return parts_ != o.parts_; }
    bool operator<(const partition& o) const { return parts_ < o.parts_; }

    std::string str() const
    {
        std::string s = "(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> parts_;
};

// |Aut alpha| = prod_j (i_j)!
inline bigint aut_size(const partition& p)
{
    bigint out = 1;
    for (auto& [part, mult] : p.multiplicities()) {
        (void)part;
        out *= factorial(mult);
    }
    return out;
}

// z_alpha = prod_j j^{i_j} (i_j)!, the centralizer size in S_d.
inline bigint centralizer_size(const partition& p)
{
    bigint out = 1;
    for (auto& [part, mult] : p.multiplicities()) {
        out *= ipow(part, mult) * factorial(mult);
    }
    return out;
}

// All partitions of n in reverse-lexicographic order; the empty partition
// for n = 0.  The order is deterministic so downstream output is
// reproducible byte for byte.
inline std::vector<partition> partitions_of(int n)
{
    if (n < 0) {
        throw std::invalid_argument("partitions_of: negative n");
    }
    std::vector<partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.push_back(partition(cur));
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline std::vector<partition> partitions_of_max_length(int n, int max_len)
{
    std::vector<partition> out;
    for (auto& p : partitions_of(n)) {
        if (p.length() <= max_len) {
            out.push_back(p);
        }
    }
    return out;
}

struct branch_count_result
{
    long r_g_alpha = 0;                     // d + l(alpha) + 2g - 2
    std::optional<long> r_g_alpha_beta;     // l(alpha) + l(beta) + 2g - 2
    long r_fab = 0;                         // d + l(alpha) - 1
};

inline branch_count_result branch_counts(int g, const partition& alpha,
                                         const std::optional<partition>& beta = std::nullopt)
{
    if (g < 0) {
        throw std::invalid_argument("branch_counts: genus must be >= 0");
    }
    branch_count_result r;
    const long d = alpha.size();
    r.r_g_alpha = d + alpha.length() + 2L * g - 2;
    r.r_fab = d + alpha.length() - 1;
    if (beta) {
        if (beta->size() != alpha.size()) {
            throw std::invalid_argument("branch_counts: |alpha| != |beta|");
        }
        r.r_g_alpha_beta = alpha.length() + beta->length() + 2L * g - 2;
    }
    return r;
}

inline long r0_single(const partition& alpha)
{
    return alpha.size() + alpha.length() - 2;
}

inline long r0_double(const partition& alpha, const partition& beta)
{
    return alpha.length() + beta.length() - 2;
}

// r^Fab carries a genus subscript in the usual notation but its value
// d + l(alpha) - 1 does not depend on g.
inline long r_fab(const partition& alpha)
{
    return alpha.size() + alpha.length() - 1;
}

} // namespace faberhurwitz

#endif
