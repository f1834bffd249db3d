#ifndef FABERHURWITZ_LOCTREE_HPP
#define FABERHURWITZ_LOCTREE_HPP

#include <faberhurwitz/faber_symbols.hpp>
#include <faberhurwitz/hurwitz.hpp>
#include <faberhurwitz/partition.hpp>
#include <faberhurwitz/rational.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace faberhurwitz {

// Decorated rooted trees of the localization formula.  Vertices come in
// three classes; 0-infinity edges join 0- to infinity-vertices and carry
// positive weights, t-vertices are monovalent tails on infinity-vertices
// (recorded by the partitions gamma).  Trees here are stored as
// unlabelled canonical shapes; the number of labelled trees a shape
// represents (labels on non-root 0-vertices and on t-vertices per
// weight) is carried as multiplicity data.
struct loc_tree
{
    struct inf_node;
    struct zero_node
    {
        std::vector<std::pair<int, inf_node>> children; // (edge weight, subtree)
    };
    struct inf_node
    {
        partition gamma;                                 // t-star weights
        std::vector<std::pair<int, zero_node>> children; // (edge weight, subtree)
    };

    zero_node root;

    // derived decoration data
    partition alpha;          // disjoint union of the gamma's
    long r_inf = 0;           // sum of r^0_{gamma^v, beta^v}
    int eta0 = 0;             // number of non-root 0-vertices
    std::map<int, int> eta;   // eta_k = number of t-vertices on weight-k edges
    bigint labelings = 1;     // number of distinct labelled trees of this shape
    partition delta_root;     // weights at the root
    rat weight_b = 1;         // product of 0-infinity edge weights
    rat weight_c = 1;         // product over non-root 0-vertices of H/r!
    rat weight_d = 1;         // product over infinity-vertices of H/r!
};

namespace loctree_detail {

inline std::string encode(const loc_tree::zero_node& z);

inline std::string encode(const loc_tree::inf_node& v)
{
    std::string s = "I" + v.gamma.str() + "[";
    for (auto& [w, ch] : v.children) {
        s += std::to_string(w) + ":" + encode(ch) + ";";
    }
    return s + "]";
}

inline std::string encode(const loc_tree::zero_node& z)
{
    std::string s = "Z[";
    for (auto& [w, ch] : z.children) {
        s += std::to_string(w) + ":" + encode(ch) + ";";
    }
    return s + "]";
}

inline void sort_children(loc_tree::zero_node& z)
{
    std::sort(z.children.begin(), z.children.end(), [](auto& a, auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return encode(a.second) < encode(b.second);
    });
}

inline void sort_children(loc_tree::inf_node& v)
{
    std::sort(v.children.begin(), v.children.end(), [](auto& a, auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return encode(a.second) < encode(b.second);
    });
}

// automorphism count of the canonical shape
inline bigint aut(const loc_tree::zero_node& z);

inline bigint aut(const loc_tree::inf_node& v)
{
    bigint out = 1;
    for (auto& [part, mult] : v.gamma.multiplicities()) {
        (void)part;
        out *= factorial(mult);
    }
    size_t i = 0;
    while (i < v.children.size()) {
        size_t j = i;
        std::string enc = encode(v.children[i].second);
        while (j < v.children.size() && v.children[j].first == v.children[i].first &&
               encode(v.children[j].second) == enc) {
            ++j;
        }
        out *= factorial(static_cast<long>(j - i));
        for (size_t t = i; t < j; ++t) {
            out *= aut(v.children[t].second);
        }
        i = j;
    }
    return out;
}

inline bigint aut(const loc_tree::zero_node& z)
{
    bigint out = 1;
    size_t i = 0;
    while (i < z.children.size()) {
        size_t j = i;
        std::string enc = encode(z.children[i].second);
        while (j < z.children.size() && z.children[j].first == z.children[i].first &&
               encode(z.children[j].second) == enc) {
            ++j;
        }
        out *= factorial(static_cast<long>(j - i));
        for (size_t t = i; t < j; ++t) {
            out *= aut(z.children[t].second);
        }
        i = j;
    }
    return out;
}

struct enumerator
{
    int budget; // |alpha|
    std::map<std::pair<int, int>, std::vector<loc_tree::inf_node>> inf_memo;
    std::map<std::pair<int, int>, std::vector<loc_tree::zero_node>> zero_memo;

    // all infinity-subtrees hanging on an edge of weight eps whose gamma
    // weights sum to exactly total
    const std::vector<loc_tree::inf_node>& inf_shapes(int eps, int total)
    {
        auto key = std::make_pair(eps, total);
        auto it = inf_memo.find(key);
        if (it != inf_memo.end()) {
            return it->second;
        }
        std::vector<loc_tree::inf_node> out;
        for (int s = std::max(eps, 1); s <= total; ++s) {
            for (auto& gamma : partitions_of(s)) {
                if (gamma.empty()) {
                    continue;
                }
                // child zero-subtrees: edge weights sum to s - eps,
                // remaining gamma budget total - s distributed on them
                for (auto& lam : partitions_of(s - eps)) {
                    distribute_children(lam.parts(), total - s, gamma, out);
                }
            }
        }
        std::map<std::string, loc_tree::inf_node> dedup;
        for (auto& t : out) {
            dedup.emplace(encode(t), t);
        }
        out.clear();
        for (auto& [e, t] : dedup) {
            (void)e;
            out.push_back(t);
        }
        return inf_memo.emplace(key, std::move(out)).first->second;
    }

    void distribute_children(const std::vector<int>& weights, int extra, const partition& gamma,
                             std::vector<loc_tree::inf_node>& out)
    {
        std::vector<std::pair<int, loc_tree::zero_node>> cur;
        auto rec = [&](auto&& self, size_t pos, int rem) -> void {
            if (pos == weights.size()) {
                if (rem == 0) {
                    loc_tree::inf_node node;
                    node.gamma = gamma;
                    node.children = cur;
                    sort_children(node);
                    out.push_back(std::move(node));
                }
                return;
            }
            for (int t = 0; t <= rem; ++t) {
                for (auto& z : zero_shapes(weights[pos], t)) {
                    cur.emplace_back(weights[pos], z);
                    self(self, pos + 1, rem - t);
                    cur.pop_back();
                }
            }
        };
        rec(rec, 0, extra);
    }

    // all non-root zero-subtrees on a parent edge of weight eps whose
    // descendant gamma weights sum to exactly total (leaf when 0)
    const std::vector<loc_tree::zero_node>& zero_shapes(int eps, int total)
    {
        auto key = std::make_pair(eps, total);
        auto it = zero_memo.find(key);
        if (it != zero_memo.end()) {
            return it->second;
        }
        std::vector<loc_tree::zero_node> out;
        build_zero(total, false, out);
        return zero_memo.emplace(key, std::move(out)).first->second;
    }

    void build_zero(int total, bool is_root, std::vector<loc_tree::zero_node>& out)
    {
        if (total == 0) {
            if (!is_root) {
                out.push_back(loc_tree::zero_node{});
            }
            return;
        }
        // children: multiset of (weight, inf-subtree) with gamma totals
        // summing to total, every subtree consuming at least 1
        std::vector<std::pair<int, loc_tree::inf_node>> cur;
        std::map<std::string, loc_tree::zero_node> dedup;
        auto rec = [&](auto&& self, int rem) -> void {
            if (rem == 0) {
                loc_tree::zero_node node;
                node.children = cur;
                sort_children(node);
                dedup.emplace(encode(node), node);
                return;
            }
            for (int w = 1; w <= budget; ++w) {
                for (int t = 1; t <= rem; ++t) {
                    for (auto& sub : inf_shapes(w, t)) {
                        cur.emplace_back(w, sub);
                        self(self, rem - t);
                        cur.pop_back();
                    }
                }
            }
        };
        rec(rec, total);
        for (auto& [e, t] : dedup) {
            (void)e;
            out.push_back(t);
        }
    }
};

inline void collect(const loc_tree::zero_node& z, bool is_root, hurwitz_oracle& oracle,
                    loc_tree& data, std::vector<int>& alpha_parts)
{
    std::vector<int> delta;
    for (auto& [w, inf] : z.children) {
        delta.push_back(w);
    }
    if (is_root) {
        data.delta_root = partition(delta);
    } else {
        // non-root delta includes the parent edge weight, added by caller
    }
    for (auto& [w, inf] : z.children) {
        data.weight_b *= rat(w);
        // infinity vertex: beta = parent edge + child edges, gamma = t-star
        std::vector<int> beta_parts{w};
        for (auto& [w2, zz] : inf.children) {
            beta_parts.push_back(w2);
        }
        partition beta(beta_parts);
        if (beta.size() != inf.gamma.size()) {
            throw std::logic_error("loc_tree: balance condition violated");
        }
        long rv = r0_double(inf.gamma, beta);
        data.r_inf += rv;
        data.weight_d *= oracle.connected(0, inf.gamma, beta) / rat(factorial(rv));
        for (int p : inf.gamma.parts()) {
            alpha_parts.push_back(p);
            ++data.eta[p];
        }
        for (auto& [w2, zz] : inf.children) {
            data.weight_b *= rat(w2);
            ++data.eta0;
            std::vector<int> dparts{w2};
            for (auto& [w3, ii] : zz.children) {
                dparts.push_back(w3);
            }
            partition dv(dparts);
            data.weight_c *= hurwitz_single_closed(dv) / rat(factorial(r0_single(dv)));
            collect(zz, false, oracle, data, alpha_parts);
        }
    }
}

} // namespace loctree_detail

// All localization trees with prescribed alpha and r_inf <= 2g-1,
// enumerated as canonical shapes with labelled-tree multiplicities.
inline std::vector<loc_tree> enumerate_trees(int g, const partition& alpha,
                                             hurwitz_oracle& oracle, int d_guard = 4,
                                             int g_guard = 2)
{
    if (alpha.size() > d_guard || g > g_guard) {
        throw std::invalid_argument("enumerate_trees: size guard exceeded");
    }
    const int d = alpha.size();
    loctree_detail::enumerator en;
    en.budget = d;
    std::vector<loc_tree::zero_node> roots;
    en.build_zero(d, true, roots);

    std::vector<loc_tree> out;
    for (auto& rz : roots) {
        loc_tree t;
        t.root = rz;
        std::vector<int> alpha_parts;
        loctree_detail::collect(rz, true, oracle, t, alpha_parts);
        if (partition(alpha_parts) != alpha) {
            continue;
        }
        t.alpha = alpha;
        if (t.r_inf > 2 * g - 1) {
            continue;
        }
        bigint lab = factorial(t.eta0);
        for (auto& [k, cnt] : t.eta) {
            (void)k;
            lab *= factorial(cnt);
        }
        bigint a = loctree_detail::aut(t.root);
        bigint q, r;
        boost::multiprecision::divide_qr(lab, a, q, r);
        if (r != 0) {
            throw std::logic_error("loc_tree: automorphism count does not divide labelings");
        }
        t.labelings = q;
        out.push_back(std::move(t));
    }
    return out;
}

// Tree summation of the Localization Tree Theorem, evaluated against a
// symbol table and normalized to F^g_alpha units via G_{g,1} =
// 2^g/(g-1)! psi_1^{g-1}.
inline rat tree_sum(int g, const partition& alpha, const symbol_table& table,
                    hurwitz_oracle& oracle, int d_guard = 4, int g_guard = 2)
{
    rat total = 0;
    const long rg = alpha.size() + alpha.length() + 2L * g - 2;
    const long rf = r_fab(alpha);
    for (auto& t : enumerate_trees(g, alpha, oracle, d_guard, g_guard)) {
        rat a_weight = faber_polynomial(g, t.delta_root.length(),
                                        t.delta_root.parts(), table);
        for (int e : t.delta_root.parts()) {
            a_weight *= rat(ipow(e, e), factorial(e));
        }
        rat term = a_weight * t.weight_b * t.weight_c * t.weight_d;
        term *= rat(factorial(rf) * binomial(rg - t.r_inf, rf));
        term *= rat(t.labelings, factorial(t.eta0));
        if (t.r_inf % 2 == 1) {
            term = -term;
        }
        total += term;
    }
    return total * rat(factorial(g - 1), ipow(2, g));
}

} // namespace faberhurwitz

#endif
