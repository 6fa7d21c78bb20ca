#ifndef DOWLING_POSET_HPP
#define DOWLING_POSET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace dowling
{

// Permutation of poset element indices induced by one group element.
using element_map = std::vector<int>;

struct rank_report {
    bool pure = false;   // all maximal chains have the same length
    bool graded = false; // every element has a well-defined rank
    std::vector<int> rank;
    int length = 0;
};

struct homology_report {
    // betti[k + 1] is the reduced Betti number in degree k, k >= -1
    std::vector<long> betti;
    long rank_in_degree(int k) const
    {
        const auto idx = static_cast<std::size_t>(k + 1);
        return k + 1 >= 0 && idx < betti.size() ? betti[idx] : 0;
    }
    bool concentrated_in(int k) const
    {
        for (std::size_t i = 0; i < betti.size(); ++i) {
            if (betti[i] != 0 && static_cast<int>(i) - 1 != k) {
                return false;
            }
        }
        return true;
    }
};

// Finite poset on indices 0..size-1. Indices are a linear extension: x < y
// in the order implies x < y as integers. Immutable; the Moebius cache is
// internally synchronized.
class poset
{
public:
    // `leq(x, y)` must be a partial order on 0..size-1; indices are re-sorted
    // into a linear extension and `labels` follow them.
    static poset from_leq(int size, const std::function<bool(int, int)> &leq, std::vector<std::string> labels = {})
    {
        std::vector<std::vector<char>> rel(static_cast<std::size_t>(size), std::vector<char>(static_cast<std::size_t>(size)));
        std::vector<int> down(static_cast<std::size_t>(size), 0);
        for (int x = 0; x < size; ++x) {
            for (int y = 0; y < size; ++y) {
                rel[ux(x)][ux(y)] = leq(x, y) ? 1 : 0;
                down[ux(y)] += rel[ux(x)][ux(y)];
            }
        }
        std::vector<int> order(static_cast<std::size_t>(size));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return down[ux(a)] < down[ux(b)]; });
        poset P(size);
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                if (rel[ux(order[ux(i)])][ux(order[ux(j)])]) {
                    P.set_leq(i, j);
                }
            }
        }
        if (!labels.empty()) {
            for (int i = 0; i < size; ++i) {
                P.m_labels.push_back(labels[ux(order[ux(i)])]);
            }
        }
        P.m_original_index = order;
        P.finish();
        return P;
    }

    int size() const
    {
        return m_n;
    }
    bool leq(int x, int y) const
    {
        return (m_up[ux(x)][ux(y) >> 6] >> (y & 63)) & 1;
    }
    bool less(int x, int y) const
    {
        return x != y && leq(x, y);
    }
    const std::vector<std::vector<int>> &upper_covers() const
    {
        return m_covers;
    }
    std::optional<int> bottom() const
    {
        return m_bottom;
    }
    std::optional<int> top() const
    {
        return m_top;
    }
    const std::vector<std::string> &labels() const
    {
        return m_labels;
    }
    // Position in the `from_leq` input of each element.
    const std::vector<int> &original_index() const
    {
        return m_original_index;
    }

    // Rank annotation: ambient ranks carried into sub-posets. Defaults to the
    // maximal chain length from the bottom.
    const std::vector<int> &rank_annotation() const
    {
        return m_rank;
    }
    void set_rank_annotation(std::vector<int> r)
    {
        if (static_cast<int>(r.size()) != m_n) {
            throw invalid_argument("rank annotation has wrong size");
        }
        m_rank = std::move(r);
    }

    // mu(x, y); requires x <= y.
    long long mobius(int x, int y) const
    {
        if (!leq(x, y)) {
            throw domain_error("mobius: x is not <= y");
        }
        return mobius_row(x)[ux(y)];
    }

    // Row mu(x, .) (zero where x is not <= y).
    const std::vector<long long> &mobius_row(int x) const
    {
        {
            std::lock_guard<std::mutex> lock(m_cache->mutex);
            auto it = m_cache->rows.find(x);
            if (it != m_cache->rows.end()) {
                return it->second;
            }
        }
        std::vector<long long> row(ux(m_n), 0);
        row[ux(x)] = 1;
        for (int y = x + 1; y < m_n; ++y) {
            if (!leq(x, y)) {
                continue;
            }
            long long s = 0;
            for (int z = x; z < y; ++z) {
                if (row[ux(z)] != 0 && leq(z, y)) {
                    s += row[ux(z)];
                }
            }
            row[ux(y)] = -s;
        }
        std::lock_guard<std::mutex> lock(m_cache->mutex);
        return m_cache->rows.emplace(x, std::move(row)).first->second;
    }

    rank_report rank_and_purity() const
    {
        if (!m_bottom || !m_top) {
            throw contract_error("rank_and_purity: poset is not bounded");
        }
        std::vector<int> lo(ux(m_n), -1), hi(ux(m_n), -1);
        lo[ux(*m_bottom)] = hi[ux(*m_bottom)] = 0;
        for (int x = 0; x < m_n; ++x) {
            if (lo[ux(x)] < 0) {
                continue;
            }
            for (int y : m_covers[ux(x)]) {
                lo[ux(y)] = lo[ux(y)] < 0 ? lo[ux(x)] + 1 : std::min(lo[ux(y)], lo[ux(x)] + 1);
                hi[ux(y)] = std::max(hi[ux(y)], hi[ux(x)] + 1);
            }
        }
        rank_report r;
        r.rank = hi;
        r.length = hi[ux(*m_top)];
        r.pure = lo[ux(*m_top)] == hi[ux(*m_top)];
        r.graded = lo == hi;
        return r;
    }

    // Chains x < z_0 < ... < z_k < y of the open interval, grouped by size.
    std::vector<std::vector<std::vector<int>>> open_interval_chains(int x, int y) const
    {
        std::vector<int> inner;
        for (int z = x + 1; z < y; ++z) {
            if (less(x, z) && less(z, y)) {
                inner.push_back(z);
            }
        }
        std::vector<std::vector<std::vector<int>>> by_size(1, std::vector<std::vector<int>>{{}});
        std::vector<int> cur;
        std::function<void(std::size_t)> extend = [&](std::size_t from) {
            for (std::size_t k = from; k < inner.size(); ++k) {
                if (!cur.empty() && !less(cur.back(), inner[k])) {
                    continue;
                }
                cur.push_back(inner[k]);
                if (by_size.size() <= cur.size()) {
                    by_size.emplace_back();
                }
                by_size[cur.size()].push_back(cur);
                extend(k + 1);
                cur.pop_back();
            }
        };
        extend(0);
        return by_size;
    }

    // Reduced rational homology of the order complex of (x, y).
    homology_report order_complex_homology(int x, int y) const
    {
        if (!less(x, y)) {
            throw domain_error("order_complex_homology: need x < y");
        }
        const auto chains = open_interval_chains(x, y);
        // ranks[k] = rank of the boundary from chains of size k to size k-1
        std::vector<long> ranks(chains.size() + 1, 0);
        for (std::size_t k = 1; k < chains.size(); ++k) {
            std::map<std::vector<int>, int> index;
            for (std::size_t j = 0; j < chains[k - 1].size(); ++j) {
                index[chains[k - 1][j]] = static_cast<int>(j);
            }
            std::vector<std::vector<std::pair<int, rational>>> rows;
            rows.reserve(chains[k].size());
            for (const auto &ch : chains[k]) {
                std::vector<std::pair<int, rational>> row;
                for (std::size_t drop = 0; drop < ch.size(); ++drop) {
                    std::vector<int> face;
                    face.reserve(ch.size() - 1);
                    for (std::size_t q = 0; q < ch.size(); ++q) {
                        if (q != drop) {
                            face.push_back(ch[q]);
                        }
                    }
                    row.emplace_back(index.at(face), drop % 2 ? -1 : 1);
                }
                std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
                rows.push_back(std::move(row));
            }
            ranks[k] = sparse_rank(std::move(rows));
        }
        homology_report h;
        for (std::size_t k = 0; k < chains.size(); ++k) {
            // chains of size k live in degree k - 1
            const long dim = static_cast<long>(chains[k].size());
            h.betti.push_back(dim - ranks[k] - ranks[k + 1]);
        }
        return h;
    }

    // Sub-poset induced on `keep` (sorted indices); ranks and labels follow.
    poset induced(const std::vector<int> &keep) const
    {
        const int m = static_cast<int>(keep.size());
        poset P(m);
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                if (leq(keep[ux(i)], keep[ux(j)])) {
                    P.set_leq(i, j);
                }
            }
        }
        for (int i = 0; i < m; ++i) {
            if (!m_labels.empty()) {
                P.m_labels.push_back(m_labels[ux(keep[ux(i)])]);
            }
            P.m_original_index.push_back(keep[ux(i)]);
        }
        P.finish();
        std::vector<int> r;
        for (int k : keep) {
            r.push_back(m_rank[ux(k)]);
        }
        P.m_rank = std::move(r);
        return P;
    }

    bool is_automorphism(const element_map &g) const
    {
        if (static_cast<int>(g.size()) != m_n) {
            return false;
        }
        std::vector<char> hit(ux(m_n), 0);
        for (int v : g) {
            if (v < 0 || v >= m_n || hit[ux(v)]) {
                return false;
            }
            hit[ux(v)] = 1;
        }
        for (int x = 0; x < m_n; ++x) {
            for (int y = 0; y < m_n; ++y) {
                if (leq(x, y) != leq(g[ux(x)], g[ux(y)])) {
                    return false;
                }
            }
        }
        return true;
    }

    // Elements listed with labels, then cover pairs, in index order.
    std::string dump() const
    {
        std::ostringstream os;
        os << "elements " << m_n << '\n';
        for (int x = 0; x < m_n; ++x) {
            os << x << ' ' << (m_labels.empty() ? std::to_string(x) : m_labels[ux(x)]) << '\n';
        }
        os << "covers\n";
        for (int x = 0; x < m_n; ++x) {
            for (int y : m_covers[ux(x)]) {
                os << x << ' ' << y << '\n';
            }
        }
        return os.str();
    }

private:
    explicit poset(int n)
        : m_n(n), m_up(ux(n), std::vector<std::uint64_t>((ux(n) + 63) / 64, 0)),
          m_cache(std::make_shared<cache>())
    {
    }

    static std::size_t ux(int v)
    {
        return static_cast<std::size_t>(v);
    }

    void set_leq(int x, int y)
    {
        if (y < x) {
            throw invalid_argument("poset: order relation is not compatible with a linear extension");
        }
        m_up[ux(x)][ux(y) >> 6] |= std::uint64_t{1} << (y & 63);
    }

    void finish()
    {
        m_covers.assign(ux(m_n), {});
        for (int x = 0; x < m_n; ++x) {
            if (!leq(x, x)) {
                throw invalid_argument("poset: relation is not reflexive");
            }
            for (int y = x + 1; y < m_n; ++y) {
                if (!leq(x, y)) {
                    continue;
                }
                bool cover = true;
                for (int z = x + 1; z < y && cover; ++z) {
                    cover = !(leq(x, z) && leq(z, y));
                }
                if (cover) {
                    m_covers[ux(x)].push_back(y);
                }
            }
        }
        if (m_n > 0) {
            bool b = true, t = true;
            for (int x = 0; x < m_n; ++x) {
                b = b && leq(0, x);
                t = t && leq(x, m_n - 1);
            }
            if (b) {
                m_bottom = 0;
            }
            if (t) {
                m_top = m_n - 1;
            }
        }
        // default rank annotation: longest chain from the bottom
        m_rank.assign(ux(m_n), 0);
        for (int x = 0; x < m_n; ++x) {
            for (int y : m_covers[ux(x)]) {
                m_rank[ux(y)] = std::max(m_rank[ux(y)], m_rank[ux(x)] + 1);
            }
        }
    }

    // Rank of a sparse matrix over Q by incremental row echelon reduction.
    static long sparse_rank(std::vector<std::vector<std::pair<int, rational>>> rows)
    {
        std::map<int, std::vector<std::pair<int, rational>>> pivots;
        for (auto &row : rows) {
            while (!row.empty()) {
                auto it = pivots.find(row.front().first);
                if (it == pivots.end()) {
                    const rational lead = row.front().second;
                    for (auto &e : row) {
                        e.second /= lead;
                    }
                    pivots.emplace(row.front().first, std::move(row));
                    break;
                }
                const rational factor = row.front().second;
                const auto &p = it->second;
                std::vector<std::pair<int, rational>> out;
                out.reserve(row.size() + p.size());
                std::size_t a = 0, b = 0;
                while (a < row.size() || b < p.size()) {
                    if (b == p.size() || (a < row.size() && row[a].first < p[b].first)) {
                        out.push_back(row[a++]);
                    } else if (a == row.size() || p[b].first < row[a].first) {
                        out.emplace_back(p[b].first, -factor * p[b].second);
                        ++b;
                    } else {
                        rational v = row[a].second - factor * p[b].second;
                        if (v != 0) {
                            out.emplace_back(row[a].first, v);
                        }
                        ++a;
                        ++b;
                    }
                }
                row = std::move(out);
            }
        }
        return static_cast<long>(pivots.size());
    }

    struct cache {
        std::mutex mutex;
        std::map<int, std::vector<long long>> rows;
    };

    int m_n = 0;
    std::vector<std::vector<std::uint64_t>> m_up;
    std::vector<std::vector<int>> m_covers;
    std::optional<int> m_bottom, m_top;
    std::vector<std::string> m_labels;
    std::vector<int> m_original_index;
    std::vector<int> m_rank;
    std::shared_ptr<cache> m_cache;
};

inline poset chain_poset(int length)
{
    return poset::from_leq(length + 1, [](int a, int b) { return a <= b; });
}

inline poset boolean_lattice(int k)
{
    return poset::from_leq(1 << k, [](int a, int b) { return (a & b) == a; });
}

// {x : g(x) = x} with the induced order; ambient ranks kept.
inline poset fixed_subposet(const poset &P, const element_map &g)
{
    std::vector<int> keep;
    for (int x = 0; x < P.size(); ++x) {
        if (g[static_cast<std::size_t>(x)] == x) {
            keep.push_back(x);
        }
    }
    return P.induced(keep);
}

// Without a top element the poset is its own "proper part from below"; this
// helper returns mu(0^, 1^) for bounded posets and 1 for a single element.
inline long long mobius_bottom_top(const poset &P)
{
    if (!P.bottom() || !P.top()) {
        throw contract_error("poset is not bounded");
    }
    return P.mobius(*P.bottom(), *P.top());
}

// Trace of g on the top reduced homology of the proper part:
// (-1)^length * mu_{P^g}(0^, 1^).
inline long long lefschetz_top_trace(const poset &P, const element_map &g, bool check_concentration = false)
{
    const auto rr = P.rank_and_purity();
    if (!rr.pure) {
        throw hypothesis_violation("lefschetz_top_trace: poset is not pure");
    }
    if (check_concentration && P.size() >= 2) {
        const auto h = P.order_complex_homology(*P.bottom(), *P.top());
        if (!h.concentrated_in(rr.length - 2)) {
            throw hypothesis_violation("homology of the proper part is not concentrated in top degree");
        }
    }
    const long long mu = mobius_bottom_top(fixed_subposet(P, g));
    return rr.length % 2 ? -mu : mu;
}

// Same trace as a signed count of g-fixed chains of the proper part (the
// empty chain included): on chain groups g acts by a permutation, and a chain
// fixed setwise is fixed pointwise.
class fixed_chain_counter
{
public:
    explicit fixed_chain_counter(const poset &P) : m_length(P.rank_and_purity().length)
    {
        if (P.size() >= 2) {
            m_chains = P.open_interval_chains(*P.bottom(), *P.top());
        } else {
            m_chains = {{{}}};
        }
        m_single = P.size() == 1;
    }

    long long trace(const element_map &g) const
    {
        if (m_single) {
            return 1;
        }
        long long chi = 0;
        for (std::size_t k = 0; k < m_chains.size(); ++k) {
            long long fixed = 0;
            for (const auto &ch : m_chains[k]) {
                bool all = true;
                for (int x : ch) {
                    all = all && g[static_cast<std::size_t>(x)] == x;
                }
                fixed += all ? 1 : 0;
            }
            // chains with k elements sit in degree k - 1
            chi += (k % 2 ? 1 : -1) * fixed;
        }
        return m_length % 2 ? -chi : chi;
    }

private:
    int m_length;
    bool m_single = false;
    std::vector<std::vector<std::vector<int>>> m_chains;
};

inline long long lefschetz_via_chains(const poset &P, const element_map &g)
{
    return fixed_chain_counter(P).trace(g);
}

// sum_{x in P^g} mu_{P^g}(0^, x) t^{rk_P(x)}; index = power of t.
inline std::vector<long long> equivariant_char_poly(const poset &P, const element_map &g)
{
    if (!P.bottom()) {
        throw contract_error("equivariant_char_poly: poset has no bottom element");
    }
    const poset F = fixed_subposet(P, g);
    const auto &row = F.mobius_row(*F.bottom());
    std::vector<long long> poly;
    for (int x = 0; x < F.size(); ++x) {
        const int r = F.rank_annotation()[static_cast<std::size_t>(x)];
        if (static_cast<int>(poly.size()) <= r) {
            poly.resize(static_cast<std::size_t>(r + 1), 0);
        }
        poly[static_cast<std::size_t>(r)] += row[static_cast<std::size_t>(x)];
    }
    return poly;
}

inline element_map identity_map(int n)
{
    element_map g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 0);
    return g;
}

} // namespace dowling

#endif
