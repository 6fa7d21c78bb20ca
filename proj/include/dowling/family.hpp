#ifndef DOWLING_FAMILY_HPP
#define DOWLING_FAMILY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "poset.hpp"
#include "wreath.hpp"

namespace dowling
{

enum class family_kind { Q, R, Qsim, Q1mod, Q0mod };

struct family_spec {
    family_kind kind = family_kind::Q;
    int d = 0; // modulus for Q1mod / Q0mod

    std::string name() const
    {
        switch (kind) {
            case family_kind::Q:
                return "q";
            case family_kind::R:
                return "r";
            case family_kind::Qsim:
                return "qsim";
            case family_kind::Q1mod:
                return "q1modd";
            case family_kind::Q0mod:
                return "q0modd";
        }
        return "?";
    }
};

inline family_spec parse_family(const std::string &name, int d = 0)
{
    if (name == "q") {
        return {family_kind::Q, 0};
    }
    if (name == "r") {
        return {family_kind::R, 0};
    }
    if (name == "qsim") {
        return {family_kind::Qsim, 0};
    }
    if (name == "q1modd") {
        return {family_kind::Q1mod, d};
    }
    if (name == "q0modd") {
        return {family_kind::Q0mod, d};
    }
    throw invalid_argument("unknown family '" + name + "'");
}

// (J, pi) with J = G x I. Each part orbit of pi is a block B of positions
// with labels phi: B -> G, phi(min B) = e; the parts are {(h phi(m), m)}.
struct dowling_element {
    unsigned I = 0;
    std::vector<int> block_of; // block index per position, -1 inside I
    std::vector<int> phi;      // label per position (0 inside I)
    std::vector<unsigned> blocks;

    int num_blocks() const
    {
        return static_cast<int>(blocks.size());
    }
    std::vector<int> key() const
    {
        std::vector<int> k = block_of;
        k.insert(k.end(), phi.begin(), phi.end());
        return k;
    }
};

inline int popcount(unsigned x)
{
    return __builtin_popcount(x);
}

inline int lowest_bit(unsigned x)
{
    return __builtin_ctz(x);
}

// Renumbers blocks by minimal position and normalizes phi(min) = e.
inline dowling_element canonical_element(const finite_group &G, int n, unsigned I, std::vector<unsigned> blocks,
                                         std::vector<int> phi)
{
    std::sort(blocks.begin(), blocks.end(), [](unsigned a, unsigned b) { return lowest_bit(a) < lowest_bit(b); });
    dowling_element e;
    e.I = I;
    e.block_of.assign(static_cast<std::size_t>(n), -1);
    e.phi.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int lead = phi[static_cast<std::size_t>(lowest_bit(blocks[b]))];
        const int inv = G.inverse(lead);
        for (int m = 0; m < n; ++m) {
            if (blocks[b] >> m & 1) {
                e.block_of[static_cast<std::size_t>(m)] = static_cast<int>(b);
                e.phi[static_cast<std::size_t>(m)] = G.mul(inv, phi[static_cast<std::size_t>(m)]);
            }
        }
    }
    e.blocks = std::move(blocks);
    return e;
}

// Order of the Dowling lattice.
inline bool dowling_leq(const finite_group &G, const dowling_element &a, const dowling_element &b)
{
    if (a.block_of.size() != b.block_of.size()) {
        throw invalid_argument("dowling_leq: ground sets differ");
    }
    if (a.I & ~b.I) {
        return false;
    }
    for (unsigned B : a.blocks) {
        if ((B & ~b.I) == 0) {
            continue;
        }
        const int m0 = lowest_bit(B);
        const int bb = b.block_of[static_cast<std::size_t>(m0)];
        if (bb < 0 || (B & ~b.blocks[static_cast<std::size_t>(bb)])) {
            return false;
        }
        // the translate h with phi_a = h phi_b must be constant on B
        const int h = G.mul(a.phi[static_cast<std::size_t>(m0)], G.inverse(b.phi[static_cast<std::size_t>(m0)]));
        for (int m = m0 + 1; m < static_cast<int>(a.block_of.size()); ++m) {
            if (B >> m & 1) {
                if (G.mul(h, b.phi[static_cast<std::size_t>(m)]) != a.phi[static_cast<std::size_t>(m)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline dowling_element act_on_element(const finite_group &G, int n, const wreath_element &w, const dowling_element &e)
{
    unsigned I = 0;
    for (int m = 0; m < n; ++m) {
        if (e.I >> m & 1) {
            I |= 1u << w.perm[static_cast<std::size_t>(m)];
        }
    }
    std::vector<unsigned> blocks;
    std::vector<int> phi(static_cast<std::size_t>(n), 0);
    for (unsigned B : e.blocks) {
        unsigned nb = 0;
        for (int m = 0; m < n; ++m) {
            if (B >> m & 1) {
                const auto pm = static_cast<std::size_t>(w.perm[static_cast<std::size_t>(m)]);
                nb |= 1u << pm;
                phi[pm] = G.mul(e.phi[static_cast<std::size_t>(m)], w.labels[static_cast<std::size_t>(m)]);
            }
        }
        blocks.push_back(nb);
    }
    return canonical_element(G, n, I, std::move(blocks), std::move(phi));
}

// Element predicate for each family.
inline bool family_admits(const family_spec &f, int n, const dowling_element &e)
{
    const int isz = popcount(e.I);
    auto all_blocks = [&](auto pred) {
        return std::all_of(e.blocks.begin(), e.blocks.end(), [&](unsigned B) { return pred(popcount(B)); });
    };
    switch (f.kind) {
        case family_kind::Q:
            return true;
        case family_kind::R:
            return isz == 0 || isz == n;
        case family_kind::Qsim:
            return isz != 1;
        case family_kind::Q1mod:
            return all_blocks([&](int s) { return s % f.d == 1 % f.d; }) && (isz % f.d == 0 || isz == n);
        case family_kind::Q0mod: {
            const bool is_bottom = isz == 0 && all_blocks([](int s) { return s == 1; });
            return is_bottom || all_blocks([&](int s) { return s % f.d == 0; });
        }
    }
    return false;
}

// Calls `visit` for every element of Q_n(G) (canonical form).
inline void for_each_dowling_element(const finite_group &G, int n, const std::function<void(const dowling_element &)> &visit)
{
    if (n < 0 || n > 16) {
        throw invalid_argument("Dowling ground set size out of range");
    }
    const unsigned full = n == 0 ? 0u : ((1u << n) - 1);
    for (unsigned I = 0;; ++I) {
        if ((I & full) == I) {
            std::vector<int> rest;
            for (int m = 0; m < n; ++m) {
                if (!(I >> m & 1)) {
                    rest.push_back(m);
                }
            }
            // set partitions of `rest` by restricted growth strings
            std::vector<int> rgs(rest.size(), 0);
            std::function<void(std::size_t, int)> part = [&](std::size_t k, int used) {
                if (k == rest.size()) {
                    std::vector<unsigned> blocks(static_cast<std::size_t>(used), 0);
                    for (std::size_t q = 0; q < rest.size(); ++q) {
                        blocks[static_cast<std::size_t>(rgs[q])] |= 1u << rest[q];
                    }
                    // labels on non-leading positions
                    std::vector<int> free_pos;
                    for (unsigned B : blocks) {
                        for (int m = lowest_bit(B) + 1; m < n; ++m) {
                            if (B >> m & 1) {
                                free_pos.push_back(m);
                            }
                        }
                    }
                    std::vector<int> phi(static_cast<std::size_t>(n), 0);
                    while (true) {
                        visit(canonical_element(G, n, I, blocks, phi));
                        std::size_t q = 0;
                        while (q < free_pos.size()
                               && ++phi[static_cast<std::size_t>(free_pos[q])] == G.order()) {
                            phi[static_cast<std::size_t>(free_pos[q])] = 0;
                            ++q;
                        }
                        if (q == free_pos.size()) {
                            break;
                        }
                    }
                    return;
                }
                for (int b = 0; b <= used; ++b) {
                    rgs[k] = b;
                    part(k + 1, std::max(used, b + 1));
                }
            };
            part(0, 0);
        }
        if (I == full) {
            break;
        }
    }
}

inline void check_family_parameters(const family_spec &f, const finite_group &G, int n)
{
    if (n < 1) {
        throw invalid_argument("family needs n >= 1");
    }
    if ((f.kind == family_kind::Q1mod || f.kind == family_kind::Q0mod) && f.d < 2) {
        throw invalid_argument("family " + f.name() + " needs d >= 2");
    }
    if (f.kind == family_kind::Qsim && (G.order() < 2 || n < 2)) {
        throw unsupported_family("qsim needs a nontrivial group and n >= 2");
    }
}

inline long long estimate_family_size(const family_spec &f, const finite_group &G, int n)
{
    check_family_parameters(f, G, n);
    long long count = 0;
    for_each_dowling_element(G, n, [&](const dowling_element &e) { count += family_admits(f, n, e) ? 1 : 0; });
    return count;
}

// A finite poset together with the action of G wr S_n on its elements.
struct acted_poset {
    group_ptr group;
    int n = 0;
    poset P = chain_poset(0);
    std::function<element_map(const wreath_element &)> act;
};

class dowling_poset
{
public:
    dowling_poset(family_spec f, group_ptr G, int n, bool drop_top = false)
        : m_family(f), m_group(std::move(G)), m_n(n), m_drop_top(drop_top)
    {
        check_family_parameters(f, *m_group, n);
        std::vector<dowling_element> raw;
        const unsigned full = (1u << n) - 1;
        for_each_dowling_element(*m_group, n, [&](const dowling_element &e) {
            if (family_admits(f, n, e) && !(drop_top && e.I == full)) {
                raw.push_back(e);
            }
        });
        const finite_group &Gr = *m_group;
        poset P = poset::from_leq(static_cast<int>(raw.size()),
                                  [&](int a, int b) {
                                      return dowling_leq(Gr, raw[static_cast<std::size_t>(a)],
                                                         raw[static_cast<std::size_t>(b)]);
                                  },
                                  labels_of(raw));
        for (int idx : P.original_index()) {
            m_elements.push_back(raw[static_cast<std::size_t>(idx)]);
        }
        for (std::size_t i = 0; i < m_elements.size(); ++i) {
            m_index.emplace(m_elements[i].key(), static_cast<int>(i));
        }
        m_poset = std::make_shared<const poset>(std::move(P));
    }

    const family_spec &family() const
    {
        return m_family;
    }
    const group_ptr &group() const
    {
        return m_group;
    }
    int n() const
    {
        return m_n;
    }
    const poset &P() const
    {
        return *m_poset;
    }
    const std::vector<dowling_element> &elements() const
    {
        return m_elements;
    }
    int index_of(const dowling_element &e) const
    {
        auto it = m_index.find(e.key());
        return it == m_index.end() ? -1 : it->second;
    }

    element_map action(const wreath_element &w) const
    {
        element_map g(m_elements.size());
        for (std::size_t i = 0; i < m_elements.size(); ++i) {
            const int j = index_of(act_on_element(*m_group, m_n, w, m_elements[i]));
            if (j < 0) {
                throw contract_error("wreath action leaves the family");
            }
            g[i] = j;
        }
        return g;
    }

    acted_poset acted() const
    {
        auto self = std::make_shared<dowling_poset>(*this);
        return {m_group, m_n, *m_poset, [self](const wreath_element &w) { return self->action(w); }};
    }

    // Closed-form rank of an element.
    int formula_rank(int idx) const
    {
        const auto &e = m_elements[static_cast<std::size_t>(idx)];
        const int nb = e.num_blocks();
        const unsigned full = (1u << m_n) - 1;
        switch (m_family.kind) {
            case family_kind::Q:
            case family_kind::R:
            case family_kind::Qsim:
                return m_n - nb;
            case family_kind::Q1mod:
                if (e.I == full) {
                    return (m_n + m_family.d - 1) / m_family.d;
                }
                return (m_n - nb) / m_family.d;
            case family_kind::Q0mod:
                if (idx == 0) {
                    return 0;
                }
                return m_n / m_family.d + 1 - nb;
        }
        return -1;
    }

    int formula_length() const
    {
        switch (m_family.kind) {
            case family_kind::Q1mod:
                return (m_n + m_family.d - 1) / m_family.d;
            case family_kind::Q0mod:
                return m_n / m_family.d + 1;
            default:
                return m_n;
        }
    }

    std::string element_label(int idx) const
    {
        return m_poset->labels()[static_cast<std::size_t>(idx)];
    }

private:
    std::vector<std::string> labels_of(const std::vector<dowling_element> &raw) const
    {
        std::vector<std::string> out;
        for (const auto &e : raw) {
            std::string s = "I={";
            for (int m = 0; m < m_n; ++m) {
                if (e.I >> m & 1) {
                    s += std::to_string(m + 1);
                }
            }
            s += "}";
            for (unsigned B : e.blocks) {
                s += " [";
                for (int m = 0; m < m_n; ++m) {
                    if (B >> m & 1) {
                        s += std::to_string(m + 1) + ":" + m_group->names()[static_cast<std::size_t>(e.phi[static_cast<std::size_t>(m)])] + " ";
                    }
                }
                s.back() = ']';
            }
            out.push_back(s);
        }
        return out;
    }

    family_spec m_family;
    group_ptr m_group;
    int m_n;
    bool m_drop_top;
    std::vector<dowling_element> m_elements;
    std::map<std::vector<int>, int> m_index;
    std::shared_ptr<const poset> m_poset;
};

inline dowling_poset build_family(const family_spec &f, const group_ptr &G, int n, bool drop_top = false)
{
    return dowling_poset(f, G, n, drop_top);
}

// Signed-partition poset of type B with even-rank components: the 1 mod 2
// family over {+-1}, without its maximum when n is odd.
inline dowling_poset build_pi_b2(int n)
{
    return dowling_poset({family_kind::Q1mod, 2}, cyclic_group(2), n, n % 2 == 1);
}

// ---------------------------------------------------------------------------
// Partition lattices with the symmetric-group action.

// Set partitions of [n] as block-id vectors (blocks numbered by first
// occurrence), ordered by refinement.
inline acted_poset partition_lattice(int n)
{
    if (n < 1) {
        throw invalid_argument("partition_lattice: n must be >= 1");
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == n) {
            parts.push_back(rgs);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            rgs[static_cast<std::size_t>(k)] = b;
            rec(k + 1, std::max(used, b + 1));
        }
    };
    rgs[0] = 0;
    rec(1, 1);
    auto refines = [&](int a, int b) {
        const auto &pa = parts[static_cast<std::size_t>(a)];
        const auto &pb = parts[static_cast<std::size_t>(b)];
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (pa[static_cast<std::size_t>(x)] == pa[static_cast<std::size_t>(y)]
                    && pb[static_cast<std::size_t>(x)] != pb[static_cast<std::size_t>(y)]) {
                    return false;
                }
            }
        }
        return true;
    };
    poset P = poset::from_leq(static_cast<int>(parts.size()), refines);
    auto ordered = std::make_shared<std::vector<std::vector<int>>>();
    for (int idx : P.original_index()) {
        ordered->push_back(parts[static_cast<std::size_t>(idx)]);
    }
    auto index = std::make_shared<std::map<std::vector<int>, int>>();
    for (std::size_t i = 0; i < ordered->size(); ++i) {
        index->emplace((*ordered)[i], static_cast<int>(i));
    }
    auto act = [ordered, index, n](const wreath_element &w) {
        element_map g(ordered->size());
        for (std::size_t i = 0; i < ordered->size(); ++i) {
            const auto &p = (*ordered)[i];
            std::vector<int> img(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x) {
                img[static_cast<std::size_t>(w.perm[static_cast<std::size_t>(x)])] = p[static_cast<std::size_t>(x)];
            }
            std::map<int, int> relabel;
            for (auto &v : img) {
                auto it = relabel.emplace(v, static_cast<int>(relabel.size())).first;
                v = it->second;
            }
            g[i] = index->at(img);
        }
        return g;
    };
    return {trivial_group(), n, std::move(P), act};
}

// ---------------------------------------------------------------------------
// Structural reports.

struct rank_formula_report {
    bool pure = false;
    int length = 0;
    int expected_length = 0;
    int mismatches = 0; // elements whose computed rank differs from the formula
    bool ok() const
    {
        return pure && length == expected_length && mismatches == 0;
    }
};

inline rank_formula_report verify_rank_formulas(const dowling_poset &D)
{
    rank_formula_report r;
    const auto rr = D.P().rank_and_purity();
    r.pure = rr.pure && rr.graded;
    r.length = rr.length;
    r.expected_length = D.formula_length();
    for (int x = 0; x < D.P().size(); ++x) {
        if (rr.rank[static_cast<std::size_t>(x)] != D.formula_rank(x)) {
            ++r.mismatches;
        }
    }
    return r;
}

struct atom_ordering_report {
    int atoms = 0;
    int counterexamples = 0;
    int pairs_checked = 0;
    std::vector<int> i0_sizes; // |I_0| for each atom, in atom order
    bool ok() const
    {
        return counterexamples == 0;
    }
};

// Orders the atoms of Q^{0 mod d} by the word I_0 I_1 ... (blocks by their
// smallest element) and then by label tuples, and checks: whenever a_i, a_j
// < y with i < j, some z <= y covers a_j and an earlier atom.
inline atom_ordering_report atom_ordering_check(const group_ptr &G, int n, int d)
{
    const dowling_poset D({family_kind::Q0mod, d}, G, n);
    const poset &P = D.P();
    const int bottom = *P.bottom();
    std::vector<int> atoms = P.upper_covers()[static_cast<std::size_t>(bottom)];
    auto sort_key = [&](int a) {
        const auto &e = D.elements()[static_cast<std::size_t>(a)];
        std::vector<int> word, labels;
        for (int m = 0; m < n; ++m) {
            if (e.I >> m & 1) {
                word.push_back(m);
            }
        }
        for (unsigned B : e.blocks) {
            for (int m = 0; m < n; ++m) {
                if (B >> m & 1) {
                    word.push_back(m);
                    labels.push_back(e.phi[static_cast<std::size_t>(m)]);
                }
            }
        }
        return std::make_pair(word, labels);
    };
    std::sort(atoms.begin(), atoms.end(), [&](int a, int b) { return sort_key(a) < sort_key(b); });

    atom_ordering_report rep;
    rep.atoms = static_cast<int>(atoms.size());
    for (int a : atoms) {
        rep.i0_sizes.push_back(popcount(D.elements()[static_cast<std::size_t>(a)].I));
    }
    const int N = P.size();
    auto covers = [&](int z, int a) {
        const auto &c = P.upper_covers()[static_cast<std::size_t>(a)];
        return std::find(c.begin(), c.end(), z) != c.end();
    };
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        // Z_j: common covers of a_j and some earlier atom
        std::vector<int> Z;
        for (int z : P.upper_covers()[static_cast<std::size_t>(atoms[j])]) {
            for (std::size_t k = 0; k < j; ++k) {
                if (covers(z, atoms[k])) {
                    Z.push_back(z);
                    break;
                }
            }
        }
        for (int y = 0; y < N; ++y) {
            if (!P.less(atoms[j], y)) {
                continue;
            }
            bool has_earlier = false;
            for (std::size_t i = 0; i < j && !has_earlier; ++i) {
                has_earlier = P.less(atoms[i], y);
            }
            if (!has_earlier) {
                continue;
            }
            ++rep.pairs_checked;
            const bool found = std::any_of(Z.begin(), Z.end(), [&](int z) { return P.leq(z, y); });
            if (!found) {
                ++rep.counterexamples;
            }
        }
    }
    return rep;
}

struct isomorphism_report {
    bool counts_match = false;
    bool rank_generating_match = false;
    bool mobius_match = false;
    bool ok() const
    {
        return counts_match && rank_generating_match && mobius_match;
    }
};

inline std::vector<int> rank_generating(const poset &P)
{
    std::vector<int> g;
    for (int r : P.rank_annotation()) {
        if (static_cast<int>(g.size()) <= r) {
            g.resize(static_cast<std::size_t>(r + 1), 0);
        }
        ++g[static_cast<std::size_t>(r)];
    }
    return g;
}

// Q_n({1}) against the partition lattice of n+1 points, and R_n({1}) minus its
// top against the partition lattice of n points.
inline isomorphism_report isomorphism_smoke_test_q(int n)
{
    const dowling_poset Q({family_kind::Q, 0}, trivial_group(), n);
    const acted_poset Pi = partition_lattice(n + 1);
    isomorphism_report r;
    r.counts_match = Q.P().size() == Pi.P.size();
    r.rank_generating_match = rank_generating(Q.P()) == rank_generating(Pi.P);
    r.mobius_match = mobius_bottom_top(Q.P()) == mobius_bottom_top(Pi.P);
    return r;
}

inline isomorphism_report isomorphism_smoke_test_r(int n)
{
    const dowling_poset R({family_kind::R, 0}, trivial_group(), n, true);
    const dowling_poset Rfull({family_kind::R, 0}, trivial_group(), n);
    const acted_poset Pi = partition_lattice(n);
    isomorphism_report r;
    r.counts_match = R.P().size() == Pi.P.size() && Rfull.P().size() == Pi.P.size() + 1;
    r.rank_generating_match = rank_generating(R.P()) == rank_generating(Pi.P);
    // adjoining a top to a poset with bottom gives mu = -(sum of mu) = 0 for n >= 2
    long long s = 0;
    for (long long v : Pi.P.mobius_row(0)) {
        s += v;
    }
    r.mobius_match = R.P().top() ? mobius_bottom_top(R.P()) == mobius_bottom_top(Pi.P)
                                 : mobius_bottom_top(Rfull.P()) == -s;
    return r;
}

} // namespace dowling

#endif
