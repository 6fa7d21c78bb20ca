#ifndef DOWLING_WREATH_HPP
#define DOWLING_WREATH_HPP

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace dowling
{

// Conjugacy class label of G wr S_n: a(i, c) cycles of length i whose cycle
// product lies in class c.
struct wreath_class_type {
    int n = 0;
    std::map<series_var, int> a;
    auto operator<=>(const wreath_class_type &) const = default;

    int multiplicity(int i, int c) const
    {
        auto it = a.find({i, c});
        return it == a.end() ? 0 : it->second;
    }

    std::string str() const
    {
        std::string s = "[";
        for (const auto &[v, k] : a) {
            if (s.size() > 1) {
                s += ",";
            }
            s += "a" + std::to_string(v.i) + "(" + std::to_string(v.class_id) + ")=" + std::to_string(k);
        }
        return s + "]";
    }
};

inline wreath_class_type identity_type(const finite_group &G, int n)
{
    wreath_class_type t{n, {}};
    if (n > 0) {
        t.a[{1, G.identity_class()}] = n;
    }
    return t;
}

// All class types with sum i*a(i,c) = n, in increasing order.
inline std::vector<wreath_class_type> enumerate_class_types(const finite_group &G, int n)
{
    if (n < 0) {
        throw invalid_argument("enumerate_class_types: n must be >= 0");
    }
    std::vector<series_var> parts;
    for (int i = 1; i <= n; ++i) {
        for (int c = 0; c < G.num_classes(); ++c) {
            parts.push_back({i, c});
        }
    }
    std::vector<wreath_class_type> out;
    wreath_class_type cur{n, {}};
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (k == parts.size()) {
            return;
        }
        const series_var v = parts[k];
        rec(k + 1, left);
        for (int m = 1; m * v.i <= left; ++m) {
            cur.a[v] = m;
            rec(k + 1, left - m * v.i);
        }
        cur.a.erase(v);
    };
    rec(0, n);
    std::sort(out.begin(), out.end());
    return out;
}

inline void validate_type(const finite_group &G, const wreath_class_type &t)
{
    int s = 0;
    for (const auto &[v, k] : t.a) {
        if (v.i < 1 || v.class_id < 0 || v.class_id >= G.num_classes() || k < 0) {
            throw invalid_argument("invalid class type " + t.str());
        }
        s += v.i * k;
    }
    if (s != t.n) {
        throw invalid_argument("class type " + t.str() + " does not have degree " + std::to_string(t.n));
    }
}

// prod (|G|/|c| * i)^{a} a!
inline integer centralizer_order(const finite_group &G, const wreath_class_type &t)
{
    validate_type(G, t);
    integer z = 1;
    for (const auto &[v, k] : t.a) {
        const integer base = integer(G.order() / G.class_size(v.class_id)) * v.i;
        z *= ipow(base, static_cast<unsigned long>(k)) * factorial(static_cast<unsigned long>(k));
    }
    return z;
}

inline integer wreath_order(const finite_group &G, int n)
{
    return ipow(G.order(), static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n));
}

inline monomial cycle_index(const finite_group &G, const wreath_class_type &t)
{
    validate_type(G, t);
    std::vector<monomial_factor> fs;
    for (const auto &[v, k] : t.a) {
        if (k > 0) {
            fs.push_back({v, k});
        }
    }
    return monomial::from_factors(std::move(fs));
}

// Element of G wr S_n acting on G x [n] by (g, m) -> (g * labels[m], perm[m]).
struct wreath_element {
    std::vector<int> perm;
    std::vector<int> labels;
    bool operator==(const wreath_element &) const = default;

    int n() const
    {
        return static_cast<int>(perm.size());
    }

    static wreath_element identity(int n)
    {
        wreath_element w;
        w.perm.resize(static_cast<std::size_t>(n));
        std::iota(w.perm.begin(), w.perm.end(), 0);
        w.labels.assign(static_cast<std::size_t>(n), 0);
        return w;
    }

    // Image of the point (g, m).
    std::pair<int, int> apply(const finite_group &G, int g, int m) const
    {
        return {G.mul(g, labels[static_cast<std::size_t>(m)]), perm[static_cast<std::size_t>(m)]};
    }
};

// (a * b)(x) = a(b(x))
inline wreath_element wreath_mul(const finite_group &G, const wreath_element &a, const wreath_element &b)
{
    const int n = a.n();
    wreath_element r;
    r.perm.resize(static_cast<std::size_t>(n));
    r.labels.resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto um = static_cast<std::size_t>(m);
        const auto bm = static_cast<std::size_t>(b.perm[um]);
        r.perm[um] = a.perm[bm];
        r.labels[um] = G.mul(b.labels[um], a.labels[bm]);
    }
    return r;
}

inline wreath_element wreath_inverse(const finite_group &G, const wreath_element &w)
{
    const int n = w.n();
    wreath_element r;
    r.perm.resize(static_cast<std::size_t>(n));
    r.labels.resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto um = static_cast<std::size_t>(m);
        const auto pm = static_cast<std::size_t>(w.perm[um]);
        r.perm[pm] = m;
        r.labels[pm] = G.inverse(w.labels[um]);
    }
    return r;
}

// Cycle types with cycle products taken in traversal order.
inline wreath_class_type element_type(const finite_group &G, const wreath_element &w)
{
    const int n = w.n();
    wreath_class_type t{n, {}};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) {
            continue;
        }
        int len = 0;
        int prod = G.identity();
        int m = s;
        while (!seen[static_cast<std::size_t>(m)]) {
            seen[static_cast<std::size_t>(m)] = 1;
            prod = G.mul(prod, w.labels[static_cast<std::size_t>(m)]);
            m = w.perm[static_cast<std::size_t>(m)];
            ++len;
        }
        ++t.a[{len, G.class_of(prod)}];
    }
    return t;
}

// Cycles laid out on consecutive positions, class representative on the
// first position of each cycle.
inline wreath_element representative(const finite_group &G, const wreath_class_type &t)
{
    validate_type(G, t);
    wreath_element w = wreath_element::identity(t.n);
    int m = 0;
    for (const auto &[v, k] : t.a) {
        for (int r = 0; r < k; ++r) {
            for (int j = 0; j < v.i; ++j) {
                w.perm[static_cast<std::size_t>(m + j)] = m + (j + 1) % v.i;
            }
            w.labels[static_cast<std::size_t>(m)] = G.classes()[static_cast<std::size_t>(v.class_id)].representative;
            m += v.i;
        }
    }
    return w;
}

// Every element of G wr S_n; only sensible for tiny n.
inline std::vector<wreath_element> all_elements(const finite_group &G, int n)
{
    std::vector<wreath_element> out;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        std::vector<int> labels(static_cast<std::size_t>(n), 0);
        while (true) {
            out.push_back({p, labels});
            int k = 0;
            while (k < n && ++labels[static_cast<std::size_t>(k)] == G.order()) {
                labels[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == n) {
                break;
            }
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Generators: adjacent transpositions plus one label generator per group
// element on position 0.
inline std::vector<wreath_element> wreath_generators(const finite_group &G, int n)
{
    std::vector<wreath_element> gens;
    for (int m = 0; m + 1 < n; ++m) {
        auto w = wreath_element::identity(n);
        std::swap(w.perm[static_cast<std::size_t>(m)], w.perm[static_cast<std::size_t>(m + 1)]);
        gens.push_back(w);
    }
    if (n > 0) {
        for (int g = 1; g < G.order(); ++g) {
            auto w = wreath_element::identity(n);
            w.labels[0] = g;
            gens.push_back(w);
        }
    }
    return gens;
}

using class_function = std::map<wreath_class_type, rational>;
// Class function with values in Z[t]; t-exponent -> coefficient.
using t_polynomial = std::map<long, rational>;
using graded_class_function = std::map<wreath_class_type, t_polynomial>;

// sum_tau phi(tau) Psi(tau) / z_tau, as a series truncated at N >= n.
inline graded_series frobenius_ch(const group_ptr &G, int n, const class_function &phi, int N = -1)
{
    graded_series r(G, N < 0 ? n : N);
    for (const auto &t : enumerate_class_types(*G, n)) {
        auto it = phi.find(t);
        if (it == phi.end()) {
            throw incomplete_class_function("class function has no value at " + t.str());
        }
        r.add_term(cycle_index(*G, t), 0, it->second / rational(centralizer_order(*G, t)));
    }
    return r;
}

inline graded_series frobenius_ch_t(const group_ptr &G, int n, const graded_class_function &phi, int N = -1)
{
    graded_series r(G, N < 0 ? n : N);
    for (const auto &t : enumerate_class_types(*G, n)) {
        auto it = phi.find(t);
        if (it == phi.end()) {
            throw incomplete_class_function("class function has no value at " + t.str());
        }
        const rational z(centralizer_order(*G, t));
        const monomial psi = cycle_index(*G, t);
        for (const auto &[e, c] : it->second) {
            r.add_term(psi, e, c / z);
        }
    }
    return r;
}

// Coefficient of Psi(tau) times z_tau; f must be homogeneous of degree n.
inline rational trace_extract(const finite_group &G, const graded_series &f, const wreath_class_type &t)
{
    if (!f.is_homogeneous(t.n)) {
        throw contract_error("trace_extract: series is not homogeneous of degree " + std::to_string(t.n));
    }
    return f.coefficient(cycle_index(G, t)) * rational(centralizer_order(G, t));
}

inline class_function trace_function(const finite_group &G, const graded_series &f, int n)
{
    class_function phi;
    for (const auto &t : enumerate_class_types(G, n)) {
        phi[t] = trace_extract(G, f, t);
    }
    return phi;
}

} // namespace dowling

#endif
