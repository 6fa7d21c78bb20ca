#ifndef DOWLING_SERIES_HPP
#define DOWLING_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "rational.hpp"

namespace dowling
{

// The indeterminate p_i(c); its degree is i.
struct series_var {
    int i = 1;
    int class_id = 0;
    auto operator<=>(const series_var &) const = default;
};

struct monomial_factor {
    series_var var;
    int exp = 1;
    auto operator<=>(const monomial_factor &) const = default;
};

// Product of powers p_i(c)^e, factors kept sorted by (i, class_id).
class monomial
{
public:
    monomial() = default;

    static monomial var(int i, int class_id, int exp = 1)
    {
        if (i < 1 || exp < 0) {
            throw invalid_argument("monomial::var: need i >= 1 and exp >= 0");
        }
        monomial m;
        if (exp > 0) {
            m.m_factors.push_back({{i, class_id}, exp});
            m.m_degree = i * exp;
        }
        return m;
    }

    static monomial from_factors(std::vector<monomial_factor> fs)
    {
        std::sort(fs.begin(), fs.end());
        monomial m;
        for (const auto &f : fs) {
            if (f.exp == 0) {
                continue;
            }
            if (f.var.i < 1 || f.exp < 0) {
                throw invalid_argument("monomial: invalid factor");
            }
            if (!m.m_factors.empty() && m.m_factors.back().var == f.var) {
                m.m_factors.back().exp += f.exp;
            } else {
                m.m_factors.push_back(f);
            }
            m.m_degree += f.var.i * f.exp;
        }
        return m;
    }

    int degree() const
    {
        return m_degree;
    }
    bool is_one() const
    {
        return m_factors.empty();
    }
    const std::vector<monomial_factor> &factors() const
    {
        return m_factors;
    }
    int exponent_of(series_var v) const
    {
        for (const auto &f : m_factors) {
            if (f.var == v) {
                return f.exp;
            }
        }
        return 0;
    }

    friend monomial operator*(const monomial &a, const monomial &b)
    {
        monomial r;
        r.m_degree = a.m_degree + b.m_degree;
        r.m_factors.reserve(a.m_factors.size() + b.m_factors.size());
        auto ia = a.m_factors.begin();
        auto ib = b.m_factors.begin();
        while (ia != a.m_factors.end() || ib != b.m_factors.end()) {
            if (ib == b.m_factors.end() || (ia != a.m_factors.end() && ia->var < ib->var)) {
                r.m_factors.push_back(*ia++);
            } else if (ia == a.m_factors.end() || ib->var < ia->var) {
                r.m_factors.push_back(*ib++);
            } else {
                r.m_factors.push_back({ia->var, ia->exp + ib->exp});
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    // Removes one power of the largest variable; used by the plethysm memo.
    std::pair<monomial, series_var> split_last() const
    {
        monomial r = *this;
        auto &last = r.m_factors.back();
        const series_var v = last.var;
        r.m_degree -= v.i;
        if (--last.exp == 0) {
            r.m_factors.pop_back();
        }
        return {r, v};
    }

    // Degree first, then factor lists lexicographically.
    friend bool operator<(const monomial &a, const monomial &b)
    {
        if (a.m_degree != b.m_degree) {
            return a.m_degree < b.m_degree;
        }
        return a.m_factors < b.m_factors;
    }
    friend bool operator==(const monomial &a, const monomial &b)
    {
        return a.m_degree == b.m_degree && a.m_factors == b.m_factors;
    }

    std::string str() const
    {
        if (m_factors.empty()) {
            return "1";
        }
        std::string s;
        for (const auto &f : m_factors) {
            if (!s.empty()) {
                s += "*";
            }
            s += "p" + std::to_string(f.var.i) + "(" + std::to_string(f.var.class_id) + ")";
            if (f.exp != 1) {
                s += "^" + std::to_string(f.exp);
            }
        }
        return s;
    }

private:
    std::vector<monomial_factor> m_factors;
    int m_degree = 0;
};

struct term_key {
    monomial mono;
    long t_exp = 0; // exponent of t, scaled by the series' t-denominator
    friend bool operator<(const term_key &a, const term_key &b)
    {
        if (a.mono < b.mono) {
            return true;
        }
        if (b.mono < a.mono) {
            return false;
        }
        return a.t_exp < b.t_exp;
    }
    friend bool operator==(const term_key &a, const term_key &b) = default;
};

// Truncated element of A_G tensor Q[t^{+-1/d_t}]: a sparse map from
// (monomial, t-exponent) to nonzero rationals. Terms of monomial degree above
// the truncation degree are never stored.
class graded_series
{
public:
    using term_map = std::map<term_key, rational>;

    graded_series(group_ptr group, int trunc_degree, long t_den = 1)
        : m_group(std::move(group)), m_trunc(trunc_degree), m_tden(t_den)
    {
        if (!m_group) {
            throw invalid_argument("graded_series: null group");
        }
        if (m_trunc < 0) {
            throw invalid_argument("graded_series: truncation degree must be >= 0");
        }
        if (m_tden < 1) {
            throw invalid_argument("graded_series: t denominator must be >= 1");
        }
    }

    static graded_series constant(group_ptr g, int N, const rational &c)
    {
        graded_series s(std::move(g), N);
        s.add_term(monomial{}, 0, c);
        return s;
    }
    static graded_series variable(group_ptr g, int N, int i, int class_id, const rational &c = 1)
    {
        graded_series s(std::move(g), N);
        s.add_term(monomial::var(i, class_id), 0, c);
        return s;
    }
    // c * t^q as a degree-0 series.
    static graded_series t_power(group_ptr g, int N, const rational &q, const rational &c = 1)
    {
        graded_series s(std::move(g), N, q.get_den().get_si());
        s.add_term_t(monomial{}, q, c);
        return s;
    }

    const group_ptr &group() const
    {
        return m_group;
    }
    int trunc_degree() const
    {
        return m_trunc;
    }
    long t_den() const
    {
        return m_tden;
    }
    const term_map &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }

    // Adds c * mono * t^(t_scaled / t_den); silently drops degrees above N.
    void add_term(const monomial &mono, long t_scaled, const rational &c)
    {
        if (mono.degree() > m_trunc || c == 0) {
            return;
        }
        for (const auto &f : mono.factors()) {
            if (f.var.class_id < 0 || f.var.class_id >= m_group->num_classes()) {
                throw invalid_argument("graded_series: class id out of range");
            }
        }
        auto [it, inserted] = m_terms.try_emplace(term_key{mono, t_scaled}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    // Same, with a rational t exponent; the exponent must be representable.
    void add_term_t(const monomial &mono, const rational &t_exp, const rational &c)
    {
        const rational scaled = t_exp * m_tden;
        if (scaled.get_den() != 1) {
            throw grading_error("t exponent " + to_string(t_exp) + " not representable with t denominator "
                                + std::to_string(m_tden));
        }
        add_term(mono, scaled.get_num().get_si(), c);
    }

    rational coefficient(const monomial &mono, const rational &t_exp = 0) const
    {
        const rational scaled = t_exp * m_tden;
        if (scaled.get_den() != 1) {
            return 0;
        }
        auto it = m_terms.find(term_key{mono, scaled.get_num().get_si()});
        return it == m_terms.end() ? rational(0) : it->second;
    }

    // Copy with t denominator refined to `den` (a multiple of the current one).
    graded_series with_t_den(long den) const
    {
        if (den % m_tden != 0) {
            throw grading_error("cannot refine t denominator " + std::to_string(m_tden) + " to " + std::to_string(den));
        }
        const long k = den / m_tden;
        graded_series r(m_group, m_trunc, den);
        for (const auto &[key, c] : m_terms) {
            r.m_terms.emplace_hint(r.m_terms.end(), term_key{key.mono, key.t_exp * k}, c);
        }
        return r;
    }

    // Copy with the smallest t denominator that represents every exponent.
    graded_series normalized() const
    {
        long g = m_tden;
        for (const auto &[key, c] : m_terms) {
            g = std::gcd(g, key.t_exp);
        }
        if (g <= 1) {
            return *this;
        }
        graded_series r(m_group, m_trunc, m_tden / g);
        for (const auto &[key, c] : m_terms) {
            r.m_terms.emplace_hint(r.m_terms.end(), term_key{key.mono, key.t_exp / g}, c);
        }
        return r;
    }

    graded_series truncated(int N) const
    {
        graded_series r(m_group, std::min(N, m_trunc), m_tden);
        for (const auto &[key, c] : m_terms) {
            if (key.mono.degree() <= r.m_trunc) {
                r.m_terms.emplace_hint(r.m_terms.end(), key, c);
            }
        }
        return r;
    }

    // Degree-n homogeneous component (truncation degree kept).
    graded_series homogeneous(int n) const
    {
        graded_series r(m_group, m_trunc, m_tden);
        for (const auto &[key, c] : m_terms) {
            if (key.mono.degree() == n) {
                r.m_terms.emplace_hint(r.m_terms.end(), key, c);
            }
        }
        return r;
    }

    int min_degree() const
    {
        return m_terms.empty() ? m_trunc + 1 : m_terms.begin()->first.mono.degree();
    }

    bool is_homogeneous(int n) const
    {
        return std::all_of(m_terms.begin(), m_terms.end(),
                           [n](const auto &kv) { return kv.first.mono.degree() == n; });
    }

    // Multiplies by the scalar t^q.
    graded_series times_t(const rational &q) const
    {
        const long den = std::lcm(m_tden, q.get_den().get_si());
        graded_series r = with_t_den(den);
        const rational scaled = q * den;
        const long shift = scaled.get_num().get_si();
        graded_series out(m_group, m_trunc, den);
        for (const auto &[key, c] : r.m_terms) {
            out.m_terms.emplace_hint(out.m_terms.end(), term_key{key.mono, key.t_exp + shift}, c);
        }
        return out;
    }

    graded_series operator-() const
    {
        graded_series r = *this;
        for (auto &kv : r.m_terms) {
            kv.second = -kv.second;
        }
        return r;
    }

    graded_series &operator*=(const rational &c)
    {
        if (c == 0) {
            m_terms.clear();
            return *this;
        }
        for (auto &kv : m_terms) {
            kv.second *= c;
        }
        return *this;
    }

    friend graded_series operator*(graded_series a, const rational &c)
    {
        a *= c;
        return a;
    }
    friend graded_series operator*(const rational &c, graded_series a)
    {
        a *= c;
        return a;
    }

    friend bool same_group(const graded_series &a, const graded_series &b)
    {
        return a.m_group == b.m_group || *a.m_group == *b.m_group;
    }

    friend graded_series operator+(const graded_series &a, const graded_series &b)
    {
        return combine(a, b, 1);
    }
    friend graded_series operator-(const graded_series &a, const graded_series &b)
    {
        return combine(a, b, -1);
    }
    friend graded_series operator+(const graded_series &a, const rational &c)
    {
        return a + constant(a.m_group, a.m_trunc, c);
    }
    friend graded_series operator-(const graded_series &a, const rational &c)
    {
        return a - constant(a.m_group, a.m_trunc, c);
    }
    friend graded_series operator+(const rational &c, const graded_series &a)
    {
        return constant(a.m_group, a.m_trunc, c) + a;
    }
    friend graded_series operator-(const rational &c, const graded_series &a)
    {
        return constant(a.m_group, a.m_trunc, c) - a;
    }

    friend graded_series operator*(const graded_series &a, const graded_series &b)
    {
        check_compatible(a, b);
        const long den = std::lcm(a.m_tden, b.m_tden);
        const int N = std::min(a.m_trunc, b.m_trunc);
        const graded_series ra = a.m_tden == den ? a : a.with_t_den(den);
        const graded_series rb = b.m_tden == den ? b : b.with_t_den(den);
        graded_series r(a.m_group, N, den);
        for (const auto &[ka, ca] : ra.m_terms) {
            const int room = N - ka.mono.degree();
            if (room < 0) {
                break;
            }
            for (const auto &[kb, cb] : rb.m_terms) {
                if (kb.mono.degree() > room) {
                    break;
                }
                r.add_term(ka.mono * kb.mono, ka.t_exp + kb.t_exp, ca * cb);
            }
        }
        return r;
    }

    graded_series &operator+=(const graded_series &b)
    {
        *this = *this + b;
        return *this;
    }
    graded_series &operator-=(const graded_series &b)
    {
        *this = *this - b;
        return *this;
    }
    graded_series &operator*=(const graded_series &b)
    {
        *this = *this * b;
        return *this;
    }

    // Exact equality of the represented elements (t denominators normalized,
    // truncation degrees must agree).
    friend bool operator==(const graded_series &a, const graded_series &b)
    {
        if (!same_group(a, b) || a.m_trunc != b.m_trunc) {
            return false;
        }
        const graded_series na = a.normalized();
        const graded_series nb = b.normalized();
        return na.m_tden == nb.m_tden && na.m_terms == nb.m_terms;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[key, c] : m_terms) {
            os << (first ? "" : " + ") << "(" << c.get_str() << ")";
            if (!key.mono.is_one()) {
                os << "*" << key.mono.str();
            }
            if (key.t_exp != 0) {
                rational q(key.t_exp, m_tden);
                q.canonicalize();
                os << "*t^" << q.get_str();
            }
            first = false;
        }
        if (first) {
            os << "0";
        }
        os << " + O(deg " << m_trunc + 1 << ")";
        return os.str();
    }

private:
    static void check_compatible(const graded_series &a, const graded_series &b)
    {
        if (!same_group(a, b)) {
            throw incompatible_series("series over different groups");
        }
    }

    static graded_series combine(const graded_series &a, const graded_series &b, int sign)
    {
        check_compatible(a, b);
        const long den = std::lcm(a.m_tden, b.m_tden);
        const int N = std::min(a.m_trunc, b.m_trunc);
        graded_series r = a.with_t_den(den).truncated(N);
        const graded_series rb = b.m_tden == den ? b : b.with_t_den(den);
        for (const auto &[kb, cb] : rb.m_terms) {
            r.add_term(kb.mono, kb.t_exp, sign > 0 ? cb : rational(-cb));
        }
        return r;
    }

    group_ptr m_group;
    int m_trunc;
    long m_tden;
    term_map m_terms;
};

inline std::ostream &operator<<(std::ostream &os, const graded_series &s)
{
    return os << s.str();
}

// ---------------------------------------------------------------------------
// Ring operations on graded series.

inline graded_series add(const graded_series &f, const graded_series &g)
{
    return f + g;
}

inline graded_series mul(const graded_series &f, const graded_series &g)
{
    return f * g;
}

// Multiplicative inverse, solved degree by degree. The degree-0 part must be a
// single nonzero rational with t-exponent 0.
inline graded_series invert(const graded_series &f)
{
    const int N = f.trunc_degree();
    rational c0 = 0;
    for (const auto &[key, c] : f.terms()) {
        if (key.mono.degree() != 0) {
            break;
        }
        if (key.t_exp != 0) {
            throw not_invertible("constant part involves t; not invertible as a power series");
        }
        c0 = c;
    }
    if (c0 == 0) {
        throw not_invertible("zero constant term");
    }
    std::vector<graded_series> fparts, gparts;
    for (int k = 0; k <= N; ++k) {
        fparts.push_back(f.homogeneous(k));
    }
    const rational inv0 = 1 / c0;
    gparts.push_back(graded_series::constant(f.group(), N, inv0).with_t_den(f.t_den()));
    for (int n = 1; n <= N; ++n) {
        graded_series acc(f.group(), N, f.t_den());
        for (int k = 1; k <= n; ++k) {
            if (!fparts[static_cast<std::size_t>(k)].is_zero()) {
                acc += fparts[static_cast<std::size_t>(k)] * gparts[static_cast<std::size_t>(n - k)];
            }
        }
        gparts.push_back(acc * rational(-inv0));
    }
    graded_series g(f.group(), N, f.t_den());
    for (const auto &p : gparts) {
        g += p;
    }
    return g;
}

// Powers f^0..f^N truncated at N; f must have no degree-0 terms.
inline std::vector<graded_series> nilpotent_powers(const graded_series &f, int kmax)
{
    if (f.min_degree() < 1) {
        throw composition_error("argument has a degree-0 term");
    }
    std::vector<graded_series> pw;
    pw.push_back(graded_series::constant(f.group(), f.trunc_degree(), 1));
    for (int k = 1; k <= kmax; ++k) {
        pw.push_back(pw.back() * f);
    }
    return pw;
}

// sum_k coeffs[k] f^k for f with no degree-0 terms.
inline graded_series apply_power_series(const std::vector<rational> &coeffs, const graded_series &f)
{
    const int N = f.trunc_degree();
    const int kmax = std::min<int>(N, static_cast<int>(coeffs.size()) - 1);
    const auto pw = nilpotent_powers(f, kmax);
    graded_series r(f.group(), N, f.t_den());
    for (int k = 0; k <= kmax; ++k) {
        if (coeffs[static_cast<std::size_t>(k)] != 0) {
            r += pw[static_cast<std::size_t>(k)] * coeffs[static_cast<std::size_t>(k)];
        }
    }
    return r;
}

inline graded_series exp_series(const graded_series &f)
{
    std::vector<rational> c;
    for (int k = 0; k <= f.trunc_degree(); ++k) {
        c.emplace_back(rational(1) / rational(factorial(static_cast<unsigned long>(k))));
    }
    return apply_power_series(c, f);
}

inline graded_series log1p_series(const graded_series &f)
{
    std::vector<rational> c{0};
    for (int k = 1; k <= f.trunc_degree(); ++k) {
        c.push_back(make_rational(k % 2 ? 1 : -1, k));
    }
    return apply_power_series(c, f);
}

// (1 + f)^alpha.
inline graded_series pow1p_series(const graded_series &f, const rational &alpha)
{
    std::vector<rational> c;
    for (int k = 0; k <= f.trunc_degree(); ++k) {
        c.push_back(binomial(alpha, static_cast<unsigned long>(k)));
    }
    return apply_power_series(c, f);
}

// sum_c |c|/|G| p_1(c): the characteristic of the trivial G-module.
inline graded_series trivial_degree_one(const group_ptr &G, int N)
{
    graded_series s(G, N);
    for (const auto &cc : G->classes()) {
        s.add_term(monomial::var(1, cc.class_id), 0, make_rational(cc.size(), G->order()));
    }
    return s;
}

// Exp_G = exp(sum_{i,c} |c| p_i(c) / (|G| i)), as a product of one-variable
// exponentials.
inline graded_series exp_G(const group_ptr &G, int N)
{
    if (N < 0) {
        throw invalid_argument("exp_G: degree must be >= 0");
    }
    graded_series r = graded_series::constant(G, N, 1);
    for (int i = 1; i <= N; ++i) {
        for (const auto &cc : G->classes()) {
            const rational a = make_rational(cc.size(), static_cast<long>(G->order()) * i);
            graded_series factor(G, N);
            rational coeff = 1;
            for (int k = 0; k * i <= N; ++k) {
                factor.add_term(monomial::var(i, cc.class_id, k), 0, coeff);
                coeff *= a;
                coeff /= (k + 1);
            }
            r *= factor;
        }
    }
    return r;
}

inline graded_series exp_trivial(int N)
{
    return exp_G(trivial_group(), N);
}

// L = sum_d mu(d)/d log(1 + p_d) over the trivial group.
inline graded_series L_series(int N)
{
    if (N < 0) {
        throw invalid_argument("L_series: degree must be >= 0");
    }
    graded_series r(trivial_group(), N);
    for (int d = 1; d <= N; ++d) {
        const int mu = number_mobius(d);
        if (mu == 0) {
            continue;
        }
        for (int k = 1; k * d <= N; ++k) {
            r.add_term(monomial::var(d, 0, k), 0, make_rational(mu * (k % 2 ? 1 : -1), static_cast<long>(d) * k));
        }
    }
    return r;
}

enum class residue_mode { equal, not_equal, at_least };

// Keeps the terms whose monomial degree satisfies the residue predicate.
inline graded_series mod_filter(const graded_series &f, int residue, int d, residue_mode mode)
{
    if (mode != residue_mode::at_least && d < 1) {
        throw invalid_argument("mod_filter: modulus must be >= 1");
    }
    auto keep = [&](int deg) {
        switch (mode) {
            case residue_mode::at_least:
                return deg >= residue;
            case residue_mode::equal:
                return ((deg - residue) % d + d) % d == 0;
            case residue_mode::not_equal:
                return ((deg - residue) % d + d) % d != 0;
        }
        return false;
    };
    graded_series r(f.group(), f.trunc_degree(), f.t_den());
    for (const auto &[key, c] : f.terms()) {
        if (keep(key.mono.degree())) {
            r.add_term(key.mono, key.t_exp, c);
        }
    }
    return r;
}

// Formal partial derivative with respect to p_i(c).
inline graded_series derivative(const graded_series &f, int i, int class_id)
{
    const series_var v{i, class_id};
    graded_series r(f.group(), std::max(0, f.trunc_degree() - i), f.t_den());
    for (const auto &[key, c] : f.terms()) {
        const int e = key.mono.exponent_of(v);
        if (e == 0) {
            continue;
        }
        std::vector<monomial_factor> fs = key.mono.factors();
        for (auto &fa : fs) {
            if (fa.var == v) {
                --fa.exp;
            }
        }
        r.add_term(monomial::from_factors(std::move(fs)), key.t_exp, c * e);
    }
    return r;
}

// Substitutes t^{1/d_t} = root, giving a t-free series.
inline graded_series specialize_t(const graded_series &f, const rational &root)
{
    graded_series r(f.group(), f.trunc_degree());
    for (const auto &[key, c] : f.terms()) {
        r.add_term(key.mono, 0, c * rpow(root, key.t_exp));
    }
    return r;
}

// Rules for t_substitute: right-composition with t^q p_1 scales every
// degree-n term by t^{nq}; a prefactor multiplies the whole series by t^q.
struct t_rule {
    enum class kind { scale_by_degree, prefactor };
    kind type = kind::scale_by_degree;
    rational exponent = 1;
};

inline graded_series t_substitute(const graded_series &f, const t_rule &rule, std::optional<long> result_den = {})
{
    const long den = result_den ? *result_den : std::lcm(f.t_den(), rule.exponent.get_den().get_si());
    if (den % f.t_den() != 0) {
        throw grading_error("result t denominator " + std::to_string(den) + " does not refine "
                            + std::to_string(f.t_den()));
    }
    const rational q = rule.exponent * den;
    if (q.get_den() != 1) {
        throw grading_error("t exponent " + to_string(rule.exponent) + " not representable with t denominator "
                            + std::to_string(den));
    }
    const long step = q.get_num().get_si();
    const graded_series src = f.with_t_den(den);
    graded_series r(f.group(), f.trunc_degree(), den);
    for (const auto &[key, c] : src.terms()) {
        const long shift = rule.type == t_rule::kind::scale_by_degree ? step * key.mono.degree() : step;
        r.add_term(key.mono, key.t_exp + shift, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Univariate series in x with coefficients in Q[t^{+-1/d_t}].

class uni_series
{
public:
    using key = std::pair<int, long>; // (x-degree, scaled t exponent)

    explicit uni_series(int trunc_degree, long t_den = 1) : m_trunc(trunc_degree), m_tden(t_den)
    {
        if (m_trunc < 0 || m_tden < 1) {
            throw invalid_argument("uni_series: invalid truncation or t denominator");
        }
    }

    static uni_series constant(int N, const rational &c)
    {
        uni_series s(N);
        s.add(0, 0, c);
        return s;
    }
    static uni_series x(int N)
    {
        uni_series s(N);
        s.add(1, 0, 1);
        return s;
    }
    static uni_series from_coeffs(int N, const std::vector<rational> &cs)
    {
        uni_series s(N);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            s.add(static_cast<int>(k), 0, cs[k]);
        }
        return s;
    }

    int trunc_degree() const
    {
        return m_trunc;
    }
    long t_den() const
    {
        return m_tden;
    }
    const std::map<key, rational> &coeffs() const
    {
        return m_coeffs;
    }

    void add(int deg, long t_scaled, const rational &c)
    {
        if (deg < 0 || deg > m_trunc || c == 0) {
            return;
        }
        auto [it, inserted] = m_coeffs.try_emplace(key{deg, t_scaled}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_coeffs.erase(it);
            }
        }
    }

    // Coefficient of x^deg t^q.
    rational coeff(int deg, const rational &q = 0) const
    {
        const rational s = q * m_tden;
        if (s.get_den() != 1) {
            return 0;
        }
        auto it = m_coeffs.find(key{deg, s.get_num().get_si()});
        return it == m_coeffs.end() ? rational(0) : it->second;
    }

    bool has_t() const
    {
        return std::any_of(m_coeffs.begin(), m_coeffs.end(), [](const auto &kv) { return kv.first.second != 0; });
    }

    uni_series with_t_den(long den) const
    {
        if (den % m_tden != 0) {
            throw grading_error("cannot refine t denominator");
        }
        uni_series r(m_trunc, den);
        for (const auto &[k, c] : m_coeffs) {
            r.add(k.first, k.second * (den / m_tden), c);
        }
        return r;
    }

    uni_series normalized() const
    {
        long g = m_tden;
        for (const auto &kv : m_coeffs) {
            g = std::gcd(g, kv.first.second);
        }
        if (g <= 1) {
            return *this;
        }
        uni_series r(m_trunc, m_tden / g);
        for (const auto &[k, c] : m_coeffs) {
            r.add(k.first, k.second / g, c);
        }
        return r;
    }

    uni_series truncated(int N) const
    {
        uni_series r(std::min(N, m_trunc), m_tden);
        for (const auto &[k, c] : m_coeffs) {
            r.add(k.first, k.second, c);
        }
        return r;
    }

    friend uni_series operator+(const uni_series &a, const uni_series &b)
    {
        const long den = std::lcm(a.m_tden, b.m_tden);
        uni_series r = a.with_t_den(den).truncated(std::min(a.m_trunc, b.m_trunc));
        for (const auto &[k, c] : b.with_t_den(den).m_coeffs) {
            r.add(k.first, k.second, c);
        }
        return r;
    }
    friend uni_series operator-(const uni_series &a)
    {
        uni_series r = a;
        for (auto &kv : r.m_coeffs) {
            kv.second = -kv.second;
        }
        return r;
    }
    friend uni_series operator-(const uni_series &a, const uni_series &b)
    {
        return a + (-b);
    }
    friend uni_series operator*(const uni_series &a, const uni_series &b)
    {
        const long den = std::lcm(a.m_tden, b.m_tden);
        const uni_series ra = a.with_t_den(den), rb = b.with_t_den(den);
        uni_series r(std::min(a.m_trunc, b.m_trunc), den);
        for (const auto &[ka, ca] : ra.m_coeffs) {
            for (const auto &[kb, cb] : rb.m_coeffs) {
                if (ka.first + kb.first > r.m_trunc) {
                    break;
                }
                r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return r;
    }
    friend uni_series operator*(uni_series a, const rational &c)
    {
        for (auto &kv : a.m_coeffs) {
            kv.second *= c;
        }
        if (c == 0) {
            a.m_coeffs.clear();
        }
        return a;
    }
    friend uni_series operator*(const rational &c, uni_series a)
    {
        return std::move(a) * c;
    }
    friend uni_series operator+(const uni_series &a, const rational &c)
    {
        return a + constant(a.m_trunc, c);
    }
    friend uni_series operator+(const rational &c, const uni_series &a)
    {
        return constant(a.m_trunc, c) + a;
    }
    friend uni_series operator-(const rational &c, const uni_series &a)
    {
        return constant(a.m_trunc, c) - a;
    }
    friend uni_series operator-(const uni_series &a, const rational &c)
    {
        return a - constant(a.m_trunc, c);
    }

    // Multiply by the scalar t^q.
    uni_series times_t(const rational &q) const
    {
        const long den = std::lcm(m_tden, q.get_den().get_si());
        const long shift = rational(q * den).get_num().get_si();
        uni_series r(m_trunc, den);
        for (const auto &[k, c] : with_t_den(den).m_coeffs) {
            r.add(k.first, k.second + shift, c);
        }
        return r;
    }

    // x -> t^q x.
    uni_series scale_x(const rational &q) const
    {
        const long den = std::lcm(m_tden, q.get_den().get_si());
        const long step = rational(q * den).get_num().get_si();
        uni_series r(m_trunc, den);
        for (const auto &[k, c] : with_t_den(den).m_coeffs) {
            r.add(k.first, k.second + step * k.first, c);
        }
        return r;
    }

    // Substitutes t^{1/d_t} = root.
    uni_series at_t(const rational &root) const
    {
        uni_series r(m_trunc);
        for (const auto &[k, c] : m_coeffs) {
            r.add(k.first, 0, c * rpow(root, k.second));
        }
        return r;
    }

    friend bool operator==(const uni_series &a, const uni_series &b)
    {
        if (a.m_trunc != b.m_trunc) {
            return false;
        }
        const uni_series na = a.normalized(), nb = b.normalized();
        return na.m_tden == nb.m_tden && na.m_coeffs == nb.m_coeffs;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[k, c] : m_coeffs) {
            os << (first ? "" : " + ") << "(" << c.get_str() << ")";
            if (k.first) {
                os << "*x^" << k.first;
            }
            if (k.second) {
                rational q(k.second, m_tden);
                q.canonicalize();
                os << "*t^" << q.get_str();
            }
            first = false;
        }
        if (first) {
            os << "0";
        }
        os << " + O(x^" << m_trunc + 1 << ")";
        return os.str();
    }

private:
    int m_trunc;
    long m_tden;
    std::map<key, rational> m_coeffs;
};

inline std::ostream &operator<<(std::ostream &os, const uni_series &s)
{
    return os << s.str();
}

inline uni_series uni_invert(const uni_series &f)
{
    const int N = f.trunc_degree();
    rational c0 = 0;
    for (const auto &[k, c] : f.coeffs()) {
        if (k.first != 0) {
            break;
        }
        if (k.second != 0) {
            throw not_invertible("constant term involves t");
        }
        c0 = c;
    }
    if (c0 == 0) {
        throw not_invertible("zero constant term");
    }
    // g = c0^{-1} sum_k (-h)^k with h = f/c0 - 1.
    const uni_series h = f * rational(1 / c0) - rational(1);
    uni_series acc = uni_series::constant(N, 1), pw = uni_series::constant(N, 1);
    for (int k = 1; k <= N; ++k) {
        pw = pw * (-h);
        acc = acc + pw;
    }
    return acc * rational(1 / c0);
}

// f(g(x)); g must have zero constant term.
inline uni_series uni_compose(const uni_series &f, const uni_series &g)
{
    for (const auto &[k, c] : g.coeffs()) {
        if (k.first == 0) {
            throw composition_error("inner series has a nonzero constant term");
        }
    }
    const int N = std::min(f.trunc_degree(), g.trunc_degree());
    const long den = std::lcm(f.t_den(), g.t_den());
    uni_series result(N, den);
    uni_series pw = uni_series::constant(N, 1);
    const uni_series gg = g.truncated(N);
    for (int k = 0; k <= N; ++k) {
        // coefficient of x^k in f, as a polynomial in t
        uni_series fk(N, f.t_den());
        for (const auto &[key, c] : f.coeffs()) {
            if (key.first == k) {
                fk.add(0, key.second, c);
            }
        }
        result = result + fk * pw;
        pw = pw * gg;
    }
    return result;
}

inline uni_series uni_mod_filter(const uni_series &f, int residue, int d, residue_mode mode)
{
    uni_series r(f.trunc_degree(), f.t_den());
    for (const auto &[k, c] : f.coeffs()) {
        const int deg = k.first;
        bool keep = false;
        switch (mode) {
            case residue_mode::at_least:
                keep = deg >= residue;
                break;
            case residue_mode::equal:
                keep = ((deg - residue) % d + d) % d == 0;
                break;
            case residue_mode::not_equal:
                keep = ((deg - residue) % d + d) % d != 0;
                break;
        }
        if (keep) {
            r.add(deg, k.second, c);
        }
    }
    return r;
}

enum class analytic_fn { exp, log1p, sinh, cosh, tanh, sech, arcsinh, pow1p };

inline analytic_fn parse_analytic(const std::string &name)
{
    static const std::map<std::string, analytic_fn> names{
        {"exp", analytic_fn::exp},   {"log1p", analytic_fn::log1p}, {"sinh", analytic_fn::sinh},
        {"cosh", analytic_fn::cosh}, {"tanh", analytic_fn::tanh},   {"sech", analytic_fn::sech},
        {"arcsinh", analytic_fn::arcsinh}, {"pow1p", analytic_fn::pow1p}};
    auto it = names.find(name);
    if (it == names.end()) {
        throw invalid_argument("unknown analytic function '" + name + "'");
    }
    return it->second;
}

// Maclaurin series with exact coefficients; alpha is used by pow1p only.
inline uni_series uni_analytic(analytic_fn fn, int N, const rational &alpha = 0)
{
    if (N < 0) {
        throw invalid_argument("uni_analytic: degree must be >= 0");
    }
    uni_series s(N);
    auto inv_fact = [](int k) -> rational { return rational(1) / rational(factorial(static_cast<unsigned long>(k))); };
    switch (fn) {
        case analytic_fn::exp:
            for (int k = 0; k <= N; ++k) {
                s.add(k, 0, inv_fact(k));
            }
            return s;
        case analytic_fn::log1p:
            for (int k = 1; k <= N; ++k) {
                s.add(k, 0, make_rational(k % 2 ? 1 : -1, k));
            }
            return s;
        case analytic_fn::sinh:
            for (int k = 1; k <= N; k += 2) {
                s.add(k, 0, inv_fact(k));
            }
            return s;
        case analytic_fn::cosh:
            for (int k = 0; k <= N; k += 2) {
                s.add(k, 0, inv_fact(k));
            }
            return s;
        case analytic_fn::tanh:
            return uni_analytic(analytic_fn::sinh, N) * uni_invert(uni_analytic(analytic_fn::cosh, N));
        case analytic_fn::sech:
            return uni_invert(uni_analytic(analytic_fn::cosh, N));
        case analytic_fn::arcsinh:
            // sum_k (-1)^k (2k)! / (4^k (k!)^2 (2k+1)) x^{2k+1}
            for (int k = 0; 2 * k + 1 <= N; ++k) {
                const auto uk = static_cast<unsigned long>(k);
                rational c(factorial(2 * uk), ipow(4, uk) * factorial(uk) * factorial(uk) * (2 * k + 1));
                c.canonicalize();
                s.add(2 * k + 1, 0, k % 2 ? rational(-c) : c);
            }
            return s;
        case analytic_fn::pow1p:
            for (int k = 0; k <= N; ++k) {
                s.add(k, 0, binomial(alpha, static_cast<unsigned long>(k)));
            }
            return s;
    }
    throw invalid_argument("uni_analytic: unhandled function");
}

inline uni_series uni_analytic(const std::string &name, int N, const rational &alpha = 0)
{
    return uni_analytic(parse_analytic(name), N, alpha);
}

// Sets p_1(identity class) = x and every other p_i(c) = 0.
inline uni_series natural_spec(const graded_series &f)
{
    const int idc = f.group()->identity_class();
    uni_series r(f.trunc_degree(), f.t_den());
    for (const auto &[key, c] : f.terms()) {
        const auto &fs = key.mono.factors();
        if (fs.empty()) {
            r.add(0, key.t_exp, c);
        } else if (fs.size() == 1 && fs[0].var == series_var{1, idc}) {
            r.add(fs[0].exp, key.t_exp, c);
        }
    }
    return r;
}

} // namespace dowling

#endif
