#ifndef DOWLING_THEOREMS_HPP
#define DOWLING_THEOREMS_HPP

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "family.hpp"
#include "plethysm.hpp"
#include "poset.hpp"
#include "series.hpp"
#include "wreath.hpp"

namespace dowling
{

enum class theorem_id {
    stanley,
    hanlon,
    second,
    third,
    one_mod_d,
    zero_mod_d,
    fibre_corollary,
    qsim_corollary,
    whitney_hanlon,
    whitney_R,
    whitney_Qsim,
    whitney_1modd,
    whitney_0modd,
    bn_whitney,
    dn_series,
    product_form_F
};

inline const std::vector<std::pair<theorem_id, std::string>> &theorem_names()
{
    static const std::vector<std::pair<theorem_id, std::string>> names = {
        {theorem_id::stanley, "stanley"},
        {theorem_id::hanlon, "hanlon"},
        {theorem_id::second, "second"},
        {theorem_id::third, "third"},
        {theorem_id::one_mod_d, "one_mod_d"},
        {theorem_id::zero_mod_d, "zero_mod_d"},
        {theorem_id::fibre_corollary, "fibre_corollary"},
        {theorem_id::qsim_corollary, "qsim_corollary"},
        {theorem_id::whitney_hanlon, "whitney_hanlon"},
        {theorem_id::whitney_R, "whitney_R"},
        {theorem_id::whitney_Qsim, "whitney_Qsim"},
        {theorem_id::whitney_1modd, "whitney_1modd"},
        {theorem_id::whitney_0modd, "whitney_0modd"},
        {theorem_id::bn_whitney, "bn_whitney"},
        {theorem_id::dn_series, "dn_series"},
        {theorem_id::product_form_F, "product_form_F"}};
    return names;
}

inline std::string theorem_name(theorem_id id)
{
    for (const auto &[k, s] : theorem_names()) {
        if (k == id) {
            return s;
        }
    }
    return "?";
}

inline theorem_id parse_theorem(const std::string &s)
{
    for (const auto &[k, name] : theorem_names()) {
        if (name == s) {
            return k;
        }
    }
    throw usage_error("unknown theorem id '" + s + "'");
}

inline bool needs_modulus(theorem_id id)
{
    return id == theorem_id::one_mod_d || id == theorem_id::zero_mod_d || id == theorem_id::whitney_1modd
           || id == theorem_id::whitney_0modd;
}

inline bool is_graded(theorem_id id)
{
    switch (id) {
        case theorem_id::whitney_hanlon:
        case theorem_id::whitney_R:
        case theorem_id::whitney_Qsim:
        case theorem_id::whitney_1modd:
        case theorem_id::whitney_0modd:
        case theorem_id::bn_whitney:
        case theorem_id::dn_series:
            return true;
        default:
            return false;
    }
}

inline void check_theorem_parameters(theorem_id id, const group_ptr &G, int d)
{
    if (needs_modulus(id) && d < 2) {
        throw usage_error(theorem_name(id) + " needs --d >= 2");
    }
    if ((id == theorem_id::bn_whitney || id == theorem_id::dn_series) && G->order() != 2) {
        throw usage_error(theorem_name(id) + " is defined over the group of order 2 only");
    }
    if ((id == theorem_id::third || id == theorem_id::qsim_corollary || id == theorem_id::whitney_Qsim)
        && G->order() < 2) {
        throw usage_error(theorem_name(id) + " needs a nontrivial group");
    }
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace detail
{

// sum_c |c|/|G| p_1(c), optionally times t
inline graded_series h1(const group_ptr &G, int N)
{
    return trivial_degree_one(G, N);
}

inline graded_series t_p1(int N, const rational &q)
{
    return p1_series(N).times_t(q);
}

inline graded_series t_const(const group_ptr &G, int N, const rational &q)
{
    return graded_series::t_power(G, N, q);
}

// Exp_G o (t^{-1} - 1) L o t p_1
inline graded_series whitney_q_rhs(const group_ptr &G, int N)
{
    const auto Lt = left_plethysm(L_series(N), t_p1(N, 1));
    return right_plethysm(exp_G(G, N), Lt.times_t(-1) - Lt);
}

// (Sech_G o Arcsinh o t^{1/2} p_1)(Exp_G o t^{-1/2} Arcsinh o t^{1/2} p_1)
inline graded_series bn_rhs(const group_ptr &G, int N)
{
    const auto As = left_plethysm(arcsinh_series(N), t_p1(N, make_rational(1, 2)));
    return right_plethysm(sech_G(G, N), As) * right_plethysm(exp_G(G, N), As.times_t(make_rational(-1, 2)));
}

} // namespace detail

inline graded_series closed_form(theorem_id id, const group_ptr &G, int N, int d = 0)
{
    check_theorem_parameters(id, G, d);
    const auto E = [&] { return exp_G(G, N); };
    const auto EL = [&] { return right_plethysm(exp_G(G, N), L_series(N)); };
    switch (id) {
        case theorem_id::stanley:
            return L_series(N);
        case theorem_id::hanlon:
            return invert(EL());
        case theorem_id::second:
            return 1 - EL();
        case theorem_id::third:
            return (1 + detail::h1(G, N)) * invert(EL());
        case theorem_id::one_mod_d: {
            const auto e = E();
            const auto inner = (1 - mod_filter(e, 0, d, residue_mode::not_equal))
                               * invert(mod_filter(e, 0, d, residue_mode::equal));
            return right_plethysm(inner, exp_1mod_inverse(d, N));
        }
        case theorem_id::zero_mod_d: {
            const auto e0 = mod_filter(exp_trivial(N), 0, d, residue_mode::equal) - 1;
            return 1 - E() * invert(right_plethysm(E(), left_plethysm(L_series(N), e0)));
        }
        case theorem_id::fibre_corollary:
            // inverse of 1 - (sum of signed R characters)
            return invert(1 - closed_form(theorem_id::second, G, N));
        case theorem_id::qsim_corollary:
            return invert(1 + detail::h1(G, N)) * closed_form(theorem_id::third, G, N);
        case theorem_id::whitney_hanlon:
            return detail::whitney_q_rhs(G, N);
        case theorem_id::whitney_R: {
            const auto Lt = left_plethysm(L_series(N), detail::t_p1(N, 1));
            return right_plethysm(E(), Lt.times_t(-1)) - right_plethysm(E(), Lt);
        }
        case theorem_id::whitney_Qsim:
            return (1 + detail::h1(G, N).times_t(1)) * detail::whitney_q_rhs(G, N);
        case theorem_id::whitney_1modd: {
            const auto e = E();
            const auto e0 = mod_filter(e, 0, d, residue_mode::equal);
            const auto At = left_plethysm(exp_1mod_inverse(d, N), detail::t_p1(N, make_rational(1, d)));
            graded_series sum(G, N);
            const auto e0inv = invert(e0);
            for (int j = 1; j < d; ++j) {
                sum = sum
                      + right_plethysm(mod_filter(e, j, d, residue_mode::equal) * e0inv, At)
                            .times_t(make_rational(d - j, d));
            }
            return invert(right_plethysm(e0, At)) * right_plethysm(e, At.times_t(make_rational(-1, d))) - sum;
        }
        case theorem_id::whitney_0modd: {
            const auto e = E();
            const auto tp = detail::t_p1(N, make_rational(1, d));
            graded_series sum(G, N);
            for (int j = 0; j < d; ++j) {
                sum = sum + right_plethysm(mod_filter(e, j, d, residue_mode::equal), tp).times_t(make_rational(d - j, d));
            }
            const auto e0 = mod_filter(exp_trivial(N), 0, d, residue_mode::equal) - 1;
            const auto inner = left_plethysm(L_series(N), left_plethysm(e0, tp));
            const auto tail = right_plethysm(e, inner.times_t(-1) - inner);
            return e + detail::t_const(G, N, 1) - sum * tail;
        }
        case theorem_id::bn_whitney:
            return detail::bn_rhs(G, N);
        case theorem_id::dn_series: {
            const auto h2 = exp_G(G, N).homogeneous(2);
            return (1 + h2.times_t(1)) * detail::bn_rhs(G, N);
        }
        case theorem_id::product_form_F:
            return product_form_inverse(G, N);
    }
    throw usage_error("unhandled theorem id");
}

// Constant term of the left-hand side.
inline rational lhs_constant(theorem_id id)
{
    switch (id) {
        case theorem_id::stanley:
        case theorem_id::second:
        case theorem_id::zero_mod_d:
        case theorem_id::whitney_R:
            return 0;
        default:
            return 1;
    }
}

// ---------------------------------------------------------------------------
// Univariate references for the natural specialization.

namespace detail
{

// exp(alpha * log(1 + x)) with alpha possibly involving t
inline uni_series uni_pow1p_t(const uni_series &inner, const uni_series &alpha)
{
    return uni_compose(uni_analytic(analytic_fn::exp, inner.trunc_degree()),
                       alpha * uni_compose(uni_analytic(analytic_fn::log1p, inner.trunc_degree()), inner));
}

inline uni_series uni_fn(analytic_fn fn, const uni_series &inner, const rational &alpha = 0)
{
    return uni_compose(uni_analytic(fn, inner.trunc_degree(), alpha), inner);
}

} // namespace detail

// Univariate form of an identity after natural specialization, when one is
// known in closed form (only d = 2 for the modular families).
inline std::optional<uni_series> univariate_form(theorem_id id, int group_order, int N, int d = 0)
{
    const rational g = group_order;
    const rational ig = rational(1) / g;
    const uni_series x = uni_series::x(N);
    const uni_series one = uni_series::constant(N, 1);
    const uni_series tx = x.scale_x(1);
    const uni_series sx = x.scale_x(make_rational(1, 2)); // t^{1/2} x
    // (t^{-1} - 1) / |G|
    const uni_series tinv_minus = (one.times_t(-1) - one) * ig;
    using analytic_fn::arcsinh;
    using analytic_fn::cosh;
    using analytic_fn::exp;
    using analytic_fn::pow1p;
    using analytic_fn::sech;
    using analytic_fn::sinh;
    using analytic_fn::tanh;
    auto bn = [&] {
        const auto as = detail::uni_fn(arcsinh, sx);
        return detail::uni_fn(sech, as * make_rational(1, 2))
               * detail::uni_fn(exp, as.times_t(make_rational(-1, 2)) * make_rational(1, 2));
    };
    switch (id) {
        case theorem_id::stanley:
            return uni_analytic(analytic_fn::log1p, N);
        case theorem_id::hanlon:
        case theorem_id::product_form_F:
        case theorem_id::fibre_corollary:
        case theorem_id::qsim_corollary:
            return uni_analytic(pow1p, N, -ig);
        case theorem_id::second:
            return 1 - uni_analytic(pow1p, N, ig);
        case theorem_id::third:
            return (1 + x * ig) * uni_analytic(pow1p, N, -ig);
        case theorem_id::one_mod_d:
            if (d != 2) {
                return std::nullopt;
            }
            {
                const auto as = uni_analytic(arcsinh, N) * ig;
                return detail::uni_fn(sech, as) - detail::uni_fn(tanh, as);
            }
        case theorem_id::zero_mod_d:
            if (d != 2) {
                return std::nullopt;
            }
            return 1 - detail::uni_fn(pow1p, uni_analytic(tanh, N), ig);
        case theorem_id::whitney_hanlon:
            return detail::uni_pow1p_t(tx, tinv_minus);
        case theorem_id::whitney_R:
            return detail::uni_pow1p_t(tx, one.times_t(-1) * ig) - detail::uni_fn(pow1p, tx, ig);
        case theorem_id::whitney_Qsim:
            return (1 + tx * ig) * detail::uni_pow1p_t(tx, tinv_minus);
        case theorem_id::whitney_1modd:
            if (d != 2) {
                return std::nullopt;
            }
            {
                const auto as = detail::uni_fn(arcsinh, sx) * ig;
                return detail::uni_fn(sech, as) * detail::uni_fn(exp, as.times_t(make_rational(-1, 2)))
                       - detail::uni_fn(tanh, as).times_t(make_rational(1, 2));
            }
        case theorem_id::whitney_0modd:
            if (d != 2) {
                return std::nullopt;
            }
            {
                const auto sg = sx * ig;
                const auto front = detail::uni_fn(cosh, sg).times_t(1) + detail::uni_fn(sinh, sg).times_t(make_rational(1, 2));
                // cosh(t^{1/2} x)^{(t^{-1}-1)/|G|}
                const auto ch = detail::uni_pow1p_t(detail::uni_fn(cosh, sx) - rational(1), tinv_minus);
                return detail::uni_fn(exp, x * ig) + one.times_t(1) - front * ch;
            }
        case theorem_id::bn_whitney:
            return bn();
        case theorem_id::dn_series:
            return (1 + (x * x).times_t(1) * make_rational(1, 8)) * bn();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Brute-force sides.

struct brute_budget {
    long long max_elements = 50000;
};

inline void check_budget(long long estimate, const brute_budget &budget, const std::string &what)
{
    if (estimate > budget.max_elements) {
        throw budget_exceeded(what + " has " + std::to_string(estimate) + " elements, budget is "
                                  + std::to_string(budget.max_elements),
                              estimate);
    }
}

// sum_tau (-1)^l tr(tau, top homology) Psi(tau) / z_tau
inline graded_series signed_top_character(const acted_poset &A, int N)
{
    graded_series r(A.group, N);
    const int l = A.P.rank_and_purity().length;
    for (const auto &t : enumerate_class_types(*A.group, A.n)) {
        const long long tr = lefschetz_top_trace(A.P, A.act(representative(*A.group, t)));
        r.add_term(cycle_index(*A.group, t), 0,
                   rational(static_cast<long>(l % 2 ? -tr : tr)) / rational(centralizer_order(*A.group, t)));
    }
    return r;
}

// sum_tau (sum_{x in P^tau} mu(0^, x) t^{rk x}) Psi(tau) / z_tau
inline graded_series whitney_character(const acted_poset &A, int N)
{
    graded_series r(A.group, N);
    for (const auto &t : enumerate_class_types(*A.group, A.n)) {
        const auto poly = equivariant_char_poly(A.P, A.act(representative(*A.group, t)));
        const rational z(centralizer_order(*A.group, t));
        const monomial psi = cycle_index(*A.group, t);
        for (std::size_t e = 0; e < poly.size(); ++e) {
            r.add_term(psi, static_cast<long>(e), rational(static_cast<long>(poly[e])) / z);
        }
    }
    return r;
}

inline acted_poset family_poset(const family_spec &f, const group_ptr &G, int n, const brute_budget &budget,
                                bool drop_top = false)
{
    check_budget(estimate_family_size(f, *G, n), budget, f.name() + " n=" + std::to_string(n));
    return dowling_poset(f, G, n, drop_top).acted();
}

inline graded_series brute_force_side(theorem_id id, const group_ptr &G, int n, int d = 0,
                                      const brute_budget &budget = {});

namespace detail
{

inline long long bell_estimate(int n)
{
    std::vector<long long> row{1};
    for (int k = 1; k <= n; ++k) {
        std::vector<long long> next{row.back()};
        for (long long v : row) {
            next.push_back(next.back() + v);
        }
        row = std::move(next);
    }
    return row.front();
}

// Same terms, viewed as a series truncated at N >= f.trunc_degree().
inline graded_series raise_truncation(const graded_series &f, int N)
{
    graded_series r(f.group(), N, f.t_den());
    for (const auto &[key, c] : f.terms()) {
        r.add_term(key.mono, key.t_exp, c);
    }
    return r;
}

// LHS constant plus the brute-force sides of degrees from..n, truncated at n
inline graded_series accumulate(theorem_id id, const group_ptr &G, int n, int d, const brute_budget &budget,
                                int from)
{
    graded_series s = graded_series::constant(G, n, lhs_constant(id));
    for (int k = from; k <= n; ++k) {
        s = s + raise_truncation(brute_force_side(id, G, k, d, budget), n);
    }
    return s;
}

} // namespace detail

inline graded_series brute_force_side(theorem_id id, const group_ptr &G, int n, int d, const brute_budget &budget)
{
    check_theorem_parameters(id, G, d);
    if (n < 1) {
        throw usage_error("brute_force_side: degree must be >= 1");
    }
    const int N = n;
    switch (id) {
        case theorem_id::stanley: {
            check_budget(detail::bell_estimate(n), budget, "partition lattice");
            const auto A = partition_lattice(n);
            // (-1)^{n-1} tr = mu; the single-element lattice gives p_1
            graded_series r(trivial_group(), N);
            for (const auto &t : enumerate_class_types(*A.group, n)) {
                const auto g = A.act(representative(*A.group, t));
                const long long mu = mobius_bottom_top(fixed_subposet(A.P, g));
                r.add_term(cycle_index(*A.group, t), 0, rational(static_cast<long>(mu)) / rational(centralizer_order(*A.group, t)));
            }
            return r;
        }
        case theorem_id::hanlon:
            return signed_top_character(family_poset({family_kind::Q, 0}, G, n, budget), N);
        case theorem_id::second:
            return signed_top_character(family_poset({family_kind::R, 0}, G, n, budget), N);
        case theorem_id::third:
            if (n == 1) {
                return graded_series(G, N);
            }
            return signed_top_character(family_poset({family_kind::Qsim, 0}, G, n, budget), N);
        case theorem_id::one_mod_d:
            return signed_top_character(family_poset({family_kind::Q1mod, d}, G, n, budget), N);
        case theorem_id::zero_mod_d:
            return signed_top_character(family_poset({family_kind::Q0mod, d}, G, n, budget), N);
        case theorem_id::fibre_corollary: {
            // degree n of (1 - sum of signed R characters)^{-1}
            const auto s = detail::accumulate(theorem_id::second, G, n, d, budget, 1);
            return invert(1 - s).homogeneous(n);
        }
        case theorem_id::qsim_corollary: {
            const auto s = detail::accumulate(theorem_id::third, G, n, d, budget, 2);
            return (invert(1 + detail::h1(G, n)) * s).homogeneous(n);
        }
        case theorem_id::whitney_hanlon:
            return whitney_character(family_poset({family_kind::Q, 0}, G, n, budget), N);
        case theorem_id::whitney_R:
            return whitney_character(family_poset({family_kind::R, 0}, G, n, budget), N);
        case theorem_id::whitney_Qsim:
            if (n == 1) {
                // one-element convention: trivial character in degree 0
                return detail::h1(G, N);
            }
            return whitney_character(family_poset({family_kind::Qsim, 0}, G, n, budget), N);
        case theorem_id::whitney_1modd:
            return whitney_character(family_poset({family_kind::Q1mod, d}, G, n, budget), N);
        case theorem_id::whitney_0modd:
            return whitney_character(family_poset({family_kind::Q0mod, d}, G, n, budget), N);
        case theorem_id::bn_whitney:
            if (n == 1) {
                return detail::h1(G, N);
            }
            return whitney_character(family_poset({family_kind::Q1mod, 2}, G, n, budget, n % 2 == 1), N);
        case theorem_id::dn_series:
            throw usage_error("dn_series has no poset model; only the series side is available");
        case theorem_id::product_form_F:
            return brute_force_side(theorem_id::hanlon, G, n, d, budget);
    }
    throw usage_error("unhandled theorem id");
}

// ---------------------------------------------------------------------------
// Verification.

struct mismatch {
    int degree = 0;
    std::string monomial;
    std::string t_exponent;
    std::string brute;
    std::string closed;
};

struct degree_status {
    int degree = 0;
    bool equal = false;
    std::optional<mismatch> first_mismatch;
};

struct verification_report {
    theorem_id id{};
    std::string group;
    int n_max = 0;
    int d = 0;
    int N = 0;
    bool constant_ok = false;
    std::vector<degree_status> degrees;
    std::optional<bool> natural_ok; // unset when no univariate form is known
    double seconds = 0;

    bool ok() const
    {
        if (!constant_ok || (natural_ok && !*natural_ok)) {
            return false;
        }
        for (const auto &s : degrees) {
            if (!s.equal) {
                return false;
            }
        }
        return true;
    }
};

inline std::optional<mismatch> first_difference(const graded_series &a, const graded_series &b, int degree)
{
    if (a.trunc_degree() != b.trunc_degree()) {
        throw contract_error("first_difference: series have different truncations");
    }
    const graded_series diff = (a - b).normalized();
    if (diff.is_zero()) {
        return std::nullopt;
    }
    const auto &[key, c] = *diff.terms().begin();
    rational q(key.t_exp, diff.t_den());
    q.canonicalize();
    return mismatch{degree, key.mono.str(), q.get_str(), a.coefficient(key.mono, q).get_str(),
                    b.coefficient(key.mono, q).get_str()};
}

inline bool natural_check(theorem_id id, const group_ptr &G, const graded_series &closed, int d,
                          std::optional<bool> &out)
{
    const auto ref = univariate_form(id, G->order(), closed.trunc_degree(), d);
    if (!ref) {
        out.reset();
        return true;
    }
    out = natural_spec(closed) == *ref;
    return *out;
}

inline verification_report verify(theorem_id id, const group_ptr &G, const std::string &group_name, int n_max,
                                  int d, int N, const brute_budget &budget = {})
{
    if (N < n_max) {
        throw usage_error("verify: --degree must be >= --n-max");
    }
    if (n_max < 1) {
        throw usage_error("verify: --n-max must be >= 1");
    }
    check_theorem_parameters(id, G, d);
    const auto start = std::chrono::steady_clock::now();
    verification_report rep;
    rep.id = id;
    rep.group = group_name;
    rep.n_max = n_max;
    rep.d = d;
    rep.N = N;
    const graded_series closed = closed_form(id, G, N, d);
    rep.constant_ok = closed.homogeneous(0) == graded_series::constant(G, N, lhs_constant(id));
    natural_check(id, G, closed, d, rep.natural_ok);
    for (int n = 1; n <= n_max; ++n) {
        degree_status st;
        st.degree = n;
        if (id == theorem_id::dn_series) {
            // no poset model: consistency with the B series at t = 1 instead
            const auto bn = closed_form(theorem_id::bn_whitney, G, N);
            const auto h2 = exp_G(G, N).homogeneous(2);
            const auto lhs = specialize_t(closed, 1).homogeneous(n).truncated(n);
            const auto rhs = specialize_t(((1 + h2) * bn), 1).homogeneous(n).truncated(n);
            st.first_mismatch = first_difference(lhs, rhs, n);
        } else {
            const auto brute = brute_force_side(id, G, n, d, budget);
            const auto expected = closed.homogeneous(n).truncated(n);
            st.first_mismatch = first_difference(brute.truncated(n), expected, n);
        }
        st.equal = !st.first_mismatch;
        rep.degrees.push_back(std::move(st));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Dimension formulas.

inline integer dim_formula_q(int g, int n)
{
    integer r = 1;
    for (int k = 1; k < n; ++k) {
        r *= k * g + 1;
    }
    return r;
}

inline integer dim_formula_r(int g, int n)
{
    integer r = 1;
    for (int k = 1; k < n; ++k) {
        r *= k * g - 1;
    }
    return r;
}

inline integer dim_formula_qsim(int g, int n)
{
    integer r = integer(n - 1) * (g - 1);
    for (int k = 1; k + 1 < n; ++k) {
        r *= k * g + 1;
    }
    return r;
}

// 1 mod 2 family over {+-1}
inline integer dim_formula_b(int n)
{
    const auto un = static_cast<unsigned long>(n);
    if (n % 2 == 0) {
        return factorial(2 * un) / (ipow(2, un) * factorial(un + 1));
    }
    return factorial(un) * factorial(un - 1) / (factorial((un + 1) / 2) * factorial((un - 1) / 2));
}

struct dimension_row {
    std::string family;
    int group_order = 0;
    int n = 0;
    integer formula;
    integer brute; // |mu(0^, 1^)|
    bool equal() const
    {
        return formula == brute;
    }
};

inline std::vector<dimension_row> dimension_tables(const std::vector<group_ptr> &groups, int n_max,
                                                   const brute_budget &budget = {})
{
    std::vector<dimension_row> rows;
    auto mu_abs = [&](const family_spec &f, const group_ptr &G, int n) {
        check_budget(estimate_family_size(f, *G, n), budget, f.name());
        const long long mu = mobius_bottom_top(dowling_poset(f, G, n).P());
        return integer(static_cast<long>(mu < 0 ? -mu : mu));
    };
    for (const auto &G : groups) {
        const int g = G->order();
        for (int n = 1; n <= n_max; ++n) {
            rows.push_back({"q", g, n, dim_formula_q(g, n), mu_abs({family_kind::Q, 0}, G, n)});
            rows.push_back({"r", g, n, dim_formula_r(g, n), mu_abs({family_kind::R, 0}, G, n)});
            if (g >= 2 && n >= 2) {
                rows.push_back({"qsim", g, n, dim_formula_qsim(g, n), mu_abs({family_kind::Qsim, 0}, G, n)});
            }
            if (g == 2) {
                rows.push_back({"q1modd", g, n, dim_formula_b(n), mu_abs({family_kind::Q1mod, 2}, G, n)});
            }
        }
    }
    return rows;
}

// Identity-element characteristic polynomials against the product formulas.
inline std::vector<long long> poly_mul_linear(const std::vector<long long> &p, long long a)
{
    // p * (1 - a t)
    std::vector<long long> r(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] += p[i];
        r[i + 1] -= a * p[i];
    }
    return r;
}

inline std::vector<long long> char_poly_formula(family_kind k, int g, int n)
{
    std::vector<long long> p{1};
    switch (k) {
        case family_kind::Q:
            for (int j = 0; j < n; ++j) {
                p = poly_mul_linear(p, static_cast<long long>(j) * g + 1);
            }
            return p;
        case family_kind::R: {
            for (int j = 1; j < n; ++j) {
                p = poly_mul_linear(p, static_cast<long long>(j) * g);
            }
            p.resize(static_cast<std::size_t>(n + 1), 0);
            long long c = 1;
            for (int j = 1; j < n; ++j) {
                c *= static_cast<long long>(j) * g - 1;
            }
            p[static_cast<std::size_t>(n)] += n % 2 ? -c : c;
            return p;
        }
        case family_kind::Qsim:
            for (int j = 0; j + 1 < n; ++j) {
                p = poly_mul_linear(p, static_cast<long long>(j) * g + 1);
            }
            return poly_mul_linear(p, static_cast<long long>(n - 1) * (g - 1));
        default:
            throw usage_error("no product formula for this family");
    }
}

inline std::vector<long long> trimmed(std::vector<long long> p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
    return p;
}

// ---------------------------------------------------------------------------
// Corollaries as series identities between brute-force characters.

struct corollary_report {
    int n_max = 0;
    bool fibre_ok = false; // (1 + sum Q)(1 - sum R) = 1
    bool qsim_ok = false;  // (1 + h_1)^{-1}(1 + sum Qsim) = 1 + sum Q
    bool qsim_applicable = false;
    bool ok() const
    {
        return fibre_ok && (!qsim_applicable || qsim_ok);
    }
};

inline corollary_report corollary_checks(const group_ptr &G, int n_max, const brute_budget &budget = {})
{
    corollary_report rep;
    rep.n_max = n_max;
    const auto q = detail::accumulate(theorem_id::hanlon, G, n_max, 0, budget, 1);
    const auto r = detail::accumulate(theorem_id::second, G, n_max, 0, budget, 1);
    rep.fibre_ok = (q * (1 - r)) == graded_series::constant(G, n_max, 1);
    rep.qsim_applicable = G->order() >= 2;
    if (rep.qsim_applicable) {
        const auto s = detail::accumulate(theorem_id::third, G, n_max, 0, budget, 2);
        rep.qsim_ok = invert(1 + detail::h1(G, n_max)) * s == q;
    }
    return rep;
}

} // namespace dowling

#endif
