#ifndef DOWLING_PLETHYSM_HPP
#define DOWLING_PLETHYSM_HPP

#include <functional>
#include <map>
#include <numeric>

#include "errors.hpp"
#include "group.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace dowling
{

namespace detail
{

inline bool is_trivial(const group_ptr &g)
{
    return g->order() == 1;
}

// Image of g under p_j(c) -> p_{ij}(class_map(c, j)), t -> t^i.
inline graded_series scaled_image(const graded_series &g, int i, const group_ptr &target, int N,
                                  const std::function<int(int, int)> &class_map)
{
    graded_series r(target, N, g.t_den());
    for (const auto &[key, c] : g.terms()) {
        if (key.mono.degree() * i > N) {
            break;
        }
        std::vector<monomial_factor> fs;
        fs.reserve(key.mono.factors().size());
        for (const auto &f : key.mono.factors()) {
            fs.push_back({{f.var.i * i, class_map(f.var.class_id, f.var.i)}, f.exp});
        }
        r.add_term(monomial::from_factors(std::move(fs)), key.t_exp * i, c);
    }
    return r;
}

// sum over terms of f of coeff * t^e * prod image(v)^exp, with a memo on
// monomial images.
inline graded_series compose_images(const graded_series &f, const group_ptr &target, int N, long t_den,
                                    const std::function<graded_series(series_var)> &image)
{
    std::map<monomial, graded_series> memo;
    std::map<series_var, graded_series> var_images;
    const graded_series one = graded_series::constant(target, N, 1).with_t_den(t_den);
    std::function<const graded_series &(const monomial &)> mono_image = [&](const monomial &m) -> const graded_series & {
        auto it = memo.find(m);
        if (it != memo.end()) {
            return it->second;
        }
        if (m.is_one()) {
            return memo.emplace(m, one).first->second;
        }
        auto [rest, v] = m.split_last();
        auto vit = var_images.find(v);
        if (vit == var_images.end()) {
            vit = var_images.emplace(v, image(v)).first;
        }
        graded_series prod = mono_image(rest) * vit->second;
        return memo.emplace(m, std::move(prod)).first->second;
    };
    graded_series result(target, N, t_den);
    const rational f_step(1, f.t_den());
    for (const auto &[key, c] : f.terms()) {
        if (key.mono.degree() > N) {
            break;
        }
        graded_series term = mono_image(key.mono) * c;
        if (key.t_exp != 0) {
            term = term.times_t(rational(key.t_exp) * f_step);
        }
        result += term;
    }
    return result;
}

inline void require_constant_free(const graded_series &g)
{
    if (g.min_degree() < 1) {
        throw plethysm_domain_error("plethysm argument must have zero constant term");
    }
}

} // namespace detail

// f o g with f over the trivial group and g over G: p_i o p_j(c) = p_{ij}(c).
inline graded_series left_plethysm(const graded_series &f, const graded_series &g)
{
    if (!detail::is_trivial(f.group())) {
        throw incompatible_series("left plethysm: outer series must be over the trivial group");
    }
    detail::require_constant_free(g);
    const int N = std::min(f.trunc_degree(), g.trunc_degree());
    const long den = std::lcm(f.t_den(), g.t_den());
    const group_ptr &G = g.group();
    auto image = [&](series_var v) {
        return detail::scaled_image(g, v.i, G, N, [](int c, int) { return c; }).with_t_den(den);
    };
    return detail::compose_images(f, G, N, den, image);
}

// f o g with f over G and g over the trivial group: p_i(c) o p_j = p_{ij}(c^j).
inline graded_series right_plethysm(const graded_series &f, const graded_series &g)
{
    if (!detail::is_trivial(g.group())) {
        throw incompatible_series("right plethysm: inner series must be over the trivial group");
    }
    detail::require_constant_free(g);
    const int N = std::min(f.trunc_degree(), g.trunc_degree());
    const long den = std::lcm(f.t_den(), g.t_den());
    const group_ptr &G = f.group();
    auto image = [&](series_var v) {
        const int c = v.class_id;
        return detail::scaled_image(g, v.i, G, N, [&G, c](int, int j) { return G->class_power(c, j); })
            .with_t_den(den);
    };
    return detail::compose_images(f, G, N, den, image);
}

// Dispatches to the left action when f is over the trivial group, otherwise
// to the right action.
inline graded_series plethysm(const graded_series &f, const graded_series &g)
{
    if (detail::is_trivial(f.group())) {
        return left_plethysm(f, g);
    }
    if (detail::is_trivial(g.group())) {
        return right_plethysm(f, g);
    }
    throw incompatible_series("plethysm needs one of the two series over the trivial group");
}

inline graded_series p1_series(int N)
{
    return graded_series::variable(trivial_group(), N, 1, 0);
}

// Inverse for plethysm over the trivial group, by the fixed-point iteration
// g <- p_1 - (f - p_1) o g; each round fixes one more degree.
inline graded_series plethystic_inverse(const graded_series &f)
{
    if (!detail::is_trivial(f.group())) {
        throw not_plethystically_invertible("plethystic inverse needs a series over the trivial group");
    }
    const int N = f.trunc_degree();
    if (f.min_degree() < 1) {
        throw not_plethystically_invertible("series has a nonzero constant term");
    }
    const graded_series p1 = p1_series(N);
    if (!(f.homogeneous(1).normalized() == p1.truncated(N).homogeneous(1))) {
        throw not_plethystically_invertible("degree-1 part must be exactly p_1");
    }
    const graded_series tail = f - p1;
    graded_series g = p1;
    for (int k = 2; k <= N; ++k) {
        g = p1 - left_plethysm(tail, g);
    }
    return g;
}

// F(l,c) = -1/(|G| l) sum_{d | l} mu(d) |{g : g^d in c}|
inline rational F_coefficient(const finite_group &G, int l, int c)
{
    if (l < 1) {
        throw invalid_argument("F_coefficient: l must be >= 1");
    }
    rational s = 0;
    for (int d = 1; d <= l; ++d) {
        if (l % d == 0) {
            s += number_mobius(d) * G.count_power_preimages(c, d);
        }
    }
    return -s / (static_cast<long>(G.order()) * l);
}

// prod_{l <= N, c} (1 + p_l(c))^{F(l,c)} by binomial expansion.
inline graded_series product_form_inverse(const group_ptr &G, int N)
{
    graded_series r = graded_series::constant(G, N, 1);
    for (int l = 1; l <= N; ++l) {
        for (const auto &cc : G->classes()) {
            const rational F = F_coefficient(*G, l, cc.class_id);
            if (F == 0) {
                continue;
            }
            graded_series factor(G, N);
            for (int k = 0; k * l <= N; ++k) {
                factor.add_term(monomial::var(l, cc.class_id, k), 0, binomial(F, static_cast<unsigned long>(k)));
            }
            r *= factor;
        }
    }
    return r;
}

// Named combinations.

inline graded_series sech_G(const group_ptr &G, int N)
{
    return invert(mod_filter(exp_G(G, N), 0, 2, residue_mode::equal));
}

inline graded_series tanh_G(const group_ptr &G, int N)
{
    const graded_series e = exp_G(G, N);
    return mod_filter(e, 1, 2, residue_mode::equal) * invert(mod_filter(e, 0, 2, residue_mode::equal));
}

// (Exp^{1 mod d})^{[-1]}; for d = 2 this is the analogue of arcsinh.
inline graded_series exp_1mod_inverse(int d, int N)
{
    return plethystic_inverse(mod_filter(exp_trivial(N), 1, d, residue_mode::equal));
}

inline graded_series arcsinh_series(int N)
{
    return exp_1mod_inverse(2, N);
}

} // namespace dowling

#endif
