#ifndef DOWLING_SERIALIZE_HPP
#define DOWLING_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "family.hpp"
#include "group.hpp"
#include "series.hpp"
#include "theorems.hpp"

namespace dowling
{

using json = nlohmann::ordered_json;

// Rationals travel as decimal strings so that numerators of any size survive.
inline json series_to_json(const graded_series &f)
{
    const graded_series g = f.normalized();
    json terms = json::array();
    for (const auto &[key, c] : g.terms()) {
        json vars = json::array();
        for (const auto &fa : key.mono.factors()) {
            vars.push_back({{"i", fa.var.i}, {"class", fa.var.class_id}, {"exp", fa.exp}});
        }
        rational q(key.t_exp, g.t_den());
        q.canonicalize();
        terms.push_back({{"num", c.get_num().get_str()},
                         {"den", c.get_den().get_str()},
                         {"t_num", q.get_num().get_si()},
                         {"t_den", q.get_den().get_si()},
                         {"vars", vars}});
    }
    return {{"group_order", g.group()->order()},
            {"num_classes", g.group()->num_classes()},
            {"truncation", g.trunc_degree()},
            {"terms", terms}};
}

inline graded_series series_from_json(const json &j, const group_ptr &G)
{
    if (j.at("num_classes").get<int>() != G->num_classes() || j.at("group_order").get<int>() != G->order()) {
        throw invalid_argument("series_from_json: serialized series belongs to a different group");
    }
    graded_series r(G, j.at("truncation").get<int>());
    for (const auto &t : j.at("terms")) {
        std::vector<monomial_factor> fs;
        for (const auto &v : t.at("vars")) {
            fs.push_back({{v.at("i").get<int>(), v.at("class").get<int>()}, v.at("exp").get<int>()});
        }
        rational c(integer(t.at("num").get<std::string>()), integer(t.at("den").get<std::string>()));
        c.canonicalize();
        const rational q = make_rational(t.at("t_num").get<long>(), t.at("t_den").get<long>());
        const long den = std::lcm(r.t_den(), q.get_den().get_si());
        r = r.with_t_den(den);
        r.add_term_t(monomial::from_factors(std::move(fs)), q, c);
    }
    return r;
}

inline json report_to_json(const verification_report &r)
{
    json degrees = json::array();
    for (const auto &s : r.degrees) {
        json d = {{"degree", s.degree}, {"equal", s.equal}};
        if (s.first_mismatch) {
            const auto &m = *s.first_mismatch;
            d["first_mismatch"] = {{"monomial", m.monomial},
                                   {"t_exponent", m.t_exponent},
                                   {"brute_force", m.brute},
                                   {"closed_form", m.closed}};
        }
        degrees.push_back(d);
    }
    json out = {{"theorem", theorem_name(r.id)},
                {"group", r.group},
                {"n_max", r.n_max},
                {"d", r.d},
                {"degree", r.N},
                {"constant_term_ok", r.constant_ok},
                {"degrees", degrees}};
    out["natural_specialization"] = r.natural_ok ? json(*r.natural_ok ? "equal" : "different") : json("n/a");
    out["verified"] = r.ok();
    out["seconds"] = r.seconds;
    return out;
}

inline std::string report_to_csv(const verification_report &r)
{
    std::string s = "theorem,group,d,degree,equal,monomial,t_exponent,brute_force,closed_form\n";
    for (const auto &st : r.degrees) {
        s += theorem_name(r.id) + "," + r.group + "," + std::to_string(r.d) + "," + std::to_string(st.degree) + ","
             + (st.equal ? "true" : "false");
        if (st.first_mismatch) {
            const auto &m = *st.first_mismatch;
            s += "," + m.monomial + "," + m.t_exponent + "," + m.brute + "," + m.closed;
        } else {
            s += ",,,,";
        }
        s += "\n";
    }
    return s;
}

inline std::string report_to_text(const verification_report &r)
{
    std::string s = theorem_name(r.id) + " over " + r.group + " (n <= " + std::to_string(r.n_max)
                    + ", degree " + std::to_string(r.N) + (r.d ? ", d=" + std::to_string(r.d) : std::string()) + ")\n";
    s += "  constant term: " + std::string(r.constant_ok ? "ok" : "MISMATCH") + "\n";
    for (const auto &st : r.degrees) {
        s += "  degree " + std::to_string(st.degree) + ": " + (st.equal ? "equal" : "MISMATCH");
        if (st.first_mismatch) {
            const auto &m = *st.first_mismatch;
            s += " at " + m.monomial + " t^" + m.t_exponent + " (brute " + m.brute + ", closed " + m.closed + ")";
        }
        s += "\n";
    }
    s += "  natural specialization: "
         + std::string(r.natural_ok ? (*r.natural_ok ? "equal" : "MISMATCH") : "n/a") + "\n";
    s += std::string("  result: ") + (r.ok() ? "verified" : "FAILED") + "\n";
    return s;
}

inline json group_to_json(const finite_group &G)
{
    json classes = json::array();
    for (const auto &c : G.classes()) {
        json members = json::array();
        for (int m : c.members) {
            members.push_back(G.names()[static_cast<std::size_t>(m)]);
        }
        classes.push_back({{"id", c.class_id},
                           {"representative", G.names()[static_cast<std::size_t>(c.representative)]},
                           {"size", c.size()},
                           {"members", members}});
    }
    return {{"order", G.order()}, {"classes", classes}};
}

// powmap[c][j-1] = class of the j-th power, j = 1..order
inline json power_map_to_json(const finite_group &G)
{
    json rows = json::array();
    for (int c = 0; c < G.num_classes(); ++c) {
        json row = json::array();
        for (int j = 1; j <= G.order(); ++j) {
            row.push_back(G.class_power(c, j));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace dowling

#endif
