// Command-line front end: verify, series, poset, group.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dowling/dowling.hpp"
#include "dowling/serialize.hpp"

using namespace dowling;

namespace
{

enum exit_code { ok = 0, mismatch = 1, usage = 2, budget = 3 };

group_ptr resolve_group(const std::string &desc)
{
    if (desc.rfind("file:", 0) == 0) {
        std::ifstream in(desc.substr(5));
        if (!in) {
            throw usage_error("cannot open group table " + desc.substr(5));
        }
        return parse_group_table(in);
    }
    if (desc == "s3") {
        return symmetric_group(3);
    }
    if (desc == "klein4") {
        return klein_four_group();
    }
    if (desc.size() >= 2 && desc[0] == 'c') {
        try {
            const int r = std::stoi(desc.substr(1));
            if (r >= 1) {
                return cyclic_group(r);
            }
        } catch (const std::exception &) {
        }
    }
    throw usage_error("unknown group '" + desc + "' (use c1, c2, c3, s3, klein4 or file:PATH)");
}

std::vector<std::string> split_csv(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

int run_verify(const std::string &theorem, const std::string &group, int n_max, int d, int degree,
               const std::string &format, long long max_elements)
{
    const auto id = parse_theorem(theorem);
    const auto G = resolve_group(group);
    const auto rep = verify(id, G, group, n_max, d, degree, {max_elements});
    if (format == "json") {
        std::cout << report_to_json(rep).dump(2) << '\n';
    } else if (format == "csv") {
        std::cout << report_to_csv(rep);
    } else {
        std::cout << report_to_text(rep);
    }
    return rep.ok() ? ok : mismatch;
}

int run_series(const std::string &theorem, const std::string &group, int d, int degree, const std::string &format)
{
    const auto G = resolve_group(group);
    const auto f = closed_form(parse_theorem(theorem), G, degree, d);
    if (format == "json") {
        std::cout << series_to_json(f).dump(2) << '\n';
    } else {
        std::cout << f.normalized().str() << '\n';
    }
    return ok;
}

int run_poset(const std::string &family, const std::string &group, int n, int d, const std::string &emit,
              const std::string &format, long long max_elements)
{
    const auto G = resolve_group(group);
    const auto fam = parse_family(family, d);
    check_budget(estimate_family_size(fam, *G, n), {max_elements}, family);
    const dowling_poset D(fam, G, n);
    const poset &P = D.P();
    json out = {{"family", family}, {"group", group}, {"n", n}, {"d", d}, {"elements", P.size()}};
    for (const auto &what : split_csv(emit)) {
        if (what == "mobius") {
            out["mobius"] = mobius_bottom_top(P);
        } else if (what == "ranks") {
            const auto rr = P.rank_and_purity();
            out["ranks"] = rr.rank;
            out["length"] = rr.length;
            out["pure"] = rr.pure;
        } else if (what == "homology") {
            const auto h = P.order_complex_homology(*P.bottom(), *P.top());
            json betti = json::object();
            for (std::size_t k = 0; k < h.betti.size(); ++k) {
                betti[std::to_string(static_cast<int>(k) - 1)] = h.betti[k];
            }
            out["reduced_betti"] = betti;
        } else if (what == "charpoly") {
            out["charpoly"] = equivariant_char_poly(P, identity_map(P.size()));
        } else if (what == "dump") {
            out["dump"] = P.dump();
        } else {
            throw usage_error("unknown --emit item '" + what + "'");
        }
    }
    if (format == "json") {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto &[k, v] : out.items()) {
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
    }
    return ok;
}

int run_group(int cyclic, const std::string &table, const std::string &name, const std::string &emit)
{
    group_ptr G;
    if (cyclic > 0) {
        G = cyclic_group(cyclic);
    } else if (!table.empty()) {
        G = resolve_group("file:" + table);
    } else if (!name.empty()) {
        G = resolve_group(name);
    } else {
        throw usage_error("group: give --cyclic, --table or --name");
    }
    json out = json::object();
    for (const auto &what : split_csv(emit)) {
        if (what == "classes") {
            out["classes"] = group_to_json(*G)["classes"];
            out["order"] = G->order();
        } else if (what == "powmap") {
            out["powmap"] = power_map_to_json(*G);
        } else if (what == "table") {
            out["table"] = format_group_table(*G);
        } else {
            throw usage_error("unknown --emit item '" + what + "'");
        }
    }
    std::cout << out.dump(2) << '\n';
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Dowling lattice homology characters and their generating functions"};
    app.require_subcommand(1);

    std::string theorem, group = "c2", format = "text", family, emit, table, gname;
    int n_max = 3, d = 0, degree = 6, n = 2, cyclic = 0;
    long long max_elements = 50000;

    auto *verify_cmd = app.add_subcommand("verify", "compare brute-force characters with the closed form");
    verify_cmd->add_option("--theorem", theorem, "theorem id")->required();
    verify_cmd->add_option("--group", group, "c1, c2, c3, s3, klein4 or file:PATH");
    verify_cmd->add_option("--n-max", n_max, "largest brute-force degree");
    verify_cmd->add_option("--d", d, "modulus for the modular families");
    verify_cmd->add_option("--degree", degree, "series truncation degree");
    verify_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    verify_cmd->add_option("--max-elements", max_elements, "brute-force poset size budget");

    auto *series_cmd = app.add_subcommand("series", "print a closed-form series");
    series_cmd->add_option("--theorem", theorem, "theorem id")->required();
    series_cmd->add_option("--group", group);
    series_cmd->add_option("--d", d);
    series_cmd->add_option("--degree", degree);
    series_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto *poset_cmd = app.add_subcommand("poset", "build a Dowling-type poset and report on it");
    poset_cmd->add_option("--family", family)->required()->check(
        CLI::IsMember({"q", "r", "qsim", "q1modd", "q0modd"}));
    poset_cmd->add_option("--group", group);
    poset_cmd->add_option("--n", n);
    poset_cmd->add_option("--d", d);
    poset_cmd->add_option("--emit", emit, "comma list of mobius,ranks,homology,charpoly,dump")->required();
    poset_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    poset_cmd->add_option("--max-elements", max_elements);

    auto *group_cmd = app.add_subcommand("group", "inspect a finite group");
    group_cmd->add_option("--cyclic", cyclic, "order of a cyclic group");
    group_cmd->add_option("--table", table, "Cayley table file");
    group_cmd->add_option("--name", gname, "c1, c2, c3, s3 or klein4");
    group_cmd->add_option("--emit", emit, "comma list of classes,powmap,table")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*verify_cmd) {
            return run_verify(theorem, group, n_max, d, degree, format, max_elements);
        }
        if (*series_cmd) {
            return run_series(theorem, group, d, degree, format);
        }
        if (*poset_cmd) {
            return run_poset(family, group, n, d, emit, format, max_elements);
        }
        if (*group_cmd) {
            return run_group(cyclic, table, gname, emit);
        }
    } catch (const budget_exceeded &e) {
        std::cerr << "refused: " << e.what() << '\n';
        return budget;
    } catch (const usage_error &e) {
        std::cerr << "usage: " << e.what() << '\n';
        return usage;
    } catch (const unsupported_family &e) {
        std::cerr << "usage: " << e.what() << '\n';
        return usage;
    } catch (const invalid_argument &e) {
        std::cerr << "usage: " << e.what() << '\n';
        return usage;
    } catch (const validation_error &e) {
        std::cerr << "invalid group table: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
