#ifndef DOWLING_GROUP_HPP
#define DOWLING_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dowling
{

struct conjugacy_class {
    int class_id = 0;
    int representative = 0;
    std::vector<int> members;
    int size() const
    {
        return static_cast<int>(members.size());
    }
};

// A finite group given by its Cayley table. Elements are dense indices and
// index 0 is the identity. Conjugacy classes are computed by exhaustive
// conjugation and numbered by their minimal member, so the same table always
// yields the same class ids. Immutable after construction.
class finite_group
{
public:
    // Validates `table` (row i holds the products i*j) and computes class data.
    explicit finite_group(std::vector<std::vector<int>> table, std::vector<std::string> names = {})
        : m_table(std::move(table)), m_names(std::move(names))
    {
        validate();
        compute_inverses();
        compute_classes();
        if (m_names.empty()) {
            for (int i = 0; i < order(); ++i) {
                m_names.push_back(i == 0 ? std::string("e") : "g" + std::to_string(i));
            }
        }
    }

    int order() const
    {
        return static_cast<int>(m_table.size());
    }
    int identity() const
    {
        return 0;
    }
    int mul(int a, int b) const
    {
        return m_table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    int inverse(int a) const
    {
        return m_inverse[static_cast<std::size_t>(a)];
    }
    int power(int a, long j) const
    {
        int r = identity();
        const int ord = element_order(a);
        j %= ord;
        if (j < 0) {
            j += ord;
        }
        for (long k = 0; k < j; ++k) {
            r = mul(r, a);
        }
        return r;
    }
    int element_order(int a) const
    {
        int k = 1;
        int x = a;
        while (x != identity()) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    const std::vector<std::vector<int>> &table() const
    {
        return m_table;
    }
    const std::vector<std::string> &names() const
    {
        return m_names;
    }
    const std::vector<conjugacy_class> &classes() const
    {
        return m_classes;
    }
    int num_classes() const
    {
        return static_cast<int>(m_classes.size());
    }
    int class_of(int element) const
    {
        return m_class_of[static_cast<std::size_t>(element)];
    }
    int class_size(int c) const
    {
        return check_class(c).size();
    }
    int identity_class() const
    {
        return class_of(identity());
    }

    // Class of g^j for g in class c.
    int class_power(int c, long j) const
    {
        if (j < 1) {
            throw invalid_argument("class_power: exponent must be >= 1");
        }
        return class_of(power(check_class(c).representative, j));
    }

    // Number of g with g^d in class c.
    int count_power_preimages(int c, long d) const
    {
        check_class(c);
        int count = 0;
        for (int g = 0; g < order(); ++g) {
            if (class_of(power(g, d)) == c) {
                ++count;
            }
        }
        return count;
    }

    bool operator==(const finite_group &other) const
    {
        return m_table == other.m_table;
    }

private:
    const conjugacy_class &check_class(int c) const
    {
        if (c < 0 || c >= num_classes()) {
            throw invalid_argument("class id " + std::to_string(c) + " out of range");
        }
        return m_classes[static_cast<std::size_t>(c)];
    }

    void validate() const
    {
        const auto m = m_table.size();
        if (m == 0) {
            throw validation_error("shape", "empty Cayley table");
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (m_table[i].size() != m) {
                throw validation_error("shape", "row " + std::to_string(i) + " has " + std::to_string(m_table[i].size())
                                                    + " entries, expected " + std::to_string(m));
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (m_table[i][j] < 0 || static_cast<std::size_t>(m_table[i][j]) >= m) {
                    throw validation_error("range", "entry (" + std::to_string(i) + "," + std::to_string(j)
                                                        + ") = " + std::to_string(m_table[i][j]) + " out of range");
                }
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (m_table[0][j] != static_cast<int>(j) || m_table[j][0] != static_cast<int>(j)) {
                throw validation_error("identity", "index 0 is not a two-sided identity (fails at element "
                                                       + std::to_string(j) + ")");
            }
        }
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                const auto ab = static_cast<std::size_t>(m_table[a][b]);
                for (std::size_t c = 0; c < m; ++c) {
                    const auto bc = static_cast<std::size_t>(m_table[b][c]);
                    if (m_table[ab][c] != m_table[a][bc]) {
                        throw validation_error("associativity", "associativity fails for triple (" + std::to_string(a)
                                                                    + "," + std::to_string(b) + ","
                                                                    + std::to_string(c) + ")");
                    }
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<char> row_seen(m, 0), col_seen(m, 0);
            for (std::size_t j = 0; j < m; ++j) {
                row_seen[static_cast<std::size_t>(m_table[i][j])] = 1;
                col_seen[static_cast<std::size_t>(m_table[j][i])] = 1;
            }
            if (std::count(row_seen.begin(), row_seen.end(), 1) != static_cast<long>(m)
                || std::count(col_seen.begin(), col_seen.end(), 1) != static_cast<long>(m)) {
                throw validation_error("latin", "row/column " + std::to_string(i) + " is not a permutation");
            }
        }
    }

    void compute_inverses()
    {
        m_inverse.assign(m_table.size(), -1);
        for (int a = 0; a < order(); ++a) {
            for (int b = 0; b < order(); ++b) {
                if (mul(a, b) == identity()) {
                    m_inverse[static_cast<std::size_t>(a)] = b;
                    break;
                }
            }
        }
    }

    void compute_classes()
    {
        m_class_of.assign(m_table.size(), -1);
        for (int x = 0; x < order(); ++x) {
            if (m_class_of[static_cast<std::size_t>(x)] != -1) {
                continue;
            }
            conjugacy_class cc;
            cc.class_id = static_cast<int>(m_classes.size());
            cc.representative = x;
            for (int g = 0; g < order(); ++g) {
                const int y = mul(mul(g, x), inverse(g));
                if (m_class_of[static_cast<std::size_t>(y)] == -1) {
                    m_class_of[static_cast<std::size_t>(y)] = cc.class_id;
                    cc.members.push_back(y);
                }
            }
            std::sort(cc.members.begin(), cc.members.end());
            m_classes.push_back(std::move(cc));
        }
    }

    std::vector<std::vector<int>> m_table;
    std::vector<std::string> m_names;
    std::vector<int> m_inverse;
    std::vector<int> m_class_of;
    std::vector<conjugacy_class> m_classes;
};

using group_ptr = std::shared_ptr<const finite_group>;

inline group_ptr group_from_table(std::vector<std::vector<int>> table, std::vector<std::string> names = {})
{
    return std::make_shared<const finite_group>(std::move(table), std::move(names));
}

inline group_ptr cyclic_group(int r)
{
    if (r < 1) {
        throw invalid_argument("cyclic_group: order must be >= 1");
    }
    std::vector<std::vector<int>> t(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % r;
        }
    }
    std::vector<std::string> names;
    for (int i = 0; i < r; ++i) {
        names.push_back(r == 2 ? (i == 0 ? "1" : "-1") : (i == 0 ? "e" : "z" + std::to_string(i)));
    }
    return group_from_table(std::move(t), std::move(names));
}

inline const group_ptr &trivial_group()
{
    static const group_ptr g = cyclic_group(1);
    return g;
}

// Symmetric group on k letters, elements in lexicographic order of their
// one-line notation (so the identity is index 0).
inline group_ptr symmetric_group(int k)
{
    if (k < 1 || k > 5) {
        throw invalid_argument("symmetric_group: supported for 1 <= k <= 5");
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = static_cast<int>(i);
    }
    const auto m = perms.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a) {
        std::string nm;
        for (int v : perms[a]) {
            nm += std::to_string(v + 1);
        }
        names.push_back(nm);
        for (std::size_t b = 0; b < m; ++b) {
            // (a*b)(x) = a(b(x))
            std::vector<int> c(static_cast<std::size_t>(k));
            for (std::size_t x = 0; x < static_cast<std::size_t>(k); ++x) {
                c[x] = perms[a][static_cast<std::size_t>(perms[b][x])];
            }
            t[a][b] = index.at(c);
        }
    }
    return group_from_table(std::move(t), std::move(names));
}

inline group_ptr klein_four_group()
{
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i ^ j;
        }
    }
    return group_from_table(std::move(t), {"e", "a", "b", "ab"});
}

// Cayley-table text format: first line m, then m rows of m indices, then an
// optional line of m element names.
inline group_ptr parse_group_table(std::istream &in)
{
    std::string line;
    auto next_line = [&](std::string &out) {
        while (std::getline(in, out)) {
            if (out.find_first_not_of(" \t\r") != std::string::npos) {
                return true;
            }
        }
        return false;
    };
    if (!next_line(line)) {
        throw validation_error("shape", "missing order line");
    }
    int m = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> m) || m < 1) {
            throw validation_error("shape", "invalid order line: " + line);
        }
    }
    std::vector<std::vector<int>> t;
    for (int i = 0; i < m; ++i) {
        if (!next_line(line)) {
            throw validation_error("shape", "table has fewer than " + std::to_string(m) + " rows");
        }
        std::istringstream ss(line);
        std::vector<int> row;
        std::string tok;
        while (ss >> tok) {
            try {
                row.push_back(std::stoi(tok));
            } catch (const std::exception &) {
                throw validation_error("shape", "non-integer entry '" + tok + "' in row " + std::to_string(i));
            }
        }
        t.push_back(std::move(row));
    }
    std::vector<std::string> names;
    if (next_line(line)) {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            names.push_back(tok);
        }
        if (static_cast<int>(names.size()) != m) {
            throw validation_error("shape", "names line must contain exactly " + std::to_string(m) + " names");
        }
    }
    return group_from_table(std::move(t), std::move(names));
}

inline std::string format_group_table(const finite_group &g)
{
    std::ostringstream os;
    os << g.order() << '\n';
    for (const auto &row : g.table()) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << (j ? " " : "") << row[j];
        }
        os << '\n';
    }
    for (std::size_t i = 0; i < g.names().size(); ++i) {
        os << (i ? " " : "") << g.names()[i];
    }
    os << '\n';
    return os.str();
}

} // namespace dowling

#endif
