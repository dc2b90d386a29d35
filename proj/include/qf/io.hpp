#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qf/abelian.hpp"
#include "qf/derived.hpp"
#include "qf/envelope.hpp"
#include "qf/errors.hpp"
#include "qf/group.hpp"
#include "qf/invariants.hpp"
#include "qf/matrix.hpp"
#include "qf/quandle.hpp"
#include "qf/rep.hpp"

// Table files and report serialization.
//
// Table file format (quandles and groups alike): the first significant line
// holds n, the next n significant lines hold n whitespace-separated 1-based
// entries each.  Blank lines and lines starting with '#' are ignored.  All
// unbounded integers are serialized as decimal strings so reports stay exact;
// structural counts stay plain JSON numbers.

namespace qf {

using json = nlohmann::ordered_json;

// ---- table files --------------------------------------------------------------

namespace detail {

inline long parse_int_token(const std::string& tok, const std::string& context) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw MalformedInput(context + ": not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw MalformedInput(context + ": not an integer: '" + tok + "'");
    return v;
}

inline std::vector<std::string> significant_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

inline Table parse_table(const std::string& text) {
    std::vector<std::string> lines = detail::significant_lines(text);
    if (lines.empty()) throw MalformedInput("empty table file");

    std::istringstream head(lines[0]);
    std::string tok, extra;
    if (!(head >> tok) || (head >> extra))
        throw MalformedInput("first line must hold the size alone");
    long n = detail::parse_int_token(tok, "size line");
    if (n < 1) throw MalformedInput("size must be at least 1");
    if (lines.size() != static_cast<std::size_t>(n) + 1)
        throw MalformedInput("expected " + std::to_string(n) + " table rows, found " +
                             std::to_string(lines.size() - 1));

    Table t(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        std::istringstream row(lines[static_cast<std::size_t>(i) + 1]);
        std::string cell;
        while (row >> cell) {
            long v = detail::parse_int_token(cell, "row " + std::to_string(i + 1));
            if (v < 1 || v > n)
                throw MalformedInput("row " + std::to_string(i + 1) + ": entry " +
                                     std::to_string(v) + " outside 1.." + std::to_string(n));
            t[static_cast<std::size_t>(i)].push_back(static_cast<int>(v - 1));
        }
        if (t[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
            throw MalformedInput("row " + std::to_string(i + 1) + " has " +
                                 std::to_string(t[static_cast<std::size_t>(i)].size()) +
                                 " entries, expected " + std::to_string(n));
    }
    return t;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Table read_table_file(const std::string& path) { return parse_table(read_file(path)); }

inline FiniteQuandle read_quandle_file(const std::string& path) {
    return FiniteQuandle::from_table(read_table_file(path));
}

inline FiniteGroup read_group_file(const std::string& path) {
    return FiniteGroup::from_table(read_table_file(path));
}

// 1-based writer, inverse of parse_table.
inline std::string format_table(const Table& t) {
    std::string out = std::to_string(t.size()) + "\n";
    for (const std::vector<int>& row : t) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(row[j] + 1);
        }
        out += '\n';
    }
    return out;
}

// ---- JSON report builders ------------------------------------------------------

inline json abelian_json(const FgAbelian& a) {
    json torsion = json::array();
    for (const Int& t : a.torsion) torsion.push_back(t.get_str());
    return json{{"rank", a.rank}, {"torsion", std::move(torsion)}};
}

inline json matrix_dense_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrix_blocks_json(const IntMatrix& m, std::size_t block_dim) {
    json blocks = json::array();
    for (const auto& [bi, bj, blk] : nonzero_blocks(m, block_dim))
        blocks.push_back(json{{"row", bi}, {"col", bj}, {"entries", matrix_dense_json(blk)}});
    return json{{"dim", m.rows()}, {"block_dim", block_dim}, {"blocks", std::move(blocks)}};
}

inline json envelope_json(const EnvelopeModel& m, const QConj& qc, const FgAbelian& ab,
                          const SubgroupData& gamma2) {
    json g2{{"finite", gamma2.finite}};
    if (gamma2.finite) g2["order"] = gamma2.order->get_str();
    g2["inn_image_order"] = gamma2.inn_indices.size();
    g2["kpart"] = abelian_json(gamma2.kpart);
    return json{{"inn_order", m.inn.order()},
                {"transversal_size", m.transversal_size},
                {"K", abelian_json(m.k)},
                {"qconj_size", qc.quandle.size()},
                {"injective", qc.quandle.size() == m.q.size()},
                {"abelianization", abelian_json(ab)},
                {"gamma2", std::move(g2)}};
}

inline json invariant_json(const InvariantReport& r) {
    json betti = json::array();
    for (const Int& b : r.betti) betti.push_back(b.get_str());
    json out{{"orbit_count", r.orbit_count},
             {"component_count", r.component_count},
             {"abelianization", abelian_json(r.abelianization)},
             {"qconj_size", r.qconj_size},
             {"injective", r.injective},
             {"nilpotent", r.nilpotent},
             {"solvable", r.solvable},
             {"betti", std::move(betti)},
             {"malcev_dim", r.malcev_dim},
             {"center", abelian_json(r.center)}};
    if (r.gamma2_finite) {
        out["gamma2_finite"] = *r.gamma2_finite;
        if (r.gamma2_order) out["gamma2_order"] = r.gamma2_order->get_str();
    }
    return out;
}

// ---- deterministic text rendering ----------------------------------------------

namespace detail {

inline bool all_scalar(const json& a) {
    for (const json& v : a)
        if (v.is_structured()) return false;
    return true;
}

inline std::string scalar_text(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

inline void render_text_into(const json& j, std::string& out, std::size_t indent) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_structured() &&
                !(it.value().is_array() && all_scalar(it.value()))) {
                out += pad + it.key() + ":\n";
                render_text_into(it.value(), out, indent + 2);
            } else if (it.value().is_array()) {
                out += pad + it.key() + ": ";
                render_text_into(it.value(), out, 0);
            } else {
                out += pad + it.key() + ": " + scalar_text(it.value()) + "\n";
            }
        }
    } else if (j.is_array()) {
        if (all_scalar(j)) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                out += scalar_text(j[i]);
            }
            out += "]\n";
        } else {
            for (const json& v : j) {
                if (v.is_array() && all_scalar(v)) {
                    out += pad + "- ";
                    render_text_into(v, out, 0);
                } else {
                    out += pad + "-\n";
                    render_text_into(v, out, indent + 2);
                }
            }
        }
    } else {
        out += pad + scalar_text(j) + "\n";
    }
}

}  // namespace detail

inline std::string render_text(const json& j) {
    std::string out;
    detail::render_text_into(j, out, 0);
    return out;
}

}  // namespace qf
