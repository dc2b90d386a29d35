#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qf/errors.hpp"
#include "qf/lattice.hpp"

namespace qf {

// A finitely generated abelian group in invariant-factor form:
//   Z^rank  x  Z/t_0 x Z/t_1 x ...        with t_i >= 2 and t_i | t_{i+1}.
struct FgAbelian {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    bool is_finite() const { return rank == 0; }

    // Order when finite; nullopt otherwise.
    std::optional<Int> order() const {
        if (!is_finite()) return std::nullopt;
        Int o = 1;
        for (const Int& t : torsion) o *= t;
        return o;
    }

    bool operator==(const FgAbelian& o) const = default;

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::string s;
        if (rank > 0) {
            s = "Z";
            if (rank > 1) s += "^" + std::to_string(rank);
        }
        for (const Int& t : torsion) {
            if (!s.empty()) s += " x ";
            s += "Z/" + t.get_str();
        }
        return s;
    }

    // Structure of Z^m modulo the row lattice of `relations`.
    static FgAbelian from_presentation(const IntRows& relations, std::size_t m) {
        SmithResult s = smith_normal_form(relations, m);
        FgAbelian g;
        g.rank = m - s.rank;
        for (const Int& d : s.divisors)
            if (d > 1) g.torsion.push_back(d);
        return g;
    }
};

}  // namespace qf
