#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qf/errors.hpp"
#include "qf/matrix.hpp"

// Exact integer lattice algebra: Smith normal form with a tracked column
// transform, row-style Hermite normal form, and membership/solve against a
// Hermite basis.  Everything here works on row lattices: the span over Z of
// the row vectors of a matrix, sitting inside Z^m.

namespace qf {

using IntVec = std::vector<Int>;
using IntRows = std::vector<IntVec>;

inline Int floordiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Result of smith_normal_form.  Only the column transform V is kept: row
// operations do not change the row lattice, so the defining invariant is
//
//     rowLattice(A) . V == rowLattice(diag(divisors))
//
// i.e. V maps original-basis coordinates to Smith coordinates, in which the
// lattice is simply  d_0 Z x d_1 Z x ... x {0} x ... .  V is unimodular.
struct SmithResult {
    std::vector<Int> divisors;  // nonzero diagonal, positive, d_i | d_{i+1}
    std::size_t rank = 0;       // == divisors.size()
    IntRows v;                  // m x m column transform

    // Coordinates of a vector in the Smith basis: c = x . V.
    IntVec apply_v(const IntVec& x) const {
        const std::size_t m = v.size();
        if (x.size() != m) throw DomainError("smith transform: dimension mismatch");
        IntVec c(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[j] += x[i] * v[i][j];
        }
        return c;
    }
};

namespace detail {

struct ColOps {
    IntRows& a;
    IntRows& v;
    void swap(std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (auto& row : a) std::swap(row[c1], row[c2]);
        for (auto& row : v) std::swap(row[c1], row[c2]);
    }
    // col[dst] += q * col[src]
    void add(std::size_t src, std::size_t dst, const Int& q) {
        if (q == 0) return;
        for (auto& row : a) row[dst] += q * row[src];
        for (auto& row : v) row[dst] += q * row[src];
    }
    void negate(std::size_t c) {
        for (auto& row : a) row[c] = -row[c];
        for (auto& row : v) row[c] = -row[c];
    }
};

}  // namespace detail

// Smith normal form of the row lattice spanned by `rows` inside Z^m.
// Row operations are applied untracked (they fix the lattice); column
// operations are mirrored on V.
inline SmithResult smith_normal_form(const IntRows& rows, std::size_t m) {
    IntRows a = rows;
    const std::size_t n_rows = a.size();
    for (const auto& r : a)
        if (r.size() != m) throw DomainError("smith_normal_form: ragged input");

    SmithResult res;
    res.v.assign(m, IntVec(m));
    for (std::size_t i = 0; i < m; ++i) res.v[i][i] = 1;
    detail::ColOps cols{a, res.v};

    auto row_swap = [&](std::size_t r1, std::size_t r2) {
        if (r1 != r2) std::swap(a[r1], a[r2]);
    };
    auto row_add = [&](std::size_t src, std::size_t dst, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < m; ++j) a[dst][j] += q * a[src][j];
    };

    std::size_t t = 0;
    while (t < n_rows && t < m) {
        // Choose the nonzero entry of smallest magnitude in the uncleared
        // corner as pivot; small pivots keep the Euclid loops short.
        std::size_t pi = 0, pj = 0;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < n_rows; ++i)
            for (std::size_t j = t; j < m; ++j) {
                if (a[i][j] == 0) continue;
                Int mag = abs(a[i][j]);
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        cols.swap(t, pj);

        for (;;) {
            bool done = true;
            for (std::size_t i = t + 1; i < n_rows; ++i) {
                if (a[i][t] == 0) continue;
                row_add(t, i, -floordiv(a[i][t], a[t][t]));
                if (a[i][t] != 0) {  // remainder smaller than pivot: promote it
                    row_swap(t, i);
                    done = false;
                }
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (a[t][j] == 0) continue;
                cols.add(t, j, -floordiv(a[t][j], a[t][t]));
                if (a[t][j] != 0) {
                    cols.swap(t, j);
                    done = false;
                }
            }
            if (done) break;
        }
        ++t;
    }
    const std::size_t rank = t;

    for (std::size_t i = 0; i < rank; ++i)
        if (a[i][i] < 0) cols.negate(i);

    // Divisor-chain fixup: whenever d_i does not divide d_j (i < j), fold the
    // pair to (gcd, lcm) with a 2x2 Euclid confined to rows/cols {i, j}.
    // All off-block entries of those rows and columns are zero, so the block
    // stays closed under the operations.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < rank; ++i)
            for (std::size_t j = i + 1; j < rank; ++j) {
                if (a[j][j] % a[i][i] == 0) continue;
                changed = true;
                row_add(j, i, 1);  // row i becomes (d_i at col i, d_j at col j)
                while (a[i][j] != 0 || a[j][i] != 0) {
                    if (a[i][j] != 0) {
                        cols.add(i, j, -floordiv(a[i][j], a[i][i]));
                        if (a[i][j] != 0) cols.swap(i, j);
                    }
                    if (a[j][i] != 0) {
                        row_add(i, j, -floordiv(a[j][i], a[i][i]));
                        if (a[j][i] != 0) row_swap(i, j);
                    }
                }
                if (a[i][i] < 0) cols.negate(i);
                if (a[j][j] < 0) cols.negate(j);
            }
    }

    res.rank = rank;
    res.divisors.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) res.divisors.push_back(a[i][i]);
    return res;
}

// Is c in rowLattice(diag(divisors)) (divisors padded with zeros to length m)?
inline bool smith_lattice_contains(const SmithResult& s, const IntVec& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.divisors[i] != 0) return false;
        } else if (c[i] != 0) {
            return false;
        }
    }
    return true;
}

// Row-style Hermite normal form: returns a basis of the row lattice with
// strictly increasing pivot columns, positive pivots, and entries above each
// pivot reduced into [0, pivot).
inline IntRows hermite_basis(const IntRows& rows, std::size_t m) {
    IntRows a = rows;
    for (const auto& r : a)
        if (r.size() != m) throw DomainError("hermite_basis: ragged input");

    std::size_t top = 0;
    for (std::size_t col = 0; col < m && top < a.size(); ++col) {
        // Euclid the column below `top` down to a single nonzero entry.
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = top; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                if (best == a.size() || abs(a[i][col]) < abs(a[best][col])) best = i;
            }
            if (best == a.size()) break;  // column is zero below top
            std::swap(a[top], a[best]);
            bool clear = true;
            for (std::size_t i = top + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Int q = floordiv(a[i][col], a[top][col]);
                for (std::size_t j = 0; j < m; ++j) a[i][j] -= q * a[top][j];
                if (a[i][col] != 0) clear = false;
            }
            if (clear) break;
        }
        if (a[top][col] == 0) continue;
        if (a[top][col] < 0)
            for (std::size_t j = 0; j < m; ++j) a[top][j] = -a[top][j];
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < top; ++i) {
            Int q = floordiv(a[i][col], a[top][col]);
            if (q == 0) continue;
            for (std::size_t j = 0; j < m; ++j) a[i][j] -= q * a[top][j];
        }
        ++top;
    }
    a.resize(top);
    return a;
}

// Express v as an integer combination of Hermite basis rows.  Returns the
// coefficient vector, or nullopt when v is not in the lattice.
inline std::optional<IntVec> solve_in_lattice(const IntRows& basis, const IntVec& v) {
    IntVec rem = v, coeff(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t piv = 0;
        while (piv < basis[i].size() && basis[i][piv] == 0) ++piv;
        if (piv == basis[i].size()) throw DomainError("solve_in_lattice: zero basis row");
        // Later rows have zeros in this column (echelon pivots increase), so
        // a non-divisible pivot entry is conclusive.
        if (rem[piv] % basis[i][piv] != 0) return std::nullopt;
        Int q = rem[piv] / basis[i][piv];
        coeff[i] = q;
        if (q != 0)
            for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= q * basis[i][j];
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    return coeff;
}

inline bool lattice_contains(const IntRows& hermite, const IntVec& v) {
    return solve_in_lattice(hermite, v).has_value();
}

}  // namespace qf
