#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qf/group.hpp"
#include "qf/perm.hpp"
#include "qf/quandle.hpp"

// Small-group catalog for tests: Cayley-table constructors and the full list
// of isomorphism classes up to order 12 (24 of them).

namespace qftest {

using qf::FiniteGroup;
using qf::Table;

inline FiniteGroup cyclic(int n) {
    Table t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return FiniteGroup::from_table(t);
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.size(), nb = b.size(), n = na * nb;
    Table t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    return FiniteGroup::from_table(t);
}

// Order 2n; element f*n + a stands for s^f r^a with  r^a s = s r^{-a}.
inline FiniteGroup dihedral_group(int n) {
    const int sz = 2 * n;
    Table t(static_cast<std::size_t>(sz), std::vector<int>(static_cast<std::size_t>(sz)));
    for (int f1 = 0; f1 < 2; ++f1)
        for (int a1 = 0; a1 < n; ++a1)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int a2 = 0; a2 < n; ++a2) {
                    int f = f1 ^ f2;
                    int a = ((f2 ? -a1 : a1) + a2 % n + 2 * n) % n;
                    t[f1 * n + a1][f2 * n + a2] = f * n + a;
                }
    return FiniteGroup::from_table(t);
}

// {1, i, j, k, -1, -i, -j, -k} as indices 0..7.
inline FiniteGroup quaternion8() {
    auto unit = [](int a, int b) -> std::pair<int, int> {  // (axis, sign) of e_a * e_b
        if (a == 0) return {b, 1};
        if (b == 0) return {a, 1};
        if (a == b) return {0, -1};
        // cyclic: i*j=k, j*k=i, k*i=j
        static const int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
        int c = third[a][b];
        bool forward = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
        return {c, forward ? 1 : -1};
    };
    Table t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            auto [axis, sign] = unit(x % 4, y % 4);
            int s = sign * (x < 4 ? 1 : -1) * (y < 4 ? 1 : -1);
            t[x][y] = axis + (s > 0 ? 0 : 4);
        }
    return FiniteGroup::from_table(t);
}

// Dicyclic of order 12: <a, b | a^6 = 1, b^2 = a^3, b a b^{-1} = a^{-1}>;
// element f*6 + m stands for b^f a^m.
inline FiniteGroup dicyclic3() {
    Table t(12, std::vector<int>(12));
    for (int f1 = 0; f1 < 2; ++f1)
        for (int m1 = 0; m1 < 6; ++m1)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int m2 = 0; m2 < 6; ++m2) {
                    // (b^f1 a^m1)(b^f2 a^m2): move a^m1 across b^f2.
                    int m = ((f2 ? -m1 : m1) + m2 + 12) % 6;
                    int f = f1 + f2;
                    if (f == 2) m = (m + 3) % 6;  // b^2 = a^3
                    t[f1 * 6 + m1][f2 * 6 + m2] = (f % 2) * 6 + m;
                }
    return FiniteGroup::from_table(t);
}

inline FiniteGroup alternating4() {
    std::vector<std::vector<int>> elems;
    std::vector<int> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (inv % 2 == 0) elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    auto index_of = [&](const std::vector<int>& q) {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == q) return static_cast<int>(i);
        return -1;
    };
    Table t(12, std::vector<int>(12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            std::vector<int> comp(4);
            for (int x = 0; x < 4; ++x) comp[x] = elems[i][elems[j][x]];
            t[i][j] = index_of(comp);
        }
    return FiniteGroup::from_table(t);
}

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

// All 24 isomorphism classes of order <= 12.
inline std::vector<NamedGroup> groups_up_to_12() {
    std::vector<NamedGroup> out;
    auto add = [&](std::string name, FiniteGroup g) { out.push_back({std::move(name), std::move(g)}); };
    add("C1", cyclic(1));
    add("C2", cyclic(2));
    add("C3", cyclic(3));
    add("C4", cyclic(4));
    add("C2xC2", direct_product(cyclic(2), cyclic(2)));
    add("C5", cyclic(5));
    add("C6", cyclic(6));
    add("S3", dihedral_group(3));
    add("C7", cyclic(7));
    add("C8", cyclic(8));
    add("C4xC2", direct_product(cyclic(4), cyclic(2)));
    add("C2xC2xC2", direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)));
    add("D4", dihedral_group(4));
    add("Q8", quaternion8());
    add("C9", cyclic(9));
    add("C3xC3", direct_product(cyclic(3), cyclic(3)));
    add("C10", cyclic(10));
    add("D5", dihedral_group(5));
    add("C11", cyclic(11));
    add("C12", cyclic(12));
    add("C6xC2", direct_product(cyclic(6), cyclic(2)));
    add("D6", dihedral_group(6));
    add("A4", alternating4());
    add("Dic3", dicyclic3());
    return out;
}

// The 13 nilpotent groups of order <= 8: the 11 abelian ones plus D4 and Q8.
inline std::vector<NamedGroup> nilpotent_groups_up_to_8() {
    std::vector<NamedGroup> out;
    for (NamedGroup& g : groups_up_to_12())
        if (g.group.size() <= 8 && qf::group_is_nilpotent(g.group)) out.push_back(std::move(g));
    return out;
}

}  // namespace qftest
