#pragma once

#include <utility>
#include <vector>

#include "qf/errors.hpp"
#include "qf/perm.hpp"
#include "qf/quandle.hpp"

namespace qf {

// Finite group given by its Cayley table, mul[i][j] = i * j.
// Construction checks the full group axioms (O(n^3) associativity sweep).
class FiniteGroup {
  public:
    static FiniteGroup from_table(Table mul) {
        detail::check_table_shape(mul);
        const int n = static_cast<int>(mul.size());
        int id = -1;
        for (int e = 0; e < n && id == -1; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
            if (ok) id = e;
        }
        if (id == -1) throw DomainError("not a group: no identity element");
        std::vector<int> inv(n, -1);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y)
                if (mul[x][y] == id && mul[y][x] == id) {
                    inv[x] = y;
                    break;
                }
            if (inv[x] == -1) throw DomainError("not a group: missing inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                        throw DomainError("not a group: associativity fails");
        return FiniteGroup(std::move(mul), id, std::move(inv));
    }

    int size() const { return n_; }
    int id() const { return id_; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    const Table& table() const { return mul_; }

    // Left regular action g: y -> g*y.
    Permutation left_regular(int g) const {
        std::vector<int> im(n_);
        for (int y = 0; y < n_; ++y) im[y] = mul_[g][y];
        return Permutation(std::move(im));
    }

    PermGroup regular_representation(std::uint64_t cap = Caps{}.closure) const {
        std::vector<Permutation> gens;
        gens.reserve(n_);
        for (int g = 0; g < n_; ++g) gens.push_back(left_regular(g));
        return subgroup_closure(std::move(gens), cap);
    }

  private:
    FiniteGroup(Table mul, int id, std::vector<int> inv)
        : n_(static_cast<int>(mul.size())), mul_(std::move(mul)), id_(id), inv_(std::move(inv)) {}

    int n_;
    Table mul_;
    int id_;
    std::vector<int> inv_;
};

// Conjugation quandle Conj(G): x > y = x y x^{-1}.
inline FiniteQuandle conj_quandle(const FiniteGroup& g) {
    const int n = g.size();
    Table t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = g.mul(g.mul(x, y), g.inv(x));
    return FiniteQuandle::from_table(t);
}

// Core quandle Core(G): x > y = x y^{-1} x.
inline FiniteQuandle core_quandle(const FiniteGroup& g) {
    const int n = g.size();
    Table t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = g.mul(g.mul(x, g.inv(y)), x);
    return FiniteQuandle::from_table(t);
}

inline bool group_is_nilpotent(const FiniteGroup& g) {
    return is_nilpotent(g.regular_representation());
}

}  // namespace qf
