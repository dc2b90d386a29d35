#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qf/caps.hpp"
#include "qf/errors.hpp"
#include "qf/perm.hpp"

namespace qf {

// Witness for a failed quandle axiom.
struct AxiomWitness {
    enum class Kind { idempotence, distributivity, invertibility };
    Kind kind;
    // idempotence:    x with x>x != x            (y, z unused)
    // distributivity: x>(y>z) != (x>y)>(x>z)
    // invertibility:  x with x>y == x>z, y != z
    int x = 0, y = 0, z = 0;

    std::string to_string() const {
        switch (kind) {
            case Kind::idempotence:
                return "idempotence fails at x=" + std::to_string(x);
            case Kind::distributivity:
                return "left self-distributivity fails at (x,y,z)=(" + std::to_string(x) + "," +
                       std::to_string(y) + "," + std::to_string(z) + ")";
            case Kind::invertibility:
                return "left translation by x=" + std::to_string(x) + " collides at y=" +
                       std::to_string(y) + ", z=" + std::to_string(z);
        }
        return "";
    }
};

struct ValidationResult {
    bool valid = false;
    std::optional<AxiomWitness> witness;  // set when invalid
};

using Table = std::vector<std::vector<int>>;

namespace detail {
inline void check_table_shape(const Table& t) {
    const std::size_t n = t.size();
    if (n == 0) throw MalformedInput("empty table");
    for (const auto& row : t) {
        if (row.size() != n) throw MalformedInput("table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw MalformedInput("table entry out of range");
    }
}
}  // namespace detail

// Checks the three quandle axioms for a square 0-based table.
// Shape/range problems are MalformedInput; axiom failures are reported with a
// witness, not thrown.
inline ValidationResult validate_quandle(const Table& t) {
    detail::check_table_shape(t);
    const int n = static_cast<int>(t.size());
    using K = AxiomWitness::Kind;
    for (int x = 0; x < n; ++x)
        if (t[x][x] != x) return {false, AxiomWitness{K::idempotence, x, 0, 0}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                if (t[x][y] == t[x][z]) return {false, AxiomWitness{K::invertibility, x, y, z}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (t[x][t[y][z]] != t[t[x][y]][t[x][z]])
                    return {false, AxiomWitness{K::distributivity, x, y, z}};
    return {true, std::nullopt};
}

// Finite quandle (Q, >).  t[x][y] = x > y.  Always valid once constructed.
class FiniteQuandle {
  public:
    static FiniteQuandle from_table(Table t) {
        ValidationResult v = validate_quandle(t);
        if (!v.valid) throw DomainError("not a quandle: " + v.witness->to_string());
        return FiniteQuandle(std::move(t));
    }

    int size() const { return n_; }
    int op(int x, int y) const { return t_[x][y]; }       // x > y
    int op_inv(int x, int y) const { return tinv_[x][y]; }  // unique z with x > z = y
    const Table& table() const { return t_; }

    // L_x : y -> x > y.  Always a permutation (invertibility axiom).
    Permutation left_translation(int x) const { return Permutation(t_[x]); }

    bool operator==(const FiniteQuandle& o) const { return t_ == o.t_; }

  private:
    explicit FiniteQuandle(Table t) : n_(static_cast<int>(t.size())), t_(std::move(t)) {
        tinv_.assign(n_, std::vector<int>(n_));
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) tinv_[x][t_[x][y]] = y;
    }

    int n_;
    Table t_;
    Table tinv_;
};

inline FiniteQuandle trivial_quandle(int n) {
    if (n <= 0) throw DomainError("trivial_quandle: n must be positive");
    Table t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = y;
    return FiniteQuandle::from_table(t);
}

// The smallest quandle whose natural map into its enveloping group is not
// injective: elements {0, 1, 2}, where 1 cycles {0, 2} and 0, 2 act trivially.
inline FiniteQuandle q3_example() {
    return FiniteQuandle::from_table({{0, 1, 2}, {2, 1, 0}, {0, 1, 2}});
}

// Dihedral quandle on Z/n: x > y = 2x - y (mod n).
inline FiniteQuandle dihedral_quandle(int n) {
    if (n <= 0) throw DomainError("dihedral_quandle: n must be positive");
    Table t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = ((2 * x - y) % n + n) % n;
    return FiniteQuandle::from_table(t);
}

// Inner automorphism group Inn(Q) = <L_x : x in Q>.
inline PermGroup inner_group(const FiniteQuandle& q, std::uint64_t cap = Caps{}.closure) {
    std::vector<Permutation> gens;
    gens.reserve(q.size());
    for (int x = 0; x < q.size(); ++x) gens.push_back(q.left_translation(x));
    return subgroup_closure(std::move(gens), cap);
}

// Orbit partition of Q under Inn(Q): finest partition with y ~ x > y.
// Components sorted internally and ordered by smallest element.
inline std::vector<std::vector<int>> orbits(const FiniteQuandle& q) {
    const int n = q.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = find(y), b = find(q.op(x, y));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> buckets;
    for (int y = 0; y < n; ++y) buckets[find(y)].push_back(y);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : buckets) out.push_back(std::move(members));
    return out;
}

inline bool is_indecomposable(const FiniteQuandle& q) { return orbits(q).size() == 1; }

namespace detail {

// Is the subset (as sorted element list) closed under > ?  Finite + left
// invertibility makes closure under the inverse operation automatic.
inline bool is_subquandle(const FiniteQuandle& q, const std::vector<int>& s,
                          const std::vector<bool>& member) {
    for (int x : s)
        for (int y : s)
            if (!member[q.op(x, y)]) return false;
    return true;
}

// Does <L_x|_S : x in S> act transitively on S?
inline bool subquandle_indecomposable(const FiniteQuandle& q, const std::vector<int>& s,
                                      const std::vector<bool>& member) {
    if (s.empty()) return false;
    std::vector<int> reach{s[0]};
    std::vector<bool> seen(q.size(), false);
    seen[s[0]] = true;
    for (std::size_t head = 0; head < reach.size(); ++head)
        for (int x : s) {
            for (int img : {q.op(x, reach[head]), q.op_inv(x, reach[head])})
                if (member[img] && !seen[img]) {
                    seen[img] = true;
                    reach.push_back(img);
                }
        }
    return reach.size() == s.size();
}

}  // namespace detail

// Partition of Q into maximal indecomposable subquandles: Q_x is the union of
// all indecomposable subquandles through x.  That union is again an
// indecomposable subquandle and the distinct Q_x partition Q; both facts are
// re-checked here and violations raise InternalError.  Exhaustive over
// subsets, so |Q| is capped.
inline std::vector<std::vector<int>> indecomposable_components(const FiniteQuandle& q,
                                                               std::uint64_t cap = Caps{}.components) {
    const int n = q.size();
    if (static_cast<std::uint64_t>(n) > cap || n > 22)
        throw ResourceError("indecomposable_components: |Q| exceeds cap");

    std::vector<std::vector<bool>> through(n, std::vector<bool>(n, false));  // through[x] = union mask
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        std::vector<bool> member(n, false);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                s.push_back(i);
                member[i] = true;
            }
        if (!detail::is_subquandle(q, s, member)) continue;
        if (!detail::subquandle_indecomposable(q, s, member)) continue;
        for (int x : s)
            for (int y : s) through[x][y] = true;
    }

    // {x} is always an indecomposable subquandle, so through[x][x] holds.
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(n, -1);
    for (int x = 0; x < n; ++x) {
        if (comp_of[x] != -1) continue;
        std::vector<int> cx;
        for (int y = 0; y < n; ++y)
            if (through[x][y]) cx.push_back(y);
        std::vector<bool> member(n, false);
        for (int y : cx) member[y] = true;
        if (!detail::is_subquandle(q, cx, member) ||
            !detail::subquandle_indecomposable(q, cx, member))
            throw InternalError("component union is not an indecomposable subquandle");
        for (int y : cx) {
            if (comp_of[y] != -1 || through[y] != through[x])
                throw InternalError("indecomposable components do not partition");
            comp_of[y] = static_cast<int>(comps.size());
        }
        comps.push_back(std::move(cx));
    }
    return comps;
}

// All quandle morphisms Q -> Q' as image vectors, lexicographically ordered.
// Plain backtracking; every visited node counts against the cap.
inline std::vector<std::vector<int>> enumerate_morphisms(const FiniteQuandle& q,
                                                         const FiniteQuandle& target,
                                                         std::uint64_t cap = Caps{}.hom_nodes) {
    const int n = q.size(), m = target.size();
    std::vector<std::vector<int>> result;
    std::vector<int> f(n, -1);
    std::uint64_t nodes = 0;

    auto consistent = [&](int x) {
        // Check every relation involving x whose participants are assigned.
        for (int y = 0; y < n; ++y) {
            if (f[y] == -1) continue;
            int xy = q.op(x, y), yx = q.op(y, x);
            if (f[xy] != -1 && target.op(f[x], f[y]) != f[xy]) return false;
            if (f[yx] != -1 && target.op(f[y], f[x]) != f[yx]) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int x) -> void {
        if (x == n) {
            result.push_back(f);
            return;
        }
        for (int v = 0; v < m; ++v) {
            if (++nodes > cap) throw ResourceError("enumerate_morphisms exceeded node cap");
            f[x] = v;
            if (consistent(x)) self(self, x + 1);
            f[x] = -1;
        }
    };
    rec(rec, 0);
    return result;
}

inline bool is_morphism(const FiniteQuandle& q, const FiniteQuandle& target,
                        const std::vector<int>& f) {
    if (f.size() != static_cast<std::size_t>(q.size())) return false;
    for (int v : f)
        if (v < 0 || v >= target.size()) return false;
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (f[q.op(x, y)] != target.op(f[x], f[y])) return false;
    return true;
}

// Commuting-pair criterion for non-injectivity of the natural map into the
// enveloping group: if x > y = y but y > x != x then x and y > x are distinct
// quandle elements with the same image.  Returns that pair for the first such
// (x, y) in lexicographic order, or nullopt when the criterion never fires.
inline std::optional<std::pair<int, int>> non_injectivity_witness(const FiniteQuandle& q) {
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (q.op(x, y) == y && q.op(y, x) != x) return std::make_pair(x, q.op(y, x));
    return std::nullopt;
}

}  // namespace qf
