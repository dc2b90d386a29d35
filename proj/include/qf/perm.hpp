#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "qf/caps.hpp"
#include "qf/errors.hpp"
#include "qf/matrix.hpp"

namespace qf {

// Permutation of {0, ..., n-1} stored as an image table.
// Composition convention (pinned; everything downstream relies on it):
//   (a.compose(b))(i) == a(b(i))        i.e. b acts first.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::size_t n) : im_(n) { std::iota(im_.begin(), im_.end(), 0); }
    explicit Permutation(std::vector<int> images) : im_(std::move(images)) {
        std::vector<bool> seen(im_.size(), false);
        for (int v : im_) {
            if (v < 0 || static_cast<std::size_t>(v) >= im_.size() || seen[v])
                throw DomainError("not a permutation");
            seen[v] = true;
        }
    }

    std::size_t degree() const { return im_.size(); }
    int operator()(int i) const { return im_[i]; }
    const std::vector<int>& images() const { return im_; }

    Permutation compose(const Permutation& b) const {
        if (degree() != b.degree()) throw DomainError("permutation degree mismatch");
        std::vector<int> r(im_.size());
        for (std::size_t i = 0; i < im_.size(); ++i) r[i] = im_[b.im_[i]];
        Permutation p;
        p.im_ = std::move(r);
        return p;
    }

    Permutation inverse() const {
        std::vector<int> r(im_.size());
        for (std::size_t i = 0; i < im_.size(); ++i) r[im_[i]] = static_cast<int>(i);
        Permutation p;
        p.im_ = std::move(r);
        return p;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < im_.size(); ++i)
            if (im_[i] != static_cast<int>(i)) return false;
        return true;
    }

    // Multiplicative order: lcm of cycle lengths.
    unsigned long order() const {
        std::vector<bool> seen(im_.size(), false);
        Int l = 1;
        for (std::size_t i = 0; i < im_.size(); ++i) {
            if (seen[i]) continue;
            unsigned long len = 0;
            for (std::size_t j = i; !seen[j]; j = im_[j]) {
                seen[j] = true;
                ++len;
            }
            mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), len);
        }
        if (!l.fits_ulong_p()) throw ResourceError("permutation order exceeds machine range");
        return l.get_ui();
    }

    auto operator<=>(const Permutation&) const = default;

  private:
    std::vector<int> im_;
};

inline Permutation commutator(const Permutation& a, const Permutation& b) {
    return a.compose(b).compose(a.inverse()).compose(b.inverse());
}

// A permutation group held by explicit element list.  `elements` is in BFS
// order from the identity (generators tried in the given order), which makes
// every derived artifact deterministic.
struct PermGroup {
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;
    std::map<Permutation, int> position;

    std::size_t order() const { return elements.size(); }

    int index_of(const Permutation& p) const {
        auto it = position.find(p);
        return it == position.end() ? -1 : it->second;
    }
    bool contains(const Permutation& p) const { return position.count(p) > 0; }

    bool is_abelian() const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (generators[i].compose(generators[j]) != generators[j].compose(generators[i]))
                    return false;
        return true;
    }

    bool is_trivial() const { return elements.size() == 1; }
};

// Closure of `gens` under composition, BFS from the identity.  ResourceError
// past `cap` elements.
inline PermGroup subgroup_closure(std::vector<Permutation> gens, std::uint64_t cap) {
    if (gens.empty()) throw DomainError("subgroup_closure: need at least one generator for the degree");
    const std::size_t n = gens[0].degree();
    for (const auto& g : gens)
        if (g.degree() != n) throw DomainError("subgroup_closure: mixed degrees");

    PermGroup g;
    g.generators = std::move(gens);
    Permutation id(n);
    g.elements.push_back(id);
    g.position.emplace(id, 0);
    for (std::size_t head = 0; head < g.elements.size(); ++head) {
        Permutation cur = g.elements[head];  // copy: vector may reallocate
        for (const auto& gen : g.generators) {
            Permutation nxt = cur.compose(gen);
            if (g.position.count(nxt)) continue;
            if (g.elements.size() >= cap) throw ResourceError("subgroup closure exceeded cap");
            g.position.emplace(nxt, static_cast<int>(g.elements.size()));
            g.elements.push_back(std::move(nxt));
        }
    }
    return g;
}

// Subgroup series, as chains of sorted element lists.
struct GroupSeries {
    enum class Kind { lower_central, derived };
    Kind kind;
    std::vector<std::vector<Permutation>> chain;  // chain[0] = whole group
    bool reached_trivial = false;                 // last term == {id}
};

namespace detail {

inline std::vector<Permutation> sorted_elements(const PermGroup& g) {
    std::vector<Permutation> v = g.elements;
    std::sort(v.begin(), v.end());
    return v;
}

// Subgroup generated by all commutators [a, b], a in A, b in B.
inline std::vector<Permutation> commutator_subgroup(const std::vector<Permutation>& a,
                                                    const std::vector<Permutation>& b,
                                                    std::uint64_t cap) {
    if (a.empty() || b.empty()) throw DomainError("commutator_subgroup: empty input");
    std::vector<Permutation> gens;
    gens.push_back(Permutation(a[0].degree()));
    for (const auto& x : a)
        for (const auto& y : b) {
            Permutation c = commutator(x, y);
            if (!c.is_identity()) gens.push_back(std::move(c));
        }
    PermGroup sub = subgroup_closure(std::move(gens), cap);
    return sorted_elements(sub);
}

}  // namespace detail

// Lower central series G = G_1 >= G_2 = [G_1, G] >= G_3 = [G_2, G] >= ...
// Stops at the first repeat (which is {id} exactly when G is nilpotent).
inline GroupSeries lower_central_series(const PermGroup& g, std::uint64_t cap = Caps{}.closure) {
    GroupSeries s{GroupSeries::Kind::lower_central, {}, false};
    std::vector<Permutation> whole = detail::sorted_elements(g);
    s.chain.push_back(whole);
    for (;;) {
        std::vector<Permutation> next = detail::commutator_subgroup(s.chain.back(), whole, cap);
        if (next == s.chain.back()) break;
        s.chain.push_back(std::move(next));
    }
    s.reached_trivial = s.chain.back().size() == 1;
    return s;
}

// Derived series G >= G' = [G, G] >= G'' = ...
inline GroupSeries derived_series(const PermGroup& g, std::uint64_t cap = Caps{}.closure) {
    GroupSeries s{GroupSeries::Kind::derived, {}, false};
    s.chain.push_back(detail::sorted_elements(g));
    for (;;) {
        std::vector<Permutation> next =
            detail::commutator_subgroup(s.chain.back(), s.chain.back(), cap);
        if (next == s.chain.back()) break;
        s.chain.push_back(std::move(next));
    }
    s.reached_trivial = s.chain.back().size() == 1;
    return s;
}

inline bool is_nilpotent(const PermGroup& g, std::uint64_t cap = Caps{}.closure) {
    return lower_central_series(g, cap).reached_trivial;
}

inline bool is_solvable(const PermGroup& g, std::uint64_t cap = Caps{}.closure) {
    return derived_series(g, cap).reached_trivial;
}

}  // namespace qf
