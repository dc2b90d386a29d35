#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qf/envelope.hpp"

// Subgroups of G(Q) through the central-extension model.
//
// A commutator [a t_i, b t_j] equals [t_i, t_j] because K is central, so the
// derived subgroup is generated by the finitely many [t_i, t_j].  For any
// subgroup H given by normal-form generators, a BFS transversal of H over its
// image D = h(H) <= Inn(Q) plus Schreier's lemma produces generators of
// H ∩ K as explicit K elements; the lattice they span (together with the
// torsion relations of K) gives H ∩ K, and |H| = |D| * |H ∩ K| when finite.

namespace qf {

namespace detail {

// Lift a K element to the integer vector (free | torsion) in Z^{r+t}.
inline IntVec lift_k(const EnvelopeModel& m, const KCoordinates& k) {
    IntVec v;
    v.reserve(m.k.rank + m.k.torsion.size());
    for (const Int& x : k.free_part) v.push_back(x);
    for (const Int& x : k.torsion_part) v.push_back(x);
    return v;
}

// Torsion relation rows of K inside Z^{r+t}.
inline IntRows torsion_relations(const EnvelopeModel& m) {
    const std::size_t r = m.k.rank, t = m.k.torsion.size();
    IntRows rows;
    rows.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        IntVec row(r + t);
        row[r + i] = m.k.torsion[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

// A subgroup H <= G(Q) described by its inn image and its K part.
struct SubgroupData {
    std::vector<int> inn_indices;         // sorted element indices of D = h(H)
    std::map<int, NormalForm> coset_rep;  // BFS transversal of (H∩K)\H, keyed by inn index
    IntRows kpart_hermite;                // Hermite basis of  lift(H∩K) + torsion relations
    FgAbelian kpart;                      // structure of H ∩ K
    bool finite = false;
    std::optional<Int> order;             // |H| = |D| * |H∩K| when finite
};

// Subgroup generated by the given normal forms, via Schreier's lemma over the
// coset space of H ∩ K in H (which D indexes: K is the kernel of h).
inline SubgroupData subgroup_from_generators(const EnvelopeModel& m,
                                             const std::vector<NormalForm>& gens) {
    // Close the generating set under inverses; Schreier's lemma needs it.
    std::vector<NormalForm> s;
    {
        std::set<std::string> seen;
        for (const NormalForm& g : gens)
            for (const NormalForm& h : {g, m.nf_inv(g)}) {
                if (h == m.identity_nf()) continue;
                if (seen.insert(m.nf_key(h)).second) s.push_back(h);
            }
    }

    SubgroupData out;
    // BFS transversal over the inn image.
    std::map<int, NormalForm> rep;
    rep.emplace(0, m.identity_nf());
    std::vector<int> queue{0};
    std::set<IntVec> kvecs;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int d = queue[head];
        for (const NormalForm& g : s) {
            NormalForm prod = m.nf_mul(rep.at(d), g);
            auto it = rep.find(prod.inn_index);
            if (it == rep.end()) {
                rep.emplace(prod.inn_index, prod);
                queue.push_back(prod.inn_index);
            } else {
                // Schreier generator u_d g u_e^{-1} lies in H ∩ K.
                NormalForm k = m.nf_mul(prod, m.nf_inv(it->second));
                if (k.inn_index != 0) throw InternalError("Schreier element escaped the kernel");
                if (!k.k.is_zero()) kvecs.insert(detail::lift_k(m, k.k));
            }
        }
    }

    for (const auto& [idx, nf] : rep) out.inn_indices.push_back(idx);
    std::sort(out.inn_indices.begin(), out.inn_indices.end());
    out.coset_rep = std::move(rep);

    // H ∩ K as a subgroup of K: the lattice U spanned by the Schreier
    // elements and the torsion relations Λ, modulo Λ.
    const std::size_t dim = m.k.rank + m.k.torsion.size();
    IntRows u_rows(kvecs.begin(), kvecs.end());
    IntRows lambda = detail::torsion_relations(m);
    for (const IntVec& row : lambda) u_rows.push_back(row);
    out.kpart_hermite = hermite_basis(u_rows, dim);

    IntRows w;  // Λ in the coordinates of the Hermite basis of U
    for (const IntVec& row : lambda) {
        auto coeff = solve_in_lattice(out.kpart_hermite, row);
        if (!coeff) throw InternalError("torsion relations escaped their own lattice");
        w.push_back(*coeff);
    }
    out.kpart = FgAbelian::from_presentation(w, out.kpart_hermite.size());

    out.finite = out.kpart.is_finite();
    if (out.finite) out.order = Int(out.inn_indices.size()) * *out.kpart.order();
    return out;
}

// Membership test for the subgroup described by `sub`.
inline bool subgroup_contains(const EnvelopeModel& m, const SubgroupData& sub,
                              const NormalForm& g) {
    auto it = sub.coset_rep.find(g.inn_index);
    if (it == sub.coset_rep.end()) return false;
    NormalForm k = m.nf_mul(g, m.nf_inv(it->second));
    if (k.inn_index != 0) throw InternalError("coset representative mismatch");
    return lattice_contains(sub.kpart_hermite, detail::lift_k(m, k.k));
}

// Derived subgroup [G(Q), G(Q)], generated by all transversal commutators.
inline SubgroupData derived_subgroup_data(const EnvelopeModel& m) {
    const std::size_t n = m.transversal_size;
    std::vector<NormalForm> gens;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            NormalForm ti = m.transversal_nf(static_cast<int>(i));
            NormalForm tj = m.transversal_nf(static_cast<int>(j));
            NormalForm c = m.nf_mul(m.nf_mul(m.nf_mul(ti, tj), m.nf_inv(ti)), m.nf_inv(tj));
            if (c == m.identity_nf()) continue;
            if (seen.insert(m.nf_key(c)).second) gens.push_back(c);
        }
    return subgroup_from_generators(m, gens);
}

// ---- nilpotency through the model -------------------------------------------
//
// Γ_{k+1} = [Γ_k, G] is generated by commutators of transversal elements with
// inn parts in D_k = h(Γ_k), again because K is central.  So the chain of inn
// images D_1 = Inn(Q) >= D_2 >= ... computed purely in the index tables drives
// nilpotency: once some D_k is trivial, Γ_k is central and Γ_{k+1} = 1.

struct ModelNilpotency {
    bool nilpotent = false;
    std::vector<std::size_t> chain_orders;  // |D_1|, |D_2|, ... until stable
};

namespace detail {

// Closure of a set of inn indices under the model's multiplication table.
inline std::vector<int> index_closure(const EnvelopeModel& m, const std::set<int>& gens) {
    std::vector<int> elems{0};
    std::set<int> seen{0};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (int g : gens) {
            int nxt = m.mul_table[elems[head]][g];
            if (seen.insert(nxt).second) elems.push_back(nxt);
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

}  // namespace detail

inline ModelNilpotency model_nilpotency(const EnvelopeModel& m) {
    ModelNilpotency out;
    std::vector<int> d(m.transversal_size);
    for (std::size_t i = 0; i < m.transversal_size; ++i) d[i] = static_cast<int>(i);
    out.chain_orders.push_back(d.size());
    for (;;) {
        std::set<int> gens;
        for (int a : d)
            for (std::size_t s = 0; s < m.transversal_size; ++s) {
                int as = m.mul_table[a][s];
                int inv = m.mul_table[m.inv_table[a]][m.inv_table[s]];
                gens.insert(m.mul_table[as][inv]);
            }
        std::vector<int> next = detail::index_closure(m, gens);
        if (next == d) break;
        d = std::move(next);
        out.chain_orders.push_back(d.size());
    }
    out.nilpotent = d.size() == 1;
    return out;
}

// ---- torsion elements, independently of the subgroup machinery --------------
//
// An element g = (a, t_i) has g^o = (o*a + c_i, 1) for o = order of the inn
// part, where c_i is the K part of t_i^o.  So g is torsion iff o divides the
// free part of c_i componentwise with quotient -a_free; the torsion
// coordinates of a are then arbitrary.  This costs one power per inn element
// and never looks at commutators -- a genuinely independent route to the
// torsion subgroup.

inline Int torsion_count(const EnvelopeModel& m) {
    Int tor_size = 1;
    for (const Int& t : m.k.torsion) tor_size *= t;
    Int count = 0;
    for (std::size_t i = 0; i < m.transversal_size; ++i) {
        unsigned long o = m.elt_order[i];
        NormalForm p = m.nf_pow(m.transversal_nf(static_cast<int>(i)), o);
        if (p.inn_index != 0) throw InternalError("inn-order power escaped the kernel");
        bool ok = true;
        for (const Int& v : p.k.free_part)
            if (v % o != 0) {
                ok = false;
                break;
            }
        if (ok) count += tor_size;
    }
    return count;
}

// The torsion elements themselves (ResourceError when there are too many).
inline std::vector<NormalForm> torsion_elements(const EnvelopeModel& m,
                                                std::uint64_t cap = 100000) {
    Int total = torsion_count(m);
    if (total > static_cast<unsigned long>(cap)) throw ResourceError("too many torsion elements");
    std::vector<NormalForm> out;
    for (std::size_t i = 0; i < m.transversal_size; ++i) {
        unsigned long o = m.elt_order[i];
        NormalForm p = m.nf_pow(m.transversal_nf(static_cast<int>(i)), o);
        bool ok = true;
        IntVec a_free;
        for (const Int& v : p.k.free_part) {
            if (v % o != 0) {
                ok = false;
                break;
            }
            a_free.push_back(Int(-v / o));
        }
        if (!ok) continue;
        // Enumerate all torsion coordinates.
        IntVec tor(m.k.torsion.size());
        for (;;) {
            out.push_back(NormalForm{static_cast<int>(i), KCoordinates{a_free, tor}});
            std::size_t p2 = 0;
            while (p2 < tor.size()) {
                tor[p2] += 1;
                if (tor[p2] < m.k.torsion[p2]) break;
                tor[p2] = 0;
                ++p2;
            }
            if (p2 == tor.size()) break;
        }
    }
    if (Int(out.size()) != total) throw InternalError("torsion enumeration disagrees with count");
    return out;
}

// ---- quandle-level conveniences ----------------------------------------------

inline SubgroupData derived_subgroup_data(const FiniteQuandle& q,
                                          const Caps& caps = Caps::from_env()) {
    return derived_subgroup_data(build_envelope(q, caps));
}

// Size of the torsion subgroup of G(Q).  Only defined when the model is
// nilpotent, where the torsion elements form a finite subgroup.
inline Int torsion_subgroup_order(const EnvelopeModel& m) {
    if (!model_nilpotency(m).nilpotent)
        throw DomainError("torsion subgroup order requires a nilpotent enveloping group");
    return torsion_count(m);
}

inline Int torsion_subgroup_order(const FiniteQuandle& q, const Caps& caps = Caps::from_env()) {
    return torsion_subgroup_order(build_envelope(q, caps));
}

}  // namespace qf
