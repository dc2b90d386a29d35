#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qf/abelian.hpp"
#include "qf/caps.hpp"
#include "qf/derived.hpp"
#include "qf/envelope.hpp"
#include "qf/errors.hpp"
#include "qf/group.hpp"
#include "qf/matrix.hpp"
#include "qf/quandle.hpp"

// Aggregated invariants of a finite quandle and its enveloping group, plus
// two theorem-checking harnesses:
//
//  * rational cohomology of G(Q) is an exterior algebra on r = #orbits
//    generators, so the betti numbers are binomial coefficients and the
//    Malcev Lie algebra is abelian of dimension r;
//  * morphisms from an indecomposable quandle into the conjugation quandle of
//    a nilpotent (or uniquely divisible) group are constant - checked by
//    exhaustive enumeration resp. a commutation test.

namespace qf {

struct InvariantReport {
    std::size_t orbit_count = 0;
    std::size_t component_count = 0;
    FgAbelian abelianization;
    int qconj_size = 0;
    bool injective = false;
    bool nilpotent = false;
    bool solvable = false;
    std::vector<Int> betti;  // b_0 .. b_r
    std::size_t malcev_dim = 0;
    FgAbelian center;
    std::optional<bool> gamma2_finite;  // present only when nilpotent
    std::optional<Int> gamma2_order;    // present when gamma2_finite = true
};

// Coefficients of (1+t)^r: the betti numbers b_0..b_r.
inline std::vector<Int> poincare_polynomial(std::size_t r) {
    std::vector<Int> c(r + 1);
    for (std::size_t k = 0; k <= r; ++k)
        mpz_bin_uiui(c[k].get_mpz_t(), static_cast<unsigned long>(r),
                     static_cast<unsigned long>(k));
    return c;
}

inline InvariantReport full_report(const FiniteQuandle& q, const Caps& caps = Caps::from_env()) {
    InvariantReport rep;
    rep.orbit_count = orbits(q).size();
    rep.component_count = indecomposable_components(q, caps.components).size();
    rep.abelianization = abelianization(q);
    if (rep.abelianization.rank != rep.orbit_count)
        throw InternalError("first betti number disagrees with the abelianization rank");

    EnvelopeModel model = build_envelope(q, caps);
    QConj qc = q_conj(model);
    rep.qconj_size = qc.quandle.size();
    rep.injective = rep.qconj_size == q.size();

    // Three independent routes to the same flag.
    const bool nil_inn = is_nilpotent(model.inn);
    const bool nil_image = is_nilpotent(inner_group(qc.quandle, caps.inn));
    const bool nil_model = model_nilpotency(model).nilpotent;
    if (nil_inn != nil_image || nil_inn != nil_model)
        throw InternalError("nilpotency verdicts disagree");
    rep.nilpotent = nil_inn;
    rep.solvable = is_solvable(model.inn);

    rep.betti = poincare_polynomial(rep.orbit_count);
    rep.malcev_dim = rep.orbit_count;
    rep.center = center(model, caps);

    if (rep.nilpotent) {
        SubgroupData d = derived_subgroup_data(model);
        rep.gamma2_finite = d.finite;
        if (d.finite) rep.gamma2_order = *d.order;
    }
    return rep;
}

// For nilpotent H, every morphism Q -> Conj(H) must be constant on each
// indecomposable component of Q; this enumerates all of them and checks.
inline bool nilpotent_constancy_check(const FiniteQuandle& q, const FiniteGroup& h,
                                      const Caps& caps = Caps::from_env()) {
    if (!group_is_nilpotent(h)) throw DomainError("target group is not nilpotent");
    const FiniteQuandle target = conj_quandle(h);
    const std::vector<std::vector<int>> comps = indecomposable_components(q, caps.components);
    for (const std::vector<int>& f : enumerate_morphisms(q, target, caps.hom_nodes))
        for (const std::vector<int>& comp : comps)
            for (int x : comp)
                if (f[x] != f[comp[0]]) return false;
    return true;
}

// Theorem checker: a quandle morphism into invertible matrices over Q whose
// target group the caller asserts uniquely divisible (say unipotent matrices)
// must have trivial image - all image matrices commute.  Returns that
// commutation verdict; refuses non-morphisms and unasserted targets.
inline bool assert_trivial_image(const FiniteQuandle& q, const std::vector<RatMatrix>& images,
                                 bool target_uniquely_divisible) {
    if (!target_uniquely_divisible)
        throw DomainError("caller must assert the target group is uniquely divisible");
    if (images.size() != static_cast<std::size_t>(q.size()))
        throw DomainError("need one matrix per quandle element");
    for (const RatMatrix& m : images) {
        if (m.rows() != m.cols()) throw DomainError("non-invertible matrix");
        inverse(m);  // DomainError when singular
    }
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (images[x] * images[y] != images[q.op(x, y)] * images[x])
                throw DomainError("map is not a quandle morphism");
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (images[i] * images[j] != images[j] * images[i]) return false;
    return true;
}

}  // namespace qf
