#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qf/caps.hpp"
#include "qf/envelope.hpp"
#include "qf/errors.hpp"
#include "qf/matrix.hpp"
#include "qf/word.hpp"

// Integer matrix representations.
//
// A finitely generated abelian group Z^r x prod Z/m_i has a faithful integer
// representation by block-diagonal matrices: each Z/m_i acts by the m_i x m_i
// cyclic shift, each Z factor by the unipotent [[1,1],[0,1]].  Inducing such a
// representation of the kernel K up the finite-index extension
// K <= G(Q) -> Inn(Q) gives block-monomial integer matrices for the whole
// group - one kernel-sized block per transversal element, placed by the inn
// action and filled through the cocycle.  Induction from a faithful kernel
// representation is faithful here because the blocks see K exactly and the
// block pattern sees Inn(Q) exactly.

namespace qf {

// Images of a fixed generating family.  For kernel representations the
// generators are the torsion factors first, then the free factors, matching
// FgAbelian.  For quandle representations there is one image per generator x.
struct GroupRep {
    std::size_t dim = 0;
    std::vector<IntMatrix> images;
};

namespace detail {

inline unsigned long small_ulong(const Int& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p()) throw ResourceError(std::string(what) + " out of range");
    return v.get_ui();
}

// m x m cyclic shift: e_j -> e_{j+1 mod m}; entry (i, j) = 1 iff j = i-1 mod m.
inline IntMatrix cyclic_shift(std::size_t m) {
    IntMatrix s(m, m);
    s(0, m - 1) = 1;
    for (std::size_t i = 1; i < m; ++i) s(i, i - 1) = 1;
    return s;
}

}  // namespace detail

// Matrix power with a signed bignum exponent.  Negative exponents go through
// the integer inverse, so the base must be unimodular for them.
inline IntMatrix int_pow(const IntMatrix& m, const Int& e) {
    if (e < 0) return int_pow(unimodular_inverse(m), Int(-e));
    IntMatrix acc = IntMatrix::identity(m.rows()), base = m;
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (mp_bitcnt_t b = 0; b < bits; ++b) {
        if (mpz_tstbit(e.get_mpz_t(), b)) acc = acc * base;
        if (b + 1 < bits) base = base * base;
    }
    return acc;
}

// The canonical faithful integer representation of a finitely generated
// abelian group: torsion blocks first (cyclic shifts), then one unipotent
// 2x2 block per free factor.
inline GroupRep abelian_faithful_rep(const FgAbelian& a) {
    std::vector<std::size_t> sizes;
    sizes.reserve(a.torsion.size() + a.rank);
    for (const Int& m : a.torsion) sizes.push_back(detail::small_ulong(m, "torsion modulus"));
    for (std::size_t i = 0; i < a.rank; ++i) sizes.push_back(2);

    GroupRep rep;
    for (std::size_t s : sizes) rep.dim += s;
    std::size_t off = 0;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        IntMatrix img = IntMatrix::identity(rep.dim);
        if (g < a.torsion.size()) {
            img.set_block(off, off, detail::cyclic_shift(sizes[g]));
        } else {
            img(off, off + 1) = 1;
        }
        rep.images.push_back(std::move(img));
        off += sizes[g];
    }
    return rep;
}

// Image of a kernel element given by coordinates: the commuting product of
// generator images raised to the coordinate exponents.
inline IntMatrix rep_eval(const GroupRep& krep, const KCoordinates& c) {
    if (krep.images.size() != c.torsion_part.size() + c.free_part.size())
        throw DomainError("kernel representation does not match the coordinate shape");
    IntMatrix out = IntMatrix::identity(krep.dim);
    std::size_t g = 0;
    for (const Int& e : c.torsion_part) out = out * int_pow(krep.images[g++], e);
    for (const Int& e : c.free_part) out = out * int_pow(krep.images[g++], e);
    return out;
}

// Contract checks for a kernel representation fed to induction: one image per
// abstract generator, commuting, invertible, and killing the torsion moduli.
inline void check_kernel_rep(const FgAbelian& k, const GroupRep& krep) {
    if (krep.images.size() != k.torsion.size() + k.rank)
        throw DomainError("kernel representation has the wrong number of generator images");
    const IntMatrix id = IntMatrix::identity(krep.dim);
    for (const IntMatrix& m : krep.images) {
        if (m.rows() != krep.dim || m.cols() != krep.dim)
            throw DomainError("kernel representation image has the wrong shape");
        if (det(m) == 0) throw DomainError("non-invertible matrix");
    }
    for (std::size_t i = 0; i < k.torsion.size(); ++i)
        if (krep.images[i].pow(detail::small_ulong(k.torsion[i], "torsion modulus")) != id)
            throw DomainError("kernel representation breaks a torsion relation");
    for (std::size_t i = 0; i < krep.images.size(); ++i)
        for (std::size_t j = i + 1; j < krep.images.size(); ++j)
            if (krep.images[i] * krep.images[j] != krep.images[j] * krep.images[i])
                throw DomainError("kernel representation images do not commute");
}

// Image of an arbitrary model element under the induced representation.  For
// g = (a, h) the only nonzero block in block-column j sits in block-row h*j
// and equals the kernel image of a + c(h, j): that is the K part of g * t_j
// relative to t_{h j}.
inline IntMatrix induced_image(const EnvelopeModel& m, const GroupRep& krep, const NormalForm& g) {
    const std::size_t N = m.transversal_size, d = krep.dim;
    IntMatrix out(N * d, N * d);
    for (std::size_t j = 0; j < N; ++j) {
        std::size_t i = static_cast<std::size_t>(m.mul_table[g.inn_index][static_cast<int>(j)]);
        out.set_block(i * d, j * d,
                      rep_eval(krep, m.k_add(g.k, m.cocycle[g.inn_index][static_cast<int>(j)])));
    }
    return out;
}

// Induce a kernel representation up to the whole model; returns the images of
// the quandle generators, using the model's BFS transversal for block order.
inline GroupRep induced_rep(const EnvelopeModel& m, const GroupRep& krep) {
    check_kernel_rep(m.k, krep);
    GroupRep rep;
    rep.dim = m.transversal_size * krep.dim;
    rep.images.reserve(m.gen_nf.size());
    for (const NormalForm& g : m.gen_nf) rep.images.push_back(induced_image(m, krep, g));
    return rep;
}

// ---- block structure helpers -------------------------------------------------

// Nonzero d x d blocks of a square matrix on the block grid, row-major.
inline std::vector<std::tuple<std::size_t, std::size_t, IntMatrix>> nonzero_blocks(
    const IntMatrix& m, std::size_t d) {
    if (d == 0 || m.rows() != m.cols() || m.rows() % d != 0)
        throw DomainError("matrix does not split into blocks of that size");
    const std::size_t nb = m.rows() / d;
    std::vector<std::tuple<std::size_t, std::size_t, IntMatrix>> out;
    for (std::size_t bi = 0; bi < nb; ++bi)
        for (std::size_t bj = 0; bj < nb; ++bj) {
            IntMatrix blk(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) blk(i, j) = m(bi * d + i, bj * d + j);
            if (!blk.is_zero()) out.emplace_back(bi, bj, std::move(blk));
        }
    return out;
}

// Exactly one nonzero block in every block row and every block column.
inline bool is_block_monomial(const IntMatrix& m, std::size_t d) {
    auto blocks = nonzero_blocks(m, d);
    const std::size_t nb = m.rows() / d;
    if (blocks.size() != nb) return false;
    std::vector<int> row_seen(nb, 0), col_seen(nb, 0);
    for (const auto& [bi, bj, blk] : blocks) {
        row_seen[bi] += 1;
        col_seen[bj] += 1;
    }
    for (std::size_t i = 0; i < nb; ++i)
        if (row_seen[i] != 1 || col_seen[i] != 1) return false;
    return true;
}

// ---- consistency and faithfulness ---------------------------------------------

struct VerifyResult {
    bool ok = true;
    int x = -1, y = -1;  // first pair with  M_x M_y != M_{x>y} M_x
};

// Check that per-element matrices satisfy the quandle's conjugation relations.
// Non-invertible input is a hard error; a broken relation is reported with its
// witness pair.
inline VerifyResult verify_rep(const FiniteQuandle& q, const std::vector<IntMatrix>& images) {
    if (images.size() != static_cast<std::size_t>(q.size()))
        throw DomainError("need one matrix per quandle element");
    for (const IntMatrix& m : images)
        if (m.rows() != m.cols() || det(m) == 0) throw DomainError("non-invertible matrix");
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (images[x] * images[y] != images[q.op(x, y)] * images[x])
                return VerifyResult{false, x, y};
    return VerifyResult{};
}

struct ProbeResult {
    bool ok = true;
    unsigned long words_checked = 0;
    GroupWord witness_a, witness_b;  // on failure: same matrix, different element
                                     // (or same element, different matrix)
};

namespace detail {

template <typename M>
struct ProbeLetters {
    std::vector<M> pos, neg;
};

template <typename M>
ProbeResult probe_impl(const EnvelopeModel& model, const ProbeLetters<M>& letters,
                       std::size_t length_bound, const M& id) {
    ProbeResult res;
    // matrix key -> (element key, word)  and  element key -> (matrix key, word)
    std::map<std::string, std::pair<std::string, GroupWord>> by_matrix;
    std::map<std::string, std::pair<std::string, GroupWord>> by_element;
    const int n = model.q.size();

    GroupWord word;
    std::vector<M> stack{id};
    std::vector<NormalForm> nfs{model.identity_nf()};

    auto visit = [&]() -> bool {  // returns false on detected collision
        res.words_checked += 1;
        std::string mk = stack.back().key();
        std::string ek = model.nf_key(nfs.back());
        auto [it, fresh] = by_matrix.try_emplace(mk, ek, word);
        if (!fresh && it->second.first != ek) {
            res.ok = false;
            res.witness_a = it->second.second;
            res.witness_b = word;
            return false;
        }
        auto [it2, fresh2] = by_element.try_emplace(ek, mk, word);
        if (!fresh2 && it2->second.first != mk) {
            res.ok = false;
            res.witness_a = it2->second.second;
            res.witness_b = word;
            return false;
        }
        return true;
    };

    // Depth-first over all signed words up to the bound.
    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (!visit()) return false;
        if (depth == length_bound) return true;
        for (int g = 0; g < n; ++g)
            for (int sign : {1, -1}) {
                word.push_back({g, sign});
                stack.push_back(stack.back() * (sign > 0 ? letters.pos[g] : letters.neg[g]));
                nfs.push_back(model.nf_mul(
                    nfs.back(), sign > 0 ? model.gen_nf[g] : model.nf_inv(model.gen_nf[g])));
                bool go = self(self, depth + 1);
                word.pop_back();
                stack.pop_back();
                nfs.pop_back();
                if (!go) return false;
            }
        return true;
    };
    dfs(dfs, 0);
    return res;
}

}  // namespace detail

// Exhaustively compare matrices against exact normal forms on every signed
// word of length <= length_bound.  Any collision in either direction (equal
// matrices for distinct elements, or distinct matrices for one element) is
// returned with witness words.  Works over Z when all images are unimodular,
// otherwise over Q.
inline ProbeResult faithfulness_probe(const EnvelopeModel& model,
                                      const std::vector<IntMatrix>& images,
                                      std::size_t length_bound) {
    if (images.size() != static_cast<std::size_t>(model.q.size()))
        throw DomainError("need one matrix per quandle generator");
    for (const IntMatrix& m : images)
        if (m.rows() != m.cols() || m.rows() != images[0].rows())
            throw DomainError("probe images must be square and equally sized");

    detail::ProbeLetters<IntMatrix> zl;
    zl.pos = images;
    bool integral = true;
    for (const IntMatrix& m : images) {
        try {
            zl.neg.push_back(unimodular_inverse(m));
        } catch (const DomainError&) {
            integral = false;
            break;
        }
    }
    if (integral)
        return detail::probe_impl(model, zl, length_bound,
                                  IntMatrix::identity(images[0].rows()));

    detail::ProbeLetters<RatMatrix> ql;
    for (const IntMatrix& m : images) {
        ql.pos.push_back(to_rational(m));
        ql.neg.push_back(inverse(ql.pos.back()));
    }
    return detail::probe_impl(model, ql, length_bound, RatMatrix::identity(images[0].rows()));
}

// ---- the per-quandle representation -------------------------------------------

// Integer matrices, one per element of Q.  The construction always runs on the
// image quandle Q_conj (the largest quotient that any conjugation
// representation can see); `reduced_to_image` records whether that collapsed
// anything.  Elements of Q map to the matrix of their image class.
struct QuandleRep {
    EnvelopeModel model;        // model of the image quandle
    std::vector<int> theta;     // original element -> image class
    bool reduced_to_image = false;
    GroupRep k_rep;             // kernel representation used for induction
    GroupRep generator_rep;     // images of the image-quandle generators
    std::vector<IntMatrix> images;  // one per element of the original Q
};

inline QuandleRep quandle_rep(const FiniteQuandle& q, const Caps& caps = Caps::from_env()) {
    EnvelopeModel first = build_envelope(q, caps);
    QConj qc = q_conj(first);
    const bool collapsed = qc.quandle.size() != q.size();
    EnvelopeModel model = collapsed ? build_envelope(qc.quandle, caps) : std::move(first);

    GroupRep krep = abelian_faithful_rep(model.k);
    GroupRep gens = induced_rep(model, krep);
    std::vector<IntMatrix> images;
    images.reserve(qc.theta.size());
    for (int cls : qc.theta) images.push_back(gens.images[static_cast<std::size_t>(cls)]);
    return QuandleRep{std::move(model),  std::move(qc.theta), collapsed,
                      std::move(krep),   std::move(gens),     std::move(images)};
}

// ---- separating finite quotients ----------------------------------------------

struct SeparationResult {
    unsigned long prime = 0;
    std::size_t dim = 0;
    std::size_t block_dim = 0;  // kernel block size inside the induced matrices
    std::vector<IntMatrix> images;  // one per element of Q, entries in [0, p)
    std::vector<int> theta;
    bool reduced_to_image = false;
};

namespace detail {

inline bool is_prime_ul(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

// Smallest prime p <= prime_cap such that reducing the integer representation
// mod p still separates the image classes of Q.  The conjugation relations
// survive any reduction; only distinctness can degrade.
inline SeparationResult separating_finite_quotient(const FiniteQuandle& q,
                                                   unsigned long prime_cap = 97,
                                                   const Caps& caps = Caps::from_env()) {
    QuandleRep rep = quandle_rep(q, caps);
    const int n = q.size();
    for (unsigned long p = 2; p <= prime_cap; ++p) {
        if (!detail::is_prime_ul(p)) continue;
        std::vector<IntMatrix> red;
        red.reserve(static_cast<std::size_t>(n));
        for (const IntMatrix& m : rep.images) red.push_back(reduce_mod(m, Int(p)));
        bool separated = true;
        for (int x = 0; x < n && separated; ++x)
            for (int y = x + 1; y < n; ++y)
                if (rep.theta[x] != rep.theta[y] && red[x] == red[y]) {
                    separated = false;
                    break;
                }
        if (!separated) continue;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (reduce_mod(red[x] * red[y], Int(p)) !=
                    reduce_mod(red[q.op(x, y)] * red[x], Int(p)))
                    throw InternalError("mod-p reduction broke a conjugation relation");
        return SeparationResult{p,
                                rep.generator_rep.dim,
                                rep.k_rep.dim,
                                std::move(red),
                                std::move(rep.theta),
                                rep.reduced_to_image};
    }
    throw ResourceError("no separating prime found up to the cap");
}

}  // namespace qf
