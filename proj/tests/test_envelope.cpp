#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "qf/derived.hpp"
#include "qf/envelope.hpp"
#include "qf/group.hpp"
#include "qf/word.hpp"
#include "support/corpus.hpp"
#include "support/groups.hpp"

using namespace qf;
using qftest::corpus;

namespace {

GroupWord random_word(std::mt19937& rng, int n, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, n - 1), sign(0, 1);
    GroupWord w(len(rng));
    for (auto& l : w) l = {gen(rng), sign(rng) ? 1 : -1};
    return w;
}

// Expected kernel structure per corpus member, frozen from independent runs
// of the construction cross-checked against hand-computed presentations.
struct Frozen {
    std::string name;
    std::size_t inn_order;
    std::size_t schreier_count;
    std::size_t k_rank;
    std::vector<Int> k_torsion;
    int qconj_size;
    bool injective;
};

const std::vector<Frozen>& frozen_table() {
    static const std::vector<Frozen> t = {
        {"trivial1", 1, 1, 1, {}, 1, true},
        {"trivial2", 1, 2, 2, {}, 2, true},
        {"trivial3", 1, 3, 3, {}, 3, true},
        {"trivial4", 1, 4, 4, {}, 4, true},
        {"trivial5", 1, 5, 5, {}, 5, true},
        {"trivial6", 1, 6, 6, {}, 6, true},
        {"q3", 2, 5, 2, {}, 2, false},
        {"r3", 6, 13, 1, {}, 3, true},
        {"r4", 4, 13, 2, {Int(2)}, 4, true},
        {"r5", 10, 41, 1, {}, 5, true},
    };
    return t;
}

}  // namespace

TEST_CASE("word primitives") {
    GroupWord w{{0, 1}, {1, -1}, {2, 1}};
    SECTION("inverse and concatenation") {
        REQUIRE(word_inverse(w) == GroupWord{{2, -1}, {1, 1}, {0, -1}});
        REQUIRE(word_concat(w, word_inverse(w)).size() == 6);
        REQUIRE(degree(w) == 1);
        REQUIRE(degree(word_inverse(w)) == -1);
        REQUIRE(degree(word_concat(w, w)) == 2);
    }
    SECTION("rendering") {
        REQUIRE(word_to_string(w) == "x0 x1^-1 x2");
        REQUIRE(word_to_string({}) == "1");
    }
    SECTION("validation") {
        REQUIRE_THROWS_AS(check_word({{3, 1}}, 3), DomainError);
        REQUIRE_THROWS_AS(check_word({{0, 2}}, 3), DomainError);
        REQUIRE_NOTHROW(check_word(w, 3));
    }
    SECTION("defining relators") {
        FiniteQuandle q3 = q3_example();
        auto rels = presentation(q3);
        REQUIRE(rels.size() == 9);
        // 1 > 0 = 2, so the pair (1,0) contributes x1 x0 x1^-1 x2^-1.
        REQUIRE(std::find(rels.begin(), rels.end(),
                          GroupWord{{1, 1}, {0, 1}, {1, -1}, {2, -1}}) != rels.end());
    }
    SECTION("projection to the inner group") {
        FiniteQuandle q3 = q3_example();
        REQUIRE(inn_projection(q3, {{1, 1}}) == q3.left_translation(1));
        REQUIRE(inn_projection(q3, {{1, 1}, {1, -1}}).is_identity());
        // x acting trivially contributes nothing.
        REQUIRE(inn_projection(q3, {{1, 1}, {0, 1}, {1, -1}}).is_identity());
        // Relators project to the identity.
        for (const GroupWord& r : presentation(q3))
            REQUIRE(inn_projection(q3, r).is_identity());
    }
}

TEST_CASE("envelope structure matches the frozen table") {
    auto named = corpus();
    REQUIRE(named.size() == frozen_table().size());
    for (std::size_t i = 0; i < named.size(); ++i) {
        const auto& [name, q] = named[i];
        const Frozen& f = frozen_table()[i];
        INFO(name);
        REQUIRE(name == f.name);

        EnvelopeModel m = build_envelope(q);
        REQUIRE(m.transversal_size == f.inn_order);
        REQUIRE(m.inn.order() == f.inn_order);
        REQUIRE(m.schreier_count == f.schreier_count);
        REQUIRE(m.schreier_count ==
                m.transversal_size * q.size() - (m.transversal_size - 1));
        REQUIRE(m.k.rank == f.k_rank);
        REQUIRE(m.k.torsion == f.k_torsion);

        QConj qc = q_conj(m);
        REQUIRE(qc.quandle.size() == f.qconj_size);
        REQUIRE(is_injective(m) == f.injective);
    }
}

TEST_CASE("model soundness: relators, cocycle condition, centrality") {
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        EnvelopeModel m = build_envelope(q);
        REQUIRE_NOTHROW(check_model_soundness(m));
    }
}

TEST_CASE("transversal is a shortest-word prefix-closed Schreier transversal") {
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        EnvelopeModel m = build_envelope(q);
        const std::size_t N = m.transversal_size;
        REQUIRE(m.transversal[0].empty());

        // BFS distances over the positive-letter action.
        std::vector<int> dist(N, -1);
        dist[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int x = 0; x < q.size(); ++x) {
                int c = m.act[queue[head]][x];
                if (dist[c] == -1) {
                    dist[c] = dist[queue[head]] + 1;
                    queue.push_back(c);
                }
            }

        std::set<std::vector<int>> words(m.transversal.begin(), m.transversal.end());
        REQUIRE(words.size() == N);  // distinct representatives
        for (std::size_t s = 0; s < N; ++s) {
            REQUIRE(m.transversal[s].size() == static_cast<std::size_t>(dist[s]));
            // Prefix closure.
            std::vector<int> prefix(m.transversal[s]);
            while (!prefix.empty()) {
                prefix.pop_back();
                REQUIRE(words.count(prefix) == 1);
            }
            // Each word evaluates to its own coset's inner automorphism.
            REQUIRE(inn_projection(q, m.transversal_word(static_cast<int>(s))) ==
                    m.inn.elements[s]);
        }
    }
}

TEST_CASE("normal forms are multiplicative") {
    std::mt19937 rng(424242);
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        EnvelopeModel m = build_envelope(q);
        REQUIRE(m.normal_form({}) == m.identity_nf());

        for (int trial = 0; trial < 200; ++trial) {
            GroupWord v = random_word(rng, q.size(), 8);
            GroupWord w = random_word(rng, q.size(), 8);
            NormalForm nv = m.normal_form(v), nw = m.normal_form(w);
            REQUIRE(m.normal_form(word_concat(v, w)) == m.nf_mul(nv, nw));
            REQUIRE(m.normal_form(word_inverse(w)) == m.nf_inv(nw));
            REQUIRE(m.nf_mul(nw, m.nf_inv(nw)) == m.identity_nf());
        }

        // Powers: square-and-multiply agrees with iterated multiplication.
        for (int trial = 0; trial < 10; ++trial) {
            NormalForm a = m.normal_form(random_word(rng, q.size(), 6));
            NormalForm acc = m.identity_nf();
            for (unsigned long e = 0; e <= 7; ++e) {
                REQUIRE(m.nf_pow(a, e) == acc);
                acc = m.nf_mul(acc, a);
            }
        }

        // The projection of the normal form matches the word's image.
        for (int trial = 0; trial < 50; ++trial) {
            GroupWord w = random_word(rng, q.size(), 8);
            REQUIRE(m.inn.elements[m.normal_form(w).inn_index] == inn_projection(q, w));
        }
    }
}

TEST_CASE("word problem basics") {
    FiniteQuandle r3 = dihedral_quandle(3);
    EnvelopeModel m = build_envelope(r3);

    SECTION("defining relators are trivial words") {
        for (const GroupWord& rel : presentation(r3)) REQUIRE(m.words_equal(rel, {}));
    }
    SECTION("free reduction") {
        REQUIRE(m.words_equal({{0, 1}, {0, -1}}, {}));
        REQUIRE(m.words_equal({{0, 1}, {1, 1}, {1, -1}}, {{0, 1}}));
        REQUIRE_FALSE(m.words_equal({{0, 1}}, {{1, 1}}));
        REQUIRE_FALSE(m.words_equal({{0, 1}}, {}));
    }
    SECTION("conjugation relation as an equality of words") {
        // x0 x1 x0^-1 = x_{0>1} = x2
        REQUIRE(m.words_equal({{0, 1}, {1, 1}, {0, -1}}, {{2, 1}}));
    }
    SECTION("malformed words are rejected") {
        REQUIRE_THROWS_AS(m.normal_form({{7, 1}}), DomainError);
    }
}

TEST_CASE("element orders") {
    SECTION("generators have infinite order") {
        for (const auto& [name, q] : corpus()) {
            INFO(name);
            EnvelopeModel m = build_envelope(q);
            for (int x = 0; x < q.size(); ++x) REQUIRE(m.is_infinite_order({{x, 1}}));
        }
    }
    SECTION("a degree-zero torsion element in the dihedral case") {
        EnvelopeModel m = build_envelope(dihedral_quandle(3));
        GroupWord w{{0, 1}, {1, -1}};
        REQUIRE(degree(w) == 0);
        REQUIRE_FALSE(m.is_infinite_order(w));
        GroupWord w2 = word_concat(w, w), w3 = word_concat(w2, w);
        REQUIRE_FALSE(m.words_equal(w, {}));
        REQUIRE_FALSE(m.words_equal(w2, {}));
        REQUIRE(m.words_equal(w3, {}));
    }
    SECTION("a degree-zero element of infinite order") {
        // In the trivial quandle the generators commute and are independent,
        // so x0 x1^-1 generates a free abelian factor.
        EnvelopeModel m = build_envelope(trivial_quandle(2));
        REQUIRE(m.is_infinite_order({{0, 1}, {1, -1}}));
    }
    SECTION("identity has finite order") {
        EnvelopeModel m = build_envelope(trivial_quandle(1));
        REQUIRE_FALSE(m.is_infinite_order({}));
        REQUIRE_FALSE(m.is_infinite_order({{0, 1}, {0, -1}}));
    }
}

TEST_CASE("schreier generator words carry their own coordinates") {
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        EnvelopeModel m = build_envelope(q);
        for (std::size_t s = 0; s < m.transversal_size; ++s)
            for (int x = 0; x < q.size(); ++x) {
                NormalForm nf = m.normal_form(m.schreier_word(static_cast<int>(s), x));
                REQUIRE(nf.inn_index == 0);  // lies in the kernel
                REQUIRE(nf.k == m.coord_of_schreier(static_cast<int>(s), x));
            }
    }
}

TEST_CASE("cocycle is normalized at the identity coset") {
    EnvelopeModel m = build_envelope(dihedral_quandle(3));
    for (std::size_t j = 0; j < m.transversal_size; ++j) {
        REQUIRE(m.cocycle[0][j].is_zero());
        REQUIRE(m.cocycle[j][0].is_zero());
    }
}

TEST_CASE("collapse onto the image quandle") {
    SECTION("the three-element example identifies its two trivial-acting elements") {
        EnvelopeModel m = build_envelope(q3_example());
        REQUIRE(m.gen_nf[0] == m.gen_nf[2]);
        REQUIRE(m.words_equal({{0, 1}}, {{2, 1}}));
        REQUIRE_FALSE(m.words_equal({{0, 1}}, {{1, 1}}));

        QConj qc = q_conj(m);
        REQUIRE(qc.theta == std::vector<int>{0, 1, 0});
        REQUIRE(qc.reps == std::vector<int>{0, 1});
        REQUIRE(qc.quandle == trivial_quandle(2));
        REQUIRE_FALSE(is_injective(m));
        // The image embeds into its own enveloping group.
        REQUIRE(is_injective(qc.quandle));
    }
    SECTION("injective quandles are their own image") {
        for (const auto& [name, q] : corpus()) {
            if (name == "q3") continue;
            INFO(name);
            QConj qc = q_conj(q);
            REQUIRE(qc.quandle == q);
            for (int x = 0; x < q.size(); ++x) REQUIRE(qc.theta[x] == x);
        }
    }
    SECTION("theta is a surjective morphism onto the image") {
        QConj qc = q_conj(q3_example());
        REQUIRE(is_morphism(q3_example(), qc.quandle, qc.theta));
    }
}

TEST_CASE("center of the enveloping group") {
    REQUIRE(center(q3_example()) == FgAbelian{2, {}});
    REQUIRE(center(dihedral_quandle(3)) == FgAbelian{1, {}});
    REQUIRE(center(dihedral_quandle(4)) == FgAbelian{2, {Int(2)}});
    REQUIRE(center(trivial_quandle(3)) == FgAbelian{3, {}});
    REQUIRE(center(trivial_quandle(5)) == FgAbelian{5, {}});
}

TEST_CASE("abelianization is free on the orbits") {
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        FgAbelian ab = abelianization(q);
        REQUIRE(ab.torsion.empty());
        REQUIRE(ab.rank == orbits(q).size());
    }
    REQUIRE(abelianization(dihedral_quandle(3)).rank == 1);
    REQUIRE(abelianization(q3_example()).rank == 2);
    REQUIRE(abelianization(trivial_quandle(6)).rank == 6);
}

TEST_CASE("derived subgroup of the enveloping group") {
    SECTION("frozen structure over the corpus") {
        struct D {
            std::string name;
            std::size_t inn_image;
            FgAbelian kpart;
            bool finite;
            Int order;
        };
        const std::vector<D> expected = {
            {"trivial1", 1, FgAbelian{}, true, 1}, {"trivial2", 1, FgAbelian{}, true, 1},
            {"trivial3", 1, FgAbelian{}, true, 1}, {"trivial4", 1, FgAbelian{}, true, 1},
            {"trivial5", 1, FgAbelian{}, true, 1}, {"trivial6", 1, FgAbelian{}, true, 1},
            {"q3", 1, FgAbelian{}, true, 1},       {"r3", 3, FgAbelian{}, true, 3},
            {"r4", 1, FgAbelian{0, {Int(2)}}, true, 2}, {"r5", 5, FgAbelian{}, true, 5},
        };
        auto named = corpus();
        for (std::size_t i = 0; i < named.size(); ++i) {
            INFO(named[i].name);
            REQUIRE(named[i].name == expected[i].name);
            SubgroupData d = derived_subgroup_data(named[i].q);
            REQUIRE(d.inn_indices.size() == expected[i].inn_image);
            REQUIRE(d.kpart == expected[i].kpart);
            REQUIRE(d.finite == expected[i].finite);
            REQUIRE(d.order == expected[i].order);
        }
    }
    SECTION("membership") {
        EnvelopeModel m = build_envelope(dihedral_quandle(3));
        SubgroupData d = derived_subgroup_data(m);
        REQUIRE(subgroup_contains(m, d, m.identity_nf()));
        // Commutators of generators lie in it; generators do not.
        NormalForm a = m.gen_nf[0], b = m.gen_nf[1];
        NormalForm c = m.nf_mul(m.nf_mul(m.nf_mul(a, b), m.nf_inv(a)), m.nf_inv(b));
        REQUIRE(subgroup_contains(m, d, c));
        REQUIRE_FALSE(subgroup_contains(m, d, a));
        REQUIRE_FALSE(subgroup_contains(m, d, m.nf_mul(a, b)));
        // The abelianization is Z here, so the derived subgroup is exactly
        // the degree-zero part; x0 x1^-1 belongs to it.
        REQUIRE(subgroup_contains(m, d, m.nf_mul(a, m.nf_inv(b))));
    }
}

TEST_CASE("subgroup machinery on explicit generating sets") {
    EnvelopeModel m = build_envelope(dihedral_quandle(3));

    SECTION("no generators gives the trivial subgroup") {
        SubgroupData d = subgroup_from_generators(m, {});
        REQUIRE(d.inn_indices == std::vector<int>{0});
        REQUIRE(d.kpart.is_trivial());
        REQUIRE(d.order == Int(1));
        REQUIRE(subgroup_contains(m, d, m.identity_nf()));
        REQUIRE_FALSE(subgroup_contains(m, d, m.gen_nf[0]));
    }
    SECTION("the kernel itself") {
        std::vector<NormalForm> kgens;
        for (std::size_t s = 0; s < m.transversal_size; ++s)
            for (int x = 0; x < m.q.size(); ++x) {
                KCoordinates c = m.coord_of_schreier(static_cast<int>(s), x);
                if (!c.is_zero()) kgens.push_back(NormalForm{0, c});
            }
        SubgroupData d = subgroup_from_generators(m, kgens);
        REQUIRE(d.inn_indices == std::vector<int>{0});
        REQUIRE(d.kpart == m.k);
        REQUIRE_FALSE(d.finite);
    }
    SECTION("the whole group") {
        SubgroupData d = subgroup_from_generators(m, m.gen_nf);
        REQUIRE(d.inn_indices.size() == m.transversal_size);
        REQUIRE_FALSE(d.finite);
        REQUIRE_FALSE(d.order.has_value());
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial)
            REQUIRE(subgroup_contains(m, d, m.normal_form(random_word(rng, m.q.size(), 6))));
    }
}

TEST_CASE("nilpotency of the enveloping group") {
    for (const auto& [name, q] : corpus()) {
        INFO(name);
        EnvelopeModel m = build_envelope(q);
        ModelNilpotency mn = model_nilpotency(m);
        // Three independent routes must agree: the model's index chain, the
        // permutation-group series, and the stabilization size.
        REQUIRE(mn.nilpotent == is_nilpotent(m.inn));
        REQUIRE(mn.chain_orders.front() == m.transversal_size);
        if (mn.nilpotent) REQUIRE(mn.chain_orders.back() == 1);
    }
    REQUIRE(model_nilpotency(build_envelope(dihedral_quandle(3))).nilpotent == false);
    REQUIRE(model_nilpotency(build_envelope(dihedral_quandle(4))).nilpotent == true);
    REQUIRE(model_nilpotency(build_envelope(q3_example())).nilpotent == true);
}

TEST_CASE("torsion elements") {
    SECTION("frozen counts") {
        REQUIRE(torsion_count(build_envelope(trivial_quandle(3))) == 1);
        REQUIRE(torsion_count(build_envelope(q3_example())) == 1);
        REQUIRE(torsion_count(build_envelope(dihedral_quandle(3))) == 3);
        REQUIRE(torsion_count(build_envelope(dihedral_quandle(4))) == 2);
        REQUIRE(torsion_count(build_envelope(dihedral_quandle(5))) == 5);
    }
    SECTION("each enumerated element really has finite order") {
        for (const auto& [name, q] : corpus()) {
            INFO(name);
            EnvelopeModel m = build_envelope(q);
            auto elems = torsion_elements(m);
            REQUIRE(Int(elems.size()) == torsion_count(m));
            std::set<std::string> keys;
            for (const NormalForm& e : elems) {
                REQUIRE(keys.insert(m.nf_key(e)).second);
                bool vanished = false;
                for (unsigned long k = 1; k <= 2 * m.transversal_size; ++k)
                    if (m.nf_pow(e, k) == m.identity_nf()) {
                        vanished = true;
                        break;
                    }
                REQUIRE(vanished);
            }
        }
    }
    SECTION("torsion elements sit inside the derived subgroup here") {
        for (const char* which : {"r3", "r4", "r5"}) {
            INFO(which);
            int n = which[1] - '0';
            EnvelopeModel m = build_envelope(dihedral_quandle(n));
            SubgroupData d = derived_subgroup_data(m);
            for (const NormalForm& e : torsion_elements(m))
                REQUIRE(subgroup_contains(m, d, e));
        }
    }
    SECTION("torsion subgroup order is gated on nilpotency") {
        REQUIRE(torsion_subgroup_order(trivial_quandle(4)) == 1);
        REQUIRE(torsion_subgroup_order(q3_example()) == 1);
        REQUIRE(torsion_subgroup_order(dihedral_quandle(4)) == 2);
        REQUIRE_THROWS_AS(torsion_subgroup_order(dihedral_quandle(3)), DomainError);
        REQUIRE_THROWS_AS(torsion_subgroup_order(dihedral_quandle(5)), DomainError);
    }
}

TEST_CASE("envelopes of conjugation and core quandles") {
    FiniteGroup s3 = qftest::dihedral_group(3);
    FiniteGroup d4 = qftest::dihedral_group(4);

    SECTION("conjugation quandle of the symmetric group") {
        EnvelopeModel m = build_envelope(conj_quandle(s3));
        REQUIRE(m.transversal_size == 6);
        REQUIRE(m.schreier_count == 31);
        REQUIRE(m.k == FgAbelian{3, {}});
        REQUIRE(is_injective(m));
        REQUIRE_NOTHROW(check_model_soundness(m));
        SubgroupData d = derived_subgroup_data(m);
        REQUIRE(d.order == Int(3));
    }
    SECTION("core quandle of the symmetric group") {
        EnvelopeModel m = build_envelope(core_quandle(s3));
        REQUIRE(m.transversal_size == 36);
        REQUIRE(m.k == FgAbelian{2, {}});
        REQUIRE_NOTHROW(check_model_soundness(m));
    }
    SECTION("conjugation quandle of the dihedral group of the square") {
        EnvelopeModel m = build_envelope(conj_quandle(d4));
        REQUIRE(m.transversal_size == 4);
        REQUIRE(m.k == FgAbelian{5, {Int(2)}});
        REQUIRE_NOTHROW(check_model_soundness(m));
        SubgroupData d = derived_subgroup_data(m);
        REQUIRE(d.order == Int(2));
        REQUIRE(model_nilpotency(m).nilpotent);
        REQUIRE(torsion_subgroup_order(m) == 2);
    }
}
