#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "qf/group.hpp"
#include "qf/quandle.hpp"
#include "support/corpus.hpp"
#include "support/groups.hpp"

using namespace qf;
using qftest::corpus;
using qftest::groups_up_to_12;

TEST_CASE("quandle axiom validation") {
    SECTION("valid tables") {
        REQUIRE(validate_quandle({{0}}).valid);
        REQUIRE(validate_quandle({{0, 1, 2}, {2, 1, 0}, {0, 1, 2}}).valid);
        REQUIRE(validate_quandle(dihedral_quandle(5).table()).valid);
    }
    SECTION("idempotence witness") {
        ValidationResult r = validate_quandle({{1, 0}, {1, 0}});
        REQUIRE_FALSE(r.valid);
        REQUIRE(r.witness->kind == AxiomWitness::Kind::idempotence);
        REQUIRE(r.witness->x == 0);
        REQUIRE(r.witness->to_string() == "idempotence fails at x=0");
    }
    SECTION("invertibility witness") {
        ValidationResult r = validate_quandle({{0, 0}, {1, 1}});
        REQUIRE_FALSE(r.valid);
        REQUIRE(r.witness->kind == AxiomWitness::Kind::invertibility);
        REQUIRE(r.witness->to_string() == "left translation by x=0 collides at y=0, z=1");
    }
    SECTION("distributivity witness") {
        // Rows are permutations and the diagonal is fixed, but 0>(1>2) = 3
        // while (0>1)>(0>2) = 1.
        Table t = {{0, 2, 1, 3}, {0, 1, 3, 2}, {0, 1, 2, 3}, {0, 1, 2, 3}};
        ValidationResult r = validate_quandle(t);
        REQUIRE_FALSE(r.valid);
        REQUIRE(r.witness->kind == AxiomWitness::Kind::distributivity);
        int x = r.witness->x, y = r.witness->y, z = r.witness->z;
        REQUIRE(t[x][t[y][z]] != t[t[x][y]][t[x][z]]);
    }
    SECTION("shape problems throw") {
        REQUIRE_THROWS_AS(validate_quandle({}), MalformedInput);
        REQUIRE_THROWS_AS(validate_quandle({{0, 1}, {1}}), MalformedInput);
        REQUIRE_THROWS_AS(validate_quandle({{0, 2}, {1, 0}}), MalformedInput);
    }
    SECTION("from_table rejects non-quandles with the witness message") {
        REQUIRE_THROWS_WITH(FiniteQuandle::from_table({{1, 0}, {1, 0}}),
                            Catch::Matchers::ContainsSubstring("idempotence fails"));
    }
}

TEST_CASE("builtin quandles") {
    SECTION("trivial quandle") {
        FiniteQuandle t3 = trivial_quandle(3);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) REQUIRE(t3.op(x, y) == y);
        REQUIRE(inner_group(t3).is_trivial());
        REQUIRE_THROWS_AS(trivial_quandle(0), DomainError);
    }
    SECTION("dihedral quandle") {
        FiniteQuandle r5 = dihedral_quandle(5);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y) REQUIRE(r5.op(x, y) == ((2 * x - y) % 5 + 5) % 5);
        REQUIRE(inner_group(r5).order() == 10);
        REQUIRE(inner_group(dihedral_quandle(3)).order() == 6);
        REQUIRE(inner_group(dihedral_quandle(4)).order() == 4);
    }
    SECTION("three-element example with a non-injective natural map") {
        FiniteQuandle q3 = q3_example();
        REQUIRE(q3.table() == Table{{0, 1, 2}, {2, 1, 0}, {0, 1, 2}});
        REQUIRE(inner_group(q3).order() == 2);
    }
    SECTION("op_inv inverts op") {
        for (const auto& [name, q] : corpus()) {
            INFO(name);
            for (int x = 0; x < q.size(); ++x)
                for (int y = 0; y < q.size(); ++y) {
                    REQUIRE(q.op(x, q.op_inv(x, y)) == y);
                    REQUIRE(q.op_inv(x, q.op(x, y)) == y);
                }
        }
    }
    SECTION("left translations generate the inner group") {
        FiniteQuandle r3 = dihedral_quandle(3);
        PermGroup inn = inner_group(r3);
        for (int x = 0; x < 3; ++x) REQUIRE(inn.contains(r3.left_translation(x)));
    }
}

TEST_CASE("orbits and decomposition") {
    SECTION("orbit partitions") {
        REQUIRE(orbits(q3_example()) == std::vector<std::vector<int>>{{0, 2}, {1}});
        REQUIRE(orbits(dihedral_quandle(3)) == std::vector<std::vector<int>>{{0, 1, 2}});
        REQUIRE(orbits(dihedral_quandle(4)) == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
        REQUIRE(orbits(trivial_quandle(2)) == std::vector<std::vector<int>>{{0}, {1}});
    }
    SECTION("indecomposability") {
        REQUIRE(is_indecomposable(dihedral_quandle(3)));
        REQUIRE(is_indecomposable(dihedral_quandle(5)));
        REQUIRE(is_indecomposable(trivial_quandle(1)));
        REQUIRE_FALSE(is_indecomposable(dihedral_quandle(4)));
        REQUIRE_FALSE(is_indecomposable(q3_example()));
    }
    SECTION("maximal indecomposable components") {
        // Even dihedral quandles decompose all the way down to singletons:
        // no union of the two orbits is indecomposable.
        auto comps = indecomposable_components(dihedral_quandle(4));
        REQUIRE(comps == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});

        REQUIRE(indecomposable_components(q3_example()) ==
                std::vector<std::vector<int>>{{0}, {1}, {2}});
        REQUIRE(indecomposable_components(dihedral_quandle(3)) ==
                std::vector<std::vector<int>>{{0, 1, 2}});
        REQUIRE(indecomposable_components(dihedral_quandle(5)) ==
                std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});
        REQUIRE(indecomposable_components(trivial_quandle(3)) ==
                std::vector<std::vector<int>>{{0}, {1}, {2}});
    }
    SECTION("components partition the carrier") {
        for (const auto& [name, q] : corpus()) {
            INFO(name);
            auto comps = indecomposable_components(q);
            std::set<int> seen;
            for (const auto& c : comps)
                for (int x : c) REQUIRE(seen.insert(x).second);
            REQUIRE(seen.size() == static_cast<std::size_t>(q.size()));
        }
    }
    SECTION("size cap") {
        REQUIRE_THROWS_AS(indecomposable_components(dihedral_quandle(5), 4), ResourceError);
    }
}

TEST_CASE("morphism enumeration") {
    FiniteQuandle r3 = dihedral_quandle(3);
    SECTION("endomorphisms of the three-element dihedral quandle") {
        auto homs = enumerate_morphisms(r3, r3);
        REQUIRE(homs.size() == 9);  // 3 constants + 6 bijections
        int constants = 0, bijections = 0;
        for (const auto& f : homs) {
            REQUIRE(is_morphism(r3, r3, f));
            std::set<int> img(f.begin(), f.end());
            if (img.size() == 1) ++constants;
            if (img.size() == 3) ++bijections;
        }
        REQUIRE(constants == 3);
        REQUIRE(bijections == 6);
    }
    SECTION("maps between trivial quandles are unconstrained") {
        auto homs = enumerate_morphisms(trivial_quandle(2), trivial_quandle(3));
        REQUIRE(homs.size() == 9);
    }
    SECTION("enumeration is deterministic and lexicographic") {
        auto homs = enumerate_morphisms(r3, r3);
        REQUIRE(std::is_sorted(homs.begin(), homs.end()));
        REQUIRE(homs == enumerate_morphisms(r3, r3));
    }
    SECTION("node cap") {
        REQUIRE_THROWS_AS(enumerate_morphisms(dihedral_quandle(5), dihedral_quandle(5), 10),
                          ResourceError);
    }
    SECTION("is_morphism rejects bad maps and bad shapes") {
        REQUIRE_FALSE(is_morphism(r3, r3, {0, 0, 1}));
        REQUIRE_FALSE(is_morphism(r3, r3, {0, 0}));
        REQUIRE_FALSE(is_morphism(r3, r3, {0, 0, 3}));
    }
}

TEST_CASE("non-injectivity witness") {
    SECTION("witness for the three-element example") {
        auto w = non_injectivity_witness(q3_example());
        REQUIRE(w.has_value());
        REQUIRE(*w == std::pair<int, int>(0, 2));
        // The two witnesses are distinct elements forced to share an image in
        // the enveloping group; in particular they act identically.
        FiniteQuandle q3 = q3_example();
        auto [a, b] = *w;
        REQUIRE(a != b);
        REQUIRE(q3.left_translation(a) == q3.left_translation(b));
    }
    SECTION("no witness on dihedral or trivial quandles") {
        REQUIRE_FALSE(non_injectivity_witness(dihedral_quandle(3)).has_value());
        REQUIRE_FALSE(non_injectivity_witness(dihedral_quandle(4)).has_value());
        REQUIRE_FALSE(non_injectivity_witness(trivial_quandle(4)).has_value());
    }
}

TEST_CASE("finite groups from tables") {
    SECTION("cyclic group round trip") {
        FiniteGroup c4 = qftest::cyclic(4);
        REQUIRE(c4.size() == 4);
        REQUIRE(c4.id() == 0);
        REQUIRE(c4.mul(3, 2) == 1);
        REQUIRE(c4.inv(1) == 3);
        REQUIRE(c4.regular_representation().order() == 4);
    }
    SECTION("axiom failures") {
        // Latin square with no identity row.
        REQUIRE_THROWS_WITH(FiniteGroup::from_table({{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}),
                            Catch::Matchers::ContainsSubstring("no identity"));
        // Identity exists but 1 has no inverse.
        REQUIRE_THROWS_WITH(FiniteGroup::from_table({{0, 1, 2}, {1, 1, 1}, {2, 1, 0}}),
                            Catch::Matchers::ContainsSubstring("missing inverse"));
        // Latin square with identity but not associative.
        REQUIRE_THROWS_WITH(
            FiniteGroup::from_table(
                {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
            Catch::Matchers::ContainsSubstring("associativity"));
        REQUIRE_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1}}), MalformedInput);
    }
    SECTION("catalog sanity: order and nilpotency") {
        // Nilpotent finite groups = direct products of p-groups; among the
        // catalog entries these are exactly the abelian ones plus D4 and Q8.
        std::set<std::string> nilpotent_names;
        for (const auto& [name, g] : groups_up_to_12()) {
            INFO(name);
            PermGroup reg = g.regular_representation();
            REQUIRE(reg.order() == static_cast<std::size_t>(g.size()));
            if (group_is_nilpotent(g)) nilpotent_names.insert(name);
        }
        std::set<std::string> expected = {"C1", "C2",   "C3",     "C4",  "C2xC2", "C5",
                                          "C6", "C7",   "C8",     "C4xC2", "C2xC2xC2", "D4",
                                          "Q8", "C9",   "C3xC3",  "C10", "C11",  "C12",
                                          "C6xC2"};
        REQUIRE(nilpotent_names == expected);
    }
}

TEST_CASE("conjugation and core quandles") {
    SECTION("conjugation quandle of an abelian group is trivial") {
        REQUIRE(conj_quandle(qftest::cyclic(5)) == trivial_quandle(5));
        REQUIRE(conj_quandle(qftest::direct_product(qftest::cyclic(2),
                                                         qftest::cyclic(2))) ==
                trivial_quandle(4));
    }
    SECTION("core quandle of a cyclic group is dihedral") {
        for (int n : {3, 4, 5, 7}) {
            REQUIRE(core_quandle(qftest::cyclic(n)) == dihedral_quandle(n));
        }
    }
    SECTION("both constructions satisfy the axioms for every catalog group") {
        for (const auto& [name, g] : groups_up_to_12()) {
            INFO(name);
            REQUIRE(validate_quandle(conj_quandle(g).table()).valid);
            REQUIRE(validate_quandle(core_quandle(g).table()).valid);
        }
    }
    SECTION("fixed-point symmetry of conjugation quandles") {
        // x > y = y iff x and y commute iff y > x = x; so conjugation quandles
        // never carry a one-sided fixing pair.
        for (const auto& [name, g] : groups_up_to_12()) {
            INFO(name);
            REQUIRE_FALSE(non_injectivity_witness(conj_quandle(g)).has_value());
        }
    }
    SECTION("group nilpotency matches the regular representation route") {
        REQUIRE(group_is_nilpotent(qftest::quaternion8()));
        REQUIRE(group_is_nilpotent(qftest::dihedral_group(4)));
        REQUIRE_FALSE(group_is_nilpotent(qftest::dihedral_group(3)));
        REQUIRE_FALSE(group_is_nilpotent(qftest::alternating4()));
    }
}
