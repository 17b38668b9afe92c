#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opdcat/operad.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

using namespace opdcat;

static std::shared_ptr<const Operad> share(Operad o) {
    return std::make_shared<Operad>(std::move(o));
}

TEST_CASE("block permutations and direct sums") {
    // blocks of sizes 2,3 swapped: the 3-block moves to the front
    FinMap swapped = block_perm(FinMap(2, 2, {2, 1}), {2, 3});
    CHECK(swapped == FinMap(5, 5, {3, 4, 5, 1, 2}));
    CHECK(block_perm(FinMap::identity(3), {1, 0, 2}).is_identity());
    CHECK(direct_sum({FinMap(2, 2, {2, 1}), FinMap::identity(1)}) == FinMap(3, 3, {2, 1, 3}));
    CHECK(direct_sum({}) == FinMap(0, 0, {}));
    CHECK_THROWS_AS(block_perm(FinMap(2, 2, {1, 1}), {1, 1}), std::invalid_argument);

    // always a permutation, whatever the block sizes
    for (const FinMap& pi : all_bijections(3))
        CHECK(block_perm(pi, {2, 0, 1}).is_bijective());
}

TEST_CASE("commutative operad tables") {
    Operad O = make_commutative(4);
    CHECK(O.op_count() == 5);
    for (uint32_t n = 0; n <= 4; ++n) {
        REQUIRE(O.ops_of_arity(n).size() == 1);
        CHECK(O.op_name(O.ops_of_arity(n)[0]) == "m" + std::to_string(n));
    }
    uint32_t m0 = O.op_by_name("m0"), m1 = O.op_by_name("m1"), m2 = O.op_by_name("m2");
    CHECK(O.unit(0) == m1);
    CHECK(O.gamma(m2, {m2, m0}) == m2);
    CHECK(O.gamma(m2, {m1, m1}) == m2);
    CHECK(O.gamma(m2, {m2, m2}) == O.op_by_name("m4"));
    CHECK_THROWS_AS(O.gamma(m2, {m2, O.op_by_name("m3")}), std::invalid_argument);
    for (const FinMap& pi : all_bijections(3)) CHECK(O.act(O.op_by_name("m3"), pi) == O.op_by_name("m3"));

    CheckReport r = O.validate("commutative");
    CHECK(r.passed);
    CHECK(r.get_count("gamma entries") == 126);

    CHECK(make_commutative(2).validate("commutative small").passed);
}

TEST_CASE("trivial and parity operads") {
    CHECK(make_trivial(1, 4).validate("one color").passed);
    Operad T = make_trivial(2, 4);
    CHECK(T.op_count() == 2);
    CHECK(T.ops_with({0}, 0) == std::vector<uint32_t>{T.op_by_name("u0")});
    CHECK(T.ops_with({0}, 1).empty());
    CHECK(T.validate("two colors").passed);
    CHECK_THROWS_AS(make_trivial(0, 4), std::invalid_argument);

    Operad P = make_parity(4);
    CHECK(P.op_count() == 10);
    CheckReport r = P.validate("parity");
    CHECK(r.passed);
    CHECK(r.get_count("gamma entries") == 2942);
    // parities add up across a composite
    CHECK(P.gamma(P.op_by_name("o2"), {P.op_by_name("o1"), P.op_by_name("e1")}) ==
          P.op_by_name("e2"));

    // the even half closes up and is the commutative operad
    std::vector<char> keep(P.op_count(), 0);
    for (uint32_t p = 0; p < P.op_count(); ++p)
        if (P.op_name(p)[0] == 'e') keep[p] = 1;
    auto evens = share(suboperad(P, keep));
    CHECK(evens->op_count() == 5);
    CHECK(evens->validate("even suboperad").passed);
    OperadMorphism F{evens, share(make_commutative(4)), {0}, {0, 1, 2, 3, 4}};
    CHECK(check_operad_iso("evens are commutative", F).passed);

    // units plus the odd half does not close
    std::vector<char> bad(P.op_count(), 0);
    bad[P.op_by_name("e1")] = 1;
    for (uint32_t p = 0; p < P.op_count(); ++p)
        if (P.op_name(p)[0] == 'o') bad[p] = 1;
    CHECK_THROWS_AS(suboperad(P, bad), std::invalid_argument);
    // dropping a unit is refused outright
    std::vector<char> none(P.op_count(), 0);
    CHECK_THROWS_AS(suboperad(P, none), std::invalid_argument);
}

TEST_CASE("free operad on a symmetric binary generator") {
    Operad O = make_free_binary(4);
    // class counts 1, 1, 3, 15 at arities 1..4
    CHECK(O.ops_of_arity(0).empty());
    CHECK(O.ops_of_arity(1).size() == 1);
    CHECK(O.ops_of_arity(2).size() == 1);
    CHECK(O.ops_of_arity(3).size() == 3);
    CHECK(O.ops_of_arity(4).size() == 15);
    CHECK(O.op_name(O.unit(0)) == "1");

    std::set<std::string> names3;
    for (uint32_t p : O.ops_of_arity(3)) names3.insert(O.op_name(p));
    CHECK(names3 == std::set<std::string>{"b(b(1,2),3)", "b(b(1,3),2)", "b(b(2,3),1)"});

    uint32_t b = O.op_by_name("b(1,2)"), u = O.unit(0);
    CHECK(O.act(b, FinMap(2, 2, {2, 1})) == b);
    CHECK(O.op_name(O.gamma(b, {b, u})) == "b(b(1,2),3)");
    CHECK(O.op_name(O.gamma(b, {u, b})) == "b(b(2,3),1)");
    CHECK(O.op_name(O.gamma(b, {b, b})) == "b(b(1,2),b(3,4))");
    CHECK_THROWS_AS(O.gamma(b, {O.op_by_name("b(b(1,2),3)"), b}), std::invalid_argument);

    // rotating the slots of a left comb regroups the leaves
    CHECK(O.act(O.op_by_name("b(b(1,2),3)"), FinMap(3, 3, {2, 3, 1})) ==
          O.op_by_name("b(b(1,3),2)"));

    CheckReport r = O.validate("free binary");
    CHECK(r.passed);
    CHECK(r.get_count("gamma entries") == 57);
    CHECK(r.get_count("act entries") == 381);
}

TEST_CASE("free operad with mixed stabilizers") {
    Operad O = make_free_pair(4);
    // per-vertex choices weigh 2 + 1, so the counts triple per extra vertex
    CHECK(O.ops_of_arity(1).size() == 1);
    CHECK(O.ops_of_arity(2).size() == 3);
    CHECK(O.ops_of_arity(3).size() == 27);
    CHECK(O.ops_of_arity(4).size() == 405);

    std::set<std::string> names2;
    for (uint32_t p : O.ops_of_arity(2)) names2.insert(O.op_name(p));
    CHECK(names2 == std::set<std::string>{"b(1,2)", "b(2,1)", "s(1,2)"});
    FinMap swp(2, 2, {2, 1});
    CHECK(O.act(O.op_by_name("b(1,2)"), swp) == O.op_by_name("b(2,1)"));
    CHECK(O.act(O.op_by_name("s(1,2)"), swp) == O.op_by_name("s(1,2)"));

    CheckReport r = O.validate("free pair");
    CHECK(r.passed);
    CHECK(r.get_count("gamma entries") == 1321);
    CHECK(r.get_count("act entries") == 9889);

    // a listed stabilizer: the 3-cycle halves the six labelings
    FreeGenerator t{"t", {0, 0, 0}, 0, FreeGenerator::Stab::listed, {FinMap(3, 3, {2, 3, 1})}};
    Operad C = free_operad(1, {t}, 4);
    CHECK(C.ops_of_arity(2).empty());
    CHECK(C.ops_of_arity(3).size() == 2);
    CHECK(C.ops_of_arity(4).empty());
    CHECK(C.op_by_name("t(1,2,3)") != C.op_by_name("t(1,3,2)"));
    CHECK(C.validate("cyclic stabilizer").passed);

    // two colors: the second slot never nests
    FreeGenerator f{"f", {0, 1}, 0, FreeGenerator::Stab::trivial, {}};
    Operad M = free_operad(2, {f}, 3);
    CHECK(M.op_count() == 10);
    CHECK(M.ops_with({0, 1}, 0).size() == 1);
    CHECK(M.ops_with({1, 0}, 0).size() == 1);
    CHECK(M.ops_with({0, 1, 1}, 0).size() == 2);
    CHECK(M.ops_with({1}, 1).size() == 1);
    CHECK(M.validate("one mixed generator").passed);

    CHECK_THROWS_AS(free_operad(1, {FreeGenerator{"u", {0}, 0, FreeGenerator::Stab::trivial, {}}}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(free_operad(2, {FreeGenerator{"g", {0, 1}, 0, FreeGenerator::Stab::full, {}}}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        free_operad(2, {FreeGenerator{"g", {0, 1}, 0, FreeGenerator::Stab::listed, {swp}}}, 4),
        std::invalid_argument);
}

TEST_CASE("tree class counting with vertex budgets") {
    FreeGenerator c{"c", {}, 0, FreeGenerator::Stab::trivial, {}};
    FreeGenerator u{"u", {0}, 0, FreeGenerator::Stab::trivial, {}};
    // nullary classes only grow with the vertex budget: c, u(c), u(u(c)), ...
    CHECK(count_free_ops(1, {c, u}, 0, 0, 1) == 1);
    CHECK(count_free_ops(1, {c, u}, 0, 0, 2) == 2);
    CHECK(count_free_ops(1, {c, u}, 0, 0, 3) == 3);
    CHECK(count_free_ops(1, {c, u}, 1, 0, 2) == 3);  // 1, u(1), u(u(1))

    FreeGenerator b{"b", {0, 0}, 0, FreeGenerator::Stab::full, {}};
    CHECK(count_free_ops(1, {b}, 4, 0, 4) == 15);
    CHECK(count_free_ops(1, {b}, 4, 0, 2) == 0);  // needs three vertices
    CHECK(count_free_ops(1, {c, b}, 0, 0, 3) == 2);  // c and b(c,c)
    CHECK(count_free_ops(1, {c, b}, 0, 0, 5) == 3);  // plus b(b(c,c),c)
}

TEST_CASE("operad morphisms") {
    auto com2 = share(make_commutative(2));
    auto com4 = share(make_commutative(4));
    auto triv = share(make_trivial(1, 4));

    OperadMorphism into{triv, com4, {0}, {com4->unit(0)}};
    CHECK(into.validate("trivial into commutative").passed);

    // a smaller bound maps into a larger one
    OperadMorphism widen{com2, com4, {0}, {0, 1, 2}};
    CHECK(widen.validate("widen the bound").passed);
    OperadMorphism narrow{com4, com2, {0}, {0, 1, 2, 2, 2}};
    CHECK_FALSE(narrow.validate("narrow the bound").passed);

    auto par = share(make_parity(2));
    // sending m2 to the odd op breaks gamma
    OperadMorphism skew{com2, par, {0}, {par->op_by_name("e0"), par->op_by_name("e1"),
                                         par->op_by_name("o2")}};
    CheckReport r = skew.validate("skewed parity");
    CHECK_FALSE(r.passed);
    CHECK(r.witness.find("gamma not preserved") != std::string::npos);

    // arity mismatch in the op map
    OperadMorphism squash{com2, com2, {0}, {0, 2, 2}};
    CHECK(squash.validate("squash").witness.find("profile") != std::string::npos);
}

TEST_CASE("iso checks") {
    auto T = share(make_trivial(2, 4));
    OperadMorphism swap_colors{T, T, {1, 0}, {1, 0}};
    CHECK(check_operad_iso("color swap", swap_colors).passed);

    auto com = share(make_commutative(4));
    auto par = share(make_parity(4));
    OperadMorphism embed{com, par, {0}, {0, 2, 4, 6, 8}};
    CHECK(embed.validate("even embedding").passed);
    CheckReport r = check_operad_iso("even embedding", embed);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.find("different numbers") != std::string::npos);

    OperadMorphism widen{share(make_commutative(2)), com, {0}, {0, 1, 2}};
    CHECK(check_operad_iso("widen", widen).witness.find("arity bounds") != std::string::npos);
}

TEST_CASE("validator catches a corrupted unit") {
    // commutative tables with a second unary op designated as the unit;
    // gamma still collapses everything onto the plain ops
    Operad O(2);
    O.add_color("x");
    uint32_t m[3];
    m[0] = O.add_op({}, 0, "m0");
    m[1] = O.add_op({0}, 0, "m1");
    m[2] = O.add_op({0, 0}, 0, "m2");
    uint32_t u = O.add_op({0}, 0, "u");
    O.set_unit(0, u);
    for (uint32_t q = 0; q < O.op_count(); ++q)
        for (const auto& ps : O.gamma_tuples(q)) {
            uint32_t total = 0;
            for (uint32_t p : ps) total += O.arity(p);
            O.set_gamma(q, ps, m[total]);
        }
    for (uint32_t p = 0; p < O.op_count(); ++p)
        for (const FinMap& pi : all_bijections(O.arity(p))) O.set_act(p, pi, p);
    O.finalize();

    CheckReport r = O.validate("corrupted unit");
    CHECK_FALSE(r.passed);
    CHECK(r.witness.find("unit law fails at u") != std::string::npos);
    CHECK(r.get_count("ops") == 4);

    CHECK_THROWS_AS(O.set_unit(0, u), std::logic_error);  // finalized
}

TEST_CASE("builder guards") {
    CHECK_THROWS_AS(Operad(0), std::invalid_argument);

    Operad O(2);
    O.add_color("x");
    uint32_t u = O.add_op({0}, 0, "u");
    CHECK_THROWS_AS(O.add_op({0, 0, 0}, 0, "big"), std::invalid_argument);
    uint32_t mm = O.add_op({0, 0}, 0, "m");
    CHECK_THROWS_AS(O.set_unit(0, mm), std::invalid_argument);
    O.set_unit(0, u);
    CHECK_THROWS_AS(O.set_gamma(u, {mm}, u), std::invalid_argument);
    CHECK_THROWS_AS(O.set_act(mm, FinMap(2, 2, {1, 1}), mm), std::invalid_argument);

    // finalize refuses until both tables are complete
    CHECK_THROWS_AS(O.finalize(), std::invalid_argument);
    O.set_gamma(u, {u}, u);
    O.set_gamma(u, {mm}, mm);
    O.set_gamma(mm, {u, u}, mm);
    O.set_act(u, FinMap::identity(1), u);
    O.set_act(mm, FinMap::identity(2), mm);
    CHECK_THROWS_AS(O.finalize(), std::invalid_argument);
    O.set_act(mm, FinMap(2, 2, {2, 1}), mm);
    O.finalize();
    CHECK(O.validate("hand built").passed);
}
