#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opdcat/barwick.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

using namespace opdcat;

static std::shared_ptr<const Operad> share(Operad o) {
    return std::make_shared<Operad>(std::move(o));
}

static Chain one_step(uint32_t n) {
    return Chain(std::vector<FinMap>{FinMap::constant(n, 1, 1)});
}

// the categories take around a second to materialize, so all cases share one
// copy at the desk bounds
static const ChainCat& desk() {
    static ChainCat d = build_chain_cat(2, 2);
    return d;
}

static const AugChainCat& desk_aug() {
    static AugChainCat f = build_aug_chain_cat(2, 2);
    return f;
}

// double one value set and pad the tables with zeroes; no presheaf with that
// shape is Segal, which is exactly what the checkers have to notice
static SetPresheaf inflate_at(const SetPresheaf& X, uint32_t o) {
    SetPresheaf M = X;
    M.size[o] = 2;
    for (uint32_t a = 0; a < X.cat->arrow_count(); ++a) {
        if (X.cat->src(a) == o) M.action[a].assign(2, 0);
        if (X.cat->dst(a) == o && X.cat->src(a) != o)
            M.action[a].assign(M.size[X.cat->src(a)], 0);
    }
    return M;
}

static bool has_note(const CheckReport& r, const std::string& text) {
    return std::find(r.notes.begin(), r.notes.end(), text) != r.notes.end();
}

TEST_CASE("chains are words of composable maps") {
    Chain b(2);
    CHECK(b.length() == 0);
    CHECK(b.top() == 2);
    CHECK(b.level(0) == 2);
    CHECK(b.str() == "2");

    Chain c(std::vector<FinMap>{FinMap(2, 2, {1, 2}), FinMap(2, 1, {1, 1})});
    CHECK(c.length() == 2);
    CHECK(c.level(1) == 2);
    CHECK(c.top() == 1);
    CHECK(c.str() == "2>2>1:[1,2][1,1]");
    CHECK(c.composite(0, 2) == FinMap(2, 1, {1, 1}));
    CHECK(c.composite(1, 1) == FinMap::identity(2));
    CHECK(Chain::constant(2, 2) ==
          Chain(std::vector<FinMap>{FinMap::identity(2), FinMap::identity(2)}));

    CHECK_THROWS_AS(Chain(std::vector<FinMap>{}), std::invalid_argument);
    CHECK_THROWS_AS(Chain(std::vector<FinMap>{FinMap(2, 1, {1, 1}), FinMap(2, 2, {1, 2})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(c.composite(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(c.level(3), std::invalid_argument);

    // enumeration sizes at set bound two, smallest chains first
    CHECK(all_chains(2, 0).size() == 3);
    CHECK(all_chains(2, 1).size() == 11);
    CHECK(all_chains(2, 2).size() == 47);
    CHECK(all_chains(2, 0).front() == Chain(0));
    CHECK(all_chains(2, 0).back() == Chain(2));
}

TEST_CASE("chain morphism squares must commute and pull back") {
    Chain c(std::vector<FinMap>{FinMap(2, 2, {1, 2}), FinMap(2, 1, {1, 1})});
    Chain two_to_one = one_step(2);

    // picking the middle window of c is fine with identity level maps
    ChainMorphism g(two_to_one, c, SimplexMap::iota(1, 2, 2),
                    {FinMap::identity(2), FinMap::identity(1)});
    CHECK(g.is_inert());
    CHECK_FALSE(g.is_active());

    // vertex morphisms have no squares at all
    ChainMorphism f(Chain(1), two_to_one, SimplexMap(0, 1, {1}), {FinMap::identity(1)});
    ChainMorphism gf = compose(g, f);
    CHECK(gf.phi() == SimplexMap(0, 2, {2}));
    CHECK(gf.eta(0) == FinMap::identity(1));
    CHECK_THROWS_AS(compose(f, g), std::invalid_argument);

    // identities are both inert and active, as is a bare permutation
    CHECK(ChainMorphism::identity(c).is_inert());
    CHECK(ChainMorphism::identity(c).is_active());
    ChainMorphism sw(Chain(2), Chain(2), SimplexMap::identity(0), {FinMap(2, 2, {2, 1})});
    CHECK(sw.is_inert());
    CHECK(sw.is_active());

    // level maps must inject
    CHECK_THROWS_AS(ChainMorphism(Chain(2), Chain(2), SimplexMap::identity(0),
                                  {FinMap(2, 2, {1, 1})}),
                    std::invalid_argument);
    // simplex part must fit the lengths
    CHECK_THROWS_AS(ChainMorphism(one_step(1), two_to_one, SimplexMap::identity(0),
                                  {FinMap(1, 2, {1})}),
                    std::invalid_argument);
    // a square that does not commute: swapped bottom against identity top
    CHECK_THROWS_AS(ChainMorphism(Chain::constant(2, 1), Chain::constant(2, 1),
                                  SimplexMap::identity(1),
                                  {FinMap(2, 2, {2, 1}), FinMap::identity(2)}),
                    std::invalid_argument);
    // a commuting square that is not a pullback: one point over a two point fiber
    CHECK_THROWS_AS(ChainMorphism(one_step(1), two_to_one, SimplexMap::identity(1),
                                  {FinMap(1, 2, {1}), FinMap::identity(1)}),
                    std::invalid_argument);

    CHECK(all_chain_morphisms(Chain(1), Chain(2)).size() == 2);
    CHECK(all_chain_morphisms(one_step(2), one_step(2)).size() == 2);
}

TEST_CASE("factorization splits every morphism as inert after active") {
    const ChainCat& D = desk();
    Chain c(std::vector<FinMap>{FinMap(2, 2, {1, 2}), FinMap(2, 1, {1, 1})});

    ChainFactorization idf = factor_chain(ChainMorphism::identity(c));
    CHECK(idf.active == ChainMorphism::identity(c));
    CHECK(idf.inert == ChainMorphism::identity(c));

    ChainMorphism v(Chain(1), one_step(2), SimplexMap(0, 1, {1}), {FinMap::identity(1)});
    ChainFactorization vf = factor_chain(v);
    CHECK(vf.active.is_active());
    CHECK(vf.inert.is_inert());
    CHECK(vf.active.src() == v.src());
    CHECK(vf.inert.dst() == v.dst());
    CHECK(compose(vf.inert, vf.active) == v);

    // the round trip holds for every morphism at the desk bounds
    int bad = 0;
    for (const ChainMorphism& m : D.morphisms) {
        ChainFactorization fk = factor_chain(m);
        if (!fk.active.is_active() || !fk.inert.is_inert()) ++bad;
        if (!(compose(fk.inert, fk.active) == m)) ++bad;
    }
    CHECK(bad == 0);
    CHECK(D.morphisms.size() == 6358);
}

TEST_CASE("the chain category at the desk bounds") {
    const ChainCat& D = desk();
    CHECK(D.cat->object_count() == 61);
    CHECK(D.cat->arrow_count() == 6358);
    int per_len[3] = {0, 0, 0};
    for (const Chain& c : D.chains) per_len[c.length()]++;
    CHECK(per_len[0] == 3);
    CHECK(per_len[1] == 11);
    CHECK(per_len[2] == 47);
    CHECK(D.cat->hom(D.object_of(Chain(1)), D.object_of(Chain(2))).size() == 2);

    // ids round trip through the lookup tables
    CHECK(D.id_of(D.morphisms[100]) == 100);
    CHECK(D.object_of(D.chains[17]) == 17);
    CHECK_THROWS_AS(D.object_of(Chain(3)), std::invalid_argument);

    // the opposite keeps arrow ids and flips endpoints
    for (uint32_t a = 0; a < 50; ++a) {
        CHECK(D.op->src(a) == D.cat->dst(a));
        CHECK(D.op->dst(a) == D.cat->src(a));
    }
    CHECK(D.cat->validate("chain category").passed);
}

TEST_CASE("the inert active pattern on the chain category") {
    const ChainCat& D = desk();
    AlgebraicPattern P = chainop_pattern(D);

    int elems = 0;
    for (char e : P.elementary) elems += e;
    CHECK(elems == 4);
    CHECK(P.elementary[D.object_of(Chain(1))]);
    CHECK(P.elementary[D.object_of(one_step(0))]);
    CHECK(P.elementary[D.object_of(one_step(1))]);
    CHECK(P.elementary[D.object_of(one_step(2))]);
    CHECK_FALSE(P.elementary[D.object_of(Chain(2))]);

    ChainMorphism v(Chain(1), one_step(2), SimplexMap(0, 1, {1}), {FinMap::identity(1)});
    CHECK(P.inert[D.id_of(v)]);
    CHECK_FALSE(P.active[D.id_of(v)]);

    CheckReport pv = P.validate("chain pattern");
    CHECK(pv.passed);
    CHECK(pv.get_count("arrows_factored") == 6358);
    CHECK(pv.get_count("inert_pairs_checked") == 17950);
    CHECK(pv.get_count("active_pairs_checked") == 18972);
    CHECK(pv.get_count("elementary_objects") == 4);
    CHECK(pv.notes.empty());  // small enough to check without sampling
}

TEST_CASE("transport of augmented chains along the base") {
    // a pure renumbering: the swap reaches into the augmentation
    AugChain x{Chain(2), FinMap::identity(2)};
    Span sw(FinMap::identity(2), FinMap(2, 2, {2, 1}));
    AugTransport t = transport_aug_chain(x, sw, SimplexMap::identity(0));
    CHECK(t.target.str() == "2 | 2:[2,1]");
    CHECK(t.incl.size() == 1);
    CHECK(t.incl[0] == FinMap::identity(2));

    // cutting down to one point of the target
    AugChain y{Chain(2), FinMap(2, 2, {1, 2})};
    AugTransport u = transport_aug_chain(y, Span::rho(2, 1), SimplexMap::identity(0));
    CHECK(u.target.str() == "1 | 1:[1]");
    CHECK(u.incl[0] == FinMap(1, 2, {1}));

    // transport along identities is the identity
    AugChain z{Chain(std::vector<FinMap>{FinMap(2, 1, {1, 1})}), FinMap(1, 2, {2})};
    AugTransport w = transport_aug_chain(z, Span::identity(2), SimplexMap::identity(1));
    CHECK(w.target == z);
    CHECK(w.incl[0] == FinMap::identity(2));
    CHECK(w.incl[1] == FinMap::identity(1));

    CHECK_THROWS_AS(transport_aug_chain(z, Span::identity(1), SimplexMap::identity(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(transport_aug_chain(z, Span::identity(2), SimplexMap::identity(0)),
                    std::invalid_argument);
}

TEST_CASE("the total category of augmented chains") {
    const AugChainCat& F = desk_aug();
    CHECK(F.cat->object_count() == 269);
    CHECK(F.cat->arrow_count() == 54161);
    CHECK(F.base.pattern.cat->object_count() == 9);
    CHECK(F.base.pattern.cat->arrow_count() == 713);

    int over10 = 0;
    for (uint32_t x = 0; x < F.objects.size(); ++x)
        if (F.cat->base_object(x) == F.base.object_of(1, 0)) ++over10;
    CHECK(over10 == 3);

    int fiber_arrows = 0;
    for (uint32_t a = 0; a < F.cat->arrow_count(); ++a)
        if (F.delta.simplex[F.base.arrow_pair[F.cat->base_arrow(a)].second].is_identity())
            ++fiber_arrows;
    CHECK(fiber_arrows == 3245);

    CheckReport pv = F.pattern.validate("aug pattern");
    CHECK(pv.passed);
    CHECK(pv.get_count("inert_pairs_checked") == 41715);
    CHECK(pv.get_count("active_pairs_checked") == 78224);
    CHECK(pv.get_count("arrows_factored") == 18054);
    CHECK(pv.get_count("elementary_objects") == 14);
    CHECK(has_note(pv, "factorization sampled with stride 3"));
    CHECK(F.base.pattern.validate("base pattern").passed);
}

TEST_CASE("the total category is the category of elements of its presheaf") {
    CheckReport em = check_elements_match("elements", desk_aug());
    CHECK(em.passed);
    CHECK(em.get_count("objects") == 269);
    CHECK(em.get_count("arrows") == 54161);
    CHECK(em.get_count("arrows over simplex identities") == 3245);
}

TEST_CASE("forgetting the augmentation localizes onto the chain category") {
    const ChainCat& D = desk();
    const AugChainCat& F = desk_aug();

    CheckReport loc = check_localization("localization", F, D);
    CHECK(loc.passed);
    CHECK(loc.get_count("section objects") == 61);
    CHECK(loc.get_count("morphisms the section reaches") == 205);
    CHECK(loc.get_count("counit arrows") == 269);
    CHECK(loc.get_count("naturality squares") == 3245);

    // the strict section only lifts monotone level data over identity simplex
    // maps; everything else is renumbered away by the canonical transport
    ChainMorphism sw(Chain(2), Chain(2), SimplexMap::identity(0), {FinMap(2, 2, {2, 1})});
    CHECK_FALSE(section_arrow(F, D, D.id_of(sw)).has_value());
    CHECK(section_arrow(F, D, D.id_of(ChainMorphism::identity(Chain(2)))).has_value());
    int engaged = 0;
    for (uint32_t a = 0; a < D.morphisms.size(); ++a)
        if (section_arrow(F, D, a)) ++engaged;
    CHECK(engaged == 205);

    Chain c(std::vector<FinMap>{FinMap(2, 2, {1, 2}), FinMap(2, 1, {1, 1})});
    uint32_t so = section_object(F, D, D.object_of(c));
    CHECK(F.objects[so] == AugChain{c, FinMap::identity(1)});
    CHECK(section_counit(F, so) == F.cat->identity(so));

    CHECK_THROWS_AS(check_localization("mismatch", F, build_chain_cat(1, 1)),
                    std::invalid_argument);
}

TEST_CASE("operad nerves evaluate chainwise") {
    const ChainCat& D = desk();

    auto com = share(make_commutative(2));
    SetPresheaf Xcom = operad_nerve(D, OperadNerve(com));
    for (uint32_t s : Xcom.size) CHECK(s == 1);

    auto tc = share(make_trivial(2, 2));
    OperadNerve Ntc(tc);
    CHECK(Ntc.value_count(Chain(2)) == 4);
    CHECK(Ntc.value_count(Chain::constant(2, 1)) == 4);
    CHECK(Ntc.elem_name(Chain(2), 1) == "(c0,c1)");
    CHECK(Ntc.elem_name(Chain::constant(2, 1), 0) == "(c0,c0)>(c0,c0);u0,u0");

    // colorings come in point major order, and transport along the swap
    // permutes the points
    CHECK(Ntc.element(Chain(2), 2).color[0] == std::vector<uint32_t>{1, 0});
    ChainMorphism sw(Chain(2), Chain(2), SimplexMap::identity(0), {FinMap(2, 2, {2, 1})});
    CHECK(Ntc.transport(sw, 0) == 0);
    CHECK(Ntc.transport(sw, 1) == 2);
    CHECK(Ntc.transport(sw, 2) == 1);
    CHECK(Ntc.transport(sw, 3) == 3);

    // the evaluator works past the materialized bounds
    auto fb3 = share(make_free_binary(3));
    OperadNerve Nfb3(fb3);
    CHECK(Nfb3.value_count(one_step(2)) == 1);
    CHECK(Nfb3.value_count(one_step(3)) == 3);

    auto fb = share(make_free_binary(2));
    CHECK(operad_nerve(D, OperadNerve(fb)).validate("free binary nerve").passed);

    auto tiny = share(make_trivial(1, 1));
    CHECK_THROWS_AS(operad_nerve(D, OperadNerve(tiny)), std::invalid_argument);
}

TEST_CASE("the nerves satisfy the Segal condition, mutants do not") {
    const ChainCat& D = desk();
    auto com = share(make_commutative(2));
    auto fb = share(make_free_binary(2));
    auto tc = share(make_trivial(2, 2));
    auto par = share(make_parity(2));
    SetPresheaf Xcom = operad_nerve(D, OperadNerve(com));

    CheckReport cs = check_chain_segal("com", D, Xcom);
    CHECK(cs.passed);
    CHECK(cs.get_count("objects checked") == 61);
    CHECK(check_chain_segal("free binary", D, operad_nerve(D, OperadNerve(fb))).passed);
    CHECK(check_chain_segal("two colors", D, operad_nerve(D, OperadNerve(tc))).passed);
    CHECK(check_chain_segal("parity", D, operad_nerve(D, OperadNerve(par))).passed);

    // inflating one value set breaks both the formula and the generic check,
    // and the checker reports that the two verdicts agree
    SetPresheaf M = inflate_at(Xcom, D.object_of(Chain::constant(1, 2)));
    CheckReport ms = check_chain_segal("mutant", D, M);
    CHECK_FALSE(ms.passed);
    CHECK(ms.witness == "restrictions do not separate the values at 1>1>1:[1][1]");
    CHECK(has_note(ms, "generic check agrees: Segal map not injective at 1>1>1:[1][1]"));
}

TEST_CASE("Segal and invariance upstairs, with their mutants") {
    const ChainCat& D = desk();
    const AugChainCat& F = desk_aug();
    FinFunctor P = forget_augmentation(F, D);
    auto com = share(make_commutative(2));
    auto fb = share(make_free_binary(2));
    SetPresheaf Pcom = pullback_presheaf(P, operad_nerve(D, OperadNerve(com)));
    SetPresheaf Pfb = pullback_presheaf(P, operad_nerve(D, OperadNerve(fb)));

    CHECK(check_aug_segal("fb", F, Pfb).passed);
    CHECK(check_aug_invariance("fb", F, Pfb).passed);

    // the inflation at an identity augmented object fails the Segal check and
    // makes the small invariance families disagree with the full one
    SetPresheaf M =
        inflate_at(Pcom, F.object_of(AugChain{Chain::constant(1, 2), FinMap::identity(1)}));
    CheckReport ms = check_aug_segal("mutant", F, M);
    CHECK_FALSE(ms.passed);
    CHECK(ms.witness == "restrictions do not separate the values at 1>1>1:[1][1] | 1:[1]");
    CheckReport mi = check_aug_invariance("mutant", F, M);
    CHECK_FALSE(mi.passed);
    CHECK(mi.witness ==
          "values see the augmentation at 1>1>1:[1][1] | 1:[1] pushed along 1 -> 1 : [1]");
    CHECK(has_note(mi, "small families pass although the full family fails; "
                       "the input cannot be Segal"));

    // inflating away from the identity augmentations is invisible to the
    // small families but not to the full one
    SetPresheaf T = inflate_at(Pcom, F.object_of(AugChain{Chain(1), FinMap(1, 2, {1})}));
    CheckReport ti = check_aug_invariance("twist", F, T);
    CHECK_FALSE(ti.passed);
    CHECK(ti.witness == "values see the augmentation at 1 | 1:[1] pushed along 1 -> 2 : [1]");
    CHECK(has_note(ti, "small families pass although the full family fails; "
                       "the input cannot be Segal"));
}

TEST_CASE("loop spaces of nerves are complete exactly without odd symmetries") {
    const ChainCat& D = desk();
    const AugChainCat& F = desk_aug();
    FinFunctor P = forget_augmentation(F, D);
    auto com = share(make_commutative(2));
    auto fb = share(make_free_binary(2));
    auto tc = share(make_trivial(2, 2));
    auto par = share(make_parity(2));

    CheckReport c1 =
        check_aug_complete("com", F, pullback_presheaf(P, operad_nerve(D, OperadNerve(com))));
    CHECK(c1.passed);
    CHECK(c1.get_count("objects") == 1);
    CHECK(c1.get_count("edges") == 1);
    CHECK(c1.get_count("invertible_edges") == 1);

    CHECK(check_aug_complete("fb", F,
                             pullback_presheaf(P, operad_nerve(D, OperadNerve(fb))))
              .passed);
    CHECK(check_aug_complete("tc", F,
                             pullback_presheaf(P, operad_nerve(D, OperadNerve(tc))))
              .passed);

    // the parity operad has an invertible odd unary operation, so its loop
    // space has a non-degenerate invertible edge
    CheckReport c4 =
        check_aug_complete("parity", F, pullback_presheaf(P, operad_nerve(D, OperadNerve(par))));
    CHECK_FALSE(c4.passed);
    CHECK(c4.get_count("invertible_edges") == 2);
    CHECK(c4.witness == "size one loops: not complete: 2 invertible edges over 1 objects, "
                        "first non-degenerate: [1]#1");
}

TEST_CASE("presheaves pull back through the section and round trip") {
    const ChainCat& D = desk();
    const AugChainCat& F = desk_aug();
    auto fb = share(make_free_binary(2));
    CheckReport rt = check_section_roundtrip("fb", F, D, operad_nerve(D, OperadNerve(fb)));
    CHECK(rt.passed);
    CHECK(rt.get_count("counit arrows") == 269);
}

TEST_CASE("an operad is recovered from its nerve") {
    const ChainCat& D = desk();
    CHECK(check_nerve_reconstruction("com", D, share(make_commutative(2))).passed);
    CHECK(check_nerve_reconstruction("free binary", D, share(make_free_binary(2))).passed);
    CHECK(check_nerve_reconstruction("two colors", D, share(make_trivial(2, 2))).passed);
    CHECK(check_nerve_reconstruction("parity", D, share(make_parity(2))).passed);

    ChainCat D11 = build_chain_cat(1, 1);
    auto com = share(make_commutative(1));
    CHECK_THROWS_AS(operad_from_segal(D11, operad_nerve(D11, OperadNerve(com))),
                    std::invalid_argument);
}

TEST_CASE("left Kan extension along the projection collapses the fibers") {
    const AugChainCat& F = desk_aug();
    SetPresheaf term = terminal_presheaf(F.cat);
    KanExtension K = left_kan_along_left_fibration(F.projection, term);
    SetPresheaf Psi = aug_chain_presheaf(F);
    CHECK(K.pre.size == Psi.size);
    CHECK(K.pre.action == Psi.action);
    CHECK(check_kan_fiber_recovery("kan fibers", K, F.projection, term).passed);

    // the presheaf of augmented chains is itself not Segal at a finite bound:
    // chains at the set bound cannot be rebuilt from their restrictions
    CheckReport ps = check_segal("aug chains", F.base.pattern, Psi);
    CHECK_FALSE(ps.passed);
    CHECK(ps.witness == "Segal map not injective at (<2>, [0])");
}
