#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opdcat/finset.hpp"

#include <set>

using namespace opdcat;

TEST_CASE("finmap basics") {
    FinMap f(3, 2, {1, 2, 1});
    CHECK(f.dom() == 3);
    CHECK(f.cod() == 2);
    CHECK(f(1) == 1);
    CHECK(f(3) == 1);
    CHECK(f.str() == "3 -> 2 : [1,2,1]");
    CHECK(FinMap::parse("3 -> 2 : [1,2,1]") == f);
    CHECK(FinMap::parse("3->2:[1,2,1]") == f);
    CHECK(f.is_surjective());
    CHECK(!f.is_injective());
    CHECK(!f.is_monotone());

    CHECK(FinMap::identity(3).is_identity());
    CHECK(FinMap::constant(3, 2, 2) == FinMap(3, 2, {2, 2, 2}));
    CHECK(FinMap(0, 2, {}).str() == "0 -> 2 : []");
    CHECK(FinMap::parse("0 -> 2 : []") == FinMap(0, 2, {}));

    CHECK(f.fiber(1) == std::vector<uint32_t>{1, 3});
    CHECK(f.fiber(2) == std::vector<uint32_t>{2});
    CHECK(FinMap(5, 3, {3, 1, 3, 1, 1}).fiber(2).empty());

    CHECK(FinMap(3, 3, {2, 3, 1}).inverse() == FinMap(3, 3, {3, 1, 2}));
    CHECK(FinMap(3, 3, {1, 2, 3}).is_strictly_monotone());
    CHECK(FinMap(2, 3, {1, 3}).is_strictly_monotone());
    CHECK(!FinMap(2, 3, {3, 1}).is_monotone());
    CHECK(FinMap(3, 2, {1, 1, 2}).is_monotone());

    CHECK_THROWS_AS(FinMap(2, 2, {3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FinMap(2, 2, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FinMap(2, 2, {1}), std::invalid_argument);
    CHECK_THROWS_AS(FinMap::parse("2 -> 2 : [1]"), std::invalid_argument);
    CHECK_THROWS_AS(FinMap(3, 2, {1, 2, 1}).inverse(), std::logic_error);
}

TEST_CASE("finmap composition") {
    FinMap f(3, 2, {1, 2, 1}), g(2, 3, {3, 1});
    CHECK(compose(g, f) == FinMap(3, 3, {3, 1, 3}));
    CHECK(compose(f, FinMap::identity(3)) == f);
    CHECK(compose(FinMap::identity(2), f) == f);
    CHECK_THROWS_AS(compose(g, g), std::logic_error);

    // associativity, exhaustively at sizes <= 3
    for (uint32_t a = 0; a <= 3; ++a)
        for (uint32_t b = 0; b <= 3; ++b)
            for (uint32_t c = 0; c <= 3; ++c)
                for (uint32_t d = 0; d <= 2; ++d)
                    for (const FinMap& p : all_maps(a, b))
                        for (const FinMap& q : all_maps(b, c))
                            for (const FinMap& r : all_maps(c, d))
                                CHECK(compose(r, compose(q, p)) ==
                                      compose(compose(r, q), p));
}

TEST_CASE("pullback is the lex pair set") {
    // f(1)=1,f(2)=2,f(3)=1 against g(1)=2,g(2)=1: pairs (1,2),(2,1),(3,2)
    Pullback pb = pullback(FinMap(3, 2, {1, 2, 1}), FinMap(2, 2, {2, 1}));
    CHECK(pb.apex() == 3);
    CHECK(pb.left == FinMap(3, 3, {1, 2, 3}));
    CHECK(pb.right == FinMap(3, 2, {2, 1, 2}));

    // both constant: the full product in lex order
    pb = pullback(FinMap::constant(2, 1, 1), FinMap::constant(2, 1, 1));
    CHECK(pb.apex() == 4);
    CHECK(pb.left == FinMap(4, 2, {1, 1, 2, 2}));
    CHECK(pb.right == FinMap(4, 2, {1, 2, 1, 2}));

    CHECK(pullback(FinMap(0, 1, {}), FinMap::identity(1)).apex() == 0);
    CHECK_THROWS_AS(pullback(FinMap(1, 1, {1}), FinMap(1, 2, {1})), std::logic_error);

    // pulling back along an injection picks out a subset, left leg increasing
    pb = pullback(FinMap(3, 3, {2, 2, 1}), FinMap(2, 3, {1, 2}));
    CHECK(pb.left.is_strictly_monotone());
    CHECK(pb.left == FinMap(3, 3, {1, 2, 3}));
    CHECK(pb.right == FinMap(3, 2, {2, 2, 1}));
}

TEST_CASE("pullback universal property") {
    // mediator exists and is forced; (left,right) jointly injective makes it
    // unique, and at tiny sizes uniqueness is re-checked by brute force
    for (uint32_t a = 0; a <= 3; ++a)
        for (uint32_t b = 0; b <= 3; ++b)
            for (uint32_t c = 0; c <= 3; ++c)
                for (const FinMap& f : all_maps(a, c))
                    for (const FinMap& g : all_maps(b, c)) {
                        Pullback pb = pullback(f, g);
                        std::set<std::pair<uint32_t, uint32_t>> pairs;
                        for (uint32_t x = 1; x <= pb.apex(); ++x)
                            pairs.insert({pb.left(x), pb.right(x)});
                        CHECK(pairs.size() == pb.apex());
                        CHECK(compose(f, pb.left) == compose(g, pb.right));
                        for (uint32_t t = 0; t <= 3; ++t)
                            for (const FinMap& u : all_maps(t, a))
                                for (const FinMap& v : all_maps(t, b)) {
                                    if (compose(f, u) != compose(g, v))
                                        continue;
                                    std::vector<uint32_t> w;
                                    for (uint32_t x = 1; x <= t; ++x) {
                                        uint32_t k = 1;
                                        while (pb.left(k) != u(x) || pb.right(k) != v(x))
                                            ++k;
                                        w.push_back(k);
                                    }
                                    FinMap med(t, pb.apex(), w);
                                    CHECK(compose(pb.left, med) == u);
                                    CHECK(compose(pb.right, med) == v);
                                }
                    }

    // uniqueness by enumeration where the mediator space is still small
    for (uint32_t c = 1; c <= 2; ++c)
        for (const FinMap& f : all_maps(2, c))
            for (const FinMap& g : all_maps(2, c)) {
                Pullback pb = pullback(f, g);
                for (uint32_t t = 0; t <= 4; ++t)
                    for (const FinMap& u : all_maps(t, 2))
                        for (const FinMap& v : all_maps(t, 2)) {
                            if (compose(f, u) != compose(g, v))
                                continue;
                            int mediators = 0;
                            for (const FinMap& w : all_maps(t, pb.apex()))
                                if (compose(pb.left, w) == u && compose(pb.right, w) == v)
                                    ++mediators;
                            CHECK(mediators == 1);
                        }
            }

    // a thinned pass at size 4
    auto m44 = all_maps(4, 4);
    for (size_t i = 0; i < m44.size(); i += 5)
        for (size_t j = 0; j < m44.size(); j += 7) {
            Pullback pb = pullback(m44[i], m44[j]);
            CHECK(compose(m44[i], pb.left) == compose(m44[j], pb.right));
            std::set<std::pair<uint32_t, uint32_t>> pairs;
            for (uint32_t x = 1; x <= pb.apex(); ++x)
                pairs.insert({pb.left(x), pb.right(x)});
            CHECK(pairs.size() == pb.apex());
            // lex order of the pair list
            for (uint32_t x = 1; x + 1 <= pb.apex(); ++x)
                CHECK(std::make_pair(pb.left(x), pb.right(x)) <
                      std::make_pair(pb.left(x + 1), pb.right(x + 1)));
        }
}

TEST_CASE("pointed maps") {
    PointedMap f(3, 2, {2, 2, 1});
    CHECK(f.str() == "3->2:[2,2,1]");
    CHECK(PointedMap::parse("3->2:[2,2,1]") == f);
    CHECK(f(0) == 0);
    CHECK(f(1) == 2);
    CHECK(f.is_active());
    CHECK(!f.is_inert());

    CHECK(compose(PointedMap(2, 1, {1, 0}), f) == PointedMap(3, 1, {0, 0, 1}));

    CHECK(PointedMap::rho(3, 2) == PointedMap(3, 1, {0, 1, 0}));
    CHECK(PointedMap::rho(3, 2).is_inert());
    CHECK(!PointedMap::rho(3, 2).is_active());
    CHECK(PointedMap::identity(2).is_inert());
    CHECK(PointedMap::identity(2).is_active());
    // permutations are both inert and active
    CHECK(PointedMap(2, 2, {2, 1}).is_inert());
    CHECK(PointedMap(2, 2, {2, 1}).is_active());
    // collapse to the basepoint is neither
    CHECK(!PointedMap(2, 2, {0, 0}).is_inert());
    CHECK(!PointedMap(2, 2, {0, 0}).is_active());

    CHECK_THROWS_AS(PointedMap(2, 2, {3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PointedMap::rho(2, 3), std::invalid_argument);
}

TEST_CASE("pointed factorization") {
    PointedFactorization pf = factor_pointed(PointedMap(3, 2, {0, 1, 1}));
    CHECK(pf.inert == PointedMap(3, 2, {0, 1, 2}));
    CHECK(pf.active == PointedMap(2, 2, {1, 1}));

    for (uint32_t n = 0; n <= 4; ++n)
        for (uint32_t m = 0; m <= 4; ++m)
            for (const PointedMap& phi : all_pointed_maps(n, m)) {
                PointedFactorization p = factor_pointed(phi);
                CHECK(p.inert.is_inert());
                CHECK(p.active.is_active());
                CHECK(compose(p.active, p.inert) == phi);
                // the inert part keeps the surviving elements in order
                uint32_t last = 0;
                for (uint32_t i = 1; i <= n; ++i)
                    if (p.inert(i) != 0) {
                        CHECK(p.inert(i) == last + 1);
                        ++last;
                    }
            }
}

TEST_CASE("spans") {
    Span s(FinMap(2, 3, {1, 3}), FinMap(2, 2, {2, 1}));
    CHECK(s.src() == 3);
    CHECK(s.dst() == 2);
    CHECK(s.mid() == 2);
    CHECK(s.str() == "3 <-[1,3]- 2 -[2,1]-> 2");

    CHECK(Span::identity(2).is_inert());
    CHECK(Span::identity(2).is_active());
    CHECK(Span::identity(2).is_identity());
    CHECK(Span::rho(3, 2).str() == "3 <-[2]- 1 -[1]-> 1");
    CHECK(Span::rho(3, 2).is_inert());
    CHECK(!Span::rho(3, 2).is_active());
    // the fold is active, not inert
    Span fold(FinMap::identity(2), FinMap::constant(2, 1, 1));
    CHECK(fold.is_active());
    CHECK(!fold.is_inert());

    CHECK_THROWS_AS(Span(FinMap(2, 3, {3, 1}), FinMap(2, 2, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(Span(FinMap(2, 3, {1, 1}), FinMap(2, 2, {1, 1})), std::invalid_argument);
}

TEST_CASE("span composition") {
    // restricting the two-element subset {1,3} with crossed images along
    // rho_2 leaves only the element over 2, which came from 1
    Span s(FinMap(2, 3, {1, 3}), FinMap(2, 2, {2, 1}));
    CHECK(compose(Span::rho(2, 2), s) == Span::rho(3, 1));
    CHECK(compose(Span::rho(2, 1), s) == Span::rho(3, 3));

    CHECK(compose(Span::identity(2), s) == s);
    CHECK(compose(s, Span::identity(3)) == s);

    // dropping everything composes to the empty span
    Span none(FinMap(0, 2, {}), FinMap(0, 2, {}));
    CHECK(compose(none, s).mid() == 0);

    // associativity, exhaustively at sizes <= 2
    for (uint32_t a = 0; a <= 2; ++a)
        for (uint32_t b = 0; b <= 2; ++b)
            for (uint32_t c = 0; c <= 2; ++c)
                for (uint32_t d = 0; d <= 2; ++d)
                    for (const Span& p : all_spans(a, b))
                        for (const Span& q : all_spans(b, c))
                            for (const Span& r : all_spans(c, d))
                                CHECK(compose(r, compose(q, p)) ==
                                      compose(compose(r, q), p));
}

TEST_CASE("span factorization") {
    for (uint32_t n = 0; n <= 3; ++n)
        for (uint32_t m = 0; m <= 3; ++m)
            for (const Span& s : all_spans(n, m)) {
                SpanFactorization f = factor_span(s);
                CHECK(f.inert.is_inert());
                CHECK(f.active.is_active());
                CHECK(compose(f.active, f.inert) == s);
            }
}

TEST_CASE("pointed maps and spans present the same category") {
    for (uint32_t n = 0; n <= 4; ++n)
        for (uint32_t m = 0; m <= 4; ++m) {
            auto pm = all_pointed_maps(n, m);
            auto sp = all_spans(n, m);
            size_t expect = 1;
            for (uint32_t i = 0; i < n; ++i)
                expect *= m + 1;
            CHECK(pm.size() == expect);
            CHECK(sp.size() == expect);
            for (const PointedMap& phi : pm) {
                Span s = to_span(phi);
                CHECK(s.back().is_strictly_monotone());
                CHECK(to_pointed(s) == phi);
                CHECK(s.is_inert() == phi.is_inert());
                CHECK(s.is_active() == phi.is_active());
            }
            for (const Span& s : sp)
                CHECK(to_span(to_pointed(s)) == s);
        }

    // translation respects composition; pointed composition is plain
    // function composition, so this also inherits its associativity
    for (uint32_t n = 0; n <= 3; ++n)
        for (uint32_t m = 0; m <= 3; ++m)
            for (uint32_t k = 0; k <= 3; ++k)
                for (const PointedMap& f : all_pointed_maps(n, m))
                    for (const PointedMap& g : all_pointed_maps(m, k))
                        CHECK(to_span(compose(g, f)) ==
                              compose(to_span(g), to_span(f)));

    // and the factorizations line up
    for (uint32_t n = 0; n <= 3; ++n)
        for (uint32_t m = 0; m <= 3; ++m)
            for (const PointedMap& phi : all_pointed_maps(n, m)) {
                PointedFactorization p = factor_pointed(phi);
                SpanFactorization q = factor_span(to_span(phi));
                CHECK(to_span(p.inert) == q.inert);
                CHECK(to_span(p.active) == q.active);
            }
}

TEST_CASE("monotone fibre factorization") {
    MonotoneFibreFactorization mf = monotone_factor(FinMap(5, 3, {3, 1, 3, 1, 1}));
    CHECK(mf.sigma == FinMap(5, 5, {4, 1, 5, 2, 3}));
    CHECK(mf.lambda == FinMap(5, 3, {1, 1, 1, 3, 3}));

    for (uint32_t n = 0; n <= 4; ++n)
        for (uint32_t m = 0; m <= 3; ++m)
            for (const FinMap& f : all_maps(n, m)) {
                MonotoneFibreFactorization x = monotone_factor(f);
                CHECK(x.sigma.is_bijective());
                CHECK(x.lambda.is_monotone());
                CHECK(compose(x.lambda, x.sigma) == f);
                // sigma keeps each fibre in its original order
                for (uint32_t i = 1; i <= n; ++i)
                    for (uint32_t j = i + 1; j <= n; ++j)
                        if (f(i) == f(j))
                            CHECK(x.sigma(i) < x.sigma(j));
            }
}

TEST_CASE("enumerators") {
    CHECK(all_maps(3, 3).size() == 27);
    CHECK(all_maps(0, 5).size() == 1);
    CHECK(all_maps(2, 0).empty());
    CHECK(all_maps(0, 0).size() == 1);
    CHECK(all_injections(3, 3).size() == 6);
    CHECK(all_injections(2, 4).size() == 12);
    CHECK(all_injections(4, 2).empty());
    CHECK(all_bijections(3).size() == 6);
    CHECK(all_bijections(0).size() == 1);
    CHECK(all_monotone_maps(3, 3).size() == 10);
    CHECK(all_pointed_maps(2, 2).size() == 9);
    CHECK(all_spans(2, 2).size() == 9);

    auto m = all_maps(2, 2);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == FinMap(2, 2, {1, 1}));
    CHECK(m[1] == FinMap(2, 2, {1, 2}));
    CHECK(m[2] == FinMap(2, 2, {2, 1}));
    CHECK(m[3] == FinMap(2, 2, {2, 2}));
    for (const auto& list : {all_maps(3, 2), all_monotone_maps(4, 3)})
        for (size_t i = 0; i + 1 < list.size(); ++i)
            CHECK(list[i] < list[i + 1]);

    for (const FinMap& f : all_injections(2, 3))
        CHECK(f.is_injective());
    for (const FinMap& f : all_monotone_maps(3, 2))
        CHECK(f.is_monotone());
    for (const FinMap& f : all_bijections(4))
        CHECK(f.is_bijective());
    for (const Span& s : all_spans(3, 2))
        CHECK(s.back().is_strictly_monotone());
}
