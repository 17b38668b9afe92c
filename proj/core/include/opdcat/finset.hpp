#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opdcat {

/* Maps between skeletal finite sets.  The set of size n is {1,..,n}; 0 never
 * appears as an element.  values[i-1] is the image of i.  Text form is
 * "n -> m : [v1,...,vn]". */
class FinMap {
public:
    FinMap() = default;
    FinMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values);

    static FinMap identity(uint32_t n);
    static FinMap constant(uint32_t dom, uint32_t cod, uint32_t value);

    uint32_t dom() const { return dom_; }
    uint32_t cod() const { return cod_; }
    uint32_t operator()(uint32_t i) const;  // 1-based
    const std::vector<uint32_t>& values() const { return values_; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const;
    bool is_monotone() const;           // weakly increasing
    bool is_strictly_monotone() const;  // strictly increasing (injective monotone)
    bool is_identity() const;

    std::vector<uint32_t> fiber(uint32_t j) const;  // increasing
    FinMap inverse() const;                         // requires bijective

    std::string str() const;
    static FinMap parse(const std::string& text);

    bool operator==(const FinMap&) const = default;
    bool operator<(const FinMap& o) const;

private:
    uint32_t dom_ = 0;
    uint32_t cod_ = 0;
    std::vector<uint32_t> values_;
};

// g after f; requires f.cod() == g.dom()
FinMap compose(const FinMap& g, const FinMap& f);

/* Canonical pullback of f : a -> c <- b : g.  The apex is the set of pairs
 * (i,j) with f(i) = g(j), listed in lexicographic order and renumbered
 * 1..k; left/right are the projections to a and b. */
struct Pullback {
    FinMap left;
    FinMap right;
    uint32_t apex() const { return left.dom(); }
};
Pullback pullback(const FinMap& f, const FinMap& g);

/* A map <n> -> <m> of pointed sets <n> = {0,1,..,n} with 0 the basepoint.
 * Only the values of 1..n are stored (0 goes to 0); values may be 0.
 * Text form "n->m:[v1,...,vn]". */
class PointedMap {
public:
    PointedMap() = default;
    PointedMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values);

    static PointedMap identity(uint32_t n);
    static PointedMap rho(uint32_t n, uint32_t i);  // i to 1, the rest to 0

    uint32_t dom() const { return dom_; }
    uint32_t cod() const { return cod_; }
    uint32_t operator()(uint32_t i) const;  // accepts 0, returns 0 on it
    const std::vector<uint32_t>& values() const { return values_; }

    // inert: away from the preimage of 0 the map is a bijection onto {1..m}
    bool is_inert() const;
    // active: only 0 goes to 0
    bool is_active() const;
    bool is_identity() const;

    std::string str() const;
    static PointedMap parse(const std::string& text);

    bool operator==(const PointedMap&) const = default;
    bool operator<(const PointedMap& o) const;

private:
    uint32_t dom_ = 0;
    uint32_t cod_ = 0;
    std::vector<uint32_t> values_;
};

PointedMap compose(const PointedMap& g, const PointedMap& f);

// phi = active after inert, middle set = elements of dom not sent to 0,
// renumbered in increasing order
struct PointedFactorization {
    PointedMap inert;
    PointedMap active;
};
PointedFactorization factor_pointed(const PointedMap& phi);

/* The span presentation of a map <n> -> <m>: a diagram n <- x -> m whose
 * back leg is injective.  Canonical representative: back is strictly
 * increasing.  fwd is arbitrary. */
class Span {
public:
    Span() = default;
    Span(FinMap back, FinMap fwd);  // back must be strictly monotone

    static Span identity(uint32_t n);
    static Span rho(uint32_t n, uint32_t i);

    uint32_t src() const { return back_.cod(); }
    uint32_t dst() const { return fwd_.cod(); }
    uint32_t mid() const { return back_.dom(); }
    const FinMap& back() const { return back_; }
    const FinMap& fwd() const { return fwd_; }

    bool is_inert() const;   // fwd bijective
    bool is_active() const;  // back the identity
    bool is_identity() const;

    std::string str() const;

    bool operator==(const Span&) const = default;
    bool operator<(const Span& o) const;

private:
    FinMap back_;
    FinMap fwd_;
};

// t after s, via the canonical pullback of (s.fwd, t.back); the composite
// back leg comes out strictly increasing on its own
Span compose(const Span& t, const Span& s);

struct SpanFactorization {
    Span inert;
    Span active;
};
// s = active after inert
SpanFactorization factor_span(const Span& s);

// the two presentations agree: to_span and to_pointed are mutually inverse
// and turn composition into composition
Span to_span(const PointedMap& phi);
PointedMap to_pointed(const Span& s);

/* Every map f factors as a monotone map after a bijection that is monotone
 * on each fiber: f = lambda o sigma.  lambda has the same fiber sizes as f
 * but sorted into blocks; sigma sends j to (start of block f(j)) + (rank of
 * j inside its fiber). */
struct MonotoneFibreFactorization {
    FinMap sigma;   // bijection n -> n
    FinMap lambda;  // monotone n -> m
};
MonotoneFibreFactorization monotone_factor(const FinMap& f);

// enumerators, all in lexicographic order of the value vector
std::vector<FinMap> all_maps(uint32_t dom, uint32_t cod);
std::vector<FinMap> all_injections(uint32_t dom, uint32_t cod);
std::vector<FinMap> all_bijections(uint32_t n);
std::vector<FinMap> all_monotone_maps(uint32_t dom, uint32_t cod);
std::vector<PointedMap> all_pointed_maps(uint32_t dom, uint32_t cod);
std::vector<Span> all_spans(uint32_t src, uint32_t dst);

}  // namespace opdcat
