#pragma once

#include "opdcat/finset.hpp"
#include "opdcat/report.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace opdcat {

/* Monotone maps [n] -> [m] between the ordinals [n] = {0,..,n}.  Values are
 * 0-based and weakly increasing.  Text form "[n]->[m]:[v0,...,vn]". */
class SimplexMap {
public:
    SimplexMap() = default;
    SimplexMap(uint32_t dom, uint32_t cod, std::vector<uint32_t> values);

    static SimplexMap identity(uint32_t n);
    // the subinterval inclusion [j-i] -> [n], t to i+t
    static SimplexMap iota(uint32_t i, uint32_t j, uint32_t n);

    uint32_t dom() const { return dom_; }  // the n of [n]
    uint32_t cod() const { return cod_; }
    uint32_t operator()(uint32_t t) const;  // 0-based
    const std::vector<uint32_t>& values() const { return values_; }

    bool is_inert() const;   // subinterval inclusion
    bool is_active() const;  // endpoint preserving
    bool is_identity() const;

    std::string str() const;

    bool operator==(const SimplexMap&) const = default;
    bool operator<(const SimplexMap& o) const;

private:
    uint32_t dom_ = 0;
    uint32_t cod_ = 0;
    std::vector<uint32_t> values_;
};

SimplexMap compose(const SimplexMap& g, const SimplexMap& f);

// phi = inert after active; the active part lands in [phi(n) - phi(0)]
struct SimplexFactorization {
    SimplexMap active;
    SimplexMap inert;
};
SimplexFactorization factor_simplex(const SimplexMap& phi);

std::vector<SimplexMap> all_simplex_maps(uint32_t dom, uint32_t cod);

// contiguous view into a category's source-indexed arrow list
struct ArrowRange {
    const uint32_t* first = nullptr;
    const uint32_t* last = nullptr;
    const uint32_t* begin() const { return first; }
    const uint32_t* end() const { return last; }
    size_t size() const { return static_cast<size_t>(last - first); }
    uint32_t operator[](size_t i) const { return first[i]; }
};

/* A finite category with numbered objects and arrows.  Composition is
 * either an explicit table or, for categories that are total spaces of left
 * fibrations, delegated to the base category via unique lifts. */
class FinCat {
public:
    uint32_t add_object(std::string name);
    uint32_t add_arrow(uint32_t src, uint32_t dst, std::string name);
    void set_identity(uint32_t obj, uint32_t arrow);
    void set_compose(uint32_t g, uint32_t f, uint32_t gf);

    // table mode: sorts the composition table, builds the hom index
    void finalize();
    /* lift mode: arrows must have been added grouped by source object, in
     * the order of the base arrows out of the projected object; composition
     * is then computed through the base */
    void finalize_lifted(std::shared_ptr<const FinCat> base, std::vector<uint32_t> pi_obj);

    uint32_t object_count() const { return static_cast<uint32_t>(objName_.size()); }
    uint32_t arrow_count() const { return static_cast<uint32_t>(arrowSrc_.size()); }
    uint32_t src(uint32_t a) const { return arrowSrc_.at(a); }
    uint32_t dst(uint32_t a) const { return arrowDst_.at(a); }
    uint32_t identity(uint32_t obj) const { return identity_.at(obj); }
    bool is_identity(uint32_t a) const { return identity_[src(a)] == a; }
    uint32_t compose(uint32_t g, uint32_t f) const;  // g after f

    // arrows with the given source, ascending id
    ArrowRange arrows_from(uint32_t obj) const;
    std::vector<uint32_t> hom(uint32_t x, uint32_t y) const;
    std::optional<uint32_t> find_inverse(uint32_t a) const;
    bool is_iso(uint32_t a) const { return find_inverse(a).has_value(); }

    const std::string& object_name(uint32_t o) const { return objName_.at(o); }
    const std::string& arrow_name(uint32_t a) const { return arrName_.at(a); }
    std::optional<uint32_t> object_by_name(const std::string& name) const;
    std::optional<uint32_t> arrow_by_name(const std::string& name) const;

    // in lift mode: the base arrow an arrow lies over, and unique lifts
    bool lifted() const;
    const FinCat& base() const;
    uint32_t base_object(uint32_t obj) const;
    uint32_t base_arrow(uint32_t a) const;
    uint32_t lift(uint32_t obj, uint32_t base_arrow) const;

    FinCat opposite() const;  // same object/arrow ids, table mode

    // identity laws always in full; associativity stride-sampled once the
    // number of composable triples exceeds the budget
    CheckReport validate(const std::string& name, uint64_t assoc_budget = 2000000) const;

private:
    std::vector<uint32_t> arrowSrc_, arrowDst_, identity_;
    std::vector<std::string> objName_, arrName_;
    std::vector<uint32_t> fromStart_, fromIds_;
    struct ComposeTable {
        std::vector<std::pair<uint64_t, uint32_t>> entries;
    };
    struct LiftData {
        std::shared_ptr<const FinCat> base;
        std::vector<uint32_t> pi_obj;
    };
    std::variant<ComposeTable, LiftData> comp_;
    bool finalized_ = false;

    void build_from_index();
    uint32_t from_position(uint32_t obj, uint32_t arrow) const;
};

struct FinFunctor {
    std::shared_ptr<const FinCat> src;
    std::shared_ptr<const FinCat> dst;
    std::vector<uint32_t> obj;
    std::vector<uint32_t> arr;

    CheckReport validate(const std::string& name, uint64_t budget = 2000000) const;
};

// essentially surjective + fully faithful, with witnesses
CheckReport check_equivalence(const std::string& name, const FinFunctor& F);

/* A category with an inert/active factorization system and a set of
 * elementary objects. */
struct AlgebraicPattern {
    std::shared_ptr<const FinCat> cat;
    std::vector<char> inert;       // per arrow
    std::vector<char> active;      // per arrow
    std::vector<char> elementary;  // per object

    /* identities in both classes, both classes closed under composition,
     * every arrow factors as inert-then-active uniquely up to a unique
     * compatible iso; sampling kicks in past the budgets */
    CheckReport validate(const std::string& name, uint64_t factor_budget = 20000,
                         uint64_t closure_budget = 4000000) const;
};

/* A Set-valued functor on a FinCat.  Elements of F(x) are 0..size[x]-1;
 * action[a] is the table of F(a).  elem_name is optional and only used in
 * witnesses. */
struct SetPresheaf {
    std::shared_ptr<const FinCat> cat;
    std::vector<uint32_t> size;
    std::vector<std::vector<uint32_t>> action;
    std::vector<std::vector<std::string>> elem_name;

    CheckReport validate(const std::string& name, uint64_t budget = 4000000) const;
    std::string describe_elem(uint32_t obj, uint32_t t) const;
};

SetPresheaf terminal_presheaf(std::shared_ptr<const FinCat> cat);
SetPresheaf corepresentable_presheaf(std::shared_ptr<const FinCat> cat, uint32_t obj);

/* The diagram a Segal condition takes a limit over: objects are the inert
 * arrows from x to an elementary object, morphisms are inert arrows between
 * the targets commuting with them. */
struct SliceDiagram {
    FinCat shape;                           // no composition table, plain graph use
    std::vector<uint32_t> cone_arrow;       // per shape object: inert x -> e
    std::vector<uint32_t> vertex_object;    // per shape object: e
    std::vector<uint32_t> edge_arrow;       // per shape arrow: inert e -> e'
};
SliceDiagram elementary_slice(const AlgebraicPattern& P, uint32_t x);

/* Limit of a finite Set-valued diagram: compatible families, enumerated in
 * lexicographic order of the value tuple. */
struct DiagramEdge {
    uint32_t src, dst;
    const std::vector<uint32_t>* table;
};
std::vector<std::vector<uint32_t>> set_limit(const std::vector<uint32_t>& sizes,
                                             const std::vector<DiagramEdge>& edges);

// Segal comparison at every object of the pattern
CheckReport check_segal(const std::string& name, const AlgebraicPattern& P,
                        const SetPresheaf& F);

struct ElementsCategory {
    std::shared_ptr<const FinCat> cat;
    FinFunctor projection;
    std::vector<std::pair<uint32_t, uint32_t>> obj_elem;  // (base object, element)
    std::optional<uint32_t> object_of(uint32_t base_obj, uint32_t elem) const;
};
ElementsCategory category_of_elements(const SetPresheaf& F);

// unique-lift property over every object and base arrow
CheckReport check_left_fibration(const std::string& name, const FinFunctor& pi);

struct KanExtension {
    SetPresheaf pre;  // on the base category
    // per base object, aligned: fiber objects upstairs and their block
    // offsets inside pre
    std::vector<std::vector<uint32_t>> fiber_objects;
    std::vector<std::vector<uint32_t>> block_offset;
};
KanExtension left_kan_along_left_fibration(const FinFunctor& pi, const SetPresheaf& F);

// blocks partition each value set and every upstairs arrow action is the
// restriction of the downstairs one
CheckReport check_kan_fiber_recovery(const std::string& name, const KanExtension& kan,
                                     const FinFunctor& pi, const SetPresheaf& F);

/* Simplicial machinery.  DeltaCat materializes the simplex category up to
 * [maxLevel]; the pattern lives on the opposite. */
struct DeltaCat {
    std::shared_ptr<const FinCat> cat;  // the simplex category itself
    uint32_t max_level = 0;
    std::map<SimplexMap, uint32_t> arrow_id;
    std::vector<SimplexMap> simplex;  // by arrow id
    uint32_t object_of(uint32_t level) const { return level; }
    uint32_t id_of(const SimplexMap& f) const;
};
DeltaCat build_delta_cat(uint32_t max_level);
AlgebraicPattern deltaop_pattern(const DeltaCat& d);

// nerve of a category as a presheaf on the opposite simplex category
SetPresheaf nerve_presheaf(const DeltaCat& d, const std::shared_ptr<const FinCat>& C);

/* Completeness of a Segal presheaf on the opposite simplex category, by
 * gauntness: build the homotopy category out of levels 0..2, find the
 * invertible edges, and ask that the degenerate ones are all of them.
 * Requires max_level >= 3 so associativity of the homotopy category is
 * forced. */
CheckReport check_complete_segal_set(const std::string& name, const DeltaCat& d,
                                     const SetPresheaf& X);

/* The span model of pointed finite sets up to a size bound, with its
 * pattern (inert = forward leg bijective, active = back leg identity,
 * elementary = the one point set). */
struct FStarCat {
    std::shared_ptr<const FinCat> cat;
    uint32_t set_bound = 0;
    std::map<Span, uint32_t> arrow_id;
    uint32_t object_of(uint32_t n) const { return n; }
    uint32_t id_of(const Span& s) const;
    const Span& span_of(uint32_t arrow) const;
    std::vector<Span> spans;  // by arrow id
};
FStarCat build_fstar_cat(uint32_t set_bound);
AlgebraicPattern fstar_pattern(const FStarCat& f);

/* Product of two patterns: pairwise objects and arrows, componentwise
 * classes, products of elementaries as elementaries. */
struct ProductPattern {
    AlgebraicPattern pattern;
    std::vector<std::pair<uint32_t, uint32_t>> obj_pair;
    std::vector<std::pair<uint32_t, uint32_t>> arrow_pair;
    uint32_t object_of(uint32_t a, uint32_t b) const;
    uint32_t arrow_of(uint32_t a, uint32_t b) const;
    uint32_t left_obj_count = 0, right_obj_count = 0;
    uint32_t left_arrow_count = 0, right_arrow_count = 0;
};
ProductPattern product_pattern(const AlgebraicPattern& A, const AlgebraicPattern& B);

/* Finite monoids and the commutative monoid presheaves they induce on the
 * pointed set pattern: value at <n> is M^n, spans act by multiplying along
 * fibers. */
struct FinMonoid {
    uint32_t size = 1;
    uint32_t unit = 0;
    std::vector<uint32_t> table;  // row-major, table[a*size+b] = a*b
    std::string name;

    uint32_t mul(uint32_t a, uint32_t b) const { return table[a * size + b]; }
    bool is_commutative() const;
    bool is_associative() const;
    bool is_unital() const;

    static FinMonoid trivial();
    static FinMonoid z2();
    static FinMonoid z4();
    static FinMonoid boolean_or();
};

SetPresheaf comm_monoid_presheaf(const FStarCat& fs, const FinMonoid& M);

// a monoid homomorphism theta : N -> M induces a presheaf on the category
// of elements of M^*: the fiber of theta over each coordinate
SetPresheaf graded_presheaf(const FStarCat& fs, const ElementsCategory& elts,
                            const FinMonoid& N, const FinMonoid& M,
                            const std::vector<uint32_t>& theta);

// pullback of a presheaf along a functor
SetPresheaf pullback_presheaf(const FinFunctor& pi, const SetPresheaf& F);

// small standard categories for tests
std::shared_ptr<FinCat> poset_chain_cat(uint32_t n);        // 0 < 1 < .. < n
std::shared_ptr<FinCat> walking_iso_cat();                  // two objects, contractible
std::shared_ptr<FinCat> monoid_cat(const FinMonoid& M);     // one object

}  // namespace opdcat
