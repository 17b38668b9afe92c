#pragma once

#include "opdcat/catkit.hpp"
#include "opdcat/operad.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace opdcat {

/* A chain of composable maps of finite sets a_0 -> a_1 -> ... -> a_m,
 * skeletal at every level.  The length is m; a length zero chain is a bare
 * set.  Text form "2>2>1:[1,2][1,1]". */
class Chain {
public:
    Chain() = default;
    explicit Chain(uint32_t only);            // length zero
    explicit Chain(std::vector<FinMap> steps);
    static Chain constant(uint32_t level_size, uint32_t length);  // identity steps

    uint32_t length() const { return static_cast<uint32_t>(steps_.size()); }
    uint32_t level(uint32_t i) const;
    uint32_t top() const { return level(length()); }
    const FinMap& step(uint32_t i) const { return steps_.at(i); }
    FinMap composite(uint32_t i, uint32_t j) const;  // level i -> level j

    std::string str() const;

    bool operator==(const Chain&) const = default;
    bool operator<(const Chain& o) const;

private:
    uint32_t first_ = 0;
    std::vector<FinMap> steps_;
};

/* A morphism of chains: a simplex map phi on the levels together with one
 * injection per source level into the matching target level, commuting with
 * the steps and making every consecutive square a pullback.  The
 * constructor checks all of that. */
class ChainMorphism {
public:
    ChainMorphism(Chain src, Chain dst, SimplexMap phi, std::vector<FinMap> eta);
    static ChainMorphism identity(const Chain& x);

    const Chain& src() const { return src_; }
    const Chain& dst() const { return dst_; }
    const SimplexMap& phi() const { return phi_; }
    const FinMap& eta(uint32_t i) const { return eta_.at(i); }

    bool is_inert() const;   // phi a subinterval inclusion
    bool is_active() const;  // phi endpoint preserving, every eta bijective

    std::string str() const;

    bool operator==(const ChainMorphism&) const = default;
    bool operator<(const ChainMorphism& o) const;

private:
    Chain src_, dst_;
    SimplexMap phi_;
    std::vector<FinMap> eta_;
};

ChainMorphism compose(const ChainMorphism& g, const ChainMorphism& f);

/* m = inert after active.  The middle chain takes canonical pullbacks of
 * the target chain along the top inclusion, so the active part has
 * bijective eta and the inert part has pullback projections for eta. */
struct ChainFactorization {
    ChainMorphism active;
    ChainMorphism inert;
};
ChainFactorization factor_chain(const ChainMorphism& m);

// lexicographic in the level sizes, then in the step tables
std::vector<Chain> all_chains(uint32_t set_bound, uint32_t length);
std::vector<ChainMorphism> all_chain_morphisms(const Chain& src, const Chain& dst);

/* The category of chains with levels and length bounded, materialized with
 * a full composition table, together with the shared opposite that the
 * pattern and the presheaves live on.  Arrow ids agree between the two
 * orientations. */
struct ChainCat {
    std::shared_ptr<const FinCat> cat;
    std::shared_ptr<const FinCat> op;
    uint32_t set_bound = 0;
    uint32_t chain_bound = 0;
    std::vector<Chain> chains;             // by object id
    std::vector<ChainMorphism> morphisms;  // by arrow id
    std::map<Chain, uint32_t> chain_id;
    std::map<ChainMorphism, uint32_t> morphism_id;

    uint32_t object_of(const Chain& c) const;
    uint32_t id_of(const ChainMorphism& m) const;
};
ChainCat build_chain_cat(uint32_t set_bound, uint32_t chain_bound);

/* Pattern on the opposite: classes read off the forward morphism,
 * elementaries the bare one point set and the one step chains into it. */
AlgebraicPattern chainop_pattern(const ChainCat& d);

/* A chain augmented by one more map from its top level into a target set.
 * Text form "2>1:[1,1] | 2:[2]". */
struct AugChain {
    Chain chain;
    FinMap aug;  // top -> target

    uint32_t target() const { return aug.cod(); }
    std::string str() const;

    bool operator==(const AugChain&) const = default;
    bool operator<(const AugChain& o) const;
};

/* Pushing an augmented chain along a base arrow: keep the levels the
 * simplex map picks, cut each one down to the preimage of the span's back
 * leg, renumber, and continue the augmentation with the forward leg.  The
 * inclusions say where each new level sits inside the old one; they are
 * strictly monotone by construction. */
struct AugTransport {
    AugChain target;
    std::vector<FinMap> incl;  // new level i -> old level psi(i)
};
AugTransport transport_aug_chain(const AugChain& x, const Span& s, const SimplexMap& psi);

/* The total category of augmented chains over the product of the pointed
 * set pattern and the opposite simplex pattern.  Every object has exactly
 * one arrow over each base arrow, the transport, so the projection is a
 * left fibration and composition delegates to the base. */
struct AugChainCat {
    std::shared_ptr<const FinCat> cat;
    FStarCat fstar;
    DeltaCat delta;
    ProductPattern base;
    AlgebraicPattern pattern;  // classes pulled up along the projection
    FinFunctor projection;
    uint32_t set_bound = 0;
    uint32_t chain_bound = 0;
    std::vector<AugChain> objects;  // by object id
    std::map<AugChain, uint32_t> object_id;

    uint32_t object_of(const AugChain& a) const;
    // the arrow out of obj over the base arrow assembled from the parts
    uint32_t arrow_over(uint32_t obj, const Span& s, const SimplexMap& psi) const;
};
AugChainCat build_aug_chain_cat(uint32_t set_bound, uint32_t chain_bound);

/* The same data flattened onto the base: the value at (<n>, [m]) is the set
 * of augmented chains over it, in chain order, and base arrows act by
 * transport.  check_elements_match rebuilds the total category as the
 * category of elements of this presheaf and compares the two over the base,
 * object by object and arrow by arrow. */
SetPresheaf aug_chain_presheaf(const AugChainCat& F);
CheckReport check_elements_match(const std::string& name, const AugChainCat& F);

/* The projection that forgets the augmentation, into the opposite chain
 * category: objects keep their chain, a transport arrow is remembered by
 * its inclusions. */
FinFunctor forget_augmentation(const AugChainCat& F, const ChainCat& D);

// the identity augmented chain on a chain object
uint32_t section_object(const AugChainCat& F, const ChainCat& D, uint32_t chain_obj);

/* The arrow part of the section, where it exists strictly: a chain morphism
 * with identity simplex part and monotone inclusions lifts to the transport
 * along its own top inclusion.  Any other inclusion data is renumbered away
 * by the canonical transport, so those arrows have no strict lift and the
 * result is empty. */
std::optional<uint32_t> section_arrow(const AugChainCat& F, const ChainCat& D,
                                      uint32_t chain_arrow);

/* The comparison arrow from the identity augmented chain on the underlying
 * chain back to the object itself: transport along the augmentation. */
uint32_t section_counit(const AugChainCat& F, uint32_t obj);

/* Forget after section is the identity on every chain and on every chain
 * morphism the section reaches; the counit is the identity on identity
 * augmented objects and projects to an identity; and the counit square
 * commutes against section-after-forget over every arrow that keeps the
 * simplex level.  All checked by enumeration. */
CheckReport check_localization(const std::string& name, const AugChainCat& F,
                               const ChainCat& D);

/* Pull a presheaf on the opposite chain category up through the forgetful
 * projection, then read it back along the section: the round trip must
 * return the original tables on every chain and every reachable morphism,
 * and the counit arrows must act bijectively on the pullback. */
CheckReport check_section_roundtrip(const std::string& name, const AugChainCat& F,
                                    const ChainCat& D, const SetPresheaf& X);

/* Segal comparison on the opposite chain category, twice over: once with
 * the generic pattern engine and once with the explicit formulas (a chain
 * value is the fiber product of its one step values over the vertex values
 * between them, a one step value is the product of its fiber values, a bare
 * set value is the product of its point values).  The two verdicts have to
 * agree. */
CheckReport check_chain_segal(const std::string& name, const ChainCat& D,
                              const SetPresheaf& X);

/* The same double check on the total category: fiber products of arc
 * restrictions over the inner vertices, and products over the points of the
 * augmentation target. */
CheckReport check_aug_segal(const std::string& name, const AugChainCat& F,
                            const SetPresheaf& Phi);

/* Values may only see the chain, never the augmentation: every arrow that
 * keeps the chain and merely pushes the augmentation forward has to act
 * bijectively.  Checked for the full family of such arrows and again for
 * the two small families (bare sets over themselves and one step chains
 * over their own top, both pushed to the point); on Segal input the small
 * families already decide the full one, so a disagreement fails. */
CheckReport check_aug_invariance(const std::string& name, const AugChainCat& F,
                                 const SetPresheaf& Phi);

/* Gauntness of the loop simplicial sets: for each level size the constant
 * chains over the point form a simplicial set, extended from levels 0..2 by
 * Segal filling so the completeness checker has its level three.  Passes
 * when size one is complete, every other size has the same verdict, and the
 * sizes multiply (size n loops are the n-fold product of size one loops
 * levelwise). */
CheckReport check_aug_complete(const std::string& name, const AugChainCat& F,
                               const SetPresheaf& Phi);

/* The nerve of an operad, evaluated chainwise: an element over
 * a_0 -> ... -> a_m colors every level and picks one operation per step and
 * point downstairs, from the fiber colors (in increasing order) to the
 * point's color.  Values are enumerated in a fixed order and cached, so the
 * evaluator also works at chains beyond any materialized category. */
class OperadNerve {
public:
    explicit OperadNerve(std::shared_ptr<const Operad> O);

    struct Elem {
        std::vector<std::vector<uint32_t>> color;  // per level, per point
        std::vector<std::vector<uint32_t>> op;     // per step, per point of the next level
        bool operator==(const Elem&) const = default;
    };

    const Operad& operad() const { return *O_; }
    uint32_t value_count(const Chain& c) const;
    const Elem& element(const Chain& c, uint32_t t) const;
    uint32_t index_of(const Chain& c, const Elem& e) const;
    std::string elem_name(const Chain& c, uint32_t t) const;

    // contravariant: an element over the target restricts to one over the
    // source, composing the target's operations down the picked levels
    uint32_t transport(const ChainMorphism& m, uint32_t t) const;

private:
    const std::vector<Elem>& values(const Chain& c) const;

    std::shared_ptr<const Operad> O_;
    mutable std::map<Chain, std::vector<Elem>> values_;
};

// the nerve assembled over a materialized chain category, on the opposite
SetPresheaf operad_nerve(const ChainCat& D, const OperadNerve& N);

/* Reads an operad off a Segal presheaf on the opposite chain category:
 * colors from the bare one point set, operations from the one step chains
 * into it, units from the degenerate step, composition through the two step
 * chains, symmetries from the chain automorphisms.  Needs set bound >= 1
 * and chain bound >= 2; a missing or ambiguous Segal filler throws. */
std::shared_ptr<Operad> operad_from_segal(const ChainCat& D, const SetPresheaf& X);

/* The round trip through the nerve: rebuilds an operad from the nerve of O
 * and checks that reading the nerve elements back is an isomorphism onto
 * the colors and operations of O within the set bound. */
CheckReport check_nerve_reconstruction(const std::string& name, const ChainCat& D,
                                       std::shared_ptr<const Operad> O);

}  // namespace opdcat
