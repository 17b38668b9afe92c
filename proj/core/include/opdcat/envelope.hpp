#pragma once

#include "opdcat/finset.hpp"
#include "opdcat/operad.hpp"
#include "opdcat/report.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace opdcat {

/* An arrow in a symmetric monoidal category sitting over finite sets: the
 * underlying map, one operation per target slot (filled by envelopes, left
 * empty by table-built props) and a spare label to tell apart arrows that
 * carry no other data. */
struct PropArrow {
    FinMap under;
    std::vector<uint32_t> ops;
    uint32_t tag = 0;
};

bool operator==(const PropArrow& a, const PropArrow& b);
bool operator<(const PropArrow& a, const PropArrow& b);

/* A symmetric monoidal category whose objects are the words of colors of
 * length at most the tuple bound, listed by length and then
 * lexicographically, and whose arrows lie over maps of finite sets.  Homs,
 * composition, identities and the symmetry arrows are explicit tables.
 * The tensor product of objects and of arrows is concatenation; tensors
 * whose length would exceed the bound are undefined, and validate checks
 * every axiom only where both sides exist.
 *
 * Build order: add_arrow for every hom, seal_homs (sorts the homs and hands
 * out global arrow ids), then the composition, identity and symmetry
 * entries, then finalize. */
class PropOverF {
public:
    PropOverF(std::vector<std::string> colors, uint32_t tuple_bound);

    uint32_t color_count() const { return static_cast<uint32_t>(colorName_.size()); }
    uint32_t tuple_bound() const { return bound_; }
    const std::string& color_name(uint32_t c) const { return colorName_.at(c); }
    uint32_t color_by_name(const std::string& name) const;

    uint32_t object_count() const { return static_cast<uint32_t>(objWord_.size()); }
    const std::vector<uint32_t>& word(uint32_t o) const { return objWord_.at(o); }
    uint32_t length(uint32_t o) const { return static_cast<uint32_t>(objWord_.at(o).size()); }
    uint32_t object(const std::vector<uint32_t>& word) const;
    uint32_t unit_object() const { return 0; }
    std::string object_name(uint32_t o) const;  // "(x,y)"

    void add_arrow(uint32_t src, uint32_t dst, PropArrow f);
    void seal_homs();
    void set_compose(uint32_t g, uint32_t f, uint32_t gf);
    void set_identity(uint32_t o, uint32_t f);
    void set_sym(uint32_t o, const FinMap& rho, uint32_t f);
    // every composition, identity and symmetry entry must be filled
    void finalize();

    uint32_t arrow_count() const { return static_cast<uint32_t>(arrVal_.size()); }
    uint32_t src(uint32_t f) const { return arrSrc_.at(f); }
    uint32_t dst(uint32_t f) const { return arrDst_.at(f); }
    const PropArrow& arrow(uint32_t f) const { return arrVal_.at(f); }

    // hom(a, b) is the contiguous id range [hom_first, hom_first + hom_size)
    uint32_t hom_first(uint32_t a, uint32_t b) const;
    uint32_t hom_size(uint32_t a, uint32_t b) const;
    bool contains(uint32_t a, uint32_t b, const PropArrow& f) const;
    uint32_t find(uint32_t a, uint32_t b, const PropArrow& f) const;

    uint32_t compose(uint32_t g, uint32_t f) const;
    uint32_t identity(uint32_t o) const;
    uint32_t sym(uint32_t o, const FinMap& rho) const;

    bool tensor_defined(uint32_t a, uint32_t b) const;
    uint32_t tensor_object(uint32_t a, uint32_t b) const;
    // the word of o permuted so that slot i holds the old slot rho^-1(i)
    uint32_t permuted_object(uint32_t o, const FinMap& rho) const;
    // concatenation of the data; throws if the result is not in its hom
    uint32_t tensor(uint32_t f, uint32_t g) const;

    /* Category laws, functoriality of the tensor product and of the
     * underlying map, and the symmetry axioms (group law, block sums,
     * naturality); sampling kicks in past the budget. */
    CheckReport validate(const std::string& name, uint64_t budget = 2000000) const;

private:
    std::vector<std::string> colorName_;
    uint32_t bound_ = 0;
    std::vector<std::vector<uint32_t>> objWord_;
    std::map<std::vector<uint32_t>, uint32_t> objIndex_;

    std::vector<std::vector<PropArrow>> pending_;  // per src * objects + dst
    std::vector<uint32_t> homBase_;
    std::vector<PropArrow> arrVal_;
    std::vector<uint32_t> arrSrc_, arrDst_;
    std::vector<std::vector<uint32_t>> comp_;  // per (src, mid, dst), g-major
    std::vector<uint32_t> idIdx_;
    std::vector<std::vector<uint32_t>> symIdx_;  // per object, by permutation rank
    bool sealed_ = false, finalized_ = false;

    uint32_t pair_index(uint32_t a, uint32_t b) const;
    int64_t locate(uint32_t a, uint32_t b, const PropArrow& f) const;
};

/* The monoidal envelope of an operad: homs are choices of an underlying map
 * together with an operation into each target slot, fed by the slots of its
 * fiber in increasing order.  Needs the arity bound of the operad to cover
 * the tuple bound. */
std::shared_ptr<PropOverF> envelope(const Operad& O, uint32_t tuple_bound);

// finite sets up to the bound with all maps, tensored by disjoint union
std::shared_ptr<PropOverF> finite_sets_prop(uint32_t bound);

/* Adjoins an absorbing copy of the endomorphisms of an object that has no
 * arrows to or from the rest of the prop; the result is still a lawful prop
 * but the new arrows are not tensors of smaller ones. */
std::shared_ptr<PropOverF> absorbing_extension(const PropOverF& C, uint32_t obj);

/* One color x, identities only below length two, and exactly three
 * endomorphisms of (x,x): the identity, the swap, and an absorbing
 * idempotent tau over the identity map.  No composition on these three
 * arrows can respect the underlying maps (the swap is invertible, so
 * absorbing it would take a fourth arrow); validate reports exactly that
 * defect.  The hereditary and counit counts still read 2 against 3. */
std::shared_ptr<PropOverF> absorbing_idempotent_prop();

/* The operad of single-target arrows: ops with inputs w and output c are
 * the arrows from (w) to (c), composed by tensoring and composing in C.
 * arrow maps each op back to the arrow it came from. */
struct UnderlyingOperad {
    std::shared_ptr<Operad> operad;
    std::vector<uint32_t> arrow;
};

UnderlyingOperad underlying_operad(const PropOverF& C);

// the canonical morphism from O into the operad underlying its envelope
OperadMorphism envelope_unit(std::shared_ptr<const Operad> O, const PropOverF& E,
                             const UnderlyingOperad& U);

struct PropFunctor {
    std::shared_ptr<const PropOverF> src;
    std::shared_ptr<const PropOverF> dst;
    std::vector<uint32_t> obj;
    std::vector<uint32_t> arr;

    // functor laws plus preservation of tensor, symmetry and underlying map
    CheckReport validate(const std::string& name, uint64_t budget = 2000000) const;
};

// bijective on objects and on every hom, on top of validate
CheckReport check_prop_equivalence(const std::string& name, const PropFunctor& F);

// the envelope applied to a morphism of operads
PropFunctor envelope_functor(const OperadMorphism& h, std::shared_ptr<const PropOverF> A,
                             std::shared_ptr<const PropOverF> B);

/* The counit from the envelope of the underlying operad back into C: the
 * identity on objects, and (phi, (f_i)) goes to the tensor of the f_i
 * precomposed with the symmetry reordering the source slots fiberwise. */
PropFunctor counit_functor(std::shared_ptr<const PropOverF> C);

// every object is the tensor product of its one-color pieces
CheckReport check_generation(const std::string& name, const PropOverF& C);

/* The hereditary condition: for all words x, y, splitting an arrow into one
 * piece per target slot along each underlying map is a bijection
 *
 *   coprod_phi prod_i C(tensor of x over phi^-1(i), y_i)  ->  C(x, y).
 *
 * Also replays the check fiberwise over each phi, arrowwise over each phi,
 * on the fibers over identities, and on the isomorphisms over identities,
 * and reports if any of those routes disagree with the total count. */
CheckReport check_hereditary(const std::string& name, const PropOverF& C);

/* The isomorphisms form a free symmetric monoidal groupoid on the
 * one-color isomorphisms: tensoring along each bijection hits every
 * isomorphism exactly once. */
CheckReport check_core_free(const std::string& name, const PropOverF& C);

// the counit is an equivalence; expected to agree with generation + hereditary
CheckReport check_counit(const std::string& name, std::shared_ptr<const PropOverF> C);

/* The envelope of the commutative operad against finite sets: same homs
 * sizes m^n, and identical composition, identity and symmetry tables under
 * the slot-for-slot identification. */
CheckReport check_commutative_envelope(const std::string& name, uint32_t bound);

// global ids of the invertible arrows from a to b
std::vector<uint32_t> iso_arrows(const PropOverF& C, uint32_t a, uint32_t b);

/* A reproducible free operad for randomized sweeps: one or two colors, one
 * to three generators of arity two or three, a full stabilizer only where
 * an input word is constant, and optionally a spare color that no
 * generator touches. */
Operad random_free_operad(uint64_t seed, uint32_t arity_bound, bool spare_color);

}  // namespace opdcat
