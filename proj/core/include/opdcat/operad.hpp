#pragma once

#include "opdcat/finset.hpp"
#include "opdcat/report.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace opdcat {

/* A colored operad materialized up to an arity bound.  Operations carry an
 * input color word and an output color.  Composition, the symmetric group
 * actions and the units are explicit tables; gamma is only defined where
 * the composite arity stays inside the bound. */
class Operad {
public:
    explicit Operad(uint32_t arity_bound);

    uint32_t add_color(std::string name);
    uint32_t add_op(std::vector<uint32_t> inputs, uint32_t output, std::string name);
    void set_unit(uint32_t color, uint32_t op);
    void set_gamma(uint32_t q, std::vector<uint32_t> ps, uint32_t result);
    void set_act(uint32_t p, const FinMap& pi, uint32_t result);
    // checks that every unit is set and that the tables are complete
    void finalize();

    uint32_t color_count() const { return static_cast<uint32_t>(colorName_.size()); }
    uint32_t op_count() const { return static_cast<uint32_t>(opIn_.size()); }
    uint32_t arity_bound() const { return arityBound_; }

    uint32_t arity(uint32_t p) const { return static_cast<uint32_t>(opIn_.at(p).size()); }
    const std::vector<uint32_t>& inputs(uint32_t p) const { return opIn_.at(p); }
    uint32_t output(uint32_t p) const { return opOut_.at(p); }
    uint32_t unit(uint32_t color) const;

    const std::string& color_name(uint32_t c) const { return colorName_.at(c); }
    const std::string& op_name(uint32_t p) const { return opName_.at(p); }
    uint32_t color_by_name(const std::string& name) const;
    uint32_t op_by_name(const std::string& name) const;

    // ops with the given profile, ascending id
    std::vector<uint32_t> ops_with(const std::vector<uint32_t>& in, uint32_t out) const;
    std::vector<uint32_t> ops_of_arity(uint32_t n) const;

    // every tuple (p_1,...,p_m) that gamma(q; -) must cover: outputs match
    // the inputs of q and the arities sum to at most the bound
    std::vector<std::vector<uint32_t>> gamma_tuples(uint32_t q) const;

    uint32_t gamma(uint32_t q, const std::vector<uint32_t>& ps) const;
    // right action: slot t of act(p, pi) is slot pi(t) of p
    uint32_t act(uint32_t p, const FinMap& pi) const;

    /* Unit laws, associativity, both equivariance laws, and the group
     * action laws, all by enumeration over the tables. */
    CheckReport validate(const std::string& name) const;

private:
    std::vector<std::vector<uint32_t>> opIn_;
    std::vector<uint32_t> opOut_;
    std::vector<std::string> opName_, colorName_;
    std::vector<uint32_t> unit_;
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> gamma_;
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> act_;
    uint32_t arityBound_ = 0;
    bool finalized_ = false;
};

/* The permutation sending block j of a concatenation to where the blocks
 * land after reshuffling them by pi: sigma(start'[j] + s) = start[pi(j)] + s
 * with the old block sizes in arities. */
FinMap block_perm(const FinMap& pi, const std::vector<uint32_t>& arities);
// block diagonal tau_1 + ... + tau_m
FinMap direct_sum(const std::vector<FinMap>& taus);

struct OperadMorphism {
    std::shared_ptr<const Operad> src;
    std::shared_ptr<const Operad> dst;
    std::vector<uint32_t> color;  // per src color
    std::vector<uint32_t> op;     // per src op

    CheckReport validate(const std::string& name) const;
};

// both maps bijective, equal arity bounds, and a morphism both ways
CheckReport check_operad_iso(const std::string& name, const OperadMorphism& F);

// the ops satisfying keep must be closed under gamma, act and units
Operad suboperad(const Operad& O, const std::vector<char>& keep);

/* Stock operads.  All are materialized up to the arity bound. */
Operad make_commutative(uint32_t arity_bound);               // one op per arity
Operad make_trivial(uint32_t colors, uint32_t arity_bound);  // units only
Operad make_parity(uint32_t arity_bound);                    // O(n) = Z/2, gamma adds

/* Free operads on generators of arity >= 2.  An op is an isomorphism class
 * of leaf-labeled trees; at each vertex the children may be shuffled by the
 * declared stabilizer of its generator. */
struct FreeGenerator {
    std::string name;
    std::vector<uint32_t> inputs;  // colors; size >= 2 for free_operad
    uint32_t output = 0;
    enum class Stab { trivial, full, listed } stab = Stab::trivial;
    std::vector<FinMap> stab_gens;  // for listed: generators of the subgroup
};

Operad free_operad(uint32_t colors, const std::vector<FreeGenerator>& gens,
                   uint32_t arity_bound);

/* Tree class counting for arbitrary signatures.  Nullary and unary
 * generators are allowed here; the count is per vertex budget since the
 * classes do not thin out with arity alone. */
int64_t count_free_ops(uint32_t colors, const std::vector<FreeGenerator>& gens,
                       uint32_t arity, uint32_t output, uint32_t max_vertices);

Operad make_free_binary(uint32_t arity_bound);  // one symmetric binary generator
Operad make_free_pair(uint32_t arity_bound);    // asymmetric b plus symmetric s

}  // namespace opdcat
