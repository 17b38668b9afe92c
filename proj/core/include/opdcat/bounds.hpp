#pragma once

#include <cstdint>
#include <string>

namespace opdcat {

/* Enumeration bounds for all exhaustive checks.
 *
 * set    largest finite set appearing as an object of F or a pointed set <n>
 * chain  longest chain used by per-shape Segal checks (number of arrows)
 * tuple  longest color tuple in a free symmetric monoidal category
 * arity  largest operation arity
 * dfset/dfchain  bounds for the fully materialized chain categories; these
 *                are kept smaller than set/chain because object counts grow
 *                like iterated exponentials in the chain length
 */
struct Bounds {
    uint32_t set = 4;
    uint32_t chain = 3;
    uint32_t tuple = 4;
    uint32_t arity = 4;
    uint32_t dfset = 2;
    uint32_t dfchain = 2;

    // parses "set=4,chain=3,tuple=4,arity=4" (any subset, any order; dfset=
    // and dfchain= are accepted too); throws std::invalid_argument on junk
    static Bounds parse(const std::string& text);

    std::string describe() const;

    bool operator==(const Bounds&) const = default;
};

}  // namespace opdcat
