#pragma once

#include "opdcat/barwick.hpp"
#include "opdcat/bounds.hpp"
#include "opdcat/envelope.hpp"

#include <memory>
#include <string>
#include <vector>

namespace opdcat {

// whole file in, whole file out; read throws std::runtime_error when the
// file cannot be opened
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/* Arrow literals for the factor command.  Pointed maps use the library form
 * "3->2:[0,1,1]" with 0 the basepoint, simplex maps "[1]->[3]:[0,2]", chains
 * "2>2>1:[1,2][1,1]", and a chain morphism spells out its endpoints:
 *
 *   2>1:[1,1] => 2>2>1:[1,2][1,1] ; [1]->[2]:[1,2] @ [1,2],[1]
 *
 * with the level injections 1-based, one bracket per source level. */
SimplexMap parse_simplex(const std::string& text);
Chain parse_chain(const std::string& text);
ChainMorphism parse_chain_morphism(const std::string& text);
std::string chain_morphism_literal(const ChainMorphism& m);

/* Operads come from "builtin:<name>" or from a JSON file; builtins take
 * their arity bound from the bounds argument.  A file carries its colors
 * and arity bound plus either a "generators" block (free operad on a
 * signature, colors addressed by position) or an "operations" block with
 * complete unit, composition and symmetry tables. */
std::shared_ptr<Operad> load_operad(const std::string& what, const Bounds& b);
std::shared_ptr<Operad> parse_operad_json(const std::string& text);
const std::vector<std::string>& operad_builtins();

/* Props come from "builtin:absorbing" (three endomorphisms of a two letter
 * word, not hereditary), "builtin:fsets" (finite sets with disjoint union),
 * "env:<operad>" (the envelope of any operad spec at the tuple bound), or a
 * JSON file with explicit hom, identity, composition and symmetry tables. */
std::shared_ptr<PropOverF> load_prop(const std::string& what, const Bounds& b);
std::shared_ptr<PropOverF> parse_prop_json(const std::string& text);
std::string dump_prop_json(const PropOverF& C);

/* Presheaf dumps carry the pattern their tables live on, the bounds, and
 * the object names, so a reader can rebuild the category and refuse data
 * that does not line up.  Kinds: "fstar", "deltaop", "chainop", "aug". */
struct PresheafFile {
    std::string kind;
    Bounds bounds;
    std::vector<std::string> objects;
    std::vector<uint32_t> sizes;
    std::vector<std::vector<uint32_t>> action;
    std::vector<std::vector<std::string>> elements;  // empty when unnamed
};
std::string dump_presheaf_json(const std::string& kind, const Bounds& b,
                               const SetPresheaf& X);
PresheafFile parse_presheaf_json(const std::string& text);
// checks the object names and table shapes against the category, then attaches
SetPresheaf attach_presheaf(const PresheafFile& f, std::shared_ptr<const FinCat> cat);

}  // namespace opdcat
