#pragma once

// JSON forms of the library's objects. Elements are written with
// Element::str() and read back through parse_element; big integers are
// written as strings, small ones as numbers.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "monotile/blocks.hpp"
#include "monotile/measures.hpp"
#include "monotile/subshift.hpp"

namespace monotile {

using Json = nlohmann::ordered_json;

// {"kind":"lattice","d":2}, {"kind":"cyclic","n":6}, {"kind":"heisenberg3"},
// {"kind":"pruefer","p":2}, {"kind":"rationals"}, {"kind":"trivial"},
// {"kind":"direct_product","factors":[...]},
// {"kind":"finite_extension","ambient":{...},"base":{...},"coset_reps":[...]}
Json         group_to_json(GroupContext const& ctx);
GroupContext group_from_json(Json const& j);

Json         subset_to_json(FiniteSubset const& F);
FiniteSubset subset_from_json(GroupContext const& ctx, Json const& j);

Json         ladder_to_json(FolnerLadder const& L);
FolnerLadder ladder_from_json(Json const& j);

Json    pattern_to_json(Pattern const& p);
Pattern pattern_from_json(GroupContext const& ctx, Json const& j);

Json          integer_to_json(Integer const& z);
Integer       integer_from_json(Json const& j);
Json          matrix_to_json(ManagedMatrix const& M);
ManagedMatrix matrix_from_json(Json const& j);
Json                       matrices_to_json(std::vector<ManagedMatrix> const& ms);
std::vector<ManagedMatrix> matrices_from_json(Json const& j);

// Keeps families and assignments as stored, so a hand-edited file is
// checked as written rather than rebuilt.
Json           hierarchy_to_json(BlockHierarchy const& h);
BlockHierarchy hierarchy_from_json(Json const& j);

Json fraction_to_json(Fraction const& q);
Json point_to_json(SimplexPoint const& z);
Json approximant_to_json(SimplexApproximant const& a);

Json congruence_to_json(CongruenceReport const& r);
Json c3_to_json(C3Report const& r);
Json partition_to_json(PartitionReport const& r);
Json syndeticity_to_json(SyndeticityReport const& r);

Json        read_json_file(std::filesystem::path const& path);
std::string read_text_file(std::filesystem::path const& path);
void        write_text_file(std::filesystem::path const& path, std::string const& text);

}  // namespace monotile
