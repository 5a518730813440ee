#pragma once

// Hierarchies of finite blocks B_{n,1}, ..., B_{n,k_n} over the sets F_n of a
// congruent ladder. Level n+1 blocks are glued from level n blocks: the cell
// c F_n (c in J_n) of B_{n+1,k} carries B_{n, a_k(c)}. Block indices are
// 1-based throughout, as are the rows/columns in the error messages.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monotile/folner.hpp"
#include "monotile/matrix.hpp"

namespace monotile {

struct Pattern {
  FiniteSubset     support;
  std::vector<int> symbols;  // aligned with support's canonical order

  int  at(Element const& g) const;  // throws out_of_window
  bool operator==(Pattern const&) const = default;
};

using Family = std::vector<Pattern>;

struct Assignment {
  std::size_t level = 0;
  // maps[k-1][j] = a_k(c_j), c_j the j-th element of J_n in canonical order.
  std::vector<std::vector<std::uint32_t>> maps;
};

struct BlockHierarchy {
  FolnerLadder               ladder;
  std::vector<Family>        families;     // levels 0..depth
  std::vector<Assignment>    assignments;  // 0..depth-1
  std::vector<ManagedMatrix> matrices;     // the counts each level was built from

  std::size_t depth() const noexcept {
    return assignments.size();
  }
};

// B_{0,k}(1) = k and 0 elsewhere on F_0, for k = 1..k0.
Family base_blocks(int k0, GroupContext const& ctx, FiniteSubset const& F0);

Family assemble_level(GroupContext const& ctx, Family const& family, FiniteSubset const& Fn,
                      FiniteSubset const& Jn, Assignment const& assignment);

// Deterministic coset placement realizing the counts of Mtilde.
Assignment assignment_from_matrix(ManagedMatrix const& Mtilde, GroupContext const& ctx,
                                  FiniteSubset const& Jn, std::size_t k_n,
                                  std::size_t level = 0);

struct C3Report {
  bool                   pass = true;
  std::optional<Element> g;
  std::size_t            k = 0, k2 = 0;
};

// Brute force over g in F_n and all block pairs (k, k').
C3Report verify_C3(GroupContext const& ctx, Family const& family, FiniteSubset const& Fn);

// Precondition: every entry of M exceeds M.cols().
ManagedMatrix augment_matrix(ManagedMatrix const& M);
// 3 <= k_{n+1} + 1 <= min{ Mtilde(i,j) : i >= 2 }, with k_{n+1}+1 = Mtilde.cols().
bool satisfies_slack_bounds(ManagedMatrix const& Mtilde);

// Glues level after level. families[0] has Mtilde[0].rows() base blocks.
BlockHierarchy build_hierarchy(FolnerLadder const& ladder,
                               std::vector<ManagedMatrix> const& Mtilde);

// C1/C2 for every assignment and the cell-by-cell gluing rule; returns the
// first violation or "" if none.
std::string check_structure(BlockHierarchy const& h);

Pattern const& x0_patch(BlockHierarchy const& h, std::size_t n);

// Restriction of p to the translate c F (read back to F's coordinates).
Pattern read_cell(GroupContext const& ctx, Pattern const& p, Element const& c,
                  FiniteSubset const& F);

// Shipped count matrices. The ternary one is [[1,1,1],[2,1,0],[0,1,2]];
// the generic 3x3 one for ratio r >= 3 has columns (1,a,b), (1,a,b),
// (1,a-1,b+1) with a = ceil((r-1)/2).
ManagedMatrix ternary_default_matrix();
ManagedMatrix generic_default_matrix(std::int64_t ratio);
// One generic matrix per ladder level (the ternary one for ratio 3).
std::vector<ManagedMatrix> default_matrices(FolnerLadder const& ladder);

}  // namespace monotile
