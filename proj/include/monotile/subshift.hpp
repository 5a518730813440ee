#pragma once

// Finite-window checks on the point x_0 of a block hierarchy: coset
// addresses, return times, Kakutani-Rokhlin partition exactness, boundary
// shells and syndeticity of returns.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monotile/blocks.hpp"

namespace monotile {

struct CosetAddress {
  std::vector<Element> digits;    // c_{m-1}, ..., c_n
  Element              residual;  // in F_n
};

// The unique digits c_i in J_i and residual s in F_n with v = c_{m-1}...c_n s.
CosetAddress address(FolnerLadder const& ladder, Element const& v, std::size_t n, std::size_t m);
Element      reassemble(GroupContext const& ctx, CosetAddress const& a);

// {c_{m-1} ... c_n : c_i in J_i}
FiniteSubset return_times(BlockHierarchy const& h, std::size_t n, std::size_t m);

// Positions v with v F_n inside F_m at which `patch` (default: x_0 on F_m)
// reads one of the level-n blocks. Pure pattern matching.
FiniteSubset scan_occurrences(BlockHierarchy const& h, std::size_t n, std::size_t m,
                              Pattern const* patch = nullptr);

struct PartitionWitness {
  Element     position;
  std::string what;
};

struct PartitionReport {
  bool                          kr1 = true;
  bool                          kr2 = true;
  std::size_t                   interior = 0;       // positions with v F_n in F_m
  std::size_t                   interior_next = 0;  // positions with v F_{n+1} in F_m
  std::vector<PartitionWitness> witnesses;          // at most a handful

  bool pass() const noexcept {
    return kr1 && kr2;
  }
};

// KR1: every interior position v is claimed by exactly one (u, k) with u in
// F_n and v u^{-1} a visible occurrence of B_{n,k}, and that claim is the
// one predicted by v's address. KR2: the level n+1 claim of v, pushed down
// through the gluing data, gives the observed level-n claim. Requires
// m > n+1.
PartitionReport check_partitions(BlockHierarchy const& h, std::size_t n, std::size_t m,
                                 Pattern const* patch = nullptr);

// |F_n \ F_n g| / |F_n|
Fraction boundary_mass_bound(FolnerLadder const& ladder, Element const& g, std::size_t n);

struct SyndeticityReport {
  bool                   covered = true;
  std::size_t            returns = 0;
  Rational               gap_radius;  // max over h of the distance to the nearest return
  Rational               diameter;    // of F_n, same metric
  std::optional<Element> uncovered;
};

// Returns of x_0 to the cylinder of B_{n-1,1} inside F_m; checks that every
// point of F_m lies in r F_n for some return r. Distances are the largest
// absolute coordinate of r^{-1} h. Requires n >= 1 and m > n.
SyndeticityReport syndeticity_window(BlockHierarchy const& h, std::size_t n, std::size_t m);

}  // namespace monotile
