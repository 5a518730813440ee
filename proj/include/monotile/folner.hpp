#pragma once

// Congruent right Følner sequences of left monotiles: a finite prefix
// F_0, ..., F_N together with glue sets J_n such that the translates c F_n
// (c in J_n) partition F_{n+1}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monotile/group.hpp"

namespace monotile {

struct FolnerLadder {
  GroupContext              ctx = GroupContext::trivial();
  std::vector<FiniteSubset> levels;  // F_0 .. F_N
  std::vector<FiniteSubset> glue;    // J_0 .. J_{N-1}

  std::size_t depth() const noexcept {
    return glue.size();
  }
  std::size_t ratio(std::size_t n) const {
    return glue.at(n).size();
  }
  // True if every glue set has the same size from level `from` on.
  bool is_stationary(std::size_t from = 0) const;
};

struct InvarianceReport {
  std::size_t  level = 0;
  FiniteSubset window;
  Fraction     defect;
};

// 1 - |{g in F : gK in F}| / |F|
Fraction right_invariance_defect(GroupContext const& ctx, FiniteSubset const& F,
                                 FiniteSubset const& K);
// |Fg \ F| / |F|
Fraction folner_defect(GroupContext const& ctx, FiniteSubset const& F, Element const& g);

std::vector<InvarianceReport> invariance_profile(FolnerLadder const& ladder,
                                                 FiniteSubset const& K);

struct CongruenceReport {
  bool pass = true;
  // On failure: the offending level and what went wrong. For an overlap,
  // `first`/`second` are the two glue elements and `witness` the shared
  // element; for a coverage failure `witness` is the element in question.
  std::size_t            level = 0;
  std::string            kind;
  std::optional<Element> first, second, witness;
  std::string            message;
};

CongruenceReport check_congruent(FolnerLadder const& ladder);

// Composite glue {c_{m-1} ... c_n : c_i in J_i}; tiles F_m by F_n.
FiniteSubset expand_glue(FolnerLadder const& ladder, std::size_t n, std::size_t m);
// The subsequence F_{n_0}, F_{n_1}, ... with composite glue.
FolnerLadder regroup_ladder(FolnerLadder const& ladder, std::vector<std::size_t> const& indices);
// For each sample element, the first level containing it.
std::vector<std::optional<std::size_t>> exhausts(FolnerLadder const& ladder,
                                                 std::vector<Element> const& sample);
// F_n -> F_n^{-1}: right Følner sets become left Følner sets (the glue then
// acts on the right, so the result is not a ladder in the above sense).
std::vector<FiniteSubset> inverse_levels(FolnerLadder const& ladder);

// Centred boxes of side base^n in Z^d with glue {-(base-1)/2 .. (base-1)/2}^d * base^n.
FolnerLadder build_lattice_ladder(int d, std::size_t depth, std::int64_t base = 3);
// Subgroups of order p^n of the Prüfer p-group.
FolnerLadder build_pruefer_ladder(std::int64_t p, std::size_t depth);

// Inductive chain <g_0> <= <g_0,g_1> <= ... in an abelian group. Level n+1
// adds g_n with digits {0..l-1} (l the order of g_n modulo the previous
// subgroup) or {-1,0,1} when that order is infinite, and triples the range
// of every earlier infinite coordinate. Once the generators run out only the
// tripling continues.
FolnerLadder build_abelian_chain_ladder(GroupContext const& ctx,
                                        std::vector<Element> const& generators,
                                        std::size_t depth);
// 1, 1/2, 1/6, ..., 1/count!
std::vector<Element> factorial_generators(std::size_t count);

// A group G with a normal subgroup L (given as a ladder inside G) and
// quotient Q (given as a ladder in Q), together with a section and the
// projection G -> Q.
struct ExactSequence {
  GroupContext                          G = GroupContext::trivial();
  FolnerLadder                          L;
  FolnerLadder                          Q;
  std::function<Element(Element const&)> section;
  std::function<Element(Element const&)> projection;
};

struct InvarianceTarget {
  FiniteSubset K;
  Fraction     eps;
};

struct ComposeResult {
  FolnerLadder             ladder;
  std::vector<std::size_t> t;        // Q levels used
  std::vector<std::size_t> m;        // L levels used
  std::vector<Fraction>    defects;  // achieved defect per level (level 0: none)
};

// F_0 = L_0 * T^_0 and, for s >= 1, F_s = L_{m_s} * T^_{t_s} where T^ is the
// lifted tower of Q and (t_s, m_s) is the lexicographically least pair with
// t_s > t_{s-1}, m_s > m_{s-1} whose defect against targets[s-1] is small
// enough. Throws invariance_unreachable when the ladders run out or after
// `cap` L levels.
ComposeResult compose_exact_sequence(ExactSequence const& seq,
                                     std::vector<InvarianceTarget> const& targets,
                                     std::size_t cap = 64);

// Heisenberg group with L its centre (ternary ladder of depth l_depth) and
// Q = Z^2 (ternary ladder of depth q_depth).
ExactSequence heisenberg_center_sequence(std::size_t l_depth = 8, std::size_t q_depth = 5);
// K = {(1,0,0),(0,1,0),(0,0,1)} and eps_s = 2^-s for s = 1..count.
std::vector<InvarianceTarget> default_heisenberg_targets(std::size_t count);

// F_n := U_n R inside a finite extension; `base` is a ladder of ext.base().
FolnerLadder extend_virtually(GroupContext const& ext, FolnerLadder const& base);

}  // namespace monotile
