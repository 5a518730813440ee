#pragma once

// Inverse limits of simplices Δ(k_n, p_n) under managed matrices, computed
// exactly at finite depth.

#include <cstddef>
#include <optional>
#include <vector>

#include "monotile/blocks.hpp"
#include "monotile/matrix.hpp"

namespace monotile {

// Nonnegative coordinates summing to 1/scale.
struct SimplexPoint {
  std::vector<Fraction> coords;
  Integer               scale;

  bool operator==(SimplexPoint const&) const = default;
};

bool in_simplex(SimplexPoint const& z);

struct ManagedSequence {
  std::vector<ManagedMatrix> matrices;
  std::vector<Integer>       scales;  // p_0 .. p_len, p_{n+1} = ratio_n p_n

  static ManagedSequence from_matrices(std::vector<ManagedMatrix> ms, Integer p0 = Integer(1));
  std::size_t            size() const noexcept {
    return matrices.size();
  }
  // Managed shape, chained dimensions and scales; throws on the first problem.
  void check() const;
};

// M_n(i,j) = number of cells c F_n of B_{n+1,j} that read B_{n,i}.
ManagedMatrix incidence_from_hierarchy(BlockHierarchy const& h, std::size_t n);

// z at scale p_{n+1} -> M z at scale p_{n+1} / ratio.
SimplexPoint push(ManagedMatrix const& M, SimplexPoint const& z);

struct SimplexApproximant {
  std::size_t               level = 0;
  std::size_t               depth = 0;
  Integer                   scale;
  std::vector<SimplexPoint> vertices;
};

// Images of the standard vertices of Δ(k_{n+d}, p_{n+d}) under M_n ... M_{n+d-1}.
SimplexApproximant approximate_limit(ManagedSequence const& seq, std::size_t n, std::size_t d);

struct NestingCertificate {
  bool holds = true;
  // lambdas[j] expresses depth-d vertex j in the depth-(d-1) vertices.
  std::vector<std::vector<Fraction>> lambdas;
};

// Depth d >= 1 against depth d-1 (depth 0 being the standard vertices).
NestingCertificate nesting_certificate(ManagedSequence const& seq, std::size_t n, std::size_t d);

// Exact convex-hull membership; fills lambda with a witness when found.
bool in_convex_hull(std::vector<std::vector<Fraction>> const& vertices,
                    std::vector<Fraction> const& x, std::vector<Fraction>* lambda = nullptr);

Fraction l1_distance(std::vector<Fraction> const& a, std::vector<Fraction> const& b);

// For each j: || w_j(d) - w_j(d-1) ||_1.
std::vector<Fraction> cluster_diameters(ManagedSequence const& seq, std::size_t n, std::size_t d);
// Largest L1 distance between two vertices of the approximant.
Fraction hull_diameter(SimplexApproximant const& a);

struct Lemma8Selection {
  std::vector<std::size_t>   indices;  // n_0 = 0 < n_1 < ...
  std::vector<ManagedMatrix> grouped;  // M_{n_i} ... M_{n_{i+1}-1}
  std::size_t                tail = 0;  // matrices after the last group
};

// Greedy: each n_{i+1} is the least index whose grouped product has every
// entry above its column count. Throws hypothesis if some
// cols_n > K ratio_n, exhausted if not even one group forms.
Lemma8Selection select_subsequence_lemma8(ManagedSequence const& seq, Fraction const& K);
bool            lemma8_certificate(Lemma8Selection const& sel);

// First e > start with M_start ... M_{e-1} strictly positive.
std::optional<std::size_t> positivity_horizon(ManagedSequence const& seq, std::size_t start = 0);

struct Realization {
  ManagedSequence       sequence;  // D matrices
  std::size_t           depth = 0;
  SimplexApproximant    approximant;
  std::vector<Fraction> diameters;
  Fraction              hull;
};

// d x d matrices with ratio - (d-1) on the diagonal and 1 elsewhere; the
// depth D is the least with every cluster diameter <= tol. `ratios[n]` is
// used for level n; when it runs out the last ratio repeats if
// `stationary`, otherwise insufficient_depth is thrown.
Realization realize_finite_simplex(std::size_t d, std::vector<Integer> const& ratios,
                                   bool stationary, Fraction const& tol,
                                   std::size_t max_depth = 64, Integer p0 = Integer(1));
Realization realize_finite_simplex(std::size_t d, FolnerLadder const& ladder, Fraction const& tol,
                                   std::size_t max_depth = 64);

}  // namespace monotile
