#include "monotile/measures.hpp"

#include <algorithm>

namespace monotile {

namespace {

  Fraction frac(Integer const& a, Integer const& b) {
    Fraction q(a, b);
    q.canonicalize();
    return q;
  }

  std::vector<std::vector<Fraction>> vertex_coords(ManagedMatrix const& P, Integer const& p) {
    std::vector<std::vector<Fraction>> out(P.cols());
    for (std::size_t j = 0; j < P.cols(); ++j) {
      for (std::size_t i = 0; i < P.rows(); ++i) {
        out[j].push_back(frac(P(i, j), p));
      }
    }
    return out;
  }

  std::vector<std::vector<Fraction>> standard_vertices(std::size_t k, Integer const& p) {
    std::vector<std::vector<Fraction>> out(k, std::vector<Fraction>(k, Fraction(0)));
    for (std::size_t j = 0; j < k; ++j) {
      out[j][j] = frac(Integer(1), p);
    }
    return out;
  }

  // Vertices of the depth-d approximant at level n, as coordinate lists.
  std::vector<std::vector<Fraction>> vertices_at(ManagedSequence const& seq, std::size_t n,
                                                 std::size_t d) {
    if (d == 0) {
      if (n >= seq.size()) {
        throw Error(ErrorCode::insufficient_depth, "no matrix at level " + std::to_string(n));
      }
      return standard_vertices(seq.matrices[n].rows(), seq.scales[n]);
    }
    return vertex_coords(product_range(seq.matrices, n, n + d), seq.scales[n + d]);
  }

}  // namespace

bool in_simplex(SimplexPoint const& z) {
  Fraction s(0);
  for (auto const& x : z.coords) {
    if (x < 0) {
      return false;
    }
    s += x;
  }
  return z.scale > 0 && s == frac(Integer(1), z.scale);
}

ManagedSequence ManagedSequence::from_matrices(std::vector<ManagedMatrix> ms, Integer p0) {
  ManagedSequence s;
  s.scales.push_back(p0);
  for (auto const& m : ms) {
    s.scales.push_back(s.scales.back() * m.ratio());
  }
  s.matrices = std::move(ms);
  return s;
}

void ManagedSequence::check() const {
  if (scales.size() != matrices.size() + 1) {
    throw Error(ErrorCode::scale_mismatch, "need one scale per level");
  }
  for (std::size_t n = 0; n < matrices.size(); ++n) {
    auto v = matrices[n].managed_violation();
    if (!v.empty()) {
      throw Error(ErrorCode::managed, "matrix " + std::to_string(n) + ": " + v);
    }
    if (n + 1 < matrices.size() && matrices[n].cols() != matrices[n + 1].rows()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "matrix " + std::to_string(n) + " has " + std::to_string(matrices[n].cols())
                      + " columns but matrix " + std::to_string(n + 1) + " has "
                      + std::to_string(matrices[n + 1].rows()) + " rows");
    }
    if (scales[n + 1] != scales[n] * matrices[n].ratio()) {
      throw Error(ErrorCode::scale_mismatch, "p_" + std::to_string(n + 1) + " != ratio * p_"
                                                 + std::to_string(n));
    }
  }
}

ManagedMatrix incidence_from_hierarchy(BlockHierarchy const& h, std::size_t n) {
  if (n >= h.depth()) {
    throw Error(ErrorCode::insufficient_depth, "hierarchy has no level " + std::to_string(n + 1));
  }
  auto const&          L    = h.ladder;
  auto const&          low  = h.families[n];
  auto const&          high = h.families[n + 1];
  std::vector<Integer> e(low.size() * high.size(), Integer(0));
  for (std::size_t j = 0; j < high.size(); ++j) {
    for (auto const& c : L.glue[n]) {
      auto cell = read_cell(L.ctx, high[j], c, L.levels[n]);
      auto it   = std::find(low.begin(), low.end(), cell);
      if (it == low.end()) {
        throw Error(ErrorCode::construction, "cell " + c.str() + " of block " + std::to_string(j + 1)
                                                 + " at level " + std::to_string(n + 1)
                                                 + " reads no level-" + std::to_string(n) + " block");
      }
      e[static_cast<std::size_t>(it - low.begin()) * high.size() + j] += 1;
    }
  }
  return ManagedMatrix(low.size(), high.size(), Integer(static_cast<unsigned long>(L.ratio(n))),
                       std::move(e));
}

SimplexPoint push(ManagedMatrix const& M, SimplexPoint const& z) {
  if (z.coords.size() != M.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "point has " + std::to_string(z.coords.size())
                                                   + " coordinates, matrix has "
                                                   + std::to_string(M.cols()) + " columns");
  }
  if (z.scale <= 0 || z.scale % M.ratio() != 0) {
    throw Error(ErrorCode::scale_mismatch,
                "scale " + z.scale.get_str() + " is not a multiple of ratio " + M.ratio().get_str());
  }
  if (!in_simplex(z)) {
    throw Error(ErrorCode::scale_mismatch, "point does not lie in its simplex");
  }
  SimplexPoint out{std::vector<Fraction>(M.rows(), Fraction(0)), Integer(z.scale / M.ratio())};
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      out.coords[i] += M(i, j) * z.coords[j];
    }
  }
  return out;
}

SimplexApproximant approximate_limit(ManagedSequence const& seq, std::size_t n, std::size_t d) {
  if (d < 1) {
    throw Error(ErrorCode::domain, "approximation depth must be >= 1");
  }
  if (n + d > seq.size()) {
    throw Error(ErrorCode::insufficient_depth, "sequence has " + std::to_string(seq.size())
                                                   + " matrices, need "
                                                   + std::to_string(n + d));
  }
  SimplexApproximant a{n, d, seq.scales[n], {}};
  for (auto& v : vertices_at(seq, n, d)) {
    a.vertices.push_back({std::move(v), seq.scales[n]});
  }
  return a;
}

NestingCertificate nesting_certificate(ManagedSequence const& seq, std::size_t n, std::size_t d) {
  if (d < 1 || n + d > seq.size()) {
    throw Error(ErrorCode::insufficient_depth, "nesting needs 1 <= d and n+d <= length");
  }
  auto outer = vertices_at(seq, n, d - 1);
  auto inner = vertices_at(seq, n, d);
  auto const& M  = seq.matrices[n + d - 1];
  NestingCertificate cert;
  // w_j(d) = sum_i M(i,j)/ratio w_i(d-1); verified, not assumed.
  for (std::size_t j = 0; j < inner.size(); ++j) {
    std::vector<Fraction> lam;
    Fraction              total(0);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      lam.push_back(frac(M(i, j), M.ratio()));
      total += lam.back();
    }
    std::vector<Fraction> comb(inner[j].size(), Fraction(0));
    for (std::size_t i = 0; i < lam.size(); ++i) {
      for (std::size_t c = 0; c < comb.size(); ++c) {
        comb[c] += lam[i] * outer[i][c];
      }
    }
    bool ok = total == 1 && comb == inner[j]
              && std::all_of(lam.begin(), lam.end(), [](Fraction const& x) { return x >= 0; });
    if (!ok) {
      // Fall back to a general hull test.
      ok = in_convex_hull(outer, inner[j], &lam);
    }
    cert.holds = cert.holds && ok;
    cert.lambdas.push_back(std::move(lam));
  }
  return cert;
}

Fraction l1_distance(std::vector<Fraction> const& a, std::vector<Fraction> const& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "points of different dimension");
  }
  Fraction s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += abs(a[i] - b[i]);
  }
  return s;
}

std::vector<Fraction> cluster_diameters(ManagedSequence const& seq, std::size_t n, std::size_t d) {
  if (d < 1 || n + d > seq.size()) {
    throw Error(ErrorCode::insufficient_depth, "cluster diameters need 1 <= d and n+d <= length");
  }
  auto prev = vertices_at(seq, n, d - 1);
  auto cur  = vertices_at(seq, n, d);
  if (prev.size() != cur.size()) {
    throw Error(ErrorCode::dimension_mismatch, "vertex counts differ between depths");
  }
  std::vector<Fraction> out;
  for (std::size_t j = 0; j < cur.size(); ++j) {
    out.push_back(l1_distance(cur[j], prev[j]));
  }
  return out;
}

Fraction hull_diameter(SimplexApproximant const& a) {
  Fraction best(0);
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < a.vertices.size(); ++j) {
      best = std::max(best, l1_distance(a.vertices[i].coords, a.vertices[j].coords));
    }
  }
  return best;
}

Lemma8Selection select_subsequence_lemma8(ManagedSequence const& seq, Fraction const& K) {
  for (std::size_t n = 0; n < seq.size(); ++n) {
    auto const& M = seq.matrices[n];
    if (Fraction(Integer(static_cast<unsigned long>(M.cols()))) > K * Fraction(M.ratio())) {
      throw Error(ErrorCode::hypothesis,
                  "level " + std::to_string(n) + ": " + std::to_string(M.cols())
                      + " columns exceed K * ratio = " + to_string(Fraction(K * M.ratio())));
    }
  }
  Lemma8Selection sel;
  sel.indices.push_back(0);
  std::size_t start = 0;
  while (start < seq.size()) {
    std::optional<ManagedMatrix> P;
    std::size_t                  e = start;
    bool                         found = false;
    while (e < seq.size()) {
      P = P ? *P * seq.matrices[e] : seq.matrices[e];
      ++e;
      if (P->min_entry() > static_cast<unsigned long>(P->cols())) {
        found = true;
        break;
      }
    }
    if (!found) {
      break;
    }
    sel.indices.push_back(e);
    sel.grouped.push_back(*P);
    start = e;
  }
  sel.tail = seq.size() - start;
  if (sel.grouped.empty()) {
    throw Error(ErrorCode::exhausted, "no product of the " + std::to_string(seq.size())
                                          + " available matrices has all entries above its "
                                          + "column count");
  }
  return sel;
}

bool lemma8_certificate(Lemma8Selection const& sel) {
  if (sel.indices.size() != sel.grouped.size() + 1) {
    return false;
  }
  for (std::size_t i = 0; i < sel.grouped.size(); ++i) {
    if (sel.indices[i + 1] <= sel.indices[i]) {
      return false;
    }
    auto const& G = sel.grouped[i];
    if (!(G.min_entry() > static_cast<unsigned long>(G.cols()))) {
      return false;
    }
  }
  return true;
}

std::optional<std::size_t> positivity_horizon(ManagedSequence const& seq, std::size_t start) {
  std::optional<ManagedMatrix> P;
  for (std::size_t e = start; e < seq.size(); ++e) {
    P = P ? *P * seq.matrices[e] : seq.matrices[e];
    if (P->strictly_positive()) {
      return e + 1;
    }
  }
  return std::nullopt;
}

Realization realize_finite_simplex(std::size_t d, std::vector<Integer> const& ratios,
                                   bool stationary, Fraction const& tol, std::size_t max_depth,
                                   Integer p0) {
  if (d < 2) {
    throw Error(ErrorCode::domain, "need at least 2 extreme points");
  }
  if (tol <= 0) {
    throw Error(ErrorCode::domain, "tolerance must be positive");
  }
  if (ratios.empty()) {
    throw Error(ErrorCode::insufficient_depth, "no ratios given");
  }
  Integer const dd(static_cast<unsigned long>(d));
  auto ratio_at = [&](std::size_t n) -> Integer const& {
    if (n < ratios.size()) {
      return ratios[n];
    }
    if (!stationary) {
      throw Error(ErrorCode::insufficient_depth,
                  "ladder ends at depth " + std::to_string(ratios.size())
                      + " before the tolerance is met");
    }
    return ratios.back();
  };
  auto matrix_for = [&](Integer const& r) {
    if (r < dd + 1) {
      throw Error(ErrorCode::infeasible, "ratio " + r.get_str() + " is too small for "
                                             + std::to_string(d) + " extreme points");
    }
    std::vector<Integer> e(d * d, Integer(1));
    for (std::size_t i = 0; i < d; ++i) {
      e[i * d + i] = r - (dd - 1);
    }
    return ManagedMatrix(d, d, r, std::move(e));
  };

  Realization out;
  std::vector<ManagedMatrix> ms;
  Integer                    p = p0;
  auto prev = standard_vertices(d, p0);
  std::optional<ManagedMatrix> P;
  for (std::size_t D = 1; D <= max_depth; ++D) {
    auto const& r = ratio_at(D - 1);
    ms.push_back(matrix_for(r));
    P = P ? *P * ms.back() : ms.back();
    p *= r;
    auto cur = vertex_coords(*P, p);
    std::vector<Fraction> diam;
    for (std::size_t j = 0; j < d; ++j) {
      diam.push_back(l1_distance(cur[j], prev[j]));
    }
    if (std::all_of(diam.begin(), diam.end(), [&](Fraction const& x) { return x <= tol; })) {
      out.sequence    = ManagedSequence::from_matrices(std::move(ms), p0);
      out.depth       = D;
      out.approximant = approximate_limit(out.sequence, 0, D);
      out.diameters   = std::move(diam);
      out.hull        = hull_diameter(out.approximant);
      return out;
    }
    prev = std::move(cur);
  }
  throw Error(ErrorCode::exhausted,
              "tolerance " + to_string(tol) + " not reached within depth " + std::to_string(max_depth));
}

Realization realize_finite_simplex(std::size_t d, FolnerLadder const& ladder, Fraction const& tol,
                                   std::size_t max_depth) {
  std::vector<Integer> ratios;
  for (std::size_t n = 0; n < ladder.depth(); ++n) {
    ratios.emplace_back(static_cast<unsigned long>(ladder.ratio(n)));
  }
  return realize_finite_simplex(d, ratios, ladder.is_stationary(), tol, max_depth,
                                Integer(static_cast<unsigned long>(ladder.levels[0].size())));
}

}  // namespace monotile
