#include "monotile/blocks.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace monotile {

int Pattern::at(Element const& g) const {
  auto i = support.index_of(g);
  if (i == support.size()) {
    throw Error(ErrorCode::out_of_window, g.str() + " is outside the pattern support");
  }
  return symbols[i];
}

Family base_blocks(int k0, GroupContext const& ctx, FiniteSubset const& F0) {
  if (k0 < 3) {
    throw Error(ErrorCode::domain, "at least 3 base blocks are needed, got " + std::to_string(k0));
  }
  auto id = F0.index_of(ctx.identity());
  if (id == F0.size()) {
    throw Error(ErrorCode::domain, "F_0 must contain the identity");
  }
  Family out;
  for (int k = 1; k <= k0; ++k) {
    Pattern p{F0, std::vector<int>(F0.size(), 0)};
    p.symbols[id] = k;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

  std::string c_violation(Assignment const& a, std::size_t id, std::size_t k_n) {
    for (std::size_t k = 0; k < a.maps.size(); ++k) {
      auto const& m = a.maps[k];
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j == id && m[j] != 1) {
          return "C1 violated: column " + std::to_string(k + 1)
                 + " puts block " + std::to_string(m[j]) + " on the identity cell";
        }
        if (j != id && (m[j] < 2 || m[j] > k_n)) {
          return "C2 violated: column " + std::to_string(k + 1) + " puts block "
                 + std::to_string(m[j]) + " on cell " + std::to_string(j + 1);
        }
      }
    }
    return "";
  }

}  // namespace

Family assemble_level(GroupContext const& ctx, Family const& family, FiniteSubset const& Fn,
                      FiniteSubset const& Jn, Assignment const& assignment) {
  auto id = Jn.index_of(ctx.identity());
  if (id == Jn.size()) {
    throw Error(ErrorCode::construction, "J_n must contain the identity");
  }
  for (auto const& m : assignment.maps) {
    if (m.size() != Jn.size()) {
      throw Error(ErrorCode::construction, "assignment has the wrong number of cells");
    }
  }
  auto v = c_violation(assignment, id, family.size());
  if (!v.empty()) {
    throw Error(ErrorCode::construction, v);
  }

  FiniteSubset F1;
  if (!disjoint_product(ctx, Jn, Fn, F1)) {
    throw Error(ErrorCode::construction, "the translates c F_n overlap");
  }
  // pos[j * |F_n| + i] = index of c_j v_i in F_{n+1}
  std::vector<std::size_t> pos(Jn.size() * Fn.size());
  for (std::size_t j = 0; j < Jn.size(); ++j) {
    for (std::size_t i = 0; i < Fn.size(); ++i) {
      pos[j * Fn.size() + i] = F1.index_of(ctx.product(Jn[j], Fn[i]));
    }
  }
  Family out;
  for (auto const& m : assignment.maps) {
    Pattern p{F1, std::vector<int>(F1.size(), 0)};
    for (std::size_t j = 0; j < Jn.size(); ++j) {
      auto const& src = family[m[j] - 1].symbols;
      for (std::size_t i = 0; i < Fn.size(); ++i) {
        p.symbols[pos[j * Fn.size() + i]] = src[i];
      }
    }
    out.push_back(std::move(p));
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      if (out[a].symbols == out[b].symbols) {
        throw Error(ErrorCode::construction, "blocks " + std::to_string(a + 1) + " and "
                                                 + std::to_string(b + 1) + " coincide");
      }
    }
  }
  return out;
}

Assignment assignment_from_matrix(ManagedMatrix const& Mtilde, GroupContext const& ctx,
                                  FiniteSubset const& Jn, std::size_t k_n, std::size_t level) {
  if (Mtilde.rows() != k_n) {
    throw Error(ErrorCode::dimension_mismatch, "matrix has " + std::to_string(Mtilde.rows())
                                                   + " rows but the family has "
                                                   + std::to_string(k_n) + " blocks");
  }
  auto id = Jn.index_of(ctx.identity());
  if (id == Jn.size()) {
    throw Error(ErrorCode::infeasible, "J_n must contain the identity");
  }
  Integer jsize(static_cast<unsigned long>(Jn.size()));
  for (std::size_t k = 0; k < Mtilde.cols(); ++k) {
    for (std::size_t i = 0; i < Mtilde.rows(); ++i) {
      if (Mtilde(i, k) < 0) {
        throw Error(ErrorCode::infeasible, "negative count in column " + std::to_string(k + 1));
      }
    }
    if (Mtilde.column_sum(k) != jsize) {
      throw Error(ErrorCode::infeasible, "column " + std::to_string(k + 1) + " sums to "
                                             + Mtilde.column_sum(k).get_str() + ", |J_n| = "
                                             + jsize.get_str());
    }
    if (Mtilde(0, k) != 1) {
      throw Error(ErrorCode::infeasible,
                  "column " + std::to_string(k + 1) + " must put block 1 on exactly one cell");
    }
  }

  Assignment                             out{level, {}};
  std::set<std::vector<std::uint32_t>>   taken;
  for (std::size_t k = 0; k < Mtilde.cols(); ++k) {
    // Greedy: cells other than the identity, in canonical order, receive
    // block indices 2..k_n in nondecreasing order.
    std::vector<std::uint32_t> vec;
    for (std::size_t i = 1; i < Mtilde.rows(); ++i) {
      vec.insert(vec.end(), Mtilde(i, k).get_ui(), static_cast<std::uint32_t>(i + 1));
    }
    bool ok = !taken.count(vec);
    for (std::size_t a = 0; !ok && a < vec.size(); ++a) {
      for (std::size_t b = a + 1; !ok && b < vec.size(); ++b) {
        if (vec[a] == vec[b]) {
          continue;
        }
        std::swap(vec[a], vec[b]);
        ok = !taken.count(vec);
        if (!ok) {
          std::swap(vec[a], vec[b]);
        }
      }
    }
    if (!ok) {
      // Each earlier column rules out at most one arrangement, so looking at
      // |taken|+1 arrangements is enough unless they run out.
      std::sort(vec.begin(), vec.end());
      for (std::size_t tries = 0; tries <= taken.size(); ++tries) {
        if (!taken.count(vec)) {
          ok = true;
          break;
        }
        if (!std::next_permutation(vec.begin(), vec.end())) {
          break;
        }
      }
    }
    if (!ok) {
      throw Error(ErrorCode::distinctness,
                  "column " + std::to_string(k + 1) + " admits no arrangement distinct from "
                      + "the earlier ones");
    }
    taken.insert(vec);
    std::vector<std::uint32_t> full;
    full.reserve(Jn.size());
    full.insert(full.end(), vec.begin(), vec.begin() + static_cast<std::ptrdiff_t>(id));
    full.push_back(1);
    full.insert(full.end(), vec.begin() + static_cast<std::ptrdiff_t>(id), vec.end());
    out.maps.push_back(std::move(full));
  }
  return out;
}

C3Report verify_C3(GroupContext const& ctx, Family const& family, FiniteSubset const& Fn) {
  C3Report rep;
  Element  id = ctx.identity();
  std::vector<Element> order;
  if (Fn.contains(id)) {
    order.push_back(id);
  }
  for (auto const& g : Fn) {
    if (g != id) {
      order.push_back(g);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> overlap;  // (v, gv)
  for (auto const& g : order) {
    overlap.clear();
    for (std::size_t i = 0; i < Fn.size(); ++i) {
      auto j = Fn.index_of(ctx.product(g, Fn[i]));
      if (j != Fn.size()) {
        overlap.emplace_back(i, j);
      }
    }
    bool is_id = g == id;
    for (std::size_t k = 0; k < family.size(); ++k) {
      for (std::size_t k2 = 0; k2 < family.size(); ++k2) {
        if (is_id && k == k2) {
          continue;
        }
        auto const& a = family[k].symbols;
        auto const& b = family[k2].symbols;
        bool        match = std::all_of(overlap.begin(), overlap.end(),
                                        [&](auto const& p) { return a[p.second] == b[p.first]; });
        if (match) {
          rep.pass = false;
          rep.g    = g;
          rep.k    = k + 1;
          rep.k2   = k2 + 1;
          return rep;
        }
      }
    }
  }
  return rep;
}

ManagedMatrix augment_matrix(ManagedMatrix const& M) {
  Integer bound(static_cast<unsigned long>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (M(i, j) <= bound) {
        throw Error(ErrorCode::augmentation,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = "
                        + M(i, j).get_str() + " does not exceed the column count "
                        + bound.get_str());
      }
    }
  }
  std::size_t          R = M.rows() + 1, C = M.cols() + 1;
  std::vector<Integer> e(R * C);
  for (std::size_t c = 0; c < C; ++c) {
    std::size_t src = c == 0 ? 0 : c - 1;
    e[c]            = 1;
    e[C + c]        = M(0, src) - 1;
    for (std::size_t i = 1; i < M.rows(); ++i) {
      e[(i + 1) * C + c] = M(i, src);
    }
  }
  return ManagedMatrix(R, C, M.ratio(), std::move(e));
}

bool satisfies_slack_bounds(ManagedMatrix const& Mtilde) {
  Integer k1(static_cast<unsigned long>(Mtilde.cols()));
  if (k1 < 3 || Mtilde.rows() < 2) {
    return false;
  }
  for (std::size_t i = 1; i < Mtilde.rows(); ++i) {
    for (std::size_t j = 0; j < Mtilde.cols(); ++j) {
      if (Mtilde(i, j) < k1) {
        return false;
      }
    }
  }
  return true;
}

BlockHierarchy build_hierarchy(FolnerLadder const& ladder,
                               std::vector<ManagedMatrix> const& Mtilde) {
  if (Mtilde.empty()) {
    throw Error(ErrorCode::insufficient_depth, "no matrices to build from");
  }
  if (Mtilde.size() > ladder.depth()) {
    throw Error(ErrorCode::insufficient_depth,
                std::to_string(Mtilde.size()) + " matrices but the ladder has depth "
                    + std::to_string(ladder.depth()));
  }
  BlockHierarchy h;
  h.ladder.ctx = ladder.ctx;
  h.ladder.levels.assign(ladder.levels.begin(),
                         ladder.levels.begin() + static_cast<std::ptrdiff_t>(Mtilde.size() + 1));
  h.ladder.glue.assign(ladder.glue.begin(),
                       ladder.glue.begin() + static_cast<std::ptrdiff_t>(Mtilde.size()));
  h.matrices = Mtilde;
  h.families.push_back(base_blocks(static_cast<int>(Mtilde[0].rows()), ladder.ctx,
                                   ladder.levels[0]));
  for (std::size_t n = 0; n < Mtilde.size(); ++n) {
    if (Mtilde[n].ratio() != static_cast<unsigned long>(ladder.ratio(n))) {
      throw Error(ErrorCode::scale_mismatch,
                  "matrix " + std::to_string(n) + " has ratio " + Mtilde[n].ratio().get_str()
                      + " but |J_" + std::to_string(n) + "| = " + std::to_string(ladder.ratio(n)));
    }
    auto a = assignment_from_matrix(Mtilde[n], ladder.ctx, ladder.glue[n],
                                    h.families[n].size(), n);
    h.families.push_back(
        assemble_level(ladder.ctx, h.families[n], ladder.levels[n], ladder.glue[n], a));
    h.assignments.push_back(std::move(a));
  }
  return h;
}

Pattern read_cell(GroupContext const& ctx, Pattern const& p, Element const& c,
                  FiniteSubset const& F) {
  Pattern out{F, {}};
  out.symbols.reserve(F.size());
  for (auto const& v : F) {
    out.symbols.push_back(p.at(ctx.product(c, v)));
  }
  return out;
}

std::string check_structure(BlockHierarchy const& h) {
  auto const& L   = h.ladder;
  auto const& ctx = L.ctx;
  for (std::size_t n = 0; n < h.depth(); ++n) {
    auto const& J  = L.glue[n];
    auto        id = J.index_of(ctx.identity());
    if (id == J.size()) {
      return "level " + std::to_string(n) + ": J_n lacks the identity";
    }
    auto v = c_violation(h.assignments[n], id, h.families[n].size());
    if (!v.empty()) {
      return "level " + std::to_string(n) + ": " + v;
    }
    if (h.assignments[n].maps.size() != h.families[n + 1].size()) {
      return "level " + std::to_string(n) + ": assignment and family sizes differ";
    }
    for (std::size_t k = 0; k < h.families[n + 1].size(); ++k) {
      for (std::size_t j = 0; j < J.size(); ++j) {
        auto cell = read_cell(ctx, h.families[n + 1][k], J[j], L.levels[n]);
        if (!(cell == h.families[n][h.assignments[n].maps[k][j] - 1])) {
          return "level " + std::to_string(n + 1) + ": block " + std::to_string(k + 1)
                 + " disagrees with its assignment on the cell " + J[j].str();
        }
      }
    }
  }
  return "";
}

Pattern const& x0_patch(BlockHierarchy const& h, std::size_t n) {
  if (n >= h.families.size()) {
    throw Error(ErrorCode::insufficient_depth, "hierarchy has no level " + std::to_string(n));
  }
  return h.families[n][0];
}

ManagedMatrix ternary_default_matrix() {
  return ManagedMatrix::from_rows({{1, 1, 1}, {2, 1, 0}, {0, 1, 2}});
}

ManagedMatrix generic_default_matrix(std::int64_t ratio) {
  if (ratio < 3) {
    throw Error(ErrorCode::infeasible,
                "ratio " + std::to_string(ratio) + " leaves no room for three distinct blocks");
  }
  long a = static_cast<long>(ratio / 2);
  long b = static_cast<long>(ratio) - 1 - a;
  return ManagedMatrix::from_rows({{1, 1, 1}, {a, a, a - 1}, {b, b, b + 1}});
}

std::vector<ManagedMatrix> default_matrices(FolnerLadder const& ladder) {
  std::vector<ManagedMatrix> out;
  for (std::size_t n = 0; n < ladder.depth(); ++n) {
    auto r = static_cast<std::int64_t>(ladder.ratio(n));
    out.push_back(r == 3 ? ternary_default_matrix() : generic_default_matrix(r));
  }
  return out;
}

}  // namespace monotile
