#include "monotile/subshift.hpp"

#include <algorithm>
#include <unordered_map>

namespace monotile {

namespace {

  void need_depth(BlockHierarchy const& h, std::size_t n, std::size_t m) {
    if (n >= m) {
      throw Error(ErrorCode::domain, "need n < m");
    }
    if (m > h.depth()) {
      throw Error(ErrorCode::insufficient_depth,
                  "hierarchy depth " + std::to_string(h.depth()) + " < " + std::to_string(m));
    }
  }

  // Block index (1-based) of the level-n cell with the given digits inside
  // B_{m,1}, following the assignments down from level m.
  std::size_t block_of_cell(BlockHierarchy const& h, CosetAddress const& a, std::size_t m) {
    std::size_t k = 1;
    for (std::size_t d = 0; d < a.digits.size(); ++d) {
      std::size_t i = m - 1 - d;
      auto        j = h.ladder.glue[i].index_of(a.digits[d]);
      k             = h.assignments[i].maps[k - 1][j];
    }
    return k;
  }

  // occurrence position -> block index for windows v F_n inside F_m
  std::unordered_map<Element, std::size_t, ElementHash>
  occurrences(BlockHierarchy const& h, std::size_t n, std::size_t m, Pattern const& patch) {
    auto const& ctx = h.ladder.ctx;
    auto const& Fn  = h.ladder.levels[n];
    auto const& Fm  = h.ladder.levels[m];
    auto const& fam = h.families[n];
    std::unordered_map<Element, std::size_t, ElementHash> out;
    std::vector<int> window(Fn.size());
    for (auto const& v : Fm) {
      bool inside = true;
      for (std::size_t i = 0; i < Fn.size() && inside; ++i) {
        auto p = Fm.index_of(ctx.product(v, Fn[i]));
        if (p == Fm.size()) {
          inside = false;
        } else {
          window[i] = patch.symbols[p];
        }
      }
      if (!inside) {
        continue;
      }
      for (std::size_t k = 0; k < fam.size(); ++k) {
        if (fam[k].symbols == window) {
          out.emplace(v, k + 1);
          break;
        }
      }
    }
    return out;
  }

  bool interior(GroupContext const& ctx, Element const& v, FiniteSubset const& F,
                FiniteSubset const& W) {
    return std::all_of(F.begin(), F.end(),
                       [&](Element const& u) { return W.contains(ctx.product(v, u)); });
  }

  Rational sup_norm(Element const& g) {
    Rational r(0);
    for (auto const& x : g.coords()) {
      auto a = x.abs();
      if (a > r) {
        r = a;
      }
    }
    return r;
  }

}  // namespace

CosetAddress address(FolnerLadder const& ladder, Element const& v, std::size_t n, std::size_t m) {
  if (n > m || m >= ladder.levels.size()) {
    throw Error(ErrorCode::insufficient_depth, "address levels out of range");
  }
  auto const& ctx = ladder.ctx;
  if (!ladder.levels[m].contains(v)) {
    throw Error(ErrorCode::out_of_window, v.str() + " is not in F_" + std::to_string(m));
  }
  CosetAddress a;
  Element      rest = v;
  for (std::size_t i = m; i-- > n;) {
    bool found = false;
    for (auto const& c : ladder.glue[i]) {
      auto r = ctx.product(ctx.inverse(c), rest);
      if (ladder.levels[i].contains(r)) {
        a.digits.push_back(c);
        rest  = std::move(r);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::construction,
                  "no cell of level " + std::to_string(i) + " contains " + rest.str());
    }
  }
  a.residual = std::move(rest);
  return a;
}

Element reassemble(GroupContext const& ctx, CosetAddress const& a) {
  Element r = a.residual;
  for (std::size_t d = a.digits.size(); d-- > 0;) {
    r = ctx.product(a.digits[d], r);
  }
  return r;
}

FiniteSubset return_times(BlockHierarchy const& h, std::size_t n, std::size_t m) {
  need_depth(h, n, m);
  return expand_glue(h.ladder, n, m);
}

FiniteSubset scan_occurrences(BlockHierarchy const& h, std::size_t n, std::size_t m,
                              Pattern const* patch) {
  need_depth(h, n, m);
  auto                 occ = occurrences(h, n, m, patch ? *patch : x0_patch(h, m));
  std::vector<Element> out;
  out.reserve(occ.size());
  for (auto const& kv : occ) {
    out.push_back(kv.first);
  }
  return FiniteSubset(std::move(out));
}

PartitionReport check_partitions(BlockHierarchy const& h, std::size_t n, std::size_t m,
                                 Pattern const* patch) {
  need_depth(h, n, m);
  if (m < n + 2) {
    throw Error(ErrorCode::domain, "partition checks need m > n+1");
  }
  auto const&    ctx = h.ladder.ctx;
  auto const&    L   = h.ladder;
  Pattern const& P   = patch ? *patch : x0_patch(h, m);
  auto           occ_n  = occurrences(h, n, m, P);
  auto           occ_n1 = occurrences(h, n + 1, m, P);
  PartitionReport rep;
  auto note = [&](Element const& v, std::string what) {
    if (rep.witnesses.size() < 8) {
      rep.witnesses.push_back({v, std::move(what)});
    }
  };

  // All visible claims (u, k) on v at level `lev`.
  auto claims = [&](Element const& v, std::size_t lev,
                    std::unordered_map<Element, std::size_t, ElementHash> const& occ) {
    std::vector<std::pair<Element, std::size_t>> out;
    for (auto const& u : L.levels[lev]) {
      auto it = occ.find(ctx.product(v, ctx.inverse(u)));
      if (it != occ.end()) {
        out.emplace_back(u, it->second);
      }
    }
    return out;
  };

  for (auto const& v : L.levels[m]) {
    if (!interior(ctx, v, L.levels[n], L.levels[m])) {
      continue;
    }
    ++rep.interior;
    auto cl = claims(v, n, occ_n);
    auto a  = address(L, v, n, m);
    auto k  = block_of_cell(h, a, m);
    if (cl.size() != 1) {
      rep.kr1 = false;
      note(v, std::to_string(cl.size()) + " level-" + std::to_string(n) + " claims");
    } else if (!(cl[0].first == a.residual) || cl[0].second != k) {
      rep.kr1 = false;
      note(v, "claim (" + cl[0].first.str() + "," + std::to_string(cl[0].second)
                  + ") differs from the address (" + a.residual.str() + "," + std::to_string(k)
                  + ")");
    }

    if (!interior(ctx, v, L.levels[n + 1], L.levels[m])) {
      continue;
    }
    ++rep.interior_next;
    auto up = claims(v, n + 1, occ_n1);
    if (up.size() != 1) {
      rep.kr2 = false;
      note(v, std::to_string(up.size()) + " level-" + std::to_string(n + 1) + " claims");
      continue;
    }
    // u' = c u with c in J_n, u in F_n; the cell c of B_{n+1,k'} is B_{n,a_{k'}(c)}.
    auto inner = address(L, up[0].first, n, n + 1);
    auto j     = L.glue[n].index_of(inner.digits[0]);
    auto pred  = h.assignments[n].maps[up[0].second - 1][j];
    if (cl.size() != 1 || !(cl[0].first == inner.residual) || cl[0].second != pred) {
      rep.kr2 = false;
      note(v, "level-" + std::to_string(n + 1) + " claim predicts (" + inner.residual.str() + ","
                  + std::to_string(pred) + ") at level " + std::to_string(n));
    }
  }
  return rep;
}

Fraction boundary_mass_bound(FolnerLadder const& ladder, Element const& g, std::size_t n) {
  if (n >= ladder.levels.size()) {
    throw Error(ErrorCode::insufficient_depth, "ladder has no level " + std::to_string(n));
  }
  auto const& F = ladder.levels[n];
  auto        Fg = right_translate(ladder.ctx, F, g);
  auto        shell = set_difference(F, Fg);
  Fraction    r(Integer(static_cast<unsigned long>(shell.size())),
                Integer(static_cast<unsigned long>(F.size())));
  r.canonicalize();
  return r;
}

SyndeticityReport syndeticity_window(BlockHierarchy const& h, std::size_t n, std::size_t m) {
  if (n < 1) {
    throw Error(ErrorCode::domain, "syndeticity needs n >= 1");
  }
  need_depth(h, n, m);
  auto const& ctx = h.ladder.ctx;
  auto const& Fn  = h.ladder.levels[n];
  auto const& Fm  = h.ladder.levels[m];
  auto        occ = occurrences(h, n - 1, m, x0_patch(h, m));
  std::vector<Element> R;
  for (auto const& kv : occ) {
    if (kv.second == 1) {
      R.push_back(kv.first);
    }
  }
  std::sort(R.begin(), R.end());
  SyndeticityReport rep;
  rep.returns = R.size();
  std::vector<Element> Rinv;
  for (auto const& r : R) {
    Rinv.push_back(ctx.inverse(r));
  }
  for (auto const& x : Fm) {
    bool                    in_cell = false;
    std::optional<Rational> best;
    for (auto const& ri : Rinv) {
      auto d = ctx.product(ri, x);
      in_cell |= Fn.contains(d);
      auto nrm = sup_norm(d);
      if (!best || nrm < *best) {
        best = nrm;
      }
    }
    if (!in_cell && rep.covered) {
      rep.covered   = false;
      rep.uncovered = x;
    }
    if (best && *best > rep.gap_radius) {
      rep.gap_radius = *best;
    }
  }
  for (auto const& a : Fn) {
    auto ai = ctx.inverse(a);
    for (auto const& b : Fn) {
      auto nrm = sup_norm(ctx.product(ai, b));
      if (nrm > rep.diameter) {
        rep.diameter = nrm;
      }
    }
  }
  return rep;
}

}  // namespace monotile
