#include "monotile/folner.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace monotile {

namespace {

  Element power(GroupContext const& ctx, Element const& g, std::int64_t k) {
    Element base = k < 0 ? ctx.inverse(g) : g;
    auto    e    = static_cast<std::uint64_t>(k < 0 ? -k : k);
    Element acc  = ctx.identity();
    while (e != 0) {
      if (e & 1U) {
        acc = ctx.product(acc, base);
      }
      e >>= 1U;
      if (e != 0) {
        base = ctx.product(base, base);
      }
    }
    return acc;
  }

  std::int64_t checked_pow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (__builtin_mul_overflow(r, b, &r) || r > (std::int64_t(1) << 61)) {
        throw Error(ErrorCode::domain, "ladder too deep for 64-bit coordinates");
      }
    }
    return r;
  }

  // All points of {lo..hi}^d, in lexicographic order.
  std::vector<Element> box(std::size_t d, std::int64_t lo, std::int64_t hi, std::int64_t step) {
    std::vector<Element> out;
    Element::coords_type cur(d, Rational(lo * step));
    std::vector<std::int64_t> idx(d, lo);
    while (true) {
      out.emplace_back(cur);
      std::size_t i = d;
      while (i > 0) {
        --i;
        if (idx[i] < hi) {
          ++idx[i];
          cur[i] = Rational(idx[i] * step);
          break;
        }
        idx[i] = lo;
        cur[i] = Rational(lo * step);
        if (i == 0) {
          return out;
        }
      }
      if (d == 0) {
        return out;
      }
    }
  }

  FiniteSubset map_set(FiniteSubset const& F, std::function<Element(Element const&)> const& f) {
    std::vector<Element> out;
    out.reserve(F.size());
    for (auto const& x : F) {
      out.push_back(f(x));
    }
    return FiniteSubset(std::move(out));
  }

}  // namespace

bool FolnerLadder::is_stationary(std::size_t from) const {
  for (std::size_t n = from; n + 1 < glue.size(); ++n) {
    if (glue[n].size() != glue[n + 1].size()) {
      return false;
    }
  }
  return true;
}

Fraction right_invariance_defect(GroupContext const& ctx, FiniteSubset const& F,
                                 FiniteSubset const& K) {
  if (F.empty()) {
    throw Error(ErrorCode::domain, "invariance defect of an empty set");
  }
  std::size_t good = 0;
  for (auto const& g : F) {
    bool inside = std::all_of(K.begin(), K.end(),
                              [&](Element const& k) { return F.contains(ctx.product(g, k)); });
    good += inside;
  }
  Fraction r(Integer(static_cast<unsigned long>(F.size() - good)),
             Integer(static_cast<unsigned long>(F.size())));
  r.canonicalize();
  return r;
}

Fraction folner_defect(GroupContext const& ctx, FiniteSubset const& F, Element const& g) {
  if (F.empty()) {
    throw Error(ErrorCode::domain, "folner defect of an empty set");
  }
  std::size_t outside = 0;
  for (auto const& f : F) {
    outside += !F.contains(ctx.product(f, g));
  }
  Fraction r(Integer(static_cast<unsigned long>(outside)),
             Integer(static_cast<unsigned long>(F.size())));
  r.canonicalize();
  return r;
}

std::vector<InvarianceReport> invariance_profile(FolnerLadder const& ladder,
                                                 FiniteSubset const& K) {
  std::vector<InvarianceReport> out;
  for (std::size_t n = 0; n < ladder.levels.size(); ++n) {
    out.push_back({n, K, right_invariance_defect(ladder.ctx, ladder.levels[n], K)});
  }
  return out;
}

CongruenceReport check_congruent(FolnerLadder const& ladder) {
  if (ladder.levels.size() < 2 || ladder.glue.size() + 1 != ladder.levels.size()) {
    throw Error(ErrorCode::domain, "a ladder needs N+1 >= 2 levels and N glue sets");
  }
  auto const&      ctx = ladder.ctx;
  Element const    id  = ctx.identity();
  CongruenceReport rep;
  auto             fail = [&](std::size_t n, std::string kind, std::string msg) {
    rep.pass    = false;
    rep.level   = n;
    rep.kind    = std::move(kind);
    rep.message = std::move(msg);
    return rep;
  };
  if (!ladder.levels[0].contains(id)) {
    return fail(0, "identity", "F_0 does not contain the identity");
  }
  for (std::size_t n = 0; n < ladder.glue.size(); ++n) {
    auto const& J  = ladder.glue[n];
    auto const& F  = ladder.levels[n];
    auto const& F1 = ladder.levels[n + 1];
    if (!J.contains(id)) {
      return fail(n, "identity", "J_" + std::to_string(n) + " does not contain the identity");
    }
    std::vector<std::pair<Element, std::uint32_t>> prods;
    prods.reserve(J.size() * F.size());
    for (std::uint32_t j = 0; j < J.size(); ++j) {
      for (auto const& f : F) {
        prods.emplace_back(ctx.product(J[j], f), j);
      }
    }
    std::sort(prods.begin(), prods.end());
    for (std::size_t i = 1; i < prods.size(); ++i) {
      if (prods[i].first == prods[i - 1].first) {
        rep.first   = J[prods[i - 1].second];
        rep.second  = J[prods[i].second];
        rep.witness = prods[i].first;
        return fail(n, "overlap",
                    "translates by " + rep.first->str() + " and " + rep.second->str()
                        + " share " + rep.witness->str());
      }
    }
    std::size_t i = 0, k = 0;
    while (i < prods.size() || k < F1.size()) {
      if (k == F1.size() || (i < prods.size() && prods[i].first < F1[k])) {
        rep.witness = prods[i].first;
        rep.first   = J[prods[i].second];
        return fail(n, "outside",
                    prods[i].first.str() + " lies in a translate but not in F_"
                        + std::to_string(n + 1));
      }
      if (i == prods.size() || F1[k] < prods[i].first) {
        rep.witness = F1[k];
        return fail(n, "uncovered",
                    F1[k].str() + " in F_" + std::to_string(n + 1) + " is not covered");
      }
      ++i;
      ++k;
    }
  }
  return rep;
}

FiniteSubset expand_glue(FolnerLadder const& ladder, std::size_t n, std::size_t m) {
  if (n > m || m > ladder.depth()) {
    throw Error(ErrorCode::insufficient_depth, "glue expansion range out of bounds");
  }
  FiniteSubset E{ladder.ctx.identity()};
  for (std::size_t i = n; i < m; ++i) {
    E = product_set(ladder.ctx, ladder.glue[i], E);
  }
  return E;
}

FolnerLadder regroup_ladder(FolnerLadder const& ladder, std::vector<std::size_t> const& indices) {
  if (indices.empty()) {
    throw Error(ErrorCode::domain, "regrouping needs at least one index");
  }
  FolnerLadder out;
  out.ctx = ladder.ctx;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= ladder.levels.size() || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error(ErrorCode::domain, "regrouping indices must increase within the ladder");
    }
    out.levels.push_back(ladder.levels[indices[i]]);
    if (i > 0) {
      out.glue.push_back(expand_glue(ladder, indices[i - 1], indices[i]));
    }
  }
  return out;
}

std::vector<std::optional<std::size_t>> exhausts(FolnerLadder const& ladder,
                                                 std::vector<Element> const& sample) {
  std::vector<std::optional<std::size_t>> out;
  for (auto const& g : sample) {
    std::optional<std::size_t> first;
    for (std::size_t n = 0; n < ladder.levels.size(); ++n) {
      if (ladder.levels[n].contains(g)) {
        first = n;
        break;
      }
    }
    out.push_back(first);
  }
  return out;
}

std::vector<FiniteSubset> inverse_levels(FolnerLadder const& ladder) {
  std::vector<FiniteSubset> out;
  for (auto const& F : ladder.levels) {
    out.push_back(inverse_set(ladder.ctx, F));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Concrete ladders
////////////////////////////////////////////////////////////////////////////

FolnerLadder build_lattice_ladder(int d, std::size_t depth, std::int64_t base) {
  if (d < 1 || depth < 1) {
    throw Error(ErrorCode::domain, "lattice ladder needs d >= 1 and depth >= 1");
  }
  if (base < 3 || base % 2 == 0) {
    throw Error(ErrorCode::domain, "lattice ladder base must be odd and >= 3");
  }
  FolnerLadder L;
  L.ctx   = GroupContext::lattice(d);
  auto du = static_cast<std::size_t>(d);
  auto h  = (base - 1) / 2;
  for (std::size_t n = 0; n <= depth; ++n) {
    auto side = checked_pow(base, n);
    auto half = (side - 1) / 2;
    L.levels.push_back(FiniteSubset::from_sorted(box(du, -half, half, 1)));
    if (n < depth) {
      L.glue.push_back(FiniteSubset::from_sorted(box(du, -h, h, side)));
    }
  }
  return L;
}

FolnerLadder build_pruefer_ladder(std::int64_t p, std::size_t depth) {
  if (depth < 1) {
    throw Error(ErrorCode::domain, "pruefer ladder needs depth >= 1");
  }
  FolnerLadder L;
  L.ctx = GroupContext::pruefer(p);  // rejects non-primes
  for (std::size_t n = 0; n <= depth; ++n) {
    auto                 q = checked_pow(p, n);
    std::vector<Element> F;
    for (std::int64_t m = 0; m < q; ++m) {
      F.push_back(Element{Rational(m, q)});
    }
    L.levels.push_back(FiniteSubset::from_sorted(std::move(F)));
    if (n < depth) {
      auto                 q1 = checked_pow(p, n + 1);
      std::vector<Element> J;
      for (std::int64_t j = 0; j < p; ++j) {
        J.push_back(Element{Rational(j, q1)});
      }
      L.glue.push_back(FiniteSubset::from_sorted(std::move(J)));
    }
  }
  return L;
}

////////////////////////////////////////////////////////////////////////////
// Abelian chains
////////////////////////////////////////////////////////////////////////////

namespace {

  // A factor of the group on which membership in a subgroup generated by
  // finitely many elements can be decided.
  struct Atom {
    GroupKind    kind;  // lattice (one coordinate), cyclic, pruefer, rationals
    std::int64_t n = 0;
    std::size_t  offset;
  };

  void atoms_of(GroupContext const& ctx, std::size_t offset, std::vector<Atom>& out) {
    switch (ctx.kind()) {
      case GroupKind::lattice:
        for (std::size_t i = 0; i < ctx.width(); ++i) {
          out.push_back({GroupKind::lattice, 0, offset + i});
        }
        return;
      case GroupKind::cyclic:
      case GroupKind::pruefer:
        out.push_back({ctx.kind(), ctx.modulus(), offset});
        return;
      case GroupKind::rationals:
        out.push_back({GroupKind::rationals, 0, offset});
        return;
      case GroupKind::direct_product:
        for (auto const& f : ctx.factors()) {
          atoms_of(f, offset, out);
          offset += f.width();
        }
        return;
      default:
        throw Error(ErrorCode::unsupported_group,
                    "no subgroup membership oracle for " + std::string(to_string(ctx.kind())));
    }
  }

  Fraction gcd_q(Fraction const& a, Fraction const& b) {
    Integer num, den;
    mpz_gcd(num.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    Fraction r(num, den);
    r.canonicalize();
    return r;
  }

  // Order of x modulo the subgroup generated by `prev` inside one atom;
  // nullopt means infinite.
  std::optional<Integer> atom_order(Atom const& atom, std::vector<Fraction> const& prev,
                                    Fraction const& x) {
    switch (atom.kind) {
      case GroupKind::lattice:
      case GroupKind::rationals: {
        Fraction q(0);
        for (auto const& y : prev) {
          q = gcd_q(q, y);
        }
        if (x == 0) {
          return Integer(1);
        }
        if (q == 0) {
          return std::nullopt;
        }
        Fraction r = x / q;
        r.canonicalize();
        return r.get_den();
      }
      case GroupKind::cyclic: {
        Integer d(static_cast<long>(atom.n));
        for (auto const& y : prev) {
          d = gcd(d, y.get_num());
        }
        return Integer(d / gcd(d, x.get_num()));
      }
      case GroupKind::pruefer: {
        Integer D(1);
        for (auto const& y : prev) {
          D = lcm(D, y.get_den());
        }
        Integer den = x.get_den();
        return Integer(den / gcd(den, D));
      }
      default:
        break;
    }
    throw Error(ErrorCode::unsupported_group, "unsupported atom");
  }

  struct ChainCoord {
    Element     g;
    bool        infinite = false;
    std::size_t tripled  = 0;  // digit scale is 3^tripled
  };

}  // namespace

std::vector<Element> factorial_generators(std::size_t count) {
  std::vector<Element> out;
  std::int64_t         f = 1;
  for (std::size_t k = 1; k <= count; ++k) {
    if (__builtin_mul_overflow(f, static_cast<std::int64_t>(k), &f)) {
      throw Error(ErrorCode::domain, "too many factorial generators");
    }
    out.push_back(Element{Rational(1, f)});
  }
  return out;
}

FolnerLadder build_abelian_chain_ladder(GroupContext const& ctx,
                                        std::vector<Element> const& generators,
                                        std::size_t depth) {
  if (depth < 1) {
    throw Error(ErrorCode::domain, "chain ladder needs depth >= 1");
  }
  if (!ctx.is_abelian()) {
    throw Error(ErrorCode::unsupported_group, "chain ladders need an abelian group");
  }
  std::vector<Atom> atoms;
  atoms_of(ctx, 0, atoms);
  for (auto const& g : generators) {
    ctx.validate(g);
  }

  // Which atom carries each generator; generators touching several atoms
  // have no membership oracle here.
  auto support = [&](Element const& g) -> std::optional<std::size_t> {
    std::optional<std::size_t> at;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (!g[atoms[a].offset].is_zero()) {
        if (at) {
          throw Error(ErrorCode::unsupported_group,
                      "generator " + g.str() + " is not supported on a single factor");
        }
        at = a;
      }
    }
    return at;
  };

  FolnerLadder L;
  L.ctx = ctx;
  L.levels.push_back(FiniteSubset{ctx.identity()});
  std::vector<ChainCoord>            coords;
  std::vector<std::vector<Fraction>> per_atom(atoms.size());

  for (std::size_t n = 0; n < depth; ++n) {
    FiniteSubset J{ctx.identity()};
    for (auto& c : coords) {
      if (c.infinite) {
        auto step = checked_pow(3, c.tripled);
        J = product_set(ctx, FiniteSubset{power(ctx, c.g, -step), ctx.identity(),
                                          power(ctx, c.g, step)},
                        J);
        ++c.tripled;
      }
    }
    if (n < generators.size()) {
      auto const& g  = generators[n];
      auto        at = support(g);
      ChainCoord  c{g};
      if (!at) {
        // the identity adds nothing
      } else {
        auto const& atom = atoms[*at];
        Fraction    x    = g[atom.offset].to_fraction();
        auto        ord  = atom_order(atom, per_atom[*at], x);
        per_atom[*at].push_back(x);
        std::vector<Element> digits;
        if (!ord) {
          c.infinite = true;
          c.tripled  = 1;
          digits     = {ctx.inverse(g), ctx.identity(), g};
        } else {
          if (!ord->fits_slong_p() || ord->get_si() > (1L << 24)) {
            throw Error(ErrorCode::domain, "quotient order of " + g.str() + " is too large");
          }
          for (long k = 0; k < ord->get_si(); ++k) {
            digits.push_back(power(ctx, g, k));
          }
        }
        J = product_set(ctx, FiniteSubset(std::move(digits)), J);
      }
      coords.push_back(std::move(c));
    }
    FiniteSubset next;
    if (!disjoint_product(ctx, J, L.levels.back(), next)) {
      throw Error(ErrorCode::construction, "chain translates overlap at level " + std::to_string(n));
    }
    L.glue.push_back(std::move(J));
    L.levels.push_back(std::move(next));
  }
  return L;
}

////////////////////////////////////////////////////////////////////////////
// Exact sequences
////////////////////////////////////////////////////////////////////////////

ComposeResult compose_exact_sequence(ExactSequence const& seq,
                                     std::vector<InvarianceTarget> const& targets,
                                     std::size_t cap) {
  auto const& G = seq.G;
  auto const& L = seq.L;
  auto const& Q = seq.Q;
  if (!(L.ctx == G)) {
    throw Error(ErrorCode::domain, "the L ladder must live in G");
  }
  if (!seq.section || !seq.projection) {
    throw Error(ErrorCode::domain, "section and projection are required");
  }
  auto check_section = [&](FiniteSubset const& S) {
    for (auto const& q : S) {
      if (!(seq.projection(seq.section(q)) == q)) {
        throw Error(ErrorCode::domain, "projection o section is not the identity at " + q.str());
      }
    }
  };
  check_section(Q.levels[0]);
  for (auto const& D : Q.glue) {
    check_section(D);
  }

  // Lifted glue and tower.
  std::vector<FiniteSubset> Dhat;
  for (auto const& D : Q.glue) {
    Dhat.push_back(map_set(D, seq.section));
  }
  std::vector<FiniteSubset> That{map_set(Q.levels[0], seq.section)};
  auto tower = [&](std::size_t t) -> FiniteSubset const& {
    while (That.size() <= t) {
      FiniteSubset next;
      if (!disjoint_product(G, Dhat[That.size() - 1], That.back(), next)) {
        throw Error(ErrorCode::construction, "lifted tower overlaps at level " + std::to_string(That.size()));
      }
      That.push_back(std::move(next));
    }
    return That[t];
  };
  auto composite_lift = [&](std::size_t a, std::size_t b) {
    FiniteSubset E{G.identity()};
    for (std::size_t i = a; i < b; ++i) {
      E = product_set(G, Dhat[i], E);
    }
    return E;
  };

  ComposeResult res;
  res.ladder.ctx = G;
  FiniteSubset F0;
  if (!disjoint_product(G, L.levels[0], tower(0), F0)) {
    throw Error(ErrorCode::construction, "L_0 T_0 is not a disjoint product");
  }
  res.ladder.levels.push_back(std::move(F0));
  res.t.push_back(0);
  res.m.push_back(0);
  res.defects.push_back(Fraction(0));

  std::size_t mmax = std::min(cap, L.depth());
  for (std::size_t s = 1; s <= targets.size(); ++s) {
    auto const& target = targets[s - 1];
    FiniteSubset piK   = map_set(target.K, seq.projection);
    std::size_t  tp = res.t.back(), mp = res.m.back();
    std::optional<Fraction> best;
    bool found = false;
    for (std::size_t t = tp + 1; t <= Q.depth() && !found; ++t) {
      // Every fibre over a bad point of T_t is bad, so the defect in G is at
      // least the defect in Q.
      auto qdef = right_invariance_defect(Q.ctx, Q.levels[t], piK);
      if (qdef > target.eps) {
        if (!best || qdef < *best) {
          best = qdef;
        }
        continue;
      }
      for (std::size_t m = mp + 1; m <= mmax; ++m) {
        FiniteSubset F;
        if (!disjoint_product(G, L.levels[m], tower(t), F)) {
          throw Error(ErrorCode::construction, "L_m T_t is not a disjoint product");
        }
        auto def = right_invariance_defect(G, F, target.K);
        if (!best || def < *best) {
          best = def;
        }
        if (def <= target.eps) {
          res.ladder.glue.push_back(product_set(G, expand_glue(L, mp, m), composite_lift(tp, t)));
          res.ladder.levels.push_back(std::move(F));
          res.t.push_back(t);
          res.m.push_back(m);
          res.defects.push_back(def);
          found = true;
          break;
        }
      }
    }
    if (!found) {
      throw Error(ErrorCode::invariance_unreachable,
                  "level " + std::to_string(s) + ": target " + to_string(target.eps)
                      + " not met; best defect " + (best ? to_string(*best) : std::string("n/a")));
    }
  }
  return res;
}

ExactSequence heisenberg_center_sequence(std::size_t l_depth, std::size_t q_depth) {
  ExactSequence seq;
  seq.G      = GroupContext::heisenberg3();
  auto z     = build_lattice_ladder(1, l_depth);
  auto embed = [](Element const& x) { return Element{0, 0, x[0]}; };
  seq.L.ctx  = seq.G;
  for (auto const& F : z.levels) {
    seq.L.levels.push_back(map_set(F, embed));
  }
  for (auto const& J : z.glue) {
    seq.L.glue.push_back(map_set(J, embed));
  }
  seq.Q          = build_lattice_ladder(2, q_depth);
  seq.section    = [](Element const& q) { return Element{q[0], q[1], 0}; };
  seq.projection = [](Element const& g) { return Element{g[0], g[1]}; };
  return seq;
}

std::vector<InvarianceTarget> default_heisenberg_targets(std::size_t count) {
  std::vector<InvarianceTarget> out;
  FiniteSubset                  K{Element{1, 0, 0}, Element{0, 1, 0}, Element{0, 0, 1}};
  Integer                       den(1);
  for (std::size_t s = 1; s <= count; ++s) {
    den *= 2;
    out.push_back({K, Fraction(Integer(1), den)});
  }
  return out;
}

FolnerLadder extend_virtually(GroupContext const& ext, FolnerLadder const& base) {
  if (ext.kind() != GroupKind::finite_extension) {
    throw Error(ErrorCode::domain, "extend_virtually needs a finite extension context");
  }
  if (!(base.ctx == ext.base())) {
    throw Error(ErrorCode::domain, "base ladder does not live in the base subgroup");
  }
  auto const&  amb = ext.ambient();
  auto         emb = [&](Element const& u) { return ext.embed_base(u); };
  FolnerLadder out;
  out.ctx = ext;
  for (std::size_t n = 0; n < base.levels.size(); ++n) {
    FiniteSubset F;
    if (!disjoint_product(amb, map_set(base.levels[n], emb), ext.coset_reps(), F)) {
      throw Error(ErrorCode::not_coset_reps,
                  "U_" + std::to_string(n) + " R has repeated elements");
    }
    out.levels.push_back(std::move(F));
  }
  for (auto const& J : base.glue) {
    out.glue.push_back(map_set(J, emb));
  }
  return out;
}

}  // namespace monotile
