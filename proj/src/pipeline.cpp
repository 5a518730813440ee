#include "monotile/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "monotile/render.hpp"

namespace monotile {

std::vector<std::string> const pipeline_stage_names = {"group",     "ladder",   "matrices",
                                                       "hierarchy", "analysis", "measures"};

namespace {

  std::filesystem::path resolve(std::filesystem::path const& base, std::string const& p) {
    std::filesystem::path q(p);
    return q.is_absolute() || base.empty() ? q : base / q;
  }

  Fraction fraction_field(Json const& v) {
    if (v.is_number_integer()) {
      return Fraction(static_cast<long>(v.get<std::int64_t>()));
    }
    if (v.is_string()) {
      return parse_fraction(v.get<std::string>());
    }
    throw Error(ErrorCode::config, "expected a fraction string like \"1/100\", got " + v.dump());
  }

  template <class T>
  void read_opt(Json const& j, char const* key, T& out) {
    if (j.contains(key)) {
      try {
        out = j.at(key).get<T>();
      } catch (nlohmann::json::exception const&) {
        throw Error(ErrorCode::config, std::string("bad value for '") + key + "'");
      }
    }
  }

  // Sample of small elements for the group axioms.
  std::vector<Element> axiom_sample(GroupContext const& ctx) {
    std::vector<Element> s{ctx.identity()};
    auto gens = ctx.generators();
    for (auto const& g : gens) {
      s.push_back(g);
      s.push_back(ctx.inverse(g));
    }
    for (auto const& a : gens) {
      for (auto const& b : gens) {
        s.push_back(ctx.product(a, b));
      }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  FolnerLadder auto_ladder(GroupContext const& ctx, PipelineConfig const& c);

  FolnerLadder trivial_ladder(GroupContext const& ctx, std::size_t depth) {
    FolnerLadder L;
    L.ctx = ctx;
    FiniteSubset one{ctx.identity()};
    L.levels.assign(depth + 1, one);
    L.glue.assign(depth, one);
    return L;
  }

  FolnerLadder route_ladder(std::string const& route, GroupContext const& ctx,
                            PipelineConfig const& c) {
    if (route == "auto") {
      return auto_ladder(ctx, c);
    }
    if (route == "lattice") {
      if (ctx.kind() != GroupKind::lattice) {
        throw Error(ErrorCode::config, "lattice route needs a lattice group");
      }
      return build_lattice_ladder(ctx.dimension(), c.depth, c.base);
    }
    if (route == "pruefer") {
      if (ctx.kind() != GroupKind::pruefer) {
        throw Error(ErrorCode::config, "pruefer route needs a pruefer group");
      }
      return build_pruefer_ladder(ctx.modulus(), c.depth);
    }
    if (route == "chain") {
      auto gens = ctx.kind() == GroupKind::rationals ? factorial_generators(c.depth)
                                                     : ctx.generators();
      return build_abelian_chain_ladder(ctx, gens, c.depth);
    }
    if (route == "heisenberg") {
      if (ctx.kind() != GroupKind::heisenberg3) {
        throw Error(ErrorCode::config, "heisenberg route needs heisenberg3");
      }
      auto targets = default_heisenberg_targets(c.depth);
      if (c.eps_ratio) {
        Fraction e(1);
        for (auto& t : targets) {
          e *= *c.eps_ratio;
          t.eps = e;
        }
      }
      return compose_exact_sequence(heisenberg_center_sequence(), targets).ladder;
    }
    if (route == "virtual") {
      if (ctx.kind() != GroupKind::finite_extension) {
        throw Error(ErrorCode::config, "virtual route needs a finite_extension group");
      }
      auto const& B = ctx.base();
      auto base = B.is_trivial() ? trivial_ladder(B, c.depth) : auto_ladder(B, c);
      return extend_virtually(ctx, base);
    }
    if (route == "file") {
      auto L = ladder_from_json(read_json_file(c.ladder_path));
      if (!(L.ctx == ctx)) {
        throw Error(ErrorCode::config, "ladder file is over a different group");
      }
      return L;
    }
    throw Error(ErrorCode::config, "unknown ladder route '" + route + "'");
  }

  FolnerLadder auto_ladder(GroupContext const& ctx, PipelineConfig const& c) {
    switch (ctx.kind()) {
      case GroupKind::lattice:
        return ctx.is_trivial() ? trivial_ladder(ctx, c.depth) : route_ladder("lattice", ctx, c);
      case GroupKind::pruefer: return route_ladder("pruefer", ctx, c);
      case GroupKind::heisenberg3: return route_ladder("heisenberg", ctx, c);
      case GroupKind::finite_extension: return route_ladder("virtual", ctx, c);
      default: return route_ladder("chain", ctx, c);
    }
  }

  Json fractions(std::vector<Fraction> const& v) {
    Json out = Json::array();
    for (auto const& q : v) {
      out.push_back(fraction_to_json(q));
    }
    return out;
  }

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

  // Everything the stages hand to each other.
  struct State {
    std::optional<GroupContext>     ctx;
    FolnerLadder                    ladder;   // as built
    FolnerLadder                    working;  // the one the hierarchy uses
    std::vector<ManagedMatrix>      Mt;
    std::optional<Realization>      real;
    std::optional<Lemma8Selection>  sel;
    std::optional<BlockHierarchy>   h;
    std::vector<std::pair<std::string, std::string>> files;  // name, contents
  };

  class Stage {
   public:
    explicit Stage(StageReport& r) : _r(r) {}
    void check(std::string name, bool pass, Json detail = Json::object()) {
      _r.checks.push_back({std::move(name), pass, std::move(detail)});
      _r.pass = _r.pass && pass;
    }

   private:
    StageReport& _r;
  };

  void stage_group(PipelineConfig const& c, State& s, Stage& st) {
    s.ctx      = group_from_json(c.group);
    auto const& ctx = *s.ctx;
    auto sample = axiom_sample(ctx);
    auto e      = ctx.identity();
    std::optional<std::string> bad;
    for (auto const& a : sample) {
      if (!(ctx.product(e, a) == a) || !(ctx.product(a, e) == a)) {
        bad = "identity fails on " + a.str();
      } else if (!(ctx.product(ctx.inverse(a), a) == e) || !(ctx.product(a, ctx.inverse(a)) == e)) {
        bad = "inverse fails on " + a.str();
      }
      if (bad) {
        break;
      }
    }
    st.check("unit-and-inverse", !bad, bad ? Json{{"witness", *bad}} : Json{{"sample", sample.size()}});
    std::optional<std::string> assoc;
    for (auto const& a : sample) {
      for (auto const& b : sample) {
        for (auto const& x : sample) {
          if (!assoc && !(ctx.product(ctx.product(a, b), x) == ctx.product(a, ctx.product(b, x)))) {
            assoc = a.str() + " " + b.str() + " " + x.str();
          }
        }
      }
    }
    st.check("associativity", !assoc, assoc ? Json{{"witness", *assoc}} : Json::object());
    s.files.emplace_back("group.json", dump(group_to_json(ctx)));
  }

  void stage_ladder(PipelineConfig const& c, State& s, Stage& st) {
    auto const& ctx = *s.ctx;
    s.ladder        = route_ladder(c.ladder_route, ctx, c);
    auto cong       = check_congruent(s.ladder);
    st.check("congruent", cong.pass, congruence_to_json(cong));

    Json        defects = Json::object();
    bool        mono    = true;
    std::string where;
    for (auto const& g : ctx.generators()) {
      std::vector<Fraction> d;
      for (auto const& F : s.ladder.levels) {
        d.push_back(folner_defect(ctx, F, g));
      }
      for (std::size_t n = 1; n < d.size(); ++n) {
        if (d[n] > d[n - 1] && mono) {
          mono  = false;
          where = g.str() + " at level " + std::to_string(n);
        }
      }
      defects[g.str()] = fractions(d);
    }
    Json detail{{"defects", defects}};
    if (!mono) {
      detail["witness"] = where;
    }
    st.check("folner-defect-nonincreasing", mono, detail);
    s.files.emplace_back("ladder.json", dump(ladder_to_json(s.ladder)));
  }

  void stage_matrices(PipelineConfig const& c, State& s, Stage& st) {
    s.working = s.ladder;
    if (c.matrix_source == "realize") {
      s.real = realize_finite_simplex(c.realize_d, s.ladder, c.tolerance, c.max_depth);
      bool within = std::all_of(s.real->diameters.begin(), s.real->diameters.end(),
                                [&](Fraction const& x) { return x <= c.tolerance; });
      st.check("realize-tolerance", within,
               Json{{"depth", s.real->depth}, {"diameters", fractions(s.real->diameters)}});
      s.sel = select_subsequence_lemma8(s.real->sequence, c.lemma8_K);
      st.check("lemma8-certificate", lemma8_certificate(*s.sel),
               Json{{"indices", s.sel->indices}, {"tail", s.sel->tail}});
      if (s.sel->indices.back() > s.ladder.depth()) {
        throw Error(ErrorCode::insufficient_depth,
                    "grouping reaches level " + std::to_string(s.sel->indices.back())
                        + " but the ladder has depth " + std::to_string(s.ladder.depth()));
      }
      s.working = regroup_ladder(s.ladder, s.sel->indices);
      for (auto const& G : s.sel->grouped) {
        s.Mt.push_back(augment_matrix(G));
      }
    } else if (c.matrix_source == "file") {
      s.Mt = matrices_from_json(read_json_file(c.matrix_path));
    } else {
      s.Mt = default_matrices(s.ladder);
    }
    if (s.Mt.empty()) {
      throw Error(ErrorCode::insufficient_depth, "no matrices");
    }

    Json viol = Json::array();
    for (std::size_t n = 0; n < s.Mt.size(); ++n) {
      auto v = s.Mt[n].managed_violation();
      if (!v.empty()) {
        viol.push_back(Json{{"matrix", n}, {"violation", v}});
      }
    }
    st.check("managed", viol.empty(), viol.empty() ? Json{{"count", s.Mt.size()}} : Json{{"witness", viol}});

    Json slack = Json::array();
    for (std::size_t n = 0; n < s.Mt.size(); ++n) {
      if (!satisfies_slack_bounds(s.Mt[n])) {
        slack.push_back(n);
      }
    }
    // Only the augmentation route promises the slack inequality; hand-made
    // matrices (the ternary default among them) can be fine without it.
    if (s.real) {
      st.check("slack-bounds", slack.empty(), slack.empty() ? Json::object() : Json{{"matrices", slack}});
    }

    bool chained = true;
    for (std::size_t n = 0; n + 1 < s.Mt.size(); ++n) {
      chained = chained && s.Mt[n].cols() == s.Mt[n + 1].rows();
    }
    st.check("chained-shapes", chained);

    bool k0 = s.Mt[0].rows() == static_cast<std::size_t>(c.k0);
    st.check("k0", k0, Json{{"expected", c.k0}, {"rows", s.Mt[0].rows()}});

    bool scales = s.Mt.size() <= s.working.depth();
    for (std::size_t n = 0; scales && n < s.Mt.size(); ++n) {
      scales = s.Mt[n].ratio() == static_cast<unsigned long>(s.working.ratio(n));
    }
    st.check("ratios-match-ladder", scales, Json{{"matrices", s.Mt.size()}, {"ladder_depth", s.working.depth()}});

    Json out{{"source", c.matrix_source}, {"matrices", matrices_to_json(s.Mt)}};
    out["below_slack"] = slack;
    if (s.real) {
      out["realized"] = matrices_to_json(s.real->sequence.matrices);
      out["lemma8_indices"] = s.sel->indices;
    }
    s.files.emplace_back("matrices.json", dump(out));
  }

  void stage_hierarchy(PipelineConfig const& c, State& s, Stage& st) {
    s.h = build_hierarchy(s.working, s.Mt);
    auto const& h = *s.h;
    auto msg = check_structure(h);
    st.check("structure", msg.empty(), msg.empty() ? Json::object() : Json{{"witness", msg}});
    Json levels = Json::array();
    bool ok     = true;
    for (std::size_t n = 0; n < h.families.size(); ++n) {
      auto r = verify_C3(h.ladder.ctx, h.families[n], h.ladder.levels[n]);
      ok     = ok && r.pass;
      levels.push_back(c3_to_json(r));
    }
    st.check("C3", ok, Json{{"levels", levels}});
    s.files.emplace_back("hierarchy.json", dump(hierarchy_to_json(h)));
    try {
      auto top = render_pattern(h.ladder.ctx, x0_patch(h, h.depth()), RenderMode::text);
      s.files.emplace_back("x0.txt", top + "\n");
    } catch (Error const& e) {
      if (e.code() != ErrorCode::unsupported_render) {
        throw;
      }
    }
    if (h.depth() < c.analysis_level) {
      throw Error(ErrorCode::insufficient_depth,
                  "hierarchy depth " + std::to_string(h.depth()) + " < analysis level "
                      + std::to_string(c.analysis_level));
    }
  }

  void stage_analysis(PipelineConfig const& c, State& s, Stage& st) {
    auto const& h = *s.h;
    auto const  A = c.analysis_level;
    Json        rt = Json::array();
    bool        rt_ok = true;
    for (std::size_t m = 1; m <= A; ++m) {
      for (std::size_t n = 0; n < m; ++n) {
        auto R  = return_times(h, n, m);
        auto S  = scan_occurrences(h, n, m);
        bool eq = R == S && R.size() * h.ladder.levels[n].size() == h.ladder.levels[m].size();
        rt_ok   = rt_ok && eq;
        Json e{{"n", n}, {"m", m}, {"returns", R.size()}, {"equal", eq}};
        if (!eq) {
          e["only_scanned"] = subset_to_json(set_difference(S, R));
          e["only_predicted"] = subset_to_json(set_difference(R, S));
        }
        rt.push_back(std::move(e));
      }
    }
    st.check("return-times", rt_ok, Json{{"pairs", rt}});

    Json kr    = Json::array();
    bool kr_ok = true;
    for (std::size_t m = 2; m <= A; ++m) {
      for (std::size_t n = 0; n + 2 <= m; ++n) {
        auto r = check_partitions(h, n, m);
        kr_ok  = kr_ok && r.pass();
        auto j = partition_to_json(r);
        j["n"] = n;
        j["m"] = m;
        kr.push_back(std::move(j));
      }
    }
    st.check("kakutani-rokhlin", kr_ok, Json{{"pairs", kr}});

    if (A >= 2) {
      auto r = syndeticity_window(h, 1, A);
      st.check("syndetic-returns", r.covered, syndeticity_to_json(r));
    }

    Json bm    = Json::object();
    bool bm_ok = true;
    for (auto const& g : h.ladder.ctx.generators()) {
      std::vector<Fraction> v;
      for (std::size_t n = 0; n <= A; ++n) {
        v.push_back(boundary_mass_bound(h.ladder, g, n));
        bm_ok = bm_ok && (n == 0 || v[n] <= v[n - 1]);
      }
      bm[g.str()] = fractions(v);
    }
    st.check("boundary-mass-nonincreasing", bm_ok, bm);

    Json out = Json::object();
    out["return_times"] = rt;
    out["partitions"]   = kr;
    out["boundary"]     = bm;
    s.files.emplace_back("analysis.json", dump(out));
  }

  void stage_measures(PipelineConfig const&, State& s, Stage& st) {
    auto const& h = *s.h;
    std::vector<ManagedMatrix> inc;
    for (std::size_t n = 0; n < h.depth(); ++n) {
      inc.push_back(incidence_from_hierarchy(h, n));
    }
    bool rt = inc == std::vector<ManagedMatrix>(s.Mt.begin(), s.Mt.begin() + static_cast<std::ptrdiff_t>(inc.size()));
    st.check("incidence-round-trip", rt);
    auto seq = ManagedSequence::from_matrices(inc, Integer(static_cast<unsigned long>(h.ladder.levels[0].size())));
    std::string err;
    try {
      seq.check();
    } catch (Error const& e) {
      err = e.what();
    }
    st.check("managed-sequence", err.empty(), err.empty() ? Json::object() : Json{{"witness", err}});

    Json nest = Json::array();
    bool nest_ok = true;
    for (std::size_t d = 1; d <= seq.size(); ++d) {
      auto cert = nesting_certificate(seq, 0, d);
      nest_ok   = nest_ok && cert.holds;
      nest.push_back(Json{{"depth", d}, {"holds", cert.holds}});
    }
    st.check("nesting", nest_ok, Json{{"depths", nest}});

    auto approx = approximate_limit(seq, 0, seq.size());
    Json out{{"incidence", matrices_to_json(inc)},
             {"approximant", approximant_to_json(approx)},
             {"hull_diameter", fraction_to_json(hull_diameter(approx))}};
    if (s.real) {
      out["realization"] = Json{{"depth", s.real->depth},
                                {"approximant", approximant_to_json(s.real->approximant)},
                                {"diameters", fractions(s.real->diameters)},
                                {"hull_diameter", fraction_to_json(s.real->hull)}};
    }
    s.files.emplace_back("measures.json", dump(out));
  }

}  // namespace

FolnerLadder build_configured_ladder(GroupContext const& ctx, PipelineConfig const& config) {
  return route_ladder(config.ladder_route, ctx, config);
}

PipelineConfig PipelineConfig::from_json(Json const& j, std::filesystem::path const& base_dir) {
  if (!j.is_object()) {
    throw Error(ErrorCode::config, "config must be a JSON object");
  }
  PipelineConfig c;
  if (j.contains("group")) {
    c.group = j.at("group");
  }
  if (j.contains("ladder")) {
    auto const& l = j.at("ladder");
    read_opt(l, "route", c.ladder_route);
    read_opt(l, "depth", c.depth);
    read_opt(l, "base", c.base);
    if (l.contains("eps_ratio")) {
      c.eps_ratio = fraction_field(l.at("eps_ratio"));
    }
    if (l.contains("path")) {
      c.ladder_path = resolve(base_dir, l.at("path").get<std::string>());
    }
  }
  read_opt(j, "k0", c.k0);
  if (j.contains("matrices")) {
    auto const& m = j.at("matrices");
    read_opt(m, "source", c.matrix_source);
    read_opt(m, "d", c.realize_d);
    read_opt(m, "max_depth", c.max_depth);
    if (m.contains("tol")) {
      c.tolerance = fraction_field(m.at("tol"));
    }
    if (m.contains("K")) {
      c.lemma8_K = fraction_field(m.at("K"));
    }
    if (m.contains("path")) {
      c.matrix_path = resolve(base_dir, m.at("path").get<std::string>());
    }
  }
  if (j.contains("analysis")) {
    read_opt(j.at("analysis"), "level", c.analysis_level);
  }
  if (j.contains("output")) {
    std::string dir;
    read_opt(j.at("output"), "dir", dir);
    if (!dir.empty()) {
      c.out_dir = resolve(base_dir, dir);
    }
  }
  return c;
}

Json PipelineConfig::to_json() const {
  Json ladder{{"route", ladder_route}, {"depth", depth}, {"base", base}};
  if (!ladder_path.empty()) {
    ladder["path"] = ladder_path.string();
  }
  if (eps_ratio) {
    ladder["eps_ratio"] = to_string(*eps_ratio);
  }
  Json m{{"source", matrix_source}};
  if (matrix_source == "realize") {
    m["d"]         = realize_d;
    m["tol"]       = to_string(tolerance);
    m["K"]         = to_string(lemma8_K);
    m["max_depth"] = max_depth;
  }
  if (!matrix_path.empty()) {
    m["path"] = matrix_path.string();
  }
  return Json{{"group", group},
              {"ladder", ladder},
              {"k0", k0},
              {"matrices", m},
              {"analysis", Json{{"level", analysis_level}}}};
}

void PipelineConfig::validate() const {
  auto fail = [](std::string const& m) { throw Error(ErrorCode::config, m); };
  if (depth < 1) {
    fail("ladder depth must be >= 1");
  }
  if (analysis_level < 1 || analysis_level > depth) {
    fail("analysis level " + std::to_string(analysis_level) + " must lie in 1.." + std::to_string(depth)
         + " (the ladder depth)");
  }
  if (eps_ratio && (*eps_ratio <= 0 || *eps_ratio >= 1)) {
    fail("eps_ratio must lie strictly between 0 and 1");
  }
  if (k0 < 2) {
    fail("k0 must be >= 2");
  }
  static std::vector<std::string> const routes{"auto",       "lattice", "pruefer", "chain",
                                               "heisenberg", "virtual", "file"};
  if (std::find(routes.begin(), routes.end(), ladder_route) == routes.end()) {
    fail("unknown ladder route '" + ladder_route + "'");
  }
  if (ladder_route == "file" && !std::filesystem::exists(ladder_path)) {
    fail("ladder file '" + ladder_path.string() + "' does not exist");
  }
  if (matrix_source == "file") {
    if (!std::filesystem::exists(matrix_path)) {
      fail("matrix file '" + matrix_path.string() + "' does not exist");
    }
  } else if (matrix_source == "realize") {
    if (realize_d < 2) {
      fail("realize needs d >= 2");
    }
    if (tolerance <= 0) {
      fail("tolerance must be positive");
    }
    if (static_cast<std::size_t>(k0) != realize_d + 1) {
      fail("realized matrices augment to k0 = d+1 = " + std::to_string(realize_d + 1)
           + " base blocks, config says " + std::to_string(k0));
    }
  } else if (matrix_source != "default") {
    fail("unknown matrix source '" + matrix_source + "'");
  }
  // parse now so a bad descriptor is reported before anything is built
  (void)group_from_json(group);
}

bool RunReport::pass() const {
  return !stages.empty()
         && std::all_of(stages.begin(), stages.end(), [](StageReport const& s) { return s.pass; });
}

Json RunReport::to_json() const {
  Json st = Json::array();
  for (auto const& s : stages) {
    Json checks = Json::array();
    for (auto const& c : s.checks) {
      checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    Json j{{"name", s.name}, {"pass", s.pass}};
    if (s.skipped) {
      j["skipped"] = true;
    }
    if (!s.error.empty()) {
      j["error"] = s.error;
    }
    j["checks"] = std::move(checks);
    st.push_back(std::move(j));
  }
  return Json{{"pass", pass()}, {"stages", st}, {"artifacts", artifacts}};
}

Json RunReport::timings_json() const {
  Json t = Json::object();
  for (auto const& s : stages) {
    t[s.name] = s.seconds;
  }
  return t;
}

std::string RunReport::summary() const {
  std::ostringstream o;
  for (auto const& s : stages) {
    o << (s.skipped ? "SKIP" : s.pass ? "PASS" : "FAIL") << "  " << s.name;
    if (!s.error.empty()) {
      o << "  (" << s.error << ")";
    }
    o << "\n";
    for (auto const& c : s.checks) {
      o << "      " << (c.pass ? "ok   " : "FAIL ") << c.name << "\n";
    }
  }
  o << (pass() ? "pipeline passed" : "pipeline FAILED") << "\n";
  return o.str();
}

RunReport run_pipeline(PipelineConfig const& config, bool write, ProgressLog const& log) {
  config.validate();
  State     s;
  RunReport rep;
  using Fn = void (*)(PipelineConfig const&, State&, Stage&);
  Fn const fns[] = {stage_group, stage_ladder, stage_matrices,
                    stage_hierarchy, stage_analysis, stage_measures};
  bool alive = true;
  for (std::size_t i = 0; i < pipeline_stage_names.size(); ++i) {
    StageReport r;
    r.name = pipeline_stage_names[i];
    if (!alive) {
      r.pass    = false;
      r.skipped = true;
      rep.stages.push_back(std::move(r));
      continue;
    }
    if (log) {
      log("stage " + r.name);
    }
    auto  t0 = std::chrono::steady_clock::now();
    Stage st(r);
    try {
      fns[i](config, s, st);
    } catch (Error const& e) {
      r.pass  = false;
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) {
      log("  " + std::string(r.pass ? "pass" : "FAIL") + " in "
          + std::to_string(r.seconds) + " s");
    }
    alive = r.pass;
    rep.stages.push_back(std::move(r));
  }

  for (auto const& f : s.files) {
    rep.artifacts.push_back(f.first);
  }
  rep.artifacts.push_back("report.json");
  if (write) {
    for (auto const& f : s.files) {
      write_text_file(config.out_dir / f.first, f.second);
    }
    write_text_file(config.out_dir / "report.json", dump(rep.to_json()));
    write_text_file(config.out_dir / "timings.json", dump(rep.timings_json()));
  }
  return rep;
}

}  // namespace monotile
