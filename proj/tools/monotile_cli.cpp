// monotile: command-line front end.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage,
// input or construction errors.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "monotile/pipeline.hpp"
#include "monotile/render.hpp"

using namespace monotile;

namespace {

struct Globals {
  std::string out;
  std::string format  = "json";
  bool        verbose = false;
};

Globals G;

void vlog(std::string const& msg) {
  if (G.verbose) {
    std::cerr << "[monotile] " << msg << "\n";
  }
}

bool text_mode() {
  return G.format == "text";
}

// Prints, or writes to --out/<name>.{json,txt}; returns the exit code.
int emit(std::string const& name, Json const& j, std::string const& text, bool pass) {
  std::string body = text_mode() ? text : j.dump(2);
  if (body.empty() || body.back() != '\n') {
    body += "\n";
  }
  if (G.out.empty()) {
    std::cout << body;
  } else {
    auto path = std::filesystem::path(G.out) / (name + (text_mode() ? ".txt" : ".json"));
    write_text_file(path, body);
    vlog("wrote " + path.string());
  }
  return pass ? 0 : 1;
}

std::string verdict(bool b) {
  return b ? "pass" : "FAIL";
}

// Inline JSON or a path to a JSON file.
Json json_arg(std::string const& s) {
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
    try {
      return Json::parse(s);
    } catch (nlohmann::json::parse_error const& e) {
      throw Error(ErrorCode::config, e.what());
    }
  }
  return read_json_file(s);
}

Json fraction_array(std::vector<Fraction> const& v) {
  Json out = Json::array();
  for (auto const& q : v) {
    out.push_back(fraction_to_json(q));
  }
  return out;
}

std::string fraction_list(std::vector<Fraction> const& v) {
  std::string out;
  for (auto const& q : v) {
    out += (out.empty() ? "" : " ") + to_string(q);
  }
  return out;
}

// "1..5" or "3"
std::pair<std::size_t, std::size_t> level_range(std::string const& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      auto n = std::stoul(s);
      return {n, n};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (std::exception const&) {
    throw Error(ErrorCode::config, "bad level range '" + s + "'");
  }
}

std::string approximant_text(SimplexApproximant const& a) {
  std::ostringstream o;
  o << "level " << a.level << ", depth " << a.depth << ", scale 1/" << a.scale << "\n";
  for (std::size_t j = 0; j < a.vertices.size(); ++j) {
    o << "  w" << j + 1 << " = (" << fraction_list(a.vertices[j].coords) << ")\n";
  }
  return o.str();
}

struct Options {
  // folner
  std::string  group, route = "auto", eps, ladder, K;
  std::size_t  depth = 4;
  std::int64_t base  = 3;
  // blocks / analyze
  std::string hier, matrices, render = "text", g;
  std::size_t level = 0, n = 0, m = 1;
  std::size_t block_depth = 0;  // 0: as deep as ladder and matrices allow
  int         k0    = 0;
  std::string levels = "0..3";
  // measures
  std::string seq, tol = "1/1000", Kbound = "1";
  std::size_t d = 2, max_depth = 64;
  std::string ratio;
  // pipeline
  std::string config;
  bool        timings = false;
};

int folner_build(Options const& o) {
  PipelineConfig c;
  c.group        = json_arg(o.group);
  c.ladder_route = o.route;
  c.depth        = o.depth;
  c.base         = o.base;
  if (!o.eps.empty()) {
    auto colon = o.eps.find(':');
    if (colon == std::string::npos || o.eps.substr(0, colon) != "geometric") {
      throw Error(ErrorCode::config, "eps schedule must look like geometric:<ratio>");
    }
    c.eps_ratio = parse_fraction(o.eps.substr(colon + 1));
    if (*c.eps_ratio <= 0 || *c.eps_ratio >= 1) {
      throw Error(ErrorCode::config, "eps ratio must lie strictly between 0 and 1");
    }
  }
  auto ctx = group_from_json(c.group);
  vlog("building ladder for " + group_to_json(ctx).dump());
  auto L    = build_configured_ladder(ctx, c);
  auto cong = check_congruent(L);
  std::ostringstream t;
  t << "group " << group_to_json(ctx).dump() << "\n";
  for (std::size_t i = 0; i < L.levels.size(); ++i) {
    t << "|F_" << i << "| = " << L.levels[i].size();
    if (i < L.depth()) {
      t << ", |J_" << i << "| = " << L.glue[i].size();
    }
    t << "\n";
  }
  t << "congruent: " << verdict(cong.pass) << "\n";
  return emit("ladder", ladder_to_json(L), t.str(), cong.pass);
}

int folner_check(Options const& o) {
  auto L    = ladder_from_json(read_json_file(o.ladder));
  auto cong = check_congruent(L);
  Json j{{"congruent", congruence_to_json(cong)}};
  std::string t = "congruent: " + verdict(cong.pass) + (cong.pass ? "" : " (" + cong.message + ")");
  return emit("check", j, t, cong.pass);
}

int folner_defect(Options const& o) {
  auto L = ladder_from_json(read_json_file(o.ladder));
  auto K = o.K.empty() ? FiniteSubset(L.ctx.generators()) : FiniteSubset(parse_elements(L.ctx, o.K));
  auto prof = invariance_profile(L, K);
  Json rows = Json::array();
  std::ostringstream t;
  for (auto const& r : prof) {
    rows.push_back(Json{{"level", r.level}, {"defect", fraction_to_json(r.defect)}});
    t << "level " << r.level << ": " << to_string(r.defect) << "\n";
  }
  return emit("defect", Json{{"K", subset_to_json(K)}, {"profile", rows}}, t.str(), true);
}

int blocks_build(Options const& o) {
  auto L = ladder_from_json(read_json_file(o.ladder));
  std::vector<ManagedMatrix> ms;
  if (o.matrices.empty()) {
    ms = default_matrices(L);
  } else {
    ms = matrices_from_json(read_json_file(o.matrices));
  }
  std::size_t depth = std::min(ms.size(), L.depth());
  if (o.block_depth > depth) {
    throw Error(ErrorCode::insufficient_depth, "asked for depth " + std::to_string(o.block_depth)
                                                   + ", have " + std::to_string(depth));
  }
  if (o.block_depth != 0) {
    depth = o.block_depth;
  }
  ms.resize(depth);
  if (o.k0 != 0 && ms[0].rows() != static_cast<std::size_t>(o.k0)) {
    throw Error(ErrorCode::config, "first matrix has " + std::to_string(ms[0].rows())
                                       + " rows, --k0 says " + std::to_string(o.k0));
  }
  auto h   = build_hierarchy(L, ms);
  auto msg = check_structure(h);
  std::ostringstream t;
  for (std::size_t n = 0; n < h.families.size(); ++n) {
    t << "level " << n << ": " << h.families[n].size() << " blocks over " << h.ladder.levels[n].size()
      << " cells\n";
  }
  t << "structure: " << (msg.empty() ? "pass" : "FAIL (" + msg + ")") << "\n";
  return emit("hierarchy", hierarchy_to_json(h), t.str(), msg.empty());
}

int blocks_c3(Options const& o) {
  auto h = hierarchy_from_json(read_json_file(o.hier));
  if (o.level >= h.families.size()) {
    throw Error(ErrorCode::insufficient_depth, "hierarchy has no level " + std::to_string(o.level));
  }
  auto r = verify_C3(h.ladder.ctx, h.families[o.level], h.ladder.levels[o.level]);
  std::string t = "C3 at level " + std::to_string(o.level) + ": " + verdict(r.pass);
  if (!r.pass) {
    t += " (g = " + (r.g ? r.g->str() : std::string("?")) + ", blocks " + std::to_string(r.k) + " and "
         + std::to_string(r.k2) + ")";
  }
  return emit("c3", c3_to_json(r), t, r.pass);
}

int blocks_x0(Options const& o) {
  auto  h    = hierarchy_from_json(read_json_file(o.hier));
  auto& p    = x0_patch(h, o.level);
  auto  mode = parse_render_mode(o.render);
  auto  body = render_pattern(h.ladder.ctx, p, mode);
  if (G.out.empty()) {
    std::cout << body << "\n";
  } else {
    auto path = std::filesystem::path(G.out)
                / ("x0_level" + std::to_string(o.level) + (mode == RenderMode::text ? ".txt" : ".json"));
    write_text_file(path, body + "\n");
  }
  return 0;
}

int analyze_returns(Options const& o) {
  auto h  = hierarchy_from_json(read_json_file(o.hier));
  auto R  = return_times(h, o.n, o.m);
  auto S  = scan_occurrences(h, o.n, o.m);
  bool eq = R == S;
  bool sz = R.size() * h.ladder.levels[o.n].size() == h.ladder.levels[o.m].size();
  Json j{{"n", o.n},       {"m", o.m},          {"equal", eq},
         {"size_ok", sz},  {"returns", subset_to_json(R)}};
  if (!eq) {
    j["only_scanned"]   = subset_to_json(set_difference(S, R));
    j["only_predicted"] = subset_to_json(set_difference(R, S));
  }
  std::string t = std::to_string(R.size()) + " return times; scan agrees: " + verdict(eq)
                  + "; |F_m|/|F_n| agrees: " + verdict(sz);
  return emit("returns", j, t, eq && sz);
}

int analyze_kr(Options const& o) {
  auto h = hierarchy_from_json(read_json_file(o.hier));
  auto r = check_partitions(h, o.n, o.m);
  std::ostringstream t;
  t << "KR1 " << verdict(r.kr1) << " over " << r.interior << " positions; KR2 " << verdict(r.kr2)
    << " over " << r.interior_next << "\n";
  for (auto const& w : r.witnesses) {
    t << "  at " << w.position.str() << ": " << w.what << "\n";
  }
  return emit("kr", partition_to_json(r), t.str(), r.pass());
}

int analyze_boundary(Options const& o) {
  auto L       = ladder_from_json(read_json_file(o.ladder));
  auto g       = o.g.empty() ? L.ctx.generators().at(0) : parse_element(L.ctx, o.g);
  auto [lo, hi] = level_range(o.levels);
  std::vector<Fraction> v;
  Json rows = Json::array();
  std::ostringstream t;
  for (std::size_t n = lo; n <= hi; ++n) {
    v.push_back(boundary_mass_bound(L, g, n));
    rows.push_back(Json{{"level", n}, {"bound", fraction_to_json(v.back())}});
    t << "level " << n << ": " << to_string(v.back()) << "\n";
  }
  return emit("boundary", Json{{"g", g.str()}, {"levels", rows}}, t.str(), true);
}

int analyze_syndetic(Options const& o) {
  auto h = hierarchy_from_json(read_json_file(o.hier));
  auto r = syndeticity_window(h, o.n, o.m);
  std::string t = std::to_string(r.returns) + " returns; covered " + verdict(r.covered)
                  + "; gap radius " + r.gap_radius.str() + ", cell diameter " + r.diameter.str();
  return emit("syndetic", syndeticity_to_json(r), t, r.covered);
}

ManagedSequence load_sequence(std::string const& path) {
  auto j  = read_json_file(path);
  auto ms = matrices_from_json(j);
  Integer p0(1);
  if (j.is_object() && j.contains("p0")) {
    p0 = integer_from_json(j.at("p0"));
  }
  return ManagedSequence::from_matrices(std::move(ms), p0);
}

int measures_check(Options const& o) {
  auto        seq = load_sequence(o.seq);
  std::string err;
  try {
    seq.check();
  } catch (Error const& e) {
    err = e.what();
  }
  auto horizon = positivity_horizon(seq);
  Json j{{"managed", err.empty()}, {"length", seq.size()}};
  if (!err.empty()) {
    j["witness"] = err;
  }
  j["positivity_horizon"] = horizon ? Json(*horizon) : Json(nullptr);
  std::string t = "managed: " + verdict(err.empty()) + (err.empty() ? "" : " (" + err + ")");
  return emit("check", j, t, err.empty());
}

int measures_limit(Options const& o) {
  auto seq  = load_sequence(o.seq);
  seq.check();
  auto a    = approximate_limit(seq, o.n, o.d);
  auto cert = nesting_certificate(seq, o.n, o.d);
  auto diam = cluster_diameters(seq, o.n, o.d);
  Json j{{"approximant", approximant_to_json(a)},
         {"nested", cert.holds},
         {"cluster_diameters", fraction_array(diam)},
         {"hull_diameter", fraction_to_json(hull_diameter(a))}};
  std::string t = approximant_text(a) + "nested in depth " + std::to_string(o.d - 1) + ": "
                  + verdict(cert.holds) + "\ncluster diameters: " + fraction_list(diam);
  return emit("limit", j, t, cert.holds);
}

int measures_lemma8(Options const& o) {
  auto seq = load_sequence(o.seq);
  seq.check();
  auto sel  = select_subsequence_lemma8(seq, parse_fraction(o.Kbound));
  bool cert = lemma8_certificate(sel);
  Json j{{"indices", sel.indices}, {"tail", sel.tail}, {"grouped", matrices_to_json(sel.grouped)},
         {"certificate", cert}};
  std::ostringstream t;
  t << "indices:";
  for (auto i : sel.indices) {
    t << " " << i;
  }
  t << " (tail " << sel.tail << ")\ncertificate: " << verdict(cert) << "\n";
  return emit("lemma8", j, t.str(), cert);
}

int measures_realize(Options const& o) {
  auto        tol = parse_fraction(o.tol);
  Realization r;
  if (!o.ladder.empty()) {
    r = realize_finite_simplex(o.d, ladder_from_json(read_json_file(o.ladder)), tol, o.max_depth);
  } else {
    Integer ratio = o.ratio.empty() ? Integer(static_cast<unsigned long>(o.d + 2)) : parse_integer(o.ratio);
    r = realize_finite_simplex(o.d, {ratio}, true, tol, o.max_depth);
  }
  Json j{{"depth", r.depth},
         {"sequence", matrices_to_json(r.sequence.matrices)},
         {"p0", integer_to_json(r.sequence.scales[0])},
         {"approximant", approximant_to_json(r.approximant)},
         {"diameters", fraction_array(r.diameters)},
         {"hull_diameter", fraction_to_json(r.hull)}};
  std::string t = "depth " + std::to_string(r.depth) + "\n" + approximant_text(r.approximant)
                  + "cluster diameters: " + fraction_list(r.diameters);
  return emit("realize", j, t, true);
}

int pipeline_run(Options const& o) {
  auto path = std::filesystem::path(o.config);
  auto c    = PipelineConfig::from_json(read_json_file(path), path.parent_path());
  if (!G.out.empty()) {
    c.out_dir = G.out;
  }
  auto rep = run_pipeline(c, true, [](std::string const& m) { vlog(m); });
  std::string body;
  if (text_mode()) {
    body = rep.summary();
  } else {
    body = rep.to_json().dump(2) + "\n";
  }
  std::cout << body;
  if (o.timings) {
    for (auto const& s : rep.stages) {
      std::cerr << s.name << ": " << s.seconds << " s\n";
    }
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruent Følner monotiles, block subshifts and their invariant measures"};
  app.require_subcommand(1);
  app.add_option("--out", G.out, "Directory for output files (default: stdout)");
  app.add_option("--format", G.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--verbose", G.verbose, "Progress on stderr");

  Options              o;
  std::function<int()> action;
  auto on = [&](CLI::App* sub, int (*fn)(Options const&)) {
    sub->callback([&action, &o, fn] { action = [&o, fn] { return fn(o); }; });
  };

  auto* folner = app.add_subcommand("folner", "Congruent Følner ladders");
  folner->require_subcommand(1);
  {
    auto* s = folner->add_subcommand("build", "Build a ladder for a group");
    s->add_option("--group", o.group, "Group descriptor: JSON text or file")->required();
    s->add_option("--depth", o.depth, "Number of glue steps");
    s->add_option("--route", o.route, "auto|lattice|pruefer|chain|heisenberg|virtual");
    s->add_option("--base", o.base, "Odd box side for lattice ladders");
    s->add_option("--eps-schedule", o.eps, "heisenberg3 targets, e.g. geometric:0.5");
    on(s, folner_build);
    s = folner->add_subcommand("check", "Check congruence of a stored ladder");
    s->add_option("ladder", o.ladder)->required();
    on(s, folner_check);
    s = folner->add_subcommand("defect", "(K,eps) invariance profile of a stored ladder");
    s->add_option("ladder", o.ladder)->required();
    s->add_option("--K", o.K, "Elements separated by ';' (default: generators)");
    on(s, folner_defect);
  }

  auto* blocks = app.add_subcommand("blocks", "Block hierarchies");
  blocks->require_subcommand(1);
  {
    auto* s = blocks->add_subcommand("build", "Glue a hierarchy from a ladder and count matrices");
    s->add_option("--ladder", o.ladder)->required();
    s->add_option("--matrices", o.matrices, "Augmented matrices (default: shipped ones)");
    s->add_option("--depth", o.block_depth, "Levels to build (default: all available)");
    s->add_option("--k0", o.k0, "Expected number of base blocks");
    on(s, blocks_build);
    s = blocks->add_subcommand("verify-c3", "Brute-force C3 at one level");
    s->add_option("hier", o.hier)->required();
    s->add_option("--level", o.level);
    on(s, blocks_c3);
    s = blocks->add_subcommand("x0", "The point x_0 on F_n");
    s->add_option("hier", o.hier)->required();
    s->add_option("--level", o.level);
    s->add_option("--render", o.render)->check(CLI::IsMember({"json", "text"}));
    on(s, blocks_x0);
  }

  auto* analyze = app.add_subcommand("analyze", "Return times, partitions, boundary");
  analyze->require_subcommand(1);
  {
    auto* s = analyze->add_subcommand("returns", "Scan x_0 against the return-time oracle");
    s->add_option("--hier", o.hier)->required();
    s->add_option("-n", o.n);
    s->add_option("-m", o.m);
    on(s, analyze_returns);
    s = analyze->add_subcommand("kr", "Kakutani-Rokhlin partition checks");
    s->add_option("--hier", o.hier)->required();
    s->add_option("-n", o.n);
    s->add_option("-m", o.m);
    on(s, analyze_kr);
    s = analyze->add_subcommand("boundary", "Boundary mass |F_n \\ F_n g| / |F_n|");
    s->add_option("--ladder", o.ladder)->required();
    s->add_option("-g", o.g, "Element (default: first generator)");
    s->add_option("--levels", o.levels, "Range like 1..4");
    on(s, analyze_boundary);
    s = analyze->add_subcommand("syndetic", "Covering of F_m by returns");
    s->add_option("--hier", o.hier)->required();
    s->add_option("-n", o.n);
    s->add_option("-m", o.m);
    on(s, analyze_syndetic);
  }

  auto* measures = app.add_subcommand("measures", "Managed sequences and simplex approximants");
  measures->require_subcommand(1);
  {
    auto* s = measures->add_subcommand("check", "Managed-sequence validity");
    s->add_option("seq", o.seq)->required();
    on(s, measures_check);
    s = measures->add_subcommand("limit", "Finite-depth approximant with nesting certificate");
    s->add_option("seq", o.seq)->required();
    s->add_option("-n", o.n);
    s->add_option("-d", o.d);
    on(s, measures_limit);
    s = measures->add_subcommand("lemma8", "Greedy grouping with entries above column counts");
    s->add_option("seq", o.seq)->required();
    s->add_option("--K", o.Kbound);
    on(s, measures_lemma8);
    s = measures->add_subcommand("realize", "Sequence whose limit has d extreme points");
    s->add_option("--d", o.d);
    s->add_option("--ladder", o.ladder, "Ladder file supplying the ratios");
    s->add_option("--ratio", o.ratio, "Constant ratio when no ladder is given");
    s->add_option("--tol", o.tol);
    s->add_option("--max-depth", o.max_depth);
    on(s, measures_realize);
  }

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage from a JSON config");
  pipeline->add_option("config", o.config)->required();
  pipeline->add_flag("--timings", o.timings, "Per-stage seconds on stderr");
  on(pipeline, pipeline_run);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    // --help lands here too and exits 0; usage errors join the exit code 2 group
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (Error const& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (nlohmann::json::exception const& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (std::filesystem::filesystem_error const& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  }
}
