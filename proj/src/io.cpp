#include "monotile/io.hpp"

#include <fstream>
#include <sstream>

namespace monotile {

namespace {

  Json const& field(Json const& j, char const* key) {
    if (!j.is_object() || !j.contains(key)) {
      throw Error(ErrorCode::config, std::string("missing field '") + key + "'");
    }
    return j.at(key);
  }

  std::int64_t int_field(Json const& j, char const* key) {
    auto const& v = field(j, key);
    if (!v.is_number_integer()) {
      throw Error(ErrorCode::config, std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
  }

  Element element_from_json(GroupContext const& ctx, Json const& j) {
    if (j.is_string()) {
      return parse_element(ctx, j.get<std::string>());
    }
    if (j.is_number_integer()) {
      return parse_element(ctx, std::to_string(j.get<std::int64_t>()));
    }
    throw Error(ErrorCode::encoding, "element must be a string, got " + j.dump());
  }

  Json sizes(std::vector<FiniteSubset> const& v) {
    Json out = Json::array();
    for (auto const& F : v) {
      out.push_back(F.size());
    }
    return out;
  }

}  // namespace

Json group_to_json(GroupContext const& ctx) {
  Json j;
  switch (ctx.kind()) {
    case GroupKind::lattice:
      if (ctx.is_trivial()) {
        j["kind"] = "trivial";
      } else {
        j["kind"] = "lattice";
        j["d"]    = ctx.dimension();
      }
      break;
    case GroupKind::cyclic:
      j["kind"] = "cyclic";
      j["n"]    = ctx.modulus();
      break;
    case GroupKind::heisenberg3: j["kind"] = "heisenberg3"; break;
    case GroupKind::pruefer:
      j["kind"] = "pruefer";
      j["p"]    = ctx.modulus();
      break;
    case GroupKind::rationals: j["kind"] = "rationals"; break;
    case GroupKind::direct_product: {
      j["kind"]    = "direct_product";
      Json factors = Json::array();
      for (auto const& f : ctx.factors()) {
        factors.push_back(group_to_json(f));
      }
      j["factors"] = std::move(factors);
      break;
    }
    case GroupKind::finite_extension:
      j["kind"]       = "finite_extension";
      j["ambient"]    = group_to_json(ctx.ambient());
      j["base"]       = group_to_json(ctx.base());
      j["coset_reps"] = subset_to_json(ctx.coset_reps());
      break;
  }
  return j;
}

GroupContext group_from_json(Json const& j) {
  auto const kind = field(j, "kind").get<std::string>();
  if (kind == "lattice") {
    return GroupContext::lattice(static_cast<int>(int_field(j, "d")));
  }
  if (kind == "trivial") {
    return GroupContext::trivial();
  }
  if (kind == "cyclic") {
    return GroupContext::cyclic(int_field(j, "n"));
  }
  if (kind == "heisenberg3") {
    return GroupContext::heisenberg3();
  }
  if (kind == "pruefer") {
    return GroupContext::pruefer(int_field(j, "p"));
  }
  if (kind == "rationals") {
    return GroupContext::rationals();
  }
  if (kind == "direct_product") {
    std::vector<GroupContext> fs;
    for (auto const& f : field(j, "factors")) {
      fs.push_back(group_from_json(f));
    }
    return GroupContext::direct_product(std::move(fs));
  }
  if (kind == "finite_extension") {
    auto ambient = group_from_json(field(j, "ambient"));
    auto base    = j.contains("base") ? group_from_json(j.at("base")) : GroupContext::trivial();
    std::vector<Element> reps;
    for (auto const& e : field(j, "coset_reps")) {
      reps.push_back(element_from_json(ambient, e));
    }
    return GroupContext::finite_extension(std::move(ambient), std::move(base), std::move(reps));
  }
  throw Error(ErrorCode::unsupported_group, "unknown group kind '" + kind + "'");
}

Json subset_to_json(FiniteSubset const& F) {
  Json out = Json::array();
  for (auto const& g : F) {
    out.push_back(g.str());
  }
  return out;
}

FiniteSubset subset_from_json(GroupContext const& ctx, Json const& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::config, "expected an array of elements");
  }
  std::vector<Element> v;
  v.reserve(j.size());
  for (auto const& e : j) {
    v.push_back(element_from_json(ctx, e));
  }
  std::size_t n = v.size();
  FiniteSubset F(std::move(v));
  if (F.size() != n) {
    throw Error(ErrorCode::encoding, "repeated element in a subset");
  }
  return F;
}

Json ladder_to_json(FolnerLadder const& L) {
  Json j;
  j["group"] = group_to_json(L.ctx);
  j["depth"] = L.depth();
  j["sizes"] = sizes(L.levels);
  Json lv    = Json::array();
  for (auto const& F : L.levels) {
    lv.push_back(subset_to_json(F));
  }
  Json gl = Json::array();
  for (auto const& J : L.glue) {
    gl.push_back(subset_to_json(J));
  }
  j["levels"] = std::move(lv);
  j["glue"]   = std::move(gl);
  return j;
}

FolnerLadder ladder_from_json(Json const& j) {
  FolnerLadder L;
  L.ctx = group_from_json(field(j, "group"));
  for (auto const& F : field(j, "levels")) {
    L.levels.push_back(subset_from_json(L.ctx, F));
  }
  for (auto const& J : field(j, "glue")) {
    L.glue.push_back(subset_from_json(L.ctx, J));
  }
  if (L.levels.empty() || L.levels.size() != L.glue.size() + 1) {
    throw Error(ErrorCode::config, "a ladder needs one more level than glue sets");
  }
  return L;
}

Json pattern_to_json(Pattern const& p) {
  return Json{{"support", subset_to_json(p.support)}, {"symbols", p.symbols}};
}

Pattern pattern_from_json(GroupContext const& ctx, Json const& j) {
  Pattern p;
  // symbols are aligned with the support order as written, which may not
  // be canonical in a hand-made file
  auto const& sup = field(j, "support");
  auto const& sym = field(j, "symbols");
  if (!sup.is_array() || !sym.is_array() || sup.size() != sym.size()) {
    throw Error(ErrorCode::config, "pattern support and symbols differ in length");
  }
  std::vector<std::pair<Element, int>> cells;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    cells.emplace_back(element_from_json(ctx, sup[i]), sym[i].get<int>());
  }
  std::sort(cells.begin(), cells.end(),
            [](auto const& a, auto const& b) { return a.first < b.first; });
  std::vector<Element> es;
  for (auto& c : cells) {
    if (!es.empty() && es.back() == c.first) {
      throw Error(ErrorCode::encoding, "repeated element in pattern support");
    }
    es.push_back(c.first);
    p.symbols.push_back(c.second);
  }
  p.support = FiniteSubset::from_sorted(std::move(es));
  return p;
}

Json integer_to_json(Integer const& z) {
  if (z.fits_slong_p()) {
    return Json(z.get_si());
  }
  return Json(z.get_str());
}

Integer integer_from_json(Json const& j) {
  if (j.is_number_integer()) {
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    return parse_integer(j.get<std::string>());
  }
  throw Error(ErrorCode::config, "expected an integer, got " + j.dump());
}

Json matrix_to_json(ManagedMatrix const& M) {
  Json e = Json::array();
  for (auto const& z : M.entries()) {
    e.push_back(integer_to_json(z));
  }
  return Json{{"rows", M.rows()}, {"cols", M.cols()}, {"ratio", integer_to_json(M.ratio())},
              {"entries", std::move(e)}};
}

ManagedMatrix matrix_from_json(Json const& j) {
  auto rows = int_field(j, "rows");
  auto cols = int_field(j, "cols");
  if (rows < 0 || cols < 0) {
    throw Error(ErrorCode::config, "negative matrix shape");
  }
  std::vector<Integer> e;
  for (auto const& z : field(j, "entries")) {
    e.push_back(integer_from_json(z));
  }
  if (e.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorCode::dimension_mismatch, std::to_string(e.size()) + " entries for a "
                                                   + std::to_string(rows) + "x"
                                                   + std::to_string(cols) + " matrix");
  }
  return ManagedMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                       integer_from_json(field(j, "ratio")), std::move(e));
}

Json matrices_to_json(std::vector<ManagedMatrix> const& ms) {
  Json out = Json::array();
  for (auto const& M : ms) {
    out.push_back(matrix_to_json(M));
  }
  return out;
}

std::vector<ManagedMatrix> matrices_from_json(Json const& j) {
  Json const& arr = j.is_object() ? field(j, "matrices") : j;
  if (!arr.is_array()) {
    throw Error(ErrorCode::config, "expected an array of matrices");
  }
  std::vector<ManagedMatrix> out;
  for (auto const& m : arr) {
    out.push_back(matrix_from_json(m));
  }
  return out;
}

Json hierarchy_to_json(BlockHierarchy const& h) {
  Json j;
  j["ladder"]   = ladder_to_json(h.ladder);
  j["matrices"] = matrices_to_json(h.matrices);
  Json as       = Json::array();
  for (auto const& a : h.assignments) {
    as.push_back(Json{{"level", a.level}, {"maps", a.maps}});
  }
  j["assignments"] = std::move(as);
  Json fams        = Json::array();
  for (auto const& fam : h.families) {
    Json f = Json::array();
    for (auto const& p : fam) {
      f.push_back(pattern_to_json(p));
    }
    fams.push_back(std::move(f));
  }
  j["families"] = std::move(fams);
  return j;
}

BlockHierarchy hierarchy_from_json(Json const& j) {
  BlockHierarchy h;
  h.ladder   = ladder_from_json(field(j, "ladder"));
  h.matrices = matrices_from_json(field(j, "matrices"));
  for (auto const& a : field(j, "assignments")) {
    Assignment as;
    as.level = field(a, "level").get<std::size_t>();
    as.maps  = field(a, "maps").get<std::vector<std::vector<std::uint32_t>>>();
    h.assignments.push_back(std::move(as));
  }
  for (auto const& f : field(j, "families")) {
    Family fam;
    for (auto const& p : f) {
      fam.push_back(pattern_from_json(h.ladder.ctx, p));
    }
    h.families.push_back(std::move(fam));
  }
  if (h.families.size() != h.assignments.size() + 1
      || h.ladder.depth() < h.assignments.size()) {
    throw Error(ErrorCode::config, "hierarchy levels do not match its ladder");
  }
  // stored ladders may be deeper than the hierarchy
  h.ladder.levels.resize(h.families.size());
  h.ladder.glue.resize(h.assignments.size());
  return h;
}

Json fraction_to_json(Fraction const& q) {
  return Json(to_string(q));
}

Json point_to_json(SimplexPoint const& z) {
  Json c = Json::array();
  for (auto const& x : z.coords) {
    c.push_back(fraction_to_json(x));
  }
  return Json{{"scale", integer_to_json(z.scale)}, {"coords", std::move(c)}};
}

Json approximant_to_json(SimplexApproximant const& a) {
  Json v = Json::array();
  for (auto const& p : a.vertices) {
    v.push_back(point_to_json(p));
  }
  return Json{{"level", a.level}, {"depth", a.depth}, {"scale", integer_to_json(a.scale)},
              {"vertices", std::move(v)}};
}

Json congruence_to_json(CongruenceReport const& r) {
  Json j{{"pass", r.pass}};
  if (!r.pass) {
    j["level"] = r.level;
    j["kind"]  = r.kind;
    if (r.first) {
      j["first"] = r.first->str();
    }
    if (r.second) {
      j["second"] = r.second->str();
    }
    if (r.witness) {
      j["witness"] = r.witness->str();
    }
    j["message"] = r.message;
  }
  return j;
}

Json c3_to_json(C3Report const& r) {
  Json j{{"pass", r.pass}};
  if (!r.pass) {
    j["g"]  = r.g ? Json(r.g->str()) : Json(nullptr);
    j["k"]  = r.k;
    j["k2"] = r.k2;
  }
  return j;
}

Json partition_to_json(PartitionReport const& r) {
  Json w = Json::array();
  for (auto const& x : r.witnesses) {
    w.push_back(Json{{"position", x.position.str()}, {"what", x.what}});
  }
  return Json{{"pass", r.pass()},
              {"kr1", r.kr1},
              {"kr2", r.kr2},
              {"interior", r.interior},
              {"interior_next", r.interior_next},
              {"witnesses", std::move(w)}};
}

Json syndeticity_to_json(SyndeticityReport const& r) {
  Json j{{"covered", r.covered},
         {"returns", r.returns},
         {"gap_radius", r.gap_radius.str()},
         {"diameter", r.diameter.str()}};
  if (r.uncovered) {
    j["uncovered"] = r.uncovered->str();
  }
  return j;
}

std::string read_text_file(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(std::filesystem::path const& path) {
  auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw Error(ErrorCode::config, path.string() + ": " + e.what());
  }
}

void write_text_file(std::filesystem::path const& path, std::string const& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::io, "write failed for " + path.string());
  }
}

}  // namespace monotile
