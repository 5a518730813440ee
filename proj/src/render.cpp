#include "monotile/render.hpp"

#include "monotile/io.hpp"

namespace monotile {

namespace {

  bool integral(Element const& g) {
    for (auto const& x : g.coords()) {
      if (x.denominator() != 1) {
        return false;
      }
    }
    return true;
  }

  [[noreturn]] void no_box(std::string const& why) {
    throw Error(ErrorCode::unsupported_render, why);
  }

}  // namespace

RenderMode parse_render_mode(std::string_view s) {
  if (s == "text") {
    return RenderMode::text;
  }
  if (s == "json") {
    return RenderMode::json;
  }
  throw Error(ErrorCode::config, "unknown format '" + std::string(s) + "'");
}

std::string render_pattern(GroupContext const& ctx, Pattern const& p, RenderMode mode) {
  if (mode == RenderMode::json) {
    return pattern_to_json(p).dump();
  }
  if (ctx.kind() != GroupKind::lattice || ctx.dimension() < 1 || ctx.dimension() > 2) {
    no_box("text rendering needs lattice(1) or lattice(2), got " + std::string(to_string(ctx.kind())));
  }
  auto const& S = p.support;
  if (S.empty()) {
    return "";
  }
  for (auto const& g : S) {
    if (!integral(g)) {
      no_box("support is not integral");
    }
  }
  auto const& lo = S[0];
  auto const& hi = S[S.size() - 1];
  std::string out;
  if (ctx.dimension() == 1) {
    if (hi[0] - lo[0] + 1 != Rational(static_cast<std::int64_t>(S.size()))) {
      no_box("support is not an interval");
    }
    for (std::size_t i = 0; i < S.size(); ++i) {
      out += (i ? " " : "") + std::to_string(p.symbols[i]);
    }
    return out;
  }
  // canonical order is row-major over (x, y), so a box reads off directly
  auto width  = hi[1] - lo[1] + 1;
  auto height = hi[0] - lo[0] + 1;
  if (width * height != Rational(static_cast<std::int64_t>(S.size()))) {
    no_box("support is not a box");
  }
  std::size_t w = static_cast<std::size_t>(width.numerator().get_si());
  for (std::size_t i = 0; i < S.size(); ++i) {
    Element expect{lo[0] + Rational(static_cast<std::int64_t>(i / w)),
                   lo[1] + Rational(static_cast<std::int64_t>(i % w))};
    if (!(S[i] == expect)) {
      no_box("support is not a box");
    }
    out += std::to_string(p.symbols[i]);
    out += (i % w + 1 == w) ? "\n" : " ";
  }
  out.pop_back();
  return out;
}

std::string render_matrix(ManagedMatrix const& M) {
  std::vector<std::string> cells;
  std::size_t              wide = 1;
  for (auto const& z : M.entries()) {
    cells.push_back(z.get_str());
    wide = std::max(wide, cells.back().size());
  }
  std::string out;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      auto const& c = cells[i * M.cols() + j];
      out += std::string(wide - c.size() + (j ? 1 : 0), ' ') + c;
    }
    out += "\n";
  }
  out += "(ratio " + M.ratio().get_str() + ")";
  return out;
}

}  // namespace monotile
