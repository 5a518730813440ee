#pragma once

#include <string>
#include <string_view>

#include "monotile/blocks.hpp"

namespace monotile {

enum class RenderMode { text, json };

RenderMode parse_render_mode(std::string_view s);

// Text mode needs a lattice(1) interval or a lattice(2) box; a 2D box is
// printed one row per first coordinate, columns along the second.
std::string render_pattern(GroupContext const& ctx, Pattern const& p, RenderMode mode);

std::string render_matrix(ManagedMatrix const& M);

}  // namespace monotile
