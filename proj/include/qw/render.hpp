#pragma once

#include <string>

#include "qw/board.hpp"

namespace qw {

// One rect per cell, a circle per piece; deterministic output.
std::string render_svg(const BoardGrid& board, const Placement* placement = nullptr);
std::string render_ascii(const BoardGrid& board, const Placement* placement = nullptr);

}  // namespace qw
