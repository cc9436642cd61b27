#pragma once

#include <string>

#include "bft/bfgroup.hpp"

namespace bft {

/// t1 on top, the braid below it with one <g class="crossing-block"> per
/// A-letter, nontrivial labels under their strands, then t2 upside down.
std::string render_svg(const BFElement& x);

}  // namespace bft
