#pragma once

#include <vector>

#include "fjsp/instance.hpp"

namespace fjsp {

/// Single solar-panel assembly: 12 jobs, Assembler / MARC 1 / MARC 2 / LSMS.
Instance solar_panel_instance();

/// Jobs {M2, Ja, Aa, Jb, Ab} of the solar panel with their induced arcs,
/// holding links and distances.
Instance reduced_rl_instance();

/// Subinstance on `keep` (in that order). Arcs and holding links between kept
/// jobs survive; machine start locations outside `keep` become free starts.
/// An explicit horizon is dropped so that big-L is recomputed.
Instance restrict_instance(const Instance& instance, const std::vector<JobId>& keep);

/// `panels` copies of the solar panel. Job names get the suffix "_<k>" for
/// panel k = 1..panels and machines are shared. Distances within a panel are
/// kept; between job a of panel P and job b of panel Q they are
/// shift * |P - Q| + max(d(M1, a), d(M1, b)). Throws InvalidArgumentError for
/// panels == 0 or a negative shift.
Instance gen_multi_panel(std::size_t panels, int shift = 100);

}  // namespace fjsp
