#pragma once

// CSV artifacts for the command-line front end. Numeric cells use
// round-trip-exact formatting (see format.hpp), so emitted files
// re-parse to the identical doubles.

#include <iosfwd>
#include <vector>

#include "budgetsim/analytic.hpp"
#include "budgetsim/model.hpp"
#include "budgetsim/numeric.hpp"
#include "budgetsim/scenario.hpp"

namespace budgetsim::csv {

/// Header "t,b,regime"; one row per sample, regime classified per sample.
void write_trajectory(std::ostream& os, const Trajectory& traj, const ModelParams& p);

/// Inverse of write_trajectory for the numeric columns; the regime
/// column is re-derivable and ignored. Throws std::runtime_error on a
/// malformed file.
[[nodiscard]] std::vector<TimeSample> parse_trajectory(std::istream& is);

/// Header "b,dbdt".
void write_portrait(std::ostream& os, const std::vector<PortraitSample>& samples);

/// Header "b_star,stability,debt_continuum". An empty report emits one
/// row with an empty b_star cell and stability "None".
void write_fixed_points(std::ostream& os, const FixedPointReport& report);

/// Header "<varying>,gamma,b_star,stability,debt_continuum" plus the
/// requested output columns (t0, final_b, max_error, in that order) and
/// a trailing "error" column.
void write_sweep(std::ostream& os, const SweepSpec& spec, const SweepResult& result);

/// Header "t,b_numeric,b_analytic": the validation comparison grid.
void write_validation_grid(std::ostream& os, const Trajectory& traj,
                           const CompositeSolution& comp);

}  // namespace budgetsim::csv
