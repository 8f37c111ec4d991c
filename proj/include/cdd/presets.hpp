#pragma once

#include <string>
#include <vector>

#include "cdd/harness.hpp"

namespace cdd {

/// One runnable unit of a reproduce preset.
struct PresetRun {
    enum class Kind { Ser, Rate };
    Kind kind = Kind::Ser;
    std::string variant; // file stem suffix, e.g. "naive"
    ExperimentConfig config;
};

/// Desk-scaled experiment presets named motivating, fig2, fig3, fig4a,
/// fig4b, fig5a, fig5b. Trial counts, grids and seeds are fixed so the
/// output is reproducible; callers may override trials/threads/seed.
std::vector<PresetRun> reproduce_preset(const std::string& name);

std::vector<std::string> preset_names();

} // namespace cdd
