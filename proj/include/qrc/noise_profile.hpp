#pragma once

#include <filesystem>
#include <string_view>

#include "qrc/qsim.hpp"

namespace qrc {

/// Loads a calibration profile (JSON):
///
///   {
///     "two_qubit_depol": 0.02,          // optional, default 0
///     "one_qubit_depol": 0.002,         // optional, default 0
///     "gate_depol": {"x": 0.001, "h": 0.001, "ry": 0.0015, "cnot": 0.025},
///     "readout_flip": [0.02, 0.03, 0.015, 0.02, 0.025, 0.02]
///   }
///
/// Throws DataError on malformed content or probabilities outside [0, 1].
NoiseSpec load_calibration_profile(const std::filesystem::path& path);
NoiseSpec parse_calibration_profile(std::string_view text);

}  // namespace qrc
