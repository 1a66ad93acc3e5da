#include "qrc/noise_profile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrc/error.hpp"

namespace qrc {

namespace {

double probability(const nlohmann::json& value, const std::string& what) {
  if (!value.is_number()) throw DataError("calibration profile: " + what + " must be a number");
  const double p = value.get<double>();
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("calibration profile: " + what + " outside [0, 1]");
  return p;
}

}  // namespace

NoiseSpec parse_calibration_profile(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("calibration profile: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("calibration profile: top level must be an object");

  NoiseSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "two_qubit_depol") {
      spec.two_qubit_depol = probability(value, key);
    } else if (key == "one_qubit_depol") {
      spec.one_qubit_depol = probability(value, key);
    } else if (key == "gate_depol") {
      if (!value.is_object()) throw DataError("calibration profile: gate_depol must be an object");
      for (const auto& [gate, strength] : value.items()) {
        GateKind kind;
        if (gate == "x") kind = GateKind::X;
        else if (gate == "h") kind = GateKind::H;
        else if (gate == "cnot") kind = GateKind::CNOT;
        else if (gate == "ry") kind = GateKind::RY;
        else throw DataError("calibration profile: unknown gate kind '" + gate + "'");
        spec.gate_depol[static_cast<std::size_t>(kind)] = probability(strength, "gate_depol." + gate);
      }
    } else if (key == "readout_flip") {
      if (!value.is_array()) throw DataError("calibration profile: readout_flip must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) {
        spec.readout_flip.push_back(probability(value[i], "readout_flip[" + std::to_string(i) + "]"));
      }
    } else {
      throw DataError("calibration profile: unknown key '" + key + "'");
    }
  }
  return spec;
}

NoiseSpec load_calibration_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open calibration profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_calibration_profile(buf.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace qrc
