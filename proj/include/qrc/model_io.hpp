#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "qrc/engine.hpp"

namespace qrc {

// Binary model file, all integers and IEEE-754 doubles little-endian:
//
//   "QRCMODEL" u32 version(=1)
//   u32 q, u32 f, u64 random_block_seed, u32 random_block_len, u64 shots, u8 mode
//   f64 two_qubit_depol, f64 one_qubit_depol, u8 gate_override_mask, f64[4] gate_depol
//   u32 n_flip, f64[n_flip] readout_flip
//   f64 epsilon, u8 h0, u32 seed_token, u64 training_length, u8 use_bias
//   u64 vocab_hash
//   f64[f * 2^q] W (row-major), f64[f] b
//   u32 n_mem, f64[n_mem] final_memory

struct StoredModel {
  QrcModel model;
  std::uint64_t vocab_hash = 0;
};

std::string serialize_model(const QrcModel& model, std::uint64_t vocab_hash);
/// Throws DataError on truncated, corrupt or inconsistent input.
StoredModel deserialize_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const QrcModel& model, std::uint64_t vocab_hash);
StoredModel load_model(const std::filesystem::path& path);

}  // namespace qrc
