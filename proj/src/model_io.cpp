#include "qrc/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qrc/error.hpp"

namespace qrc {

namespace {

constexpr std::string_view kMagic = "QRCMODEL";
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw DataError("model file truncated at byte " + std::to_string(pos_));
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const QrcModel& model, std::uint64_t vocab_hash) {
  const ReservoirConfig& rc = model.reservoir.config();
  Writer w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(rc.num_qubits));
  w.u32(static_cast<std::uint32_t>(rc.vocab_size));
  w.u64(rc.random_block_seed);
  w.u32(static_cast<std::uint32_t>(rc.block_length()));
  w.u64(rc.shots);
  w.u8(static_cast<std::uint8_t>(rc.mode));
  w.f64(rc.noise.two_qubit_depol);
  w.f64(rc.noise.one_qubit_depol);
  std::uint8_t mask = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (rc.noise.gate_depol[k]) mask |= static_cast<std::uint8_t>(1U << k);
  }
  w.u8(mask);
  for (std::size_t k = 0; k < 4; ++k) w.f64(rc.noise.gate_depol[k].value_or(0.0));
  w.u32(static_cast<std::uint32_t>(rc.noise.readout_flip.size()));
  for (double f : rc.noise.readout_flip) w.f64(f);
  w.f64(model.epsilon);
  w.u8(static_cast<std::uint8_t>(model.h0));
  w.u32(static_cast<std::uint32_t>(model.seed_token));
  w.u64(model.training_length);
  w.u8(model.readout.use_bias ? 1 : 0);
  w.u64(vocab_hash);
  for (double v : model.readout.weights) w.f64(v);
  for (double v : model.readout.bias) w.f64(v);
  w.u32(static_cast<std::uint32_t>(model.final_memory.size()));
  for (double v : model.final_memory) w.f64(v);
  return w.take();
}

StoredModel deserialize_model(std::string_view bytes) {
  Reader r(bytes);
  if (r.bytes(kMagic.size()) != kMagic) throw DataError("not a model file (bad magic)");
  if (const auto v = r.u32(); v != kVersion) throw DataError("unsupported model file version " + std::to_string(v));

  ReservoirConfig rc;
  rc.num_qubits = static_cast<int>(r.u32());
  rc.vocab_size = static_cast<int>(r.u32());
  rc.random_block_seed = r.u64();
  rc.random_block_len = static_cast<int>(r.u32());
  rc.shots = r.u64();
  const std::uint8_t mode = r.u8();
  if (mode > 2) throw DataError("model file: bad fidelity mode");
  rc.mode = static_cast<FidelityMode>(mode);
  if (rc.num_qubits < 2 || rc.num_qubits > 12 || rc.vocab_size < 2 || rc.vocab_size > (1 << 20)) {
    throw DataError("model file: implausible dimensions");
  }
  rc.noise.two_qubit_depol = r.f64();
  rc.noise.one_qubit_depol = r.f64();
  const std::uint8_t mask = r.u8();
  for (std::size_t k = 0; k < 4; ++k) {
    const double v = r.f64();
    if (mask & (1U << k)) rc.noise.gate_depol[k] = v;
  }
  const std::uint32_t n_flip = r.u32();
  if (n_flip > 64) throw DataError("model file: implausible readout flip count");
  for (std::uint32_t i = 0; i < n_flip; ++i) rc.noise.readout_flip.push_back(r.f64());

  const double epsilon = r.f64();
  const std::uint8_t h0 = r.u8();
  if (h0 > 1) throw DataError("model file: bad memory init policy");
  const auto seed_token = static_cast<int>(r.u32());
  const std::uint64_t training_length = r.u64();
  const bool use_bias = r.u8() != 0;
  const std::uint64_t vocab_hash = r.u64();

  ReadoutModel readout = ReadoutModel::zeros(rc.vocab_size, rc.state_dim(), use_bias);
  for (double& v : readout.weights) v = r.f64();
  for (double& v : readout.bias) v = r.f64();
  const std::uint32_t n_mem = r.u32();
  if (n_mem != 0 && n_mem != rc.state_dim()) throw DataError("model file: memory vector has wrong length");
  std::vector<double> final_memory(n_mem);
  for (double& v : final_memory) v = r.f64();
  if (!r.done()) throw DataError("model file has trailing bytes");

  try {
    readout.validate();
    Reservoir reservoir(rc);
    if (seed_token < 0 || seed_token >= rc.vocab_size) throw DataError("model file: seed token out of range");
    if (!final_memory.empty() && !is_probability_vector(final_memory)) {
      throw DataError("model file: stored memory is not a probability vector");
    }
    QrcModel model{std::move(reservoir), std::move(readout), epsilon, static_cast<MemoryInit>(h0),
                   seed_token, static_cast<std::size_t>(training_length), std::move(final_memory)};
    EngineConfig{epsilon, model.h0}.validate();
    return {std::move(model), vocab_hash};
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model file: ") + e.what());
  } catch (const NumericError& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const QrcModel& model, std::uint64_t vocab_hash) {
  const std::string bytes = serialize_model(model, vocab_hash);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing model file " + path.string());
}

StoredModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize_model(buf.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace qrc
