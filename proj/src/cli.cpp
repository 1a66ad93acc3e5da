#include "qrc/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qrc/baselines.hpp"
#include "qrc/csv.hpp"
#include "qrc/error.hpp"
#include "qrc/model_io.hpp"
#include "qrc/noise_profile.hpp"
#include "qrc/parallel.hpp"
#include "qrc/plot.hpp"

namespace qrc::cli {

namespace fs = std::filesystem;

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Temperature: return "temperature";
    case SweepAxis::Qubits: return "qubits";
    case SweepAxis::Depol: return "depol";
  }
  return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "temperature") return SweepAxis::Temperature;
  if (name == "qubits") return SweepAxis::Qubits;
  if (name == "depol") return SweepAxis::Depol;
  throw std::invalid_argument("unknown sweep axis '" + name + "' (expected temperature, qubits or depol)");
}

std::string to_string(Baseline baseline) { return baseline == Baseline::Unigram ? "unigram" : "markov"; }

std::vector<std::size_t> ExperimentConfig::originality_lengths() const {
  if (!lengths.empty()) return lengths;
  std::vector<std::size_t> out;
  for (std::size_t L = 2; L <= 20; ++L) out.push_back(L);
  return out;
}

void ExperimentConfig::validate() const {
  if (variants < 1) throw std::invalid_argument("variants must be >= 1");
  if (sweep_values.empty()) throw std::invalid_argument("sweep values must not be empty");
  for (std::size_t L : lengths) {
    if (L < 1) throw std::invalid_argument("originality lengths must be >= 1");
  }
  engine.validate();
  train.validate();
  if (!(generation.temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  for (double v : sweep_values) {
    switch (axis) {
      case SweepAxis::Temperature:
        if (!(v > 0.0)) throw std::invalid_argument("sweep temperatures must be positive");
        break;
      case SweepAxis::Qubits:
        if (v != std::floor(v) || v < 2 || v > 12) throw std::invalid_argument("sweep qubit counts must be integers in [2, 12]");
        break;
      case SweepAxis::Depol:
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("sweep depolarizing rates must lie in [0, 1]");
        break;
    }
  }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json noise = {
      {"two_qubit_depol", c.reservoir.noise.two_qubit_depol},
      {"one_qubit_depol", c.reservoir.noise.one_qubit_depol},
      {"readout_flip", c.reservoir.noise.readout_flip},
  };
  nlohmann::json gate_depol = nlohmann::json::object();
  for (std::size_t k = 0; k < 4; ++k) {
    if (c.reservoir.noise.gate_depol[k]) gate_depol[to_string(static_cast<GateKind>(k))] = *c.reservoir.noise.gate_depol[k];
  }
  noise["gate_depol"] = gate_depol;

  nlohmann::json j;
  j["level"] = c.level_path.generic_string();
  j["rules"] = c.rules_path.generic_string();
  j["calibration"] = c.calibration_path.generic_string();
  j["reservoir"] = {
      {"qubits", c.reservoir.num_qubits},
      {"vocab_size", c.reservoir.vocab_size},
      {"random_block_seed", c.reservoir.random_block_seed},
      {"random_block_len", c.reservoir.block_length()},
      {"shots", c.reservoir.shots},
      {"mode", to_string(c.reservoir.mode)},
      {"noise", noise},
  };
  j["train"] = {
      {"learning_rate", c.train.learning_rate},
      {"epochs", c.train.epochs},
      {"optimizer", to_string(c.train.optimizer)},
      {"adam_beta1", c.train.adam_beta1},
      {"adam_beta2", c.train.adam_beta2},
      {"adam_eps", c.train.adam_eps},
      {"init_scale", c.train.init_scale},
      {"use_bias", c.train.use_bias},
      {"seed", c.train.seed},
  };
  j["engine"] = {{"epsilon", c.engine.epsilon}, {"h0", to_string(c.engine.h0)}};
  nlohmann::json gen = {
      {"length", c.generation.length},
      {"temperature", c.generation.temperature},
      {"carry_memory", c.generation.carry_memory},
  };
  gen["x0"] = c.generation.x0 ? nlohmann::json(*c.generation.x0) : nlohmann::json("first-token-of-training");
  gen["h0"] = c.generation.h0 ? to_string(*c.generation.h0) : "model";
  j["generation"] = gen;
  j["sweep"] = {{"axis", to_string(c.axis)}, {"values", c.sweep_values}};
  j["variants"] = c.variants;
  j["master_seed"] = c.master_seed;
  j["lengths"] = c.originality_lengths();
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Inputs {
  Level level;
  std::optional<ConstraintRules> rules;
  ReservoirConfig reservoir;
};

Inputs load_inputs(const ExperimentConfig& config) {
  Inputs in{load_level(config.level_path), std::nullopt, config.reservoir};
  if (!config.rules_path.empty()) in.rules = load_rules(config.rules_path, in.level.vocab);
  in.reservoir.vocab_size = in.level.vocab.size();
  if (!config.calibration_path.empty()) {
    in.reservoir.mode = FidelityMode::Noisy;
    in.reservoir.noise = load_calibration_profile(config.calibration_path);
  }
  if (in.level.tokens.size() < 2) throw DataError(config.level_path.string() + ": training level needs >= 2 tokens");
  return in;
}

void write_config_echo(const fs::path& path, const ExperimentConfig& config) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << config_to_json(config).dump(2) << '\n';
}

std::vector<TokenSequence> generate_variants(const QrcModel& model, const ExperimentConfig& config,
                                             std::size_t length, double temperature) {
  std::vector<TokenSequence> variants(config.variants);
  parallel_for(config.variants, config.workers, [&](std::size_t i) {
    GenerationConfig g = config.generation;
    g.length = length;
    g.temperature = temperature;
    g.seed = mix_seed(config.master_seed, i);
    variants[i] = generate(model, g);
  });
  return variants;
}

std::size_t output_length(const ExperimentConfig& config, std::size_t training_length) {
  return config.generation.length > 0 ? config.generation.length : training_length;
}

AggregatedErrors aggregate(const std::vector<ErrorReport>& reports) {
  AggregatedErrors agg;
  std::vector<double> rates;
  for (const ErrorReport& r : reports) {
    agg.broken += r.broken;
    agg.eligible += r.eligible;
    rates.push_back(r.rate);
  }
  agg.rate = mean_std(rates);
  return agg;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

class ResultWriter {
 public:
  ResultWriter(const fs::path& dir)
      : originality_(dir / "originality.csv", {"sweep_value", "L", "mean", "std"}),
        errors_(dir / "errors.csv", {"sweep_value", "broken", "eligible", "rate"}),
        ordered_(dir / "ordered_errors.csv", {"sweep_value", "broken", "eligible", "rate"}),
        savepoints_(dir / "savepoints.csv", {"sweep_value", "mean_gap", "std_gap"}),
        summary_(dir / "summary.csv", {"sweep_value", "final_loss"}) {}

  void write(const SweepPoint& p) {
    for (std::size_t k = 0; k < p.originality.lengths.size(); ++k) {
      originality_.row({p.label, std::to_string(p.originality.lengths[k]), format_double(p.originality.rates[k].mean),
                        format_double(p.originality.rates[k].std)});
    }
    if (p.transitions) {
      errors_.row({p.label, std::to_string(p.transitions->broken), std::to_string(p.transitions->eligible),
                   format_double(p.transitions->rate.mean)});
    }
    if (p.ordered) {
      ordered_.row({p.label, std::to_string(p.ordered->broken), std::to_string(p.ordered->eligible),
                    format_double(p.ordered->rate.mean)});
    }
    if (p.save_points || has_save_) {
      savepoints_.row({p.label, optional_number(p.save_points ? std::optional(p.save_points->mean) : std::nullopt),
                       optional_number(p.save_points ? std::optional(p.save_points->std) : std::nullopt)});
    }
    summary_.row({p.label, optional_number(p.final_loss)});
  }

  void set_has_save(bool v) { has_save_ = v; }

 private:
  CsvWriter originality_, errors_, ordered_, savepoints_, summary_;
  bool has_save_ = false;
};

void write_plots(const fs::path& dir, const SweepResult& result, const std::string& axis_name, bool numeric_axis) {
  std::vector<PlotSeries> curves;
  for (const SweepPoint& p : result.points) {
    PlotSeries s{axis_name + "=" + p.label, {}};
    for (std::size_t k = 0; k < p.originality.lengths.size(); ++k) {
      s.points.emplace_back(static_cast<double>(p.originality.lengths[k]), p.originality.rates[k].mean);
    }
    curves.push_back(std::move(s));
  }
  write_line_plot_svg(dir / "originality.svg", "Originality rate", "sequence length L", "originality", curves);
  if (!numeric_axis) return;
  PlotSeries transitions{"broken transitions", {}}, ordered{"ordered groups", {}};
  for (const SweepPoint& p : result.points) {
    const double x = std::stod(p.label);
    if (p.transitions) transitions.points.emplace_back(x, p.transitions->rate.mean);
    if (p.ordered) ordered.points.emplace_back(x, p.ordered->rate.mean);
  }
  std::vector<PlotSeries> err;
  if (!transitions.points.empty()) err.push_back(std::move(transitions));
  if (!ordered.points.empty()) err.push_back(std::move(ordered));
  if (!err.empty()) {
    write_line_plot_svg(dir / "errors.svg", "Error rate", axis_name, "rate", err, axis_name == "temperature");
  }
}

void log_point(const std::string& what, const SweepPoint& p) {
  std::cout << what << ' ' << p.label << ": " << p.variants.size() << " variants, "
            << "originality(L=" << (p.originality.lengths.empty() ? 0 : p.originality.lengths.front())
            << ")=" << (p.originality.rates.empty() ? 0.0 : p.originality.rates.front().mean);
  if (p.transitions) std::cout << ", broken-transition rate=" << p.transitions->rate.mean;
  if (p.ordered) std::cout << ", ordered-group error rate=" << p.ordered->rate.mean;
  std::cout << " (" << p.seconds << " s)\n";
}

}  // namespace

SweepPoint evaluate_variants(std::string label, std::vector<TokenSequence> variants, const Level& original,
                             const std::optional<ConstraintRules>& rules, const std::vector<std::size_t>& lengths) {
  SweepPoint point;
  point.label = std::move(label);
  std::vector<std::size_t> usable;
  std::size_t shortest = original.tokens.size();
  for (const auto& v : variants) shortest = std::min(shortest, v.size());
  for (std::size_t L : lengths) {
    if (L <= shortest) usable.push_back(L);
  }
  point.originality = originality_curve(variants, original.tokens, usable);
  if (rules) {
    if (!rules->must_follow.empty()) {
      std::vector<ErrorReport> reports;
      for (const auto& v : variants) reports.push_back(broken_transition_rate(v, *rules));
      point.transitions = aggregate(reports);
    }
    if (!rules->ordered_groups.empty()) {
      std::vector<ErrorReport> reports;
      for (const auto& v : variants) reports.push_back(ordered_group_error_rate(v, *rules));
      point.ordered = aggregate(reports);
    }
    if (rules->save_token) point.save_points = save_point_stats(variants, *rules->save_token);
  }
  point.variants = std::move(variants);
  return point;
}

TrainSummary cmd_train(const ExperimentConfig& config) {
  config.validate();
  const Inputs in = load_inputs(config);
  QrcTrainResult trained = train_qrc(in.level.tokens, in.reservoir, config.train, config.engine);
  save_model(config.model_path, trained.model, in.level.vocab.hash());
  ExperimentConfig echo = config;
  echo.reservoir = in.reservoir;
  write_config_echo(fs::path(config.model_path).concat(".config.json"), echo);
  TrainSummary summary;
  summary.final_loss = trained.loss_history.empty() ? std::nan("") : trained.loss_history.back();
  summary.loss_history = std::move(trained.loss_history);
  return summary;
}

std::vector<fs::path> cmd_generate(const ExperimentConfig& config) {
  config.validate();
  const Level level = load_level(config.level_path);
  StoredModel stored = load_model(config.model_path);
  if (stored.vocab_hash != level.vocab.hash()) {
    throw DataError(config.model_path.string() + ": model was trained on a different vocabulary than " +
                    config.level_path.string());
  }
  const std::size_t length = output_length(config, stored.model.training_length);
  const std::vector<TokenSequence> variants =
      generate_variants(stored.model, config, length, config.generation.temperature);

  fs::create_directories(config.output_dir);
  ExperimentConfig echo = config;
  echo.reservoir = stored.model.reservoir.config();
  write_config_echo(config.output_dir / "config.json", echo);
  std::vector<fs::path> files;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "variant_%03zu.lvl", i);
    files.push_back(config.output_dir / name);
    save_level(files.back(), level.vocab, variants[i]);
  }
  return files;
}

SweepResult cmd_sweep(const ExperimentConfig& config) {
  config.validate();
  const Inputs in = load_inputs(config);
  const auto lengths = config.originality_lengths();

  fs::create_directories(config.output_dir);
  ExperimentConfig echo = config;
  echo.reservoir = in.reservoir;
  write_config_echo(config.output_dir / "config.json", echo);
  ResultWriter writer(config.output_dir);
  writer.set_has_save(in.rules && in.rules->save_token);

  SweepResult result;
  auto train_with = [&](const ReservoirConfig& rc) {
    return train_qrc(in.level.tokens, rc, config.train, config.engine);
  };

  std::optional<QrcTrainResult> shared;
  if (config.axis == SweepAxis::Temperature) {
    const auto start = Clock::now();
    shared = train_with(in.reservoir);
    std::cout << "trained once for the temperature sweep, final loss " << shared->loss_history.back() << " ("
              << seconds_since(start) << " s)\n";
  }

  for (double value : config.sweep_values) {
    const auto start = Clock::now();
    std::optional<QrcTrainResult> local;
    double temperature = config.generation.temperature;
    switch (config.axis) {
      case SweepAxis::Temperature:
        temperature = value;
        break;
      case SweepAxis::Qubits: {
        ReservoirConfig rc = in.reservoir;
        rc.num_qubits = static_cast<int>(value);
        local = train_with(rc);
        break;
      }
      case SweepAxis::Depol: {
        ReservoirConfig rc = in.reservoir;
        rc.mode = FidelityMode::Noisy;
        rc.noise = NoiseSpec::depolarizing(value);
        local = train_with(rc);
        break;
      }
    }
    const QrcTrainResult& trained = local ? *local : *shared;
    const std::size_t length = output_length(config, in.level.tokens.size());
    SweepPoint point = evaluate_variants(format_double(value), generate_variants(trained.model, config, length, temperature),
                                         in.level, in.rules, lengths);
    point.final_loss = trained.loss_history.empty() ? std::nullopt : std::optional(trained.loss_history.back());
    point.seconds = seconds_since(start);
    writer.write(point);
    log_point(to_string(config.axis), point);
    result.points.push_back(std::move(point));
  }
  if (config.plots) write_plots(config.output_dir, result, to_string(config.axis), true);
  return result;
}

SweepResult cmd_baseline(const ExperimentConfig& config, const std::vector<Baseline>& which) {
  config.validate();
  const Inputs in = load_inputs(config);
  const auto lengths = config.originality_lengths();
  const int f = in.level.vocab.size();
  const std::size_t length = output_length(config, in.level.tokens.size());

  fs::create_directories(config.output_dir);
  write_config_echo(config.output_dir / "config.json", config);
  ResultWriter writer(config.output_dir);
  writer.set_has_save(in.rules && in.rules->save_token);

  SweepResult result;
  for (Baseline b : which) {
    const auto start = Clock::now();
    std::vector<TokenSequence> variants(config.variants);
    if (b == Baseline::Unigram) {
      const UnigramModel model = fit_unigram(in.level.tokens, f);
      parallel_for(config.variants, config.workers, [&](std::size_t i) {
        variants[i] = generate_unigram(model, length, mix_seed(config.master_seed, i));
      });
    } else {
      const MarkovModel model = fit_markov(in.level.tokens, f);
      const int x0 = config.generation.x0.value_or(in.level.tokens.front());
      parallel_for(config.variants, config.workers, [&](std::size_t i) {
        variants[i] = generate_markov(model, length, mix_seed(config.master_seed, i), x0);
      });
    }
    SweepPoint point = evaluate_variants(to_string(b), std::move(variants), in.level, in.rules, lengths);
    point.seconds = seconds_since(start);
    writer.write(point);
    log_point("baseline", point);
    result.points.push_back(std::move(point));
  }
  if (config.plots) write_plots(config.output_dir, result, "baseline", false);
  return result;
}

SweepResult cmd_evaluate(const ExperimentConfig& config, const std::vector<fs::path>& files) {
  if (files.empty()) throw std::invalid_argument("evaluate: no level files given");
  const Level original = load_level(config.level_path);
  std::optional<ConstraintRules> rules;
  if (!config.rules_path.empty()) rules = load_rules(config.rules_path, original.vocab);
  std::vector<TokenSequence> variants;
  for (const fs::path& file : files) {
    Level l = load_level(file);
    if (!(l.vocab == original.vocab)) {
      throw DataError(file.string() + ": vocabulary differs from " + config.level_path.string());
    }
    variants.push_back(std::move(l.tokens));
  }
  fs::create_directories(config.output_dir);
  write_config_echo(config.output_dir / "config.json", config);
  ResultWriter writer(config.output_dir);
  writer.set_has_save(rules && rules->save_token);
  SweepResult result;
  result.points.push_back(
      evaluate_variants("evaluate", std::move(variants), original, rules, config.originality_lengths()));
  writer.write(result.points.back());
  log_point("evaluate", result.points.back());
  return result;
}

// ----------------------------------------------------------------- front end

namespace {

struct RawOptions {
  std::string level, rules, calibration, model = "model.qrc", out = "out";
  int qubits = 6;
  std::uint64_t block_seed = ReservoirConfig{}.random_block_seed;
  int block_len = 0;
  std::size_t shots = 4000;
  std::string mode = "shots";
  std::optional<double> depol;
  double epsilon = 0.3;
  std::string h0 = "uniform";
  double lr = 1e-2;
  int epochs = 2000;
  std::string optimizer = "adam";
  double init_scale = 0.1;
  bool no_bias = false;
  std::optional<std::uint64_t> train_seed;
  std::size_t length = 0;
  double temperature = 1.0;
  std::optional<int> x0;
  bool carry_memory = false;
  std::string axis = "temperature";
  std::vector<double> values;
  std::size_t variants = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::vector<std::size_t> lengths;
  bool plots = false;
  std::vector<std::string> which;
  std::vector<std::string> files;
};

void add_data_options(CLI::App* cmd, RawOptions& o, bool rules) {
  cmd->add_option("--level", o.level, "Training level file")->required();
  if (rules) cmd->add_option("--rules", o.rules, "Gameplay rules file");
}

void add_model_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("-q,--qubits", o.qubits, "Reservoir qubit count")->capture_default_str();
  cmd->add_option("--block-seed", o.block_seed, "Seed of the random gate block")->capture_default_str();
  cmd->add_option("--block-len", o.block_len, "Random block length (0: 3 x qubits)")->capture_default_str();
  cmd->add_option("--shots", o.shots, "Measurement shots per step (0: exact)")->capture_default_str();
  cmd->add_option("--mode", o.mode, "Fidelity mode: ideal, shots or noisy")->capture_default_str();
  cmd->add_option("--depol", o.depol, "Depolarizing rate p (p on CNOT, p/10 on 1-qubit gates); implies noisy mode");
  cmd->add_option("--calibration", o.calibration, "Calibration profile (JSON); implies noisy mode");
  cmd->add_option("--epsilon", o.epsilon, "Leaking rate")->capture_default_str();
  cmd->add_option("--h0", o.h0, "Initial memory: uniform or zeros-outcome")->capture_default_str();
  cmd->add_option("--lr", o.lr, "Learning rate")->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "Full-batch training epochs")->capture_default_str();
  cmd->add_option("--optimizer", o.optimizer, "sgd or adam")->capture_default_str();
  cmd->add_option("--init-scale", o.init_scale, "Uniform weight init half-width")->capture_default_str();
  cmd->add_flag("--no-bias", o.no_bias, "Drop the readout bias");
  cmd->add_option("--train-seed", o.train_seed, "Training seed (default: --seed)");
}

void add_generation_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--length", o.length, "Generated length (0: match the training level)")->capture_default_str();
  cmd->add_option("-T,--temperature", o.temperature, "Sampling temperature")->capture_default_str();
  cmd->add_option("--x0", o.x0, "Seed token id (default: first training token)");
  cmd->add_flag("--carry-memory", o.carry_memory, "Start generation from the memory left by training");
}

void add_run_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--variants", o.variants, "Variants per setting")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads (0: all cores)")->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

void add_metric_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--lengths", o.lengths, "Originality window lengths (default 2..20)");
  cmd->add_flag("--plots", o.plots, "Also write SVG line plots");
}

ExperimentConfig resolve(const RawOptions& o) {
  ExperimentConfig c;
  c.level_path = o.level;
  c.rules_path = o.rules;
  c.calibration_path = o.calibration;
  c.model_path = o.model;
  c.output_dir = o.out;
  c.reservoir.num_qubits = o.qubits;
  c.reservoir.random_block_seed = o.block_seed;
  c.reservoir.random_block_len = o.block_len;
  c.reservoir.shots = o.shots;
  c.reservoir.mode = parse_fidelity_mode(o.mode);
  if (o.mode == "shots" && o.shots == 0) c.reservoir.mode = FidelityMode::Ideal;
  if (o.depol) {
    c.reservoir.mode = FidelityMode::Noisy;
    c.reservoir.noise = NoiseSpec::depolarizing(*o.depol);
  }
  c.engine.epsilon = o.epsilon;
  c.engine.h0 = parse_memory_init(o.h0);
  c.train.learning_rate = o.lr;
  c.train.epochs = o.epochs;
  c.train.optimizer = parse_optimizer(o.optimizer);
  c.train.init_scale = o.init_scale;
  c.train.use_bias = !o.no_bias;
  c.train.seed = o.train_seed.value_or(o.seed);
  c.generation.length = o.length;
  c.generation.temperature = o.temperature;
  c.generation.x0 = o.x0;
  c.generation.carry_memory = o.carry_memory;
  c.axis = parse_sweep_axis(o.axis);
  if (!o.values.empty()) c.sweep_values = o.values;
  c.variants = o.variants;
  c.master_seed = o.seed;
  c.workers = o.workers;
  c.lengths = o.lengths;
  c.plots = o.plots;
  return c;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Quantum reservoir computing level generator"};
  app.set_config("--config", "", "TOML or INI configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  RawOptions o;

  auto* train = app.add_subcommand("train", "Train a model on a level and write the model file");
  add_data_options(train, o, false);
  add_model_options(train, o);
  train->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  train->add_option("--model", o.model, "Model file to write")->capture_default_str();

  auto* gen = app.add_subcommand("generate", "Generate level variants from a trained model");
  add_data_options(gen, o, false);
  gen->add_option("--model", o.model, "Model file")->required();
  add_generation_options(gen, o);
  add_run_options(gen, o);

  auto* sweep = app.add_subcommand("sweep", "Train, generate and evaluate across a sweep axis");
  add_data_options(sweep, o, true);
  add_model_options(sweep, o);
  add_generation_options(sweep, o);
  add_run_options(sweep, o);
  add_metric_options(sweep, o);
  sweep->add_option("--axis", o.axis, "temperature, qubits or depol")->capture_default_str();
  sweep->add_option("--values", o.values, "Sweep values")->required();

  auto* base = app.add_subcommand("baseline", "Evaluate the unigram and/or Markov baselines");
  add_data_options(base, o, true);
  add_generation_options(base, o);
  add_run_options(base, o);
  add_metric_options(base, o);
  base->add_option("--which", o.which, "unigram, markov (default: both)");

  auto* eval = app.add_subcommand("evaluate", "Score existing level files against the original level");
  add_data_options(eval, o, true);
  eval->add_option("--out", o.out, "Output directory")->capture_default_str();
  add_metric_options(eval, o);
  eval->add_option("files", o.files, "Level files to score")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig config = resolve(o);
    if (*train) {
      const TrainSummary s = cmd_train(config);
      std::cout << "final loss " << format_double(s.final_loss) << "\nwrote " << config.model_path.string() << '\n';
    } else if (*gen) {
      const auto files = cmd_generate(config);
      std::cout << "wrote " << files.size() << " level files to " << config.output_dir.string() << '\n';
    } else if (*sweep) {
      cmd_sweep(config);
    } else if (*base) {
      std::vector<Baseline> which;
      for (const std::string& w : o.which) {
        if (w == "unigram") which.push_back(Baseline::Unigram);
        else if (w == "markov") which.push_back(Baseline::Markov);
        else throw std::invalid_argument("unknown baseline '" + w + "'");
      }
      if (which.empty()) which = {Baseline::Unigram, Baseline::Markov};
      cmd_baseline(config, which);
    } else if (*eval) {
      std::vector<fs::path> files(o.files.begin(), o.files.end());
      cmd_evaluate(config, files);
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace qrc::cli
