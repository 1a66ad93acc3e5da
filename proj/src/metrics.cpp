#include "qrc/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qrc {

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

NgramIndex::NgramIndex(std::span<const int> reference, std::size_t length) : length_(length) {
  if (length < 1) throw std::invalid_argument("n-gram length must be >= 1");
  if (reference.size() < length) {
    throw std::invalid_argument("n-gram length " + std::to_string(length) + " exceeds sequence length " +
                                std::to_string(reference.size()));
  }
  positions_ = reference.size() - length + 1;
  for (std::size_t i = 0; i < positions_; ++i) grams_.emplace(reference.begin() + i, reference.begin() + i + length);
}

bool NgramIndex::contains(std::span<const int> window) const {
  return grams_.count(std::vector<int>(window.begin(), window.end())) != 0;
}

double originality_rate(std::span<const int> generated, const NgramIndex& original) {
  const std::size_t L = original.length();
  if (generated.size() < L) {
    throw std::invalid_argument("n-gram length " + std::to_string(L) + " exceeds generated length " +
                                std::to_string(generated.size()));
  }
  std::size_t novel = 0;
  for (std::size_t i = 0; i + L <= generated.size(); ++i) {
    if (!original.contains(generated.subspan(i, L))) ++novel;
  }
  return static_cast<double>(novel) / static_cast<double>(original.positions());
}

double originality_rate(std::span<const int> generated, std::span<const int> original, std::size_t length) {
  return originality_rate(generated, NgramIndex(original, length));
}

MeanStd mean_originality(std::span<const TokenSequence> variants, std::span<const int> original, std::size_t length) {
  if (variants.empty()) throw std::invalid_argument("mean_originality: no variants");
  const NgramIndex index(original, length);
  std::vector<double> rates;
  rates.reserve(variants.size());
  for (const TokenSequence& v : variants) rates.push_back(originality_rate(v, index));
  return mean_std(rates);
}

OriginalityCurve originality_curve(std::span<const TokenSequence> variants, std::span<const int> original,
                                   std::span<const std::size_t> lengths) {
  OriginalityCurve curve;
  for (std::size_t L : lengths) {
    curve.lengths.push_back(L);
    curve.rates.push_back(mean_originality(variants, original, L));
  }
  return curve;
}

ErrorReport broken_transition_rate(std::span<const int> seq, const ConstraintRules& rules) {
  std::map<int, std::set<int>> successors, predecessors;
  for (const auto& [a, b] : rules.must_follow) {
    successors[a].insert(b);
    predecessors[b].insert(a);
  }
  ErrorReport report;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const int a = seq[i], b = seq[i + 1];
    if (!rules.is_breakable(a) && !rules.is_breakable(b)) continue;
    ++report.eligible;
    const auto s = successors.find(a);
    const auto p = predecessors.find(b);
    const bool bad_successor = s != successors.end() && s->second.count(b) == 0;
    const bool bad_predecessor = p != predecessors.end() && p->second.count(a) == 0;
    if (bad_successor || bad_predecessor) ++report.broken;
  }
  if (report.eligible > 0) report.rate = static_cast<double>(report.broken) / static_cast<double>(report.eligible);
  return report;
}

ErrorReport ordered_group_error_rate(std::span<const int> seq, const ConstraintRules& rules) {
  if (rules.ordered_groups.empty()) throw std::invalid_argument("ordered_group_error_rate: no ordered groups");
  ErrorReport report;
  for (const auto& group : rules.ordered_groups) {
    auto rank = [&group](int token) {
      for (int r = 0; r < 3; ++r) {
        if (group[static_cast<std::size_t>(r)] == token) return r;
      }
      return -1;
    };
    bool open = false;
    bool in_order = true;
    int last_rank = -1;
    std::array<bool, 3> seen{};
    auto close = [&] {
      ++report.eligible;
      if (!(in_order && seen[0] && seen[1] && seen[2])) ++report.broken;
      open = false;
    };
    for (int token : seq) {
      const int r = rank(token);
      if (r < 0) continue;
      if (!open) {
        open = true;
        in_order = true;
        last_rank = -1;
        seen = {};
      }
      if (r < last_rank) in_order = false;
      last_rank = r;
      seen[static_cast<std::size_t>(r)] = true;
      if (r == 2) close();
    }
    if (open) close();
  }
  if (report.eligible > 0) report.rate = static_cast<double>(report.broken) / static_cast<double>(report.eligible);
  return report;
}

namespace {

void collect_gaps(std::span<const int> seq, int save_token, std::vector<double>& gaps) {
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] != save_token) continue;
    if (last) gaps.push_back(static_cast<double>(i - *last));
    last = i;
  }
}

}  // namespace

std::optional<MeanStd> save_point_stats(std::span<const int> seq, int save_token) {
  std::vector<double> gaps;
  collect_gaps(seq, save_token, gaps);
  if (gaps.empty()) return std::nullopt;
  return mean_std(gaps);
}

std::optional<MeanStd> save_point_stats(std::span<const TokenSequence> variants, int save_token) {
  std::vector<double> gaps;
  for (const TokenSequence& v : variants) collect_gaps(v, save_token, gaps);
  if (gaps.empty()) return std::nullopt;
  return mean_std(gaps);
}

}  // namespace qrc
