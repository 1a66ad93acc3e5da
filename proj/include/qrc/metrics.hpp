#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "qrc/levelio.hpp"
#include "qrc/tokens.hpp"

namespace qrc {

/// Mean and population standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(std::span<const double> values);

/// Set of the length-L windows of a reference sequence.
class NgramIndex {
 public:
  NgramIndex(std::span<const int> reference, std::size_t length);

  std::size_t length() const { return length_; }
  /// Window positions in the reference: len(reference) - L + 1.
  std::size_t positions() const { return positions_; }
  bool contains(std::span<const int> window) const;

 private:
  std::size_t length_;
  std::size_t positions_;
  std::set<std::vector<int>> grams_;
};

/// Windows of `generated` absent from `original`, counted with multiplicity,
/// divided by the number of windows in `original`.
double originality_rate(std::span<const int> generated, std::span<const int> original, std::size_t length);
double originality_rate(std::span<const int> generated, const NgramIndex& original);

MeanStd mean_originality(std::span<const TokenSequence> variants, std::span<const int> original, std::size_t length);

struct OriginalityCurve {
  std::vector<std::size_t> lengths;
  std::vector<MeanStd> rates;
};

OriginalityCurve originality_curve(std::span<const TokenSequence> variants, std::span<const int> original,
                                   std::span<const std::size_t> lengths);

struct ErrorReport {
  std::size_t broken = 0;
  std::size_t eligible = 0;
  double rate = 0.0;  // broken / eligible, 0 when nothing is eligible
};

/// Adjacent pairs touching a breakable token are eligible. A pair (a, b) is
/// broken when a has follow rules and b is none of its required successors,
/// or b has follow rules and a is none of its required predecessors.
ErrorReport broken_transition_rate(std::span<const int> seq, const ConstraintRules& rules);

/// Per ordered group (first, second, third): scanning left to right, a window
/// opens at any group token, collects later group tokens and closes right after
/// a `third` token (or at the end of the sequence). A window passes when its
/// group tokens never step backwards in group order and include all three.
/// Requires at least one ordered group.
ErrorReport ordered_group_error_rate(std::span<const int> seq, const ConstraintRules& rules);

/// Gaps between consecutive save tokens; nullopt with fewer than two saves.
std::optional<MeanStd> save_point_stats(std::span<const int> seq, int save_token);
/// Gaps pooled across variants; nullopt when no variant has two saves.
std::optional<MeanStd> save_point_stats(std::span<const TokenSequence> variants, int save_token);

}  // namespace qrc
