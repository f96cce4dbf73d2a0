#pragma once

#include <optional>
#include <string>
#include <vector>

namespace classlift {

// Pipeline stage ranks; traces must be non-decreasing in this order.
enum Phase : int {
  kPhaseFixFactory = 1,
  kPhaseFixAlias = 2,
  kPhaseFixHoisting = 3,
  kPhaseRule1 = 4,
  kPhaseRule2 = 5,
  kPhaseRule3 = 6,
  kPhaseFixThisBeforeSuper = 7,
};

const char* phaseName(int phase);

// One textual replacement. Within a batch, `offset` and `before` refer to the
// text the batch is applied to. Once applied, the recorded offset is
// re-expressed against the text as it stood when this splice ran (earlier
// splices in the same batch included), so replaying a trace sequentially over
// the original bytes reproduces the final bytes.
struct Splice {
  std::size_t offset = 0;
  std::string before;
  std::string after;
  int phase = 0;
  std::string class_name;
};

// Applies one batch to `text`. Ranges must be disjoint; ties at the same
// offset (pure insertions) keep batch order. Appends the adjusted splices to
// `trace` in application order. Returns false and leaves `text` untouched
// when a range overlaps or a `before` does not match.
bool applySplices(std::string* text, std::vector<Splice> batch,
                  std::vector<Splice>* trace);

// Replays recorded splices in order; nullopt when a `before` mismatches.
std::optional<std::string> replaySplices(const std::string& original,
                                         const std::vector<Splice>& trace);

}  // namespace classlift
