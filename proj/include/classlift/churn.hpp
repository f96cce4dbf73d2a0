#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace classlift {

// Per-file line classification from a shortest-edit-script diff. A replaced
// line counts once as changed and once as deleted, so rewrite-heavy
// migrations keep churned and deleted close to each other.
struct LineDiff {
  std::size_t added = 0;
  std::size_t changed = 0;
  std::size_t deleted = 0;
};

struct ChurnMetrics {
  std::size_t churned_loc = 0;  // added + changed
  std::size_t deleted_loc = 0;
  std::size_t files_churned = 0;
  std::size_t total_loc = 0;  // line count of the migrated tree
  double rel_churned = 0.0;
  double rel_deleted = 0.0;
  double rel_files = 0.0;
  std::optional<double> churn_over_delete;  // empty when deleted_loc == 0
};

// One file of a tree, addressed by its tree-relative path.
struct TreeFile {
  std::string path;
  std::string text;
};

struct ChurnResult {
  ChurnMetrics metrics;
  std::vector<std::string> missing;  // paths present in only one tree
  bool ok = true;
};

// Splits at '\n'; a trailing newline does not open an extra empty line.
std::vector<std::string> splitLines(const std::string& text);

LineDiff diffLines(const std::vector<std::string>& before,
                   const std::vector<std::string>& after);

// Pairs files by path and aggregates diffs. Any path found in only one tree
// is reported in `missing` and the result is marked not ok.
ChurnResult computeChurn(const std::vector<TreeFile>& original,
                         const std::vector<TreeFile>& migrated);

}  // namespace classlift
