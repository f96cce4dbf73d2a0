#include "classlift/churn.hpp"

#include <algorithm>
#include <map>
#include <string_view>
#include <unordered_map>

namespace classlift {

std::vector<std::string> splitLines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

namespace {

// Myers' greedy shortest-edit search over interned lines. Returns one op per
// step in forward order: 'k' keep, 'd' delete from `a`, 'a' add from `b`.
std::vector<char> editScript(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  const int max = n + m;
  if (max == 0) return {};

  const int off = max + 1;
  std::vector<int> v(2 * max + 3, 0);
  std::vector<std::vector<int>> trace;

  int found_d = -1;
  for (int d = 0; d <= max && found_d < 0; ++d) {
    trace.push_back(v);
    for (int k = -d; k <= d; k += 2) {
      int x;
      if (k == -d || (k != d && v[off + k - 1] < v[off + k + 1])) {
        x = v[off + k + 1];
      } else {
        x = v[off + k - 1] + 1;
      }
      int y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      v[off + k] = x;
      if (x >= n && y >= m) {
        found_d = d;
        break;
      }
    }
  }

  std::vector<char> rev;
  int x = n, y = m;
  for (int d = found_d; d > 0; --d) {
    const std::vector<int>& pv = trace[d];
    const int k = x - y;
    int prev_k;
    if (k == -d || (k != d && pv[off + k - 1] < pv[off + k + 1])) {
      prev_k = k + 1;
    } else {
      prev_k = k - 1;
    }
    const int prev_x = pv[off + prev_k];
    const int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      rev.push_back('k');
      --x;
      --y;
    }
    if (x == prev_x) {
      rev.push_back('a');
      --y;
    } else {
      rev.push_back('d');
      --x;
    }
  }
  while (x > 0 && y > 0) {
    rev.push_back('k');
    --x;
    --y;
  }

  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

LineDiff diffLines(const std::vector<std::string>& before,
                   const std::vector<std::string>& after) {
  std::unordered_map<std::string_view, int> ids;
  auto intern = [&ids](const std::vector<std::string>& lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const std::string& line : lines) {
      out.push_back(
          ids.emplace(line, static_cast<int>(ids.size())).first->second);
    }
    return out;
  };
  std::vector<int> a = intern(before);
  std::vector<int> b = intern(after);

  // Shared prefix and suffix are keeps; trimming them keeps the search small.
  std::size_t lo = 0;
  while (lo < a.size() && lo < b.size() && a[lo] == b[lo]) ++lo;
  std::size_t hi = 0;
  while (lo + hi < a.size() && lo + hi < b.size() &&
         a[a.size() - 1 - hi] == b[b.size() - 1 - hi]) {
    ++hi;
  }
  std::vector<int> core_a(a.begin() + lo, a.end() - hi);
  std::vector<int> core_b(b.begin() + lo, b.end() - hi);

  std::vector<char> ops = editScript(core_a, core_b);

  // Adjacent delete/insert runs pair up positionally as changed lines;
  // leftover inserts are added, and every removed line counts as deleted.
  LineDiff out;
  std::size_t i = 0;
  while (i < ops.size()) {
    if (ops[i] == 'k') {
      ++i;
      continue;
    }
    std::size_t dels = 0, ins = 0;
    while (i < ops.size() && ops[i] != 'k') {
      (ops[i] == 'd' ? dels : ins)++;
      ++i;
    }
    out.changed += std::min(dels, ins);
    out.added += ins > dels ? ins - dels : 0;
    out.deleted += dels;
  }
  return out;
}

ChurnResult computeChurn(const std::vector<TreeFile>& original,
                         const std::vector<TreeFile>& migrated) {
  ChurnResult res;
  std::map<std::string, const std::string*> before, after;
  for (const TreeFile& f : original) before[f.path] = &f.text;
  for (const TreeFile& f : migrated) after[f.path] = &f.text;

  for (const auto& [path, text] : before) {
    if (!after.count(path)) res.missing.push_back(path);
  }
  for (const auto& [path, text] : after) {
    if (!before.count(path)) res.missing.push_back(path);
  }
  std::sort(res.missing.begin(), res.missing.end());
  res.ok = res.missing.empty();

  std::size_t file_count = 0;
  for (const auto& [path, text] : after) {
    auto it = before.find(path);
    if (it == before.end()) continue;
    ++file_count;
    std::vector<std::string> old_lines = splitLines(*it->second);
    std::vector<std::string> new_lines = splitLines(*text);
    LineDiff ld = diffLines(old_lines, new_lines);
    res.metrics.churned_loc += ld.added + ld.changed;
    res.metrics.deleted_loc += ld.deleted;
    res.metrics.total_loc += new_lines.size();
    if (ld.added + ld.changed + ld.deleted > 0) ++res.metrics.files_churned;
  }

  if (res.metrics.total_loc > 0) {
    res.metrics.rel_churned = static_cast<double>(res.metrics.churned_loc) /
                              static_cast<double>(res.metrics.total_loc);
    res.metrics.rel_deleted = static_cast<double>(res.metrics.deleted_loc) /
                              static_cast<double>(res.metrics.total_loc);
  }
  if (file_count > 0) {
    res.metrics.rel_files = static_cast<double>(res.metrics.files_churned) /
                            static_cast<double>(file_count);
  }
  if (res.metrics.deleted_loc > 0) {
    res.metrics.churn_over_delete =
        static_cast<double>(res.metrics.churned_loc) /
        static_cast<double>(res.metrics.deleted_loc);
  }
  return res;
}

}  // namespace classlift
