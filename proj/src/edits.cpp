#include "classlift/edits.hpp"

#include <algorithm>

namespace classlift {

const char* phaseName(int phase) {
  switch (phase) {
    case kPhaseFixFactory: return "fix-factory";
    case kPhaseFixAlias: return "fix-alias";
    case kPhaseFixHoisting: return "fix-hoisting";
    case kPhaseRule1: return "rule1";
    case kPhaseRule2: return "rule2";
    case kPhaseRule3: return "rule3";
    case kPhaseFixThisBeforeSuper: return "fix-this-before-super";
    default: return "unknown";
  }
}

bool applySplices(std::string* text, std::vector<Splice> batch,
                  std::vector<Splice>* trace) {
  std::stable_sort(batch.begin(), batch.end(),
                   [](const Splice& a, const Splice& b) { return a.offset < b.offset; });
  for (std::size_t i = 0; i + 1 < batch.size(); ++i) {
    if (batch[i].offset + batch[i].before.size() > batch[i + 1].offset) return false;
  }
  for (const Splice& s : batch) {
    if (s.offset + s.before.size() > text->size()) return false;
    if (text->compare(s.offset, s.before.size(), s.before) != 0) return false;
  }

  std::string out;
  out.reserve(text->size());
  std::size_t pos = 0;
  std::ptrdiff_t delta = 0;
  for (Splice& s : batch) {
    out.append(*text, pos, s.offset - pos);
    out += s.after;
    pos = s.offset + s.before.size();
    if (trace) {
      Splice rec = s;
      rec.offset = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(s.offset) + delta);
      trace->push_back(std::move(rec));
    }
    delta += static_cast<std::ptrdiff_t>(s.after.size()) -
             static_cast<std::ptrdiff_t>(s.before.size());
  }
  out.append(*text, pos, text->size() - pos);
  *text = std::move(out);
  return true;
}

std::optional<std::string> replaySplices(const std::string& original,
                                         const std::vector<Splice>& trace) {
  std::string text = original;
  for (const Splice& s : trace) {
    if (s.offset + s.before.size() > text.size()) return std::nullopt;
    if (text.compare(s.offset, s.before.size(), s.before) != 0) return std::nullopt;
    text.replace(s.offset, s.before.size(), s.after);
  }
  return text;
}

}  // namespace classlift
