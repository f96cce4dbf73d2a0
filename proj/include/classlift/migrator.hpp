#pragma once

#include <string>
#include <vector>

#include "classlift/analyzer.hpp"
#include "classlift/detector.hpp"
#include "classlift/edits.hpp"

namespace classlift {

struct FileInput {
  std::string path;
  std::string text;
};

struct MigrateOptions {
  // Map `C.m = function` onto a plain instance method instead of `static m`.
  bool rule1_literal = false;
};

enum class ClassLabel { Good, BadFixed, BadManual, UglyPreserved };
const char* labelName(ClassLabel label);

// One row per detected class, under its original (pre-fix) name.
struct ClassReport {
  std::string name;
  std::string file;
  bool migrated = false;
  ClassLabel label = ClassLabel::Good;
};

struct FileOutcome {
  std::string path;
  std::string original;
  std::string output;        // == original when nothing applied or parse failed
  bool parse_failed = false;
  std::string error;
  std::vector<Splice> trace;  // replayable: original + trace => output
};

struct MigrateResult {
  std::vector<FileOutcome> files;
  std::vector<Diagnostic> diagnostics;  // sorted by (file, offset)
  std::vector<ClassReport> classes;
  bool ok = true;  // false when any file failed to parse
};

// Full pipeline: parse, detect, analyze, apply the automatic bad-case fixes,
// then the three migration rules, each stage against a fresh parse.
MigrateResult migrate(const std::vector<FileInput>& inputs,
                      const MigrateOptions& opts = {});

}  // namespace classlift
