#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "classlift/detector.hpp"
#include "classlift/edits.hpp"

namespace classlift {

enum class CaseKind {
  ThisBeforeSuper,
  FactoryConstructor,
  Hoisting,
  MethodAlias,
  DynamicAccessor,
  StaticProperty,
  OptionalFeature,
};

enum class CaseSeverity { Bad, Ugly };

// Applied: rewritten automatically. Manual: left alone, class not migrated.
// Preserved: left alone byte-for-byte on purpose.
enum class CaseRemediation { Applied, Manual, Preserved };

const char* kindName(CaseKind k);
const char* severityName(CaseSeverity s);
const char* remediationName(CaseRemediation r);

struct Diagnostic {
  CaseKind kind = CaseKind::OptionalFeature;
  CaseSeverity severity = CaseSeverity::Ugly;
  CaseRemediation remediation = CaseRemediation::Preserved;
  std::string class_name;  // empty when not attributable
  std::string detail;
  int module = -1;
  std::size_t offset = 0;  // byte offset in the text the scan ran against
  // 1-based position, resolved against the same text the offset refers to.
  std::size_t line = 0;
  std::size_t col = 0;
};

// Classes that must stay untouched, keyed by (module, name at scan time).
using BlockedSet = std::set<std::pair<int, std::string>>;

// A deferred-callback constructor argument that can become a setter call:
// super(fn) -> super(); this.<setter>((fn).bind(this)); plus a synthesized
// setter on the superclass.
struct SetterLiftPlan {
  int module = -1;
  std::string class_name;
  std::string super_name;
  std::string prop;    // property the superclass assigns the parameter to
  std::string setter;  // synthesized setter name
  std::string param;   // superclass constructor parameter name
  std::size_t diag_index = 0;  // downgraded to Manual when never executed
};

struct Analysis {
  std::vector<Diagnostic> diagnostics;
  BlockedSet blocked;
  std::vector<SetterLiftPlan> setter_lifts;
};

// Pre-rewrite scans: decide which classes cannot migrate, record the ugly
// patterns that must survive byte-for-byte, and classify this-before-super
// constructors as fixable or manual.
Analysis analyzeProject(const Project& project,
                        const std::vector<ClassModel>& classes);

// Output of one remediation planner, computed against the current parse.
struct FixPlan {
  std::vector<std::vector<Splice>> splices;  // indexed by module
  std::vector<Diagnostic> diagnostics;
  BlockedSet newly_blocked;
  // (module, old name) -> new name for renamed constructors.
  std::map<std::pair<int, std::string>, std::string> renames;
};

// Constructors guarding `this instanceof` with their own name: rename the
// function, strip the guard, emit a plain wrapper that keeps both call styles.
FixPlan planFactoryFixes(const Project& project,
                         const std::vector<ClassModel>& classes,
                         const BlockedSet& blocked);

// Alias chains (`C.prototype.a = C.prototype.b = fn`): bind the body to the
// last name, turn the others into delegating methods.
FixPlan planAliasFixes(const Project& project,
                       const std::vector<ClassModel>& classes,
                       const BlockedSet& blocked);

// References before the declaration: reorder the constructor (and its
// superclasses) above the first use, or split `var x = new C()` into a null
// initialization and a later assignment.
FixPlan planHoistingFixes(const Project& project,
                          const std::vector<ClassModel>& classes,
                          const BlockedSet& blocked);

}  // namespace classlift
