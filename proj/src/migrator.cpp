#include "classlift/migrator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "classlift/parser.hpp"
#include "classlift/text.hpp"

namespace classlift {

const char* labelName(ClassLabel label) {
  switch (label) {
    case ClassLabel::Good: return "Good";
    case ClassLabel::BadFixed: return "Bad-fixed";
    case ClassLabel::BadManual: return "Bad-manual";
    case ClassLabel::UglyPreserved: return "Ugly-preserved";
  }
  return "?";
}

namespace {

struct Pipeline {
  MigrateOptions opts;
  std::vector<std::string> texts;
  std::vector<bool> usable;
  Project project;
  std::vector<ClassModel> classes;
  std::vector<std::vector<Splice>> traces;
  std::vector<Diagnostic> diags;
  BlockedSet blocked;
  std::map<std::pair<int, std::string>, std::string> renames;
  std::set<std::pair<int, std::string>> migrated;
  std::vector<SetterLiftPlan> setter_lifts;
};

void reparse(Pipeline* pl) {
  for (std::size_t i = 0; i < pl->texts.size(); ++i) {
    if (!pl->usable[i]) continue;
    auto r = parse(pl->project.modules[i].path, pl->texts[i]);
    assert(std::holds_alternative<SourceModule>(r));
    pl->project.modules[i] = std::get<SourceModule>(std::move(r));
  }
  pl->classes = detect(pl->project);
  // Factory wrappers reuse the public name; they are not classes.
  std::erase_if(pl->classes, [&](const ClassModel& c) {
    return pl->renames.count({c.ctor_loc.module, c.name}) > 0;
  });
}

// Diagnostics carry offsets into whichever text revision their stage saw, so
// positions must be resolved before that revision is spliced away.
void stampPositions(std::vector<Diagnostic>* diags,
                    const std::vector<std::string>& texts) {
  for (Diagnostic& d : *diags) {
    if (d.line != 0 || d.module < 0) continue;
    LineIndex idx(texts[d.module]);
    auto pos = idx.locate(d.offset);
    d.line = pos.line;
    d.col = pos.col;
  }
}

void applyStage(Pipeline* pl, FixPlan&& plan) {
  stampPositions(&plan.diagnostics, pl->texts);
  bool changed = false;
  for (std::size_t i = 0; i < plan.splices.size(); ++i) {
    if (plan.splices[i].empty()) continue;
    bool ok = applySplices(&pl->texts[i], std::move(plan.splices[i]), &pl->traces[i]);
    assert(ok);
    (void)ok;
    changed = true;
  }
  for (auto& d : plan.diagnostics) pl->diags.push_back(std::move(d));
  for (const auto& k : plan.newly_blocked) pl->blocked.insert(k);
  for (const auto& [k, v] : plan.renames) pl->renames[k] = v;
  if (changed) reparse(pl);
}

// ---- Rule 1: constructor function + methods -> class body ----

// Indentation-aware re-emission of a statement's comment block above a
// class member.
std::string reindentCommentBlock(const std::string& block, std::string_view indent) {
  std::string out;
  std::size_t pos = 0;
  while (pos < block.size()) {
    std::size_t eol = block.find('\n', pos);
    std::size_t end = eol == std::string::npos ? block.size() : eol + 1;
    std::string_view line(block.data() + pos, end - pos);
    std::size_t first = line.find_first_not_of(" \t");
    out += indent;
    out += first == std::string_view::npos ? line : line.substr(first);
    pos = end;
  }
  return out;
}

// Member text starting at the rendered name: `name(params) { body }`.
std::string memberText(const SourceModule& mod, std::string_view rendered_name,
                       const FunctionInfo& fn, int body_shift) {
  std::string_view text = mod.text();
  std::string out(rendered_name);
  out += "(";
  out += text.substr(fn.params_span.begin, fn.params_span.size());
  out += ")";
  out += text.substr(fn.params_span.end + 1,
                     fn.body_span.begin - fn.params_span.end - 1);
  std::string_view body = text.substr(fn.body_span.begin, fn.body_span.size());
  out += body_shift == 0 ? std::string(body)
                         : reindent(body, body_shift, mod.format.indent_unit);
  return out;
}

// Distinguishes member slots so duplicate definitions collapse once.
int memberSlot(const MethodModel& m) {
  if (m.idiom == MethodIdiom::Getter) return 1;
  if (m.idiom == MethodIdiom::Setter) return 2;
  if (m.is_static) return 3;
  return 0;
}

std::vector<std::size_t> liftedInnerIndices(const ClassModel& c) {
  std::vector<std::size_t> out;
  for (const auto& m : c.methods) {
    if (m.idiom == MethodIdiom::InnerThis && !m.captures_ctor_scope &&
        m.loc.list == &c.ctor->body) {
      out.push_back(m.loc.index);
    }
  }
  return out;
}

std::string renderCtorBody(const SourceModule& mod, const ClassModel& c,
                           const std::vector<std::size_t>& lifted) {
  std::string_view text = mod.text();
  const std::string& unit = mod.format.indent_unit;
  std::string body = "{";
  for (std::size_t k = 0; k < c.ctor->body.size(); ++k) {
    const Stmt& s = c.ctor->body[k];
    std::string_view trivia = s.trivia(text);
    if (std::find(lifted.begin(), lifted.end(), k) != lifted.end()) {
      TriviaSplit split = splitLeadingCommentBlock(trivia, false);
      body += triviaAfterDeletion(split.kept);
      continue;
    }
    body += reindent(trivia, 1, unit);
    body += reindent(s.text(text), 1, unit);
  }
  std::string_view tail = text.substr(c.ctor->body_tail_begin,
                                      c.ctor->body_span.end - 1 - c.ctor->body_tail_begin);
  body += reindent(tail, 1, unit);
  // The closing brace moves one level deeper with the constructor.
  if (!body.empty() && body.back() == '\n') body += unit;
  body += "}";
  return body;
}

FixPlan planRule1(const Pipeline& pl) {
  FixPlan plan;
  plan.splices.resize(pl.project.modules.size());
  for (const auto& c : pl.classes) {
    if (pl.blocked.count({c.ctor_loc.module, c.name}) || !c.ctor) continue;
    const Stmt& decl = c.ctor_loc.stmt();
    if (decl.kind != StmtKind::FunctionDecl) continue;
    const SourceModule& mod = pl.project.modules[c.ctor_loc.module];
    std::string_view text = mod.text();
    const std::string& nl = mod.format.newline;
    const std::string& unit = mod.format.indent_unit;
    auto& batch = plan.splices[c.ctor_loc.module];

    std::string class_indent(lineIndentAt(text, decl.begin));
    std::string member_indent = class_indent + unit;
    auto lifted = liftedInnerIndices(c);

    std::string out = "class " + c.name + " {";
    out += nl + member_indent;
    out += "constructor(";
    out += text.substr(c.ctor->params_span.begin, c.ctor->params_span.size());
    out += ")";
    out += text.substr(c.ctor->params_span.end + 1,
                       c.ctor->body_span.begin - c.ctor->params_span.end - 1);
    out += renderCtorBody(mod, c, lifted);

    std::set<std::pair<std::string, int>> seen;
    std::set<std::pair<const std::vector<Stmt>*, std::size_t>> consumed;
    for (const auto& m : c.methods) {
      if (m.remote || !m.fn) continue;
      if (m.idiom == MethodIdiom::InnerThis && m.captures_ctor_scope) continue;
      bool inner = m.idiom == MethodIdiom::InnerThis;
      if (!inner) consumed.insert({m.loc.list, m.loc.index});
      if (!seen.insert({m.name, memberSlot(m)}).second) continue;

      std::string rendered_name;
      switch (m.idiom) {
        case MethodIdiom::Getter: rendered_name = "get " + m.name; break;
        case MethodIdiom::Setter: rendered_name = "set " + m.name; break;
        case MethodIdiom::CtorProp:
          rendered_name = pl.opts.rule1_literal ? m.name : "static " + m.name;
          break;
        default: rendered_name = m.name; break;
      }
      const Stmt& src_stmt = m.loc.stmt();
      TriviaSplit split = splitLeadingCommentBlock(src_stmt.trivia(text),
                                                   src_stmt.trivia_begin == 0);
      out += nl;
      out += reindentCommentBlock(split.comment_block, member_indent);
      out += member_indent;
      out += memberText(mod, rendered_name, *m.fn, inner ? 0 : 1);
    }
    out += nl + class_indent + "}";

    batch.push_back({decl.begin, std::string(decl.text(text)), std::move(out),
                     kPhaseRule1, c.name});
    for (const auto& [list, index] : consumed) {
      const Stmt& s = (*list)[index];
      std::string_view trivia = s.trivia(text);
      TriviaSplit split = splitLeadingCommentBlock(trivia, s.trivia_begin == 0);
      std::string before(trivia);
      before += s.text(text);
      batch.push_back({s.trivia_begin, std::move(before),
                       triviaAfterDeletion(split.kept), kPhaseRule1, c.name});
    }
  }
  return plan;
}

// ---- Rule 2: inheritance link -> extends clause ----

FixPlan planRule2(const Pipeline& pl) {
  FixPlan plan;
  plan.splices.resize(pl.project.modules.size());
  for (const auto& scope : collectScopes(pl.project)) {
    const SourceModule& mod = pl.project.modules[scope.module];
    std::string_view text = mod.text();
    for (const Stmt& s : *scope.list) {
      const auto* ch = std::get_if<ProtoChainAssign>(&s.pattern);
      if (!ch) continue;
      if (!pl.migrated.count({scope.module, ch->class_name})) continue;
      const Stmt* cls_stmt = nullptr;
      for (const Stmt& t : *scope.list) {
        if (t.kind == StmtKind::ClassDecl && t.cls->name == ch->class_name)
          cls_stmt = &t;
      }
      if (!cls_stmt || cls_stmt->cls->has_heritage) continue;
      const Token& name_tok = mod.tokens[cls_stmt->cls->name_tok];
      auto& batch = plan.splices[scope.module];
      batch.push_back({name_tok.end, "", " extends " + ch->super_name,
                       kPhaseRule2, ch->class_name});
      std::string_view trivia = s.trivia(text);
      std::string before(trivia);
      before += s.text(text);
      batch.push_back({s.trivia_begin, std::move(before),
                       triviaAfterDeletion(trivia), kPhaseRule2, ch->class_name});
    }
  }
  return plan;
}

// ---- Rule 3: borrowed super calls -> super syntax ----

std::string renderSuperCall(const std::string& method, bool is_apply,
                            std::string_view args) {
  std::string callee = method.empty() ? "super" : "super." + method;
  if (is_apply) {
    if (args.empty()) return callee + "()";
    return callee + "(..." + std::string(args) + ")";
  }
  return callee + "(" + std::string(args) + ")";
}

FixPlan planRule3(const Pipeline& pl) {
  FixPlan plan;
  plan.splices.resize(pl.project.modules.size());
  for (const auto& scope : collectScopes(pl.project)) {
    const SourceModule& mod = pl.project.modules[scope.module];
    std::string_view text = mod.text();
    const std::string& nl = mod.format.newline;
    const std::string& unit = mod.format.indent_unit;
    for (const Stmt& s : *scope.list) {
      if (s.kind != StmtKind::ClassDecl) continue;
      const ClassDeclInfo& cls = *s.cls;
      if (!pl.migrated.count({scope.module, cls.name})) continue;
      if (!cls.has_heritage || !cls.body_parsed || cls.superclass.empty()) continue;
      auto& batch = plan.splices[scope.module];
      for (const ClassMember& m : cls.members) {
        bool is_ctor = !m.is_static && m.kind == MemberKind::Method &&
                       m.name == "constructor";
        bool converted = false;
        for (const Stmt& b : m.fn.body) {
          ByteSpan call;
          std::string replacement;
          if (const auto* sc = std::get_if<SuperCtorCall>(&b.pattern);
              sc && is_ctor && sc->super_name == cls.superclass) {
            call = sc->call_span;
            replacement = renderSuperCall(
                "", sc->is_apply,
                text.substr(sc->args_span.begin, sc->args_span.size()));
            converted = true;
          } else if (const auto* sm = std::get_if<SuperMethodCall>(&b.pattern);
                     sm && sm->super_name == cls.superclass) {
            call = sm->call_span;
            replacement = renderSuperCall(
                sm->method, sm->is_apply,
                text.substr(sm->args_span.begin, sm->args_span.size()));
          } else {
            continue;
          }
          batch.push_back({call.begin,
                           std::string(text.substr(call.begin, call.size())),
                           std::move(replacement), kPhaseRule3, cls.name});
        }
        if (is_ctor && !converted) {
          // ES6 requires the super call; derived constructors cannot touch
          // `this` (or implicitly return it) before it runs.
          std::string inserted;
          std::string_view body = text.substr(m.fn.body_span.begin,
                                              m.fn.body_span.size());
          if (body.find('\n') == std::string_view::npos) {
            inserted = body.size() == 2 ? " super(); " : " super();";
          } else if (!m.fn.body.empty()) {
            inserted = nl;
            inserted += lineIndentAt(text, m.fn.body[0].begin);
            inserted += "super();";
          } else {
            std::string mi(lineIndentAt(text, mod.tokens[m.begin_tok].begin));
            inserted = nl + mi + unit + "super();" + nl + mi;
          }
          batch.push_back({m.fn.body_span.begin + 1, "", std::move(inserted),
                           kPhaseRule3, cls.name});
        }
      }
    }
  }
  return plan;
}

// ---- ThisBeforeSuper fix: lift the callback behind a synthesized setter ----

const Stmt* findClassStmt(const Project& project, int module,
                          const std::string& name) {
  for (const auto& scope : collectScopes(project)) {
    if (scope.module != module) continue;
    for (const Stmt& s : *scope.list) {
      if (s.kind == StmtKind::ClassDecl && s.cls->name == name) return &s;
    }
  }
  return nullptr;
}

FixPlan planSetterLifts(Pipeline* pl) {
  FixPlan plan;
  plan.splices.resize(pl->project.modules.size());
  for (const SetterLiftPlan& sl : pl->setter_lifts) {
    const SourceModule& mod = pl->project.modules[sl.module];
    std::string_view text = mod.text();
    const std::string& nl = mod.format.newline;
    const std::string& unit = mod.format.indent_unit;
    auto current = [&](const std::string& name) {
      auto it = pl->renames.find({sl.module, name});
      return it == pl->renames.end() ? name : it->second;
    };
    std::string cname = current(sl.class_name);
    std::string sname = current(sl.super_name);

    auto giveUp = [&](const char* why) {
      Diagnostic& d = pl->diags[sl.diag_index];
      d.remediation = CaseRemediation::Manual;
      d.detail = why;
    };

    const Stmt* cls_stmt = findClassStmt(pl->project, sl.module, cname);
    const Stmt* sup_stmt = findClassStmt(pl->project, sl.module, sname);
    if (!cls_stmt || !sup_stmt || !cls_stmt->cls->body_parsed ||
        !sup_stmt->cls->body_parsed) {
      giveUp("the rewritten classes could not be revisited; lift skipped");
      continue;
    }
    const ClassMember* ctor = cls_stmt->cls->ctor();
    if (!ctor) {
      giveUp("the rewritten constructor could not be revisited; lift skipped");
      continue;
    }
    const Stmt* target = nullptr;
    for (const Stmt& b : ctor->fn.body) {
      if (b.tok_begin + 1 < b.tok_end && isIdent(mod.tokens[b.tok_begin], "super") &&
          isPunct(mod.tokens[b.tok_begin + 1], "(")) {
        target = &b;
        break;
      }
    }
    if (!target) {
      giveUp("no super call found after the rules ran; lift skipped");
      continue;
    }
    std::size_t open = target->tok_begin + 1;
    int depth = 0;
    std::size_t close = open;
    for (std::size_t t = open; t < target->tok_end; ++t) {
      if (isPunct(mod.tokens[t], "(")) depth++;
      if (isPunct(mod.tokens[t], ")")) {
        depth--;
        if (depth == 0) {
          close = t;
          break;
        }
      }
    }
    if (close <= open + 1) {
      giveUp("the super call carries no callback anymore; lift skipped");
      continue;
    }
    std::string fn_text(text.substr(mod.tokens[open + 1].begin,
                                    mod.tokens[close - 1].end -
                                        mod.tokens[open + 1].begin));

    std::string stmt_indent(lineIndentAt(text, target->begin));
    std::string replacement = "super();";
    replacement += nl + stmt_indent;
    replacement += "this." + sl.setter + "((" + fn_text + ").bind(this));";
    plan.splices[sl.module].push_back(
        {target->begin, std::string(target->text(text)), std::move(replacement),
         kPhaseFixThisBeforeSuper, cname});

    std::string sup_member_indent(lineIndentAt(text, sup_stmt->begin));
    std::string mi = sup_member_indent + unit;
    std::string setter_body = sl.setter + "(" + sl.param + ") {" + nl + mi + unit +
                              "this." + sl.prop + " = " + sl.param + ";" + nl + mi + "}";
    std::size_t brace = sup_stmt->cls->body_span.end - 1;
    std::size_t line_start = 0;
    if (brace > 0) {
      std::size_t prev_nl = text.rfind('\n', brace - 1);
      if (prev_nl != std::string_view::npos) line_start = prev_nl + 1;
    }
    std::string_view run = text.substr(line_start, brace - line_start);
    if (run.find_first_not_of(" \t") == std::string_view::npos) {
      // The closing brace owns its line: emit the setter as full lines above it.
      plan.splices[sl.module].push_back({line_start, "",
                                         mi + setter_body + nl,
                                         kPhaseFixThisBeforeSuper, sname});
    } else {
      plan.splices[sl.module].push_back({brace, "",
                                         nl + mi + setter_body + nl + sup_member_indent,
                                         kPhaseFixThisBeforeSuper, sname});
    }
  }
  return plan;
}

}  // namespace

MigrateResult migrate(const std::vector<FileInput>& inputs,
                      const MigrateOptions& opts) {
  MigrateResult res;
  Pipeline pl;
  pl.opts = opts;
  pl.texts.reserve(inputs.size());
  pl.traces.resize(inputs.size());

  for (const auto& in : inputs) {
    FileOutcome out;
    out.path = in.path;
    out.original = in.text;
    out.output = in.text;
    auto r = parse(in.path, in.text);
    if (std::holds_alternative<ParseError>(r)) {
      const auto& e = std::get<ParseError>(r);
      out.parse_failed = true;
      out.error = e.message;
      res.ok = false;
      auto placeholder = parse(in.path, "");
      pl.project.modules.push_back(std::get<SourceModule>(std::move(placeholder)));
      pl.usable.push_back(false);
    } else {
      pl.project.modules.push_back(std::get<SourceModule>(std::move(r)));
      pl.usable.push_back(true);
    }
    pl.texts.push_back(in.text);
    res.files.push_back(std::move(out));
  }

  pl.classes = detect(pl.project);
  Analysis analysis = analyzeProject(pl.project, pl.classes);
  pl.diags = std::move(analysis.diagnostics);
  pl.blocked = std::move(analysis.blocked);
  pl.setter_lifts = std::move(analysis.setter_lifts);

  struct Snap {
    std::string name;
    int module;
  };
  std::vector<Snap> snaps;
  for (const auto& c : pl.classes) snaps.push_back({c.name, c.ctor_loc.module});

  applyStage(&pl, planFactoryFixes(pl.project, pl.classes, pl.blocked));
  applyStage(&pl, planAliasFixes(pl.project, pl.classes, pl.blocked));
  applyStage(&pl, planHoistingFixes(pl.project, pl.classes, pl.blocked));

  for (const auto& c : pl.classes) {
    if (pl.blocked.count({c.ctor_loc.module, c.name}) || !c.ctor) continue;
    if (c.ctor_loc.stmt().kind != StmtKind::FunctionDecl) continue;
    pl.migrated.insert({c.ctor_loc.module, c.name});
  }

  applyStage(&pl, planRule1(pl));
  applyStage(&pl, planRule2(pl));
  applyStage(&pl, planRule3(pl));
  applyStage(&pl, planSetterLifts(&pl));

  for (const auto& snap : snaps) {
    ClassReport report;
    report.name = snap.name;
    report.file = res.files[snap.module].path;
    auto it = pl.renames.find({snap.module, snap.name});
    std::string cur = it == pl.renames.end() ? snap.name : it->second;
    bool blocked_now = pl.blocked.count({snap.module, snap.name}) > 0 ||
                       pl.blocked.count({snap.module, cur}) > 0;
    bool manual_bad = false, applied_bad = false;
    for (const auto& d : pl.diags) {
      if (d.module != snap.module) continue;
      if (d.class_name != snap.name && d.class_name != cur) continue;
      if (d.severity == CaseSeverity::Bad) {
        if (d.remediation == CaseRemediation::Manual) manual_bad = true;
        if (d.remediation == CaseRemediation::Applied) applied_bad = true;
      }
    }
    report.migrated = !blocked_now;
    if (blocked_now) {
      report.label = manual_bad ? ClassLabel::BadManual : ClassLabel::UglyPreserved;
    } else {
      report.label = applied_bad ? ClassLabel::BadFixed : ClassLabel::Good;
    }
    res.classes.push_back(std::move(report));
  }

  std::stable_sort(pl.diags.begin(), pl.diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     if (a.module != b.module) return a.module < b.module;
                     return a.offset < b.offset;
                   });
  res.diagnostics = std::move(pl.diags);
  for (std::size_t i = 0; i < res.files.size(); ++i) {
    res.files[i].output = pl.texts[i];
    res.files[i].trace = std::move(pl.traces[i]);
  }
  return res;
}

}  // namespace classlift
