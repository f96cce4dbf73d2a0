#include "classlift/analyzer.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

#include "classlift/lexer.hpp"
#include "classlift/text.hpp"

namespace classlift {

const char* kindName(CaseKind k) {
  switch (k) {
    case CaseKind::ThisBeforeSuper: return "ThisBeforeSuper";
    case CaseKind::FactoryConstructor: return "FactoryConstructor";
    case CaseKind::Hoisting: return "Hoisting";
    case CaseKind::MethodAlias: return "MethodAlias";
    case CaseKind::DynamicAccessor: return "DynamicAccessor";
    case CaseKind::StaticProperty: return "StaticProperty";
    case CaseKind::OptionalFeature: return "OptionalFeature";
  }
  return "?";
}

const char* severityName(CaseSeverity s) {
  return s == CaseSeverity::Bad ? "Bad" : "Ugly";
}

const char* remediationName(CaseRemediation r) {
  switch (r) {
    case CaseRemediation::Applied: return "Applied";
    case CaseRemediation::Manual: return "Manual";
    case CaseRemediation::Preserved: return "Preserved";
  }
  return "?";
}

namespace {

using ClassKey = std::pair<int, std::string>;

bool isOpen(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}
bool isClose(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

std::map<ClassKey, const ClassModel*> buildClassMap(
    const std::vector<ClassModel>& classes) {
  std::map<ClassKey, const ClassModel*> out;
  for (const auto& c : classes) out[{c.ctor_loc.module, c.name}] = &c;
  return out;
}

// Token index range whose bytes fall inside `span`.
std::pair<std::size_t, std::size_t> tokensInSpan(const SourceModule& mod,
                                                 ByteSpan span) {
  const auto& toks = mod.tokens;
  auto lo = std::lower_bound(toks.begin(), toks.end(), span.begin,
                             [](const Token& t, std::size_t b) { return t.begin < b; });
  auto hi = std::lower_bound(lo, toks.end(), span.end,
                             [](const Token& t, std::size_t b) { return t.begin < b; });
  return {static_cast<std::size_t>(lo - toks.begin()),
          static_cast<std::size_t>(hi - toks.begin())};
}

std::vector<std::string> paramNames(const SourceModule& mod,
                                    const FunctionInfo& fn) {
  std::vector<std::string> out;
  auto [first, last] = tokensInSpan(mod, fn.params_span);
  for (std::size_t i = first; i < last; ++i) {
    const Token& t = mod.tokens[i];
    if (t.kind == TokenKind::Identifier && !isKeyword(t.text)) {
      out.push_back(std::string(t.text));
    }
  }
  return out;
}

// `this` tokens in [first, last), optionally skipping function literal bodies.
std::vector<std::size_t> thisTokens(const SourceModule& mod, std::size_t first,
                                    std::size_t last, bool skip_function_bodies) {
  std::vector<std::size_t> out;
  const auto& toks = mod.tokens;
  for (std::size_t i = first; i < last; ++i) {
    if (skip_function_bodies && isIdent(toks[i], "function")) {
      std::size_t j = i + 1;
      if (j < last && toks[j].kind == TokenKind::Identifier && !isKeyword(toks[j].text)) ++j;
      if (j < last && isPunct(toks[j], "(")) {
        int depth = 0;
        while (j < last) {
          if (isOpen(toks[j])) depth++;
          if (isClose(toks[j])) {
            depth--;
            if (depth == 0 && toks[j].text == "}") break;
          }
          ++j;
        }
        i = j;
        continue;
      }
    }
    if (isIdent(toks[i], "this")) out.push_back(i);
  }
  return out;
}

bool sameLoc(const StmtLoc& a, const StmtLoc& b) { return a == b; }

// Statement locations rule 1 and 2 consume when migrating `c`.
std::vector<StmtLoc> consumedStmts(const ClassModel& c) {
  std::vector<StmtLoc> out;
  for (const auto& m : c.methods) {
    if (m.remote) continue;
    if (m.idiom == MethodIdiom::InnerThis) continue;  // lives inside the ctor
    out.push_back(m.loc);
  }
  if (c.has_chain) out.push_back(c.chain_loc);
  return out;
}

bool containsLoc(const std::vector<StmtLoc>& v, const StmtLoc& loc) {
  for (const auto& l : v)
    if (sameLoc(l, loc)) return true;
  return false;
}

// Index of the ctor-body statement holding the factory guard, if any.
std::optional<std::size_t> factoryGuardIndex(const SourceModule& mod,
                                             const ClassModel& c) {
  if (!c.ctor) return std::nullopt;
  for (std::size_t i = 0; i < c.ctor->body.size(); ++i) {
    std::string guard_name;
    if (matchInstanceofGuard(mod, c.ctor->body[i], &guard_name) &&
        guard_name == c.name) {
      return i;
    }
  }
  return std::nullopt;
}

// Ctor-body indices of InnerThis methods that rule 1 lifts out.
std::vector<std::size_t> liftableInnerIndices(const ClassModel& c) {
  std::vector<std::size_t> out;
  for (const auto& m : c.methods) {
    if (m.idiom == MethodIdiom::InnerThis && !m.captures_ctor_scope &&
        m.loc.list == &c.ctor->body) {
      out.push_back(m.loc.index);
    }
  }
  return out;
}

struct HoistScan {
  bool manual = false;
  std::size_t manual_offset = 0;
  std::string manual_reason;
  bool has_move = false;
  std::size_t move_target = 0;  // index in the ctor's scope list
  std::vector<std::size_t> null_split_vars;
};

HoistScan scanHoisting(const Project& project,
                       const std::vector<ClassModel>& classes,
                       const ClassModel& c) {
  HoistScan out;
  const SourceModule& mod = project.modules[c.ctor_loc.module];
  const auto& list = *c.ctor_loc.list;
  std::size_t ctor_idx = c.ctor_loc.index;
  auto skip = consumedStmts(c);

  std::vector<std::size_t> pure_refs, value_deps, var_news;
  for (std::size_t idx = 0; idx < ctor_idx; ++idx) {
    const Stmt& s = list[idx];
    if (s.kind == StmtKind::FunctionDecl) continue;
    if (s.kind == StmtKind::VarDecl && s.var->init_kind == VarInitKind::Function)
      continue;
    if (containsLoc(skip, {c.ctor_loc.module, &list, idx})) continue;
    auto refs = findReferences(mod.tokens, s.tok_begin, s.tok_end, c.name, false);
    if (refs.empty()) continue;
    if (s.kind == StmtKind::VarDecl && s.var->single_declarator &&
        s.var->init_kind == VarInitKind::New && s.var->new_class == c.name &&
        s.var->keyword == "var") {
      var_news.push_back(idx);
      continue;
    }
    bool valdep = false;
    for (std::size_t r : refs) {
      if (r > 0 && isIdent(mod.tokens[r - 1], "new")) valdep = true;
      if (r + 1 < mod.tokens.size() &&
          (isPunct(mod.tokens[r + 1], "(") || isPunct(mod.tokens[r + 1], "."))) {
        valdep = true;
      }
    }
    (valdep ? value_deps : pure_refs).push_back(idx);
  }

  // A subclass declared above its superclass needs the superclass hoisted
  // above it, since the heritage clause evaluates at the subclass position.
  for (const auto& other : classes) {
    if (&other == &c || other.ctor_loc.module != c.ctor_loc.module) continue;
    if (other.ctor_loc.list == &list && other.super_name == c.name &&
        other.ctor_loc.index < ctor_idx) {
      pure_refs.push_back(other.ctor_loc.index);
    }
  }

  std::size_t final_pos = ctor_idx;
  if (!pure_refs.empty()) {
    out.has_move = true;
    out.move_target = *std::min_element(pure_refs.begin(), pure_refs.end());
    final_pos = out.move_target;
  }
  for (std::size_t v : var_news) {
    if (v >= final_pos) continue;
    // The split assignment runs after the class declaration; any use of the
    // variable in between would observe null.
    const Stmt& vs = list[v];
    for (std::size_t idx = v + 1; idx < final_pos; ++idx) {
      const Stmt& s = list[idx];
      if (s.kind == StmtKind::FunctionDecl) continue;
      if (s.kind == StmtKind::VarDecl && s.var->init_kind == VarInitKind::Function)
        continue;
      if (containsLoc(skip, {c.ctor_loc.module, &list, idx})) continue;
      if (!findReferences(mod.tokens, s.tok_begin, s.tok_end, vs.var->name, false)
               .empty()) {
        out.manual = true;
        out.manual_offset = s.begin;
        out.manual_reason = "variable '" + vs.var->name +
                            "' is read before the relocated initialization";
        return out;
      }
    }
    out.null_split_vars.push_back(v);
  }
  for (std::size_t d : value_deps) {
    if (d < final_pos) {
      out.manual = true;
      out.manual_offset = list[d].begin;
      out.manual_reason = "value of '" + c.name +
                          "' is consumed before the declaration";
      return out;
    }
  }
  return out;
}

void addDiag(std::vector<Diagnostic>* diags, CaseKind kind, CaseSeverity sev,
             CaseRemediation rem, std::string class_name, std::string detail,
             int module, std::size_t offset) {
  Diagnostic d;
  d.kind = kind;
  d.severity = sev;
  d.remediation = rem;
  d.class_name = std::move(class_name);
  d.detail = std::move(detail);
  d.module = module;
  d.offset = offset;
  diags->push_back(std::move(d));
}

std::string trimCopy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' ||
                   s[e - 1] == '\r'))
    --e;
  return std::string(s.substr(b, e - b));
}

std::string setterNameFor(std::string_view prop) {
  std::string_view stripped = prop;
  while (!stripped.empty() && stripped.front() == '_') stripped.remove_prefix(1);
  if (stripped.empty()) stripped = prop;
  return "set" + toUpperFirst(stripped);
}

}  // namespace

Analysis analyzeProject(const Project& project,
                        const std::vector<ClassModel>& classes) {
  Analysis out;
  auto class_map = buildClassMap(classes);

  std::map<std::string, std::vector<const ClassModel*>> by_name;
  for (const auto& c : classes) by_name[c.name].push_back(&c);

  auto block = [&](const ClassModel& c) {
    out.blocked.insert({c.ctor_loc.module, c.name});
  };
  auto isBlocked = [&](const ClassModel& c) {
    return out.blocked.count({c.ctor_loc.module, c.name}) > 0;
  };

  // Conflicting member definitions: same name bound twice with different
  // bodies, or a plain method colliding with an accessor.
  for (const auto& c : classes) {
    const SourceModule& mod = project.modules[c.ctor_loc.module];
    std::map<std::string, std::vector<const MethodModel*>> by_member;
    for (const auto& m : c.methods) {
      if (m.remote) continue;
      by_member[m.name].push_back(&m);
    }
    for (auto& [name, defs] : by_member) {
      bool accessor = false, plain = false, conflict = false;
      std::map<int, std::string_view> bodies;  // one body per slot
      for (const auto* m : defs) {
        bool is_acc = m->idiom == MethodIdiom::Getter || m->idiom == MethodIdiom::Setter;
        (is_acc ? accessor : plain) = true;
        int slot = m->idiom == MethodIdiom::Getter   ? 1
                   : m->idiom == MethodIdiom::Setter ? 2
                   : m->is_static                    ? 3
                                                     : 0;
        std::string_view body = m->fn ? mod.text().substr(
                                            m->fn->params_span.begin,
                                            m->fn->body_span.end - m->fn->params_span.begin)
                                      : std::string_view{};
        auto it = bodies.find(slot);
        if (it == bodies.end()) {
          bodies[slot] = body;
        } else if (it->second != body) {
          conflict = true;
        }
      }
      if (accessor && plain) conflict = true;
      if (conflict) {
        addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                CaseRemediation::Preserved, c.name,
                "conflicting definitions of '" + name + "'",
                c.ctor_loc.module, defs.back()->loc.stmt().begin);
        block(c);
      }
    }
  }

  // Superclass resolution: the heritage name must be declared in the same
  // scope, as a detected constructor or an existing class declaration.
  for (const auto& c : classes) {
    if (!c.has_chain || isBlocked(c)) continue;
    auto it = class_map.find({c.ctor_loc.module, c.super_name});
    bool ok = it != class_map.end() && it->second->ctor_loc.list == c.ctor_loc.list;
    if (!ok) {
      for (std::size_t i = 0; !ok && i < c.ctor_loc.index; ++i) {
        const Stmt& s = (*c.ctor_loc.list)[i];
        if (s.kind == StmtKind::ClassDecl && s.cls->name == c.super_name) ok = true;
      }
    }
    if (!ok) {
      addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
              CaseRemediation::Preserved, c.name,
              "superclass '" + c.super_name + "' is not declared in this scope",
              c.ctor_loc.module, c.chain_loc.stmt().begin);
      block(c);
    }
  }

  // Call-style uses of a constructor name. Statement-level super-style calls
  // inside a subclass stay rewritable; anything else pins the callee to a
  // plain function.
  std::set<std::pair<int, std::size_t>> sanctioned;  // (module, stmt first token)
  for (const auto& c : classes) {
    if (c.super_name.empty() || !c.ctor) continue;
    auto scan_list = [&](const std::vector<Stmt>& list, bool allow_ctor_call) {
      for (const Stmt& s : list) {
        if (const auto* sc = std::get_if<SuperCtorCall>(&s.pattern)) {
          if (allow_ctor_call && sc->super_name == c.super_name)
            sanctioned.insert({c.ctor_loc.module, s.tok_begin});
        } else if (const auto* sm = std::get_if<SuperMethodCall>(&s.pattern)) {
          if (sm->super_name == c.super_name)
            sanctioned.insert({c.ctor_loc.module, s.tok_begin});
        }
      }
    };
    scan_list(c.ctor->body, true);
    for (const auto& m : c.methods) {
      if (m.remote || !m.fn) continue;
      if (m.idiom == MethodIdiom::InnerThis && m.captures_ctor_scope) continue;
      scan_list(m.fn->body, false);
    }
  }

  for (int mi = 0; mi < static_cast<int>(project.modules.size()); ++mi) {
    const SourceModule& mod = project.modules[mi];
    const auto& toks = mod.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (!isPlainReference(toks, i)) continue;
      auto named_it = by_name.find(std::string(toks[i].text));
      if (named_it == by_name.end()) continue;
      const auto& targets = named_it->second;

      // Walk the dotted path that starts here.
      std::size_t j = i;
      while (j + 2 < toks.size() && isPunct(toks[j + 1], ".") &&
             toks[j + 2].kind == TokenKind::Identifier) {
        j += 2;
      }
      std::string_view last_seg = toks[j].text;

      if (j > i && (last_seg == "call" || last_seg == "apply") &&
          j + 1 < toks.size() && isPunct(toks[j + 1], "(")) {
        if (sanctioned.count({mi, i})) continue;
        for (const auto* t : targets) {
          addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                  CaseRemediation::Preserved, t->name,
                  "constructor borrowed via call/apply outside a subclass",
                  mi, toks[i].begin);
          out.blocked.insert({t->ctor_loc.module, t->name});
        }
        // A conditional or nested borrow inside a subclass constructor would
        // fight the inserted super() call; keep that subclass legacy too.
        for (const auto& c : classes) {
          if (c.ctor_loc.module != mi || !c.ctor) continue;
          if (c.super_name != toks[i].text) continue;
          if (i >= c.ctor->body_tok_begin && i < c.ctor->body_tok_end) block(c);
        }
        continue;
      }

      if (j == i && i + 1 < toks.size() && isPunct(toks[i + 1], "(") &&
          !(i > 0 && isIdent(toks[i - 1], "new"))) {
        bool factory_target = false;
        for (const auto* t : targets) {
          if (t->ctor_loc.module == mi &&
              factoryGuardIndex(project.modules[mi], *t).has_value()) {
            factory_target = true;
          }
        }
        if (factory_target) continue;
        for (const auto* t : targets) {
          addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                  CaseRemediation::Preserved, t->name,
                  "constructor called without new", mi, toks[i].begin);
          out.blocked.insert({t->ctor_loc.module, t->name});
        }
        continue;
      }

      if (j == i + 2 && last_seg == "prototype" && j + 1 < toks.size() &&
          isPunct(toks[j + 1], "=")) {
        bool is_chain_stmt = false;
        for (const auto* t : targets) {
          if (t->ctor_loc.module == mi && t->has_chain &&
              t->chain_loc.stmt().tok_begin == i) {
            is_chain_stmt = true;
          }
        }
        if (is_chain_stmt) continue;
        for (const auto* t : targets) {
          addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                  CaseRemediation::Preserved, t->name,
                  t->ctor_loc.module == mi
                      ? "prototype replaced outside the inheritance link"
                      : "prototype replaced outside the class module",
                  mi, toks[i].begin);
          out.blocked.insert({t->ctor_loc.module, t->name});
        }
      }
    }
  }

  // References before the declaration that no automatic fix covers.
  for (const auto& c : classes) {
    if (isBlocked(c)) continue;
    HoistScan scan = scanHoisting(project, classes, c);
    if (scan.manual) {
      addDiag(&out.diagnostics, CaseKind::Hoisting, CaseSeverity::Bad,
              CaseRemediation::Manual, c.name, scan.manual_reason,
              c.ctor_loc.module, scan.manual_offset);
      block(c);
    }
  }

  // this-before-super: classify every subclass constructor that borrows the
  // superclass constructor.
  for (const auto& c : classes) {
    if (isBlocked(c) || !c.has_chain || !c.ctor) continue;
    const SourceModule& mod = project.modules[c.ctor_loc.module];
    std::vector<std::size_t> call_idx;
    for (std::size_t i = 0; i < c.ctor->body.size(); ++i) {
      const auto* sc = std::get_if<SuperCtorCall>(&c.ctor->body[i].pattern);
      if (sc && sc->super_name == c.super_name) call_idx.push_back(i);
    }
    if (call_idx.empty()) continue;
    if (call_idx.size() > 1) {
      addDiag(&out.diagnostics, CaseKind::ThisBeforeSuper, CaseSeverity::Bad,
              CaseRemediation::Manual, c.name,
              "superclass constructor borrowed more than once",
              c.ctor_loc.module, c.ctor->body[call_idx[1]].begin);
      block(c);
      continue;
    }

    std::size_t at = call_idx[0];
    auto liftable = liftableInnerIndices(c);
    bool this_before = false;
    std::size_t offending = 0;
    for (std::size_t k = 0; k < at && !this_before; ++k) {
      if (std::find(liftable.begin(), liftable.end(), k) != liftable.end())
        continue;
      const Stmt& s = c.ctor->body[k];
      if (!thisTokens(mod, s.tok_begin, s.tok_end, true).empty()) {
        this_before = true;
        offending = s.begin;
      }
    }
    if (this_before) {
      addDiag(&out.diagnostics, CaseKind::ThisBeforeSuper, CaseSeverity::Bad,
              CaseRemediation::Manual, c.name,
              "this is used before the superclass constructor runs",
              c.ctor_loc.module, offending);
      block(c);
      continue;
    }

    const auto& sc = std::get<SuperCtorCall>(c.ctor->body[at].pattern);
    auto [afirst, alast] = tokensInSpan(mod, sc.args_span);
    if (thisTokens(mod, afirst, alast, false).empty()) continue;

    auto manual = [&](const char* why) {
      addDiag(&out.diagnostics, CaseKind::ThisBeforeSuper, CaseSeverity::Bad,
              CaseRemediation::Manual, c.name, why, c.ctor_loc.module,
              c.ctor->body[at].begin);
      block(c);
    };

    // Fixable shape: the only argument is a function expression, and the
    // superclass assigns the matching parameter to a single property.
    if (sc.is_apply || afirst >= alast || !isIdent(mod.tokens[afirst], "function")) {
      manual("this escapes into the superclass constructor");
      continue;
    }
    int depth = 0;
    bool whole = true;
    for (std::size_t t = afirst; t < alast; ++t) {
      if (isOpen(mod.tokens[t])) depth++;
      if (isClose(mod.tokens[t])) depth--;
      if (depth == 0 && isPunct(mod.tokens[t], ",")) whole = false;
      if (depth == 0 && t + 1 < alast && mod.tokens[t].text == "}") whole = false;
    }
    if (!whole || depth != 0) {
      manual("this escapes into the superclass constructor");
      continue;
    }
    auto sup_it = class_map.find({c.ctor_loc.module, c.super_name});
    if (sup_it == class_map.end() || !sup_it->second->ctor ||
        out.blocked.count({c.ctor_loc.module, c.super_name})) {
      manual("superclass constructor cannot take a synthesized setter");
      continue;
    }
    const ClassModel& sup = *sup_it->second;
    auto params = paramNames(mod, *sup.ctor);
    if (params.empty()) {
      manual("superclass constructor has no matching parameter");
      continue;
    }
    const std::string& p0 = params[0];
    std::string prop;
    int assigns = 0;
    for (const Stmt& s : sup.ctor->body) {
      const auto* tp = std::get_if<ThisPropAssign>(&s.pattern);
      if (!tp) continue;
      if (trimCopy(mod.text().substr(tp->value_span.begin, tp->value_span.size())) == p0) {
        prop = tp->prop;
        assigns++;
      }
    }
    if (assigns != 1) {
      manual("superclass does not store the parameter in a single property");
      continue;
    }

    SetterLiftPlan plan;
    plan.module = c.ctor_loc.module;
    plan.class_name = c.name;
    plan.super_name = c.super_name;
    plan.prop = prop;
    plan.setter = setterNameFor(prop);
    plan.param = p0;
    plan.diag_index = out.diagnostics.size();
    addDiag(&out.diagnostics, CaseKind::ThisBeforeSuper, CaseSeverity::Bad,
            CaseRemediation::Applied, c.name,
            "callback argument becomes " + plan.setter + "() after super()",
            c.ctor_loc.module, c.ctor->body[at].begin);
    out.setter_lifts.push_back(std::move(plan));
  }

  // A legacy class that keeps borrowing another constructor with
  // Function.prototype.call pins that constructor to a plain function:
  // class constructors throw when invoked without new. Blocking grows
  // monotonically, so this reaches a fixed point.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& c : classes) {
      if (!isBlocked(c) || !c.ctor) continue;
      for (const Stmt& s : c.ctor->body) {
        const auto* sc = std::get_if<SuperCtorCall>(&s.pattern);
        if (!sc) continue;
        auto it = class_map.find({c.ctor_loc.module, sc->super_name});
        if (it == class_map.end() || isBlocked(*it->second)) continue;
        addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                CaseRemediation::Preserved, it->second->name,
                "constructor borrowed by legacy class '" + c.name + "'",
                it->second->ctor_loc.module, s.begin);
        block(*it->second);
        grew = true;
      }
    }
    for (std::size_t pi = 0; pi < out.setter_lifts.size();) {
      auto& plan = out.setter_lifts[pi];
      bool dead = out.blocked.count({plan.module, plan.super_name}) > 0 ||
                  out.blocked.count({plan.module, plan.class_name}) > 0;
      if (!dead) {
        ++pi;
        continue;
      }
      Diagnostic& d = out.diagnostics[plan.diag_index];
      d.remediation = CaseRemediation::Manual;
      d.detail = "superclass '" + plan.super_name +
                 "' stays legacy; the callback argument cannot be lifted";
      out.blocked.insert({plan.module, plan.class_name});
      out.setter_lifts.erase(out.setter_lifts.begin() + pi);
      grew = true;
    }
  }

  // Preserved patterns that never block migration.
  for (const auto& c : classes) {
    for (const auto& d : c.data_props) {
      addDiag(&out.diagnostics, CaseKind::StaticProperty, CaseSeverity::Ugly,
              CaseRemediation::Preserved, c.name,
              std::string(d.on_prototype ? "prototype" : "constructor") +
                  " data property '" + d.name + "' kept as is",
              d.loc.module, d.loc.stmt().begin);
    }
    for (const auto& loc : c.dynamic_accessors) {
      addDiag(&out.diagnostics, CaseKind::DynamicAccessor, CaseSeverity::Ugly,
              CaseRemediation::Preserved, c.name,
              "accessor with a computed name or non-literal body kept as is",
              loc.module, loc.stmt().begin);
    }
    for (const auto& m : c.methods) {
      if (m.remote) {
        addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                CaseRemediation::Preserved, c.name,
                "method '" + m.name + "' is attached outside the class module",
                m.loc.module, m.loc.stmt().begin);
      } else if (m.idiom == MethodIdiom::InnerThis && m.captures_ctor_scope) {
        addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
                CaseRemediation::Preserved, c.name,
                "method '" + m.name + "' captures constructor scope; kept inside the constructor",
                m.loc.module, m.loc.stmt().begin);
      }
    }
  }

  // Prototype members whose owner is not a class in the same module:
  // augmentation of an imported or shared constructor.
  std::set<std::pair<int, std::size_t>> remote_locs;
  for (const auto& c : classes)
    for (const auto& m : c.methods)
      if (m.remote) remote_locs.insert({m.loc.module, m.loc.stmt().begin});

  std::set<std::string> global_names;
  for (const auto& c : classes) global_names.insert(c.name);

  auto scopes = collectScopes(project);
  for (const auto& scope : scopes) {
    const SourceModule& mod = project.modules[scope.module];
    auto require_bound = requireBoundNames(mod);
    std::set<std::string> local_classes;
    for (const auto& c : classes)
      if (c.ctor_loc.module == scope.module) local_classes.insert(c.name);

    for (const Stmt& s : *scope.list) {
      std::vector<std::string> root_path;
      std::string member;
      if (const auto* pm = std::get_if<ProtoMethodAssign>(&s.pattern)) {
        root_path = pm->class_path;
        member = pm->method;
      } else if (const auto* pp = std::get_if<ProtoPropAssign>(&s.pattern)) {
        root_path = pp->class_path;
        member = pp->prop;
      } else if (const auto* ac = std::get_if<AccessorDefine>(&s.pattern)) {
        root_path = {ac->class_name};
        member = ac->name;
      } else if (const auto* al = std::get_if<AliasChainAssign>(&s.pattern)) {
        root_path = {al->class_name};
        member = al->methods.back();
      } else if (s.kind == StmtKind::Opaque) {
        // Accessor definitions buried in opaque code (loops, callbacks).
        for (std::size_t i = s.tok_begin; i < s.tok_end; ++i) {
          if (mod.tokens[i].kind != TokenKind::Identifier) continue;
          if (mod.tokens[i].text != "__defineGetter__" &&
              mod.tokens[i].text != "__defineSetter__")
            continue;
          std::string owner;
          if (i >= 4 && isPunct(mod.tokens[i - 1], ".") &&
              isIdent(mod.tokens[i - 2], "prototype") &&
              isPunct(mod.tokens[i - 3], ".") &&
              mod.tokens[i - 4].kind == TokenKind::Identifier) {
            owner = std::string(mod.tokens[i - 4].text);
          }
          addDiag(&out.diagnostics, CaseKind::DynamicAccessor, CaseSeverity::Ugly,
                  CaseRemediation::Preserved,
                  global_names.count(owner) ? owner : std::string(),
                  "accessor defined dynamically; kept as is", scope.module,
                  mod.tokens[i].begin);
          break;
        }
        continue;
      } else {
        continue;
      }
      if (root_path.empty()) continue;
      if (remote_locs.count({scope.module, s.begin})) {
        continue;  // already reported as a remote method
      }
      const std::string& root = root_path[0];
      bool local = root_path.size() == 1 && local_classes.count(root) > 0;
      if (local) continue;
      bool imported = root_path.size() > 1 ||
                      std::find(require_bound.begin(), require_bound.end(), root) !=
                          require_bound.end() ||
                      global_names.count(root) > 0;
      if (!imported) continue;  // some unrelated object; not class work
      addDiag(&out.diagnostics, CaseKind::OptionalFeature, CaseSeverity::Ugly,
              CaseRemediation::Preserved,
              global_names.count(root) ? root : std::string(),
              "member '" + (member.empty() ? std::string("<dynamic>") : member) +
                  "' added to an imported constructor",
              scope.module, s.begin);
    }
  }

  std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     if (a.module != b.module) return a.module < b.module;
                     return a.offset < b.offset;
                   });
  for (auto& plan : out.setter_lifts) {
    for (std::size_t i = 0; i < out.diagnostics.size(); ++i) {
      const auto& d = out.diagnostics[i];
      if (d.kind == CaseKind::ThisBeforeSuper &&
          d.remediation == CaseRemediation::Applied &&
          d.class_name == plan.class_name && d.module == plan.module) {
        plan.diag_index = i;
      }
    }
  }
  return out;
}

namespace {

bool nameUsedInModule(const SourceModule& mod, std::string_view name) {
  for (const Token& t : mod.tokens) {
    if (t.kind == TokenKind::Identifier && t.text == name) return true;
  }
  return false;
}

void renameRefsInRange(const SourceModule& mod, std::size_t first, std::size_t last,
                       const std::string& from, const std::string& to, int phase,
                       const std::string& cls, std::vector<Splice>* batch,
                       std::size_t skip_first = 0, std::size_t skip_last = 0) {
  for (std::size_t r : findReferences(mod.tokens, first, last, from, false)) {
    if (r >= skip_first && r < skip_last) continue;
    // Plain calls keep going through the wrapper; a renamed class constructor
    // would throw when invoked without new.
    bool called = r + 1 < mod.tokens.size() && isPunct(mod.tokens[r + 1], "(");
    bool constructed = r > 0 && isIdent(mod.tokens[r - 1], "new");
    if (called && !constructed) continue;
    batch->push_back({mod.tokens[r].begin, from, to, phase, cls});
  }
}

}  // namespace

FixPlan planFactoryFixes(const Project& project,
                         const std::vector<ClassModel>& classes,
                         const BlockedSet& blocked) {
  FixPlan plan;
  plan.splices.resize(project.modules.size());
  for (const auto& c : classes) {
    if (blocked.count({c.ctor_loc.module, c.name}) || !c.ctor) continue;
    const SourceModule& mod = project.modules[c.ctor_loc.module];
    auto guard_idx = factoryGuardIndex(mod, c);
    if (!guard_idx) continue;

    std::string fresh = "_" + c.name;
    int counter = 2;
    while (nameUsedInModule(mod, fresh)) fresh = "_" + c.name + std::to_string(counter++);

    auto& batch = plan.splices[c.ctor_loc.module];
    const Stmt& decl = c.ctor_loc.stmt();
    const Stmt& guard = c.ctor->body[*guard_idx];

    // Rename the declaration itself.
    const Token& name_tok = mod.tokens[decl.tok_begin + 1];
    batch.push_back({name_tok.begin, c.name, fresh, kPhaseFixFactory, c.name});

    // Drop the guard from the constructor body.
    std::string_view guard_trivia = guard.trivia(mod.text());
    std::string before(guard_trivia);
    before += guard.text(mod.text());
    batch.push_back({guard.trivia_begin, std::move(before),
                     triviaAfterDeletion(guard_trivia), kPhaseFixFactory, c.name});

    // Internal references follow the rename: constructor body (minus the
    // guard) and every statement the class owns.
    renameRefsInRange(mod, c.ctor->body_tok_begin, c.ctor->body_tok_end, c.name,
                      fresh, kPhaseFixFactory, c.name, &batch, guard.tok_begin,
                      guard.tok_end);
    std::vector<StmtLoc> owned = consumedStmts(c);
    for (const auto& d : c.data_props) owned.push_back(d.loc);
    for (const auto& loc : c.dynamic_accessors) owned.push_back(loc);
    for (const auto& loc : c.ctor_repairs) owned.push_back(loc);
    for (const auto& loc : owned) {
      if (loc.module != c.ctor_loc.module) continue;
      const Stmt& s = loc.stmt();
      renameRefsInRange(mod, s.tok_begin, s.tok_end, c.name, fresh,
                        kPhaseFixFactory, c.name, &batch);
    }

    // Inheritance links of other classes must point at the real constructor,
    // not at the wrapper.
    for (const auto& other : classes) {
      if (&other == &c || !other.has_chain) continue;
      if (other.ctor_loc.module != c.ctor_loc.module) continue;
      if (other.super_name != c.name) continue;
      const Stmt& chain = other.chain_loc.stmt();
      renameRefsInRange(mod, chain.tok_begin, chain.tok_end, c.name, fresh,
                        kPhaseFixFactory, c.name, &batch);
    }

    // Wrapper that keeps both `C()` and `new C()` working.
    std::string_view indent = lineIndentAt(mod.text(), decl.begin);
    const std::string& nl = mod.format.newline;
    std::string guard_text(guard.text(mod.text()));
    {
      auto refs = findReferences(mod.tokens, guard.tok_begin, guard.tok_end,
                                 c.name, false);
      for (auto it = refs.rbegin(); it != refs.rend(); ++it) {
        std::size_t local = mod.tokens[*it].begin - guard.begin;
        guard_text.replace(local, c.name.size(), fresh);
      }
    }
    std::string params(mod.text().substr(c.ctor->params_span.begin,
                                         c.ctor->params_span.size()));
    std::string wrapper = nl + nl;
    wrapper += indent;
    wrapper += "function " + c.name + "(" + params + ") {" + nl;
    wrapper += indent;
    wrapper += mod.format.indent_unit;
    wrapper += guard_text;
    wrapper += nl;
    wrapper += indent;
    wrapper += "}";
    batch.push_back({decl.end, "", std::move(wrapper), kPhaseFixFactory, c.name});

    Diagnostic d;
    d.kind = CaseKind::FactoryConstructor;
    d.severity = CaseSeverity::Bad;
    d.remediation = CaseRemediation::Applied;
    d.class_name = c.name;
    d.detail = "constructor renamed to '" + fresh + "'; wrapper keeps plain calls working";
    d.module = c.ctor_loc.module;
    d.offset = guard.begin;
    plan.diagnostics.push_back(std::move(d));
    plan.renames[{c.ctor_loc.module, c.name}] = fresh;
  }
  return plan;
}

FixPlan planAliasFixes(const Project& project,
                       const std::vector<ClassModel>& classes,
                       const BlockedSet& blocked) {
  FixPlan plan;
  plan.splices.resize(project.modules.size());
  for (const auto& c : classes) {
    if (blocked.count({c.ctor_loc.module, c.name})) continue;
    const SourceModule& mod = project.modules[c.ctor_loc.module];
    const std::string& nl = mod.format.newline;
    for (std::size_t idx = 0; idx < c.ctor_loc.list->size(); ++idx) {
      const Stmt& s = (*c.ctor_loc.list)[idx];
      const auto* al = std::get_if<AliasChainAssign>(&s.pattern);
      if (!al || al->class_name != c.name) continue;

      std::string real = al->methods.back();
      std::string fn_text(mod.text().substr(al->fn.keyword_begin,
                                            al->fn.body_span.end - al->fn.keyword_begin));
      std::string params(mod.text().substr(al->fn.params_span.begin,
                                           al->fn.params_span.size()));
      auto names = paramNames(mod, al->fn);
      std::string args;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) args += ", ";
        args += names[i];
      }
      std::string_view indent = lineIndentAt(mod.text(), s.begin);

      std::string repl = c.name + ".prototype." + real + " = " + fn_text + ";";
      for (std::size_t i = 0; i + 1 < al->methods.size(); ++i) {
        repl += nl;
        repl += indent;
        repl += c.name + ".prototype." + al->methods[i] + " = function(" + params +
                ") { return this." + real + "(" + args + "); };";
      }
      plan.splices[c.ctor_loc.module].push_back(
          {s.begin, std::string(s.text(mod.text())), std::move(repl),
           kPhaseFixAlias, c.name});

      Diagnostic d;
      d.kind = CaseKind::MethodAlias;
      d.severity = CaseSeverity::Bad;
      d.remediation = CaseRemediation::Applied;
      d.class_name = c.name;
      d.detail = "alias chain split; '" + real + "' holds the body";
      d.module = c.ctor_loc.module;
      d.offset = s.begin;
      plan.diagnostics.push_back(std::move(d));
    }
  }
  return plan;
}

FixPlan planHoistingFixes(const Project& project,
                          const std::vector<ClassModel>& classes,
                          const BlockedSet& blocked) {
  FixPlan plan;
  plan.splices.resize(project.modules.size());
  auto class_map = buildClassMap(classes);

  std::map<const ClassModel*, std::size_t> targets;
  std::map<const ClassModel*, std::vector<std::size_t>> splits;
  for (const auto& c : classes) {
    if (blocked.count({c.ctor_loc.module, c.name})) continue;
    HoistScan scan = scanHoisting(project, classes, c);
    if (scan.manual) {
      Diagnostic d;
      d.kind = CaseKind::Hoisting;
      d.severity = CaseSeverity::Bad;
      d.remediation = CaseRemediation::Manual;
      d.class_name = c.name;
      d.detail = scan.manual_reason;
      d.module = c.ctor_loc.module;
      d.offset = scan.manual_offset;
      plan.diagnostics.push_back(std::move(d));
      plan.newly_blocked.insert({c.ctor_loc.module, c.name});
      continue;
    }
    if (scan.has_move) targets[&c] = scan.move_target;
    if (!scan.null_split_vars.empty()) splits[&c] = scan.null_split_vars;
  }

  // A moved subclass drags its superclass chain above the same point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [c, t] : targets) {
      if (c->super_name.empty()) continue;
      auto it = class_map.find({c->ctor_loc.module, c->super_name});
      if (it == class_map.end()) continue;
      const ClassModel* sup = it->second;
      if (sup->ctor_loc.list != c->ctor_loc.list) continue;
      if (blocked.count({sup->ctor_loc.module, sup->name})) continue;
      if (plan.newly_blocked.count({sup->ctor_loc.module, sup->name})) continue;
      if (sup->ctor_loc.index <= t) continue;  // already above
      auto cur = targets.find(sup);
      if (cur == targets.end() || cur->second > t) {
        targets[sup] = t;
        changed = true;
      }
    }
  }

  // Chain depth orders ancestors before descendants at a shared target.
  auto depthOf = [&](const ClassModel* c) {
    int depth = 0;
    const ClassModel* cur = c;
    std::set<const ClassModel*> seen;
    while (!cur->super_name.empty() && seen.insert(cur).second) {
      auto it = class_map.find({cur->ctor_loc.module, cur->super_name});
      if (it == class_map.end()) break;
      cur = it->second;
      depth++;
    }
    return depth;
  };

  std::vector<std::pair<const ClassModel*, std::size_t>> moves(targets.begin(),
                                                               targets.end());
  std::sort(moves.begin(), moves.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    int da = depthOf(a.first), db = depthOf(b.first);
    if (da != db) return da < db;
    return a.first->ctor_loc.index < b.first->ctor_loc.index;
  });

  for (const auto& [c, t] : moves) {
    const SourceModule& mod = project.modules[c->ctor_loc.module];
    const std::string& nl = mod.format.newline;
    auto& batch = plan.splices[c->ctor_loc.module];
    const Stmt& decl = c->ctor_loc.stmt();
    const Stmt& target = (*c->ctor_loc.list)[t];

    std::string_view trivia = decl.trivia(mod.text());
    TriviaSplit split = splitLeadingCommentBlock(trivia, decl.trivia_begin == 0);
    std::string before(trivia);
    before += decl.text(mod.text());
    batch.push_back({decl.trivia_begin, std::move(before),
                     triviaAfterDeletion(split.kept), kPhaseFixHoisting, c->name});

    std::string inserted;
    if (target.trivia_begin == 0) {
      inserted = split.comment_block;
      inserted += decl.text(mod.text());
      inserted += nl;
    } else {
      inserted = nl;
      inserted += split.comment_block;
      inserted += lineIndentAt(mod.text(), target.begin);
      inserted += decl.text(mod.text());
    }
    batch.push_back({target.trivia_begin, "", std::move(inserted),
                     kPhaseFixHoisting, c->name});

    Diagnostic d;
    d.kind = CaseKind::Hoisting;
    d.severity = CaseSeverity::Bad;
    d.remediation = CaseRemediation::Applied;
    d.class_name = c->name;
    d.detail = "declaration moved above its first use";
    d.module = c->ctor_loc.module;
    d.offset = decl.begin;
    plan.diagnostics.push_back(std::move(d));
  }

  for (const auto& [c, vars] : splits) {
    const SourceModule& mod = project.modules[c->ctor_loc.module];
    const std::string& nl = mod.format.newline;
    auto& batch = plan.splices[c->ctor_loc.module];
    const Stmt& decl = c->ctor_loc.stmt();
    auto moved = targets.find(c);
    std::size_t insert_at =
        moved != targets.end()
            ? (*c->ctor_loc.list)[moved->second].trivia_begin  // after the moved text
            : decl.end;
    for (std::size_t v : vars) {
      const Stmt& vs = (*c->ctor_loc.list)[v];
      std::string init(mod.text().substr(vs.var->init_span.begin,
                                         vs.var->init_span.size()));
      batch.push_back({vs.var->init_span.begin, init, "null", kPhaseFixHoisting,
                       c->name});
      std::string assign = nl;
      assign += lineIndentAt(mod.text(), decl.begin);
      assign += vs.var->name + " = " + init + ";";
      batch.push_back({insert_at, "", std::move(assign), kPhaseFixHoisting,
                       c->name});

      Diagnostic d;
      d.kind = CaseKind::Hoisting;
      d.severity = CaseSeverity::Bad;
      d.remediation = CaseRemediation::Applied;
      d.class_name = c->name;
      d.detail = "initialization of '" + vs.var->name + "' split around the declaration";
      d.module = c->ctor_loc.module;
      d.offset = vs.begin;
      plan.diagnostics.push_back(std::move(d));
    }
  }

  return plan;
}

}  // namespace classlift
