#include "classlift/detector.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace classlift {

namespace {

void collectScopesIn(int module, const std::vector<Stmt>& list,
                     std::vector<Scope>* out) {
  out->push_back({module, &list});
  for (const Stmt& s : list) {
    std::vector<const FunctionInfo*> fns;
    if (s.fn) fns.push_back(&*s.fn);
    if (s.var && s.var->fn) fns.push_back(&*s.var->fn);
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ThisPropAssign> ||
                        std::is_same_v<T, CtorPropAssign> ||
                        std::is_same_v<T, AccessorDefine>) {
            if (p.fn) fns.push_back(&*p.fn);
          } else if constexpr (std::is_same_v<T, ProtoMethodAssign> ||
                               std::is_same_v<T, AliasChainAssign> ||
                               std::is_same_v<T, IifeStmt>) {
            fns.push_back(&p.fn);
          }
        },
        s.pattern);
    for (const FunctionInfo* f : fns) collectScopesIn(module, f->body, out);
  }
}

// Instantiated names: every `new <Identifier>` in the token stream.
void collectInstantiations(const SourceModule& mod, std::set<std::string>* out) {
  const auto& toks = mod.tokens;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (isIdent(toks[i], "new") && toks[i + 1].kind == TokenKind::Identifier &&
        !isKeyword(toks[i + 1].text)) {
      out->insert(std::string(toks[i + 1].text));
    }
  }
}

// Names bound inside [first, last) by var/let/const declarators, function
// declarations, and catch clauses. Nested function bodies are skipped; their
// bindings are not visible to siblings.
std::set<std::string> collectBindings(const std::vector<Token>& toks,
                                      std::size_t first, std::size_t last) {
  std::set<std::string> names;
  bool decl_mode = false;
  int decl_depth = 0;
  int depth = 0;
  bool take_next = false;
  for (std::size_t i = first; i < last; ++i) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::Punct) {
      if (t.text == "(" || t.text == "[" || t.text == "{") depth++;
      if (t.text == ")" || t.text == "]" || t.text == "}") depth--;
      if (decl_mode && t.text == ";" && depth <= decl_depth) decl_mode = false;
      if (decl_mode && t.text == "," && depth == decl_depth) take_next = true;
      continue;
    }
    if (t.kind != TokenKind::Identifier) continue;
    if (t.text == "function") {
      // `function name? (…) { … }` — bind the name, skip the body.
      std::size_t j = i + 1;
      if (j < last && toks[j].kind == TokenKind::Identifier &&
          !isKeyword(toks[j].text)) {
        names.insert(std::string(toks[j].text));
        ++j;
      }
      int d = 0;
      bool entered = false;
      for (; j < last; ++j) {
        if (isPunct(toks[j], "(") || isPunct(toks[j], "{") || isPunct(toks[j], "[")) {
          d++;
          entered = entered || toks[j].text == "{";
        } else if (isPunct(toks[j], ")") || isPunct(toks[j], "}") ||
                   isPunct(toks[j], "]")) {
          d--;
          if (d == 0 && entered) break;
        }
      }
      i = j;
      continue;
    }
    if (t.text == "var" || t.text == "let" || t.text == "const") {
      decl_mode = true;
      decl_depth = depth;
      take_next = true;
      continue;
    }
    if (t.text == "catch") {
      if (i + 2 < last && isPunct(toks[i + 1], "(") &&
          toks[i + 2].kind == TokenKind::Identifier) {
        names.insert(std::string(toks[i + 2].text));
      }
      continue;
    }
    if (decl_mode && take_next && !isKeyword(t.text)) {
      names.insert(std::string(t.text));
      take_next = false;
    }
  }
  return names;
}

std::set<std::string> identifiersInSpan(const std::vector<Token>& toks,
                                        std::size_t first, std::size_t last) {
  std::set<std::string> names;
  for (std::size_t i = first; i < last; ++i) {
    if (toks[i].kind == TokenKind::Identifier && !isKeyword(toks[i].text)) {
      names.insert(std::string(toks[i].text));
    }
  }
  return names;
}

// Token window of the parameter list of `fn` (inside the parens).
std::pair<std::size_t, std::size_t> paramTokenWindow(const SourceModule& mod,
                                                     const FunctionInfo& fn) {
  std::size_t first = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < mod.tokens.size(); ++i) {
    const Token& t = mod.tokens[i];
    if (t.begin >= fn.params_span.begin && t.end <= fn.params_span.end) {
      if (first == last) first = i;
      last = i + 1;
    }
    if (t.begin >= fn.params_span.end) break;
  }
  return {first, last};
}

bool capturesScope(const SourceModule& mod, const FunctionInfo& ctor,
                   const FunctionInfo& inner) {
  std::set<std::string> bindings =
      collectBindings(mod.tokens, ctor.body_tok_begin, ctor.body_tok_end);
  auto [pf, pl] = paramTokenWindow(mod, ctor);
  for (const auto& n : identifiersInSpan(mod.tokens, pf, pl)) bindings.insert(n);

  // Names the inner function rebinds locally resolve to its own scope.
  auto [ipf, ipl] = paramTokenWindow(mod, inner);
  for (const auto& n : identifiersInSpan(mod.tokens, ipf, ipl)) bindings.erase(n);
  for (const auto& n :
       collectBindings(mod.tokens, inner.body_tok_begin, inner.body_tok_end)) {
    bindings.erase(n);
  }

  for (const auto& name : bindings) {
    if (!findReferences(mod.tokens, inner.body_tok_begin, inner.body_tok_end,
                        name, false)
             .empty()) {
      return true;
    }
  }
  return false;
}

// A statement window holding exactly one identifier token equal to `name`.
bool valueIsIdent(const SourceModule& mod, ByteSpan span, std::string_view name) {
  std::string_view text = mod.text().substr(span.begin, span.size());
  bool ok = false;
  auto toks = tokenStream(text, &ok);
  return ok && toks.size() == 1 && toks[0] == name;
}

struct PendingMember {
  int module = -1;
  StmtLoc loc;
  std::string target;  // class name referenced
  std::string root;    // first path segment (import check)
  enum Kind { Method, DataProp, Dynamic, Accessor } kind = Method;
  // Method/Accessor payload
  std::string name;
  MethodIdiom idiom = MethodIdiom::Prototype;
  const FunctionInfo* fn = nullptr;
};

}  // namespace

std::vector<Scope> collectScopes(const Project& project) {
  std::vector<Scope> scopes;
  for (std::size_t m = 0; m < project.modules.size(); ++m) {
    collectScopesIn(static_cast<int>(m), project.modules[m].statements, &scopes);
  }
  return scopes;
}

bool matchInstanceofGuard(const SourceModule& mod, const Stmt& stmt,
                          std::string* name) {
  const auto& toks = mod.tokens;
  std::size_t i = stmt.tok_begin;
  std::size_t end = stmt.tok_end;
  if (end > i && isPunct(toks[end - 1], ";")) --end;
  // if ( ! ( this instanceof N ) )
  if (end - i < 13) return false;
  if (!isIdent(toks[i], "if") || !isPunct(toks[i + 1], "(") ||
      !isPunct(toks[i + 2], "!") || !isPunct(toks[i + 3], "(") ||
      !isIdent(toks[i + 4], "this") || !isIdent(toks[i + 5], "instanceof") ||
      toks[i + 6].kind != TokenKind::Identifier || !isPunct(toks[i + 7], ")") ||
      !isPunct(toks[i + 8], ")")) {
    return false;
  }
  std::string_view guard_name = toks[i + 6].text;
  std::size_t j = i + 9;
  // return new N ( ... ) — optionally inside { ... }
  bool braced = isPunct(toks[j], "{");
  if (braced) ++j;
  if (end - j < 5) return false;
  if (!isIdent(toks[j], "return") || !isIdent(toks[j + 1], "new") ||
      !isIdent(toks[j + 2], guard_name) || !isPunct(toks[j + 3], "(")) {
    return false;
  }
  int depth = 0;
  std::size_t k = j + 3;
  for (; k < end; ++k) {
    if (isPunct(toks[k], "(")) depth++;
    if (isPunct(toks[k], ")") && --depth == 0) break;
  }
  if (depth != 0) return false;
  ++k;
  if (k < end && isPunct(toks[k], ";")) ++k;
  if (braced) {
    if (k >= end || !isPunct(toks[k], "}")) return false;
    ++k;
  }
  if (k != end) return false;
  if (name) *name = std::string(guard_name);
  return true;
}

std::vector<std::string> requireBoundNames(const SourceModule& mod) {
  std::vector<std::string> names;
  for (const Stmt& s : mod.statements) {
    if (s.kind == StmtKind::VarDecl && s.var->init_kind == VarInitKind::Require) {
      names.push_back(s.var->name);
    }
  }
  return names;
}

std::vector<ClassModel> detect(const Project& project) {
  std::set<std::string> instantiated;
  for (const auto& mod : project.modules) collectInstantiations(mod, &instantiated);

  std::vector<ClassModel> classes;
  std::vector<PendingMember> pending;
  std::map<std::string, std::vector<std::size_t>> by_name;

  auto scopes = collectScopes(project);
  for (const Scope& scope : scopes) {
    const SourceModule& mod = project.modules[scope.module];
    const std::vector<Stmt>& list = *scope.list;
    bool is_root = (&list == &mod.statements);

    // Constructor candidates: last declaration of each name wins.
    std::map<std::string, std::size_t> decls;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Stmt& s = list[i];
      if (s.kind != StmtKind::FunctionDecl) continue;
      if (s.fn->body.size() == 1) {
        std::string guard;
        if (matchInstanceofGuard(mod, s.fn->body[0], &guard) &&
            guard != s.fn->name) {
          continue;  // factory wrapper, not a class
        }
      }
      decls[s.fn->name] = i;
    }

    struct Member {
      std::size_t index;
      enum Kind { Method, Alias, DataProp, Dynamic, Repair, Chain } kind;
    };
    std::map<std::string, std::vector<Member>> members;
    auto localTarget = [&](const std::vector<std::string>& path) -> std::string {
      if (path.size() == 1 && decls.count(path[0])) return path[0];
      return "";
    };

    for (std::size_t i = 0; i < list.size(); ++i) {
      const Stmt& s = list[i];
      if (s.kind != StmtKind::ExprStmt) continue;
      StmtLoc loc{scope.module, &list, i};
      std::visit(
          [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ProtoMethodAssign>) {
              std::string t = localTarget(p.class_path);
              if (!t.empty()) {
                members[t].push_back({i, Member::Method});
              } else if (is_root) {
                PendingMember pm;
                pm.module = scope.module;
                pm.loc = loc;
                pm.target = p.class_path.size() == 1 ? p.class_path[0] : "";
                pm.root = p.class_path[0];
                pm.kind = PendingMember::Method;
                pm.name = p.method;
                pm.idiom = MethodIdiom::Prototype;
                pm.fn = &p.fn;
                pending.push_back(std::move(pm));
              }
            } else if constexpr (std::is_same_v<T, AliasChainAssign>) {
              if (decls.count(p.class_name)) {
                members[p.class_name].push_back({i, Member::Alias});
              }
            } else if constexpr (std::is_same_v<T, ProtoPropAssign>) {
              std::string t = localTarget(p.class_path);
              if (!t.empty()) {
                bool repair = p.prop == "constructor" &&
                              valueIsIdent(mod, p.value_span, t);
                members[t].push_back({i, repair ? Member::Repair : Member::DataProp});
              } else if (is_root && p.prop != "constructor") {
                PendingMember pm;
                pm.module = scope.module;
                pm.loc = loc;
                pm.target = p.class_path.size() == 1 ? p.class_path[0] : "";
                pm.root = p.class_path[0];
                pm.kind = PendingMember::DataProp;
                pm.name = p.prop;
                pending.push_back(std::move(pm));
              }
            } else if constexpr (std::is_same_v<T, CtorPropAssign>) {
              if (decls.count(p.class_name)) {
                members[p.class_name].push_back(
                    {i, p.is_function ? Member::Method : Member::DataProp});
              }
            } else if constexpr (std::is_same_v<T, ProtoChainAssign>) {
              if (decls.count(p.class_name)) {
                members[p.class_name].push_back({i, Member::Chain});
              }
            } else if constexpr (std::is_same_v<T, AccessorDefine>) {
              if (decls.count(p.class_name)) {
                members[p.class_name].push_back(
                    {i, p.literal_name && p.fn ? Member::Method : Member::Dynamic});
              }
            }
          },
          s.pattern);
    }

    for (const auto& [name, decl_index] : decls) {
      const Stmt& decl = list[decl_index];
      bool has_this_prop = false;
      for (const Stmt& b : decl.fn->body) {
        if (std::get_if<ThisPropAssign>(&b.pattern)) has_this_prop = true;
      }
      bool owns_proto = false;
      for (const Member& m : members[name]) {
        if (list[m.index].kind == StmtKind::ExprStmt) {
          // CtorProp statements alone do not qualify a namespace as a class.
          bool ctor_prop =
              std::get_if<CtorPropAssign>(&list[m.index].pattern) != nullptr;
          if (!ctor_prop) owns_proto = true;
        }
      }
      bool is_new = instantiated.count(name) > 0;
      if (!is_new && !has_this_prop && !owns_proto) continue;

      ClassModel c;
      c.name = name;
      c.ctor_loc = {scope.module, &list, decl_index};
      c.ctor = &*decl.fn;
      c.instantiated = is_new;

      // InnerThis methods and attributes from the constructor body.
      std::set<std::string> attr_seen;
      for (std::size_t bi = 0; bi < decl.fn->body.size(); ++bi) {
        const Stmt& b = decl.fn->body[bi];
        const auto* tp = std::get_if<ThisPropAssign>(&b.pattern);
        if (!tp) continue;
        StmtLoc loc{scope.module, &decl.fn->body, bi};
        if (tp->is_function) {
          MethodModel mm;
          mm.name = tp->prop;
          mm.idiom = MethodIdiom::InnerThis;
          mm.loc = loc;
          mm.fn = &*tp->fn;
          mm.captures_ctor_scope = capturesScope(mod, *decl.fn, *tp->fn);
          c.methods.push_back(std::move(mm));
        } else if (attr_seen.insert(tp->prop).second) {
          c.attributes.push_back({tp->prop, loc});
        }
      }

      for (const Member& m : members[name]) {
        const Stmt& s = list[m.index];
        StmtLoc loc{scope.module, &list, m.index};
        switch (m.kind) {
          case Member::Method: {
            if (const auto* pm = std::get_if<ProtoMethodAssign>(&s.pattern)) {
              c.methods.push_back(
                  {pm->method, MethodIdiom::Prototype, false, loc, &pm->fn});
            } else if (const auto* cp = std::get_if<CtorPropAssign>(&s.pattern)) {
              c.methods.push_back(
                  {cp->prop, MethodIdiom::CtorProp, true, loc, &*cp->fn});
            } else if (const auto* ad = std::get_if<AccessorDefine>(&s.pattern)) {
              c.methods.push_back({ad->name,
                                   ad->is_getter ? MethodIdiom::Getter
                                                 : MethodIdiom::Setter,
                                   false, loc, &*ad->fn});
            }
            break;
          }
          case Member::Alias: {
            const auto& al = std::get<AliasChainAssign>(s.pattern);
            for (const std::string& mn : al.methods) {
              c.methods.push_back(
                  {mn, MethodIdiom::Prototype, false, loc, &al.fn});
            }
            std::vector<std::string> others(al.methods.begin(),
                                            al.methods.end() - 1);
            c.alias_groups.emplace_back(al.methods.back(), std::move(others));
            break;
          }
          case Member::DataProp: {
            if (const auto* pp = std::get_if<ProtoPropAssign>(&s.pattern)) {
              c.data_props.push_back({pp->prop, loc, true});
            } else if (const auto* cp = std::get_if<CtorPropAssign>(&s.pattern)) {
              c.data_props.push_back({cp->prop, loc, false});
            }
            break;
          }
          case Member::Dynamic:
            c.dynamic_accessors.push_back(loc);
            break;
          case Member::Repair:
            c.ctor_repairs.push_back(loc);
            break;
          case Member::Chain: {
            const auto& ch = std::get<ProtoChainAssign>(s.pattern);
            c.super_name = ch.super_name;
            c.chain_loc = loc;
            c.has_chain = true;
            break;
          }
        }
      }

      by_name[c.name].push_back(classes.size());
      classes.push_back(std::move(c));
    }
  }

  // Cross-module members: attach only for globally unique, non-import names.
  for (const PendingMember& pm : pending) {
    if (pm.target.empty()) continue;
    auto reqs = requireBoundNames(project.modules[pm.module]);
    if (std::find(reqs.begin(), reqs.end(), pm.root) != reqs.end()) continue;
    auto it = by_name.find(pm.target);
    if (it == by_name.end() || it->second.size() != 1) continue;
    ClassModel& c = classes[it->second[0]];
    if (c.ctor_loc.module == pm.module) continue;
    if (pm.kind == PendingMember::Method) {
      MethodModel mm{pm.name, pm.idiom, false, pm.loc, pm.fn};
      mm.remote = true;
      c.methods.push_back(std::move(mm));
    } else if (pm.kind == PendingMember::DataProp) {
      c.data_props.push_back({pm.name, pm.loc, true});
    }
  }

  // Deterministic order: by module, then constructor position.
  std::sort(classes.begin(), classes.end(),
            [](const ClassModel& a, const ClassModel& b) {
              if (a.ctor_loc.module != b.ctor_loc.module)
                return a.ctor_loc.module < b.ctor_loc.module;
              return a.ctor_loc.stmt().begin < b.ctor_loc.stmt().begin;
            });
  return classes;
}

ClassMetrics metrics(const std::vector<ClassModel>& classes,
                     const Project& project) {
  ClassMetrics m;
  m.noc = classes.size();
  for (const auto& mod : project.modules) {
    if (!mod.tokens.empty()) {
      m.total_functions += countFunctionLiterals(mod.tokens, 0, mod.tokens.size() - 1);
    }
  }
  std::set<std::pair<int, std::size_t>> related;
  for (const ClassModel& c : classes) {
    m.nom += c.methods.size();
    related.insert({c.ctor_loc.module, c.ctor->keyword_begin});
    for (const MethodModel& mm : c.methods) {
      if (mm.fn) related.insert({mm.loc.module, mm.fn->keyword_begin});
    }
  }
  m.class_functions = related.size();
  m.class_density =
      m.total_functions ? double(m.class_functions) / double(m.total_functions) : 0.0;
  return m;
}

}  // namespace classlift
