#include "dtt/reduce.hpp"

#include <cstdlib>
#include <sstream>

#include "dtt/subst.hpp"

namespace dtt {

std::size_t default_term_fuel() {
  if (const char* env = std::getenv("DTT_FUEL")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultTermFuel;
}

const char* rule_name(Rule r) { return r == Rule::Rec ? "rec" : "corec"; }

std::string to_string(const Path& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

namespace {

// Renames every entry of a telescope to a fresh name.
TermCtx freshen(const TermCtx& ctx, Subst& ren) {
  TermCtx out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) {
    auto ty = subst(e.type, ren);
    auto f = fresh_name(e.name);
    ren.bind(e.name, var(f));
    out.push_back({f, std::move(ty)});
  }
  return out;
}

std::vector<std::string> fresh_names(const TermCtx& ctx) {
  std::vector<std::string> out;
  for (const auto& e : ctx) out.push_back(fresh_name(e.name));
  return out;
}

const TyCtxEntry* find_tyvar(const TyCtx& theta, const std::string& name, std::size_t* pos) {
  for (auto i = theta.size(); i-- > 0;) {
    if (theta[i].name == name) {
      if (pos) *pos = i;
      return &theta[i];
    }
  }
  return nullptr;
}

std::size_t param_count(const Type& c, const TyCtx& theta) {
  switch (c->kind) {
    case TypeKind::Unit:
      return 0;
    case TypeKind::Var: {
      const auto* e = find_tyvar(theta, c->name, nullptr);
      if (!e) throw ActionError("type variable " + c->name + " is not in the action context");
      return e->params.size();
    }
    case TypeKind::Inst: {
      auto n = param_count(c->head, theta);
      if (n == 0) throw ActionError("instantiation of a type without parameters");
      return n - 1;
    }
    case TypeKind::Abs:
      return 1 + param_count(c->body, theta);
    case TypeKind::Fix:
      return c->sig.params.size();
  }
  return 0;
}

bool mentions(const Type& c, const TyCtx& theta) {
  for (const auto& e : theta) {
    if (c->free_type_vars.contains(e.name)) return true;
  }
  return false;
}

Action act(const Type& c, const TyCtx& theta, std::span<const ActionArg> args, const std::string& hole) {
  if (!mentions(c, theta)) {
    // Weakening: the identity on the hole, with placeholder parameter names.
    Action a{var(hole), {}};
    auto n = param_count(c, theta);
    for (std::size_t i = 0; i < n; ++i) a.params.push_back(fresh_name("p"));
    return a;
  }
  switch (c->kind) {
    case TypeKind::Unit:
      break;
    case TypeKind::Var: {
      std::size_t i = 0;
      const auto* e = find_tyvar(theta, c->name, &i);
      if (!e) break;
      return {args[i].term, names_of(e->params)};
    }
    case TypeKind::Inst: {
      auto sp = spine_of(c);
      auto head = act(sp.head, theta, args, hole);
      if (head.params.size() < sp.args.size()) throw ActionError("instantiation spine longer than the parameter context");
      std::vector<std::string> used(head.params.begin(), head.params.begin() + sp.args.size());
      Action out{subst(head.term, Subst(used, sp.args)), {}};
      out.params.assign(head.params.begin() + sp.args.size(), head.params.end());
      return out;
    }
    case TypeKind::Abs: {
      auto y = fresh_name(c->name);
      Subst ren;
      ren.bind(c->name, var(y));
      auto body = act(subst(c->body, ren), theta, args, hole);
      body.params.insert(body.params.begin(), y);
      return body;
    }
    case TypeKind::Fix: {
      const auto& sig = c->sig;
      std::vector<TySubst> to_source;
      std::vector<TySubst> to_target;
      for (std::size_t i = 0; i < theta.size(); ++i) {
        to_source.push_back({theta[i].name, theta[i].params.size(), args[i].source});
        to_target.push_back({theta[i].name, theta[i].params.size(), args[i].target});
      }
      Type r_source = ty_subst(c, to_source);
      Type r_target = ty_subst(c, to_target);
      bool is_mu = c->polarity == Polarity::Mu;
      Type inner_id = is_mu ? r_target : r_source;

      auto binder = fresh_name(sig.binder);
      TyCtx inner_theta = theta;
      inner_theta.push_back({binder, sig.params});
      std::vector<ActionArg> inner_args(args.begin(), args.end());
      inner_args.push_back({var(hole), inner_id, inner_id});

      std::vector<Clause> clauses;
      for (std::size_t k = 0; k < sig.branches.size(); ++k) {
        const auto& br = sig.branches[k];
        Subst lren;
        auto local = freshen(br.local, lren);
        Type d = ty_subst(subst(br.codomain, lren), TySubst{sig.binder, sig.params.size(), ty_var(binder)});
        auto inner = act(d, inner_theta, inner_args, hole);
        auto ids = vars_of(local);
        Term body;
        if (is_mu) {
          body = inst(inst(ctor(k + 1, r_target), ids), inner.term);
        } else {
          Subst s;
          s.bind(hole, inst(inst(dtor(k + 1, r_source), ids), var(hole)));
          body = subst(inner.term, s);
        }
        clauses.push_back({names_of(local), hole, body});
      }
      auto q = fresh_names(sig.params);
      Term elim = is_mu ? rec(r_source, r_target, std::move(clauses)) : corec(r_target, r_source, std::move(clauses));
      return {inst(inst(elim, vars_of(q)), var(hole)), q};
    }
  }
  throw ActionError("type action undefined for this type");
}

struct RedexMatch {
  Rule rule;
  Spine outer;
  Spine inner;
};

std::optional<RedexMatch> match(const Term& t) {
  if (t->kind != TermKind::Inst) return std::nullopt;
  auto outer = spine_of(t);
  const Term& h = outer.head;
  if (h->kind == TermKind::Rec) {
    if (h->fix->kind != TypeKind::Fix || outer.args.size() != h->fix->sig.params.size() + 1) return std::nullopt;
    auto inner = spine_of(outer.args.back());
    const Term& c = inner.head;
    if (c->kind != TermKind::Ctor || c->fix->kind != TypeKind::Fix) return std::nullopt;
    const auto& bs = c->fix->sig.branches;
    if (c->index < 1 || c->index > bs.size()) return std::nullopt;
    if (inner.args.size() != bs[c->index - 1].local.size() + 1) return std::nullopt;
    return RedexMatch{Rule::Rec, std::move(outer), std::move(inner)};
  }
  if (h->kind == TermKind::Dtor) {
    if (h->fix->kind != TypeKind::Fix) return std::nullopt;
    const auto& bs = h->fix->sig.branches;
    if (h->index < 1 || h->index > bs.size()) return std::nullopt;
    if (outer.args.size() != bs[h->index - 1].local.size() + 1) return std::nullopt;
    auto inner = spine_of(outer.args.back());
    const Term& c = inner.head;
    if (c->kind != TermKind::Corec || c->fix->kind != TypeKind::Fix) return std::nullopt;
    if (inner.args.size() != c->fix->sig.params.size() + 1) return std::nullopt;
    return RedexMatch{Rule::Corec, std::move(outer), std::move(inner)};
  }
  return std::nullopt;
}

Term contract_rec(const RedexMatch& m) {
  const Term& r = m.outer.head;
  const Term& c = m.inner.head;
  const auto& sig = r->fix->sig;
  auto k = c->index;
  if (k > r->clauses.size() || k > sig.branches.size()) {
    throw MalformedRedex("constructor " + std::to_string(k) + " has no matching clause among " +
                         std::to_string(r->clauses.size()));
  }
  const auto& br = sig.branches[k - 1];
  const auto& cl = r->clauses[k - 1];
  auto n_local = m.inner.args.size() - 1;
  if (br.local.size() != n_local || cl.params.size() != n_local) {
    throw MalformedRedex("constructor arity does not match clause " + std::to_string(k));
  }
  std::span<const Term> tau(m.inner.args.data(), n_local);
  const Term& u = m.inner.args.back();

  Subst pren;
  auto p = freshen(sig.params, pren);
  auto hole = fresh_name("x");
  TyCtx theta{{sig.binder, p}};
  Subst lren;
  auto local = freshen(br.local, lren);
  ActionArg arg{inst(inst(r, vars_of(p)), var(hole)), r->fix, r->motive};
  auto a = act(subst(br.codomain, lren), theta, std::span<const ActionArg>(&arg, 1), hole);

  Subst s1(names_of(local), tau);
  s1.bind(hole, u);
  Subst s2(cl.params, tau);
  s2.bind(cl.recvar, subst(a.term, s1));
  return subst(cl.body, s2);
}

Term contract_corec(const RedexMatch& m) {
  const Term& d = m.outer.head;
  const Term& c = m.inner.head;
  const auto& sig = c->fix->sig;
  auto k = d->index;
  if (k > c->clauses.size() || k > sig.branches.size()) {
    throw MalformedRedex("destructor " + std::to_string(k) + " has no matching clause among " +
                         std::to_string(c->clauses.size()));
  }
  const auto& br = sig.branches[k - 1];
  const auto& cl = c->clauses[k - 1];
  auto n_local = m.outer.args.size() - 1;
  if (br.local.size() != n_local || cl.params.size() != n_local) {
    throw MalformedRedex("destructor arity does not match clause " + std::to_string(k));
  }
  std::span<const Term> tau(m.outer.args.data(), n_local);
  const Term& u = m.inner.args.back();

  Subst pren;
  auto p = freshen(sig.params, pren);
  auto hole = fresh_name("x");
  TyCtx theta{{sig.binder, p}};
  Subst lren;
  auto local = freshen(br.local, lren);
  ActionArg arg{inst(inst(c, vars_of(p)), var(hole)), c->motive, c->fix};
  auto a = act(subst(br.codomain, lren), theta, std::span<const ActionArg>(&arg, 1), hole);

  Subst s1(cl.params, tau);
  s1.bind(cl.recvar, u);
  Subst s2(names_of(local), tau);
  s2.bind(hole, subst(cl.body, s1));
  return subst(a.term, s2);
}

Term with_clause(const Term& t, std::size_t i, Term body) {
  auto clauses = t->clauses;
  clauses[i].body = std::move(body);
  return t->kind == TermKind::Rec ? rec(t->fix, t->motive, std::move(clauses))
                                  : corec(t->fix, t->motive, std::move(clauses));
}

std::optional<Step> step_at(const Term& t, Path& path) {
  if (auto m = match(t)) {
    auto result = m->rule == Rule::Rec ? contract_rec(*m) : contract_corec(*m);
    return Step{path, m->rule, std::move(result)};
  }
  switch (t->kind) {
    case TermKind::Inst: {
      path.push_back(0);
      if (auto s = step_at(t->head, path)) {
        s->result = inst(s->result, t->arg);
        return s;
      }
      path.back() = 1;
      if (auto s = step_at(t->arg, path)) {
        s->result = inst(t->head, s->result);
        return s;
      }
      path.pop_back();
      return std::nullopt;
    }
    case TermKind::Rec:
    case TermKind::Corec:
      for (std::size_t i = 0; i < t->clauses.size(); ++i) {
        path.push_back(i);
        if (auto s = step_at(t->clauses[i].body, path)) {
          s->result = with_clause(t, i, s->result);
          return s;
        }
        path.pop_back();
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

void collect_redexes(const Term& t, Path& path, std::vector<Path>& out) {
  if (match(t)) out.push_back(path);
  switch (t->kind) {
    case TermKind::Inst:
      path.push_back(0);
      collect_redexes(t->head, path, out);
      path.back() = 1;
      collect_redexes(t->arg, path, out);
      path.pop_back();
      return;
    case TermKind::Rec:
    case TermKind::Corec:
      for (std::size_t i = 0; i < t->clauses.size(); ++i) {
        path.push_back(i);
        collect_redexes(t->clauses[i].body, path, out);
        path.pop_back();
      }
      return;
    default:
      return;
  }
}

Term contract_path(const Term& t, const Path& p, std::size_t depth, Rule& rule) {
  if (depth == p.size()) {
    auto m = match(t);
    if (!m) throw std::invalid_argument("no redex at path " + to_string(p));
    rule = m->rule;
    return m->rule == Rule::Rec ? contract_rec(*m) : contract_corec(*m);
  }
  auto i = p[depth];
  if (t->kind == TermKind::Inst && i <= 1) {
    if (i == 0) return inst(contract_path(t->head, p, depth + 1, rule), t->arg);
    return inst(t->head, contract_path(t->arg, p, depth + 1, rule));
  }
  if ((t->kind == TermKind::Rec || t->kind == TermKind::Corec) && i < t->clauses.size()) {
    return with_clause(t, i, contract_path(t->clauses[i].body, p, depth + 1, rule));
  }
  throw std::invalid_argument("invalid path " + to_string(p));
}

Type with_sig(const Type& t, Signature sig) { return fix_ty(t->polarity, std::move(sig)); }

}  // namespace

Action ty_action(const Type& c, const TyCtx& theta, std::span<const ActionArg> args, const std::string& hole) {
  if (theta.size() != args.size()) throw ActionError("one action argument is needed per type variable");
  return act(c, theta, args, hole);
}

std::optional<Rule> redex_rule(const Term& t) {
  auto m = match(t);
  if (!m) return std::nullopt;
  return m->rule;
}

std::optional<Term> contract(const Term& t) {
  auto m = match(t);
  if (!m) return std::nullopt;
  return m->rule == Rule::Rec ? contract_rec(*m) : contract_corec(*m);
}

std::optional<Step> step(const Term& t) {
  Path path;
  return step_at(t, path);
}

std::vector<Path> redexes(const Term& t) {
  std::vector<Path> out;
  Path path;
  collect_redexes(t, path, out);
  return out;
}

Step contract_at(const Term& t, const Path& p) {
  Rule rule = Rule::Rec;
  auto result = contract_path(t, p, 0, rule);
  return {p, rule, std::move(result)};
}

Normalized normalize(const Term& t, std::size_t fuel) {
  Normalized out{t, {t, {}, 0}};
  while (auto s = step(out.term)) {
    if (out.trace.steps.size() == fuel) {
      out.trace.fuel_used = fuel;
      throw FuelExhausted("term fuel exhausted after " + std::to_string(fuel) + " steps", std::move(out.trace));
    }
    out.term = s->result;
    out.trace.steps.push_back(std::move(*s));
  }
  out.trace.fuel_used = out.trace.steps.size();
  return out;
}

std::optional<Type> ty_step(const Type& t) {
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Var:
      return std::nullopt;
    case TypeKind::Inst: {
      if (t->head->kind == TypeKind::Abs) {
        Subst s;
        s.bind(t->head->name, t->arg);
        return subst(t->head->body, s);
      }
      if (auto h = ty_step(t->head)) return ty_inst(*h, t->arg);
      if (auto a = step(t->arg)) return ty_inst(t->head, a->result);
      return std::nullopt;
    }
    case TypeKind::Abs:
      if (auto d = ty_step(t->domain)) return ty_abs(t->name, *d, t->body);
      if (auto b = ty_step(t->body)) return ty_abs(t->name, t->domain, *b);
      return std::nullopt;
    case TypeKind::Fix: {
      const auto& sig = t->sig;
      for (std::size_t i = 0; i < sig.params.size(); ++i) {
        if (auto r = ty_step(sig.params[i].type)) {
          auto s = sig;
          s.params[i].type = *r;
          return with_sig(t, std::move(s));
        }
      }
      for (std::size_t k = 0; k < sig.branches.size(); ++k) {
        const auto& b = sig.branches[k];
        for (std::size_t i = 0; i < b.local.size(); ++i) {
          if (auto r = ty_step(b.local[i].type)) {
            auto s = sig;
            s.branches[k].local[i].type = *r;
            return with_sig(t, std::move(s));
          }
        }
        for (std::size_t i = 0; i < b.index.size(); ++i) {
          if (auto r = step(b.index[i])) {
            auto s = sig;
            s.branches[k].index[i] = r->result;
            return with_sig(t, std::move(s));
          }
        }
        if (auto r = ty_step(b.codomain)) {
          auto s = sig;
          s.branches[k].codomain = *r;
          return with_sig(t, std::move(s));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Type ty_normalize(const Type& t, std::size_t fuel) {
  Type cur = t;
  for (std::size_t n = 0;; ++n) {
    auto next = ty_step(cur);
    if (!next) return cur;
    if (n == fuel) {
      throw FuelExhausted("type fuel exhausted after " + std::to_string(fuel) + " steps", ReductionTrace{});
    }
    cur = *next;
  }
}

bool convertible(const Type& a, const Type& b, std::size_t fuel) {
  if (alpha_eq(a, b)) return true;
  return alpha_eq(ty_normalize(a, fuel), ty_normalize(b, fuel));
}

}  // namespace dtt
