#include "dtt/syntax.hpp"

#include <algorithm>
#include <utility>

namespace dtt {
namespace {

NameSet telescope_free_vars(const TermCtx& ctx, NameSet& bound) {
  NameSet out;
  for (const auto& e : ctx) {
    for (const auto& n : e.type->free_vars) {
      if (!bound.contains(n)) out.insert(n);
    }
    bound.insert(e.name);
  }
  return out;
}

void add_unbound(NameSet& out, const NameSet& from, const NameSet& bound) {
  for (const auto& n : from) {
    if (!bound.contains(n)) out.insert(n);
  }
}

std::shared_ptr<TermNode> term_node(TermKind kind) {
  auto n = std::make_shared<TermNode>();
  n->kind = kind;
  return n;
}

std::shared_ptr<TypeNode> type_node(TypeKind kind) {
  auto n = std::make_shared<TypeNode>();
  n->kind = kind;
  return n;
}

Term make_eliminator(TermKind kind, Type fix, Type motive, std::vector<Clause> clauses) {
  if (!fix || !motive) throw SyntaxError("(co)recursor needs a signature and a motive");
  auto n = term_node(kind);
  n->free_vars = fix->free_vars;
  n->free_vars.merge(motive->free_vars);
  n->free_type_vars = fix->free_type_vars;
  n->free_type_vars.merge(motive->free_type_vars);
  for (const auto& c : clauses) {
    NameSet bound(std::initializer_list<std::string>{});
    for (const auto& p : c.params) bound.insert(p);
    bound.insert(c.recvar);
    add_unbound(n->free_vars, c.body->free_vars, bound);
    n->free_type_vars.merge(c.body->free_type_vars);
  }
  n->fix = std::move(fix);
  n->motive = std::move(motive);
  n->clauses = std::move(clauses);
  return n;
}

}  // namespace

Term unit_val() {
  static const Term u = term_node(TermKind::Unit);
  return u;
}

Term var(std::string name) {
  auto n = term_node(TermKind::Var);
  n->free_vars.insert(name);
  n->name = std::move(name);
  return n;
}

Term inst(Term head, Term arg) {
  auto n = term_node(TermKind::Inst);
  n->free_vars = head->free_vars;
  n->free_vars.merge(arg->free_vars);
  n->free_type_vars = head->free_type_vars;
  n->free_type_vars.merge(arg->free_type_vars);
  n->head = std::move(head);
  n->arg = std::move(arg);
  return n;
}

Term inst(Term head, std::span<const Term> args) {
  for (const auto& a : args) head = inst(std::move(head), a);
  return head;
}

Term ctor(std::size_t k, Type fix) {
  auto n = term_node(TermKind::Ctor);
  n->index = k;
  n->free_vars = fix->free_vars;
  n->free_type_vars = fix->free_type_vars;
  n->fix = std::move(fix);
  return n;
}

Term dtor(std::size_t k, Type fix) {
  auto n = term_node(TermKind::Dtor);
  n->index = k;
  n->free_vars = fix->free_vars;
  n->free_type_vars = fix->free_type_vars;
  n->fix = std::move(fix);
  return n;
}

Term rec(Type fix, Type motive, std::vector<Clause> clauses) {
  return make_eliminator(TermKind::Rec, std::move(fix), std::move(motive), std::move(clauses));
}

Term corec(Type fix, Type motive, std::vector<Clause> clauses) {
  return make_eliminator(TermKind::Corec, std::move(fix), std::move(motive), std::move(clauses));
}

Type unit_ty() {
  static const Type u = type_node(TypeKind::Unit);
  return u;
}

Type ty_var(std::string name) {
  auto n = type_node(TypeKind::Var);
  n->free_type_vars.insert(name);
  n->name = std::move(name);
  return n;
}

Type ty_inst(Type head, Term arg) {
  auto n = type_node(TypeKind::Inst);
  n->free_vars = head->free_vars;
  n->free_vars.merge(arg->free_vars);
  n->free_type_vars = head->free_type_vars;
  n->free_type_vars.merge(arg->free_type_vars);
  n->head = std::move(head);
  n->arg = std::move(arg);
  return n;
}

Type ty_inst(Type head, std::span<const Term> args) {
  for (const auto& a : args) head = ty_inst(std::move(head), a);
  return head;
}

Type ty_abs(std::string name, Type domain, Type body) {
  if (!domain) throw SyntaxError("parameter abstraction without a domain");
  auto n = type_node(TypeKind::Abs);
  n->free_vars = domain->free_vars;
  add_unbound(n->free_vars, body->free_vars, NameSet{name});
  n->free_type_vars = domain->free_type_vars;
  n->free_type_vars.merge(body->free_type_vars);
  n->name = std::move(name);
  n->domain = std::move(domain);
  n->body = std::move(body);
  return n;
}

Type fix_ty(Polarity polarity, Signature sig) {
  auto n = type_node(TypeKind::Fix);
  n->polarity = polarity;
  NameSet bound;
  n->free_vars = telescope_free_vars(sig.params, bound);
  for (const auto& e : sig.params) n->free_type_vars.merge(e.type->free_type_vars);
  for (const auto& b : sig.branches) {
    NameSet local;
    n->free_vars.merge(telescope_free_vars(b.local, local));
    for (const auto& e : b.local) n->free_type_vars.merge(e.type->free_type_vars);
    for (const auto& t : b.index) {
      add_unbound(n->free_vars, t->free_vars, local);
      n->free_type_vars.merge(t->free_type_vars);
    }
    add_unbound(n->free_vars, b.codomain->free_vars, local);
    add_unbound(n->free_type_vars, b.codomain->free_type_vars, NameSet{sig.binder});
  }
  n->sig = std::move(sig);
  return n;
}

Type mu(Signature sig) { return fix_ty(Polarity::Mu, std::move(sig)); }
Type nu(Signature sig) { return fix_ty(Polarity::Nu, std::move(sig)); }

Type abstract_over(const TermCtx& ctx, Type body) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) body = ty_abs(it->name, it->type, body);
  return body;
}

Spine spine_of(const Term& t) {
  Spine s;
  Term cur = t;
  while (cur->kind == TermKind::Inst) {
    s.args.push_back(cur->arg);
    cur = cur->head;
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

TySpine spine_of(const Type& t) {
  TySpine s;
  Type cur = t;
  while (cur->kind == TypeKind::Inst) {
    s.args.push_back(cur->arg);
    cur = cur->head;
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

std::vector<std::string> names_of(const TermCtx& ctx) {
  std::vector<std::string> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.name);
  return out;
}

std::vector<Term> vars_of(const TermCtx& ctx) {
  std::vector<Term> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(var(e.name));
  return out;
}

std::vector<Term> vars_of(const std::vector<std::string>& names) {
  std::vector<Term> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(var(n));
  return out;
}

CtxMor identity_ctx_mor(const TermCtx& ctx) { return {ctx, ctx, vars_of(ctx)}; }

namespace {

// Binder stacks pairing left and right names; a variable matches when both
// sides resolve to the same binding depth, or both are free and equal.
class Alpha {
 public:
  bool term(const Term& a, const Term& b) {
    if (a == b && closed_under(a->free_vars, terms_) && closed_under(a->free_type_vars, types_)) {
      return true;
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case TermKind::Unit:
        return true;
      case TermKind::Var:
        return same(terms_, a->name, b->name);
      case TermKind::Inst:
        return term(a->head, b->head) && term(a->arg, b->arg);
      case TermKind::Ctor:
      case TermKind::Dtor:
        return a->index == b->index && type(a->fix, b->fix);
      case TermKind::Rec:
      case TermKind::Corec: {
        if (!type(a->fix, b->fix) || !type(a->motive, b->motive)) return false;
        if (a->clauses.size() != b->clauses.size()) return false;
        for (std::size_t i = 0; i < a->clauses.size(); ++i) {
          const auto& ca = a->clauses[i];
          const auto& cb = b->clauses[i];
          if (ca.params.size() != cb.params.size()) return false;
          auto mark = terms_.size();
          for (std::size_t j = 0; j < ca.params.size(); ++j) terms_.emplace_back(ca.params[j], cb.params[j]);
          terms_.emplace_back(ca.recvar, cb.recvar);
          bool ok = term(ca.body, cb.body);
          terms_.resize(mark);
          if (!ok) return false;
        }
        return true;
      }
    }
    return false;
  }

  bool type(const Type& a, const Type& b) {
    if (a == b && closed_under(a->free_vars, terms_) && closed_under(a->free_type_vars, types_)) {
      return true;
    }
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case TypeKind::Unit:
        return true;
      case TypeKind::Var:
        return same(types_, a->name, b->name);
      case TypeKind::Inst:
        return type(a->head, b->head) && term(a->arg, b->arg);
      case TypeKind::Abs: {
        if (!type(a->domain, b->domain)) return false;
        terms_.emplace_back(a->name, b->name);
        bool ok = type(a->body, b->body);
        terms_.pop_back();
        return ok;
      }
      case TypeKind::Fix:
        return a->polarity == b->polarity && sig(a->sig, b->sig);
    }
    return false;
  }

  bool telescope(const TermCtx& a, const TermCtx& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!type(a[i].type, b[i].type)) return false;
      terms_.emplace_back(a[i].name, b[i].name);
    }
    return true;
  }

  std::size_t term_mark() const { return terms_.size(); }
  void term_reset(std::size_t mark) { terms_.resize(mark); }

 private:
  using Stack = std::vector<std::pair<std::string, std::string>>;

  static bool same(const Stack& s, const std::string& x, const std::string& y) {
    for (auto i = s.size(); i-- > 0;) {
      bool lx = s[i].first == x;
      bool ry = s[i].second == y;
      if (lx || ry) return lx && ry;
    }
    return x == y;
  }

  // Every free name resolves identically on both sides.
  static bool closed_under(const NameSet& names, const Stack& s) {
    for (const auto& n : names) {
      if (!same(s, n, n)) return false;
    }
    return true;
  }

  bool sig(const Signature& a, const Signature& b) {
    if (a.level != b.level || a.branches.size() != b.branches.size()) return false;
    auto mark = terms_.size();
    bool ok = telescope(a.params, b.params);
    terms_.resize(mark);
    if (!ok) return false;
    for (std::size_t k = 0; k < a.branches.size(); ++k) {
      const auto& ba = a.branches[k];
      const auto& bb = b.branches[k];
      if (ba.index.size() != bb.index.size()) return false;
      ok = telescope(ba.local, bb.local);
      for (std::size_t i = 0; ok && i < ba.index.size(); ++i) ok = term(ba.index[i], bb.index[i]);
      if (ok) {
        types_.emplace_back(a.binder, b.binder);
        ok = type(ba.codomain, bb.codomain);
        types_.pop_back();
      }
      terms_.resize(mark);
      if (!ok) return false;
    }
    return true;
  }

  Stack terms_;
  Stack types_;
};

bool distinct(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (names[i] == names[j]) return false;
    }
  }
  return true;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) { return Alpha().term(a, b); }
bool alpha_eq(const Type& a, const Type& b) { return Alpha().type(a, b); }
bool alpha_eq(const TermCtx& a, const TermCtx& b) { return Alpha().telescope(a, b); }

bool shape_ok(const Type& t) {
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Var:
      return true;
    case TypeKind::Inst:
      return shape_ok(t->head) && shape_ok(t->arg);
    case TypeKind::Abs:
      return shape_ok(t->domain) && shape_ok(t->body);
    case TypeKind::Fix: {
      const auto& s = t->sig;
      if (!distinct(names_of(s.params))) return false;
      for (const auto& e : s.params) {
        if (!shape_ok(e.type)) return false;
      }
      for (const auto& b : s.branches) {
        if (b.index.size() != s.params.size() || !distinct(names_of(b.local))) return false;
        for (const auto& e : b.local) {
          if (!shape_ok(e.type)) return false;
        }
        for (const auto& i : b.index) {
          if (!shape_ok(i)) return false;
        }
        if (!shape_ok(b.codomain)) return false;
      }
      return true;
    }
  }
  return false;
}

bool shape_ok(const Term& t) {
  switch (t->kind) {
    case TermKind::Unit:
    case TermKind::Var:
      return true;
    case TermKind::Inst:
      return shape_ok(t->head) && shape_ok(t->arg);
    case TermKind::Ctor:
    case TermKind::Dtor: {
      auto want = t->kind == TermKind::Ctor ? Polarity::Mu : Polarity::Nu;
      return t->fix->kind == TypeKind::Fix && t->fix->polarity == want && t->index >= 1 &&
             t->index <= t->fix->sig.branches.size() && shape_ok(t->fix);
    }
    case TermKind::Rec:
    case TermKind::Corec: {
      auto want = t->kind == TermKind::Rec ? Polarity::Mu : Polarity::Nu;
      if (t->fix->kind != TypeKind::Fix || t->fix->polarity != want) return false;
      const auto& s = t->fix->sig;
      if (t->clauses.size() != s.branches.size()) return false;
      if (!shape_ok(t->fix) || !shape_ok(t->motive)) return false;
      for (std::size_t k = 0; k < t->clauses.size(); ++k) {
        const auto& c = t->clauses[k];
        if (c.params.size() != s.branches[k].local.size()) return false;
        auto all = c.params;
        all.push_back(c.recvar);
        if (!distinct(all) || !shape_ok(c.body)) return false;
      }
      return true;
    }
  }
  return false;
}

bool well_scoped(const NameSet& ambient, const Term& t) {
  return t->free_vars.subset_of(ambient) && t->free_type_vars.empty() && shape_ok(t);
}

std::size_t size_of(const Term& t) {
  switch (t->kind) {
    case TermKind::Inst:
      return 1 + size_of(t->head) + size_of(t->arg);
    case TermKind::Rec:
    case TermKind::Corec: {
      std::size_t n = 1;
      for (const auto& c : t->clauses) n += size_of(c.body);
      return n;
    }
    default:
      return 1;
  }
}

}  // namespace dtt
