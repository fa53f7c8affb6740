#include "dtt/subst.hpp"

#include <utility>

namespace dtt {

Subst::Subst(const std::vector<std::string>& names, std::span<const Term> terms) {
  if (names.size() != terms.size()) throw SubstError("substitution arity mismatch");
  for (std::size_t i = 0; i < names.size(); ++i) bind(names[i], terms[i]);
}

void Subst::bind(const std::string& name, Term t) {
  range_fv_.merge(t->free_vars);
  domain_.insert(name);
  map_.insert_or_assign(name, std::move(t));
}

void Subst::erase(const std::string& name) {
  if (map_.erase(name) != 0) domain_.erase(name);
}

const Term* Subst::find(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

class TyMap {
 public:
  struct Entry {
    std::size_t arity;
    Type replacement;
  };

  void bind(const std::string& name, std::size_t arity, Type r) {
    range_fv_.merge(r->free_vars);
    range_ftv_.merge(r->free_type_vars);
    domain_.insert(name);
    map_.insert_or_assign(name, Entry{arity, std::move(r)});
  }
  void erase(const std::string& name) {
    if (map_.erase(name) != 0) domain_.erase(name);
  }
  const Entry* find(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : &it->second;
  }
  const NameSet& domain() const { return domain_; }
  const NameSet& range_fv() const { return range_fv_; }
  const NameSet& range_ftv() const { return range_ftv_; }

 private:
  std::map<std::string, Entry, std::less<>> map_;
  NameSet domain_;
  NameSet range_fv_;
  NameSet range_ftv_;
};

// Simultaneous substitution for term variables and type variables.
class Walker {
 public:
  Walker(Subst s, TyMap ty) : s_(std::move(s)), ty_(std::move(ty)) {}

  Term term(const Term& t) {
    if (!relevant(t->free_vars, t->free_type_vars)) return t;
    switch (t->kind) {
      case TermKind::Unit:
        return t;
      case TermKind::Var: {
        const Term* r = s_.find(t->name);
        return r ? *r : t;
      }
      case TermKind::Inst:
        return inst(term(t->head), term(t->arg));
      case TermKind::Ctor:
        return ctor(t->index, type(t->fix));
      case TermKind::Dtor:
        return dtor(t->index, type(t->fix));
      case TermKind::Rec:
      case TermKind::Corec: {
        auto fix = type(t->fix);
        auto motive = type(t->motive);
        std::vector<Clause> clauses;
        clauses.reserve(t->clauses.size());
        for (const auto& c : t->clauses) {
          Walker w = *this;
          Clause out;
          for (const auto& p : c.params) out.params.push_back(w.enter_term(p));
          out.recvar = w.enter_term(c.recvar);
          out.body = w.term(c.body);
          clauses.push_back(std::move(out));
        }
        return t->kind == TermKind::Rec ? rec(fix, motive, std::move(clauses))
                                        : corec(fix, motive, std::move(clauses));
      }
    }
    return t;
  }

  Type type(const Type& t) {
    if (!relevant(t->free_vars, t->free_type_vars)) return t;
    switch (t->kind) {
      case TypeKind::Unit:
        return t;
      case TypeKind::Var:
      case TypeKind::Inst: {
        auto sp = spine_of(t);
        const TyMap::Entry* e =
            sp.head->kind == TypeKind::Var ? ty_.find(sp.head->name) : nullptr;
        if (e == nullptr) {
          if (t->kind == TypeKind::Var) return t;
          return ty_inst(type(t->head), term(t->arg));
        }
        if (sp.args.size() > e->arity) {
          throw SubstError("type variable " + sp.head->name + " applied to " +
                           std::to_string(sp.args.size()) + " arguments, expected at most " +
                           std::to_string(e->arity));
        }
        Type r = e->replacement;
        for (const auto& a : sp.args) {
          Term arg = term(a);
          if (r->kind == TypeKind::Abs) {
            Subst one;
            one.bind(r->name, arg);
            r = Walker(std::move(one), TyMap{}).type(r->body);
          } else {
            r = ty_inst(r, arg);
          }
        }
        return r;
      }
      case TypeKind::Abs: {
        auto domain = type(t->domain);
        Walker w = *this;
        auto x = w.enter_term(t->name);
        return ty_abs(x, domain, w.type(t->body));
      }
      case TypeKind::Fix: {
        const auto& sig = t->sig;
        Signature out;
        out.level = sig.level;
        {
          Walker w = *this;
          out.params = w.telescope(sig.params);
        }
        out.binder = sig.binder;
        if (ty_.range_ftv().contains(sig.binder)) out.binder = fresh_name(sig.binder);
        for (const auto& b : sig.branches) {
          Walker w = *this;
          Branch nb;
          nb.label = b.label;
          nb.local = w.telescope(b.local);
          for (const auto& i : b.index) nb.index.push_back(w.term(i));
          w.ty_.erase(sig.binder);
          if (out.binder != sig.binder) w.ty_.bind(sig.binder, TyMapNoArity, ty_var(out.binder));
          nb.codomain = w.type(b.codomain);
          out.branches.push_back(std::move(nb));
        }
        return fix_ty(t->polarity, std::move(out));
      }
    }
    return t;
  }

  TermCtx telescope(const TermCtx& ctx) {
    TermCtx out;
    out.reserve(ctx.size());
    for (const auto& e : ctx) {
      auto ty = type(e.type);
      out.push_back({enter_term(e.name), std::move(ty)});
    }
    return out;
  }

  const Subst& terms() const { return s_; }

 private:
  static constexpr std::size_t TyMapNoArity = std::numeric_limits<std::size_t>::max();

  bool relevant(const NameSet& fv, const NameSet& ftv) const {
    return fv.intersects(s_.domain()) || ftv.intersects(ty_.domain());
  }

  std::string enter_term(const std::string& name) {
    s_.erase(name);
    if (s_.range_free_vars().contains(name) || ty_.range_fv().contains(name)) {
      auto fresh = fresh_name(name);
      s_.bind(name, var(fresh));
      return fresh;
    }
    return name;
  }

  Subst s_;
  TyMap ty_;
};

TyMap make_ty_map(std::span<const TySubst> subs) {
  TyMap m;
  for (const auto& s : subs) m.bind(s.target, s.arity, s.replacement);
  return m;
}

}  // namespace

Term subst(const Term& t, const Subst& s) {
  if (s.empty()) return t;
  return Walker(s, TyMap{}).term(t);
}

Type subst(const Type& t, const Subst& s) {
  if (s.empty()) return t;
  return Walker(s, TyMap{}).type(t);
}

TermCtx subst(const TermCtx& ctx, Subst& s) {
  Walker w(s, TyMap{});
  auto out = w.telescope(ctx);
  s = w.terms();
  return out;
}

Term subst(const Term& t, const CtxMor& m) { return subst(t, Subst(names_of(m.target), m.terms)); }

Type subst(const Type& t, const CtxMor& m) { return subst(t, Subst(names_of(m.target), m.terms)); }

Type ty_subst(const Type& t, std::span<const TySubst> subs) {
  return Walker(Subst{}, make_ty_map(subs)).type(t);
}

Type ty_subst(const Type& t, const TySubst& sub) { return ty_subst(t, std::span<const TySubst>(&sub, 1)); }

Term ty_subst(const Term& t, std::span<const TySubst> subs) {
  return Walker(Subst{}, make_ty_map(subs)).term(t);
}

CtxMor compose_ctx_mor(const CtxMor& tau, const CtxMor& sigma) {
  if (tau.terms.size() != tau.target.size() || sigma.terms.size() != sigma.target.size()) {
    throw SubstError("context morphism has the wrong number of components");
  }
  if (names_of(tau.source) != names_of(sigma.target) || !alpha_eq(tau.source, sigma.target)) {
    throw SubstError("context morphisms do not compose: source and target contexts differ");
  }
  Subst s(names_of(sigma.target), sigma.terms);
  CtxMor out{sigma.source, tau.target, {}};
  out.terms.reserve(tau.terms.size());
  for (const auto& t : tau.terms) out.terms.push_back(subst(t, s));
  return out;
}

Telescoped instantiate_first(const TermCtx& params, const Type& body, const Term& arg) {
  if (params.empty()) throw SubstError("no parameter to instantiate");
  Subst s;
  s.bind(params.front().name, arg);
  TermCtx rest(params.begin() + 1, params.end());
  auto out = subst(rest, s);
  return {std::move(out), subst(body, s)};
}

}  // namespace dtt
