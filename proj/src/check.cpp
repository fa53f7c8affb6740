#include "dtt/check.hpp"

#include <sstream>

#include "dtt/print.hpp"
#include "dtt/subst.hpp"

namespace dtt {

const char* rule_name(RuleTag r) {
  switch (r) {
    case RuleTag::WfCtx: return "Ctx";
    case RuleTag::WfTyCtx: return "TyCtx";
    case RuleTag::StrictPositivity: return "StrictPositivity";
    case RuleTag::CtxMor: return "CtxMor";
    case RuleTag::UnitTy: return "1-I";
    case RuleTag::TyVar: return "TyVar-I";
    case RuleTag::TyInst: return "Ty-Inst";
    case RuleTag::ParamAbstr: return "Param-Abstr";
    case RuleTag::FixTy: return "FP-Ty";
    case RuleTag::Level: return "Level";
    case RuleTag::UnitI: return "1-Intro";
    case RuleTag::Proj: return "Proj";
    case RuleTag::Inst: return "Inst";
    case RuleTag::Conv: return "Conv";
    case RuleTag::IndI: return "Ind-I";
    case RuleTag::CoindE: return "Coind-E";
    case RuleTag::IndE: return "Ind-E";
    case RuleTag::CoindI: return "Coind-I";
    case RuleTag::Structural: return "Structural";
  }
  return "?";
}

TypeError::TypeError(RuleTag rule, const std::string& message, std::vector<std::string> location,
                     std::string expected, std::string found)
    : std::runtime_error(std::string("[") + rule_name(rule) + "] " + message),
      rule_(rule),
      message_(message),
      location_(std::move(location)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string TypeError::location_string() const {
  std::string out;
  for (std::size_t i = 0; i < location_.size(); ++i) {
    if (i) out += " > ";
    out += location_[i];
  }
  return out;
}

class TypeChecker::Where {
 public:
  Where(TypeChecker& c, std::string segment) : c_(c) { c_.location_.push_back(std::move(segment)); }
  ~Where() { c_.location_.pop_back(); }
  Where(const Where&) = delete;
  Where& operator=(const Where&) = delete;

 private:
  TypeChecker& c_;
};

namespace {

bool has_name(const TermCtx& ctx, const std::string& name) {
  for (const auto& e : ctx) {
    if (e.name == name) return true;
  }
  return false;
}

const CtxEntry* lookup(const TermCtx& ctx, const std::string& name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    if (it->name == name) return &*it;
  }
  return nullptr;
}

std::string pick_name(const std::string& base, const TermCtx& a, const TermCtx& b = {}) {
  if (!has_name(a, base) && !has_name(b, base)) return base;
  return fresh_name(base);
}

}  // namespace

void TypeChecker::fail(RuleTag rule, const std::string& message, std::string expected, std::string found) const {
  throw TypeError(rule, message, location_, std::move(expected), std::move(found));
}

bool TypeChecker::convertible(const Type& a, const Type& b) {
  try {
    return dtt::convertible(a, b, type_fuel_);
  } catch (const FuelExhausted& e) {
    fail(RuleTag::Conv, std::string("conversion check gave up: ") + e.what());
  }
}

bool TypeChecker::telescope_convertible(const TermCtx& a, const Type& a_body, const TermCtx& b, const Type& b_body) {
  if (a.size() != b.size()) return false;
  Subst ra;
  Subst rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!convertible(subst(a[i].type, ra), subst(b[i].type, rb))) return false;
    if (a[i].name != b[i].name) {
      auto f = fresh_name(a[i].name);
      ra.bind(a[i].name, var(f));
      rb.bind(b[i].name, var(f));
    } else {
      ra.erase(a[i].name);
      rb.erase(b[i].name);
    }
  }
  return convertible(subst(a_body, ra), subst(b_body, rb));
}

void TypeChecker::expect_empty(const TypeInfo& info, RuleTag rule, const std::string& what, const Type& t) const {
  if (!info.params.empty()) {
    fail(rule, what + " must be a type, but it still has " + std::to_string(info.params.size()) + " parameter(s)", "",
         show(t));
  }
}

void TypeChecker::check_ctx_in(const TermCtx& ambient, const TermCtx& ctx, RuleTag rule) {
  TermCtx working = ambient;
  for (const auto& e : ctx) {
    Where w(*this, "entry " + e.name);
    if (has_name(working, e.name)) fail(rule, "variable " + e.name + " is declared twice");
    if (!e.type->free_type_vars.empty()) {
      fail(RuleTag::StrictPositivity,
           "context entry " + e.name + " mentions type variable " + *e.type->free_type_vars.begin() +
               "; strict positivity forbids type variables in term contexts",
           "", show(e.type));
    }
    expect_empty(check_type({}, working, e.type), rule, "context entry " + e.name, e.type);
    working.push_back(e);
  }
}

void TypeChecker::check_term_ctx(const TermCtx& ctx) { check_ctx_in({}, ctx, RuleTag::WfCtx); }

void TypeChecker::check_ty_ctx(const TyCtx& theta) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    Where w(*this, "type variable " + theta[i].name);
    for (std::size_t j = 0; j < i; ++j) {
      if (theta[j].name == theta[i].name) fail(RuleTag::WfTyCtx, "type variable " + theta[i].name + " is declared twice");
    }
    check_term_ctx(theta[i].params);
  }
}

void TypeChecker::check_ctx_mor(const TermCtx& source, const std::vector<Term>& terms, const TermCtx& target) {
  if (terms.size() != target.size()) {
    fail(RuleTag::CtxMor, "context morphism has " + std::to_string(terms.size()) + " components, target context has " +
                              std::to_string(target.size()));
  }
  Subst s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Where w(*this, "component " + std::to_string(i + 1));
    check_term(source, terms[i], {{}, subst(target[i].type, s)});
    s.bind(target[i].name, terms[i]);
  }
}

const TermCtx& TypeChecker::check_fix(const TyCtx& theta, const Type& fix) {
  const auto& sig = fix->sig;
  bool closed = fix->free_vars.empty() && fix->free_type_vars.empty();
  if (closed && checked_.count(fix.get())) return sig.params;

  Where w(*this, std::string(fix->polarity == Polarity::Mu ? "mu " : "nu ") + sig.binder);
  if (sig.level != 0) fail(RuleTag::Level, "only level 0 signatures are supported");
  {
    Where wp(*this, "parameters");
    check_ctx_in({}, sig.params, RuleTag::FixTy);
  }
  std::string binder = sig.binder;
  for (const auto& e : theta) {
    if (e.name == binder) binder = fresh_name(binder);
  }
  TyCtx inner = theta;
  inner.push_back({binder, sig.params});
  for (std::size_t k = 0; k < sig.branches.size(); ++k) {
    const auto& br = sig.branches[k];
    Where wb(*this, "branch " + std::to_string(k + 1) + (br.label.empty() ? "" : " " + br.label));
    {
      Where wc(*this, "context");
      check_ctx_in({}, br.local, RuleTag::FixTy);
    }
    {
      Where wi(*this, "index");
      check_ctx_mor(br.local, br.index, sig.params);
    }
    Type codomain = br.codomain;
    if (binder != sig.binder) codomain = ty_subst(codomain, TySubst{sig.binder, sig.params.size(), ty_var(binder)});
    Where wa(*this, "argument type");
    expect_empty(check_type(inner, br.local, codomain), RuleTag::FixTy, "branch argument", codomain);
  }
  if (closed) checked_.emplace(fix.get(), fix);
  return sig.params;
}

TypeInfo TypeChecker::check_type(const TyCtx& theta, const TermCtx& ctx, const Type& t) {
  switch (t->kind) {
    case TypeKind::Unit:
      return {};
    case TypeKind::Var:
      for (auto it = theta.rbegin(); it != theta.rend(); ++it) {
        if (it->name == t->name) return {it->params, 0};
      }
      fail(RuleTag::TyVar, "unbound type variable " + t->name);
    case TypeKind::Inst: {
      auto info = check_type(theta, ctx, t->head);
      if (info.params.empty()) fail(RuleTag::TyInst, "type has no parameter left to instantiate", "", show(t->head));
      {
        Where w(*this, "type argument");
        check_term(ctx, t->arg, {{}, info.params.front().type});
      }
      return {instantiate_first(info.params, unit_ty(), t->arg).params, 0};
    }
    case TypeKind::Abs: {
      Where w(*this, "abstraction " + t->name);
      if (!t->domain->free_type_vars.empty()) {
        fail(RuleTag::StrictPositivity,
             "parameter " + t->name + " has a type mentioning type variable " + *t->domain->free_type_vars.begin(), "",
             show(t->domain));
      }
      expect_empty(check_type({}, ctx, t->domain), RuleTag::ParamAbstr, "parameter domain", t->domain);
      std::string x = t->name;
      Type body = t->body;
      if (has_name(ctx, x)) {
        x = fresh_name(x);
        Subst ren;
        ren.bind(t->name, var(x));
        body = subst(body, ren);
      }
      TermCtx inner = ctx;
      inner.push_back({x, t->domain});
      auto info = check_type(theta, inner, body);
      info.params.insert(info.params.begin(), CtxEntry{x, t->domain});
      return info;
    }
    case TypeKind::Fix:
      return {check_fix(theta, t), 0};
  }
  fail(RuleTag::Structural, "unknown type form");
}

const Signature& TypeChecker::fix_sig(const Type& fix, Polarity want, RuleTag rule, const char* what) {
  if (fix->kind != TypeKind::Fix) fail(rule, std::string(what) + " must carry a signature", "", show(fix));
  if (fix->polarity != want) {
    fail(rule, std::string(what) + (want == Polarity::Mu ? " needs an inductive" : " needs a coinductive") + " type",
         "", show(fix));
  }
  check_fix({}, fix);
  return fix->sig;
}

void TypeChecker::check_motive(const TermCtx& ctx, const Type& motive, const TermCtx& params, RuleTag rule) {
  Where w(*this, "motive");
  auto info = check_type({}, ctx, motive);
  if (!telescope_convertible(info.params, unit_ty(), params, unit_ty())) {
    fail(rule, "motive parameters do not match the signature parameters", show(params), show(info.params));
  }
}

InferredType TypeChecker::infer_elim(const TermCtx& ctx, const Term& t) {
  bool is_rec = t->kind == TermKind::Rec;
  RuleTag rule = is_rec ? RuleTag::IndE : RuleTag::CoindI;
  Where w(*this, is_rec ? "rec" : "corec");
  const auto& sig = fix_sig(t->fix, is_rec ? Polarity::Mu : Polarity::Nu, rule, is_rec ? "rec" : "corec");
  check_motive(ctx, t->motive, sig.params, rule);
  if (t->clauses.size() != sig.branches.size()) {
    fail(rule, "expected " + std::to_string(sig.branches.size()) + " clauses, found " + std::to_string(t->clauses.size()));
  }
  TySubst to_motive{sig.binder, sig.params.size(), t->motive};
  for (std::size_t k = 0; k < t->clauses.size(); ++k) {
    const auto& cl = t->clauses[k];
    const auto& br = sig.branches[k];
    Where wc(*this, "clause " + std::to_string(k + 1));
    if (cl.params.size() != br.local.size()) {
      fail(rule, "clause binds " + std::to_string(cl.params.size()) + " parameters, branch context has " +
                     std::to_string(br.local.size()));
    }
    TermCtx inner = ctx;
    Subst local_ren;
    Subst body_ren;
    std::vector<std::string> bound_here;
    auto bind = [&](const std::string& name, Type type) {
      std::string n = name;
      for (const auto& b : bound_here) {
        if (b == name) fail(RuleTag::Structural, "clause binds " + name + " twice");
      }
      bound_here.push_back(name);
      if (has_name(inner, n)) {
        n = fresh_name(name);
        body_ren.bind(name, var(n));
      }
      inner.push_back({n, std::move(type)});
      return n;
    };
    for (std::size_t j = 0; j < br.local.size(); ++j) {
      auto n = bind(cl.params[j], subst(br.local[j].type, local_ren));
      local_ren.bind(br.local[j].name, var(n));
    }
    Type at_index = subst(ty_inst(t->motive, br.index), local_ren);
    Type at_codomain = subst(ty_subst(br.codomain, to_motive), local_ren);
    bind(cl.recvar, is_rec ? at_codomain : at_index);
    check_term(inner, subst(cl.body, body_ren), {{}, is_rec ? at_index : at_codomain});
  }
  TermCtx params;
  Subst ren;
  for (const auto& e : sig.params) {
    auto n = pick_name(e.name, ctx, params);
    params.push_back({n, subst(e.type, ren)});
    if (n != e.name) ren.bind(e.name, var(n));
  }
  auto ids = vars_of(params);
  auto y = pick_name("y", ctx, params);
  Type fix_at = ty_inst(t->fix, ids);
  Type motive_at = ty_inst(t->motive, ids);
  params.push_back({y, is_rec ? fix_at : motive_at});
  return {std::move(params), is_rec ? motive_at : fix_at, 0};
}

InferredType TypeChecker::infer_term(const TermCtx& ctx, const Term& t) {
  switch (t->kind) {
    case TermKind::Unit:
      return {{}, unit_ty(), 0};
    case TermKind::Var: {
      const auto* e = lookup(ctx, t->name);
      if (!e) fail(RuleTag::Proj, "unbound variable " + t->name);
      return {{}, e->type, 0};
    }
    case TermKind::Inst: {
      InferredType head;
      {
        Where w(*this, "head");
        head = infer_term(ctx, t->head);
      }
      if (head.params.empty()) {
        fail(RuleTag::Inst, "term has no parameter left to instantiate", "", show(head.params, head.body));
      }
      {
        Where w(*this, "argument");
        check_term(ctx, t->arg, {{}, head.params.front().type});
      }
      auto r = instantiate_first(head.params, head.body, t->arg);
      return {std::move(r.params), std::move(r.body), 0};
    }
    case TermKind::Ctor:
    case TermKind::Dtor: {
      bool is_ctor = t->kind == TermKind::Ctor;
      RuleTag rule = is_ctor ? RuleTag::IndI : RuleTag::CoindE;
      const auto& sig = fix_sig(t->fix, is_ctor ? Polarity::Mu : Polarity::Nu, rule, is_ctor ? "ctor" : "dtor");
      if (t->index < 1 || t->index > sig.branches.size()) {
        fail(rule, std::string(is_ctor ? "constructor" : "destructor") + " index " + std::to_string(t->index) +
                       " out of range 1.." + std::to_string(sig.branches.size()));
      }
      const auto& br = sig.branches[t->index - 1];
      Type codomain = ty_subst(br.codomain, TySubst{sig.binder, sig.params.size(), t->fix});
      Type at_index = ty_inst(t->fix, br.index);
      TermCtx params = br.local;
      params.push_back({pick_name("y", br.local), is_ctor ? codomain : at_index});
      return {std::move(params), is_ctor ? at_index : codomain, 0};
    }
    case TermKind::Rec:
    case TermKind::Corec:
      return infer_elim(ctx, t);
  }
  fail(RuleTag::Structural, "unknown term form");
}

void TypeChecker::check_term(const TermCtx& ctx, const Term& t, const InferredType& expected) {
  auto got = infer_term(ctx, t);
  if (!telescope_convertible(got.params, got.body, expected.params, expected.body)) {
    fail(RuleTag::Conv, "type mismatch", show(expected.params, expected.body),
         show(got.params, got.body));
  }
}

void check_term_ctx(const TermCtx& ctx) { TypeChecker().check_term_ctx(ctx); }
void check_ty_ctx(const TyCtx& theta) { TypeChecker().check_ty_ctx(theta); }
void check_ctx_mor(const TermCtx& source, const std::vector<Term>& terms, const TermCtx& target) {
  TypeChecker().check_ctx_mor(source, terms, target);
}
TypeInfo check_type(const TyCtx& theta, const TermCtx& ctx, const Type& t) {
  return TypeChecker().check_type(theta, ctx, t);
}
InferredType infer_term(const TermCtx& ctx, const Term& t) { return TypeChecker().infer_term(ctx, t); }
void check_term(const TermCtx& ctx, const Term& t, const InferredType& expected) {
  TypeChecker().check_term(ctx, t, expected);
}

}  // namespace dtt
