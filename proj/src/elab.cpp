#include "dtt/elab.hpp"

#include <algorithm>

#include "dtt/subst.hpp"

namespace dtt {

using surface::SDecl;
using surface::SFix;
using surface::SParam;
using surface::STerm;
using surface::SType;

void Environment::add_type(TypeDecl d) {
  type_index_[d.name] = types_.size();
  table_.types.emplace_back(d.name, d.fix);
  types_.push_back(std::move(d));
}

void Environment::add_term(TermDecl d) {
  alias_index_.erase(d.name);
  term_index_[d.name] = terms_.size();
  terms_.push_back(std::move(d));
}

void Environment::add_alias(Alias a) {
  term_index_.erase(a.name);
  alias_index_[a.name] = aliases_.size();
  aliases_.push_back(std::move(a));
}

const TypeDecl* Environment::find_type(const std::string& name) const {
  auto it = type_index_.find(name);
  return it == type_index_.end() ? nullptr : &types_[it->second];
}

const TermDecl* Environment::find_term(const std::string& name) const {
  auto it = term_index_.find(name);
  return it == term_index_.end() ? nullptr : &terms_[it->second];
}

const Alias* Environment::find_alias(const std::string& name) const {
  auto it = alias_index_.find(name);
  return it == alias_index_.end() ? nullptr : &aliases_[it->second];
}

namespace {

// Restores a name stack to its size on scope exit.
class Scope {
 public:
  explicit Scope(std::vector<std::string>& names) : names_(names), mark_(names.size()) {}
  ~Scope() { names_.resize(mark_); }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  std::vector<std::string>& names_;
  std::size_t mark_;
};

bool bound(const std::vector<std::string>& names, const std::string& n) {
  return std::find(names.rbegin(), names.rend(), n) != names.rend();
}

}  // namespace

void Elaborator::reserve_name(const std::string& name, surface::Span span, bool is_type) {
  auto& seen = is_type ? file_types_ : file_terms_;
  if (!seen.insert(name).second) throw ElabError(span, "'" + name + "' is already defined in this file");
}

TermCtx Elaborator::telescope(const std::vector<SParam>& ps) {
  TermCtx out;
  for (const auto& p : ps) {
    out.push_back({p.name, type(*p.type)});
    locals_.push_back(p.name);
  }
  return out;
}

Type Elaborator::fix(const SFix& f, const std::vector<SParam>& decl_params) {
  Signature sig;
  sig.binder = f.binder;
  // The binder is in scope everywhere so that misplaced occurrences reach the
  // kernel's positivity check.
  Scope st(tyvars_);
  tyvars_.push_back(f.binder);
  {
    Scope s(locals_);
    sig.params = telescope(decl_params.empty() ? f.params : decl_params);
  }
  for (const auto& b : f.branches) {
    Scope s(locals_);
    Branch nb;
    nb.label = b.label;
    nb.local = telescope(b.ctx);
    for (const auto& i : b.idx) nb.index.push_back(term(*i));
    nb.codomain = type(*b.arg);
    sig.branches.push_back(std::move(nb));
  }
  return fix_ty(f.polarity, std::move(sig));
}

Type Elaborator::type(const SType& t) {
  switch (t.kind) {
    case SType::Kind::Unit:
      return unit_ty();
    case SType::Kind::Name: {
      if (bound(tyvars_, t.name)) return ty_var(t.name);
      if (const auto* d = env_.find_type(t.name)) return d->fix;
      throw ElabError(t.span, "unknown type '" + t.name + "'");
    }
    case SType::Kind::Inst:
      return ty_inst(type(*t.head), term(*t.arg));
    case SType::Kind::Abs: {
      if (!t.domain) throw ElabError(t.span, "parameter '" + t.name + "' needs a type annotation outside a motive");
      auto domain = type(*t.domain);
      Scope s(locals_);
      locals_.push_back(t.name);
      return ty_abs(t.name, domain, type(*t.body));
    }
    case SType::Kind::Fix:
      return fix(*t.fix, {});
  }
  throw ElabError(t.span, "unknown type form");
}

// Unannotated binders of a motive take their domains from the signature.
Type Elaborator::motive(const SType& t, const Type& fixed) {
  if (fixed->kind != TypeKind::Fix) return type(t);
  const auto& params = fixed->sig.params;
  Scope s(locals_);
  std::vector<std::pair<std::string, Type>> binders;
  Subst ren;
  const SType* cur = &t;
  while (cur->kind == SType::Kind::Abs) {
    auto j = binders.size();
    Type domain;
    if (cur->domain) {
      domain = type(*cur->domain);
    } else if (j < params.size()) {
      domain = subst(params[j].type, ren);
    } else {
      throw ElabError(cur->span, "motive binds more parameters than the signature has");
    }
    if (j < params.size()) ren.bind(params[j].name, var(cur->name));
    binders.emplace_back(cur->name, domain);
    locals_.push_back(cur->name);
    cur = cur->body.get();
  }
  Type out = type(*cur);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) out = ty_abs(it->first, it->second, out);
  return out;
}

Term Elaborator::term(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::Unit:
      return unit_val();
    case STerm::Kind::Name:
    case STerm::Kind::Inst: {
      std::vector<const STerm*> args;
      const STerm* head = &t;
      while (head->kind == STerm::Kind::Inst) {
        args.push_back(head->arg.get());
        head = head->head.get();
      }
      std::reverse(args.begin(), args.end());
      std::vector<Term> elaborated;
      for (const auto* a : args) elaborated.push_back(term(*a));
      Term out;
      std::size_t used = 0;
      if (head->kind != STerm::Kind::Name) {
        out = term(*head);
      } else if (bound(locals_, head->name)) {
        out = var(head->name);
      } else if (const auto* d = env_.find_term(head->name)) {
        if (elaborated.size() < d->params.size()) {
          throw ElabError(head->span, "'" + head->name + "' expects " + std::to_string(d->params.size()) +
                                          " argument(s), given " + std::to_string(elaborated.size()));
        }
        used = d->params.size();
        std::vector<Term> first(elaborated.begin(), elaborated.begin() + used);
        out = subst(d->body, Subst(names_of(d->params), first));
      } else if (const auto* a = env_.find_alias(head->name)) {
        out = a->is_ctor ? ctor(a->index, a->fix) : dtor(a->index, a->fix);
      } else {
        throw ElabError(head->span, "unknown name '" + head->name + "'");
      }
      for (std::size_t i = used; i < elaborated.size(); ++i) out = inst(out, elaborated[i]);
      return out;
    }
    case STerm::Kind::Ctor:
      return ctor(t.index, type(*t.of));
    case STerm::Kind::Dtor:
      return dtor(t.index, type(*t.of));
    case STerm::Kind::Rec:
    case STerm::Kind::Corec: {
      auto fixed = type(*t.of);
      auto m = motive(*t.motive, fixed);
      std::vector<Clause> clauses;
      for (const auto& c : t.clauses) {
        Scope s(locals_);
        for (const auto& p : c.params) locals_.push_back(p);
        locals_.push_back(c.recvar);
        clauses.push_back({c.params, c.recvar, term(*c.body)});
      }
      try {
        return t.kind == STerm::Kind::Rec ? rec(fixed, m, std::move(clauses)) : corec(fixed, m, std::move(clauses));
      } catch (const SyntaxError& e) {
        throw ElabError(t.span, e.what());
      }
    }
  }
  throw ElabError(t.span, "unknown term form");
}

DeclReport Elaborator::declare(const SDecl& d) {
  const auto* names = &env_.name_table();
  if (d.kind == SDecl::Kind::Type) {
    reserve_name(d.name, d.span, true);
    auto fixed = fix(*d.fix, d.params);
    checker_.check_type({}, {}, fixed);
    const auto& sig = fixed->sig;
    for (std::size_t k = 0; k < sig.branches.size(); ++k) {
      const auto& label = sig.branches[k].label;
      reserve_name(label, d.fix->branches[k].span, false);
    }
    env_.add_type({d.name, fixed, d.span});
    for (std::size_t k = 0; k < sig.branches.size(); ++k) {
      env_.add_alias({sig.branches[k].label, fixed, k + 1, fixed->polarity == Polarity::Mu});
    }
    std::string summary = d.name + " : ";
    if (!sig.params.empty()) summary += to_string(sig.params, names) + " -> ";
    summary += "Set";
    return {d.name, true, summary};
  }

  reserve_name(d.name, d.span, false);
  Scope s(locals_);
  auto params = telescope(d.params);
  checker_.check_term_ctx(params);
  auto body = term(*d.body);
  auto inferred = checker_.infer_term(params, body);
  if (d.ascription) {
    Scope sa(locals_);
    auto asc_params = telescope(d.ascription->params);
    InferredType expected{asc_params, type(*d.ascription->body), 0};
    checker_.check_term(params, body, expected);
    inferred = std::move(expected);
  }
  env_.add_term({d.name, params, body, inferred, d.span});
  std::string summary = d.name;
  if (!params.empty()) summary += " " + to_string(params, names);
  summary += " : " + to_string(inferred.params, ty_normalize(inferred.body), names);
  return {d.name, false, summary};
}

}  // namespace dtt
