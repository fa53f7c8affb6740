#pragma once

#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtt/syntax.hpp"

namespace dtt {

class SubstError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite map from term variables to terms, applied simultaneously.
class Subst {
 public:
  Subst() = default;
  Subst(const std::vector<std::string>& names, std::span<const Term> terms);

  void bind(const std::string& name, Term t);
  void erase(const std::string& name);
  const Term* find(const std::string& name) const;
  bool empty() const { return map_.empty(); }
  const NameSet& domain() const { return domain_; }
  const NameSet& range_free_vars() const { return range_fv_; }

 private:
  std::map<std::string, Term, std::less<>> map_;
  NameSet domain_;
  NameSet range_fv_;
};

// Capture-avoiding; a binder is renamed only when it would capture a free
// variable of the substituted terms.
Term subst(const Term& t, const Subst& s);
Type subst(const Type& t, const Subst& s);
// Substitutes through a telescope and leaves `s` extended with the binder
// renamings, ready to be applied to whatever the telescope scopes over.
TermCtx subst(const TermCtx& ctx, Subst& s);

Term subst(const Term& t, const CtxMor& m);
Type subst(const Type& t, const CtxMor& m);

// Replacement of a type variable with `arity` parameters. Occurrences
// X s1 .. sn beta-contract against a replacement of the form (x1) .. (xn) B.
struct TySubst {
  std::string target;
  std::size_t arity = std::numeric_limits<std::size_t>::max();
  Type replacement;
};

Type ty_subst(const Type& t, std::span<const TySubst> subs);
Type ty_subst(const Type& t, const TySubst& sub);
Term ty_subst(const Term& t, std::span<const TySubst> subs);

// tau : Gamma2 -> Gamma3 after sigma : Gamma1 -> Gamma2.
CtxMor compose_ctx_mor(const CtxMor& tau, const CtxMor& sigma);

// Substitute a single argument into a parameterised type (x : A, rest) => B.
struct Telescoped {
  TermCtx params;
  Type body;
};
Telescoped instantiate_first(const TermCtx& params, const Type& body, const Term& arg);

}  // namespace dtt
