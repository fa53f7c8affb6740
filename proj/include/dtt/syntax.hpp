#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtt/names.hpp"

namespace dtt {

struct TermNode;
struct TypeNode;
using Term = std::shared_ptr<const TermNode>;
using Type = std::shared_ptr<const TypeNode>;

enum class TermKind { Unit, Var, Inst, Ctor, Dtor, Rec, Corec };
enum class TypeKind { Unit, Var, Inst, Abs, Fix };
enum class Polarity { Mu, Nu };

struct CtxEntry {
  std::string name;
  Type type;
};
// Telescope: each entry's type may mention the names before it.
using TermCtx = std::vector<CtxEntry>;

struct TyCtxEntry {
  std::string name;
  TermCtx params;
};
using TyCtx = std::vector<TyCtxEntry>;

// One clause of a (co)recursor. Parameter types come from the signature.
struct Clause {
  std::vector<std::string> params;
  std::string recvar;
  Term body;
};

// A branch (Gamma_k, sigma_k, A_k). The label only names the branch in
// source and output.
struct Branch {
  TermCtx local;
  std::vector<Term> index;
  Type codomain;
  std::string label;
};

// The binder scopes over branch codomains only. Parameter names scope over
// later parameters; branch-local names scope over index terms and codomain.
struct Signature {
  std::string binder;
  TermCtx params;
  std::vector<Branch> branches;
  unsigned level = 0;
};

struct TermNode {
  TermKind kind = TermKind::Unit;
  std::string name;       // Var
  Term head;              // Inst
  Term arg;               // Inst
  std::size_t index = 0;  // Ctor, Dtor (1-based)
  Type fix;               // Ctor, Dtor, Rec, Corec
  Type motive;            // Rec, Corec
  std::vector<Clause> clauses;
  NameSet free_vars;
  NameSet free_type_vars;
};

struct TypeNode {
  TypeKind kind = TypeKind::Unit;
  std::string name;  // Var, Abs binder
  Type head;         // Inst
  Term arg;          // Inst
  Type domain;       // Abs
  Type body;         // Abs
  Polarity polarity = Polarity::Mu;
  Signature sig;     // Fix
  NameSet free_vars;
  NameSet free_type_vars;
};

class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Term constructors.
Term unit_val();
Term var(std::string name);
Term inst(Term head, Term arg);
Term inst(Term head, std::span<const Term> args);
Term ctor(std::size_t k, Type fix);
Term dtor(std::size_t k, Type fix);
Term rec(Type fix, Type motive, std::vector<Clause> clauses);
Term corec(Type fix, Type motive, std::vector<Clause> clauses);

// Type constructors.
Type unit_ty();
Type ty_var(std::string name);
Type ty_inst(Type head, Term arg);
Type ty_inst(Type head, std::span<const Term> args);
Type ty_abs(std::string name, Type domain, Type body);
Type fix_ty(Polarity polarity, Signature sig);
Type mu(Signature sig);
Type nu(Signature sig);

// Abstracts body over the whole telescope: (x1 : A1) ... (xn : An) body.
Type abstract_over(const TermCtx& ctx, Type body);

// Head applied to arguments, left to right.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine_of(const Term& t);

struct TySpine {
  Type head;
  std::vector<Term> args;
};
TySpine spine_of(const Type& t);

std::vector<std::string> names_of(const TermCtx& ctx);
std::vector<Term> vars_of(const TermCtx& ctx);
std::vector<Term> vars_of(const std::vector<std::string>& names);

// Context morphism Gamma1 -> Gamma2: one term over `source` per entry of `target`.
struct CtxMor {
  TermCtx source;
  TermCtx target;
  std::vector<Term> terms;
};
CtxMor identity_ctx_mor(const TermCtx& ctx);

// Equality up to renaming of bound variables. Branch labels are ignored.
bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Type& a, const Type& b);
bool alpha_eq(const TermCtx& a, const TermCtx& b);

// Free variables together with the structural side conditions: in-range
// constructor indices, polarity of the carried signature, clause counts and
// clause arities, distinct binders.
bool well_scoped(const NameSet& ambient, const Term& t);
bool shape_ok(const Term& t);
bool shape_ok(const Type& t);

std::size_t size_of(const Term& t);

}  // namespace dtt
