#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtt/syntax.hpp"

// Standard encodings built from the two fixed-point type formers.
namespace dtt::prelude {

// Terminal object nu X.X with its unique map into it.
Type top();
Term bang(Type from);
Term unit_prime();

// Initial object mu X.X and its eliminator.
Type bottom();
Term bottom_elim(Type into);

// Empty type fibred over a context: mu X : ctx. { ctx -> X id }.
Type fibred_bottom_fix(const TermCtx& ctx);
Type fibred_bottom(const TermCtx& ctx);
Term fibred_bottom_elim(const TermCtx& ctx, Type into);

Type nat();
Term zero();
Term succ();
Term succ(Term n);
Term nat_lit(unsigned n);
std::optional<unsigned> as_nat_lit(const Term& t);
Term nat_rec(Type motive, Term base, const std::string& y, Term step);

// Binary products and coproducts fibred over a context; A1 and A2 live in ctx.
Type product_fix(const TermCtx& ctx, Type a1, Type a2);
Type product(const TermCtx& ctx, Type a1, Type a2);
Term proj(const TermCtx& ctx, Type a1, Type a2, std::size_t k);
Term pair(const TermCtx& ctx, Type a1, Type a2, Term t1, Term t2);
Type coproduct_fix(const TermCtx& ctx, Type a1, Type a2);
Type coproduct(const TermCtx& ctx, Type a1, Type a2);
Term inj(const TermCtx& ctx, Type a1, Type a2, std::size_t k);
Term case_of(const TermCtx& ctx, Type a1, Type a2, Type into, const std::string& x, Term t1, Term t2);

// Dependent functions and sums over x : A.
Type pi(const std::string& x, Type a, Type b);
Type arrow(Type a, Type b);
Term lambda(const std::string& x, Type a, Type b, Term body);
Term apply(Type pi_type, Term f, Term arg);
Type exists(const std::string& x, Type a, Type b);
Term pack(const std::string& x, Type a, Type b, Term t, Term s);
Term exists_elim(const std::string& x, Type a, Type b, Type into, const std::string& y, Term p, Term t);

// Sums and products along f : (x : I) -> J, as types over y : J.
Type sigma_f_fix(const std::string& x, Type i, const std::string& y, Type j, Term f, Type a);
Type pi_f_fix(const std::string& x, Type i, const std::string& y, Type j, Term f, Type a);

// Propositional equality on A, parameterised by (x : A, y : A).
Type eq_fix(Type a);
Type eq(Type a, Term lhs, Term rhs);
Term refl(Type a, Term x);
// rec over Eq with motive (x)(y) into; p lives in x : A.
Term eq_elim(Type a, const std::string& x, const std::string& y, Type into, Term p, Term lhs, Term rhs, Term proof);
// Transport of p : P(x) to P(y); p_type lives in x : A.
Term repl(Type a, const std::string& x, Type p_type, Term p, Term lhs, Term rhs, Term proof);

// Vectors over A indexed by Nat.
Type vec_fix(Type a);
Type vec(Type a, Term n);
Term nil(Type a);
Term cons(Type a, Term k, Term head, Term tail);
Term vec_length(Type a, Term n);

// Extended naturals nu X. 1 + X.
Type en();
Term en_zero();
Term en_infinity();
// Successor on EN, open in y : EN.
Term en_succ_open();
Term en_succ(Term n);
// Primitive corecursion into EN: d : (1 + C) + EN, open in y : C; the result is open in y : C.
Term en_prim_corec(Type c, const std::string& y, Term d);

// Streams whose index bounds how often they can be unfolded.
Type pstr_fix(Type a);
Type pstr(Type a, Term n);

Term plus();
Term plus_app(Term m, Term n);

struct PreludeDecl {
  enum class Kind { Type, Term };
  std::string name;
  Kind kind = Kind::Term;
  Type type;
  Term term;
  TermCtx context;
  std::string description;
};

// Declarations in dependency order.
std::vector<PreludeDecl> prelude_decls();

}  // namespace dtt::prelude
