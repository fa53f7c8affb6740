#include "doctest.h"
#include "dtt/prelude.hpp"
#include "dtt/subst.hpp"
#include "support/gen.hpp"

using namespace dtt;
namespace p = dtt::prelude;

namespace {

Subst one(const std::string& x, Term t) {
  Subst s;
  s.bind(x, std::move(t));
  return s;
}

bool same_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!alpha_eq(a[i], b[i])) return false;
  }
  return true;
}

// Free variables of t[s] computed from t and s alone.
NameSet expected_free(const Term& t, const Subst& s) {
  NameSet out;
  for (const auto& x : t->free_vars) {
    if (const auto* r = s.find(x)) {
      out.merge((*r)->free_vars);
    } else {
      out.insert(x);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("binding_and_subst") {
  TEST_CASE("variables and closed terms") {
    CHECK(alpha_eq(subst(var("x"), one("x", unit_val())), unit_val()));
    CHECK(alpha_eq(subst(unit_val(), one("x", var("y"))), unit_val()));
    CHECK(alpha_eq(subst(var("z"), one("x", unit_val())), var("z")));
  }

  TEST_CASE("a clause binder shadowing the substituted name is left alone") {
    // rec with clause (; x) => s x applied to x: only the argument is free.
    auto g = inst(p::nat_rec(p::nat(), p::zero(), "x", p::succ(var("x"))), var("x"));
    auto a = p::nat_lit(2);
    auto out = subst(g, one("x", a));
    auto expected = inst(p::nat_rec(p::nat(), p::zero(), "q", p::succ(var("q"))), a);
    CHECK(alpha_eq(out, expected));
  }

  TEST_CASE("a binder is renamed when it would capture") {
    // (; y) => pair(y, x) with x := y must not capture the substituted y.
    auto nat = p::nat();
    auto body = p::pair({}, nat, nat, var("y"), var("x"));
    auto g = p::nat_rec(p::product({}, nat, nat), body, "y", body);
    auto out = subst(g, one("x", var("y")));
    CHECK(out->free_vars == NameSet{"y"});
    const auto& cl = out->clauses[1];
    CHECK(cl.recvar != "y");
    auto expected_body = p::pair({}, nat, nat, var(cl.recvar), var("y"));
    CHECK(alpha_eq(cl.body, expected_body));
  }

  TEST_CASE("substitution in types reaches instantiation arguments") {
    auto nat = p::nat();
    auto t = p::vec(nat, p::succ(var("k")));
    auto out = subst(t, one("k", p::zero()));
    CHECK(alpha_eq(out, p::vec(nat, p::succ(p::zero()))));
    auto xt = ty_inst(ty_var("X"), var("t"));
    CHECK(alpha_eq(subst(xt, one("y", var("s"))), xt));
    CHECK(alpha_eq(subst(xt, one("t", var("s"))), ty_inst(ty_var("X"), var("s"))));
  }

  TEST_CASE("substitution in signatures renames parameters and locals that would capture") {
    auto e = p::eq_fix(p::vec(p::nat(), var("m")));
    auto out = subst(e, one("m", var("x")));
    CHECK(out->free_vars == NameSet{"x"});
    const auto& sig = out->sig;
    REQUIRE(sig.params.size() == 2);
    CHECK(sig.params[0].name != "x");
    CHECK(alpha_eq(sig.params[1].type, p::vec(p::nat(), var("x"))));
    CHECK(sig.branches[0].local[0].name != "x");
    CHECK(alpha_eq(sig.branches[0].index[0], var(sig.branches[0].local[0].name)));
  }

  TEST_CASE("type variable substitution") {
    auto nat = p::nat();
    CHECK(alpha_eq(ty_subst(ty_var("X"), TySubst{"X", 0, nat}), nat));
    // A fix that does not mention X is unchanged.
    CHECK(alpha_eq(ty_subst(nat, TySubst{"X", 0, p::top()}), nat));
    // Bound occurrences are untouched.
    auto nat_body = nat->sig.branches[1].codomain;
    CHECK(alpha_eq(ty_subst(nat_body, TySubst{"X", 0, nat}), nat));
    CHECK(alpha_eq(ty_subst(p::top(), TySubst{"X", 0, nat}), p::top()));
  }

  TEST_CASE("type variable substitution beta-contracts parameterised replacements") {
    auto repl = ty_abs("n", p::nat(), p::vec(p::nat(), var("n")));
    auto occ = ty_inst(ty_var("X"), p::zero());
    CHECK(alpha_eq(ty_subst(occ, TySubst{"X", 1, repl}), p::vec(p::nat(), p::zero())));
    auto fix_repl = p::vec_fix(p::nat());
    CHECK(alpha_eq(ty_subst(occ, TySubst{"X", 1, fix_repl}), ty_inst(fix_repl, p::zero())));
    auto over = ty_inst(occ, var("extra"));
    CHECK_THROWS_AS(ty_subst(over, TySubst{"X", 1, repl}), SubstError);
  }

  TEST_CASE("type variable substitution avoids capture by fix binders") {
    // mu Y { X } with X := Y must rename the inner binder.
    auto inner = mu(Signature{"Y", {}, {{{}, {}, ty_var("X"), "b"}}, 0});
    auto out = ty_subst(inner, TySubst{"X", 0, ty_var("Y")});
    REQUIRE(out->kind == TypeKind::Fix);
    CHECK(out->sig.binder != "Y");
    CHECK(out->free_type_vars == NameSet{"Y"});
  }

  TEST_CASE("arity mismatch in a substitution") {
    std::vector<Term> two{unit_val(), unit_val()};
    CHECK_THROWS_AS(Subst({"x"}, two), SubstError);
    CtxMor bad{{}, {{"x", p::nat()}}, {}};
    CHECK_THROWS_AS(subst(var("x"), bad), SubstError);
  }

  TEST_CASE("composition of context morphisms") {
    auto nat = p::nat();
    TermCtx k{{"k", nat}};
    TermCtx n{{"n", nat}};
    CtxMor tau{k, n, {p::succ(var("k"))}};
    CtxMor sigma{{}, k, {p::zero()}};
    auto c = compose_ctx_mor(tau, sigma);
    REQUIRE(c.terms.size() == 1);
    CHECK(alpha_eq(c.terms[0], p::succ(p::zero())));
    CHECK(c.source.empty());
    CHECK(same_terms(compose_ctx_mor(tau, identity_ctx_mor(k)).terms, tau.terms));
    CHECK(same_terms(compose_ctx_mor(identity_ctx_mor(n), tau).terms, tau.terms));
    CHECK_THROWS_AS(compose_ctx_mor(tau, CtxMor{{}, n, {p::zero()}}), SubstError);
  }

  TEST_CASE("telescope substitution updates later entries") {
    auto nat = p::nat();
    TermCtx ctx{{"y", nat}, {"t", p::eq(nat, var("x"), var("y"))}};
    Subst s = one("x", p::zero());
    auto out = subst(ctx, s);
    REQUIRE(out.size() == 2);
    CHECK(alpha_eq(out[1].type, p::eq(nat, p::zero(), var(out[0].name))));
  }

  TEST_CASE("instantiating the first parameter") {
    auto nat = p::nat();
    TermCtx ps{{"x", nat}, {"y", nat}};
    auto body = p::eq(nat, var("x"), var("y"));
    auto r = instantiate_first(ps, body, p::zero());
    REQUIRE(r.params.size() == 1);
    CHECK(alpha_eq(r.body, p::eq(nat, p::zero(), var(r.params[0].name))));
  }

  TEST_CASE("property: free variables after substitution") {
    gen::Rng rng(21);
    for (int i = 0; i < 300; ++i) {
      auto t = gen::open_term(rng, {"x", "y", "z"}, 3);
      Subst s;
      s.bind("x", gen::open_term(rng, {"y", "w"}, 2));
      s.bind("y", gen::open_term(rng, {"x", "v"}, 2));
      auto out = subst(t, s);
      CHECK(out->free_vars == expected_free(t, s));
    }
  }

  TEST_CASE("property: substitution lemma and monoid laws") {
    gen::Rng rng(7);
    int lemma = 0, left = 0, right = 0, assoc = 0;
    for (int i = 0; i < 250; ++i) {
      auto g1 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
      auto g2 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
      auto g3 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
      auto g4 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
      auto sigma = gen::ctx_mor(rng, g1, g2);
      auto tau = gen::ctx_mor(rng, g2, g3);
      auto rho = gen::ctx_mor(rng, g3, g4);
      auto t = gen::open_term(rng, names_of(g3), 3);

      auto lhs = subst(subst(t, tau), sigma);
      auto rhs = subst(t, compose_ctx_mor(tau, sigma));
      CHECK(alpha_eq(lhs, rhs));
      ++lemma;

      CHECK(same_terms(compose_ctx_mor(tau, identity_ctx_mor(g2)).terms, tau.terms));
      ++right;
      CHECK(same_terms(compose_ctx_mor(identity_ctx_mor(g3), tau).terms, tau.terms));
      ++left;
      auto a1 = compose_ctx_mor(compose_ctx_mor(rho, tau), sigma);
      auto a2 = compose_ctx_mor(rho, compose_ctx_mor(tau, sigma));
      CHECK(same_terms(a1.terms, a2.terms));
      ++assoc;
    }
    CHECK(lemma >= 200);
    CHECK(left >= 200);
    CHECK(right >= 200);
    CHECK(assoc >= 200);
  }
}
