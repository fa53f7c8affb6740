#include "dtt/prelude.hpp"

#include "dtt/subst.hpp"

namespace dtt::prelude {
namespace {

Branch branch(TermCtx local, std::vector<Term> index, Type codomain, std::string label) {
  return {std::move(local), std::move(index), std::move(codomain), std::move(label)};
}

Signature signature(std::string binder, TermCtx params, std::vector<Branch> branches) {
  return {std::move(binder), std::move(params), std::move(branches), 0};
}

// Binder name not free in any of the given types.
std::string binder_avoiding(const std::string& base, std::initializer_list<Type> types) {
  for (const auto& t : types) {
    if (t->free_type_vars.contains(base)) return fresh_name(base);
  }
  return base;
}

Clause clause(std::vector<std::string> params, std::string recvar, Term body) {
  return {std::move(params), std::move(recvar), std::move(body)};
}

std::string unused() { return fresh_name("u"); }

Type unit_plus_unit() { return coproduct_fix({}, unit_ty(), unit_ty()); }

}  // namespace

Type top() {
  static const Type t = nu(signature("X", {}, {branch({}, {}, ty_var("X"), "out")}));
  return t;
}

Term bang(Type from) {
  auto y = fresh_name("y");
  return corec(top(), std::move(from), {clause({}, y, var(y))});
}

Term unit_prime() { return inst(bang(unit_ty()), unit_val()); }

Type bottom() {
  static const Type t = mu(signature("X", {}, {branch({}, {}, ty_var("X"), "bot")}));
  return t;
}

Term bottom_elim(Type into) {
  auto y = fresh_name("y");
  return rec(bottom(), std::move(into), {clause({}, y, var(y))});
}

Type fibred_bottom_fix(const TermCtx& ctx) {
  return mu(signature("X", ctx, {branch(ctx, vars_of(ctx), ty_inst(ty_var("X"), vars_of(ctx)), "botF")}));
}

Type fibred_bottom(const TermCtx& ctx) { return ty_inst(fibred_bottom_fix(ctx), vars_of(ctx)); }

Term fibred_bottom_elim(const TermCtx& ctx, Type into) {
  auto y = fresh_name("y");
  auto r = rec(fibred_bottom_fix(ctx), abstract_over(ctx, std::move(into)), {clause(names_of(ctx), y, var(y))});
  return inst(r, vars_of(ctx));
}

Type nat() {
  static const Type t =
      mu(signature("X", {}, {branch({}, {}, unit_ty(), "z"), branch({}, {}, ty_var("X"), "s")}));
  return t;
}

Term zero() { return inst(ctor(1, nat()), unit_val()); }
Term succ() { return ctor(2, nat()); }
Term succ(Term n) { return inst(succ(), std::move(n)); }

Term nat_lit(unsigned n) {
  Term t = zero();
  for (unsigned i = 0; i < n; ++i) t = succ(t);
  return t;
}

std::optional<unsigned> as_nat_lit(const Term& t) {
  unsigned n = 0;
  Term cur = t;
  for (;;) {
    auto sp = spine_of(cur);
    if (sp.head->kind != TermKind::Ctor || sp.args.size() != 1 || !alpha_eq(sp.head->fix, nat())) return std::nullopt;
    if (sp.head->index == 1) {
      if (sp.args[0]->kind != TermKind::Unit) return std::nullopt;
      return n;
    }
    ++n;
    cur = sp.args[0];
  }
}

Term nat_rec(Type motive, Term base, const std::string& y, Term step) {
  return rec(nat(), std::move(motive), {clause({}, unused(), std::move(base)), clause({}, y, std::move(step))});
}

Type product_fix(const TermCtx& ctx, Type a1, Type a2) {
  auto p = binder_avoiding("P", {a1, a2});
  return nu(signature(p, ctx,
                      {branch(ctx, vars_of(ctx), std::move(a1), "fst"), branch(ctx, vars_of(ctx), std::move(a2), "snd")}));
}

Type product(const TermCtx& ctx, Type a1, Type a2) {
  return ty_inst(product_fix(ctx, std::move(a1), std::move(a2)), vars_of(ctx));
}

Term proj(const TermCtx& ctx, Type a1, Type a2, std::size_t k) {
  return inst(dtor(k, product_fix(ctx, std::move(a1), std::move(a2))), vars_of(ctx));
}

Term pair(const TermCtx& ctx, Type a1, Type a2, Term t1, Term t2) {
  auto c = corec(product_fix(ctx, std::move(a1), std::move(a2)), abstract_over(ctx, unit_ty()),
                 {clause(names_of(ctx), unused(), std::move(t1)), clause(names_of(ctx), unused(), std::move(t2))});
  return inst(inst(c, vars_of(ctx)), unit_val());
}

Type coproduct_fix(const TermCtx& ctx, Type a1, Type a2) {
  auto s = binder_avoiding("S", {a1, a2});
  return mu(signature(s, ctx,
                      {branch(ctx, vars_of(ctx), std::move(a1), "inl"), branch(ctx, vars_of(ctx), std::move(a2), "inr")}));
}

Type coproduct(const TermCtx& ctx, Type a1, Type a2) {
  return ty_inst(coproduct_fix(ctx, std::move(a1), std::move(a2)), vars_of(ctx));
}

Term inj(const TermCtx& ctx, Type a1, Type a2, std::size_t k) {
  return inst(ctor(k, coproduct_fix(ctx, std::move(a1), std::move(a2))), vars_of(ctx));
}

Term case_of(const TermCtx& ctx, Type a1, Type a2, Type into, const std::string& x, Term t1, Term t2) {
  auto r = rec(coproduct_fix(ctx, std::move(a1), std::move(a2)), abstract_over(ctx, std::move(into)),
               {clause(names_of(ctx), x, std::move(t1)), clause(names_of(ctx), x, std::move(t2))});
  return inst(r, vars_of(ctx));
}

Type pi(const std::string& x, Type a, Type b) {
  return nu(signature("F", {}, {branch({{x, std::move(a)}}, {}, std::move(b), "app")}));
}

Type arrow(Type a, Type b) { return pi("x", std::move(a), std::move(b)); }

Term lambda(const std::string& x, Type a, Type b, Term body) {
  return inst(corec(pi(x, std::move(a), std::move(b)), unit_ty(), {clause({x}, unused(), std::move(body))}), unit_val());
}

Term apply(Type pi_type, Term f, Term arg) {
  return inst(inst(dtor(1, std::move(pi_type)), std::move(arg)), std::move(f));
}

Type exists(const std::string& x, Type a, Type b) {
  return mu(signature("E", {}, {branch({{x, std::move(a)}}, {}, std::move(b), "pack")}));
}

Term pack(const std::string& x, Type a, Type b, Term t, Term s) {
  return inst(inst(ctor(1, exists(x, std::move(a), std::move(b))), std::move(t)), std::move(s));
}

Term exists_elim(const std::string& x, Type a, Type b, Type into, const std::string& y, Term p, Term t) {
  return inst(rec(exists(x, std::move(a), std::move(b)), std::move(into), {clause({x}, y, std::move(p))}), std::move(t));
}

Type sigma_f_fix(const std::string& x, Type i, const std::string& y, Type j, Term f, Type a) {
  return mu(signature("E", {{y, std::move(j)}}, {branch({{x, std::move(i)}}, {std::move(f)}, std::move(a), "in")}));
}

Type pi_f_fix(const std::string& x, Type i, const std::string& y, Type j, Term f, Type a) {
  return nu(signature("F", {{y, std::move(j)}}, {branch({{x, std::move(i)}}, {std::move(f)}, std::move(a), "out")}));
}

Type eq_fix(Type a) {
  return mu(signature("E", {{"x", a}, {"y", a}}, {branch({{"x", a}}, {var("x"), var("x")}, unit_ty(), "refl")}));
}

Type eq(Type a, Term lhs, Term rhs) { return ty_inst(ty_inst(eq_fix(std::move(a)), std::move(lhs)), std::move(rhs)); }

Term refl(Type a, Term x) { return inst(inst(ctor(1, eq_fix(std::move(a))), std::move(x)), unit_val()); }

Term eq_elim(Type a, const std::string& x, const std::string& y, Type into, Term p, Term lhs, Term rhs, Term proof) {
  auto motive = ty_abs(x, a, ty_abs(y, a, std::move(into)));
  auto r = rec(eq_fix(a), motive, {clause({x}, unused(), std::move(p))});
  Term args[] = {std::move(lhs), std::move(rhs), std::move(proof)};
  return inst(r, args);
}

Term repl(Type a, const std::string& x, Type p_type, Term p, Term lhs, Term rhs, Term proof) {
  auto y = x == "y" ? fresh_name("y") : std::string("y");
  Subst s;
  s.bind(x, var(y));
  return eq_elim(std::move(a), x, y, subst(p_type, s), std::move(p), std::move(lhs), std::move(rhs), std::move(proof));
}

Type vec_fix(Type a) {
  TermCtx k{{"k", nat()}};
  auto cell = ty_inst(product_fix(k, a, ty_inst(ty_var("X"), var("k"))), var("k"));
  return mu(signature("X", {{"n", nat()}},
                      {branch({}, {zero()}, unit_ty(), "nil"), branch(k, {succ(var("k"))}, cell, "cons")}));
}

Type vec(Type a, Term n) { return ty_inst(vec_fix(std::move(a)), std::move(n)); }

Term nil(Type a) { return inst(ctor(1, vec_fix(std::move(a))), unit_val()); }

Term cons(Type a, Term k, Term head, Term tail) {
  auto vf = vec_fix(a);
  auto kk = fresh_name("k");
  TermCtx kctx{{kk, nat()}};
  auto cell = product_fix(kctx, a, ty_inst(vf, var(kk)));
  auto w = fresh_name("w");
  auto seed = corec(cell, ty_abs(kk, nat(), ty_inst(vf, var(kk))),
                    {clause({kk}, unused(), std::move(head)), clause({kk}, w, var(w))});
  return inst(inst(ctor(2, vf), k), inst(inst(seed, k), std::move(tail)));
}

Term vec_length(Type a, Term n) {
  auto motive = ty_abs("n", nat(), nat());
  TermCtx k{{"k", nat()}};
  auto cell = product_fix(k, a, ty_inst(motive, var("k")));
  auto p = fresh_name("p");
  auto r = rec(vec_fix(a), motive,
               {clause({}, unused(), zero()), clause({"k"}, p, succ(inst(inst(dtor(2, cell), var("k")), var(p))))});
  return inst(r, std::move(n));
}

Type en() {
  static const Type t = nu(signature("X", {}, {branch({}, {}, coproduct_fix({}, unit_ty(), ty_var("X")), "pred")}));
  return t;
}

Term en_zero() {
  return inst(corec(en(), unit_ty(), {clause({}, unused(), inst(ctor(1, unit_plus_unit()), unit_val()))}), unit_val());
}

Term en_infinity() {
  auto y = fresh_name("y");
  return inst(corec(en(), unit_ty(), {clause({}, y, inst(ctor(2, unit_plus_unit()), var(y)))}), unit_val());
}

Term en_prim_corec(Type c, const std::string& y, Term d) {
  auto ce = coproduct_fix({}, c, en());
  auto one_c = coproduct_fix({}, unit_ty(), c);
  auto dd = coproduct_fix({}, one_c, en());
  auto out = coproduct_fix({}, unit_ty(), ce);
  auto one_en = coproduct_fix({}, unit_ty(), en());
  auto in = [](std::size_t k, const Type& fix, Term t) { return inst(ctor(k, fix), std::move(t)); };

  // (1 + C) + EN -> 1 + (C + EN); an EN value is unfolded once so that the
  // copy keeps its own observations.
  auto x = fresh_name("x");
  auto z = fresh_name("z");
  auto left = inst(rec(one_c, out, {clause({}, x, in(1, out, var(x))), clause({}, x, in(2, out, in(1, ce, var(x))))}),
                   var(x));
  auto right = inst(rec(one_en, out, {clause({}, z, in(1, out, var(z))), clause({}, z, in(2, out, in(2, ce, var(z))))}),
                    inst(dtor(1, en()), var(x)));
  auto a = rec(dd, out, {clause({}, x, left), clause({}, x, right)});

  auto w = fresh_name("w");
  auto choose = inst(rec(ce, dd, {clause({}, y, std::move(d)), clause({}, w, in(2, dd, var(w)))}), var(y));
  auto h = corec(en(), ce, {clause({}, y, inst(a, choose))});
  return inst(h, in(1, ce, var(y)));
}

Term en_succ_open() {
  auto c = coproduct_fix({}, en(), en());
  auto one_c = coproduct_fix({}, unit_ty(), c);
  auto dd = coproduct_fix({}, one_c, en());
  auto z = fresh_name("z");
  auto d = inst(rec(c, dd,
                    {clause({}, z, inst(ctor(1, dd), inst(ctor(2, one_c), inst(ctor(2, c), var(z))))),
                     clause({}, z, inst(ctor(2, dd), var(z)))}),
                var("y"));
  auto h = en_prim_corec(c, "y", d);
  Subst s;
  s.bind("y", inst(ctor(1, c), var("y")));
  return subst(h, s);
}

Term en_succ(Term n) {
  Subst s;
  s.bind("y", std::move(n));
  return subst(en_succ_open(), s);
}

Type pstr_fix(Type a) {
  TermCtx k{{"k", en()}};
  auto idx = en_succ(var("k"));
  return nu(signature("X", {{"n", en()}},
                      {branch(k, {idx}, std::move(a), "hd"), branch(k, {idx}, ty_inst(ty_var("X"), var("k")), "tl")}));
}

Type pstr(Type a, Term n) { return ty_inst(pstr_fix(std::move(a)), std::move(n)); }

Term plus() {
  auto fn = arrow(nat(), nat());
  auto r = fresh_name("r");
  return rec(nat(), fn,
             {clause({}, unused(), lambda("x", nat(), nat(), var("x"))),
              clause({}, r, lambda("x", nat(), nat(), succ(apply(fn, var(r), var("x")))))});
}

Term plus_app(Term m, Term n) { return apply(arrow(nat(), nat()), inst(plus(), std::move(m)), std::move(n)); }

std::vector<PreludeDecl> prelude_decls() {
  using K = PreludeDecl::Kind;
  auto type = [](std::string name, Type t, std::string what) {
    return PreludeDecl{std::move(name), K::Type, std::move(t), nullptr, {}, std::move(what)};
  };
  auto term = [](std::string name, Term t, TermCtx ctx, std::string what) {
    return PreludeDecl{std::move(name), K::Term, nullptr, std::move(t), std::move(ctx), std::move(what)};
  };
  TermCtx n_ctx{{"n", nat()}};
  auto nvec = vec(nat(), var("n"));
  return {
      type("Top", top(), "terminal object"),
      term("unitPrime", unit_prime(), {}, "canonical inhabitant of Top"),
      type("Bot", bottom(), "initial object"),
      type("Nat", nat(), "natural numbers"),
      term("zero", nat_lit(0), {}, "0"),
      term("one", nat_lit(1), {}, "1"),
      term("two", nat_lit(2), {}, "2"),
      term("three", nat_lit(3), {}, "3"),
      term("botElimNat", bottom_elim(nat()), {}, "ex falso into Nat"),
      type("BotN", fibred_bottom_fix(n_ctx), "empty type over n : Nat"),
      term("botNElim", fibred_bottom_elim(n_ctx, nvec), n_ctx, "ex falso into Vec n"),
      type("NatProd", product_fix({}, nat(), nat()), "Nat x Nat"),
      term("pairOneTwo", pair({}, nat(), nat(), nat_lit(1), nat_lit(2)), {}, "pairing"),
      type("NatSum", coproduct_fix({}, nat(), unit_ty()), "Nat + 1"),
      term("caseNat", case_of({}, nat(), unit_ty(), nat(), "x", succ(var("x")), nat_lit(0)), {}, "case analysis"),
      type("NatToNat", arrow(nat(), nat()), "function space"),
      term("idNat", lambda("x", nat(), nat(), var("x")), {}, "identity function"),
      type("PiVec", pi("n", nat(), nvec), "dependent function space"),
      type("ExVec", exists("n", nat(), nvec), "dependent sum"),
      type("EqNat", eq_fix(nat()), "equality on Nat"),
      type("VecNat", vec_fix(nat()), "vectors of Nat"),
      term("vnil", nil(nat()), {}, "empty vector"),
      term("vcons", cons(nat(), var("k"), var("a"), var("v")), {{"k", nat()}, {"a", nat()}, {"v", vec(nat(), var("k"))}},
           "vector extension"),
      term("repl",
           repl(nat(), "x", eq(nat(), succ(var("x")), succ(var("x"))), refl(nat(), succ(var("x"))), var("x"), var("y"),
                var("t")),
           {{"x", nat()}, {"y", nat()}, {"t", eq(nat(), var("x"), var("y"))}}, "transport along equality"),
      type("EN", en(), "extended naturals"),
      term("enZero", en_zero(), {}, "0 in EN"),
      term("enInf", en_infinity(), {}, "infinity in EN"),
      term("sinf", en_succ_open(), {{"y", en()}}, "successor on EN"),
      type("PStrNat", pstr_fix(nat()), "partial streams of Nat"),
      term("plus", plus(), {}, "addition"),
      term("plus23", plus_app(nat_lit(2), nat_lit(3)), {}, "2 + 3"),
  };
}

}  // namespace dtt::prelude
