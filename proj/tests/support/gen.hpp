#pragma once

// Hand-rolled random generators for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dtt/prelude.hpp"
#include "dtt/syntax.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Binder names are drawn from the same small pool as free names so that
// capture situations come up often.
inline const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> pool{"x", "y", "z", "w", "v"};
  return pool;
}

// Closed terms of type Nat built from the prelude encodings.
inline dtt::Term nat_term(Rng& rng, int depth) {
  namespace p = dtt::prelude;
  using dtt::Term;
  auto nat = p::nat();
  if (depth <= 0) return p::nat_lit(static_cast<unsigned>(below(rng, 4)));
  switch (below(rng, 8)) {
    case 0:
      return p::nat_lit(static_cast<unsigned>(below(rng, 4)));
    case 1:
      return p::succ(nat_term(rng, depth - 1));
    case 2:
      return p::plus_app(nat_term(rng, depth - 1), nat_term(rng, depth - 1));
    case 3: {
      auto sum = dtt::inst(p::inj({}, nat, dtt::unit_ty(), 1), nat_term(rng, depth - 1));
      auto c = p::case_of({}, nat, dtt::unit_ty(), nat, "x", p::succ(dtt::var("x")), nat_term(rng, depth - 1));
      return dtt::inst(c, sum);
    }
    case 4: {
      auto a = nat_term(rng, depth - 1);
      auto b = nat_term(rng, depth - 1);
      return dtt::inst(p::proj({}, nat, nat, 1 + below(rng, 2)), p::pair({}, nat, nat, a, b));
    }
    case 5: {
      auto f = p::lambda("x", nat, nat, p::succ(p::succ(dtt::var("x"))));
      return p::apply(p::arrow(nat, nat), f, nat_term(rng, depth - 1));
    }
    case 6: {
      auto r = p::nat_rec(nat, nat_term(rng, depth - 1), "y", p::succ(dtt::var("y")));
      return dtt::inst(r, nat_term(rng, depth - 1));
    }
    default: {
      auto ex = p::exists("n", nat, nat);
      auto packed = p::pack("n", nat, nat, nat_term(rng, depth - 1), nat_term(rng, depth - 1));
      return p::exists_elim("n", nat, nat, nat, "m", p::plus_app(dtt::var("n"), dtt::var("m")), packed);
    }
  }
}

// Open, not necessarily typed terms over `vars`.
inline dtt::Term open_term(Rng& rng, const std::vector<std::string>& vars, int depth) {
  namespace p = dtt::prelude;
  auto leaf = [&]() -> dtt::Term {
    if (vars.empty() || below(rng, 4) == 0) return below(rng, 2) ? dtt::unit_val() : p::zero();
    return dtt::var(vars[below(rng, vars.size())]);
  };
  if (depth <= 0) return leaf();
  const auto& pool = name_pool();
  switch (below(rng, 6)) {
    case 0:
      return leaf();
    case 1:
      return p::succ(open_term(rng, vars, depth - 1));
    case 2: {
      auto y = pool[below(rng, pool.size())];
      auto inner = vars;
      inner.push_back(y);
      auto r = p::nat_rec(p::nat(), open_term(rng, vars, depth - 1), y, open_term(rng, inner, depth - 1));
      return dtt::inst(r, open_term(rng, vars, depth - 1));
    }
    case 3: {
      auto x = pool[below(rng, pool.size())];
      auto inner = vars;
      inner.push_back(x);
      auto f = p::lambda(x, p::nat(), p::nat(), open_term(rng, inner, depth - 1));
      return p::apply(p::arrow(p::nat(), p::nat()), f, open_term(rng, vars, depth - 1));
    }
    case 4:
      return p::pair({}, p::nat(), p::nat(), open_term(rng, vars, depth - 1), open_term(rng, vars, depth - 1));
    default:
      return dtt::inst(open_term(rng, vars, depth - 1), open_term(rng, vars, depth - 1));
  }
}

// Context of Nat hypotheses with distinct names from the pool.
inline dtt::TermCtx nat_ctx(Rng& rng, std::size_t n) {
  auto names = name_pool();
  std::shuffle(names.begin(), names.end(), rng);
  dtt::TermCtx out;
  for (std::size_t i = 0; i < std::min(n, names.size()); ++i) out.push_back({names[i], dtt::prelude::nat()});
  return out;
}

inline dtt::CtxMor ctx_mor(Rng& rng, const dtt::TermCtx& source, const dtt::TermCtx& target, int depth = 2) {
  dtt::CtxMor m{source, target, {}};
  auto names = dtt::names_of(source);
  for (std::size_t i = 0; i < target.size(); ++i) m.terms.push_back(open_term(rng, names, depth));
  return m;
}

}  // namespace gen
