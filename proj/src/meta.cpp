#include "dtt/meta.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dtt/prelude.hpp"
#include "dtt/subst.hpp"
#include "json.hpp"

namespace dtt::meta {

void MetaReport::absorb(const MetaReport& other) {
  instances.insert(instances.end(), other.instances.begin(), other.instances.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  max_steps = std::max(max_steps, other.max_steps);
  if (!seed) seed = other.seed;
}

std::string to_text(const MetaReport& r) {
  std::ostringstream os;
  for (const auto& i : r.instances) {
    os << r.subject << ' ' << (i.pass ? "PASS " : "FAIL ") << i.name << " steps=" << i.steps;
    if (!i.note.empty()) os << " (" << i.note << ')';
    os << '\n';
  }
  for (const auto& f : r.failures) {
    os << r.subject << " failure " << f.instance << " at step " << f.step << '\n';
    if (!f.term.empty()) os << "  term: " << f.term << '\n';
    if (!f.expected.empty()) os << "  expected: " << f.expected << '\n';
    if (!f.found.empty()) os << "  found: " << f.found << '\n';
  }
  os << r.subject << ": " << (r.pass() ? "PASS" : "FAIL") << " tried=" << r.tried()
     << " failures=" << r.failures.size() << " max_steps=" << r.max_steps;
  if (r.seed) os << " seed=" << *r.seed;
  os << '\n';
  return os.str();
}

std::string to_json_lines(const MetaReport& r) {
  std::ostringstream os;
  for (const auto& i : r.instances) {
    nlohmann::json j{{"subject", r.subject},
                     {"name", i.name},
                     {"verdict", i.pass ? "pass" : "fail"},
                     {"steps", i.steps}};
    if (!i.note.empty()) j["note"] = i.note;
    os << j.dump() << '\n';
  }
  nlohmann::json s{{"subject", r.subject},
                   {"summary", true},
                   {"tried", r.tried()},
                   {"failures", r.failures.size()},
                   {"max_steps", r.max_steps},
                   {"verdict", r.pass() ? "pass" : "fail"}};
  if (r.seed) s["seed"] = *r.seed;
  os << s.dump() << '\n';
  return os.str();
}

namespace {

void record(MetaReport& r, MetaInstance inst, std::optional<MetaFailure> failure = std::nullopt) {
  inst.pass = !failure.has_value();
  r.max_steps = std::max(r.max_steps, inst.steps);
  r.instances.push_back(std::move(inst));
  if (failure) r.failures.push_back(std::move(*failure));
}

std::string describe(const InferredType& t, const NameTable* names) { return to_string(t.params, t.body, names); }

}  // namespace

MetaReport subject_reduction_trace(const TermCtx& ctx, const Term& t, std::size_t fuel, const std::string& name,
                                   const NameTable* names) {
  MetaReport r;
  r.subject = "subject-reduction";
  TypeChecker tc;
  InferredType ty;
  try {
    ty = tc.infer_term(ctx, t);
  } catch (const TypeError& e) {
    record(r, {name, false, 0, "start does not check"}, MetaFailure{name, 0, to_string(t, names), {}, e.what()});
    return r;
  }
  Term cur = t;
  std::size_t n = 0;
  std::string note;
  while (auto s = step(cur)) {
    if (n == fuel) {
      note = "fuel exhausted";
      break;
    }
    cur = s->result;
    ++n;
    try {
      tc.check_term(ctx, cur, ty);
    } catch (const TypeError& e) {
      record(r, {name, false, n, {}}, MetaFailure{name, n, to_string(cur, names), describe(ty, names), e.what()});
      return r;
    }
  }
  record(r, {name, true, n, note});
  return r;
}

MetaReport type_action_typing(const TermCtx& delta, const Type& c, const TyCtx& theta,
                              const std::vector<ActionArg>& args, const std::string& hole, const std::string& name,
                              const NameTable* names) {
  MetaReport r;
  r.subject = "type-action";
  if (theta.size() != args.size()) {
    record(r, {name, false, 0, {}}, MetaFailure{name, 0, {}, std::to_string(theta.size()) + " arguments",
                                               std::to_string(args.size()) + " arguments"});
    return r;
  }
  try {
    TypeChecker tc;
    auto info = tc.check_type(theta, delta, c);
    auto a = ty_action(c, theta, args, hole);
    if (a.params.size() != info.params.size()) {
      record(r, {name, false, 0, {}},
             MetaFailure{name, 0, to_string(a.term, names), std::to_string(info.params.size()) + " parameters",
                         std::to_string(a.params.size()) + " parameters"});
      return r;
    }
    std::vector<TySubst> src, tgt;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      src.push_back({theta[i].name, theta[i].params.size(), args[i].source});
      tgt.push_back({theta[i].name, theta[i].params.size(), args[i].target});
    }
    Subst ren;
    TermCtx q;
    for (std::size_t j = 0; j < info.params.size(); ++j) {
      q.push_back({a.params[j], subst(info.params[j].type, ren)});
      ren.bind(info.params[j].name, var(a.params[j]));
    }
    TermCtx ctx = delta;
    ctx.insert(ctx.end(), q.begin(), q.end());
    ctx.push_back({hole, ty_inst(ty_subst(c, src), vars_of(q))});
    tc.check_term_ctx(ctx);
    InferredType expected{{}, ty_inst(ty_subst(c, tgt), vars_of(q)), 0};
    try {
      tc.check_term(ctx, a.term, expected);
    } catch (const TypeError& e) {
      record(r, {name, false, 0, {}},
             MetaFailure{name, 0, to_string(a.term, names), describe(expected, names), e.what()});
      return r;
    }
  } catch (const std::exception& e) {
    record(r, {name, false, 0, {}}, MetaFailure{name, 0, to_string(c, names), "a well-formed instance", e.what()});
    return r;
  }
  record(r, {name, true, 0, {}});
  return r;
}

namespace {

class FixCollector {
 public:
  std::vector<Type> found;

  void type(const Type& t) {
    switch (t->kind) {
      case TypeKind::Unit:
      case TypeKind::Var:
        return;
      case TypeKind::Inst:
        type(t->head);
        term(t->arg);
        return;
      case TypeKind::Abs:
        type(t->domain);
        type(t->body);
        return;
      case TypeKind::Fix:
        if (t->free_type_vars.empty() && std::none_of(found.begin(), found.end(),
                                                      [&](const Type& f) { return alpha_eq(f, t); })) {
          found.push_back(t);
        }
        for (const auto& p : t->sig.params) type(p.type);
        for (const auto& b : t->sig.branches) {
          for (const auto& e : b.local) type(e.type);
          for (const auto& i : b.index) term(i);
          type(b.codomain);
        }
        return;
    }
  }

  void term(const Term& t) {
    switch (t->kind) {
      case TermKind::Unit:
      case TermKind::Var:
        return;
      case TermKind::Inst:
        term(t->head);
        term(t->arg);
        return;
      case TermKind::Ctor:
      case TermKind::Dtor:
        type(t->fix);
        return;
      case TermKind::Rec:
      case TermKind::Corec:
        type(t->fix);
        type(t->motive);
        for (const auto& c : t->clauses) term(c.body);
        return;
    }
  }
};

std::string fix_label(const Type& f, const NameTable* names) {
  auto s = to_string(f, names);
  return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

}  // namespace

MetaReport type_action_corpus(const std::vector<Type>& types, const std::vector<Term>& terms,
                              const NameTable* names) {
  FixCollector col;
  for (const auto& t : types) col.type(t);
  for (const auto& t : terms) col.term(t);

  MetaReport r;
  r.subject = "type-action";
  for (const auto& f : col.found) {
    const auto& sig = f->sig;
    Subst pren;
    TermCtx p;
    for (const auto& e : sig.params) {
      auto n = fresh_name(e.name);
      p.push_back({n, subst(e.type, pren)});
      pren.bind(e.name, var(n));
    }
    TyCtx theta{{sig.binder, p}};
    auto unit_over = abstract_over(sig.params, unit_ty());
    auto hole = fresh_name("x");

    std::vector<std::pair<std::string, ActionArg>> cases;
    cases.push_back({"identity", {var(hole), f, f}});
    cases.push_back({"terminal", {unit_val(), f, unit_over}});
    if (f->polarity == Polarity::Mu) {
      std::vector<Clause> clauses;
      for (const auto& b : sig.branches) {
        std::vector<std::string> ps;
        for (const auto& e : b.local) ps.push_back(fresh_name(e.name));
        clauses.push_back({ps, fresh_name("u"), unit_val()});
      }
      auto r_unit = inst(inst(rec(f, unit_over, std::move(clauses)), vars_of(p)), var(hole));
      cases.push_back({"fold", {r_unit, f, unit_over}});
    }

    auto label = fix_label(f, names);
    for (std::size_t k = 0; k < sig.branches.size(); ++k) {
      const auto& b = sig.branches[k];
      for (const auto& [what, arg] : cases) {
        auto name = label + " branch " + std::to_string(k + 1) + " " + what;
        r.absorb(type_action_typing(b.local, b.codomain, theta, {arg}, hole, name, names));
      }
    }
  }
  return r;
}

namespace {

InferredType subst_type(const InferredType& t, Subst s) {
  auto params = subst(t.params, s);
  return {params, subst(t.body, s), t.level};
}

void check_instance(MetaReport& r, TypeChecker& tc, const std::string& name, const TermCtx& ctx, const Term& t,
                    const InferredType& ty, const NameTable* names) {
  try {
    tc.check_term_ctx(ctx);
    tc.check_term(ctx, t, ty);
    record(r, {name, true, 0, {}});
  } catch (const TypeError& e) {
    record(r, {name, false, 0, {}}, MetaFailure{name, 0, to_string(t, names), describe(ty, names), e.what()});
  }
}

}  // namespace

MetaReport admissibility_suite(const std::vector<OpenJudgement>& corpus, const std::vector<ClosedTerm>& pool,
                               const NameTable* names) {
  MetaReport r;
  r.subject = "admissibility";
  TypeChecker tc;
  for (const auto& j : corpus) {
    InferredType ty;
    try {
      ty = tc.infer_term(j.ctx, j.term);
    } catch (const TypeError& e) {
      record(r, {j.name, false, 0, "corpus judgement"}, MetaFailure{j.name, 0, to_string(j.term, names), {}, e.what()});
      continue;
    }
    const auto& ctx = j.ctx;

    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (!ctx[i].type->free_vars.empty()) continue;
      for (const auto& c : pool) {
        if (!tc.convertible(c.type, ctx[i].type)) continue;
        Subst s;
        s.bind(ctx[i].name, c.term);
        TermCtx rest(ctx.begin() + static_cast<std::ptrdiff_t>(i) + 1, ctx.end());
        TermCtx out(ctx.begin(), ctx.begin() + static_cast<std::ptrdiff_t>(i));
        auto moved = subst(rest, s);
        out.insert(out.end(), moved.begin(), moved.end());
        check_instance(r, tc, "substitution " + j.name + " " + ctx[i].name + ":=" + c.name, out, subst(j.term, s),
                       subst_type(ty, s), names);
      }
    }

    for (std::size_t i = 0; i + 1 < ctx.size(); ++i) {
      if (ctx[i + 1].type->free_vars.contains(ctx[i].name)) continue;
      auto swapped = ctx;
      std::swap(swapped[i], swapped[i + 1]);
      check_instance(r, tc, "exchange " + j.name + " " + ctx[i].name + "<->" + ctx[i + 1].name, swapped, j.term, ty,
                     names);
    }

    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for (std::size_t k = i + 1; k < ctx.size(); ++k) {
        if (!alpha_eq(ctx[i].type, ctx[k].type)) continue;
        Subst s;
        s.bind(ctx[k].name, var(ctx[i].name));
        TermCtx out(ctx.begin(), ctx.begin() + static_cast<std::ptrdiff_t>(k));
        TermCtx rest(ctx.begin() + static_cast<std::ptrdiff_t>(k) + 1, ctx.end());
        auto moved = subst(rest, s);
        out.insert(out.end(), moved.begin(), moved.end());
        check_instance(r, tc, "contraction " + j.name + " " + ctx[k].name + ":=" + ctx[i].name, out,
                       subst(j.term, s), subst_type(ty, s), names);
      }
    }
  }
  return r;
}

std::vector<OpenJudgement> pairing_judgements(const std::vector<ClosedTerm>& pool, std::size_t max_types) {
  std::vector<std::pair<std::string, Type>> types;
  for (const auto& c : pool) {
    if (types.size() == max_types) break;
    if (std::none_of(types.begin(), types.end(), [&](const auto& t) { return alpha_eq(t.second, c.type); })) {
      types.emplace_back(c.name, c.type);
    }
  }
  std::vector<OpenJudgement> out;
  for (const auto& [an, a] : types) {
    for (const auto& [bn, b] : types) {
      TermCtx ctx{{"x", a}, {"y", b}};
      out.push_back({"pair(" + an + "," + bn + ")", ctx, prelude::pair({}, a, b, var("x"), var("y"))});
    }
  }
  return out;
}

MetaReport sn_probe(const Term& t, const SnOptions& opts, const std::string& name, const NameTable* names) {
  MetaReport r;
  r.subject = "sn";
  r.seed = opts.seed;
  Term nf;
  try {
    auto n = normalize(t, opts.fuel);
    nf = n.term;
    record(r, {name + " deterministic", true, n.trace.steps.size(), {}});
  } catch (const FuelExhausted& e) {
    record(r, {name + " deterministic", false, opts.fuel, "fuel exhausted"},
           MetaFailure{name + " deterministic", opts.fuel, to_string(t, names), "normal form", "fuel exhausted"});
  } catch (const std::exception& e) {
    record(r, {name + " deterministic", false, 0, {}},
           MetaFailure{name + " deterministic", 0, to_string(t, names), "normal form", e.what()});
  }

  for (std::size_t i = 0; i < opts.strategies; ++i) {
    auto seed = opts.seed + i;
    auto inst_name = name + " random#" + std::to_string(seed);
    std::mt19937_64 rng(seed);
    Term cur = t;
    std::size_t n = 0;
    try {
      bool exhausted = false;
      for (auto rs = redexes(cur); !rs.empty(); rs = redexes(cur)) {
        if (n == opts.fuel) {
          exhausted = true;
          break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
        cur = contract_at(cur, rs[pick(rng)]).result;
        ++n;
      }
      if (exhausted) {
        record(r, {inst_name, false, n, "fuel exhausted"},
               MetaFailure{inst_name, n, to_string(t, names), "normal form", "fuel exhausted"});
        continue;
      }
      std::string note;
      if (nf) note = alpha_eq(cur, nf) ? "same normal form" : "different normal form";
      record(r, {inst_name, true, n, note});
    } catch (const std::exception& e) {
      record(r, {inst_name, false, n, {}}, MetaFailure{inst_name, n, to_string(cur, names), "normal form", e.what()});
    }
  }
  return r;
}

}  // namespace dtt::meta
