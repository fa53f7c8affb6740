// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dtt/driver.hpp"
#include "dtt/meta.hpp"
#include "dtt/prelude.hpp"
#include "dtt/subst.hpp"
#include "dtt/surface.hpp"
#include "support/denot.hpp"
#include "support/gen.hpp"

using namespace dtt;
namespace p = dtt::prelude;

namespace {

const std::string kPrelude = DTT_SOURCE_DIR "/prelude/prelude.dtt";
const std::string kData = DTT_SOURCE_DIR "/tests/data/";

// Collects failed sub-checks of one criterion.
struct Result {
  std::vector<std::string> failed;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
};

driver::Loaded load_prelude_file() {
  driver::Options o;
  o.prelude = false;
  driver::Loaded l;
  std::ostringstream err;
  if (driver::load_file(kPrelude, o, l, err) != driver::kOk) throw std::runtime_error(err.str());
  return l;
}

Term nf(const Term& t) { return normalize(t).term; }

Result prelude_checks() {
  Result r;
  driver::Options o;
  o.prelude = false;
  std::ostringstream out, err;
  r.expect(driver::run_check(kPrelude, o, out, err) == driver::kOk, "check exit code");
  auto l = load_prelude_file();
  // Top, Bot, fibred Bot, Nat, product, coproduct, Pi, arrow, exists, Eq, Vec, EN, s-infinity, PStr.
  for (const char* t : {"Top", "Bot", "BotN", "Nat", "NatProd", "NatSum", "PiVec", "NatToNat", "ExVec", "EqNat",
                        "VecNat", "EN", "PStrNat"}) {
    r.expect(l.env.find_type(t) != nullptr, std::string("missing type ") + t);
  }
  for (const char* t : {"unitPrime", "botElimNat", "botNElim", "pairOneTwo", "caseNat", "idNat", "packNil", "reflTwo",
                        "repl", "vcons", "sinf", "plus"}) {
    r.expect(l.env.find_term(t) != nullptr, std::string("missing term ") + t);
  }
  std::size_t compared = 0;
  for (const auto& d : p::prelude_decls()) {
    if (d.kind == p::PreludeDecl::Kind::Type) {
      const auto* t = l.env.find_type(d.name);
      r.expect(t && alpha_eq(t->fix, d.type), "builder differs: " + d.name);
    } else {
      const auto* t = l.env.find_term(d.name);
      r.expect(t && alpha_eq(t->params, d.context) && alpha_eq(t->body, d.term), "builder differs: " + d.name);
    }
    ++compared;
  }
  r.detail = std::to_string(compared) + " builders compared";
  return r;
}

Result reduction_equations() {
  Result r;
  auto nat = p::nat();
  r.expect(alpha_eq(nf(inst(dtor(1, p::top()), p::unit_prime())), p::unit_prime()), "out unit'");

  auto pr = p::pair({}, nat, nat, var("a"), var("b"));
  r.expect(alpha_eq(nf(inst(p::proj({}, nat, nat, 1), pr)), var("a")), "pi_1");
  r.expect(alpha_eq(nf(inst(p::proj({}, nat, nat, 2), pr)), var("b")), "pi_2");

  auto t1 = p::succ(var("x"));
  auto t2 = p::plus_app(var("x"), p::nat_lit(1));
  auto cs = p::case_of({}, nat, nat, nat, "x", t1, t2);
  for (std::size_t i = 1; i <= 2; ++i) {
    auto got = nf(inst(cs, inst(p::inj({}, nat, nat, i), var("s"))));
    Subst s;
    s.bind("x", var("s"));
    r.expect(alpha_eq(got, nf(subst(i == 1 ? t1 : t2, s))), "case kappa_" + std::to_string(i));
  }

  auto g = p::plus_app(var("x"), var("x"));
  auto beta = nf(p::apply(p::arrow(nat, nat), p::lambda("x", nat, nat, g), var("a")));
  Subst sa;
  sa.bind("x", var("a"));
  r.expect(alpha_eq(beta, nf(subst(g, sa))), "lambda beta");

  auto body = p::plus_app(var("x"), var("y"));
  auto e = p::exists_elim("x", nat, nat, nat, "y", body, p::pack("x", nat, nat, var("t"), var("s")));
  Subst st;
  st.bind("x", var("t"));
  st.bind("y", var("s"));
  r.expect(alpha_eq(nf(e), nf(subst(body, st))), "exists elimination");
  return r;
}

Result arithmetic_oracle() {
  Result r;
  std::size_t n_cases = 0;
  for (unsigned m = 0; m <= 5; ++m) {
    for (unsigned n = 0; n <= 5; ++n) {
      auto t = p::plus_app(p::nat_lit(m), p::nat_lit(n));
      unsigned expected = oracle::to_nat(oracle::eval(t, {}));
      r.expect(expected == m + n, "oracle " + std::to_string(m) + "+" + std::to_string(n));
      r.expect(alpha_eq(nf(t), p::nat_lit(expected)), "kernel " + std::to_string(m) + "+" + std::to_string(n));
      ++n_cases;
    }
  }
  r.detail = std::to_string(n_cases) + " cases";
  return r;
}

Result subject_reduction() {
  Result r;
  auto l = load_prelude_file();
  meta::MetaReport all;
  std::size_t defs = 0;
  for (const auto& d : l.env.terms()) {
    if (!d.params.empty()) continue;
    ++defs;
    all.absorb(meta::subject_reduction_trace({}, d.body, kDefaultTermFuel, d.name, &l.env.name_table()));
  }
  for (const auto& f : all.failures) r.failed.push_back(f.instance);
  r.detail = std::to_string(defs) + " definitions, " + std::to_string(all.tried()) + " instances";
  return r;
}

Result type_action() {
  Result r;
  auto l = load_prelude_file();
  std::vector<Type> types;
  for (const auto& t : l.env.types()) types.push_back(t.fix);
  std::vector<Term> bodies;
  for (const auto& t : l.env.terms()) bodies.push_back(t.body);
  auto rep = meta::type_action_corpus(types, bodies, &l.env.name_table());
  for (const auto& f : rep.failures) r.failed.push_back(f.instance);
  for (const auto& t : l.env.types()) {
    for (std::size_t k = 1; k <= t.fix->sig.branches.size(); ++k) {
      auto want = t.name + " branch " + std::to_string(k) + " ";
      bool seen = false;
      for (const auto& i : rep.instances) seen |= i.name.rfind(want, 0) == 0;
      r.expect(seen, "no instance for " + want);
    }
  }
  r.detail = std::to_string(rep.tried()) + " instances";
  return r;
}

Result strong_normalisation() {
  Result r;
  auto l = load_prelude_file();
  meta::MetaReport all;
  for (const auto& d : l.env.terms()) {
    all.absorb(meta::sn_probe(d.body, {20, 100000, 1}, d.name, &l.env.name_table()));
  }
  for (const auto& f : all.failures) r.failed.push_back(f.instance);
  r.detail = std::to_string(all.tried()) + " runs, max steps " + std::to_string(all.max_steps);
  return r;
}

std::optional<RuleTag> file_error(const std::string& file) {
  Environment env;
  std::vector<DeclReport> reports;
  std::ostringstream err;
  if (driver::load_text(driver::embedded_prelude(), "prelude", env, reports, err) != driver::kOk) return {};
  std::ifstream in(kData + file);
  std::stringstream buf;
  buf << in.rdbuf();
  TypeChecker tc;
  Elaborator el(env, tc);
  try {
    for (const auto& d : surface::parse_module(buf.str()).decls) el.declare(d);
  } catch (const TypeError& e) {
    return e.rule();
  } catch (const std::exception&) {
  }
  return {};
}

Result negative_tests() {
  Result r;
  r.expect(file_error("neg_positivity_ctx.dtt") == RuleTag::StrictPositivity, "(x : X) context");
  r.expect(file_error("neg_positivity_arrow.dtt") == RuleTag::StrictPositivity, "X -> B");
  r.expect(file_error("neg_pstr_hd_zero.dtt") == RuleTag::Conv, "hd at EN-zero");

  auto rule_of = [](const std::function<void()>& f) -> std::optional<RuleTag> {
    try {
      f();
    } catch (const TypeError& e) {
      return e.rule();
    }
    return {};
  };
  r.expect(rule_of([] { check_term_ctx({{"x", ty_var("X")}}); }) == RuleTag::StrictPositivity, "kernel (x : X)");
  auto neg = mu(Signature{"X", {}, {{{}, {}, p::arrow(ty_var("X"), unit_ty()), "n"}}, 0});
  r.expect(rule_of([&] { check_type({}, {}, neg); }) == RuleTag::StrictPositivity, "kernel X -> B");
  TermCtx z{{"s", p::pstr(p::nat(), p::en_zero())}};
  auto hd = inst(inst(dtor(1, p::pstr_fix(p::nat())), p::en_zero()), var("s"));
  r.expect(rule_of([&] { infer_term(z, hd); }) == RuleTag::Conv, "kernel hd at EN-zero");
  return r;
}

Result admissibility() {
  Result r;
  auto l = load_prelude_file();
  std::vector<meta::OpenJudgement> corpus;
  std::vector<meta::ClosedTerm> pool;
  for (const auto& d : l.env.terms()) {
    if (!d.params.empty()) {
      corpus.push_back({d.name, d.params, d.body});
    } else if (d.type.params.empty() && d.type.body->free_vars.empty()) {
      pool.push_back({d.name, d.body, d.type.body});
    }
  }
  auto pairs = meta::pairing_judgements(pool);
  corpus.insert(corpus.end(), pairs.begin(), pairs.end());
  auto rep = meta::admissibility_suite(corpus, pool, &l.env.name_table());
  for (const auto& f : rep.failures) r.failed.push_back(f.instance);
  std::size_t sub = 0, ex = 0, con = 0;
  for (const auto& i : rep.instances) {
    sub += i.name.rfind("substitution", 0) == 0;
    ex += i.name.rfind("exchange", 0) == 0;
    con += i.name.rfind("contraction", 0) == 0;
  }
  r.expect(rep.tried() >= 30, "fewer than 30 instances");
  r.expect(sub > 0 && ex > 0 && con > 0, "a structural rule is not covered");
  r.detail = std::to_string(sub) + " substitution, " + std::to_string(ex) + " exchange, " + std::to_string(con) +
             " contraction";
  return r;
}

bool same_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!alpha_eq(a[i], b[i])) return false;
  }
  return true;
}

Result engine_laws() {
  Result r;
  gen::Rng rng(2024);
  const int n = 200;
  int idem = 0, lemma = 0, left = 0, right = 0, assoc = 0;
  for (int i = 0; i < n; ++i) {
    auto t = gen::nat_term(rng, 3);
    auto once = nf(t);
    idem += alpha_eq(nf(once), once);

    auto g1 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
    auto g2 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
    auto g3 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
    auto g4 = gen::nat_ctx(rng, 1 + gen::below(rng, 3));
    auto sigma = gen::ctx_mor(rng, g1, g2);
    auto tau = gen::ctx_mor(rng, g2, g3);
    auto rho = gen::ctx_mor(rng, g3, g4);
    auto u = gen::open_term(rng, names_of(g3), 3);
    lemma += alpha_eq(subst(subst(u, tau), sigma), subst(u, compose_ctx_mor(tau, sigma)));
    left += same_terms(compose_ctx_mor(identity_ctx_mor(g3), tau).terms, tau.terms);
    right += same_terms(compose_ctx_mor(tau, identity_ctx_mor(g2)).terms, tau.terms);
    assoc += same_terms(compose_ctx_mor(compose_ctx_mor(rho, tau), sigma).terms,
                        compose_ctx_mor(rho, compose_ctx_mor(tau, sigma)).terms);
  }
  r.expect(idem == n, "idempotence");
  r.expect(lemma == n, "substitution lemma");
  r.expect(left == n && right == n, "identity laws");
  r.expect(assoc == n, "associativity");
  r.detail = std::to_string(n) + " instances per law";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"prelude checks and contains every encoding", prelude_checks},
      {"reduction equations hold as normal forms", reduction_equations},
      {"addition agrees with the denotational oracle for m, n <= 5", arithmetic_oracle},
      {"subject reduction on prelude definitions", subject_reduction},
      {"type action typing on every branch codomain", type_action},
      {"termination under deterministic and 20 random strategies", strong_normalisation},
      {"negative tests raise the expected error class", negative_tests},
      {"structural rules are admissible on corpus instances", admissibility},
      {"idempotence, substitution lemma and monoid laws", engine_laws},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.failed.push_back(std::string("exception: ") + e.what());
    }
    bool ok = r.failed.empty();
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << (i + 1) << ": " << criteria[i].first;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
    std::cout << '\n';
    for (const auto& f : r.failed) std::cout << "  - " << f << '\n';
  }
  return failures == 0 ? 0 : 1;
}
