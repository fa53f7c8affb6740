#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dtt/check.hpp"
#include "dtt/driver.hpp"
#include "dtt/prelude.hpp"
#include "dtt/surface.hpp"

using namespace dtt;
namespace p = dtt::prelude;
namespace s = dtt::surface;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kData = DTT_SOURCE_DIR "/tests/data/";
const std::string kPrelude = DTT_SOURCE_DIR "/prelude/prelude.dtt";

// Elaborates every declaration of a module into a fresh environment.
Environment elaborate(const s::SourceModule& m) {
  Environment env;
  TypeChecker tc;
  tc.set_names(&env.name_table());
  Elaborator el(env, tc);
  for (const auto& d : m.decls) el.declare(d);
  return env;
}

Environment prelude_env() {
  Environment env;
  std::vector<DeclReport> reports;
  std::ostringstream err;
  REQUIRE(driver::load_text(driver::embedded_prelude(), "prelude", env, reports, err) == driver::kOk);
  return env;
}

struct Run {
  int code;
  std::string out, err;
};

Run check(const std::string& path, bool prelude = true) {
  driver::Options o;
  o.prelude = prelude;
  std::ostringstream out, err;
  int c = driver::run_check(path, o, out, err);
  return {c, out.str(), err.str()};
}

Run eval(const std::string& path, const std::string& name, driver::Options o = {}) {
  std::ostringstream out, err;
  int c = driver::run_eval(path, name, o, out, err);
  return {c, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli_frontend") {
  TEST_CASE("parse: a single definition") {
    auto m = s::parse_module("def z := ctor 1 of Nat @ unit ;");
    REQUIRE(m.decls.size() == 1);
    CHECK(m.decls[0].kind == s::SDecl::Kind::Def);
    CHECK(m.decls[0].name == "z");
    // It elaborates to 0 : Nat on top of the prelude.
    auto env = prelude_env();
    TypeChecker tc;
    Elaborator el(env, tc);
    el.declare(m.decls[0]);
    const auto* z = env.find_term("z");
    REQUIRE(z);
    CHECK(alpha_eq(z->body, p::zero()));
    CHECK(alpha_eq(z->type.body, p::nat()));
  }

  TEST_CASE("parse: empty text and comments") {
    CHECK(s::parse_module("").decls.empty());
    CHECK(s::parse_module("  -- only a comment\n\n").decls.empty());
    auto m = s::parse_module("-- c\ndef u := unit ; -- trailing\n");
    CHECK(m.decls.size() == 1);
  }

  TEST_CASE("parse: error position and expected set") {
    try {
      s::parse_module("def x := ;");
      FAIL("expected a parse error");
    } catch (const s::ParseError& e) {
      CHECK(e.span().line == 1);
      CHECK(e.span().col == 10);
      CHECK_FALSE(e.expected().empty());
      CHECK(contains(e.message(), "';'"));
    }
    try {
      s::parse_module("def a := unit ;\ntype T = mu X { b : ctx arg Unit idx () ");
      FAIL("expected a parse error");
    } catch (const s::ParseError& e) {
      CHECK(e.span().line == 2);
    }
  }

  TEST_CASE("parse: application is left associative") {
    auto m = s::parse_module("def t := f @ a @ b ;");
    const auto& b = *m.decls[0].body;
    REQUIRE(b.kind == s::STerm::Kind::Inst);
    CHECK(b.arg->name == "b");
    CHECK(b.head->kind == s::STerm::Kind::Inst);
    CHECK(b.head->arg->name == "a");
  }

  TEST_CASE("parse: type declarations carry branches and spans") {
    auto m = s::parse_module("type N = mu X { z : ctx arg Unit idx () | s : ctx arg X idx () } ;");
    REQUIRE(m.decls.size() == 1);
    const auto& f = *m.decls[0].fix;
    CHECK(f.polarity == Polarity::Mu);
    REQUIRE(f.branches.size() == 2);
    CHECK(f.branches[1].label == "s");
    CHECK(f.branches[1].span.col > f.branches[0].span.col);
  }

  TEST_CASE("elaboration: labels become constructor aliases") {
    auto env = elaborate(s::parse_module(
        "type N = mu X { z : ctx arg Unit idx () | s : ctx arg X idx () } ;\n"
        "def two := s @ (s @ (z @ unit)) ;"));
    const auto* n = env.find_type("N");
    REQUIRE(n);
    CHECK(alpha_eq(n->fix, p::nat()));
    const auto* two = env.find_term("two");
    REQUIRE(two);
    CHECK(alpha_eq(two->body, p::nat_lit(2)));
    const auto* s_alias = env.find_alias("s");
    REQUIRE(s_alias);
    CHECK(s_alias->is_ctor);
    CHECK(s_alias->index == 2);
  }

  TEST_CASE("elaboration: definitions with parameters are substituted at use") {
    auto env = elaborate(s::parse_module(
        "type N = mu X { z : ctx arg Unit idx () | s : ctx arg X idx () } ;\n"
        "def succ2 (n : N) := s @ (s @ n) ;\n"
        "def four := succ2 @ (succ2 @ (z @ unit)) ;"));
    CHECK(alpha_eq(env.find_term("four")->body, p::nat_lit(4)));
    CHECK(env.find_term("succ2")->params.size() == 1);
  }

  TEST_CASE("elaboration: unknown names and wrong ascriptions are rejected") {
    CHECK_THROWS_AS(elaborate(s::parse_module("def a := nope ;")), ElabError);
    CHECK_THROWS_AS(elaborate(s::parse_module("def a : Nope := unit ;")), ElabError);
    CHECK_THROWS_AS(elaborate(s::parse_module(
                        "type N = mu X { z : ctx arg Unit idx () } ;\n"
                        "def a : N := unit ;")),
                    TypeError);
  }

  TEST_CASE("round trip: print then parse gives the same module") {
    auto text = slurp(kPrelude);
    auto m = s::parse_module(text);
    auto printed = s::print_module(m);
    auto m2 = s::parse_module(printed);
    CHECK(s::same_module(m, m2));
    CHECK(s::print_module(m2) == printed);

    auto e1 = elaborate(m);
    auto e2 = elaborate(m2);
    REQUIRE(e1.types().size() == e2.types().size());
    REQUIRE(e1.terms().size() == e2.terms().size());
    for (std::size_t i = 0; i < e1.types().size(); ++i) {
      CAPTURE(e1.types()[i].name);
      CHECK(alpha_eq(e1.types()[i].fix, e2.types()[i].fix));
    }
    for (std::size_t i = 0; i < e1.terms().size(); ++i) {
      CAPTURE(e1.terms()[i].name);
      CHECK(alpha_eq(e1.terms()[i].params, e2.terms()[i].params));
      CHECK(alpha_eq(e1.terms()[i].body, e2.terms()[i].body));
    }
  }

  TEST_CASE("round trip: small modules") {
    for (const char* src : {"", "def u := unit ;", "def t := (f @ a) @ (g @ b) ;",
                            "type P (n : Nat) = nu X { h : ctx (k : Nat) arg X @ k idx (s @ k) } ;",
                            "def r : (n : Nat) => Nat := rec of Nat motive Nat { (; u) => u | (; m) => m } ;"}) {
      CAPTURE(src);
      auto m = s::parse_module(src);
      CHECK(s::same_module(m, s::parse_module(s::print_module(m))));
    }
  }

  TEST_CASE("the embedded prelude is the checked-in file") {
    CHECK(slurp(kPrelude) == driver::embedded_prelude());
  }

  TEST_CASE("check: prelude file succeeds and reports each declaration") {
    auto r = check(kPrelude, false);
    CHECK(r.code == driver::kOk);
    CHECK(r.err.empty());
    CHECK(contains(r.out, "OK Nat : Set"));
    CHECK(contains(r.out, "OK plus23 : Nat"));
  }

  TEST_CASE("check: strict positivity violations exit 1") {
    for (const char* f : {"neg_positivity_ctx.dtt", "neg_positivity_arrow.dtt"}) {
      CAPTURE(f);
      auto r = check(kData + f);
      CHECK(r.code == driver::kTypeError);
      CHECK(contains(r.err, "[StrictPositivity]"));
    }
    auto r = check(kData + "neg_pstr_hd_zero.dtt");
    CHECK(r.code == driver::kTypeError);
    CHECK(contains(r.err, "[Conv]"));
  }

  TEST_CASE("check: missing file and parse error exit codes") {
    auto missing = check(kData + "does_not_exist.dtt");
    CHECK(missing.code == driver::kIoError);
    CHECK_FALSE(missing.err.empty());
    auto bad = check(kData + "parse_error.dtt");
    CHECK(bad.code == driver::kParseError);
    CHECK(contains(bad.err, "parse error"));
  }

  TEST_CASE("eval: plus23 prints the numeral five") {
    auto r = eval(kPrelude, "plus23");
    CHECK(r.code == driver::kOk);
    CHECK(contains(r.out, "plus23 = s @ (s @ (s @ (s @ (s @ (z @ unit)))))"));
    CHECK(contains(r.out, "steps: 6"));
    driver::Options nf;
    nf.nf_only = true;
    CHECK(eval(kPrelude, "plus23", nf).out == "s @ (s @ (s @ (s @ (s @ (z @ unit)))))\n");
  }

  TEST_CASE("eval: tracing the terminal unfolding shows one corec step") {
    driver::Options o;
    o.trace = true;
    auto r = eval(kPrelude, "outUnitPrime", o);
    CHECK(r.code == driver::kOk);
    CHECK(contains(r.out, "1: [corec] at []"));
    CHECK_FALSE(contains(r.out, "2: "));
    CHECK(contains(r.out, "steps: 1"));
  }

  TEST_CASE("eval: fuel exhaustion and unknown names") {
    driver::Options o;
    o.fuel = 1;
    CHECK(eval(kPrelude, "plus23", o).code == driver::kFuelExhausted);
    CHECK(eval(kPrelude, "noSuchTerm").code == driver::kTypeError);
    // Definitions with parameters cannot be evaluated directly.
    CHECK(eval(kPrelude, "vcons").code != driver::kOk);
  }

  TEST_CASE("meta: runs every check on the prelude") {
    driver::Options o;
    std::ostringstream out, err;
    int c = driver::run_meta(kPrelude,
                             {driver::MetaCheck::SubjectReduction, driver::MetaCheck::TypeAction,
                              driver::MetaCheck::Termination, driver::MetaCheck::Admissibility},
                             o, out, err);
    CHECK(c == driver::kOk);
    CHECK(contains(out.str(), "subject-reduction: PASS"));
    CHECK(contains(out.str(), "admissibility: PASS"));
  }
}
