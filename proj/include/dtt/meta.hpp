#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtt/check.hpp"
#include "dtt/print.hpp"
#include "dtt/reduce.hpp"

namespace dtt::meta {

struct MetaFailure {
  std::string instance;
  std::size_t step = 0;
  std::string term;
  std::string expected;
  std::string found;
};

struct MetaInstance {
  std::string name;
  bool pass = true;
  std::size_t steps = 0;
  std::string note;
};

struct MetaReport {
  std::string subject;
  std::vector<MetaInstance> instances;
  std::vector<MetaFailure> failures;
  std::optional<std::uint64_t> seed;
  std::size_t max_steps = 0;

  std::size_t tried() const { return instances.size(); }
  bool pass() const { return failures.empty(); }
  void absorb(const MetaReport& other);
};

// Line-oriented summary: one line per instance, failures, then a verdict.
std::string to_text(const MetaReport& r);
// One JSON object per line per instance, then a summary record.
std::string to_json_lines(const MetaReport& r);

// Re-checks every reduct of t against the type inferred for t. Fuel
// exhaustion ends the trace with a note and is not a failure here.
MetaReport subject_reduction_trace(const TermCtx& ctx, const Term& t, std::size_t fuel = kDefaultTermFuel,
                                   const std::string& name = "term", const NameTable* names = nullptr);

// Checks Delta, params(C), hole : C[sources] ⊢ F_C(t) : C[targets]. Each
// argument term is typed with `hole` free, as in ty_action.
MetaReport type_action_typing(const TermCtx& delta, const Type& c, const TyCtx& theta,
                              const std::vector<ActionArg>& args, const std::string& hole,
                              const std::string& name = "action", const NameTable* names = nullptr);

// Every branch codomain of every closed signature reachable from the given
// types and terms, each under an identity instance, a terminal instance and,
// for inductive signatures, a recursion-into-unit instance.
MetaReport type_action_corpus(const std::vector<Type>& types, const std::vector<Term>& terms,
                              const NameTable* names = nullptr);

struct OpenJudgement {
  std::string name;
  TermCtx ctx;
  Term term;
};

struct ClosedTerm {
  std::string name;
  Term term;
  Type type;
};

// Substitution, exchange and contraction instances over the corpus. Closed
// terms from the pool are substituted for hypotheses of matching type.
MetaReport admissibility_suite(const std::vector<OpenJudgement>& corpus, const std::vector<ClosedTerm>& pool,
                               const NameTable* names = nullptr);

// Judgements (x : A) (y : B) ⊢ (x, y) : A × B over pairs drawn from the
// first `max_types` distinct pool types.
std::vector<OpenJudgement> pairing_judgements(const std::vector<ClosedTerm>& pool, std::size_t max_types = 4);

struct SnOptions {
  std::size_t strategies = 20;
  std::size_t fuel = kDefaultTermFuel;
  std::uint64_t seed = 1;
};

// Deterministic leftmost-outermost run plus seeded random redex choices.
// The note of each instance records whether its normal form agrees with the
// deterministic one.
MetaReport sn_probe(const Term& t, const SnOptions& opts = {}, const std::string& name = "term",
                    const NameTable* names = nullptr);

}  // namespace dtt::meta
