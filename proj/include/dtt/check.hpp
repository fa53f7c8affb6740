#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtt/print.hpp"
#include "dtt/reduce.hpp"
#include "dtt/syntax.hpp"

namespace dtt {

// Typing rule (or side condition) that rejected the input.
enum class RuleTag {
  WfCtx,
  WfTyCtx,
  StrictPositivity,
  CtxMor,
  UnitTy,
  TyVar,
  TyInst,
  ParamAbstr,
  FixTy,
  Level,
  UnitI,
  Proj,
  Inst,
  Conv,
  IndI,
  CoindE,
  IndE,
  CoindI,
  Structural,
};
const char* rule_name(RuleTag r);

class TypeError : public std::runtime_error {
 public:
  TypeError(RuleTag rule, const std::string& message, std::vector<std::string> location = {},
            std::string expected = {}, std::string found = {});

  RuleTag rule() const { return rule_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& location() const { return location_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }
  std::string location_string() const;

 private:
  RuleTag rule_;
  std::string message_;
  std::vector<std::string> location_;
  std::string expected_;
  std::string found_;
};

// Parameter context of a type; the universe level is always 0.
struct TypeInfo {
  TermCtx params;
  unsigned level = 0;
};

// Gamma ⊢ t : params ⇒ body.
struct InferredType {
  TermCtx params;
  Type body;
  unsigned level = 0;
};

class TypeChecker {
 public:
  explicit TypeChecker(std::size_t type_fuel = kDefaultTypeFuel) : type_fuel_(type_fuel) {}

  // Declared type names used when printing expected and found types.
  void set_names(const NameTable* names) { names_ = names; }

  void check_term_ctx(const TermCtx& ctx);
  void check_ty_ctx(const TyCtx& theta);
  void check_ctx_mor(const TermCtx& source, const std::vector<Term>& terms, const TermCtx& target);
  TypeInfo check_type(const TyCtx& theta, const TermCtx& ctx, const Type& t);
  InferredType infer_term(const TermCtx& ctx, const Term& t);
  void check_term(const TermCtx& ctx, const Term& t, const InferredType& expected);

  bool convertible(const Type& a, const Type& b);
  bool telescope_convertible(const TermCtx& a, const Type& a_body, const TermCtx& b, const Type& b_body);

 private:
  class Where;

  [[noreturn]] void fail(RuleTag rule, const std::string& message, std::string expected = {},
                         std::string found = {}) const;
  void check_ctx_in(const TermCtx& ambient, const TermCtx& ctx, RuleTag rule);
  void expect_empty(const TypeInfo& info, RuleTag rule, const std::string& what, const Type& t) const;
  const TermCtx& check_fix(const TyCtx& theta, const Type& fix);
  const Signature& fix_sig(const Type& fix, Polarity want, RuleTag rule, const char* what);
  InferredType infer_elim(const TermCtx& ctx, const Term& t);
  void check_motive(const TermCtx& ctx, const Type& motive, const TermCtx& params, RuleTag rule);

  template <class... A>
  std::string show(const A&... a) const {
    return to_string(a..., names_);
  }

  std::size_t type_fuel_;
  const NameTable* names_ = nullptr;
  std::vector<std::string> location_;
  // Closed signatures already checked, keyed by node identity.
  std::unordered_map<const TypeNode*, Type> checked_;
};

// Convenience wrappers with a fresh checker.
void check_term_ctx(const TermCtx& ctx);
void check_ty_ctx(const TyCtx& theta);
void check_ctx_mor(const TermCtx& source, const std::vector<Term>& terms, const TermCtx& target);
TypeInfo check_type(const TyCtx& theta, const TermCtx& ctx, const Type& t);
InferredType infer_term(const TermCtx& ctx, const Term& t);
void check_term(const TermCtx& ctx, const Term& t, const InferredType& expected);

}  // namespace dtt
