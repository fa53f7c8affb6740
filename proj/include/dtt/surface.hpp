#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtt/syntax.hpp"

namespace dtt::surface {

struct Span {
  int line = 1;
  int col = 1;
};
std::string to_string(Span s);

struct SType;
struct STerm;
struct SFix;
using STypePtr = std::shared_ptr<const SType>;
using STermPtr = std::shared_ptr<const STerm>;
using SFixPtr = std::shared_ptr<const SFix>;

struct SParam {
  std::string name;
  STypePtr type;
  Span span;
};

struct SBranch {
  std::string label;
  std::vector<SParam> ctx;
  STypePtr arg;
  std::vector<STermPtr> idx;
  Span span;
};

struct SFix {
  Polarity polarity = Polarity::Mu;
  std::string binder;
  std::vector<SParam> params;
  std::vector<SBranch> branches;
  Span span;
};

struct SType {
  enum class Kind { Unit, Name, Inst, Abs, Fix };
  Kind kind = Kind::Unit;
  std::string name;  // Name, Abs binder
  STypePtr head;     // Inst
  STermPtr arg;      // Inst
  STypePtr domain;   // Abs; null when omitted
  STypePtr body;     // Abs
  SFixPtr fix;       // Fix
  Span span;
};

struct SClause {
  std::vector<std::string> params;
  std::string recvar;
  STermPtr body;
  Span span;
};

struct STerm {
  enum class Kind { Unit, Name, Inst, Ctor, Dtor, Rec, Corec };
  Kind kind = Kind::Unit;
  std::string name;       // Name
  STermPtr head;          // Inst
  STermPtr arg;           // Inst
  std::size_t index = 0;  // Ctor, Dtor
  STypePtr of;            // Ctor, Dtor, Rec, Corec
  STypePtr motive;        // Rec, Corec
  std::vector<SClause> clauses;
  Span span;
};

struct SAscription {
  std::vector<SParam> params;
  STypePtr body;
};

struct SDecl {
  enum class Kind { Type, Def };
  Kind kind = Kind::Def;
  std::string name;
  std::vector<SParam> params;
  SFixPtr fix;                            // Type
  std::optional<SAscription> ascription;  // Def
  STermPtr body;                          // Def
  Span span;
};

struct SourceModule {
  std::vector<SDecl> decls;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Span span, const std::string& message, std::vector<std::string> expected = {});
  Span span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span span_;
  std::string message_;
  std::vector<std::string> expected_;
};

SourceModule parse_module(std::string_view text);

// Prints in the concrete syntax accepted by parse_module.
std::string print_module(const SourceModule& m);
std::string print_type(const SType& t);
std::string print_term(const STerm& t);

// Structural equality ignoring spans.
bool same_module(const SourceModule& a, const SourceModule& b);

}  // namespace dtt::surface
