#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtt/check.hpp"
#include "dtt/print.hpp"
#include "dtt/surface.hpp"

namespace dtt {

struct TypeDecl {
  std::string name;
  Type fix;
  surface::Span span;
};

// A definition is an open term over its parameters; using it substitutes
// the arguments for the parameters.
struct TermDecl {
  std::string name;
  TermCtx params;
  Term body;
  InferredType type;
  surface::Span span;
};

// Branch label standing for ctor k / dtor k of a declared type.
struct Alias {
  std::string name;
  Type fix;
  std::size_t index = 0;
  bool is_ctor = true;
};

class ElabError : public std::runtime_error {
 public:
  ElabError(surface::Span span, const std::string& message)
      : std::runtime_error(surface::to_string(span) + ": " + message), span_(span), message_(message) {}
  surface::Span span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  surface::Span span_;
  std::string message_;
};

class Environment {
 public:
  void add_type(TypeDecl d);
  void add_term(TermDecl d);
  void add_alias(Alias a);

  const TypeDecl* find_type(const std::string& name) const;
  const TermDecl* find_term(const std::string& name) const;
  const Alias* find_alias(const std::string& name) const;

  const std::vector<TypeDecl>& types() const { return types_; }
  const std::vector<TermDecl>& terms() const { return terms_; }
  const NameTable& name_table() const { return table_; }

 private:
  std::vector<TypeDecl> types_;
  std::vector<TermDecl> terms_;
  std::vector<Alias> aliases_;
  std::map<std::string, std::size_t, std::less<>> type_index_;
  std::map<std::string, std::size_t, std::less<>> term_index_;
  std::map<std::string, std::size_t, std::less<>> alias_index_;
  NameTable table_;
};

struct DeclReport {
  std::string name;
  bool is_type = false;
  // "name (params) : type", ready to print after "OK ".
  std::string summary;
};

// Elaborates declarations one at a time into the environment, checking each
// with the kernel. Throws ElabError for scoping problems and TypeError for
// kernel rejections.
class Elaborator {
 public:
  Elaborator(Environment& env, TypeChecker& checker) : env_(env), checker_(checker) {}

  DeclReport declare(const surface::SDecl& d);

  Type type(const surface::SType& t);
  Term term(const surface::STerm& t);

 private:
  Type fix(const surface::SFix& f, const std::vector<surface::SParam>& decl_params);
  Type motive(const surface::SType& t, const Type& fix);
  TermCtx telescope(const std::vector<surface::SParam>& ps);
  void reserve_name(const std::string& name, surface::Span span, bool is_type);

  Environment& env_;
  TypeChecker& checker_;
  std::vector<std::string> locals_;
  std::vector<std::string> tyvars_;
  std::set<std::string> file_types_;
  std::set<std::string> file_terms_;
};

}  // namespace dtt
