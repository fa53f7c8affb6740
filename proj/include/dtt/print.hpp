#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dtt/syntax.hpp"

namespace dtt {

// Declared type names; a signature alpha-equal to a declared one prints as
// its name, and its constructors print as the declared branch labels.
struct NameTable {
  std::vector<std::pair<std::string, Type>> types;
  const std::pair<std::string, Type>* lookup(const Type& fix) const;
};

std::string to_string(const Term& t, const NameTable* names = nullptr);
std::string to_string(const Type& t, const NameTable* names = nullptr);
std::string to_string(const TermCtx& ctx, const NameTable* names = nullptr);
// "(x : A) (y : B) => C", or just "C" for an empty context.
std::string to_string(const TermCtx& params, const Type& body, const NameTable* names = nullptr);

}  // namespace dtt
