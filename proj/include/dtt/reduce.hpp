#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtt/syntax.hpp"

namespace dtt {

inline constexpr std::size_t kDefaultTermFuel = 100000;
inline constexpr std::size_t kDefaultTypeFuel = 10000;

// DTT_FUEL overrides the term fuel default when set to a positive integer.
std::size_t default_term_fuel();

// Argument for one type variable X_i : Gamma_i of the action: a term t_i with
// Gamma_i, hole : source_i id ⊢ t_i : target_i id. Source and target are
// parameterised types over Gamma_i.
struct ActionArg {
  Term term;
  Type source;
  Type target;
};

// F_C(t) together with the names it uses for the parameters of C.
struct Action {
  Term term;
  std::vector<std::string> params;
};

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Action ty_action(const Type& c, const TyCtx& theta, std::span<const ActionArg> args,
                 const std::string& hole);

enum class Rule { Rec, Corec };
const char* rule_name(Rule r);

// Child positions: 0 = Inst head, 1 = Inst argument, i = body of clause i.
using Path = std::vector<std::size_t>;
std::string to_string(const Path& p);

struct Step {
  Path path;
  Rule rule;
  Term result;
};

struct ReductionTrace {
  Term start;
  std::vector<Step> steps;
  std::size_t fuel_used = 0;
};

class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted(const std::string& what, ReductionTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const ReductionTrace& trace() const { return trace_; }

 private:
  ReductionTrace trace_;
};

// A redex whose constructor index has no matching clause.
class MalformedRedex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<Rule> redex_rule(const Term& t);
std::optional<Term> contract(const Term& t);

// Leftmost-outermost: the root, then the Inst head before its argument, then
// clause bodies in order. Signatures and motives are not entered.
std::optional<Step> step(const Term& t);
std::vector<Path> redexes(const Term& t);
Step contract_at(const Term& t, const Path& p);

struct Normalized {
  Term term;
  ReductionTrace trace;
};
Normalized normalize(const Term& t, std::size_t fuel = kDefaultTermFuel);

// Parameter beta plus term reduction inside instantiation arguments,
// abstraction domains and signatures.
std::optional<Type> ty_step(const Type& t);
Type ty_normalize(const Type& t, std::size_t fuel = kDefaultTypeFuel);
bool convertible(const Type& a, const Type& b, std::size_t fuel = kDefaultTypeFuel);

}  // namespace dtt
