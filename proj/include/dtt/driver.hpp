#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtt/elab.hpp"

namespace dtt::driver {

enum ExitCode : int {
  kOk = 0,
  kTypeError = 1,
  kIoError = 2,
  kParseError = 3,
  kFuelExhausted = 4,
};

struct Options {
  bool prelude = true;
  std::optional<std::size_t> fuel;  // default_term_fuel() when unset
  bool trace = false;
  bool nf_only = false;
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t strategies = 20;
};

enum class MetaCheck { SubjectReduction, TypeAction, Termination, Admissibility };

// Source of prelude/prelude.dtt compiled into the binary.
std::string_view embedded_prelude();

// Environment after loading the prelude (optionally) and one source file.
struct Loaded {
  Environment env;
  std::vector<DeclReport> reports;  // declarations of the file only
  std::size_t first_type = 0;       // index into env.types() of the file's first type
  std::size_t first_term = 0;       // index into env.terms() of the file's first definition
};

// Parses and checks `text` on top of the environment; errors go to `err`
// prefixed with `origin`. Returns an exit code.
int load_text(std::string_view text, const std::string& origin, Environment& env, std::vector<DeclReport>& reports,
              std::ostream& err);

// Reads and checks a file. Returns an exit code; `out` is filled on success.
int load_file(const std::string& path, const Options& opts, Loaded& out, std::ostream& err);

int run_check(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err);
int run_eval(const std::string& path, const std::string& name, const Options& opts, std::ostream& out,
             std::ostream& err);
int run_meta(const std::string& path, const std::vector<MetaCheck>& checks, const Options& opts, std::ostream& out,
             std::ostream& err);

}  // namespace dtt::driver
