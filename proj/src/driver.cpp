#include "dtt/driver.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "dtt/meta.hpp"
#include "dtt/reduce.hpp"

namespace dtt::driver {

namespace {

void print_type_error(std::ostream& err, const std::string& origin, const surface::SDecl& d, const TypeError& e) {
  err << origin << ':' << surface::to_string(d.span) << ": type error in '" << d.name << "': " << e.what() << '\n';
  if (!e.location().empty()) err << "  at: " << e.location_string() << '\n';
  if (!e.expected().empty()) err << "  expected: " << e.expected() << '\n';
  if (!e.found().empty()) err << "  found: " << e.found() << '\n';
}

std::size_t fuel_of(const Options& opts) { return opts.fuel ? *opts.fuel : default_term_fuel(); }

}  // namespace

int load_text(std::string_view text, const std::string& origin, Environment& env, std::vector<DeclReport>& reports,
              std::ostream& err) {
  surface::SourceModule m;
  try {
    m = surface::parse_module(text);
  } catch (const surface::ParseError& e) {
    err << origin << ':' << surface::to_string(e.span()) << ": parse error: " << e.message() << '\n';
    return kParseError;
  }
  TypeChecker checker;
  checker.set_names(&env.name_table());
  Elaborator elab(env, checker);
  for (const auto& d : m.decls) {
    try {
      reports.push_back(elab.declare(d));
    } catch (const ElabError& e) {
      err << origin << ':' << e.what() << '\n';
      return kTypeError;
    } catch (const TypeError& e) {
      print_type_error(err, origin, d, e);
      return kTypeError;
    } catch (const std::exception& e) {
      err << origin << ':' << surface::to_string(d.span) << ": error in '" << d.name << "': " << e.what() << '\n';
      return kTypeError;
    }
  }
  return kOk;
}

int load_file(const std::string& path, const Options& opts, Loaded& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot read file\n";
    return kIoError;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    err << path << ": read error\n";
    return kIoError;
  }
  if (opts.prelude) {
    std::vector<DeclReport> ignored;
    if (int rc = load_text(embedded_prelude(), "<prelude>", out.env, ignored, err); rc != kOk) return rc;
  }
  out.first_type = out.env.types().size();
  out.first_term = out.env.terms().size();
  return load_text(buf.str(), path, out.env, out.reports, err);
}

int run_check(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  Loaded l;
  int rc = load_file(path, opts, l, err);
  for (const auto& r : l.reports) out << "OK " << r.summary << '\n';
  return rc;
}

int run_eval(const std::string& path, const std::string& name, const Options& opts, std::ostream& out,
             std::ostream& err) {
  Loaded l;
  if (int rc = load_file(path, opts, l, err); rc != kOk) return rc;
  const auto* d = l.env.find_term(name);
  if (!d) {
    err << "no definition named '" << name << "'\n";
    return kTypeError;
  }
  if (!d->params.empty()) {
    err << "'" << name << "' takes parameters " << to_string(d->params, &l.env.name_table())
        << " and cannot be evaluated\n";
    return kTypeError;
  }
  const auto* names = &l.env.name_table();
  auto print_steps = [&](const ReductionTrace& t) {
    out << "0: " << to_string(t.start, names) << '\n';
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      out << i + 1 << ": [" << rule_name(s.rule) << "] at " << to_string(s.path) << ": "
          << to_string(s.result, names) << '\n';
    }
  };
  try {
    auto n = normalize(d->body, fuel_of(opts));
    if (opts.trace) print_steps(n.trace);
    if (opts.nf_only) {
      out << to_string(n.term, names) << '\n';
    } else {
      out << name << " = " << to_string(n.term, names) << '\n';
      out << "steps: " << n.trace.steps.size() << '\n';
    }
    return kOk;
  } catch (const FuelExhausted& e) {
    if (opts.trace) print_steps(e.trace());
    err << name << ": " << e.what() << '\n';
    return kFuelExhausted;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << '\n';
    return kTypeError;
  }
}

int run_meta(const std::string& path, const std::vector<MetaCheck>& checks, const Options& opts, std::ostream& out,
             std::ostream& err) {
  Loaded l;
  if (int rc = load_file(path, opts, l, err); rc != kOk) return rc;
  const auto* names = &l.env.name_table();
  std::vector<const TermDecl*> terms;
  for (std::size_t i = l.first_term; i < l.env.terms().size(); ++i) terms.push_back(&l.env.terms()[i]);

  bool all_pass = true;
  auto emit = [&](const meta::MetaReport& r) {
    out << (opts.json ? meta::to_json_lines(r) : meta::to_text(r));
    all_pass = all_pass && r.pass();
  };

  for (auto check : checks) {
    meta::MetaReport r;
    switch (check) {
      case MetaCheck::SubjectReduction:
        r.subject = "subject-reduction";
        for (const auto* d : terms) r.absorb(meta::subject_reduction_trace(d->params, d->body, fuel_of(opts), d->name, names));
        break;
      case MetaCheck::TypeAction: {
        std::vector<Type> types;
        for (std::size_t i = l.first_type; i < l.env.types().size(); ++i) types.push_back(l.env.types()[i].fix);
        std::vector<Term> bodies;
        for (const auto* d : terms) bodies.push_back(d->body);
        r = meta::type_action_corpus(types, bodies, names);
        break;
      }
      case MetaCheck::Termination: {
        r.subject = "sn";
        meta::SnOptions so{opts.strategies, fuel_of(opts), opts.seed};
        for (const auto* d : terms) r.absorb(meta::sn_probe(d->body, so, d->name, names));
        r.seed = opts.seed;
        break;
      }
      case MetaCheck::Admissibility: {
        std::vector<meta::OpenJudgement> corpus;
        std::vector<meta::ClosedTerm> pool;
        for (const auto* d : terms) {
          if (!d->params.empty()) {
            corpus.push_back({d->name, d->params, d->body});
          } else if (d->type.params.empty() && d->type.body->free_vars.empty()) {
            pool.push_back({d->name, d->body, d->type.body});
          }
        }
        auto pairs = meta::pairing_judgements(pool);
        corpus.insert(corpus.end(), pairs.begin(), pairs.end());
        r = meta::admissibility_suite(corpus, pool, names);
        break;
      }
    }
    emit(r);
  }
  return all_pass ? kOk : kTypeError;
}

}  // namespace dtt::driver
