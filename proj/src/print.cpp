#include "dtt/print.hpp"

#include <sstream>

namespace dtt {

const std::pair<std::string, Type>* NameTable::lookup(const Type& fix) const {
  for (auto it = types.rbegin(); it != types.rend(); ++it) {
    if (alpha_eq(it->second, fix)) return &*it;
  }
  return nullptr;
}

namespace {

class Printer {
 public:
  explicit Printer(const NameTable* names) : names_(names) {}

  void term(std::ostream& os, const Term& t) {
    switch (t->kind) {
      case TermKind::Unit:
        os << "unit";
        return;
      case TermKind::Var:
        os << t->name;
        return;
      case TermKind::Inst:
        term(os, t->head);
        os << " @ ";
        term_atom(os, t->arg);
        return;
      case TermKind::Ctor:
      case TermKind::Dtor: {
        if (const auto* named = lookup(t->fix)) {
          const auto& branches = named->second->sig.branches;
          if (t->index >= 1 && t->index <= branches.size() && !branches[t->index - 1].label.empty()) {
            os << branches[t->index - 1].label;
            return;
          }
        }
        os << (t->kind == TermKind::Ctor ? "ctor " : "dtor ") << t->index << " of ";
        type_ref(os, t->fix);
        return;
      }
      case TermKind::Rec:
      case TermKind::Corec: {
        os << (t->kind == TermKind::Rec ? "rec of " : "corec of ");
        type_ref(os, t->fix);
        os << " motive ";
        type(os, t->motive);
        os << " {";
        for (std::size_t i = 0; i < t->clauses.size(); ++i) {
          const auto& c = t->clauses[i];
          os << (i == 0 ? " (" : " | (");
          for (const auto& p : c.params) os << p << ' ';
          os << "; " << c.recvar << ") => ";
          term(os, c.body);
        }
        os << " }";
        return;
      }
    }
  }

  void term_atom(std::ostream& os, const Term& t) {
    if (t->kind == TermKind::Inst) {
      os << '(';
      term(os, t);
      os << ')';
    } else {
      term(os, t);
    }
  }

  void type(std::ostream& os, const Type& t) {
    switch (t->kind) {
      case TypeKind::Unit:
        os << "Unit";
        return;
      case TypeKind::Var:
        os << t->name;
        return;
      case TypeKind::Inst:
        if (t->head->kind == TypeKind::Abs) {
          os << '(';
          type(os, t->head);
          os << ')';
        } else {
          type(os, t->head);
        }
        os << " @ ";
        term_atom(os, t->arg);
        return;
      case TypeKind::Abs:
        os << '(' << t->name << " : ";
        type(os, t->domain);
        os << ") ";
        type(os, t->body);
        return;
      case TypeKind::Fix:
        if (const auto* named = lookup(t)) {
          os << named->first;
          return;
        }
        fix(os, t);
        return;
    }
  }

  void ctx(std::ostream& os, const TermCtx& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0) os << ' ';
      os << '(' << c[i].name << " : ";
      type(os, c[i].type);
      os << ')';
    }
  }

 private:
  const std::pair<std::string, Type>* lookup(const Type& fix) {
    return names_ != nullptr ? names_->lookup(fix) : nullptr;
  }

  void type_ref(std::ostream& os, const Type& t) {
    if (const auto* named = lookup(t)) {
      os << named->first;
      return;
    }
    os << '(';
    type(os, t);
    os << ')';
  }

  void fix(std::ostream& os, const Type& t) {
    const auto& s = t->sig;
    os << (t->polarity == Polarity::Mu ? "mu " : "nu ") << s.binder;
    if (!s.params.empty()) {
      os << ' ';
      ctx(os, s.params);
    }
    os << " {";
    for (std::size_t k = 0; k < s.branches.size(); ++k) {
      const auto& b = s.branches[k];
      os << (k == 0 ? " " : " | ");
      os << (b.label.empty() ? "b" + std::to_string(k + 1) : b.label) << " : ctx";
      if (!b.local.empty()) {
        os << ' ';
        ctx(os, b.local);
      }
      os << " arg ";
      type(os, b.codomain);
      os << " idx (";
      for (std::size_t i = 0; i < b.index.size(); ++i) {
        if (i > 0) os << ", ";
        term(os, b.index[i]);
      }
      os << ')';
    }
    os << " }";
  }

  const NameTable* names_;
};

}  // namespace

std::string to_string(const Term& t, const NameTable* names) {
  std::ostringstream os;
  Printer(names).term(os, t);
  return os.str();
}

std::string to_string(const Type& t, const NameTable* names) {
  std::ostringstream os;
  Printer(names).type(os, t);
  return os.str();
}

std::string to_string(const TermCtx& ctx, const NameTable* names) {
  std::ostringstream os;
  Printer(names).ctx(os, ctx);
  return os.str();
}

std::string to_string(const TermCtx& params, const Type& body, const NameTable* names) {
  std::ostringstream os;
  Printer p(names);
  if (!params.empty()) {
    p.ctx(os, params);
    os << " => ";
  }
  p.type(os, body);
  return os.str();
}

}  // namespace dtt
