#include <cctype>
#include <sstream>

#include "dtt/surface.hpp"

namespace dtt::surface {

std::string to_string(Span s) { return std::to_string(s.line) + ":" + std::to_string(s.col); }

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(Span span, const std::string& message, std::vector<std::string> expected)
    : std::runtime_error(to_string(span) + ": " + message),
      span_(span),
      message_(message),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Name, Keyword, Nat, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

const char* const kKeywords[] = {"type", "def", "mu",  "nu",  "ctx",   "arg",   "idx",    "Unit",
                                 "unit", "ctor", "dtor", "of", "rec", "corec", "motive"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords) {
    if (s == k) return true;
  }
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  Span pos;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Span start = pos;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Name, word, start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Nat, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    for (std::string_view two : {":=", "=>"}) {
      if (src.substr(i, 2) == two) {
        out.push_back({Tok::Sym, std::string(two), start});
        advance(2);
        goto next;
      }
    }
    if (std::string_view("(){}|;:=@,").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), start});
      advance(1);
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  next:;
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceModule module() {
    SourceModule m;
    while (peek().kind != Tok::End) {
      m.decls.push_back(decl());
      expect_sym(";");
    }
    return m;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    auto i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  bool at_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool at_kw(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Keyword && peek(k).text == s; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void error(std::vector<std::string> expected) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    auto message = "expected " + join_expected(expected) + ", found " + found;
    throw ParseError(t.span, message, std::move(expected));
  }

  void expect_sym(const char* s) {
    if (!at_sym(s)) error({std::string("'") + s + "'"});
    take();
  }
  void expect_kw(const char* s) {
    if (!at_kw(s)) error({std::string("'") + s + "'"});
    take();
  }
  std::string expect_name() {
    if (peek().kind != Tok::Name) error({"identifier"});
    return take().text;
  }

  SDecl decl() {
    SDecl d;
    d.span = peek().span;
    if (at_kw("type")) {
      take();
      d.kind = SDecl::Kind::Type;
      d.name = expect_name();
      d.params = params();
      expect_sym("=");
      auto f = fix();
      if (!d.params.empty() && !f->params.empty()) {
        throw ParseError(f->span, "parameters given both on the declaration and on the signature");
      }
      d.fix = std::move(f);
      return d;
    }
    if (at_kw("def")) {
      take();
      d.kind = SDecl::Kind::Def;
      d.name = expect_name();
      d.params = params();
      if (at_sym(":")) {
        take();
        d.ascription = ascription();
      }
      expect_sym(":=");
      d.body = term();
      return d;
    }
    error({"'type'", "'def'"});
  }

  bool at_param() const { return at_sym("(") && peek(1).kind == Tok::Name && at_sym(":", 2); }

  std::vector<SParam> params() {
    std::vector<SParam> out;
    while (at_param()) {
      SParam p;
      p.span = take().span;
      p.name = take().text;
      take();
      p.type = type();
      expect_sym(")");
      out.push_back(std::move(p));
    }
    return out;
  }

  SAscription ascription() {
    auto save = pos_;
    if (at_param()) {
      try {
        auto ps = params();
        if (at_sym("=>")) {
          take();
          return {std::move(ps), type()};
        }
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    return {{}, type()};
  }

  SFixPtr fix() {
    auto f = std::make_shared<SFix>();
    f->span = peek().span;
    if (at_kw("mu")) {
      f->polarity = Polarity::Mu;
    } else if (at_kw("nu")) {
      f->polarity = Polarity::Nu;
    } else {
      error({"'mu'", "'nu'"});
    }
    take();
    f->binder = expect_name();
    f->params = params();
    expect_sym("{");
    if (!at_sym("}")) {
      f->branches.push_back(branch());
      while (at_sym("|")) {
        take();
        f->branches.push_back(branch());
      }
      if (!at_sym("}")) error({"'|'", "'}'"});
    }
    expect_sym("}");
    return f;
  }

  SBranch branch() {
    SBranch b;
    b.span = peek().span;
    b.label = expect_name();
    expect_sym(":");
    expect_kw("ctx");
    b.ctx = params();
    expect_kw("arg");
    b.arg = type();
    expect_kw("idx");
    expect_sym("(");
    if (!at_sym(")")) {
      b.idx.push_back(term());
      while (at_sym(",")) {
        take();
        b.idx.push_back(term());
      }
    }
    expect_sym(")");
    return b;
  }

  bool starts_type(std::size_t k) const {
    const auto& t = peek(k);
    return t.kind == Tok::Name || at_kw("Unit", k) || at_kw("mu", k) || at_kw("nu", k) || at_sym("(", k);
  }

  STypePtr type() {
    auto head = type_atom();
    while (at_sym("@")) {
      auto t = std::make_shared<SType>();
      t->span = take().span;
      t->kind = SType::Kind::Inst;
      t->head = head;
      t->arg = term_atom();
      head = t;
    }
    return head;
  }

  STypePtr type_atom() {
    auto t = std::make_shared<SType>();
    t->span = peek().span;
    if (at_kw("Unit")) {
      take();
      t->kind = SType::Kind::Unit;
      return t;
    }
    if (peek().kind == Tok::Name) {
      t->kind = SType::Kind::Name;
      t->name = take().text;
      return t;
    }
    if (at_kw("mu") || at_kw("nu")) {
      t->kind = SType::Kind::Fix;
      t->fix = fix();
      return t;
    }
    if (at_sym("(")) {
      if (peek(1).kind == Tok::Name && at_sym(")", 2) && starts_type(3)) {
        take();
        t->kind = SType::Kind::Abs;
        t->name = take().text;
        take();
        t->body = type();
        return t;
      }
      if (peek(1).kind == Tok::Name && at_sym(":", 2)) {
        take();
        t->kind = SType::Kind::Abs;
        t->name = take().text;
        take();
        t->domain = type();
        expect_sym(")");
        t->body = type();
        return t;
      }
      take();
      auto inner = type();
      expect_sym(")");
      return inner;
    }
    error({"type"});
  }

  STypePtr type_ref() {
    if (at_sym("(")) {
      take();
      auto t = type();
      expect_sym(")");
      return t;
    }
    auto t = std::make_shared<SType>();
    t->span = peek().span;
    if (at_kw("mu") || at_kw("nu")) {
      t->kind = SType::Kind::Fix;
      t->fix = fix();
      return t;
    }
    if (peek().kind != Tok::Name) error({"type name", "'('", "signature"});
    t->kind = SType::Kind::Name;
    t->name = take().text;
    return t;
  }

  STermPtr term() {
    auto head = term_atom();
    while (at_sym("@")) {
      auto t = std::make_shared<STerm>();
      t->span = take().span;
      t->kind = STerm::Kind::Inst;
      t->head = head;
      t->arg = term_atom();
      head = t;
    }
    return head;
  }

  STermPtr term_atom() {
    auto t = std::make_shared<STerm>();
    t->span = peek().span;
    if (at_kw("unit")) {
      take();
      t->kind = STerm::Kind::Unit;
      return t;
    }
    if (peek().kind == Tok::Name) {
      t->kind = STerm::Kind::Name;
      t->name = take().text;
      return t;
    }
    if (at_kw("ctor") || at_kw("dtor")) {
      t->kind = at_kw("ctor") ? STerm::Kind::Ctor : STerm::Kind::Dtor;
      take();
      if (peek().kind != Tok::Nat) error({"constructor index"});
      t->index = std::stoul(take().text);
      expect_kw("of");
      t->of = type_ref();
      return t;
    }
    if (at_kw("rec") || at_kw("corec")) {
      t->kind = at_kw("rec") ? STerm::Kind::Rec : STerm::Kind::Corec;
      take();
      expect_kw("of");
      t->of = type_ref();
      expect_kw("motive");
      t->motive = type();
      expect_sym("{");
      if (!at_sym("}")) {
        t->clauses.push_back(clause());
        while (at_sym("|")) {
          take();
          t->clauses.push_back(clause());
        }
        if (!at_sym("}")) error({"'|'", "'}'"});
      }
      expect_sym("}");
      return t;
    }
    if (at_sym("(")) {
      take();
      auto inner = term();
      expect_sym(")");
      return inner;
    }
    error({"term"});
  }

  SClause clause() {
    SClause c;
    c.span = peek().span;
    expect_sym("(");
    while (peek().kind == Tok::Name) c.params.push_back(take().text);
    expect_sym(";");
    c.recvar = expect_name();
    expect_sym(")");
    expect_sym("=>");
    c.body = term();
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Printing.

void print_term_to(std::ostream& os, const STerm& t);
void print_type_to(std::ostream& os, const SType& t);

void print_params(std::ostream& os, const std::vector<SParam>& ps) {
  for (const auto& p : ps) {
    os << " (" << p.name << " : ";
    print_type_to(os, *p.type);
    os << ')';
  }
}

void print_fix(std::ostream& os, const SFix& f) {
  os << (f.polarity == Polarity::Mu ? "mu " : "nu ") << f.binder;
  print_params(os, f.params);
  os << " {";
  for (std::size_t k = 0; k < f.branches.size(); ++k) {
    const auto& b = f.branches[k];
    os << (k ? " | " : " ") << b.label << " : ctx";
    print_params(os, b.ctx);
    os << " arg ";
    print_type_to(os, *b.arg);
    os << " idx (";
    for (std::size_t i = 0; i < b.idx.size(); ++i) {
      if (i) os << ", ";
      print_term_to(os, *b.idx[i]);
    }
    os << ')';
  }
  os << " }";
}

void print_term_atom(std::ostream& os, const STerm& t) {
  if (t.kind == STerm::Kind::Inst) {
    os << '(';
    print_term_to(os, t);
    os << ')';
  } else {
    print_term_to(os, t);
  }
}

void print_type_ref(std::ostream& os, const SType& t) {
  if (t.kind == SType::Kind::Name || t.kind == SType::Kind::Fix) {
    print_type_to(os, t);
  } else {
    os << '(';
    print_type_to(os, t);
    os << ')';
  }
}

void print_type_to(std::ostream& os, const SType& t) {
  switch (t.kind) {
    case SType::Kind::Unit:
      os << "Unit";
      return;
    case SType::Kind::Name:
      os << t.name;
      return;
    case SType::Kind::Inst:
      if (t.head->kind == SType::Kind::Abs) {
        os << '(';
        print_type_to(os, *t.head);
        os << ')';
      } else {
        print_type_to(os, *t.head);
      }
      os << " @ ";
      print_term_atom(os, *t.arg);
      return;
    case SType::Kind::Abs:
      os << '(' << t.name;
      if (t.domain) {
        os << " : ";
        print_type_to(os, *t.domain);
      }
      os << ") ";
      print_type_to(os, *t.body);
      return;
    case SType::Kind::Fix:
      print_fix(os, *t.fix);
      return;
  }
}

void print_term_to(std::ostream& os, const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::Unit:
      os << "unit";
      return;
    case STerm::Kind::Name:
      os << t.name;
      return;
    case STerm::Kind::Inst:
      print_term_to(os, *t.head);
      os << " @ ";
      print_term_atom(os, *t.arg);
      return;
    case STerm::Kind::Ctor:
    case STerm::Kind::Dtor:
      os << (t.kind == STerm::Kind::Ctor ? "ctor " : "dtor ") << t.index << " of ";
      print_type_ref(os, *t.of);
      return;
    case STerm::Kind::Rec:
    case STerm::Kind::Corec:
      os << (t.kind == STerm::Kind::Rec ? "rec of " : "corec of ");
      print_type_ref(os, *t.of);
      os << " motive ";
      print_type_to(os, *t.motive);
      os << " {";
      for (std::size_t i = 0; i < t.clauses.size(); ++i) {
        const auto& c = t.clauses[i];
        os << (i ? " | (" : " (");
        for (const auto& p : c.params) os << p << ' ';
        os << "; " << c.recvar << ") => ";
        print_term_to(os, *c.body);
      }
      os << " }";
      return;
  }
}

// Structural equality.

bool eq_type(const STypePtr& a, const STypePtr& b);
bool eq_term(const STermPtr& a, const STermPtr& b);

bool eq_params(const std::vector<SParam>& a, const std::vector<SParam>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !eq_type(a[i].type, b[i].type)) return false;
  }
  return true;
}

bool eq_fix(const SFixPtr& a, const SFixPtr& b) {
  if (!a || !b) return a == b;
  if (a->polarity != b->polarity || a->binder != b->binder || !eq_params(a->params, b->params)) return false;
  if (a->branches.size() != b->branches.size()) return false;
  for (std::size_t k = 0; k < a->branches.size(); ++k) {
    const auto& x = a->branches[k];
    const auto& y = b->branches[k];
    if (x.label != y.label || !eq_params(x.ctx, y.ctx) || !eq_type(x.arg, y.arg) || x.idx.size() != y.idx.size()) {
      return false;
    }
    for (std::size_t i = 0; i < x.idx.size(); ++i) {
      if (!eq_term(x.idx[i], y.idx[i])) return false;
    }
  }
  return true;
}

bool eq_type(const STypePtr& a, const STypePtr& b) {
  if (!a || !b) return a == b;
  return a->kind == b->kind && a->name == b->name && eq_type(a->head, b->head) && eq_term(a->arg, b->arg) &&
         eq_type(a->domain, b->domain) && eq_type(a->body, b->body) && eq_fix(a->fix, b->fix);
}

bool eq_term(const STermPtr& a, const STermPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->index != b->index || !eq_term(a->head, b->head) ||
      !eq_term(a->arg, b->arg) || !eq_type(a->of, b->of) || !eq_type(a->motive, b->motive) ||
      a->clauses.size() != b->clauses.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->clauses.size(); ++i) {
    const auto& x = a->clauses[i];
    const auto& y = b->clauses[i];
    if (x.params != y.params || x.recvar != y.recvar || !eq_term(x.body, y.body)) return false;
  }
  return true;
}

}  // namespace

SourceModule parse_module(std::string_view text) { return Parser(lex(text)).module(); }

std::string print_type(const SType& t) {
  std::ostringstream os;
  print_type_to(os, t);
  return os.str();
}

std::string print_term(const STerm& t) {
  std::ostringstream os;
  print_term_to(os, t);
  return os.str();
}

std::string print_module(const SourceModule& m) {
  std::ostringstream os;
  for (const auto& d : m.decls) {
    if (d.kind == SDecl::Kind::Type) {
      os << "type " << d.name;
      print_params(os, d.params);
      os << " = ";
      print_fix(os, *d.fix);
    } else {
      os << "def " << d.name;
      print_params(os, d.params);
      if (d.ascription) {
        os << " :";
        if (!d.ascription->params.empty()) {
          print_params(os, d.ascription->params);
          os << " =>";
        }
        os << ' ';
        print_type_to(os, *d.ascription->body);
      }
      os << " := ";
      print_term_to(os, *d.body);
    }
    os << " ;\n";
  }
  return os.str();
}

bool same_module(const SourceModule& a, const SourceModule& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const auto& x = a.decls[i];
    const auto& y = b.decls[i];
    if (x.kind != y.kind || x.name != y.name || !eq_params(x.params, y.params) || !eq_fix(x.fix, y.fix) ||
        !eq_term(x.body, y.body) || x.ascription.has_value() != y.ascription.has_value()) {
      return false;
    }
    if (x.ascription && (!eq_params(x.ascription->params, y.ascription->params) ||
                         !eq_type(x.ascription->body, y.ascription->body))) {
      return false;
    }
  }
  return true;
}

}  // namespace dtt::surface
