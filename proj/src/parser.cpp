#include "teltrace/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "teltrace/errors.hpp"

namespace teltrace {
namespace {

enum class Tok {
  End,
  Ident,     // atom name incl. argument tuple; quote counts in aux fields
  Hash,      // one of the #-operators / #program
  AmpKw,     // &initial, &final, &tel
  Not,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  IffTok,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Dot,
  ColonDash,
  Lt,        // <
  LtColon,   // <:
  LtQuest,   // <?
  LtStar,    // <*
  Gt,        // >
  GtColon,   // >:
  GtQuest,   // >?
  GtStar,    // >*
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // name for Ident, operator text for Hash/AmpKw
  int prev_quotes = 0;
  int next_quotes = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (eof()) return t;
    char c = peek();
    if (c == '\'' || (std::islower(static_cast<unsigned char>(c)))) return lex_atom(t);
    if (c == '_' || std::isupper(static_cast<unsigned char>(c)))
      fail(t, "identifiers must start with a lowercase letter");
    switch (c) {
      case '#': return lex_hash(t);
      case '&': return lex_amp(t);
      case '~': get(); t.kind = Tok::Tilde; return t;
      case '|': get(); t.kind = Tok::Pipe; return t;
      case '(': get(); t.kind = Tok::LParen; return t;
      case ')': get(); t.kind = Tok::RParen; return t;
      case '{': get(); t.kind = Tok::LBrace; return t;
      case '}': get(); t.kind = Tok::RBrace; return t;
      case ',': get(); t.kind = Tok::Comma; return t;
      case ';': get(); t.kind = Tok::Semi; return t;
      case '.': get(); t.kind = Tok::Dot; return t;
      case ':':
        get();
        if (peek() == '-') { get(); t.kind = Tok::ColonDash; return t; }
        fail(t, "expected ':-'");
        break;
      case '-':
        get();
        if (peek() == '>') { get(); t.kind = Tok::Arrow; return t; }
        fail(t, "expected '->'");
        break;
      case '<':
        get();
        if (peek() == '-') {
          get();
          if (peek() == '>') { get(); t.kind = Tok::IffTok; return t; }
          fail(t, "expected '<->'");
        }
        if (peek() == ':') { get(); t.kind = Tok::LtColon; return t; }
        if (peek() == '?') { get(); t.kind = Tok::LtQuest; return t; }
        if (peek() == '*') { get(); t.kind = Tok::LtStar; return t; }
        t.kind = Tok::Lt;
        return t;
      case '>':
        get();
        if (peek() == ':') { get(); t.kind = Tok::GtColon; return t; }
        if (peek() == '?') { get(); t.kind = Tok::GtQuest; return t; }
        if (peek() == '*') { get(); t.kind = Tok::GtStar; return t; }
        t.kind = Tok::Gt;
        return t;
      default:
        fail(t, std::string("unexpected character '") + c + "'");
    }
    return t;  // unreachable
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[pos_]; }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
    return c;
  }
  void skip_ws() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
      if (!eof() && peek() == '%') {
        while (!eof() && peek() != '\n') get();
        continue;
      }
      break;
    }
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
  }

  Token lex_atom(Token& t) {
    t.kind = Tok::Ident;
    while (peek() == '\'') { get(); ++t.prev_quotes; }
    if (!std::islower(static_cast<unsigned char>(peek())))
      fail(t, "expected atom after quote");
    std::string name;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      name += get();
    while (peek() == '\'') { get(); ++t.next_quotes; }
    if (peek() == '(') {
      name += get();
      int depth = 1;
      while (depth > 0) {
        if (eof()) fail(t, "unterminated argument tuple");
        char c = get();
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ',' ||
              c == '(' || c == ')' || c == '-'))
          fail(t, "only constant arguments are supported");
        name += c;
      }
    }
    if (t.prev_quotes > 0 && t.next_quotes > 0)
      fail(t, "atom cannot carry both leading and trailing quotes");
    if (name == "not") {
      if (t.prev_quotes || t.next_quotes) fail(t, "'not' is a reserved word");
      t.kind = Tok::Not;
      return t;
    }
    t.text = std::move(name);
    return t;
  }

  Token lex_hash(Token& t) {
    get();  // '#'
    std::string word;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      word += get();
    if (peek() == '+' || peek() == '-' || peek() == '^') word += get();
    t.kind = Tok::Hash;
    t.text = word;
    static const char* known[] = {"true", "false", "previous", "previous^", "next",
                                  "next^", "always+", "always-", "eventually+",
                                  "eventually-", "since", "trigger", "until",
                                  "release", "initial", "final", "program"};
    for (const char* k : known)
      if (word == k) return t;
    fail(t, "unknown directive or operator '#" + word + "'");
    return t;
  }

  Token lex_amp(Token& t) {
    get();  // '&'
    if (!std::isalpha(static_cast<unsigned char>(peek()))) {
      t.kind = Tok::Amp;
      return t;
    }
    std::string word;
    while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) word += get();
    if (word != "initial" && word != "final" && word != "tel")
      fail(t, "unknown element '&" + word + "'");
    t.kind = Tok::AmpKw;
    t.text = word;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class Wrap { InitialBlock, DynamicBlock, FinalBlock, AlwaysBlock };

class Parser {
 public:
  Parser(FormulaStore& store, std::string_view text) : store_(store), lex_(text) {
    advance();
  }

  Theory theory() {
    std::vector<Fid> formulas;
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::Hash && cur_.text == "program") {
        directive();
        continue;
      }
      formulas.push_back(statement());
    }
    Theory th;
    th.formulas = std::move(formulas);
    th.alphabet = mentioned_alphabet(store_, th.formulas);
    return th;
  }

  Fid single_formula() {
    Fid f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, cur_.line, cur_.col);
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    if (k != Tok::End) advance();
  }

  void directive() {
    advance();  // #program
    if (cur_.kind != Tok::Ident || cur_.prev_quotes || cur_.next_quotes)
      fail("expected subprogram name after #program");
    const std::string& name = cur_.text;
    if (name == "initial") wrap_ = Wrap::InitialBlock;
    else if (name == "dynamic") wrap_ = Wrap::DynamicBlock;
    else if (name == "final") wrap_ = Wrap::FinalBlock;
    else if (name == "always") wrap_ = Wrap::AlwaysBlock;
    else fail("unknown #program block '" + name + "'");
    advance();
    expect(Tok::Dot, "'.' after #program directive");
  }

  // statement := [headdisj] [':-' body] '.'
  Fid statement() {
    std::vector<Fid> head;
    if (cur_.kind != Tok::ColonDash) {
      head.push_back(formula());
      while (cur_.kind == Tok::Semi) {
        advance();
        head.push_back(formula());
      }
    }
    Fid f;
    if (cur_.kind == Tok::ColonDash) {
      advance();
      std::vector<Fid> body;
      body.push_back(body_element());
      while (cur_.kind == Tok::Comma) {
        advance();
        body.push_back(body_element());
      }
      Fid hd = head.empty() ? store_.bot() : store_.disj_all(head);
      f = store_.impl(store_.conj_all(body), hd);
    } else {
      if (head.empty()) fail("empty statement");
      f = store_.disj_all(head);
    }
    expect(Tok::Dot, "'.' at end of statement");
    return wrap(f);
  }

  Fid wrap(Fid f) {
    switch (wrap_) {
      case Wrap::InitialBlock: return f;
      case Wrap::DynamicBlock: return store_.make(Op::WNext, store_.make(Op::AlwaysAfter, f));
      case Wrap::FinalBlock:
        return store_.make(Op::AlwaysAfter, store_.impl(store_.make(Op::Final), f));
      case Wrap::AlwaysBlock: return store_.make(Op::AlwaysAfter, f);
    }
    return f;
  }

  Fid body_element() {
    int negs = 0;
    while (cur_.kind == Tok::Not) {
      ++negs;
      advance();
    }
    in_body_ = true;
    Fid f = formula();
    in_body_ = false;
    for (int i = 0; i < negs; ++i) f = store_.neg(f);
    return f;
  }

  // formula := orexp (('->'|'<->') formula)?      right-associative
  Fid formula() {
    Fid lhs = orexp();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return store_.impl(lhs, formula());
    }
    if (cur_.kind == Tok::IffTok) {
      advance();
      return store_.make(Op::Iff, lhs, formula());
    }
    return lhs;
  }

  Fid orexp() {
    std::vector<Fid> parts{andexp()};
    while (cur_.kind == Tok::Pipe) {
      advance();
      parts.push_back(andexp());
    }
    return store_.disj_all(parts);
  }

  Fid andexp() {
    std::vector<Fid> parts{bintemp()};
    while (cur_.kind == Tok::Amp) {
      advance();
      parts.push_back(bintemp());
    }
    return store_.conj_all(parts);
  }

  bool binary_temporal(Op& op) {
    if (cur_.kind == Tok::Hash) {
      if (cur_.text == "since") { op = Op::Since; return true; }
      if (cur_.text == "trigger") { op = Op::Trigger; return true; }
      if (cur_.text == "until") { op = Op::Until; return true; }
      if (cur_.text == "release") { op = Op::Release; return true; }
      return false;
    }
    switch (cur_.kind) {
      case Tok::LtQuest: op = Op::Since; return true;
      case Tok::LtStar: op = Op::Trigger; return true;
      case Tok::GtQuest: op = Op::Until; return true;
      case Tok::GtStar: op = Op::Release; return true;
      default: return false;
    }
  }

  Fid bintemp() {
    Fid lhs = unary();
    Op op;
    if (binary_temporal(op)) {
      advance();
      return store_.make(op, lhs, bintemp());
    }
    return lhs;
  }

  Fid unary() {
    switch (cur_.kind) {
      case Tok::Tilde: advance(); return store_.neg(unary());
      case Tok::Lt: advance(); return store_.make(Op::Prev, unary());
      case Tok::LtColon: advance(); return store_.make(Op::WPrev, unary());
      case Tok::LtQuest: advance(); return store_.make(Op::EvBefore, unary());
      case Tok::LtStar: advance(); return store_.make(Op::AlwaysBefore, unary());
      case Tok::Gt: advance(); return store_.make(Op::Next, unary());
      case Tok::GtColon: advance(); return store_.make(Op::WNext, unary());
      case Tok::GtQuest: advance(); return store_.make(Op::EvAfter, unary());
      case Tok::GtStar: advance(); return store_.make(Op::AlwaysAfter, unary());
      case Tok::Hash: {
        const std::string& w = cur_.text;
        if (w == "previous") { advance(); return store_.make(Op::Prev, unary()); }
        if (w == "previous^") { advance(); return store_.make(Op::WPrev, unary()); }
        if (w == "next") { advance(); return store_.make(Op::Next, unary()); }
        if (w == "next^") { advance(); return store_.make(Op::WNext, unary()); }
        if (w == "always+") { advance(); return store_.make(Op::AlwaysAfter, unary()); }
        if (w == "always-") { advance(); return store_.make(Op::AlwaysBefore, unary()); }
        if (w == "eventually+") { advance(); return store_.make(Op::EvAfter, unary()); }
        if (w == "eventually-") { advance(); return store_.make(Op::EvBefore, unary()); }
        return primary();
      }
      default: return primary();
    }
  }

  Fid primary() {
    switch (cur_.kind) {
      case Tok::Ident: {
        Fid f = store_.make_atom(store_.atom(cur_.text));
        int prevs = cur_.prev_quotes;
        int nexts = cur_.next_quotes;
        if (nexts > 0 && in_body_ && tel_depth_ == 0)
          fail("next-quoted atom '" + cur_.text + "'' is only allowed in rule heads or &tel");
        advance();
        for (int i = 0; i < prevs; ++i) f = store_.make(Op::Prev, f);
        for (int i = 0; i < nexts; ++i) f = store_.make(Op::Next, f);
        return f;
      }
      case Tok::Hash: {
        const std::string& w = cur_.text;
        if (w == "true") { advance(); return store_.top(); }
        if (w == "false") { advance(); return store_.bot(); }
        if (w == "initial") { advance(); return store_.make(Op::Initial); }
        if (w == "final") { advance(); return store_.make(Op::Final); }
        fail("operator '#" + w + "' cannot start a formula here");
      }
      case Tok::AmpKw: {
        const std::string& w = cur_.text;
        if (w == "initial") { advance(); return store_.make(Op::Initial); }
        if (w == "final") { advance(); return store_.make(Op::Final); }
        // &tel { formula }
        advance();
        expect(Tok::LBrace, "'{' after &tel");
        ++tel_depth_;
        Fid f = formula();
        --tel_depth_;
        expect(Tok::RBrace, "'}' closing &tel");
        return f;
      }
      case Tok::LParen: {
        advance();
        Fid f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  FormulaStore& store_;
  Lexer lex_;
  Token cur_;
  Wrap wrap_ = Wrap::InitialBlock;
  bool in_body_ = false;
  int tel_depth_ = 0;
};

}  // namespace

Theory parse_theory(FormulaStore& store, std::string_view text) {
  return Parser(store, text).theory();
}

Fid parse_formula(FormulaStore& store, std::string_view text) {
  return Parser(store, text).single_formula();
}

}  // namespace teltrace
