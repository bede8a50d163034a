#include "jtab/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace jtab {

bool Lexicon::is_variable(const std::string& name) const {
  if (variables.count(name)) return true;
  if (constants.count(name)) return false;
  char c = name[0];
  return c == 'x' || c == 'y' || c == 'z';
}

bool Lexicon::is_constant(const std::string& name) const {
  if (constants.count(name)) return true;
  if (variables.count(name)) return false;
  char c = name[0];
  return c >= 'a' && c <= 'w';
}

namespace {

enum class Tok { Ident, KwFalse, Arrow, Colon, Tilde, Star, Plus, Bang, Question, At, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& input) : in_(input) { scan_all(); }
  const std::vector<Token>& tokens() const { return toks_; }

private:
  void scan_all() {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text, int l, int c) {
      toks_.push_back(Token{k, std::move(text), l, c});
    };
    while (i < in_.size()) {
      char c = in_[i];
      if (c == '\n') { line++; col = 1; i++; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { i++; col++; continue; }
      int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < in_.size() &&
               (std::isalnum(static_cast<unsigned char>(in_[j])) || in_[j] == '_'))
          j++;
        std::string word = in_.substr(i, j - i);
        col += static_cast<int>(j - i);
        i = j;
        push(word == "False" ? Tok::KwFalse : Tok::Ident, word, tl, tc);
        continue;
      }
      switch (c) {
        case '-':
          if (i + 1 < in_.size() && in_[i + 1] == '>') {
            push(Tok::Arrow, "->", tl, tc);
            i += 2; col += 2;
            continue;
          }
          throw ParseError(tl, tc, "unknown token '-'");
        case ':': push(Tok::Colon, ":", tl, tc); break;
        case '~': push(Tok::Tilde, "~", tl, tc); break;
        case '*': push(Tok::Star, "*", tl, tc); break;
        case '+': push(Tok::Plus, "+", tl, tc); break;
        case '!': push(Tok::Bang, "!", tl, tc); break;
        case '?': push(Tok::Question, "?", tl, tc); break;
        case '@': push(Tok::At, "@", tl, tc); break;
        case '(': push(Tok::LParen, "(", tl, tc); break;
        case ')': push(Tok::RParen, ")", tl, tc); break;
        default:
          throw ParseError(tl, tc, std::string("unknown token '") + c + "'");
      }
      i++; col++;
    }
    toks_.push_back(Token{Tok::End, "", line, col});
  }

  const std::string& in_;
  std::vector<Token> toks_;
};

class Parser {
public:
  Parser(const std::string& input, const Lexicon& lexicon)
      : lexer_(input), lexicon_(lexicon) {}

  FormulaPtr formula() {
    FormulaPtr f = parse_imp();
    expect_end();
    return f;
  }

  TermPtr term() {
    TermPtr t = parse_sum();
    expect_end();
    return t;
  }

private:
  const Token& peek() const { return lexer_.tokens()[pos_]; }
  const Token& next() { return lexer_.tokens()[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    pos_++;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }

  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input '" + peek().text + "'");
  }

  FormulaPtr parse_imp() {
    FormulaPtr left = parse_neg();
    if (eat(Tok::Arrow)) return Formula::imp(std::move(left), parse_imp());
    return left;
  }

  FormulaPtr parse_neg() {
    if (eat(Tok::Tilde)) return Formula::neg(parse_neg());
    return parse_just();
  }

  // Either `term ':' body` or an atomic formula. A term followed by ':'
  // commits to a justification assertion; otherwise we backtrack.
  FormulaPtr parse_just() {
    size_t save = pos_;
    TermPtr t = try_term();
    if (t && at(Tok::Colon)) {
      next();
      return Formula::just(std::move(t), parse_just());
    }
    pos_ = save;
    FormulaPtr f = parse_atomic();
    if (at(Tok::Colon)) fail("':' applied to a non-term left operand");
    return f;
  }

  FormulaPtr parse_atomic() {
    if (eat(Tok::KwFalse)) return Formula::bottom();
    if (at(Tok::Ident)) {
      Token tok = next();
      if (tok.text == "var" || tok.text == "const")
        throw ParseError(tok.line, tok.col, "'" + tok.text + "' is reserved");
      return Formula::atom(tok.text);
    }
    if (eat(Tok::LParen)) {
      FormulaPtr f = parse_imp();
      if (!eat(Tok::RParen)) fail("expected ')'");
      return f;
    }
    fail("expected a formula");
  }

  // Speculative term parse; returns nullptr (with position restored) when the
  // input does not start with a term.
  TermPtr try_term() {
    size_t save = pos_;
    try {
      return parse_sum();
    } catch (const ParseError&) {
      pos_ = save;
      return nullptr;
    }
  }

  TermPtr parse_sum() {
    TermPtr t = parse_app();
    while (eat(Tok::Plus)) t = Term::sum(std::move(t), parse_app());
    return t;
  }

  TermPtr parse_app() {
    TermPtr t = parse_prefix();
    while (eat(Tok::Star)) t = Term::app(std::move(t), parse_prefix());
    return t;
  }

  TermPtr parse_prefix() {
    if (eat(Tok::Bang)) return Term::bang(parse_prefix());
    if (eat(Tok::Question)) return Term::query(parse_prefix());
    if (eat(Tok::At)) return Term::bar_query(parse_prefix());
    if (at(Tok::Ident)) {
      const Token& tok = peek();
      if (tok.text == "var" || tok.text == "const")
        throw ParseError(tok.line, tok.col, "'" + tok.text + "' is reserved");
      if (lexicon_.is_variable(tok.text)) {
        next();
        return Term::var(tok.text);
      }
      if (lexicon_.is_constant(tok.text)) {
        next();
        return Term::constant(tok.text);
      }
      fail("'" + tok.text + "' is not a term identifier");
    }
    if (eat(Tok::LParen)) {
      TermPtr t = parse_sum();
      if (!eat(Tok::RParen)) fail("expected ')' in term");
      return t;
    }
    fail("expected a term");
  }

  Lexer lexer_;
  const Lexicon& lexicon_;
  size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& input, const Lexicon& lexicon) {
  return Parser(input, lexicon).formula();
}

TermPtr parse_term(const std::string& input, const Lexicon& lexicon) {
  return Parser(input, lexicon).term();
}

}  // namespace jtab
