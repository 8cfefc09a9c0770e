#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "herbrand/error.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/term.hpp"

namespace herbrand {

struct Token {
  enum class Kind {
    Ident,
    Gamma,    // ?name
    At,       // @name
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Period,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Less,
    Minus,
    End,
  };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Token::Kind::End, "", line, col});
        return out;
      }
      const char c = src_[pos_];
      auto single = [&](Token::Kind k) {
        advance();
        out.push_back({k, std::string(1, c), line, col});
      };
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back({Token::Kind::Ident, identifier(), line, col});
      } else if (c == '?' || c == '@') {
        advance();
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_])))
          throw SyntaxError(std::string("expected a name after '") + c + "'", line, col);
        out.push_back({c == '?' ? Token::Kind::Gamma : Token::Kind::At, identifier(), line, col});
      } else if (c == '-') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == '>') {
          advance();
          out.push_back({Token::Kind::Arrow, "->", line, col});
        } else {
          out.push_back({Token::Kind::Minus, "-", line, col});
        }
      } else {
        switch (c) {
          case '(': single(Token::Kind::LParen); break;
          case ')': single(Token::Kind::RParen); break;
          case '[': single(Token::Kind::LBrack); break;
          case ']': single(Token::Kind::RBrack); break;
          case ',': single(Token::Kind::Comma); break;
          case '.': single(Token::Kind::Period); break;
          case '~': single(Token::Kind::Tilde); break;
          case '&': single(Token::Kind::Amp); break;
          case '|': single(Token::Kind::Bar); break;
          case '<': single(Token::Kind::Less); break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_skolem_name(std::string_view name) { return name.starts_with(kSkolemPrefix); }

// Recursive-descent parser over a token vector.  Also used by the selection
// and proof-script readers, which embed terms and formulas.
class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).tokenize()) {}

  Formula formula() { return implication(); }

  Term term() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Token::Kind::Gamma:
        next();
        return Term::gamma(tok.text);
      case Token::Kind::At:
        next();
        if (tok.text != "dot") throw SyntaxError("unknown symbol '@" + tok.text + "'", tok.line, tok.column);
        return Term::dot();
      case Token::Kind::LBrack: {
        next();
        Term enc = term();
        expect(Token::Kind::RBrack, "']'");
        if (!enc.is_app() || !enc.skolem())
          throw SyntaxError("a named variable must encode a Skolem term", tok.line, tok.column);
        return Term::named(std::move(enc));
      }
      case Token::Kind::Ident: {
        next();
        if (tok.text == "forall" || tok.text == "exists")
          throw SyntaxError("keyword '" + tok.text + "' used as a term", tok.line, tok.column);
        if (peek().kind != Token::Kind::LParen) {
          if (is_skolem_name(tok.text)) return Term::app(tok.text, {}, true);
          return Term::var(tok.text);
        }
        next();
        std::vector<Term> args;
        if (peek().kind != Token::Kind::RParen) {
          args.push_back(term());
          while (accept(Token::Kind::Comma)) args.push_back(term());
        }
        expect(Token::Kind::RParen, "')'");
        return Term::app(tok.text, std::move(args), is_skolem_name(tok.text));
      }
      default:
        throw SyntaxError("expected a term", tok.line, tok.column);
    }
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  const Token& expect(Token::Kind k, const char* what) {
    if (peek().kind != k) {
      const Token& t = peek();
      throw SyntaxError(std::string("expected ") + what +
                            (t.kind == Token::Kind::End ? " before end of input" : " near '" + t.text + "'"),
                        t.line, t.column);
    }
    return next();
  }

  void expect_end() {
    if (!at_end()) {
      const Token& t = peek();
      throw SyntaxError("unexpected '" + t.text + "'", t.line, t.column);
    }
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    while (accept(Token::Kind::Arrow)) lhs = Formula::implies(lhs, disjunction());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept(Token::Kind::Bar)) lhs = Formula::disj(lhs, conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (accept(Token::Kind::Amp)) lhs = Formula::conj(lhs, unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Token::Kind::Tilde)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::LParen) {
      next();
      Formula f = implication();
      expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (tok.kind == Token::Kind::Ident && (tok.text == "forall" || tok.text == "exists")) {
      next();
      const Quantifier q = tok.text == "forall" ? Quantifier::Forall : Quantifier::Exists;
      const Token& vtok = peek();
      Term v = term();
      if (!(v.is_var() || v.is_named()))
        throw SyntaxError("expected a bound variable", vtok.line, vtok.column);
      expect(Token::Kind::Period, "'.'");
      return Formula::quant(q, std::move(v), implication());
    }
    Term lhs = term();
    if (accept(Token::Kind::Less)) return Formula::less(std::move(lhs), term());
    // A bare identifier or application in formula position is an atom.
    if (lhs.is_var()) return Formula::atom(lhs.name());
    if (lhs.is_app() && !lhs.is_dot()) {
      std::vector<Term> args(lhs.args().begin(), lhs.args().end());
      return Formula::atom(lhs.name(), std::move(args));
    }
    throw SyntaxError("expected an atom", tok.line, tok.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Parses and desugars a formula; rejects symbols used with two arities.
inline Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  signature_of(f);
  return f;
}

inline Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

}  // namespace herbrand
