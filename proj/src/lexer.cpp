#include "prccsl/lexer.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <charconv>

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

constexpr std::string_view kTwoCharPuncts[] = {"->", "<=", ">=", "==", "!=", "&&", "||"};
constexpr std::string_view kOneCharPuncts = "{}()[],:+-*/%!<>=.;";

constexpr std::string_view kReserved[] = {
    "clock",      "const",     "let",       "query",      "prob",       "periodicOn", "delayFor", "on",
    "period",     "inf",       "sup",       "subclock",   "coincides",  "excludes",   "causes",   "precedes",
    "periodic",   "execution", "e2e",       "sporadic",   "sync",       "comparison", "exclusion", "from",
    "to",         "within",    "tolerance", "bound",      "budget",     "with",       "ratio",    "runs",
    "hypothesis", "estimate",  "compare",   "expect",     "simulate",   "always",     "eventually", "p0",
    "alpha",      "beta",      "delta",    "confidence", "epsilon"};

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of line";
  return "'" + t.text + "'";
}

}  // namespace

bool is_reserved_word(std::string_view word) {
  return std::find(std::begin(kReserved), std::end(kReserved), word) != std::end(kReserved);
}

std::vector<Token> tokenize(std::string_view text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col(i);
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Kind::Int;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        t.kind = Token::Kind::Number;
      }
      if (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        throw Error(ErrorCode::SyntaxError, "malformed number", line, col(i));
      }
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      t.kind = Token::Kind::Punct;
      const std::string_view two = text.substr(i, 2);
      if (two.size() == 2 && std::find(std::begin(kTwoCharPuncts), std::end(kTwoCharPuncts), two) != std::end(kTwoCharPuncts)) {
        t.text = std::string(two);
        i += 2;
      } else if (kOneCharPuncts.find(ch) != std::string_view::npos) {
        t.text = std::string(1, ch);
        ++i;
      } else {
        throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + ch + "'", line, col(i));
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col(text.size());
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != Token::Kind::End) tokens_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Kind::Punct && t.text == p;
}

bool TokenStream::is_word(std::string_view w, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Token::Kind::Ident && t.text == w;
}

bool TokenStream::accept_punct(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

bool TokenStream::accept_word(std::string_view w) {
  if (!is_word(w)) return false;
  next();
  return true;
}

void TokenStream::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail("expected '" + std::string(p) + "', found " + describe(peek()));
}

void TokenStream::expect_word(std::string_view w) {
  if (!accept_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
}

std::string TokenStream::expect_ident(std::string_view what) {
  const Token& t = peek();
  if (t.kind != Token::Kind::Ident || is_reserved_word(t.text)) {
    fail("expected " + std::string(what) + ", found " + describe(t));
  }
  return next().text;
}

std::int64_t TokenStream::expect_int(std::string_view what) {
  const Token& t = peek();
  if (t.kind != Token::Kind::Int) fail("expected " + std::string(what) + ", found " + describe(t));
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail("integer out of range: " + t.text);
  next();
  return v;
}

std::string TokenStream::expect_number(std::string_view what) {
  const Token& t = peek();
  if (t.kind != Token::Kind::Int && t.kind != Token::Kind::Number) {
    fail("expected " + std::string(what) + ", found " + describe(t));
  }
  return next().text;
}

void TokenStream::expect_end() {
  if (!at_end()) fail("unexpected " + describe(peek()));
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& t, const std::string& message) const {
  throw Error(ErrorCode::SyntaxError, message, t.line, t.column);
}

}  // namespace prccsl
