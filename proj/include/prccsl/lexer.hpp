#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace prccsl {

struct Token {
  enum class Kind { Ident, Int, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0;
  int column = 0;
};

// Splits one source line; stops at a `#` comment. Throws SyntaxError.
std::vector<Token> tokenize(std::string_view text, int line = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_word(std::string_view w, std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_word(std::string_view w);

  void expect_punct(std::string_view p);
  void expect_word(std::string_view w);
  std::string expect_ident(std::string_view what);
  std::int64_t expect_int(std::string_view what);
  // Integer or decimal literal, returned verbatim.
  std::string expect_number(std::string_view what);
  void expect_end();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_reserved_word(std::string_view word);

}  // namespace prccsl
