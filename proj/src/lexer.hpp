#pragma once

#include "minspace/error.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace minspace::detail {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Slash,
  Equals,
  Amp,
  Bar,
  Bang,
  Colon,
  Minus,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

// '#' starts a comment running to the end of the line.
class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  [[nodiscard]] const Token& peek() const noexcept { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool accept(Tok kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

  Token expect(Tok kind, std::string_view what) {
    if (current_.kind != kind) fail("expected " + std::string(what) + describe());
    return next();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, current_.line, current_.column);
  }

  [[nodiscard]] std::string describe() const {
    if (current_.kind == Tok::End) return ", found end of input";
    return ", found '" + current_.text + "'";
  }

private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void advance() {
    skip_space();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      return;
    }
    const char c = text_[pos_];
    const std::size_t start = pos_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        bump();
      current_.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
      current_.kind = Tok::Number;
    } else {
      bump();
      switch (c) {
        case '(': current_.kind = Tok::LParen; break;
        case ')': current_.kind = Tok::RParen; break;
        case '[': current_.kind = Tok::LBracket; break;
        case ']': current_.kind = Tok::RBracket; break;
        case ',': current_.kind = Tok::Comma; break;
        case ';': current_.kind = Tok::Semicolon; break;
        case '/': current_.kind = Tok::Slash; break;
        case '=': current_.kind = Tok::Equals; break;
        case '&': current_.kind = Tok::Amp; break;
        case '|': current_.kind = Tok::Bar; break;
        case '!': current_.kind = Tok::Bang; break;
        case ':': current_.kind = Tok::Colon; break;
        case '-': current_.kind = Tok::Minus; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", current_.line, current_.column);
      }
    }
    current_.text = std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

} // namespace minspace::detail
