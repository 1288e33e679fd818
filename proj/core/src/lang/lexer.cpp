#include "lexer.hpp"

#include <cctype>

namespace layopt::detail {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto bump = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i + j < n && text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  auto peek = [&](std::size_t k) -> char {
    return i + k < n ? text[i + k] : '\0';
  };
  auto push = [&](Token::Kind kind, std::string t, SrcLoc loc) {
    Token tok;
    tok.kind = kind;
    tok.text = std::move(t);
    tok.loc = loc;
    out.push_back(std::move(tok));
  };

  while (i < n) {
    char c = text[i];
    SrcLoc loc{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '-' && peek(1) == '-') {
      while (i < n && text[i] != '\n') bump(1);
      continue;
    }
    if (c == '{' && peek(1) == '-' && peek(2) == '#') {
      push(Token::Kind::PragmaOpen, "{-#", loc);
      bump(3);
      continue;
    }
    if (c == '#' && peek(1) == '-' && peek(2) == '}') {
      push(Token::Kind::PragmaClose, "#-}", loc);
      bump(3);
      continue;
    }
    if (c == '-' && peek(1) == '>') {
      push(Token::Kind::Arrow, "->", loc);
      bump(2);
      continue;
    }
    if (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string digits = text.substr(i, j - i);
      Token tok;
      tok.kind = Token::Kind::IntLit;
      tok.text = digits;
      try {
        tok.int_val = std::stoll(digits);
      } catch (const std::exception&) {
        throw ParseError("integer literal out of 64-bit range", loc);
      }
      tok.loc = loc;
      out.push_back(std::move(tok));
      bump(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string digits = text.substr(i, j - i);
      Token tok;
      tok.kind = Token::Kind::IntLit;
      tok.text = digits;
      try {
        tok.int_val = std::stoll(digits);
      } catch (const std::exception&) {
        throw ParseError("integer literal out of 64-bit range", loc);
      }
      tok.loc = loc;
      out.push_back(std::move(tok));
      bump(j - i);
      continue;
    }
    if (c == '"') {
      std::string s;
      std::size_t j = i + 1;
      while (true) {
        if (j >= n) throw ParseError("unterminated string literal", loc);
        char d = text[j];
        if (d == '"') break;
        if (d == '\n') throw ParseError("newline in string literal", loc);
        if (d == '\\') {
          char e = j + 1 < n ? text[j + 1] : '\0';
          if (e == '"' || e == '\\') {
            s.push_back(e);
            j += 2;
            continue;
          }
          throw ParseError("unsupported escape in string literal", loc);
        }
        s.push_back(d);
        ++j;
      }
      Token tok;
      tok.kind = Token::Kind::StrLit;
      tok.text = std::move(s);
      tok.loc = loc;
      out.push_back(std::move(tok));
      bump(j + 1 - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      std::string name = text.substr(i, j - i);
      Token::Kind k;
      if (name == "data") k = Token::Kind::KwData;
      else if (name == "let") k = Token::Kind::KwLet;
      else if (name == "in") k = Token::Kind::KwIn;
      else if (name == "case") k = Token::Kind::KwCase;
      else if (name == "of") k = Token::Kind::KwOf;
      else if (name == "main") k = Token::Kind::KwMain;
      else if (std::isupper(static_cast<unsigned char>(name[0])))
        k = Token::Kind::UIdent;
      else
        k = Token::Kind::LIdent;
      push(k, std::move(name), loc);
      bump(j - i);
      continue;
    }
    switch (c) {
      case '=': push(Token::Kind::Equals, "=", loc); bump(1); continue;
      case '|': push(Token::Kind::Pipe, "|", loc); bump(1); continue;
      case '(': push(Token::Kind::LParen, "(", loc); bump(1); continue;
      case ')': push(Token::Kind::RParen, ")", loc); bump(1); continue;
      case '{': push(Token::Kind::LBrace, "{", loc); bump(1); continue;
      case '}': push(Token::Kind::RBrace, "}", loc); bump(1); continue;
      case ';': push(Token::Kind::Semi, ";", loc); bump(1); continue;
      case ':': push(Token::Kind::Colon, ":", loc); bump(1); continue;
      case ',': push(Token::Kind::Comma, ",", loc); bump(1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", loc);
    }
  }
  Token end;
  end.kind = Token::Kind::End;
  end.loc = SrcLoc{line, col};
  out.push_back(end);
  return out;
}

}  // namespace layopt::detail
