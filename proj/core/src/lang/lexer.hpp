#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"

namespace layopt::detail {

struct Token {
  enum class Kind {
    UIdent,   // uppercase-initial identifier
    LIdent,   // lowercase-initial identifier
    IntLit,
    StrLit,
    KwData, KwLet, KwIn, KwCase, KwOf, KwMain,
    Equals, Pipe, LParen, RParen, LBrace, RBrace,
    Semi, Colon, Comma, Arrow, RArrow /* -> in arms shares Arrow */,
    PragmaOpen,   // {-#
    PragmaClose,  // #-}
    End
  };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t int_val = 0;
  SrcLoc loc;
};

std::vector<Token> lex(const std::string& text);

}  // namespace layopt::detail
