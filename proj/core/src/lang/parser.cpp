#include "layopt/lang/parse.hpp"

#include <map>
#include <set>

#include "lexer.hpp"

namespace layopt {

namespace {

using detail::Token;
using Kind = Token::Kind;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    Program p;
    bool saw_main = false;
    while (!at(Kind::End)) {
      if (at(Kind::KwData)) {
        p.datatypes.push_back(parse_datadef());
      } else if (at(Kind::PragmaOpen)) {
        p.notes.push_back(parse_pragma());
      } else if (at(Kind::KwMain)) {
        if (saw_main) throw ParseError("duplicate main", cur().loc);
        saw_main = true;
        next();
        expect(Kind::Equals, "'='");
        p.main_expr = parse_expr();
      } else if (at(Kind::LIdent)) {
        p.functions.push_back(parse_fundef());
      } else {
        throw ParseError("expected declaration", cur().loc);
      }
    }
    if (!saw_main) throw ParseError("program has no main expression");
    check_names(p);
    return p;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Kind k) const { return cur().kind == k; }
  Token next() { return toks_[pos_++]; }
  Token expect(Kind k, const char* what) {
    if (!at(k))
      throw ParseError(std::string("expected ") + what + ", found '" +
                           (cur().kind == Kind::End ? "<eof>" : cur().text) +
                           "'",
                       cur().loc);
    return next();
  }

  Type parse_type() {
    Token t = expect(Kind::UIdent, "type name");
    if (t.text == "Int") return Type::scalar(Prim::Int);
    if (t.text == "Bool") return Type::scalar(Prim::Bool);
    if (t.text == "Str") return Type::scalar(Prim::Str);
    return Type::packed(t.text);
  }

  DataDef parse_datadef() {
    DataDef d;
    d.loc = cur().loc;
    expect(Kind::KwData, "'data'");
    d.name = expect(Kind::UIdent, "type constructor name").text;
    expect(Kind::Equals, "'='");
    while (true) {
      DataDef::Ctor c;
      Token t = expect(Kind::UIdent, "data constructor name");
      c.name = t.text;
      c.loc = t.loc;
      while (at(Kind::UIdent)) c.fields.push_back(parse_type());
      d.ctors.push_back(std::move(c));
      if (at(Kind::Pipe)) {
        next();
        continue;
      }
      break;
    }
    return d;
  }

  LayoutNote parse_pragma() {
    LayoutNote note;
    note.loc = cur().loc;
    expect(Kind::PragmaOpen, "'{-#'");
    Token kw = expect(Kind::UIdent, "'ANN'");
    if (kw.text != "ANN") throw ParseError("expected ANN pragma", kw.loc);
    note.dcon = expect(Kind::UIdent, "constructor name").text;
    note.field =
        static_cast<int>(expect(Kind::IntLit, "field index").int_val);
    Token rel = expect(Kind::UIdent, "AFTER, RIGHTAFTER or AT");
    if (rel.text == "AFTER") note.kind = LayoutNote::Kind::After;
    else if (rel.text == "RIGHTAFTER") note.kind = LayoutNote::Kind::RightAfter;
    else if (rel.text == "AT") note.kind = LayoutNote::Kind::At;
    else throw ParseError("expected AFTER, RIGHTAFTER or AT", rel.loc);
    note.other =
        static_cast<int>(expect(Kind::IntLit, "field index or position")
                             .int_val);
    expect(Kind::PragmaClose, "'#-}'");
    return note;
  }

  FunDef parse_fundef() {
    FunDef f;
    Token name = expect(Kind::LIdent, "function name");
    f.name = name.text;
    f.loc = name.loc;
    expect(Kind::Colon, "':' (signature)");
    expect(Kind::LParen, "'('");
    std::vector<Type> param_types;
    if (!at(Kind::RParen)) {
      param_types.push_back(parse_type());
      while (at(Kind::Comma)) {
        next();
        param_types.push_back(parse_type());
      }
    }
    expect(Kind::RParen, "')'");
    expect(Kind::Arrow, "'->'");
    f.ret = parse_type();

    Token name2 = expect(Kind::LIdent, "function name (definition)");
    if (name2.text != f.name)
      throw ParseError("definition name '" + name2.text +
                           "' does not match signature '" + f.name + "'",
                       name2.loc);
    std::vector<std::string> params;
    while (at(Kind::LIdent)) params.push_back(next().text);
    if (params.size() != param_types.size())
      throw ParseError("function '" + f.name + "' declares " +
                           std::to_string(param_types.size()) +
                           " parameter types but binds " +
                           std::to_string(params.size()),
                       name2.loc);
    for (std::size_t i = 0; i < params.size(); ++i)
      f.params.emplace_back(params[i], param_types[i]);
    expect(Kind::Equals, "'='");
    f.body = parse_expr();
    return f;
  }

  std::unique_ptr<Expr> parse_expr() {
    auto e = std::make_unique<Expr>();
    e->loc = cur().loc;
    if (at(Kind::KwLet)) {
      next();
      e->kind = Expr::Kind::Let;
      e->var = expect(Kind::LIdent, "binder").text;
      if (at(Kind::Colon)) {
        next();
        e->ann = parse_type();
      }
      expect(Kind::Equals, "'='");
      e->rhs = parse_rhs();
      expect(Kind::KwIn, "'in'");
      e->body = parse_expr();
      return e;
    }
    if (at(Kind::KwCase)) {
      next();
      e->kind = Expr::Kind::Case;
      e->scrut = expect(Kind::LIdent, "scrutinee variable").text;
      expect(Kind::KwOf, "'of'");
      expect(Kind::LBrace, "'{'");
      while (true) {
        CaseArm arm;
        Token t = expect(Kind::UIdent, "constructor pattern");
        arm.ctor = t.text;
        arm.loc = t.loc;
        while (at(Kind::LIdent)) arm.binders.push_back(next().text);
        expect(Kind::Arrow, "'->'");
        arm.body = parse_expr();
        e->arms.push_back(std::move(arm));
        if (at(Kind::Semi)) {
          next();
          continue;
        }
        break;
      }
      expect(Kind::RBrace, "'}'");
      return e;
    }
    if (at(Kind::LIdent)) {
      e->kind = Expr::Kind::Var;
      e->ref = next().text;
      return e;
    }
    throw ParseError("expected expression", cur().loc);
  }

  bool at_arg_start() const {
    switch (cur().kind) {
      case Kind::LIdent:
      case Kind::IntLit:
      case Kind::StrLit:
      case Kind::LParen:
        return true;
      case Kind::UIdent:
        return cur().text == "True" || cur().text == "False";
      default:
        return false;
    }
  }

  Arg parse_arg() {
    SrcLoc loc = cur().loc;
    if (at(Kind::LIdent)) return Arg::of_var(next().text, loc);
    if (at(Kind::IntLit)) return Arg::of_lit(Lit::of_int(next().int_val), loc);
    if (at(Kind::StrLit)) return Arg::of_lit(Lit::of_str(next().text), loc);
    if (at(Kind::UIdent) && (cur().text == "True" || cur().text == "False"))
      return Arg::of_lit(Lit::of_bool(next().text == "True"), loc);
    if (at(Kind::LParen)) {
      next();
      Arg a;
      a.kind = Arg::Kind::Nested;
      a.nested = std::make_unique<Rhs>(parse_rhs());
      a.loc = loc;
      expect(Kind::RParen, "')'");
      return a;
    }
    throw ParseError("expected argument", loc);
  }

  Rhs parse_rhs() {
    Rhs r;
    r.loc = cur().loc;
    if (at(Kind::IntLit)) {
      r.kind = Rhs::Kind::Lit;
      r.lit = Lit::of_int(next().int_val);
      return r;
    }
    if (at(Kind::StrLit)) {
      r.kind = Rhs::Kind::Lit;
      r.lit = Lit::of_str(next().text);
      return r;
    }
    if (at(Kind::UIdent)) {
      if (cur().text == "True" || cur().text == "False") {
        r.kind = Rhs::Kind::Lit;
        r.lit = Lit::of_bool(next().text == "True");
        return r;
      }
      r.kind = Rhs::Kind::ConApp;
      r.callee = next().text;
      while (at_arg_start()) r.args.push_back(parse_arg());
      return r;
    }
    if (at(Kind::LIdent)) {
      std::string head = next().text;
      std::vector<Arg> args;
      while (at_arg_start()) args.push_back(parse_arg());
      if (args.empty())
        throw ParseError(
            "bare variable right-hand side is not allowed; bind a call, "
            "constructor or literal",
            r.loc);
      if (auto op = primop_by_name(head)) {
        r.kind = Rhs::Kind::PrimApp;
        r.op = *op;
      } else {
        r.kind = Rhs::Kind::FunApp;
        r.callee = head;
      }
      r.args = std::move(args);
      return r;
    }
    throw ParseError("expected right-hand side", cur().loc);
  }

  // Global-uniqueness checks the grammar itself cannot express.
  static void check_names(const Program& p) {
    std::set<std::string> tycons, dcons, funs;
    for (const auto& d : p.datatypes) {
      if (!tycons.insert(d.name).second)
        throw ParseError("duplicate datatype '" + d.name + "'", d.loc);
      for (const auto& c : d.ctors) {
        if (c.name == "True" || c.name == "False")
          throw ParseError("constructor name '" + c.name + "' is reserved",
                           c.loc);
        if (!dcons.insert(c.name).second)
          throw ParseError("duplicate constructor '" + c.name + "'", c.loc);
      }
    }
    for (const auto& f : p.functions) {
      if (primop_by_name(f.name))
        throw ParseError("function name '" + f.name + "' shadows a primitive",
                         f.loc);
      if (!funs.insert(f.name).second)
        throw ParseError("duplicate function '" + f.name + "'", f.loc);
    }
    for (const auto& d : p.datatypes)
      for (const auto& c : d.ctors)
        for (const auto& t : c.fields)
          if (t.is_packed() && !tycons.count(t.tycon))
            throw ParseError("unknown type '" + t.tycon + "' in constructor '" +
                                 c.name + "'",
                             c.loc);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(const std::string& text) {
  return Parser(detail::lex(text)).run();
}

}  // namespace layopt
