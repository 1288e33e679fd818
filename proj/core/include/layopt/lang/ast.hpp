#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace layopt {

struct SrcLoc {
  int line = 0;
  int col = 0;
};

// ---------------------------------------------------------------------------
// Types: scalars (Int/Bool/Str) or packed references to a declared datatype.
// ---------------------------------------------------------------------------

enum class Prim { Int, Bool, Str };

struct Type {
  enum class Kind { Scalar, Packed } kind = Kind::Scalar;
  Prim prim = Prim::Int;  // valid when Scalar
  std::string tycon;      // valid when Packed

  static Type scalar(Prim p) { return Type{Kind::Scalar, p, {}}; }
  static Type packed(std::string name) {
    return Type{Kind::Packed, Prim::Int, std::move(name)};
  }
  bool is_scalar() const { return kind == Kind::Scalar; }
  bool is_packed() const { return kind == Kind::Packed; }
  bool is_bool() const { return is_scalar() && prim == Prim::Bool; }

  friend bool operator==(const Type& a, const Type& b) {
    if (a.kind != b.kind) return false;
    return a.is_scalar() ? a.prim == b.prim : a.tycon == b.tycon;
  }
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
};

std::string type_name(const Type& t);

// ---------------------------------------------------------------------------
// Expressions (A-normal form after normalize_anf; the parser may produce
// nested right-hand sides which normalization flattens).
// ---------------------------------------------------------------------------

struct Lit {
  enum class Kind { Int, Bool, Str } kind = Kind::Int;
  std::int64_t int_val = 0;
  bool bool_val = false;
  std::string str_val;

  static Lit of_int(std::int64_t v) { return Lit{Kind::Int, v, false, {}}; }
  static Lit of_bool(bool v) { return Lit{Kind::Bool, 0, v, {}}; }
  static Lit of_str(std::string v) {
    return Lit{Kind::Str, 0, false, std::move(v)};
  }
  Type type() const {
    switch (kind) {
      case Kind::Int: return Type::scalar(Prim::Int);
      case Kind::Bool: return Type::scalar(Prim::Bool);
      default: return Type::scalar(Prim::Str);
    }
  }
};

enum class PrimOp {
  Add, Sub, Mul, Pow, Eq, Lt, And, Or, Not, StrEq, StrContains, StrConcat
};

const char* primop_name(PrimOp op);
std::optional<PrimOp> primop_by_name(const std::string& name);
int primop_arity(PrimOp op);

struct Rhs;

// Argument of an application: a variable, a literal, or (only before ANF
// normalization) a nested application.
struct Arg {
  enum class Kind { Var, Lit, Nested } kind = Kind::Var;
  std::string var;
  Lit lit;
  std::unique_ptr<Rhs> nested;
  SrcLoc loc;

  static Arg of_var(std::string v, SrcLoc loc = {}) {
    Arg a;
    a.kind = Kind::Var;
    a.var = std::move(v);
    a.loc = loc;
    return a;
  }
  static Arg of_lit(Lit l, SrcLoc loc = {}) {
    Arg a;
    a.kind = Kind::Lit;
    a.lit = std::move(l);
    a.loc = loc;
    return a;
  }
};

struct Rhs {
  enum class Kind { FunApp, ConApp, PrimApp, Lit } kind = Kind::Lit;
  std::string callee;  // function name (FunApp) or constructor name (ConApp)
  PrimOp op = PrimOp::Add;
  std::vector<Arg> args;
  Lit lit;
  SrcLoc loc;
};

struct Expr;

struct CaseArm {
  std::string ctor;
  std::vector<std::string> binders;
  std::unique_ptr<Expr> body;
  SrcLoc loc;
};

struct Expr {
  enum class Kind { Let, Case, Var } kind = Kind::Var;

  // Let
  std::string var;
  std::optional<Type> ann;  // optional annotation; typecheck fills it in
  Rhs rhs;
  std::unique_ptr<Expr> body;

  // Case
  std::string scrut;
  std::vector<CaseArm> arms;

  // Var
  std::string ref;

  SrcLoc loc;
};

Arg clone(const Arg& a);
Rhs clone(const Rhs& r);
std::unique_ptr<Expr> clone(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// ---------------------------------------------------------------------------
// Declarations and programs.
// ---------------------------------------------------------------------------

struct DataDef {
  struct Ctor {
    std::string name;
    std::vector<Type> fields;
    SrcLoc loc;
  };
  std::string name;
  std::vector<Ctor> ctors;
  SrcLoc loc;
};

struct FunDef {
  std::string name;
  std::vector<std::pair<std::string, Type>> params;
  Type ret;
  std::unique_ptr<Expr> body;
  SrcLoc loc;
};

// Layout annotation pragma attached to a constructor:
//   {-# ANN K i AFTER j #-}       field i placed anywhere after field j
//   {-# ANN K i RIGHTAFTER j #-}  field i placed immediately after field j
//   {-# ANN K i AT k #-}          field i pinned to position k
// Field references are 0-based source-order indices.
struct LayoutNote {
  enum class Kind { After, RightAfter, At } kind = Kind::After;
  std::string dcon;
  int field = 0;
  int other = 0;  // reference field (After/RightAfter) or position (At)
  SrcLoc loc;
};

struct Program {
  std::vector<DataDef> datatypes;
  std::vector<FunDef> functions;
  std::unique_ptr<Expr> main_expr;
  std::vector<LayoutNote> notes;

  const DataDef* find_datatype(const std::string& name) const;
  const FunDef* find_function(const std::string& name) const;
  // (datatype, ctor index) for a constructor name; nullptr if unknown.
  std::pair<const DataDef*, int> find_ctor(const std::string& name) const;
};

Program clone(const Program& p);
bool structurally_equal(const Program& a, const Program& b);

// Diagnostics carry a source position when one is known.
struct LangError : std::runtime_error {
  LangError(std::string msg, SrcLoc loc = {})
      : std::runtime_error(loc.line > 0 ? std::to_string(loc.line) + ":" +
                                              std::to_string(loc.col) + ": " +
                                              msg
                                        : msg),
        loc(loc) {}
  SrcLoc loc;
};

struct ParseError : LangError {
  using LangError::LangError;
};
struct TypeError : LangError {
  using LangError::LangError;
};

}  // namespace layopt
