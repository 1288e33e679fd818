#include "layopt/lang/printer.hpp"

#include <sstream>

namespace layopt {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string lit_text(const Lit& l) {
  switch (l.kind) {
    case Lit::Kind::Int: return std::to_string(l.int_val);
    case Lit::Kind::Bool: return l.bool_val ? "True" : "False";
    default: return "\"" + escape(l.str_val) + "\"";
  }
}

std::string ind(int n) { return std::string(2 * static_cast<size_t>(n), ' '); }

std::string rhs_text(const Rhs& r);

std::string arg_text(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::Var: return a.var;
    case Arg::Kind::Lit: return lit_text(a.lit);
    default: return "(" + rhs_text(*a.nested) + ")";
  }
}

std::string rhs_text(const Rhs& r) {
  std::ostringstream os;
  switch (r.kind) {
    case Rhs::Kind::Lit:
      return lit_text(r.lit);
    case Rhs::Kind::PrimApp:
      os << primop_name(r.op);
      break;
    default:
      os << r.callee;
      break;
  }
  for (const auto& a : r.args) os << " " << arg_text(a);
  return os.str();
}

void emit_expr(std::ostringstream& os, const Expr& e, int indent) {
  switch (e.kind) {
    case Expr::Kind::Let: {
      os << "let " << e.var;
      if (e.ann) os << " : " << type_name(*e.ann);
      os << " = " << rhs_text(e.rhs) << " in\n" << ind(indent);
      emit_expr(os, *e.body, indent);
      return;
    }
    case Expr::Kind::Case: {
      os << "case " << e.scrut << " of {\n";
      for (std::size_t i = 0; i < e.arms.size(); ++i) {
        const auto& arm = e.arms[i];
        os << ind(indent + 1) << arm.ctor;
        for (const auto& b : arm.binders) os << " " << b;
        os << " ->\n" << ind(indent + 2);
        emit_expr(os, *arm.body, indent + 2);
        os << (i + 1 < e.arms.size() ? " ;\n" : " }");
      }
      return;
    }
    case Expr::Kind::Var:
      os << e.ref;
      return;
  }
}

}  // namespace

std::string print_expr(const Expr& e, int indent) {
  std::ostringstream os;
  emit_expr(os, e, indent);
  return os.str();
}

std::string print_rhs(const Rhs& r) { return rhs_text(r); }

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.datatypes) {
    os << "data " << d.name << " = ";
    for (std::size_t i = 0; i < d.ctors.size(); ++i) {
      if (i) os << " | ";
      os << d.ctors[i].name;
      for (const auto& t : d.ctors[i].fields) os << " " << type_name(t);
    }
    os << "\n";
  }
  if (!p.datatypes.empty()) os << "\n";
  for (const auto& n : p.notes) {
    os << "{-# ANN " << n.dcon << " " << n.field << " ";
    switch (n.kind) {
      case LayoutNote::Kind::After: os << "AFTER"; break;
      case LayoutNote::Kind::RightAfter: os << "RIGHTAFTER"; break;
      case LayoutNote::Kind::At: os << "AT"; break;
    }
    os << " " << n.other << " #-}\n";
  }
  if (!p.notes.empty()) os << "\n";
  for (const auto& f : p.functions) {
    os << f.name << " : (";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) os << ", ";
      os << type_name(f.params[i].second);
    }
    os << ") -> " << type_name(f.ret) << "\n";
    os << f.name;
    for (const auto& [v, t] : f.params) os << " " << v;
    os << " =\n" << ind(1);
    emit_expr(os, *f.body, 1);
    os << "\n\n";
  }
  os << "main =\n" << ind(1);
  emit_expr(os, *p.main_expr, 1);
  os << "\n";
  return os.str();
}

}  // namespace layopt
