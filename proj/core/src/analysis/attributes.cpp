#include "layopt/analysis/attributes.hpp"

#include <set>
#include <sstream>
#include <vector>

namespace layopt {

namespace {

// tycon -> tycons mentioned by its constructors
std::map<std::string, std::set<std::string>> type_graph(const Program& p) {
  std::map<std::string, std::set<std::string>> g;
  for (const auto& d : p.datatypes) {
    auto& out = g[d.name];
    for (const auto& c : d.ctors)
      for (const auto& t : c.fields)
        if (t.is_packed()) out.insert(t.tycon);
  }
  return g;
}

std::set<std::string> reachable(
    const std::map<std::string, std::set<std::string>>& g,
    const std::string& from) {
  std::set<std::string> seen;
  std::vector<std::string> work{from};
  while (!work.empty()) {
    std::string cur = work.back();
    work.pop_back();
    auto it = g.find(cur);
    if (it == g.end()) continue;
    for (const auto& next : it->second)
      if (seen.insert(next).second) work.push_back(next);
  }
  return seen;
}

// A type is recursive when it can reach a datatype that participates in a
// reachability cycle (including itself).
std::set<std::string> recursive_types(const Program& p) {
  auto g = type_graph(p);
  std::set<std::string> cyclic;
  for (const auto& d : p.datatypes)
    if (reachable(g, d.name).count(d.name)) cyclic.insert(d.name);
  std::set<std::string> out;
  for (const auto& d : p.datatypes) {
    if (cyclic.count(d.name)) {
      out.insert(d.name);
      continue;
    }
    auto rs = reachable(g, d.name);
    for (const auto& t : rs)
      if (cyclic.count(t)) {
        out.insert(d.name);
        break;
      }
  }
  return out;
}

void collect_calls(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Let:
      if (e.rhs.kind == Rhs::Kind::FunApp) out.insert(e.rhs.callee);
      for (const auto& a : e.rhs.args)
        if (a.kind == Arg::Kind::Nested && a.nested->kind == Rhs::Kind::FunApp)
          out.insert(a.nested->callee);
      collect_calls(*e.body, out);
      break;
    case Expr::Kind::Case:
      for (const auto& arm : e.arms) collect_calls(*arm.body, out);
      break;
    case Expr::Kind::Var:
      break;
  }
}

// Functions in f's strongly connected call-graph component, provided that
// component is genuinely recursive; empty set otherwise.
std::set<std::string> recursion_group(const Program& p, const FunDef& f) {
  std::map<std::string, std::set<std::string>> calls;
  for (const auto& fn : p.functions) collect_calls(*fn.body, calls[fn.name]);
  auto reaches = [&](const std::string& from,
                     const std::string& to) -> bool {
    std::set<std::string> seen;
    std::vector<std::string> work{from};
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      for (const auto& next : calls[cur]) {
        if (next == to) return true;
        if (seen.insert(next).second) work.push_back(next);
      }
    }
    return false;
  };
  std::set<std::string> group;
  if (!reaches(f.name, f.name)) return group;
  group.insert(f.name);
  for (const auto& fn : p.functions) {
    if (fn.name == f.name) continue;
    if (reaches(f.name, fn.name) && reaches(fn.name, f.name))
      group.insert(fn.name);
  }
  return group;
}

void collect_rec_args(const Expr& e, const std::set<std::string>& group,
                      std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Let:
      if (e.rhs.kind == Rhs::Kind::FunApp && group.count(e.rhs.callee))
        for (const auto& a : e.rhs.args)
          if (a.kind == Arg::Kind::Var) out.insert(a.var);
      collect_rec_args(*e.body, group, out);
      break;
    case Expr::Kind::Case:
      for (const auto& arm : e.arms) collect_rec_args(*arm.body, group, out);
      break;
    case Expr::Kind::Var:
      break;
  }
}

struct BinderScan {
  const Program& p;
  const std::set<std::string>& rec_types;
  const std::set<std::string>& rec_args;
  FieldAttrTable& table;
  std::map<std::string, Type> env;

  void scan(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Let:
        if (e.ann) env[e.var] = *e.ann;
        scan(*e.body);
        break;
      case Expr::Kind::Case: {
        auto it = env.find(e.scrut);
        const DataDef* dd = nullptr;
        if (it != env.end() && it->second.is_packed())
          dd = p.find_datatype(it->second.tycon);
        for (const auto& arm : e.arms) {
          if (dd) {
            auto [add, idx] = p.find_ctor(arm.ctor);
            (void)add;
            const auto& fields =
                dd->ctors[static_cast<std::size_t>(idx)].fields;
            for (std::size_t k = 0; k < fields.size(); ++k) {
              env[arm.binders[k]] = fields[k];
              unsigned mask = 0;
              const Type& ft = fields[k];
              if (ft.is_scalar()) {
                mask |= kAttrScalar;
              } else {
                if (rec_types.count(ft.tycon)) mask |= kAttrRecursive;
                if (ft.tycon == dd->name)
                  mask |= kAttrSelfRecursive | kAttrRecursive;
                if (rec_args.count(arm.binders[k]))
                  mask |= kAttrInlineable | kAttrRecursive;
              }
              table.entries[{arm.ctor, static_cast<int>(k)}] |= mask;
            }
          }
          scan(*arm.body);
        }
        break;
      }
      case Expr::Kind::Var:
        break;
    }
  }
};

}  // namespace

FieldAttrTable classify_fields(const Program& p, const FunDef& f) {
  FieldAttrTable table;
  table.fn = f.name;
  auto rec_types = recursive_types(p);
  auto group = recursion_group(p, f);
  std::set<std::string> rec_args;
  collect_rec_args(*f.body, group, rec_args);
  BinderScan scan{p, rec_types, rec_args, table, {}};
  for (const auto& [v, t] : f.params) scan.env[v] = t;
  scan.scan(*f.body);
  return table;
}

FieldAttrTable merge_attr_tables(const std::vector<FieldAttrTable>& tables) {
  FieldAttrTable out;
  out.fn = "<merged>";
  for (const auto& t : tables)
    for (const auto& [key, mask] : t.entries) out.entries[key] |= mask;
  return out;
}

std::string attrs_json(const FieldAttrTable& t) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [key, mask] : t.entries) {
    if (!first) os << ",";
    first = false;
    os << "\n  {\"fn\": \"" << t.fn << "\", \"dcon\": \"" << key.first
       << "\", \"field\": " << key.second << ", \"attrs\": [";
    bool f1 = true;
    auto emit = [&](unsigned bit, const char* name) {
      if (mask & bit) {
        if (!f1) os << ", ";
        f1 = false;
        os << "\"" << name << "\"";
      }
    };
    emit(kAttrScalar, "Scalar");
    emit(kAttrRecursive, "Recursive");
    emit(kAttrSelfRecursive, "SelfRecursive");
    emit(kAttrInlineable, "Inlineable");
    os << "]}";
  }
  os << "\n]\n";
  return os.str();
}

}  // namespace layopt
