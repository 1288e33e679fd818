#include "layopt/support/valuegen.hpp"

#include <limits>
#include <map>

namespace layopt {

namespace {

// Smallest value-tree depth realizable per datatype (fixpoint over ctors).
std::map<std::string, int> min_depths(const Program& p) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::map<std::string, int> depth;
  for (const auto& d : p.datatypes) depth[d.name] = kInf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& d : p.datatypes) {
      int best = kInf;
      for (const auto& c : d.ctors) {
        int worst = 0;
        for (const auto& t : c.fields) {
          if (t.is_packed()) worst = std::max(worst, depth[t.tycon]);
        }
        if (worst < kInf) best = std::min(best, worst + 1);
      }
      if (best < depth[d.name]) {
        depth[d.name] = best;
        changed = true;
      }
    }
  }
  return depth;
}

int ctor_min_depth(const DataDef::Ctor& c,
                   const std::map<std::string, int>& depth) {
  int worst = 0;
  for (const auto& t : c.fields)
    if (t.is_packed()) worst = std::max(worst, depth.at(t.tycon));
  return worst + 1;
}

struct Gen {
  const Program& p;
  std::mt19937_64& rng;
  std::map<std::string, int> depth = min_depths(p);

  ValuePtr scalar(Prim prim) {
    switch (prim) {
      case Prim::Int: {
        std::uniform_int_distribution<std::int64_t> d(-100, 100);
        return Value::of_int(d(rng));
      }
      case Prim::Bool: {
        std::uniform_int_distribution<int> d(0, 1);
        return Value::of_bool(d(rng) == 1);
      }
      default: {
        std::uniform_int_distribution<int> len(0, 6);
        std::uniform_int_distribution<int> ch(0, 25);
        std::string s;
        int n = len(rng);
        for (int k = 0; k < n; ++k)
          s.push_back(static_cast<char>('a' + ch(rng)));
        return Value::of_str(std::move(s));
      }
    }
  }

  ValuePtr packed(const std::string& tycon, int budget) {
    const DataDef* dd = p.find_datatype(tycon);
    std::vector<int> candidates;
    for (std::size_t k = 0; k < dd->ctors.size(); ++k) {
      if (budget <= 0 || ctor_min_depth(dd->ctors[k], depth) > budget) {
        // only min-depth ctors remain eligible when out of budget
        continue;
      }
      candidates.push_back(static_cast<int>(k));
    }
    if (candidates.empty()) {
      int best = std::numeric_limits<int>::max();
      for (std::size_t k = 0; k < dd->ctors.size(); ++k)
        best = std::min(best, ctor_min_depth(dd->ctors[k], depth));
      for (std::size_t k = 0; k < dd->ctors.size(); ++k)
        if (ctor_min_depth(dd->ctors[k], depth) == best)
          candidates.push_back(static_cast<int>(k));
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    int idx = candidates[pick(rng)];
    const auto& ctor = dd->ctors[static_cast<std::size_t>(idx)];
    std::vector<ValuePtr> fields;
    fields.reserve(ctor.fields.size());
    for (const auto& t : ctor.fields) fields.push_back(gen(t, budget - 1));
    return Value::of_data(dd->name, ctor.name, idx, std::move(fields));
  }

  ValuePtr gen(const Type& t, int budget) {
    return t.is_scalar() ? scalar(t.prim) : packed(t.tycon, budget);
  }
};

}  // namespace

ValuePtr random_value(const Program& p, const Type& t, std::mt19937_64& rng,
                      int depth_budget) {
  Gen g{p, rng};
  return g.gen(t, depth_budget);
}

}  // namespace layopt
