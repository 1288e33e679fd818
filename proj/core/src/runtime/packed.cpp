#include "layopt/runtime/packed.hpp"

#include <cstring>
#include <fstream>

namespace layopt {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k)
    out.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xff));
}

void put_u64_at(std::vector<std::uint8_t>& out, std::size_t at,
                std::uint64_t v) {
  for (int k = 0; k < 8; ++k)
    out[at + static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>((v >> (8 * k)) & 0xff);
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k)
    out.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xff));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::uint64_t at) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k)
    v = (v << 8) | b[static_cast<std::size_t>(at) + static_cast<std::size_t>(k)];
  return v;
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& b, std::uint64_t at) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k)
    v = (v << 8) | b[static_cast<std::size_t>(at) + static_cast<std::size_t>(k)];
  return v;
}

struct Emitter {
  const LayoutDescriptor& ld;
  std::vector<std::uint8_t>& out;

  void emit(const Value& v) {
    switch (v.kind) {
      case Value::Kind::Int:
        put_u64(out, static_cast<std::uint64_t>(v.i));
        return;
      case Value::Kind::Bool:
        out.push_back(v.b ? 1 : 0);
        return;
      case Value::Kind::Str:
        put_u32(out, static_cast<std::uint32_t>(v.s.size()));
        out.insert(out.end(), v.s.begin(), v.s.end());
        return;
      case Value::Kind::Data:
        break;
    }
    const auto& ctors = ld.ctors(v.tycon);
    if (v.ordinal < 0 || v.ordinal >= static_cast<int>(ctors.size()) ||
        v.ordinal > 255)
      throw PackedError("constructor ordinal out of range for " + v.dcon);
    const auto& ctor = ctors[static_cast<std::size_t>(v.ordinal)];
    if (ctor.fields.size() != v.fields.size() || ctor.fields.size() > 64)
      throw PackedError("field count mismatch serializing " + v.dcon);
    out.push_back(static_cast<std::uint8_t>(v.ordinal));
    std::size_t table_at = out.size();
    std::size_t table_entries = 0;
    if (ld.offset_mode == OffsetMode::ShortcutOffsets &&
        ctor.fields.size() >= 2) {
      table_entries = ctor.fields.size() - 1;
      out.resize(out.size() + 8 * table_entries, 0);
    }
    std::size_t payload_start = out.size();
    for (std::size_t k = 0; k < v.fields.size(); ++k) {
      if (table_entries && k >= 1)
        put_u64_at(out, table_at + 8 * (k - 1),
                   static_cast<std::uint64_t>(out.size() - payload_start));
      emit(*v.fields[k]);
    }
  }
};

}  // namespace

LayoutDescriptor LayoutDescriptor::from_program(const Program& p,
                                                OffsetMode mode) {
  LayoutDescriptor ld;
  ld.offset_mode = mode;
  for (const auto& d : p.datatypes) {
    auto& out = ld.datatypes[d.name];
    for (const auto& c : d.ctors) out.push_back(CtorLayout{c.name, c.fields});
  }
  return ld;
}

const std::vector<LayoutDescriptor::CtorLayout>& LayoutDescriptor::ctors(
    const std::string& tycon) const {
  auto it = datatypes.find(tycon);
  if (it == datatypes.end())
    throw PackedError("layout descriptor has no datatype '" + tycon + "'");
  return it->second;
}

PackedBuffer serialize(const ValuePtr& v, const LayoutDescriptor& ld) {
  PackedBuffer b;
  Emitter{ld, b.bytes}.emit(*v);
  b.root = 0;
  return b;
}

namespace {

struct Parser {
  const PackedBuffer& b;
  const LayoutDescriptor& ld;
  ParsedBuffer& out;

  std::uint64_t need(std::uint64_t at, std::uint64_t len) {
    if (at + len > b.bytes.size())
      throw PackedError("truncated buffer at byte " + std::to_string(at));
    return at + len;
  }

  std::uint64_t scalar_end(const Type& t, std::uint64_t at) {
    switch (t.prim) {
      case Prim::Int: return need(at, 8);
      case Prim::Bool: {
        std::uint64_t end = need(at, 1);
        if (b.bytes[static_cast<std::size_t>(at)] > 1)
          throw PackedError("malformed Bool at byte " + std::to_string(at));
        return end;
      }
      default: {
        need(at, 4);
        std::uint32_t len = get_u32(b.bytes, at);
        return need(at + 4, len);
      }
    }
  }

  // Returns (node index, end).
  std::pair<int, std::uint64_t> parse(const std::string& tycon,
                                      std::uint64_t at) {
    need(at, 1);
    const auto& ctors = ld.ctors(tycon);
    std::uint8_t tag = b.bytes[static_cast<std::size_t>(at)];
    if (tag >= ctors.size())
      throw PackedError("unknown tag " + std::to_string(tag) + " for " +
                        tycon + " at byte " + std::to_string(at));
    const auto& ctor = ctors[tag];
    int idx = static_cast<int>(out.nodes.size());
    out.nodes.emplace_back();
    {
      PNode& n = out.nodes.back();
      n.start = at;
      n.ordinal = tag;
    }
    std::uint64_t cur = at + 1;
    std::size_t table_entries =
        ld.offset_mode == OffsetMode::ShortcutOffsets && ctor.fields.size() >= 2
            ? ctor.fields.size() - 1
            : 0;
    std::uint64_t table_at = cur;
    need(cur, 8 * table_entries);
    cur = table_at + 8 * table_entries;
    std::uint64_t payload_start = cur;

    std::vector<std::uint64_t> fstart, fend;
    std::vector<int> child;
    for (std::size_t k = 0; k < ctor.fields.size(); ++k) {
      fstart.push_back(cur);
      if (ctor.fields[k].is_scalar()) {
        cur = scalar_end(ctor.fields[k], cur);
        child.push_back(-1);
      } else {
        auto [ci, end] = parse(ctor.fields[k].tycon, cur);
        child.push_back(ci);
        cur = end;
      }
      fend.push_back(cur);
      if (table_entries && k >= 1) {
        std::uint64_t stored = get_u64(b.bytes, table_at + 8 * (k - 1));
        if (stored != fstart.back() - payload_start)
          throw PackedError("offset table mismatch in " + ctor.name +
                            " at byte " + std::to_string(at));
      }
    }
    PNode& n = out.nodes[static_cast<std::size_t>(idx)];
    n.payload_start = payload_start;
    n.end = cur;
    n.tycon = &ld.datatypes.find(tycon)->first;
    n.ctor = &ctor;
    n.field_start = std::move(fstart);
    n.field_end = std::move(fend);
    n.child = std::move(child);
    return {idx, cur};
  }
};

}  // namespace

ParsedBuffer parse_buffer(const PackedBuffer& b, const LayoutDescriptor& ld,
                          const std::string& tycon) {
  ParsedBuffer out;
  out.buf = &b;
  out.ld = &ld;
  Parser pr{b, ld, out};
  auto [root, end] = pr.parse(tycon, b.root);
  out.root_node = root;
  if (b.root == 0 && end != b.bytes.size())
    throw PackedError("trailing bytes after value: " + std::to_string(end) +
                      " of " + std::to_string(b.bytes.size()));
  return out;
}

namespace {

ValuePtr rebuild(const ParsedBuffer& pb, int node) {
  const PNode& n = pb.nodes[static_cast<std::size_t>(node)];
  std::vector<ValuePtr> fields;
  fields.reserve(n.ctor->fields.size());
  for (std::size_t k = 0; k < n.ctor->fields.size(); ++k) {
    const Type& t = n.ctor->fields[k];
    std::uint64_t at = n.field_start[k];
    if (t.is_packed()) {
      fields.push_back(rebuild(pb, n.child[k]));
    } else {
      switch (t.prim) {
        case Prim::Int:
          fields.push_back(Value::of_int(
              static_cast<std::int64_t>(get_u64(pb.buf->bytes, at))));
          break;
        case Prim::Bool:
          fields.push_back(
              Value::of_bool(pb.buf->bytes[static_cast<std::size_t>(at)] != 0));
          break;
        default: {
          std::uint32_t len = get_u32(pb.buf->bytes, at);
          std::string s(reinterpret_cast<const char*>(
                            pb.buf->bytes.data() + at + 4),
                        len);
          fields.push_back(Value::of_str(std::move(s)));
          break;
        }
      }
    }
  }
  return Value::of_data(*n.tycon, n.ctor->name, n.ordinal, std::move(fields));
}

}  // namespace

ValuePtr deserialize(const PackedBuffer& b, const LayoutDescriptor& ld,
                     const std::string& tycon) {
  ParsedBuffer pb = parse_buffer(b, ld, tycon);
  return rebuild(pb, pb.root_node);
}

void write_buffer_file(const std::string& path, const PackedBuffer& b,
                       OffsetMode mode) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw PackedError("cannot open '" + path + "' for writing");
  os.write("LPK1", 4);
  char m = static_cast<char>(mode);
  os.write(&m, 1);
  std::uint8_t rootb[8];
  for (int k = 0; k < 8; ++k)
    rootb[k] = static_cast<std::uint8_t>((b.root >> (8 * k)) & 0xff);
  os.write(reinterpret_cast<const char*>(rootb), 8);
  os.write(reinterpret_cast<const char*>(b.bytes.data()),
           static_cast<std::streamsize>(b.bytes.size()));
  if (!os) throw PackedError("write failed for '" + path + "'");
}

std::pair<PackedBuffer, OffsetMode> read_buffer_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw PackedError("cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "LPK1", 4) != 0)
    throw PackedError("bad magic in '" + path + "'");
  char m = 0;
  is.read(&m, 1);
  std::uint8_t rootb[8];
  is.read(reinterpret_cast<char*>(rootb), 8);
  if (!is) throw PackedError("truncated header in '" + path + "'");
  PackedBuffer b;
  b.root = 0;
  for (int k = 7; k >= 0; --k) b.root = (b.root << 8) | rootb[k];
  b.bytes.assign(std::istreambuf_iterator<char>(is),
                 std::istreambuf_iterator<char>());
  return {std::move(b), static_cast<OffsetMode>(m)};
}

}  // namespace layopt
