#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "layopt/lang/ast.hpp"
#include "layopt/runtime/value.hpp"

namespace layopt {

enum class OffsetMode : std::uint8_t { None = 0, ShortcutOffsets = 1 };

struct PackedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field order per constructor as the (possibly rewritten) program declares
// it, plus the offset-table mode.
struct LayoutDescriptor {
  OffsetMode offset_mode = OffsetMode::None;

  struct CtorLayout {
    std::string name;
    std::vector<Type> fields;
  };
  std::map<std::string, std::vector<CtorLayout>> datatypes;

  static LayoutDescriptor from_program(const Program& p,
                                       OffsetMode mode = OffsetMode::None);
  const std::vector<CtorLayout>& ctors(const std::string& tycon) const;
};

// Dense serialization: one tag byte per constructor followed by its fields
// in layout order.  In ShortcutOffsets mode a constructor with n >= 2 fields
// carries (n-1) little-endian 8-byte offsets right after the tag; offset k
// is the distance from the end of the table to the start of field k+1.
struct PackedBuffer {
  std::vector<std::uint8_t> bytes;
  std::uint64_t root = 0;
};

PackedBuffer serialize(const ValuePtr& v, const LayoutDescriptor& ld);
ValuePtr deserialize(const PackedBuffer& b, const LayoutDescriptor& ld,
                     const std::string& tycon);

// File dump: magic "LPK1", 1-byte offset mode, 8-byte LE root index, bytes.
void write_buffer_file(const std::string& path, const PackedBuffer& b,
                       OffsetMode mode);
std::pair<PackedBuffer, OffsetMode> read_buffer_file(const std::string& path);

// Full-scan parse of a buffer into per-node extents; this is the
// well-formedness validation (bad tags, truncation and offset-table
// mismatches all throw PackedError).
struct PNode {
  std::uint64_t start = 0;          // tag byte
  std::uint64_t payload_start = 0;  // first field (after tag and table)
  std::uint64_t end = 0;
  const std::string* tycon = nullptr;
  const LayoutDescriptor::CtorLayout* ctor = nullptr;
  int ordinal = 0;
  std::vector<std::uint64_t> field_start;
  std::vector<std::uint64_t> field_end;
  std::vector<int> child;  // node index for packed fields, -1 otherwise
};

struct ParsedBuffer {
  const PackedBuffer* buf = nullptr;
  const LayoutDescriptor* ld = nullptr;
  std::vector<PNode> nodes;
  int root_node = 0;
};

ParsedBuffer parse_buffer(const PackedBuffer& b, const LayoutDescriptor& ld,
                          const std::string& tycon);

}  // namespace layopt
