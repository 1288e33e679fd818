#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "layopt/runtime/boxed_interp.hpp"
#include "layopt/runtime/packed.hpp"

namespace layopt {

// Byte-traffic counters for one evaluation over packed inputs.
//
// The model: each input buffer is consumed through one read cursor.  A read
// at the cursor is sequential.  A read past the cursor first has to locate
// its target; jumping over bytes the cursor has not visited yet means
// scanning them (skip_bytes), or a single offset dereference when the
// buffer carries shortcut offsets.  Positions at or below the high-water
// mark are known (a finished sub-traversal hands its end position to the
// continuation), so forward jumps into visited territory are free.  Reads
// behind the cursor count their distance as backtracking.
struct TraversalMetrics {
  std::uint64_t tags_read = 0;
  std::uint64_t payload_bytes_read = 0;
  std::uint64_t skip_bytes = 0;
  std::uint64_t skip_events = 0;
  std::uint64_t backtrack_events = 0;
  std::uint64_t backtrack_bytes = 0;
  std::uint64_t offset_derefs = 0;
  std::uint64_t max_cursor_excursion = 0;

  std::uint64_t composite(std::uint64_t deref_cost = 64) const {
    return skip_bytes + backtrack_bytes + deref_cost * offset_derefs;
  }

  TraversalMetrics& operator+=(const TraversalMetrics& o);
};

std::string metrics_json(const TraversalMetrics& m,
                         std::uint64_t deref_cost = 64);

// Entry arguments: scalars as boxed values, packed values as buffers.
using PackedInput = std::variant<ValuePtr, const PackedBuffer*>;

struct PackedRunResult {
  ValuePtr result;
  TraversalMetrics metrics;
};

// Evaluates `entry` with packed arguments read directly from their buffers,
// counting cursor traffic.  The result always equals interp_boxed on the
// same (boxed) inputs.
PackedRunResult interp_packed(const Program& p, const LayoutDescriptor& ld,
                              const std::string& entry,
                              const std::vector<PackedInput>& args,
                              const InterpLimits& limits = {});

}  // namespace layopt
