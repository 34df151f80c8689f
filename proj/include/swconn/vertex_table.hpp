#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "swconn/core.hpp"

namespace swconn {

using Slot = std::uint32_t;
inline constexpr Slot kNoSlot = std::numeric_limits<Slot>::max();

/// Maps sparse external vertex ids onto dense slots. Slots released by
/// compaction are recycled.
class VertexTable {
 public:
  Slot find(VertexId v) const {
    auto it = slots_.find(v);
    return it == slots_.end() ? kNoSlot : it->second;
  }

  /// Returns {slot, true} when v was newly registered.
  std::pair<Slot, bool> intern(VertexId v) {
    auto [it, inserted] = slots_.try_emplace(v, kNoSlot);
    if (!inserted) return {it->second, false};
    Slot s;
    if (!free_.empty()) {
      s = free_.back();
      free_.pop_back();
      ids_[s] = v;
    } else {
      s = static_cast<Slot>(ids_.size());
      ids_.push_back(v);
    }
    it->second = s;
    return {s, true};
  }

  void release(Slot s) {
    slots_.erase(ids_[s]);
    free_.push_back(s);
  }

  VertexId id(Slot s) const { return ids_[s]; }
  std::size_t size() const { return slots_.size(); }
  /// Upper bound on live slot values; slot arrays are sized to this.
  std::size_t capacity() const { return ids_.size(); }
  bool live(Slot s) const {
    auto it = slots_.find(ids_[s]);
    return it != slots_.end() && it->second == s;
  }

  /// Approximate bytes held: one hash entry and one reverse id per vertex.
  std::size_t logical_bytes() const {
    constexpr std::size_t kHashEntry = sizeof(VertexId) + sizeof(Slot) + sizeof(void*) + sizeof(std::size_t);
    return slots_.size() * kHashEntry + slots_.bucket_count() * sizeof(void*) +
           ids_.size() * sizeof(VertexId);
  }

 private:
  std::unordered_map<VertexId, Slot> slots_;
  std::vector<VertexId> ids_;
  std::vector<Slot> free_;
};

}  // namespace swconn
