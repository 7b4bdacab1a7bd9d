#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "defunq/value.hpp"

namespace defunq {

using EnvKey = int64_t;

/// Associative store of environment tuples, keyed by γ, with structural
/// dedup. Slot values are interned into a shared pool so that tuples which
/// differ in one slot still share the storage of the others (upsert
/// semantics at both levels). Confined to a single evaluation.
class EnvStore {
 public:
  struct InternResult {
    EnvKey key = 0;
    size_t items_added = 0;  // items newly added to the value pool
  };

  /// Returns the existing key when a structurally equal tuple is present,
  /// otherwise appends the tuple under a fresh γ.
  InternResult intern(const std::vector<Value>& tuple);

  /// Flattened item count of all pooled values (each shared value once).
  size_t total_stored_items() const { return pooled_items_; }

  size_t entry_count() const { return tuples_.size(); }

  std::vector<Value> lookup(EnvKey key) const;

 private:
  size_t intern_value(const Value& v, size_t& added);

  std::vector<Value> pool_;
  std::unordered_map<size_t, std::vector<size_t>> pool_buckets_;  // value hash -> pool indices
  size_t pooled_items_ = 0;

  std::vector<std::vector<size_t>> tuples_;                        // γ-1 -> slot pool indices
  std::unordered_map<size_t, std::vector<EnvKey>> tuple_buckets_;  // tuple hash -> keys
};

}  // namespace defunq
