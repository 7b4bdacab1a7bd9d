#include "defunq/env_store.hpp"

#include <stdexcept>

namespace defunq {

namespace {

void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

size_t EnvStore::intern_value(const Value& v, size_t& added) {
  size_t h = value_hash(v);
  auto& bucket = pool_buckets_[h];
  for (size_t idx : bucket)
    if (values_equal(pool_[idx], v)) return idx;
  pool_.push_back(v);
  pooled_items_ += v.size();
  added += v.size();
  bucket.push_back(pool_.size() - 1);
  return pool_.size() - 1;
}

EnvStore::InternResult EnvStore::intern(const std::vector<Value>& tuple) {
  InternResult res;
  std::vector<size_t> slots;
  slots.reserve(tuple.size());
  for (const auto& v : tuple) slots.push_back(intern_value(v, res.items_added));

  size_t th = slots.size();
  for (size_t s : slots) hash_combine(th, s);
  auto& keys = tuple_buckets_[th];
  for (EnvKey k : keys) {
    if (tuples_[static_cast<size_t>(k - 1)] == slots) {
      res.key = k;
      return res;
    }
  }
  tuples_.push_back(std::move(slots));
  res.key = static_cast<EnvKey>(tuples_.size());
  keys.push_back(res.key);
  return res;
}

std::vector<Value> EnvStore::lookup(EnvKey key) const {
  if (key < 1 || static_cast<size_t>(key) > tuples_.size())
    throw std::out_of_range("EnvStore: unknown key " + std::to_string(key));
  std::vector<Value> out;
  for (size_t idx : tuples_[static_cast<size_t>(key - 1)]) out.push_back(pool_[idx]);
  return out;
}

}  // namespace defunq
