// Copyright 2026 The pprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPRLAB_SPARSE_MAP_HPP_
#define PPRLAB_SPARSE_MAP_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "pprlab/graph.hpp"

namespace pprlab {

/// Node-keyed map with an implicit default of T{}. Starts as an
/// open-addressing table (linear probing, power-of-two capacity) and
/// switches to a dense array of length n once it holds more than n/4 keys,
/// so small supports never touch O(n) memory.
///
/// Keys are never erased; storing T{} keeps the key in the support.
template <typename T>
class SparseNodeMap {
 public:
  explicit SparseNodeMap(std::size_t universe = 0) : universe_(universe) { rehash(16); }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return size_; }
  bool is_dense() const { return dense_; }

  T get(NodeId key) const {
    if (dense_) return dense_values_[key];
    const std::size_t slot = find(key);
    return keys_[slot] == key ? values_[slot] : T{};
  }

  /// Reference to the value at `key`, inserting T{} if absent.
  T& at(NodeId key) {
    if (dense_) {
      if (!present_[key]) {
        present_[key] = 1;
        touched_.push_back(key);
        ++size_;
      }
      return dense_values_[key];
    }
    std::size_t slot = find(key);
    if (keys_[slot] != key) {
      if ((size_ + 1) * 4 > universe_ && universe_ >= 64) {
        densify();
        return at(key);
      }
      if ((size_ + 1) * 2 > keys_.size()) {
        rehash(keys_.size() * 2);
        slot = find(key);
      }
      keys_[slot] = key;
      values_[slot] = T{};
      touched_.push_back(key);
      ++size_;
    }
    return values_[slot];
  }

  /// Keys in insertion order.
  const std::vector<NodeId>& keys() const { return touched_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (NodeId key : touched_) fn(key, get(key));
  }

 private:
  static constexpr NodeId kEmpty = std::numeric_limits<NodeId>::max();

  std::size_t find(NodeId key) const {
    const std::size_t mask = keys_.size() - 1;
    std::size_t slot = (static_cast<std::size_t>(key) * 0x9E3779B97F4A7C15ULL >> 20) & mask;
    while (keys_[slot] != kEmpty && keys_[slot] != key) slot = (slot + 1) & mask;
    return slot;
  }

  void rehash(std::size_t capacity) {
    std::vector<NodeId> old_keys = std::move(keys_);
    std::vector<T> old_values = std::move(values_);
    keys_.assign(capacity, kEmpty);
    values_.assign(capacity, T{});
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] == kEmpty) continue;
      const std::size_t slot = find(old_keys[i]);
      keys_[slot] = old_keys[i];
      values_[slot] = old_values[i];
    }
  }

  void densify() {
    dense_values_.assign(universe_, T{});
    present_.assign(universe_, 0);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] == kEmpty) continue;
      dense_values_[keys_[i]] = values_[i];
      present_[keys_[i]] = 1;
    }
    keys_.clear();
    keys_.shrink_to_fit();
    values_.clear();
    values_.shrink_to_fit();
    dense_ = true;
  }

  std::size_t universe_;
  std::size_t size_ = 0;
  bool dense_ = false;
  std::vector<NodeId> keys_;
  std::vector<T> values_;
  std::vector<T> dense_values_;
  std::vector<char> present_;
  std::vector<NodeId> touched_;
};

}  // namespace pprlab

#endif  // PPRLAB_SPARSE_MAP_HPP_
