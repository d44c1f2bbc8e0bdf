/*
 * Copyright 2026 swarm-recovery contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SWARM_DES_STATE_SET_HPP
#define SWARM_DES_STATE_SET_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace swarm::des {

// Bit set over a fixed universe of indices (automaton states or events).
// Component automata here are tiny, but the grid map is configurable, so
// the universe is not capped at a word.
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static StateSet of(std::size_t universe, std::initializer_list<std::size_t> bits) {
    StateSet s(universe);
    for (std::size_t b : bits) s.set(b);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  bool intersects(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool operator==(const StateSet&) const = default;

  // Visits members in ascending index order (keeps every serialization and
  // traversal in the toolkit deterministic).
  template <typename F>
  void for_each(F f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
        f(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    h ^= universe_;
    h *= 1099511628211ull;
    return static_cast<std::size_t>(h);
  }

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace swarm::des

#endif
