#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>

namespace netbound {

inline constexpr int kMaxSetElements = 64;

// Fixed-capacity bitset over dense indices 0..63. The tag keeps node sets
// and demand-index sets from mixing.
template <class Tag>
class SmallSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr SmallSet() = default;
  SmallSet(std::initializer_list<int> members) {
    for (int m : members) insert(m);
  }
  static constexpr SmallSet from_mask(std::uint64_t mask) {
    SmallSet s;
    s.bits_ = mask;
    return s;
  }
  // {0, ..., n-1}
  static SmallSet first_n(int n) {
    check(n == 0 ? 0 : n - 1);
    return from_mask(n == kMaxSetElements ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t mask() const { return bits_; }
  bool contains(int i) const {
    return i >= 0 && i < kMaxSetElements && ((bits_ >> i) & 1U) != 0;
  }
  void insert(int i) {
    check(i);
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(int i) {
    check(i);
    bits_ &= ~(std::uint64_t{1} << i);
  }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  // Smallest member; undefined on the empty set.
  int front() const { return std::countr_zero(bits_); }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  SmallSet& operator|=(SmallSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  SmallSet& operator&=(SmallSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  SmallSet& operator-=(SmallSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }
  friend SmallSet operator|(SmallSet a, SmallSet b) { return a |= b; }
  friend SmallSet operator&(SmallSet a, SmallSet b) { return a &= b; }
  friend SmallSet operator-(SmallSet a, SmallSet b) { return a -= b; }
  friend bool operator==(SmallSet, SmallSet) = default;
  bool is_subset_of(SmallSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool intersects(SmallSet o) const { return (bits_ & o.bits_) != 0; }

 private:
  static void check(int i) {
    if (i < 0 || i >= kMaxSetElements) throw std::out_of_range("SmallSet index out of range");
  }
  std::uint64_t bits_ = 0;
};

using NodeSet = SmallSet<struct NodeSetTag>;
using IndexSet = SmallSet<struct IndexSetTag>;

}  // namespace netbound
