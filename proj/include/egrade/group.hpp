// Matrix groups over F2 of degree <= 8, packed one column per byte, with a
// breadth-first closure over a generating set.

#ifndef EGRADE_GROUP_HPP_
#define EGRADE_GROUP_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "f2linalg.hpp"

namespace egrade {

using PackedMat = std::uint64_t;

inline PackedMat pack(const F2LinearMap& m) {
  if (m.in_dim() > 8 || m.out_dim() > 8)
    fail("pack: matrices larger than 8x8 are not supported");
  PackedMat p = 0;
  for (int i = 0; i < m.in_dim(); ++i)
    p |= static_cast<PackedMat>(m.column(i).bits) << (8 * i);
  return p;
}

inline F2LinearMap unpack(PackedMat p, int n) {
  std::vector<std::uint32_t> cols;
  for (int i = 0; i < n; ++i)
    cols.push_back(static_cast<std::uint32_t>((p >> (8 * i)) & 0xFF));
  return F2LinearMap::from_bits(n, n, cols);
}

inline std::uint32_t packed_apply(PackedMat p, std::uint32_t v) {
  std::uint32_t r = 0;
  while (v) {
    r ^= static_cast<std::uint32_t>((p >> (8 * std::countr_zero(v))) & 0xFF);
    v &= v - 1;
  }
  return r;
}

inline PackedMat packed_identity(int n) {
  PackedMat p = 0;
  for (int i = 0; i < n; ++i)
    p |= PackedMat(1) << (8 * i + i);
  return p;
}

// a after b
inline PackedMat packed_compose(PackedMat a, PackedMat b, int n) {
  PackedMat r = 0;
  for (int i = 0; i < n; ++i)
    r |= static_cast<PackedMat>(packed_apply(a, static_cast<std::uint32_t>((b >> (8 * i)) & 0xFF))) << (8 * i);
  return r;
}

// Left multiplication by a fixed matrix through a byte lookup table.
class PackedLeftMul {
public:
  PackedLeftMul(PackedMat g, int n) : n_(n) {
    for (std::uint32_t v = 0; v < 256; ++v)
      table_[v] = static_cast<std::uint8_t>(packed_apply(g, v));
  }
  PackedMat operator()(PackedMat m) const {
    PackedMat r = 0;
    for (int i = 0; i < n_; ++i)
      r |= static_cast<PackedMat>(table_[(m >> (8 * i)) & 0xFF]) << (8 * i);
    return r;
  }

private:
  int n_;
  std::array<std::uint8_t, 256> table_{};
};

// Open-addressing set of nonzero 64-bit keys.
class PackedSet {
public:
  explicit PackedSet(std::size_t expected = 1024) {
    std::size_t cap = 16;
    while (cap < expected * 2)
      cap <<= 1;
    slots_.assign(cap, 0);
  }
  bool insert(PackedMat k) {
    if ((size_ + 1) * 10 > slots_.size() * 7)
      grow();
    return insert_raw(k);
  }
  bool contains(PackedMat k) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(k) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == k)
        return true;
      if (slots_[i] == 0)
        return false;
    }
  }
  std::size_t size() const { return size_; }

private:
  static std::size_t hash(PackedMat k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }
  bool insert_raw(PackedMat k) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(k) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == k)
        return false;
      if (slots_[i] == 0) {
        slots_[i] = k;
        ++size_;
        return true;
      }
    }
  }
  void grow() {
    std::vector<PackedMat> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, 0);
    size_ = 0;
    for (auto k : old)
      if (k)
        insert_raw(k);
  }

  std::vector<PackedMat> slots_;
  std::size_t size_ = 0;
};

struct GroupClosure {
  std::vector<PackedMat> elements; // BFS order, identity first
  PackedSet set;
  int degree = 0;
};

// The group generated by `gens` (invertible n x n, n <= 8). Throws once more
// than `limit` elements are found.
inline GroupClosure group_closure(const std::vector<F2LinearMap>& gens, int n,
                                  std::size_t limit = 20'000'000, std::size_t expected = 1024) {
  if (n < 1 || n > 8)
    fail("group_closure: degree must be in 1..8");
  std::vector<PackedLeftMul> ops;
  for (const auto& g : gens) {
    if (g.in_dim() != n || g.out_dim() != n || !g.is_invertible())
      fail("group_closure: generator is not an invertible n x n matrix");
    ops.emplace_back(pack(g), n);
  }
  GroupClosure c{{}, PackedSet(expected), n};
  const PackedMat id = packed_identity(n);
  c.elements.push_back(id);
  c.set.insert(id);
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    const PackedMat x = c.elements[i];
    for (const auto& op : ops) {
      const PackedMat y = op(x);
      if (c.set.insert(y)) {
        c.elements.push_back(y);
        if (c.elements.size() > limit)
          fail("group_closure: group exceeds the enumeration limit");
      }
    }
  }
  return c;
}

} // namespace egrade

#endif // EGRADE_GROUP_HPP_
