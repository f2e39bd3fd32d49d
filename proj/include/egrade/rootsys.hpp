// Root systems of type E6, E7, E8 in simple-root coordinates.
//
// Nodes follow Bourbaki: 1-3-4-5-6-7-8 is the long chain and 2 hangs off 4.
// Roots are ordered with the positive ones first, sorted by height and then
// lexicographically, followed by their negatives in the same order.

#ifndef EGRADE_ROOTSYS_HPP_
#define EGRADE_ROOTSYS_HPP_

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quadform.hpp"

namespace egrade {

enum class Kind { E6, E7, E8 };

inline int rank_of(Kind k) {
  switch (k) {
  case Kind::E6: return 6;
  case Kind::E7: return 7;
  case Kind::E8: return 8;
  }
  return 0;
}

inline std::string to_string(Kind k) { return "E" + std::to_string(rank_of(k)); }

inline Kind parse_kind(std::string_view s) {
  if (s == "E6") return Kind::E6;
  if (s == "E7") return Kind::E7;
  if (s == "E8") return Kind::E8;
  fail("unknown kind '" + std::string(s) + "' (expected E6, E7 or E8)");
}

using RootVec = std::array<int, 8>;

class RootSystem {
public:
  static RootSystem build(Kind kind) {
    RootSystem rs;
    rs.kind_ = kind;
    rs.rank_ = rank_of(kind);
    const int n = rs.rank_;
    static constexpr int edges[7][2] = {{0, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    rs.cartan_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
      rs.cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
    for (const auto& e : edges)
      if (e[0] < n && e[1] < n) {
        rs.cartan_[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = -1;
        rs.cartan_[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = -1;
      }

    std::set<RootVec> seen;
    std::vector<RootVec> work;
    for (int i = 0; i < n; ++i) {
      RootVec r{};
      r[static_cast<std::size_t>(i)] = 1;
      seen.insert(r);
      work.push_back(r);
    }
    while (!work.empty()) {
      RootVec r = work.back();
      work.pop_back();
      for (int i = 0; i < n; ++i) {
        RootVec s = r;
        const int c = rs.pair_simple(r, i);
        s[static_cast<std::size_t>(i)] -= c;
        if (seen.insert(s).second)
          work.push_back(s);
      }
    }
    std::vector<RootVec> pos;
    for (const auto& r : seen)
      if (is_positive(r, n))
        pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const RootVec& a, const RootVec& b) {
      const int ha = height(a), hb = height(b);
      return ha != hb ? ha < hb : a < b;
    });
    rs.num_positive_ = static_cast<int>(pos.size());
    rs.roots_ = pos;
    for (const auto& r : pos)
      rs.roots_.push_back(negate(r));
    if (rs.roots_.size() != seen.size())
      fail("RootSystem::build: root set is not symmetric (internal error)");
    for (std::size_t i = 0; i < rs.roots_.size(); ++i)
      rs.index_[rs.roots_[i]] = static_cast<int>(i);
    return rs;
  }

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<RootVec>& roots() const { return roots_; }
  const RootVec& root(int i) const { return roots_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  std::vector<RootVec> positive_roots() const {
    return {roots_.begin(), roots_.begin() + num_positive_};
  }
  bool is_positive_index(int i) const { return i < num_positive_; }
  int negative_index(int i) const {
    return i < num_positive_ ? i + num_positive_ : i - num_positive_;
  }

  // Index of r in roots(), or -1.
  int index_of(const RootVec& r) const {
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
  }
  bool is_root(const RootVec& r) const { return index_of(r) >= 0; }

  int pairing(const RootVec& r, const RootVec& s) const {
    int v = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        v += r[static_cast<std::size_t>(i)] * cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             s[static_cast<std::size_t>(j)];
    return v;
  }
  int pairing(const std::vector<int>& r, const std::vector<int>& s) const {
    if (static_cast<int>(r.size()) != rank_ || static_cast<int>(s.size()) != rank_)
      fail("pairing: vector length must equal the rank");
    RootVec a{}, b{};
    std::copy(r.begin(), r.end(), a.begin());
    std::copy(s.begin(), s.end(), b.begin());
    return pairing(a, b);
  }
  // (r | alpha_i)
  int pair_simple(const RootVec& r, int i) const {
    int v = 0;
    for (int j = 0; j < rank_; ++j)
      v += r[static_cast<std::size_t>(j)] * cartan_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return v;
  }

  RootVec simple_reflection(const RootVec& r, int i) const {
    RootVec s = r;
    s[static_cast<std::size_t>(i)] -= pair_simple(r, i);
    return s;
  }

  RootVec highest_root() const { return roots_[static_cast<std::size_t>(num_positive_ - 1)]; }

  static int height(const RootVec& r) {
    int h = 0;
    for (int c : r)
      h += c;
    return h;
  }
  static RootVec negate(RootVec r) {
    for (int& c : r)
      c = -c;
    return r;
  }
  static RootVec add(RootVec a, const RootVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] += b[i];
    return a;
  }

  std::string format(const RootVec& r) const {
    std::string s = "[";
    for (int i = 0; i < rank_; ++i) {
      if (i)
        s += ",";
      s += std::to_string(r[static_cast<std::size_t>(i)]);
    }
    return s + "]";
  }

private:
  static bool is_positive(const RootVec& r, int n) {
    for (int i = 0; i < n; ++i)
      if (r[static_cast<std::size_t>(i)] < 0)
        return false;
    return true;
  }

  Kind kind_ = Kind::E8;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<RootVec> roots_;
  int num_positive_ = 0;
  std::map<RootVec, int> index_;
};

// R/2R with q(r) = (r|r)/2 mod 2.
class Mod2Reduction {
public:
  explicit Mod2Reduction(RootSystem rs) : system_(std::move(rs)) {
    const int n = system_.rank();
    std::vector<std::pair<int, int>> c;
    for (int i = 0; i < n; ++i) {
      const auto& row = system_.cartan_matrix()[static_cast<std::size_t>(i)];
      if ((row[static_cast<std::size_t>(i)] / 2) & 1)
        c.emplace_back(i, i);
      for (int j = i + 1; j < n; ++j)
        if (row[static_cast<std::size_t>(j)] & 1)
          c.emplace_back(i, j);
    }
    form_ = QuadraticSpace::from_coeffs(n, c);
    for (int i = 0; i < system_.size(); ++i)
      class_bits_.push_back(reduce_bits(system_.root(i)));
  }

  const RootSystem& system() const { return system_; }
  const QuadraticSpace& form() const { return form_; }
  int rank() const { return system_.rank(); }

  std::uint32_t reduce_bits(const RootVec& r) const {
    std::uint32_t b = 0;
    for (int i = 0; i < system_.rank(); ++i)
      if (r[static_cast<std::size_t>(i)] & 1)
        b |= std::uint32_t(1) << i;
    return b;
  }
  F2Vector reduce(const RootVec& r) const { return F2Vector(reduce_bits(r), rank()); }

  // Class of the root with the given index.
  std::uint32_t root_class(int i) const { return class_bits_[static_cast<std::size_t>(i)]; }

private:
  RootSystem system_;
  QuadraticSpace form_;
  std::vector<std::uint32_t> class_bits_;
};

inline Mod2Reduction mod2_form(const RootSystem& rs) { return Mod2Reduction(rs); }
inline Mod2Reduction mod2_form(Kind k) { return Mod2Reduction(RootSystem::build(k)); }

// Class -> (index of the positive root, index of its negative).
inline std::map<std::uint32_t, std::pair<int, int>> root_classes(const Mod2Reduction& m) {
  std::map<std::uint32_t, std::pair<int, int>> out;
  const auto& rs = m.system();
  for (int i = 0; i < rs.num_positive(); ++i) {
    const std::uint32_t c = m.root_class(i);
    if (m.form().value(c) != 1)
      fail("root_classes: root class is isotropic (internal error)");
    if (!out.emplace(c, std::make_pair(i, rs.negative_index(i))).second)
      fail("root_classes: two positive roots share a class (internal error)");
  }
  return out;
}

} // namespace egrade

#endif // EGRADE_ROOTSYS_HPP_
