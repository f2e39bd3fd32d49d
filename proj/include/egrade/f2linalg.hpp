// Linear algebra over the field with two elements.
//
// Vectors are single machine words (ambient dimension at most 32). Subspaces
// are kept in a canonical reduced row-echelon form, so equality of subspaces
// is equality of their stored bases. Maps act on column vectors and are
// stored by the images of the standard basis vectors.

#ifndef EGRADE_F2LINALG_HPP_
#define EGRADE_F2LINALG_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace egrade {

inline constexpr int kMaxDim = 32;

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

inline std::uint32_t low_mask(int n) {
  return n >= 32 ? 0xFFFFFFFFu : ((std::uint32_t(1) << n) - 1u);
}

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

// F2VECTOR

struct F2Vector {
  std::uint32_t bits = 0;
  int dim = 0;

  F2Vector() = default;
  F2Vector(std::uint32_t bits_, int dim_) : bits(bits_), dim(dim_) {
    if (dim < 0 || dim > kMaxDim)
      fail("F2Vector: dimension out of range: " + std::to_string(dim));
    if (bits & ~low_mask(dim))
      fail("F2Vector: bits set beyond dimension " + std::to_string(dim));
  }

  static F2Vector zero(int dim) { return F2Vector(0, dim); }
  static F2Vector unit(int i, int dim) {
    if (i < 0 || i >= dim)
      fail("F2Vector::unit: index out of range");
    return F2Vector(std::uint32_t(1) << i, dim);
  }

  bool get(int i) const { return (bits >> i) & 1u; }
  bool is_zero() const { return bits == 0; }
  int weight() const { return std::popcount(bits); }

  F2Vector& operator+=(const F2Vector& o) {
    check_same(o);
    bits ^= o.bits;
    return *this;
  }
  friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }

  // Standard dot product.
  int dot(const F2Vector& o) const {
    check_same(o);
    return parity(bits & o.bits);
  }

  bool operator==(const F2Vector&) const = default;
  auto operator<=>(const F2Vector& o) const {
    if (auto c = dim <=> o.dim; c != 0)
      return c;
    return bits <=> o.bits;
  }

  // Little-endian bit string: character i is coordinate i ("1101" = e1+e2+e4).
  std::string to_string() const {
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int i = 0; i < dim; ++i)
      if (get(i))
        s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  static F2Vector from_string(std::string_view s) {
    if (s.size() > static_cast<std::size_t>(kMaxDim))
      fail("F2Vector: bit string longer than 32");
    std::uint32_t b = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        b |= std::uint32_t(1) << i;
      else if (s[i] != '0')
        fail("F2Vector: bad character in bit string '" + std::string(s) + "'");
    }
    return F2Vector(b, static_cast<int>(s.size()));
  }

  void check_same(const F2Vector& o) const {
    if (dim != o.dim)
      fail("F2Vector: dimension mismatch (" + std::to_string(dim) + " vs " +
           std::to_string(o.dim) + ")");
  }
};

// F2SUBSPACE

// RREF convention: the pivot of a row is its most significant set bit, rows
// are sorted by increasing pivot, and every pivot column is set in exactly
// one row. Reducing a vector against the basis clears the pivot positions and
// yields the numerically least element of its coset.
class F2Subspace {
public:
  F2Subspace() = default;
  explicit F2Subspace(int ambient_dim) : ambient_dim_(ambient_dim) {
    if (ambient_dim < 0 || ambient_dim > kMaxDim)
      fail("F2Subspace: ambient dimension out of range");
  }

  static F2Subspace whole(int n) {
    std::vector<F2Vector> v;
    for (int i = 0; i < n; ++i)
      v.push_back(F2Vector::unit(i, n));
    return span(v, n);
  }

  static F2Subspace span(const std::vector<F2Vector>& vectors, int ambient_dim) {
    F2Subspace s(ambient_dim);
    for (const auto& v : vectors) {
      if (v.dim != ambient_dim)
        fail("rref: vector of dimension " + std::to_string(v.dim) +
             " in ambient dimension " + std::to_string(ambient_dim));
      s.insert_raw(v.bits);
    }
    s.canonicalize();
    return s;
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  std::uint64_t size() const { return std::uint64_t(1) << dim(); }

  std::vector<F2Vector> basis() const {
    std::vector<F2Vector> out;
    out.reserve(rows_.size());
    for (auto r : rows_)
      out.emplace_back(r, ambient_dim_);
    return out;
  }
  const std::vector<std::uint32_t>& rows() const { return rows_; }

  // Pivot positions in increasing order.
  std::vector<int> pivots() const {
    std::vector<int> p;
    for (auto r : rows_)
      p.push_back(31 - std::countl_zero(r));
    std::sort(p.begin(), p.end());
    return p;
  }
  std::uint32_t pivot_mask() const {
    std::uint32_t m = 0;
    for (auto r : rows_)
      m |= std::uint32_t(1) << (31 - std::countl_zero(r));
    return m;
  }

  std::uint32_t reduce_bits(std::uint32_t v) const {
    for (auto r : rows_)
      if ((v >> (31 - std::countl_zero(r))) & 1u)
        v ^= r;
    return v;
  }
  F2Vector reduce(const F2Vector& v) const {
    check_dim(v);
    return F2Vector(reduce_bits(v.bits), ambient_dim_);
  }

  bool contains(const F2Vector& v) const {
    check_dim(v);
    return reduce_bits(v.bits) == 0;
  }
  bool contains(const F2Subspace& o) const {
    if (o.ambient_dim_ != ambient_dim_)
      fail("F2Subspace: ambient dimension mismatch");
    for (auto r : o.rows_)
      if (reduce_bits(r) != 0)
        return false;
    return true;
  }

  // The element with coefficient bits `c` over the stored basis (bit i of c
  // selects basis()[i]).
  std::uint32_t element_bits(std::uint64_t c) const {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if ((c >> i) & 1u)
        v ^= rows_[i];
    return v;
  }
  F2Vector element(std::uint64_t c) const {
    return F2Vector(element_bits(c), ambient_dim_);
  }

  template <typename Fn> void for_each_element(Fn&& fn) const {
    // Gray-code walk over the span.
    std::uint32_t v = 0;
    fn(F2Vector(v, ambient_dim_));
    const std::uint64_t n = size();
    for (std::uint64_t i = 1; i < n; ++i) {
      v ^= rows_[static_cast<std::size_t>(std::countr_zero(i))];
      fn(F2Vector(v, ambient_dim_));
    }
  }
  std::vector<F2Vector> elements() const {
    std::vector<F2Vector> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each_element([&](const F2Vector& v) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
  }

  F2Subspace operator+(const F2Subspace& o) const {
    if (o.ambient_dim_ != ambient_dim_)
      fail("F2Subspace: ambient dimension mismatch");
    F2Subspace s = *this;
    for (auto r : o.rows_)
      s.insert_raw(r);
    s.canonicalize();
    return s;
  }

  F2Subspace intersect(const F2Subspace& o) const;

  bool operator==(const F2Subspace&) const = default;

  void check_dim(const F2Vector& v) const {
    if (v.dim != ambient_dim_)
      fail("F2Subspace: vector dimension " + std::to_string(v.dim) +
           " != ambient " + std::to_string(ambient_dim_));
  }

  // Internal: constructs from rows that the caller guarantees are canonical.
  static F2Subspace from_canonical_rows(std::vector<std::uint32_t> rows, int n) {
    F2Subspace s(n);
    s.rows_ = std::move(rows);
    return s;
  }

private:
  void insert_raw(std::uint32_t v) {
    v = reduce_bits(v);
    if (v == 0)
      return;
    const int p = 31 - std::countl_zero(v);
    for (auto& r : rows_)
      if ((r >> p) & 1u)
        r ^= v;
    rows_.push_back(v);
    std::sort(rows_.begin(), rows_.end());
  }
  void canonicalize() {
    // insert_raw keeps rows fully reduced; the sort fixes the order.
    std::sort(rows_.begin(), rows_.end());
  }

  int ambient_dim_ = 0;
  std::vector<std::uint32_t> rows_;
};

inline F2Subspace rref(const std::vector<F2Vector>& vectors, int ambient_dim) {
  return F2Subspace::span(vectors, ambient_dim);
}

inline bool contains(const F2Subspace& s, const F2Vector& v) {
  return s.contains(v);
}

// F2LINEARMAP

class F2LinearMap {
public:
  F2LinearMap() = default;
  F2LinearMap(int in_dim, int out_dim, std::vector<F2Vector> columns)
      : in_dim_(in_dim), out_dim_(out_dim), cols_(std::move(columns)) {
    if (in_dim < 0 || in_dim > kMaxDim || out_dim < 0 || out_dim > kMaxDim)
      fail("F2LinearMap: dimension out of range");
    if (static_cast<int>(cols_.size()) != in_dim)
      fail("F2LinearMap: expected " + std::to_string(in_dim) + " columns");
    for (const auto& c : cols_)
      if (c.dim != out_dim)
        fail("F2LinearMap: column dimension mismatch");
  }

  static F2LinearMap identity(int n) {
    std::vector<F2Vector> c;
    for (int i = 0; i < n; ++i)
      c.push_back(F2Vector::unit(i, n));
    return F2LinearMap(n, n, std::move(c));
  }
  static F2LinearMap zero(int in_dim, int out_dim) {
    return F2LinearMap(in_dim, out_dim,
                       std::vector<F2Vector>(static_cast<std::size_t>(in_dim),
                                             F2Vector::zero(out_dim)));
  }
  static F2LinearMap from_bits(int in_dim, int out_dim,
                               const std::vector<std::uint32_t>& cols) {
    std::vector<F2Vector> c;
    for (auto b : cols)
      c.emplace_back(b, out_dim);
    return F2LinearMap(in_dim, out_dim, std::move(c));
  }

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<F2Vector>& columns() const { return cols_; }
  const F2Vector& column(int i) const { return cols_[static_cast<std::size_t>(i)]; }

  std::uint32_t apply_bits(std::uint32_t v) const {
    std::uint32_t r = 0;
    while (v) {
      r ^= cols_[static_cast<std::size_t>(std::countr_zero(v))].bits;
      v &= v - 1;
    }
    return r;
  }
  F2Vector operator()(const F2Vector& v) const {
    if (v.dim != in_dim_)
      fail("F2LinearMap: input dimension mismatch");
    return F2Vector(apply_bits(v.bits), out_dim_);
  }

  // (*this) after `inner`.
  F2LinearMap after(const F2LinearMap& inner) const {
    if (inner.out_dim_ != in_dim_)
      fail("F2LinearMap: composition dimension mismatch");
    std::vector<F2Vector> c;
    c.reserve(inner.cols_.size());
    for (const auto& col : inner.cols_)
      c.emplace_back(apply_bits(col.bits), out_dim_);
    return F2LinearMap(inner.in_dim_, out_dim_, std::move(c));
  }
  friend F2LinearMap operator*(const F2LinearMap& a, const F2LinearMap& b) {
    return a.after(b);
  }

  F2Subspace image() const { return F2Subspace::span(cols_, out_dim_); }
  int rank() const { return image().dim(); }

  F2Subspace kernel() const {
    // Track combinations of input basis vectors while eliminating columns.
    struct Row { std::uint32_t out, in; };
    std::vector<Row> piv;
    std::vector<F2Vector> ker;
    for (int j = 0; j < in_dim_; ++j) {
      Row r{cols_[static_cast<std::size_t>(j)].bits, std::uint32_t(1) << j};
      for (const auto& p : piv)
        if ((r.out >> (31 - std::countl_zero(p.out))) & 1u) {
          r.out ^= p.out;
          r.in ^= p.in;
        }
      if (r.out == 0) {
        ker.emplace_back(r.in, in_dim_);
      } else {
        // Keep pivots ordered by decreasing leading bit.
        auto it = std::find_if(piv.begin(), piv.end(),
                               [&](const Row& p) { return p.out < r.out; });
        piv.insert(it, r);
      }
    }
    return F2Subspace::span(ker, in_dim_);
  }

  bool is_invertible() const { return in_dim_ == out_dim_ && rank() == in_dim_; }

  F2LinearMap inverse() const {
    if (!is_invertible())
      fail("F2LinearMap::inverse: map is not invertible");
    const int n = in_dim_;
    // Solve column by column: find x with A x = e_j by eliminating [A | I].
    std::vector<std::uint32_t> out(cols_.size()), in(cols_.size());
    for (int j = 0; j < n; ++j) {
      out[static_cast<std::size_t>(j)] = cols_[static_cast<std::size_t>(j)].bits;
      in[static_cast<std::size_t>(j)] = std::uint32_t(1) << j;
    }
    // Gauss-Jordan on pairs (out, in): bring `out` to the standard basis.
    for (int bit = 0; bit < n; ++bit) {
      int sel = -1;
      for (int j = bit; j < n; ++j)
        if ((out[static_cast<std::size_t>(j)] >> bit) & 1u) {
          sel = j;
          break;
        }
      std::swap(out[static_cast<std::size_t>(bit)], out[static_cast<std::size_t>(sel)]);
      std::swap(in[static_cast<std::size_t>(bit)], in[static_cast<std::size_t>(sel)]);
      for (int j = 0; j < n; ++j)
        if (j != bit && ((out[static_cast<std::size_t>(j)] >> bit) & 1u)) {
          out[static_cast<std::size_t>(j)] ^= out[static_cast<std::size_t>(bit)];
          in[static_cast<std::size_t>(j)] ^= in[static_cast<std::size_t>(bit)];
        }
    }
    // Now A * in[j] = e_j, so column j of the inverse is in[j].
    return from_bits(n, n, in);
  }

  // Bit i of row(r) is the (r, i) entry.
  std::uint32_t row(int r) const {
    std::uint32_t v = 0;
    for (int i = 0; i < in_dim_; ++i)
      if (cols_[static_cast<std::size_t>(i)].get(r))
        v |= std::uint32_t(1) << i;
    return v;
  }

  bool operator==(const F2LinearMap&) const = default;

  std::string to_string() const {
    std::string s;
    for (int r = 0; r < out_dim_; ++r) {
      for (int c = 0; c < in_dim_; ++c)
        s += cols_[static_cast<std::size_t>(c)].get(r) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<F2Vector> cols_;
};

inline F2Subspace F2Subspace::intersect(const F2Subspace& o) const {
  if (o.ambient_dim_ != ambient_dim_)
    fail("F2Subspace: ambient dimension mismatch");
  // x in A and B  <=>  x = A c with (A c) reducing to 0 modulo B.
  std::vector<F2Vector> cols;
  for (auto r : rows_)
    cols.emplace_back(o.reduce_bits(r), ambient_dim_);
  F2LinearMap m(dim(), ambient_dim_, cols);
  std::vector<F2Vector> out;
  for (const auto& k : m.kernel().basis())
    out.emplace_back(element_bits(k.bits), ambient_dim_);
  return span(out, ambient_dim_);
}

// Quotient by S: the coordinates of a vector reduced modulo S, read off at the
// non-pivot positions in increasing order. Kernel is exactly S.
inline F2LinearMap quotient_map(int ambient_dim, const F2Subspace& s) {
  if (s.ambient_dim() != ambient_dim)
    fail("quotient_map: ambient dimension mismatch");
  const std::uint32_t piv = s.pivot_mask();
  std::vector<int> free_pos;
  for (int i = 0; i < ambient_dim; ++i)
    if (!((piv >> i) & 1u))
      free_pos.push_back(i);
  const int k = static_cast<int>(free_pos.size());
  std::vector<F2Vector> cols;
  for (int i = 0; i < ambient_dim; ++i) {
    const std::uint32_t red = s.reduce_bits(std::uint32_t(1) << i);
    std::uint32_t c = 0;
    for (int j = 0; j < k; ++j)
      if ((red >> free_pos[static_cast<std::size_t>(j)]) & 1u)
        c |= std::uint32_t(1) << j;
    cols.emplace_back(c, k);
  }
  return F2LinearMap(ambient_dim, k, std::move(cols));
}

// A right inverse of quotient_map: sends quotient coordinates to the
// canonical (least) coset representative.
inline F2LinearMap quotient_section(int ambient_dim, const F2Subspace& s) {
  const std::uint32_t piv = s.pivot_mask();
  std::vector<F2Vector> cols;
  for (int i = 0; i < ambient_dim; ++i)
    if (!((piv >> i) & 1u))
      cols.push_back(F2Vector::unit(i, ambient_dim));
  const int k = static_cast<int>(cols.size());
  return F2LinearMap(k, ambient_dim, std::move(cols));
}

// Calls fn(subspace) once for every k-dimensional subspace of F2^n, walking
// the canonical echelon forms (pivot sets, then free entries).
template <typename Fn>
void for_each_subspace(int n, int k, Fn&& fn) {
  if (n < 0 || n > 16 || k < 0 || k > n)
    fail("enumerate_subspaces: need 0 <= k <= n <= 16");
  std::vector<int> piv(static_cast<std::size_t>(k));
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(k));
  // Choose pivot sets as increasing sequences p_0 < ... < p_{k-1}.
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == k) {
      std::uint32_t pmask = 0;
      for (int p : piv)
        pmask |= std::uint32_t(1) << p;
      // Free positions for row i: non-pivot positions below its pivot.
      std::vector<std::vector<int>> free_pos(static_cast<std::size_t>(k));
      int total = 0;
      for (int i = 0; i < k; ++i) {
        for (int b = 0; b < piv[static_cast<std::size_t>(i)]; ++b)
          if (!((pmask >> b) & 1u))
            free_pos[static_cast<std::size_t>(i)].push_back(b);
        total += static_cast<int>(free_pos[static_cast<std::size_t>(i)].size());
      }
      const std::uint64_t count = std::uint64_t(1) << total;
      for (std::uint64_t c = 0; c < count; ++c) {
        int used = 0;
        std::vector<std::uint32_t> r(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
          std::uint32_t v = std::uint32_t(1) << piv[static_cast<std::size_t>(i)];
          for (int b : free_pos[static_cast<std::size_t>(i)]) {
            if ((c >> used) & 1u)
              v |= std::uint32_t(1) << b;
            ++used;
          }
          r[static_cast<std::size_t>(i)] = v;
        }
        std::sort(r.begin(), r.end());
        fn(F2Subspace::from_canonical_rows(std::move(r), n));
      }
      return;
    }
    for (int p = start; p <= n - (k - idx); ++p) {
      piv[static_cast<std::size_t>(idx)] = p;
      choose(idx + 1, p + 1);
    }
  };
  choose(0, 0);
}

inline std::vector<F2Subspace> enumerate_subspaces(int n, int k) {
  std::vector<F2Subspace> out;
  for_each_subspace(n, k, [&](F2Subspace s) { out.push_back(std::move(s)); });
  return out;
}

// Checked multiplication for group orders.
inline std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("group order exceeds 64 bits");
  return r;
}

inline std::uint64_t pow2(int e) {
  if (e < 0 || e > 63)
    throw std::overflow_error("pow2: exponent out of range");
  return std::uint64_t(1) << e;
}

// |GL_n(F2)| = prod_{i<n} (2^n - 2^i).
inline std::uint64_t gl_order(int n) {
  if (n < 0)
    fail("gl_order: negative dimension");
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i)
    r = mul_checked(r, pow2(n) - pow2(i));
  return r;
}

// Number of k-dimensional subspaces of F2^n.
inline std::uint64_t gaussian_binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num = mul_checked(num, pow2(n - i) - 1);
    den = mul_checked(den, pow2(i + 1) - 1);
  }
  return num / den;
}

// Matrix built from rows given as bit masks (bit i of rows[r] is entry (r,i)).
inline F2LinearMap map_from_rows(int in_dim, const std::vector<std::uint32_t>& rows) {
  const int out_dim = static_cast<int>(rows.size());
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(in_dim), 0);
  for (int r = 0; r < out_dim; ++r)
    for (int i = 0; i < in_dim; ++i)
      if ((rows[static_cast<std::size_t>(r)] >> i) & 1u)
        cols[static_cast<std::size_t>(i)] |= std::uint32_t(1) << r;
  return F2LinearMap::from_bits(in_dim, out_dim, cols);
}

// The map sending standard basis vector i to vectors[i].
inline F2LinearMap map_from_columns(const std::vector<F2Vector>& vectors, int out_dim) {
  return F2LinearMap(static_cast<int>(vectors.size()), out_dim, vectors);
}

} // namespace egrade

#endif // EGRADE_F2LINALG_HPP_
