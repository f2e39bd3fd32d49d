// Exact rational kernels via arithmetic modulo a 61-bit prime.
//
// dim ker over Q <= dim ker mod p, so a mod-p kernel basis that lifts by
// rational reconstruction to vectors verified exactly over Z is a kernel basis
// over Q.

#ifndef EGRADE_MODULAR_HPP_
#define EGRADE_MODULAR_HPP_

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace egrade::modp {

inline constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  r = (r & kPrime) + (r >> 61);
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t from_int(std::int64_t v) {
  return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                : sub(0, static_cast<std::uint64_t>(-(v + 1)) % kPrime + 1);
}
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inverse(std::uint64_t a) { return power(a, kPrime - 2); }

using Matrix = std::vector<std::vector<std::uint64_t>>;

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(Matrix& m, int ncols) {
  std::vector<int> piv;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][static_cast<std::size_t>(c)] == 0)
      ++sel;
    if (sel == m.size())
      continue;
    std::swap(m[r], m[sel]);
    const std::uint64_t inv = inverse(m[r][static_cast<std::size_t>(c)]);
    for (auto& x : m[r])
      x = mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r)
        continue;
      const std::uint64_t f = m[i][static_cast<std::size_t>(c)];
      if (!f)
        continue;
      for (std::size_t j = static_cast<std::size_t>(c); j < static_cast<std::size_t>(ncols); ++j)
        if (m[r][j])
          m[i][j] = sub(m[i][j], mul(f, m[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline int rank(Matrix m, int ncols) { return static_cast<int>(rref(m, ncols).size()); }

// Kernel basis mod p, one vector per free column (that coordinate set to 1).
inline std::vector<std::vector<std::uint64_t>> kernel(Matrix m, int ncols) {
  const auto piv = rref(m, ncols);
  std::vector<char> is_piv(static_cast<std::size_t>(ncols), 0);
  for (int c : piv)
    is_piv[static_cast<std::size_t>(c)] = 1;
  std::vector<std::vector<std::uint64_t>> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[static_cast<std::size_t>(f)])
      continue;
    std::vector<std::uint64_t> v(static_cast<std::size_t>(ncols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      v[static_cast<std::size_t>(piv[i])] = sub(0, m[i][static_cast<std::size_t>(f)]);
    out.push_back(std::move(v));
  }
  return out;
}

// a = n/d mod p with |n|, d below sqrt(p/2).
inline std::optional<std::pair<std::int64_t, std::int64_t>> rational_reconstruct(std::uint64_t a) {
  const __int128 bound = 1073741823; // floor(sqrt(p/2))
  __int128 r0 = kPrime, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || t1 > bound || -t1 > bound)
    return std::nullopt;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  return std::make_pair(static_cast<std::int64_t>(r1), static_cast<std::int64_t>(t1));
}

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Integer basis of the rational kernel of m. Throws if the lift fails.
inline std::vector<std::vector<std::int64_t>> exact_kernel(const IntMatrix& m, int ncols) {
  Matrix mm;
  mm.reserve(m.size());
  for (const auto& row : m) {
    std::vector<std::uint64_t> r(static_cast<std::size_t>(ncols));
    for (int j = 0; j < ncols; ++j)
      r[static_cast<std::size_t>(j)] = from_int(row[static_cast<std::size_t>(j)]);
    mm.push_back(std::move(r));
  }
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& v : kernel(std::move(mm), ncols)) {
    std::vector<std::int64_t> num(v.size()), den(v.size());
    std::int64_t l = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto nd = rational_reconstruct(v[i]);
      if (!nd)
        throw std::runtime_error("exact_kernel: rational reconstruction failed");
      num[i] = nd->first;
      den[i] = nd->second;
      l = std::lcm(l, den[i]);
    }
    std::vector<std::int64_t> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      w[i] = num[i] * (l / den[i]);
    for (const auto& row : m) {
      __int128 s = 0;
      for (std::size_t j = 0; j < w.size(); ++j)
        s += static_cast<__int128>(row[j]) * w[j];
      if (s != 0)
        throw std::runtime_error("exact_kernel: lifted vector is not in the kernel");
    }
    out.push_back(std::move(w));
  }
  return out;
}

} // namespace egrade::modp

#endif // EGRADE_MODULAR_HPP_
