#pragma once

// Test-only helpers, deliberately independent of the library under test:
// a second, naive linear-algebra path over prime fields (plain integer
// matrices mod p) plus a deterministic RNG. Expected values derived from
// rank sequences or solvability are computed here and compared against
// the library's answers.

#include <cstdint>
#include <vector>

namespace oracle {

using IMat = std::vector<std::vector<long long>>;

inline long long norm(long long v, long long p) {
  v %= p;
  if (v < 0) v += p;
  return v;
}

inline IMat ident(int n) {
  IMat a(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

inline IMat mul(const IMat& a, const IMat& b, long long p) {
  int n = (int)a.size(), k = (int)b.size(), m = k ? (int)b[0].size() : 0;
  IMat c(n, std::vector<long long>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (int j = 0; j < m; ++j) c[i][j] = norm(c[i][j] + a[i][t] * b[t][j], p);
    }
  return c;
}

inline IMat add(const IMat& a, const IMat& b, long long p) {
  IMat c = a;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = norm(c[i][j] + b[i][j], p);
  return c;
}

// Kronecker product with the left factor major: entry ((i,k),(j,l)) at
// row i*rows(b)+k, column j*cols(b)+l.
inline IMat kron(const IMat& a, const IMat& b, long long p) {
  int ra = (int)a.size(), ca = ra ? (int)a[0].size() : 0;
  int rb = (int)b.size(), cb = rb ? (int)b[0].size() : 0;
  IMat c(ra * rb, std::vector<long long>(ca * cb, 0));
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ca; ++j) {
      if (!a[i][j]) continue;
      for (int k = 0; k < rb; ++k)
        for (int l = 0; l < cb; ++l) c[i * rb + k][j * cb + l] = norm(a[i][j] * b[k][l], p);
    }
  return c;
}

// Block-diagonal nilpotent matrix with one lower-shift block per size.
inline IMat jordan_imat(const std::vector<int>& blocks) {
  int d = 0;
  for (int b : blocks) d += b;
  IMat t(d, std::vector<long long>(d, 0));
  int off = 0;
  for (int b : blocks) {
    for (int k = 0; k + 1 < b; ++k) t[off + k + 1][off + k] = 1;
    off += b;
  }
  return t;
}

inline int rank(IMat a, long long p) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = r;
    while (pr < rows && norm(a[pr][c], p) == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[r]);
    long long lead = norm(a[r][c], p), inv = 1;
    for (long long x = 1; x < p; ++x)
      if (lead * x % p == 1) {
        inv = x;
        break;
      }
    for (auto& v : a[r]) v = norm(v * inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      long long f = norm(a[i][c], p);
      if (!f) continue;
      for (int j = 0; j < cols; ++j) a[i][j] = norm(a[i][j] - f * a[r][j], p);
    }
    ++r;
  }
  return r;
}

// Jordan block sizes of a nilpotent T via the rank sequence
// m_i = r_{i-1} - 2 r_i + r_{i+1}, returned sorted ascending.
inline std::vector<int> jordan_blocks(const IMat& t, int q, long long p) {
  int d = (int)t.size();
  std::vector<int> r(q + 2, 0);
  r[0] = d;
  IMat pw = ident(d);
  for (int i = 1; i <= q + 1; ++i) {
    pw = mul(pw, t, p);
    r[i] = rank(pw, p);
  }
  std::vector<int> blocks;
  for (int i = 1; i <= q; ++i) {
    int mult = r[i - 1] - 2 * r[i] + r[i + 1];
    for (int k = 0; k < mult; ++k) blocks.push_back(i);
  }
  return blocks;
}

// Deterministic xorshift64 so every "random" test is reproducible.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long long below(long long n) { return (long long)(next() % (std::uint64_t)n); }
};

inline IMat random_mat(Rng& rng, int rows, int cols, long long p) {
  IMat a(rows, std::vector<long long>(cols));
  for (auto& row : a)
    for (auto& v : row) v = rng.below(p);
  return a;
}

inline IMat random_invertible(Rng& rng, int n, long long p) {
  for (;;) {
    IMat a = random_mat(rng, n, n, p);
    if (rank(a, p) == n) return a;
  }
}

}  // namespace oracle
