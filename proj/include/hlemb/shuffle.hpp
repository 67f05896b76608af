#pragma once

// (p,q)-shuffles and sign helpers.  Permutations are 0-based arrays s where
// position i receives argument s[i], i.e. the argument list reads
// x_{s[0]}, ..., x_{s[n-1]}.

#include <functional>
#include <numeric>
#include <vector>

namespace hlemb {

/// Sign of a permutation via inversion count.
inline int perm_sign(const std::vector<int>& s) {
  int inv = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

/// Koszul sign of reordering homogeneous x_0..x_{n-1} of degrees deg into the
/// order given by s.
inline int koszul_sign(const std::vector<int>& s, const std::vector<int>& deg) {
  int par = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) par ^= (deg[s[i]] & 1) & (deg[s[j]] & 1);
  return par ? -1 : 1;
}

/// Calls fn(s, sign) for every (p,q)-shuffle: s[0..p) and s[p..p+q) increasing.
inline void for_each_shuffle(int p, int q, const std::function<void(const std::vector<int>&, int)>& fn) {
  const int n = p + q;
  std::vector<int> chosen(p);
  std::iota(chosen.begin(), chosen.end(), 0);
  std::vector<int> s(n);
  std::vector<char> used(n);
  while (true) {
    std::fill(used.begin(), used.end(), 0);
    for (int i = 0; i < p; ++i) {
      s[i] = chosen[i];
      used[chosen[i]] = 1;
    }
    int k = p;
    for (int j = 0; j < n; ++j)
      if (!used[j]) s[k++] = j;
    fn(s, perm_sign(s));
    // next p-subset in lexicographic order
    int i = p - 1;
    while (i >= 0 && chosen[i] == n - p + i) --i;
    if (i < 0) break;
    ++chosen[i];
    for (int j = i + 1; j < p; ++j) chosen[j] = chosen[j - 1] + 1;
  }
}

inline std::vector<std::vector<int>> shuffles(int p, int q) {
  std::vector<std::vector<int>> out;
  for_each_shuffle(p, q, [&](const std::vector<int>& s, int) { out.push_back(s); });
  return out;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hlemb
