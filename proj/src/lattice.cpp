#include "vecsub/lattice.hpp"

#include <cstdlib>

namespace vecsub {

RatVec IMat::solve(const Ix& k) const {
  // Cramer; n <= kMaxDim so this is fine.
  std::int64_t D = det();
  if (D == 0) throw math_error("singular lattice matrix");
  RatVec x(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    IMat M = *this;
    for (int i = 0; i < n; ++i) M.at(i, j) = k[i];
    x[size_t(j)] = ratq(M.det(), D);
  }
  return x;
}

std::vector<Ix> gamma_set(const IMat& N) {
  std::int64_t D = N.det();
  if (D == 0) throw math_error("gamma_set: singular matrix");
  const int d = N.n;
  // Bounding box of the parallelepiped N[0,1)^d: columns of N span it.
  Ix lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    std::int64_t a = 0, b = 0;
    for (int j = 0; j < d; ++j) {
      std::int64_t v = N.at(i, j);
      if (v < 0) a += v;
      else b += v;
    }
    lo[i] = a;
    hi[i] = b;
  }
  struct Item {
    RatVec key;
    Ix g;
  };
  std::vector<Item> items;
  Ix k(d);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == d) {
      RatVec t = N.solve(k);
      for (auto& c : t)
        if (c < 0 || c >= 1) return;
      items.push_back({t, k});
      return;
    }
    for (std::int64_t v = lo[pos]; v <= hi[pos]; ++v) {
      k[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.key < b.key; });
  std::vector<Ix> out;
  out.reserve(items.size());
  for (auto& it : items) out.push_back(it.g);
  if (std::int64_t(out.size()) != std::llabs(D))
    throw math_error("gamma_set: representative count mismatch");
  if (!out.empty() && !out[0].is_zero()) throw math_error("gamma_set: zero not first");
  return out;
}

}  // namespace vecsub
