#include "vecsub/spaces.hpp"

#include "vecsub/linalg.hpp"
#include "vecsub/transform.hpp"

namespace vecsub {

MatrixFilter<Rat> filter_with_jet(const Jet<Rat>& target) {
  if (target.cols != 1) throw math_error("filter_with_jet: column (r x 1) target expected");
  const int d = target.d;
  const int r = target.rows;
  const std::int64_t M = target.order;

  // nodes 0..M per axis; V[mu][k] = k^mu
  Mat<Rat> V(int(M + 1), int(M + 1));
  for (std::int64_t mu = 0; mu <= M; ++mu)
    for (std::int64_t k = 0; k <= M; ++k) V.at(int(mu), int(k)) = int_pow(Rat(k), mu);
  auto Vinv = invert_exact(V);
  if (!Vinv) throw math_error("filter_with_jet: singular Vandermonde (bad support)");

  // moment tensor over the full grid {0..M}^d: total degree <= M from the
  // jet, zero beyond
  Ix zero(d), hi(d);
  for (int i = 0; i < d; ++i) hi[i] = M;
  Box grid(zero, hi);
  std::int64_t vol = grid.volume();
  std::vector<Rat> mom(size_t(vol) * size_t(r), Rat(0));
  for (std::int64_t f = 0; f < vol; ++f) {
    Ix mu = grid.unflat(f);
    if (mu.order() > M) continue;
    const Mat<Rat>& c = target.at(mu);
    for (int i = 0; i < r; ++i) mom[size_t(f) * size_t(r) + size_t(i)] = c.at(i, 0);
  }
  // apply Vinv along each axis: b = (Vinv (x) ... (x) Vinv) mom
  std::vector<Rat> cur = std::move(mom);
  std::vector<Rat> nxt(cur.size());
  for (int axis = 0; axis < d; ++axis) {
    std::fill(nxt.begin(), nxt.end(), Rat(0));
    for (std::int64_t f = 0; f < vol; ++f) {
      Ix idx = grid.unflat(f);
      for (std::int64_t s = 0; s <= M; ++s) {
        Ix src = idx;
        src[axis] = s;
        const Rat& w = Vinv->at(int(idx[axis]), int(s));
        if (sgn(w) == 0) continue;
        std::int64_t fs = grid.flat(src);
        for (int i = 0; i < r; ++i)
          nxt[size_t(f) * size_t(r) + size_t(i)] += w * cur[size_t(fs) * size_t(r) + size_t(i)];
      }
    }
    std::swap(cur, nxt);
  }
  MatrixFilter<Rat> out(d, r, 1, grid);
  for (std::int64_t f = 0; f < vol; ++f)
    for (int i = 0; i < r; ++i) out.at_flat(f)[size_t(i)] = cur[size_t(f) * size_t(r) + size_t(i)];
  out.trim();
  if (out.box.empty) {
    // zero target: return the empty (zero) filter with a delta-sized box
    out = MatrixFilter<Rat>(d, r, 1, Box(Ix(d), Ix(d)));
  }
  return out;
}

GeneratorSet vmy_generators(const MatchingJet& upsilon, int m) {
  const int d = upsilon.jet.d;
  const int r = upsilon.jet.cols;
  const int p = upsilon.pinned;
  if (m >= 1 && upsilon.order() < m - 1)
    throw math_error("vmy_generators: jet order below m-1");
  GeneratorSet out;
  out.kind = "Vmy(" + std::to_string(m) + ")";
  for (const Ix& mu : enumerate_multiindices(d, m)) {
    MatrixFilter<Rat> w(d, r, 1);
    auto nd = difference_delta<Rat>(d, mu);
    for (std::int64_t f = 0; f < nd.npoints(); ++f) {
      Ix k = nd.box.unflat(f);
      Rat v = nd.at_flat(f)[0];
      if (sgn(v) != 0) w.set_entry(k, p, 0, v);
    }
    out.items.push_back(std::move(w));
    std::string lbl = "nabla^";
    {
      std::ostringstream os;
      os << mu;
      lbl += os.str();
    }
    out.labels.push_back(lbl + " delta e" + std::to_string(p + 1));
  }
  if (m >= 1) {
    Jet<Rat> piv = upsilon.jet.component(0, p).truncated(m - 1);
    for (int j = 0; j < r; ++j) {
      if (j == p) continue;
      Jet<Rat> bj = jet_divide(upsilon.jet.component(0, j).truncated(m - 1), piv);
      // lift scalar b_j to a column target so filter_with_jet applies
      MatrixFilter<Rat> b;
      {
        Jet<Rat> t(d, 1, 1, bj.order);
        t.coeff = bj.coeff;
        b = filter_with_jet(t);
      }
      MatrixFilter<Rat> w(d, r, 1);
      w.set_entry(Ix(d), j, 0, Rat(1));
      for (std::int64_t f = 0; f < b.npoints(); ++f) {
        Ix k = b.box.unflat(f);
        Rat v = b.at_flat(f)[0];
        if (sgn(v) != 0) w.add_entry(k, p, 0, -v);
      }
      out.items.push_back(std::move(w));
      out.labels.push_back("delta e" + std::to_string(j + 1) + " - b e" + std::to_string(p + 1));
    }
  } else {
    for (int j = 0; j < r; ++j) {
      if (j == p) continue;
      out.items.push_back(MatrixFilter<Rat>::delta_col(d, r, j));
      out.labels.push_back("delta e" + std::to_string(j + 1));
    }
  }
  return out;
}

std::optional<Rat> mom_membership(const MatchingJet& upsilon, const MatrixFilter<Rat>& u,
                                  const Ix& mu) {
  std::int64_t q = mu.order();
  if (upsilon.order() < q) throw math_error("mom_membership: jet order too low");
  Jet<Rat> p = jet_product(upsilon.jet.truncated(q), jet_at_zero(u, q));
  for (size_t i = 0; i < p.mus.size(); ++i) {
    if (p.mus[i] == mu) continue;
    if (sgn(p.coeff[i].at(0, 0)) != 0) return std::nullopt;
  }
  Rat t = p.at(mu).at(0, 0);
  Rat beta = t / Rat(factorial_mi(mu));
  if (q % 2 == 1) beta = -beta;
  return beta;
}

std::optional<Ix> mom_first_violation(const MatchingJet& upsilon, const MatrixFilter<Rat>& u,
                                      const Ix& mu) {
  std::int64_t q = mu.order();
  Jet<Rat> p = jet_product(upsilon.jet.truncated(q), jet_at_zero(u, q));
  for (size_t i = 0; i < p.mus.size(); ++i) {
    if (p.mus[i] == mu) continue;
    if (sgn(p.coeff[i].at(0, 0)) != 0) return p.mus[i];
  }
  return std::nullopt;
}

GeneratorSet mom_generators(const MatchingJet& upsilon, const Ix& mu) {
  const int d = upsilon.jet.d;
  const int r = upsilon.jet.cols;
  StrongFilter U = column_reduce_matching(upsilon, int(upsilon.order()));
  GeneratorSet out;
  {
    std::ostringstream os;
    os << mu;
    out.kind = "Mom(" + os.str() + ")";
  }
  // U * nabla^mu delta e_1 (reduced coordinates)
  MatrixFilter<Rat> g1(d, r, 1);
  g1.set_entry(Ix(d), 0, 0, Rat(1));
  out.items.push_back(convolve(U.U, difference(mu, g1)));
  out.labels.push_back("U*nabla delta e1");
  for (int l = 1; l < r; ++l) {
    out.items.push_back(convolve(U.U, MatrixFilter<Rat>::delta_col(d, r, l)));
    out.labels.push_back("U*delta e" + std::to_string(l + 1));
  }
  // every generator must pass membership; the first must have beta != 0
  for (size_t i = 0; i < out.items.size(); ++i) {
    auto beta = mom_membership(upsilon, out.items[i], mu);
    if (!beta) throw math_error("mom_generators: generator failed membership");
    if (i == 0 && sgn(*beta) == 0)
      throw math_error("mom_generators: leading generator has beta = 0");
  }
  return out;
}

}  // namespace vecsub
