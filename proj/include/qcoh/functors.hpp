#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qcoh/value.hpp"

namespace qcoh {

/**
 * All chart values of one presentation at a common window, built lazily.
 */
template <class Scalar>
class SheafFamily {
 public:
  SheafFamily(TwistPresentation p, int W) : p_(std::move(p)), window_(W) { p_.validate(); }

  const SheafValue<Scalar>& at(const Vertex& v) const {
    auto it = cache_.find(v.mask());
    if (it == cache_.end())
      it = cache_.emplace(v.mask(), SheafValue<Scalar>(p_, v, window_)).first;
    return it->second;
  }

  const TwistPresentation& presentation() const { return p_; }
  int window() const { return window_; }
  int n() const { return p_.n; }

 private:
  TwistPresentation p_;
  int window_;
  mutable std::map<uint32_t, SheafValue<Scalar>> cache_;
};

// The evaluation functor at a chart: H^v(M) = M(v), i.e. coker_sections.
template <class Scalar>
SheafValue<Scalar> evaluate(const TwistPresentation& p, const Vertex& v, int W) {
  return coker_sections<Scalar>(p, v, W);
}

/*
 * Right adjoint of evaluation: D^v(N)(w) = R(v union w) (x)_{R(v)} N.
 * With N given as the chart-v value of a presentation, the localization at
 * the extra variables of w is the value of the same presentation at v union
 * w (localization is exact and passes through the cokernel). Only monomial
 * presentations are accepted: the tests that consume these values reason
 * per multidegree.
 */
template <class Scalar>
class DvValue {
 public:
  DvValue(TwistPresentation q, const Vertex& v, int W) : fam_(std::move(q), W), v_(v) {
    if (!fam_.presentation().is_monomial())
      throw std::invalid_argument("dv: non-monomial input module unsupported");
  }

  const Vertex& base_vertex() const { return v_; }
  int window() const { return fam_.window(); }
  int n() const { return fam_.n(); }

  // D^v(N) evaluated at w; depends on w only through v union w.
  const SheafValue<Scalar>& at(const Vertex& w) const { return fam_.at(v_.unite(w)); }

  // The input module N itself ( = the value at any w contained in v).
  const SheafValue<Scalar>& input() const { return fam_.at(v_); }

 private:
  SheafFamily<Scalar> fam_;
  Vertex v_;
};

template <class Scalar>
SheafValue<Scalar> dv_sections(const TwistPresentation& q, const Vertex& v, const Vertex& w,
                               int W) {
  if (!q.is_monomial())
    throw std::invalid_argument("dv_sections: non-monomial input module unsupported");
  return SheafValue<Scalar>(q, v.unite(w), W);
}

/**
 * A degree-0 morphism of quasi-coherent values, stored by its matrices on
 * window slice bases: blocks[(chart mask, degree)] maps the source slice to
 * the target slice at that chart and degree.
 */
template <class Scalar>
struct MorphismData {
  std::map<std::pair<uint32_t, int>, Matrix<Scalar>> blocks;

  bool has_block(const Vertex& w, int d) const { return blocks.count({w.mask(), d}) > 0; }

  const Matrix<Scalar>& block(const Vertex& w, int d) const {
    auto it = blocks.find({w.mask(), d});
    if (it == blocks.end()) throw std::invalid_argument("morphism: no block at this chart/degree");
    return it->second;
  }
};

template <class Scalar>
bool morphisms_equal(const MorphismData<Scalar>& a, const MorphismData<Scalar>& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (const auto& [key, mat] : a.blocks) {
    auto it = b.blocks.find(key);
    if (it == b.blocks.end() || !matrix_equal(mat, it->second)) return false;
  }
  return true;
}

template <class Scalar>
bool slice_maps_equal(const std::map<int, Matrix<Scalar>>& a,
                      const std::map<int, Matrix<Scalar>>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [d, mat] : a) {
    auto it = b.find(d);
    if (it == b.end() || !matrix_equal(mat, it->second)) return false;
  }
  return true;
}

/**
 * Checks that stored blocks have the right shapes and commute with the
 * restriction maps of both families along every covering arrow w -> w+{i}
 * whose two blocks are present (general arrows follow by composition).
 * src_at/dst_at: callables Vertex -> const SheafValue<Scalar>&.
 */
template <class Scalar, class SrcAt, class DstAt>
void validate_morphism(const MorphismData<Scalar>& f, int n, SrcAt&& src_at, DstAt&& dst_at) {
  for (const auto& [key, mat] : f.blocks) {
    const Vertex w(key.first, n);
    const int d = key.second;
    if (mat.rows() != dst_at(w).dim(d) || mat.cols() != src_at(w).dim(d))
      throw std::invalid_argument("morphism: block shape mismatch");
    for (int i = 0; i <= n; ++i) {
      if (w.contains(i)) continue;
      const Vertex w2 = w.unite(Vertex::single(i, n));
      auto it = f.blocks.find({w2.mask(), d});
      if (it == f.blocks.end()) continue;
      const Matrix<Scalar> lhs = restriction_map(dst_at(w), dst_at(w2), d) * mat;
      const Matrix<Scalar> rhs = it->second * restriction_map(src_at(w), src_at(w2), d);
      if (!matrix_equal(lhs, rhs))
        throw std::invalid_argument("morphism: does not commute with restrictions");
    }
  }
}

/**
 * The unit M -> D^v(M(v)): at chart w it is the restriction M(w) -> M(v u w).
 */
template <class Scalar>
MorphismData<Scalar> unit_morphism(const SheafFamily<Scalar>& m, const Vertex& v, int dlo,
                                   int dhi) {
  MorphismData<Scalar> f;
  for (const Vertex& w : vertices(m.n()))
    for (int d = dlo; d <= dhi; ++d)
      f.blocks[{w.mask(), d}] = restriction_map(m.at(w), m.at(v.unite(w)), d);
  return f;
}

// Per-degree matrices M(v)_d -> N_d: the module-side carrier of the adjunction.
template <class Scalar>
using SliceMap = std::map<int, Matrix<Scalar>>;

/**
 * Adjunction, easy direction: a morphism f: M -> D^v(N) restricts at the
 * chart v to the slice maps M(v) -> D^v(N)(v) = N.
 */
template <class Scalar>
SliceMap<Scalar> adjoint_transpose(const MorphismData<Scalar>& f, const Vertex& v) {
  SliceMap<Scalar> g;
  for (const auto& [key, mat] : f.blocks)
    if (key.first == v.mask()) g[key.second] = mat;
  if (g.empty() && !f.blocks.empty())
    throw std::invalid_argument("adjoint_transpose: morphism has no blocks at the base chart");
  return g;
}

/**
 * Adjunction, hard direction: rebuild the morphism M -> D^v(N) from its
 * transpose g. At chart w, a slice basis class x^a e_j may have negative
 * exponents at coordinates outside v; multiplying by x^gamma with
 * gamma_i = max(0, -a_i) off v clears them, g acts at degree d + |gamma|,
 * and the result is divided back by x^gamma inside N(v u w), where gamma is
 * invertible. g must therefore be supplied on every degree up to
 * dhi + (largest cleared total), or this throws; monomials pushed outside a
 * family window surface as WindowError.
 *
 * src_at(w): slices of M at w. n_at(u): slices of N's ambient presentation
 * at chart u (so the target D^v(N)(w) is n_at(v u w)).
 */
template <class Scalar, class SrcAt, class NAt>
MorphismData<Scalar> inverse_transpose(int n, const Vertex& v, SrcAt&& src_at, NAt&& n_at,
                                       const SliceMap<Scalar>& g, int dlo, int dhi) {
  MorphismData<Scalar> out;
  for (const Vertex& w : vertices(n)) {
    const Vertex u = v.unite(w);
    for (int d = dlo; d <= dhi; ++d) {
      const SliceBasis<Scalar>& ms = src_at(w).slice(d);
      const SliceBasis<Scalar>& nu = n_at(u).slice(d);
      Matrix<Scalar> block = Matrix<Scalar>::Zero(nu.dim(), ms.dim());
      for (int c = 0; c < ms.dim(); ++c) {
        const auto& [j, a] = ms.reps[static_cast<size_t>(c)];
        Exponents gamma = Exponents::Zero(n + 1);
        for (int i = 0; i <= n; ++i)
          if (!v.contains(i) && a[i] < 0) gamma[i] = -a[i];
        const int m = d + gamma.sum();
        auto it = g.find(m);
        if (it == g.end())
          throw std::invalid_argument(
              "inverse_transpose: slice map missing a degree needed for denominator clearing");
        const SliceBasis<Scalar>& mv = src_at(v).slice(m);
        const SliceBasis<Scalar>& nv = n_at(v).slice(m);
        if (it->second.rows() != nv.dim() || it->second.cols() != mv.dim())
          throw std::invalid_argument("inverse_transpose: slice map shape mismatch");
        const Vector<Scalar> nvec = it->second * mv.reduce_monomial(j, Exponents(a + gamma));
        Vector<Scalar> col = Vector<Scalar>::Zero(nu.dim());
        for (int r = 0; r < nv.dim(); ++r) {
          if (nvec(r) == Scalar(0)) continue;
          const auto& [jn, b] = nv.reps[static_cast<size_t>(r)];
          col += nvec(r) * nu.reduce_monomial(jn, Exponents(b - gamma));
        }
        block.col(c) = col;
      }
      out.blocks[{w.mask(), d}] = std::move(block);
    }
  }
  return out;
}

/**
 * The support decomposition 0 -> K -> M -> (+)_{v in B} D^v(M(v)) -> C -> 0
 * over the maximal support charts B, reported through slice dimensions and
 * rank bookkeeping. K and C are kernel and cokernel of the stacked unit, so
 * the slice-level content is the naturality of K under restrictions and the
 * strict support drop Supp(K), Supp(C) strictly inside Supp(M).
 */
template <class Scalar>
struct DecompositionResult {
  std::vector<Vertex> maximal;  // B
  bool supp_stable = true;      // supp unchanged when recomputed at W+2

  struct Slice {
    Eigen::Index k_dim = 0, m_dim = 0, mid_dim = 0, c_dim = 0;
  };
  std::map<std::pair<uint32_t, int>, Slice> slices;

  bool ranks_consistent = true;   // k - m + mid - c == 0 on every slice
  bool kernel_natural = true;     // restrictions carry ker into ker
  std::vector<Vertex> supp_m, supp_k, supp_c;
  bool strict_decrease = true;    // supp_k, supp_c strictly contained in supp_m
  bool unit_iso = false;          // K = C = 0 everywhere: M = (+) D^v(M(v))
};

template <class Scalar>
DecompositionResult<Scalar> decomposition_sequence(const TwistPresentation& p, int W) {
  DecompositionResult<Scalar> out;
  out.supp_m = supp<Scalar>(p, W);
  if (out.supp_m.empty())
    throw std::invalid_argument("decomposition_sequence: zero module (empty support)");
  {
    const std::vector<Vertex> wider = supp<Scalar>(p, W + 2);
    out.supp_stable = (wider == out.supp_m);
  }
  for (const Vertex& v : out.supp_m) {
    bool maximal = true;
    for (const Vertex& w : out.supp_m)
      if (v != w && v.subset_of(w)) maximal = false;
    if (maximal) out.maximal.push_back(v);
  }

  SheafFamily<Scalar> fam(p, W);
  std::map<std::pair<uint32_t, int>, Matrix<Scalar>> units;  // stacked unit per slice
  for (const Vertex& w : vertices(p.n)) {
    for (int d = -W; d <= W; ++d) {
      const Eigen::Index m_dim = fam.at(w).dim(d);
      Eigen::Index mid_dim = 0;
      for (const Vertex& v : out.maximal) mid_dim += fam.at(v.unite(w)).dim(d);
      Matrix<Scalar> phi(mid_dim, m_dim);
      Eigen::Index row = 0;
      for (const Vertex& v : out.maximal) {
        const Matrix<Scalar> blk = restriction_map(fam.at(w), fam.at(v.unite(w)), d);
        phi.middleRows(row, blk.rows()) = blk;
        row += blk.rows();
      }
      const Eigen::Index r = rank(phi);
      typename DecompositionResult<Scalar>::Slice s;
      s.m_dim = m_dim;
      s.mid_dim = mid_dim;
      s.k_dim = m_dim - r;
      s.c_dim = mid_dim - r;
      if (s.k_dim - s.m_dim + s.mid_dim - s.c_dim != 0) out.ranks_consistent = false;
      out.slices[{w.mask(), d}] = s;
      units[{w.mask(), d}] = std::move(phi);
    }
  }

  // ker is a subsheaf: restrictions of kernel elements stay in the kernel
  for (const Vertex& w : vertices(p.n)) {
    for (int i = 0; i <= p.n; ++i) {
      if (w.contains(i)) continue;
      const Vertex w2 = w.unite(Vertex::single(i, p.n));
      for (int d = -W; d <= W; ++d) {
        const Matrix<Scalar> kb = kernel_basis(units.at({w.mask(), d}));
        if (kb.cols() == 0) continue;
        const Matrix<Scalar> moved =
            units.at({w2.mask(), d}) * restriction_map(fam.at(w), fam.at(w2), d) * kb;
        for (Eigen::Index r = 0; r < moved.rows(); ++r)
          for (Eigen::Index c = 0; c < moved.cols(); ++c)
            if (moved(r, c) != Scalar(0)) out.kernel_natural = false;
      }
    }
  }

  const auto support_of = [&](auto dim_of) {
    std::vector<Vertex> s;
    for (const Vertex& w : vertices(p.n)) {
      for (int d = -W; d <= W; ++d) {
        if (dim_of(out.slices.at({w.mask(), d})) > 0) {
          s.push_back(w);
          break;
        }
      }
    }
    return s;
  };
  out.supp_k = support_of([](const auto& s) { return s.k_dim; });
  out.supp_c = support_of([](const auto& s) { return s.c_dim; });

  const auto strictly_inside = [&](const std::vector<Vertex>& sub) {
    if (sub.size() >= out.supp_m.size()) return false;
    for (const Vertex& v : sub) {
      bool found = false;
      for (const Vertex& w : out.supp_m) found = found || v == w;
      if (!found) return false;
    }
    return true;
  };
  out.strict_decrease = strictly_inside(out.supp_k) && strictly_inside(out.supp_c);
  out.unit_iso = out.supp_k.empty() && out.supp_c.empty();
  return out;
}

namespace detail {

// Multiplication by x^g on window slices with escaping images projected
// away. Used only to assemble window-truncated constraint systems whose
// solutions are then read off interior coordinates.
template <class Scalar>
Matrix<Scalar> mult_map_truncated(const SheafValue<Scalar>& val, const Exponents& g, int d) {
  const SliceBasis<Scalar>& src = val.slice(d);
  const SliceBasis<Scalar>& dst = val.slice(d + g.sum());
  Matrix<Scalar> m = Matrix<Scalar>::Zero(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    const auto& [j, a] = src.reps[static_cast<size_t>(c)];
    const Exponents shifted = a + g;
    if (!dst.has_monomial(j, shifted)) continue;
    m.col(c) = dst.reduce_monomial(j, shifted);
  }
  return m;
}

}  // namespace detail

struct ExtCompareRow {
  int degree = 0;
  Eigen::Index module_side = 0;
  Eigen::Index sheaf_side = 0;
  bool agree() const { return module_side == sheaf_side; }
};

/**
 * Hom(M, D^v(N)) versus Hom_{R(v)}(M(v), N), degree by degree, each side by
 * its own windowed linear system:
 *
 *   module side: unknowns psi(e_j) in the window slices of N, constrained by
 *   the window-visible part of psi(relations) = 0;
 *
 *   sheaf side: unknown slice blocks M(w)_m -> N(v u w)_{m+d} constrained by
 *   all restriction squares and all multiplication-by-x_i squares, then
 *   projected to the generator images psi(e_j) they induce at the chart v.
 *
 * Window truncation can leave boundary monomials underconstrained, so both
 * solution spaces are reported through their shadow on interior monomials
 * (sup-norm at most W - margin). Only i = 0 is in scope.
 */
template <class Scalar>
std::vector<ExtCompareRow> ext_against_dv(const TwistPresentation& p, const Vertex& v,
                                          const TwistPresentation& q, int i, int W,
                                          const std::vector<int>& degrees, int margin = -1,
                                          int pad = 1) {
  if (i != 0)
    throw std::invalid_argument("ext_against_dv: only i = 0 (the Hom level) is supported");
  p.validate();
  q.validate();
  if (p.n != q.n) throw std::invalid_argument("ext_against_dv: ambient dimension mismatch");
  if (!p.is_monomial() || !q.is_monomial())
    throw std::invalid_argument("ext_against_dv: non-monomial input unsupported");
  if (margin < 0) margin = p.max_entry_exponent() + q.max_entry_exponent() + 1;

  const int n = p.n;
  SheafFamily<Scalar> M(p, W);
  SheafFamily<Scalar> N(q, W);
  const size_t nt = p.targets.size();

  std::vector<ExtCompareRow> rows;
  for (const int d : degrees) {
    ExtCompareRow row;
    row.degree = d;

    // ---- module side ----------------------------------------------------
    // unknowns: psi(e_j) in N(v)_{d - a_j}
    std::vector<Eigen::Index> uoff(nt + 1, 0);
    for (size_t j = 0; j < nt; ++j)
      uoff[j + 1] = uoff[j] + N.at(v).dim(d - p.targets[j]);
    const Eigen::Index nunk = uoff[nt];

    Eigen::Index nrows = 0;
    for (int b : p.sources) nrows += N.at(v).dim(d - b);
    Matrix<Scalar> sys = Matrix<Scalar>::Zero(nrows, nunk);
    Eigen::Index roff = 0;
    for (size_t s = 0; s < p.sources.size(); ++s) {
      const Eigen::Index rdim = N.at(v).dim(d - p.sources[s]);
      for (size_t j = 0; j < nt; ++j) {
        for (const Term& t : p.matrix[j][s]) {
          sys.block(roff, uoff[j], rdim, uoff[j + 1] - uoff[j]) +=
              scalar_from_rational<Scalar>(t.coeff) *
              detail::mult_map_truncated(N.at(v), t.exp, d - p.targets[j]);
        }
      }
      roff += rdim;
    }
    const Matrix<Scalar> ker_mod = kernel_basis(sys);

    // interior projector on (+)_j N(v)_{d - a_j}
    std::vector<Eigen::Index> interior;
    for (size_t j = 0; j < nt; ++j) {
      const SliceBasis<Scalar>& sl = N.at(v).slice(d - p.targets[j]);
      for (int r = 0; r < sl.dim(); ++r)
        if (within_window(sl.reps[static_cast<size_t>(r)].second, W - margin))
          interior.push_back(uoff[j] + r);
    }
    {
      Matrix<Scalar> shadow(static_cast<Eigen::Index>(interior.size()), ker_mod.cols());
      for (size_t r = 0; r < interior.size(); ++r) shadow.row(static_cast<Eigen::Index>(r)) = ker_mod.row(interior[r]);
      row.module_side = rank(shadow);
    }

    // ---- sheaf side ------------------------------------------------------
    int mlo = 0, mhi = 0;
    for (int a : p.targets) {
      mlo = std::min(mlo, -a);
      mhi = std::max(mhi, -a);
    }
    mlo -= pad;
    mhi += pad;

    // unknown layout: block (w, m) is dim N(v u w)_{m+d} x dim M(w)_m, column major
    std::map<std::pair<uint32_t, int>, Eigen::Index> boff;
    Eigen::Index nu = 0;
    const std::vector<Vertex> verts = vertices(n);
    for (const Vertex& w : verts) {
      for (int m = mlo; m <= mhi; ++m) {
        boff[{w.mask(), m}] = nu;
        nu += static_cast<Eigen::Index>(N.at(v.unite(w)).dim(m + d)) * M.at(w).dim(m);
      }
    }
    const auto entry_of = [&](const Vertex& w, int m, Eigen::Index r, Eigen::Index c) {
      return boff.at({w.mask(), m}) + c * N.at(v.unite(w)).dim(m + d) + r;
    };

    struct Trip {
      Eigen::Index r, c;
      Scalar v;
    };
    std::vector<Trip> trips;
    Eigen::Index crow = 0;
    // L * B_{w,m} - B_{w',m'} * R = 0, one scalar equation per result entry.
    // Truncated L/R rows and columns near the window boundary are not faithful
    // to the untruncated identity, so each scalar equation is imposed only
    // where it is exact: rows whose target rep is interior by the q-side
    // margin, columns the predicate accepts.
    const int row_margin = q.max_entry_exponent() + 1;
    const auto add_square = [&](const Vertex& w, int m, const Vertex& w2, int m2,
                                const Matrix<Scalar>& L, const Matrix<Scalar>& R,
                                const SliceBasis<Scalar>& lrows, const auto& col_ok) {
      const SliceBasis<Scalar>& cols = M.at(w).slice(m);
      for (Eigen::Index r = 0; r < L.rows(); ++r) {
        if (!within_window(lrows.reps[static_cast<size_t>(r)].second, W - row_margin)) continue;
        for (Eigen::Index c = 0; c < cols.dim(); ++c) {
          if (!col_ok(cols.reps[static_cast<size_t>(c)].second)) continue;
          for (Eigen::Index k = 0; k < L.cols(); ++k)
            if (L(r, k) != Scalar(0)) trips.push_back({crow, entry_of(w, m, k, c), L(r, k)});
          for (Eigen::Index k = 0; k < R.rows(); ++k)
            if (R(k, c) != Scalar(0)) trips.push_back({crow, entry_of(w2, m2, r, k), -R(k, c)});
          ++crow;
        }
      }
    };
    const auto col_any = [](const Exponents&) { return true; };

    for (const Vertex& w : verts) {
      const Vertex u = v.unite(w);
      for (int m = mlo; m <= mhi; ++m) {
        for (int ii = 0; ii <= n; ++ii) {
          if (!w.contains(ii)) {
            // restriction square w -> w + {i}
            const Vertex w2 = w.unite(Vertex::single(ii, n));
            add_square(w, m, w2, m,
                       restriction_map(N.at(u), N.at(v.unite(w2)), m + d),
                       restriction_map(M.at(w), M.at(w2), m),
                       N.at(v.unite(w2)).slice(m + d), col_any);
          }
          if (m + 1 <= mhi) {
            // multiplication square by x_i; columns must stay in the window
            // after the shift or the R side is not the honest image
            Exponents e = Exponents::Zero(n + 1);
            e[ii] = 1;
            const auto col_shift_ok = [&](const Exponents& a) {
              return within_window(Exponents(a + e), W);
            };
            add_square(w, m, w, m + 1, detail::mult_map_truncated(N.at(u), e, m + d),
                       detail::mult_map_truncated(M.at(w), e, m), N.at(u).slice(m + d + 1),
                       col_shift_ok);
          }
        }
      }
    }

    Matrix<Scalar> shsys = Matrix<Scalar>::Zero(crow, nu);
    for (const auto& t : trips) shsys(t.r, t.c) += t.v;
    const Matrix<Scalar> ker_sh = kernel_basis(shsys);

    // project solutions onto the generator images psi(e_j) = B_{v, -a_j} e_{(j,0)},
    // then onto the same interior monomials as the module side
    Matrix<Scalar> shadow =
        Matrix<Scalar>::Zero(static_cast<Eigen::Index>(interior.size()), ker_sh.cols());
    Eigen::Index srow = 0;
    for (size_t j = 0; j < nt; ++j) {
      const int m = -p.targets[j];
      const SliceBasis<Scalar>& mv = M.at(v).slice(m);
      const SliceBasis<Scalar>& nv = N.at(v).slice(m + d);
      const Vector<Scalar> gen = mv.reduce_monomial(static_cast<int>(j), Exponents::Zero(n + 1));
      for (int r = 0; r < nv.dim(); ++r) {
        if (!within_window(nv.reps[static_cast<size_t>(r)].second, W - margin)) continue;
        for (Eigen::Index kc = 0; kc < ker_sh.cols(); ++kc) {
          Scalar acc(0);
          for (Eigen::Index c = 0; c < mv.dim(); ++c)
            if (gen(c) != Scalar(0)) acc += gen(c) * ker_sh(entry_of(v, m, r, c), kc);
          shadow(srow, kc) = acc;
        }
        ++srow;
      }
    }
    row.sheaf_side = rank(shadow);

    rows.push_back(row);
  }
  return rows;
}

}  // namespace qcoh
