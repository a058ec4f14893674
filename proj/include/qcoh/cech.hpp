#pragma once

#include <cstdlib>
#include <functional>
#include <vector>

#include "qcoh/complex.hpp"
#include "qcoh/value.hpp"

namespace qcoh {

/*
 * Cech complex over the standard cover of P^n: the chart U_v (v a vertex,
 * i.e. a nonempty subset of {0..n}) is the intersection of the basic opens
 * indexed by the members of v. C^p collects the charts with |v| = p+1; the
 * differential is the alternating sum of restriction maps with the standard
 * ordered-cover sign (position of the dropped index in the sorted target).
 */

template <class Scalar>
struct CechComplex {
  int n = 0;
  int window = 0;
  int degree = 0;                            // twist-degree slice this complex computes
  Complex<Scalar> complex;                   // lo = 0, length n+1
  std::vector<std::vector<Vertex>> levels;   // levels[p]: charts with |v| = p+1
  std::vector<std::vector<Eigen::Index>> offsets;  // block offsets per level
};

template <class Scalar>
CechComplex<Scalar> build_cech(const TwistPresentation& p, int W, int degree = 0) {
  CechComplex<Scalar> out;
  out.n = p.n;
  out.window = W;
  out.degree = degree;

  std::vector<SheafValue<Scalar>> vals;
  std::vector<std::vector<size_t>> level_idx(static_cast<size_t>(p.n) + 1);
  for (const Vertex& v : vertices(p.n)) {
    level_idx[static_cast<size_t>(v.card() - 1)].push_back(vals.size());
    vals.emplace_back(p, v, W);
  }

  out.levels.resize(level_idx.size());
  out.offsets.resize(level_idx.size());
  out.complex.lo = 0;
  out.complex.dims.resize(level_idx.size());
  for (size_t lev = 0; lev < level_idx.size(); ++lev) {
    Eigen::Index off = 0;
    for (size_t idx : level_idx[lev]) {
      out.levels[lev].push_back(vals[idx].vertex());
      out.offsets[lev].push_back(off);
      off += vals[idx].dim(degree);
    }
    out.complex.dims[lev] = off;
  }

  for (size_t lev = 0; lev + 1 < level_idx.size(); ++lev) {
    Matrix<Scalar> d =
        Matrix<Scalar>::Zero(out.complex.dims[lev + 1], out.complex.dims[lev]);
    for (size_t wi = 0; wi < level_idx[lev + 1].size(); ++wi) {
      const SheafValue<Scalar>& wval = vals[level_idx[lev + 1][wi]];
      const std::vector<int> members = wval.vertex().members();
      for (size_t pos = 0; pos < members.size(); ++pos) {
        const Vertex sub(wval.vertex().mask() & ~(1u << members[pos]), p.n);
        // locate sub in the previous level
        size_t vi = 0;
        while (out.levels[lev][vi] != sub) ++vi;
        const Scalar sign = (pos % 2 == 0) ? Scalar(1) : Scalar(-1);
        const SheafValue<Scalar>& vval = vals[level_idx[lev][vi]];
        Matrix<Scalar> block = restriction_map(vval, wval, degree);
        d.block(out.offsets[lev + 1][wi], out.offsets[lev][vi], block.rows(), block.cols()) +=
            sign * block;
      }
    }
    out.complex.diff.push_back(std::move(d));
  }
  out.complex.validate();
  return out;
}

/**
 * dim H^i of the Cech complex of the presented sheaf (its degree-0 slice:
 * sheaf cohomology of M itself; twist the presentation for other degrees).
 */
template <class Scalar>
Eigen::Index sheaf_cohomology_dim(const TwistPresentation& p, int i, int W) {
  if (i < 0 || i > p.n) throw std::invalid_argument("sheaf_cohomology_dim: index out of range");
  CechComplex<Scalar> c = build_cech<Scalar>(p, W);
  return cohomology_dim(c.complex, i);
}

/**
 * All of h^0..h^n of O(k) on P^n by honest per-multidegree Cech ranks.
 *
 * The twist Cech differential preserves the multidegree, so the complex is
 * the direct sum over exponent vectors a (sum a = k, |a_i| <= W) of small
 * complexes supported on the charts v containing neg(a) = {i : a_i < 0}.
 * Each block's cohomology is computed by exact elimination, not read off a
 * formula.
 */
namespace detail {

// Cohomology of the one-multidegree Cech block: charts v containing neg,
// differential entries +/-1 with the ordered-cover sign. The block depends on
// the multidegree only through its set of negative coordinates.
template <class Scalar>
std::vector<Eigen::Index> cech_block_dims(int n, uint32_t neg) {
  const std::vector<Vertex> verts = vertices(n);
  std::vector<std::vector<size_t>> lev(static_cast<size_t>(n) + 1);
  for (size_t vi = 0; vi < verts.size(); ++vi)
    if ((neg & ~verts[vi].mask()) == 0)
      lev[static_cast<size_t>(verts[vi].card() - 1)].push_back(vi);

  Complex<Scalar> block;
  block.lo = 0;
  block.dims.resize(lev.size());
  for (size_t l = 0; l < lev.size(); ++l)
    block.dims[l] = static_cast<Eigen::Index>(lev[l].size());
  for (size_t l = 0; l + 1 < lev.size(); ++l) {
    Matrix<Scalar> d = Matrix<Scalar>::Zero(block.dims[l + 1], block.dims[l]);
    for (size_t wi = 0; wi < lev[l + 1].size(); ++wi) {
      const Vertex& w = verts[lev[l + 1][wi]];
      const std::vector<int> members = w.members();
      for (size_t pos = 0; pos < members.size(); ++pos) {
        const uint32_t submask = w.mask() & ~(1u << members[pos]);
        if (submask == 0 || (neg & ~submask) != 0) continue;
        size_t vi = 0;
        while (verts[lev[l][vi]].mask() != submask) ++vi;
        d(static_cast<Eigen::Index>(wi), static_cast<Eigen::Index>(vi)) =
            (pos % 2 == 0) ? Scalar(1) : Scalar(-1);
      }
    }
    block.diff.push_back(std::move(d));
  }
  std::vector<Eigen::Index> h(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i <= n; ++i) h[static_cast<size_t>(i)] = cohomology_dim(block, i);
  return h;
}

}  // namespace detail

template <class Scalar>
std::vector<Eigen::Index> twist_cohomology_dims(int n, int k, int W) {
  if (n < 0) throw std::invalid_argument("twist_cohomology_dims: n must be >= 0");
  if (W < std::abs(k)) throw WindowError("twist_cohomology_dims: window smaller than |twist|");

  // multiplicity of each negative-coordinate set among the in-window
  // multidegrees of total k
  std::vector<long long> mult(1u << (n + 1), 0);
  Exponents a = Exponents::Zero(n + 1);
  const std::function<void(int, int, uint32_t)> scan = [&](int coord, int rem, uint32_t neg) {
    if (coord == n) {
      if (rem < -W || rem > W) return;
      if (rem < 0) neg |= (1u << coord);
      ++mult[neg];
      return;
    }
    for (int e = -W; e <= W; ++e)
      scan(coord + 1, rem - e, e < 0 ? neg | (1u << coord) : neg);
  };
  scan(0, k, 0);

  std::vector<Eigen::Index> h(static_cast<size_t>(n) + 1, 0);
  for (uint32_t neg = 0; neg < (1u << (n + 1)); ++neg) {
    if (mult[neg] == 0) continue;
    const std::vector<Eigen::Index> bh = detail::cech_block_dims<Scalar>(n, neg);
    for (int i = 0; i <= n; ++i)
      h[static_cast<size_t>(i)] += static_cast<Eigen::Index>(mult[neg]) * bh[static_cast<size_t>(i)];
  }
  return h;
}

/**
 * dim Ext^i(O(a), O(b)) on P^n: twists are locally free, so this is
 * h^i(O(b-a)), delivered by the per-multidegree engine.
 */
template <class Scalar>
Eigen::Index ext_twists(int a, int b, int i, int n, int W) {
  if (i < 0 || i > n) throw std::invalid_argument("ext_twists: index out of range");
  return twist_cohomology_dims<Scalar>(n, b - a, W)[static_cast<size_t>(i)];
}

struct CohomologyRow {
  int n = 0;
  int d = 0;
  std::vector<Eigen::Index> h;
  int window = 0;
  bool stabilized = true;
};

/**
 * Cohomology of a presented sheaf, all i at once, at the given twist degree.
 * Non-monomial differentials can mix multidegrees, so the row is only
 * trustworthy when the stabilized flag (recompute at W+2) is set.
 */
template <class Scalar>
CohomologyRow presented_cohomology(const TwistPresentation& p, int W, int degree = 0) {
  CohomologyRow row;
  row.n = p.n;
  row.d = degree;
  row.window = W;
  const auto dims_at = [&](int win) {
    CechComplex<Scalar> c = build_cech<Scalar>(p, win, degree);
    std::vector<Eigen::Index> h;
    for (int i = 0; i <= p.n; ++i) h.push_back(cohomology_dim(c.complex, i));
    return h;
  };
  row.h = dims_at(W);
  row.stabilized = (dims_at(W + 2) == row.h);
  return row;
}

/**
 * h^i(P^n, O(d)) for d in [dmin, dmax]. Requires W >= max|d| + n so the
 * cohomology-carrying multidegrees all fit in the window; the stabilized
 * flag reports a recompute-at-W+2 comparison rather than trusting that.
 */
template <class Scalar>
std::vector<CohomologyRow> cohomology_table(int n, int dmin, int dmax, int W) {
  if (dmin > dmax) throw std::invalid_argument("cohomology_table: empty range");
  const int dmax_abs = std::max(std::abs(dmin), std::abs(dmax));
  if (W < dmax_abs + n) throw WindowError("cohomology_table: window too small (need max|d| + n)");
  std::vector<CohomologyRow> rows;
  for (int d = dmin; d <= dmax; ++d) {
    CohomologyRow row;
    row.n = n;
    row.d = d;
    row.window = W;
    row.h = twist_cohomology_dims<Scalar>(n, d, W);
    row.stabilized = (twist_cohomology_dims<Scalar>(n, d, W + 2) == row.h);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qcoh
