#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qcoh/linalg.hpp"
#include "qcoh/presentation.hpp"
#include "qcoh/rational.hpp"
#include "qcoh/section.hpp"
#include "qcoh/vertex.hpp"

namespace qcoh {

/*
 * Window semantics, once and for all.
 *
 * The degree-d slice of the presented sheaf over chart v is the cokernel of
 * an infinite monomial-indexed linear map. What gets REPORTED is the image
 * of the window monomials (targets with |a_i| <= W) in that true cokernel.
 * Sources are never clamped to the reported window: every chart-valid source
 * monomial whose image meets the tracked targets enters the elimination, and
 * every image of an admitted source is tracked as a row (dropping one would
 * silently project a relation and corrupt the quotient). Source discovery is
 * closed off at |a_i| <= W + slack; relation chains that would need to
 * travel further than the slack are the business of the stabilization check
 * (recompute at W+2 and compare), not of a single-window computation.
 *
 * The reported data is exact for monomial presentations whose columns hit a
 * single target summand, and stabilization-guarded otherwise.
 */

template <class Scalar>
struct SliceBasis {
  std::vector<std::pair<int, Exponents>> targets;  // window monomials (j, a), canonical order
  std::vector<std::pair<int, Exponents>> reps;     // cokernel basis, subset of targets
  Matrix<Scalar> reduce;                           // reps.size() x targets.size(); unused when identity
  bool identity_reduce = false;
  std::map<std::pair<int, uint64_t>, int> index;   // (j, exp_key) -> position in targets

  int dim() const { return static_cast<int>(reps.size()); }

  bool has_monomial(int j, const Exponents& a) const {
    return index.count({j, exp_key(a)}) > 0;
  }

  // Coordinates of the class of the window monomial (j, a) on the reps basis.
  Vector<Scalar> reduce_monomial(int j, const Exponents& a) const {
    auto it = index.find({j, exp_key(a)});
    if (it == index.end()) throw WindowError("slice: monomial outside reported window");
    Vector<Scalar> col = Vector<Scalar>::Zero(dim());
    if (identity_reduce) {
      col(it->second) = Scalar(1);
    } else {
      col = reduce.col(it->second);
    }
    return col;
  }
};

namespace detail {

template <class Scalar>
SliceBasis<Scalar> build_slice(const TwistPresentation& p, const Vertex& v, int d, int W,
                               int slack) {
  SliceBasis<Scalar> out;

  // reported window targets
  for (size_t j = 0; j < p.targets.size(); ++j) {
    SectionSpace s = section_basis(v, d + p.targets[j], std::max(W, std::abs(d + p.targets[j])));
    for (const Exponents& a : s.basis) {
      if (!within_window(a, W)) continue;
      out.targets.emplace_back(static_cast<int>(j), a);
    }
  }
  // canonical order: summand index, then lex
  std::sort(out.targets.begin(), out.targets.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return lex_less(x.second, y.second);
  });
  for (size_t t = 0; t < out.targets.size(); ++t)
    out.index[{out.targets[t].first, exp_key(out.targets[t].second)}] = static_cast<int>(t);

  bool has_entries = false;
  for (const auto& row : p.matrix)
    for (const auto& e : row)
      if (!e.empty()) has_entries = true;
  if (!has_entries) {
    out.reps = out.targets;
    out.identity_reduce = true;
    return out;
  }

  const int reach = W + slack;

  // Closure: sources whose images meet tracked targets; every image of an
  // admitted source becomes a row. Targets within reach are expanded further.
  std::map<std::pair<int, uint64_t>, Exponents> extra_rows;   // rows beyond the window
  std::set<std::pair<int, uint64_t>> seen_targets;            // expanded or queued
  std::map<std::pair<int, uint64_t>, Exponents> sources_seen; // admitted sources (by source index i)
  std::vector<std::pair<int, Exponents>> source_list;         // (i, b) in admission order
  std::vector<std::pair<int, Exponents>> queue;               // targets (j, a) to expand

  for (const auto& t : out.targets) {
    seen_targets.insert({t.first, exp_key(t.second)});
    queue.push_back(t);
  }

  while (!queue.empty()) {
    auto [j, a] = queue.back();
    queue.pop_back();
    for (size_t i = 0; i < p.sources.size(); ++i) {
      for (const Term& term : p.matrix[static_cast<size_t>(j)][i]) {
        Exponents b = a - term.exp;
        if (!valid_at(b, v) || !within_window(b, reach)) continue;
        auto skey = std::make_pair(static_cast<int>(i), exp_key(b));
        if (sources_seen.count(skey)) continue;
        sources_seen.emplace(skey, b);
        source_list.emplace_back(static_cast<int>(i), b);
        // track all images of this source
        for (size_t j2 = 0; j2 < p.targets.size(); ++j2) {
          for (const Term& t2 : p.matrix[j2][i]) {
            Exponents img = b + t2.exp;
            auto tkey = std::make_pair(static_cast<int>(j2), exp_key(img));
            if (out.index.count(tkey)) continue;
            if (!extra_rows.count(tkey)) {
              extra_rows.emplace(tkey, img);
              if (within_window(img, reach) && !seen_targets.count(tkey)) {
                seen_targets.insert(tkey);
                queue.emplace_back(static_cast<int>(j2), img);
              }
            }
          }
        }
      }
    }
  }

  const Eigen::Index n_extra = static_cast<Eigen::Index>(extra_rows.size());
  const Eigen::Index n_t = static_cast<Eigen::Index>(out.targets.size());
  const Eigen::Index n_src = static_cast<Eigen::Index>(source_list.size());

  // row layout: extras first, then the window targets in canonical order
  std::map<std::pair<int, uint64_t>, Eigen::Index> row_of;
  {
    Eigen::Index r = 0;
    for (const auto& [k, e] : extra_rows) row_of[k] = r++;
    for (Eigen::Index t = 0; t < n_t; ++t)
      row_of[{out.targets[t].first, exp_key(out.targets[t].second)}] = n_extra + t;
  }

  Matrix<Scalar> phi = Matrix<Scalar>::Zero(n_extra + n_t, n_src);
  for (Eigen::Index c = 0; c < n_src; ++c) {
    const auto& [i, b] = source_list[static_cast<size_t>(c)];
    for (size_t j2 = 0; j2 < p.targets.size(); ++j2) {
      for (const Term& t2 : p.matrix[j2][static_cast<size_t>(i)]) {
        Exponents img = b + t2.exp;
        phi(row_of.at({static_cast<int>(j2), exp_key(img)}), c) +=
            scalar_from_rational<Scalar>(t2.coeff);
      }
    }
  }

  // combinations of sources landing inside the window span
  Matrix<Scalar> landing;
  if (n_extra == 0) {
    landing = phi.bottomRows(n_t);
  } else {
    Matrix<Scalar> k = kernel_basis(phi.topRows(n_extra));
    landing = phi.bottomRows(n_t) * k;
  }

  // column space of `landing` is what gets quotiented out of the window span
  Rref<Scalar> rr = reduced_row_echelon(Matrix<Scalar>(landing.transpose()));
  std::vector<bool> killed(static_cast<size_t>(n_t), false);
  for (Eigen::Index c : rr.pivot_cols) killed[static_cast<size_t>(c)] = true;

  std::vector<Eigen::Index> rep_pos(static_cast<size_t>(n_t), -1);
  for (Eigen::Index t = 0; t < n_t; ++t) {
    if (!killed[static_cast<size_t>(t)]) {
      rep_pos[static_cast<size_t>(t)] = static_cast<Eigen::Index>(out.reps.size());
      out.reps.push_back(out.targets[static_cast<size_t>(t)]);
    }
  }
  out.reduce = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(out.reps.size()), n_t);
  for (Eigen::Index t = 0; t < n_t; ++t) {
    if (!killed[static_cast<size_t>(t)]) out.reduce(rep_pos[static_cast<size_t>(t)], t) = Scalar(1);
  }
  for (size_t r = 0; r < rr.pivot_cols.size(); ++r) {
    const Eigen::Index pcol = rr.pivot_cols[r];
    for (Eigen::Index f = 0; f < n_t; ++f) {
      if (killed[static_cast<size_t>(f)]) continue;
      const Scalar coef = rr.mat(static_cast<Eigen::Index>(r), f);
      if (coef != Scalar(0)) out.reduce(rep_pos[static_cast<size_t>(f)], pcol) = -coef;
    }
  }
  return out;
}

}  // namespace detail

/**
 * The graded family of window slices of a presented sheaf over one chart:
 * H^v(M) with lazily computed degree slices. This is both coker_sections and
 * the evaluation functor.
 */
template <class Scalar>
class SheafValue {
 public:
  SheafValue(TwistPresentation p, Vertex v, int window, int slack = -1)
      : p_(std::move(p)), v_(v), window_(window),
        slack_(slack >= 0 ? slack : 2 * p_.max_entry_exponent() + 2) {
    p_.validate();
    if (window_ < 0) throw WindowError("sheaf value: negative window");
  }

  const TwistPresentation& presentation() const { return p_; }
  const Vertex& vertex() const { return v_; }
  int window() const { return window_; }

  const SliceBasis<Scalar>& slice(int d) const {
    auto it = cache_.find(d);
    if (it == cache_.end())
      it = cache_.emplace(d, detail::build_slice<Scalar>(p_, v_, d, window_, slack_)).first;
    return it->second;
  }

  int dim(int d) const { return slice(d).dim(); }

 private:
  TwistPresentation p_;
  Vertex v_;
  int window_;
  int slack_;
  mutable std::map<int, SliceBasis<Scalar>> cache_;
};

template <class Scalar>
SheafValue<Scalar> coker_sections(const TwistPresentation& p, const Vertex& v, int W) {
  return SheafValue<Scalar>(p, v, W);
}

/**
 * Support within the window: vertices where some slice with |d| <= W is
 * nonzero. Down-closed for every honest input (localization of zero is zero).
 */
template <class Scalar>
std::vector<Vertex> supp(const TwistPresentation& p, int W) {
  std::vector<Vertex> out;
  for (const Vertex& v : vertices(p.n)) {
    SheafValue<Scalar> val(p, v, W);
    for (int d = -W; d <= W; ++d) {
      if (val.dim(d) > 0) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

/**
 * Matrix of the restriction (localization) map M(v)_d -> M(w)_d on the reps
 * bases, for v a subset of w. Representatives of the coarser chart are valid
 * window monomials of the finer one; the map is "same monomial, reduced".
 */
template <class Scalar>
Matrix<Scalar> restriction_map(const SheafValue<Scalar>& from, const SheafValue<Scalar>& to,
                               int d) {
  if (!from.vertex().subset_of(to.vertex()))
    throw std::invalid_argument("restriction_map: vertices not nested");
  const SliceBasis<Scalar>& src = from.slice(d);
  const SliceBasis<Scalar>& dst = to.slice(d);
  Matrix<Scalar> m(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c)
    m.col(c) = dst.reduce_monomial(src.reps[static_cast<size_t>(c)].first,
                                   src.reps[static_cast<size_t>(c)].second);
  return m;
}

/**
 * Matrix of multiplication by the monomial x^g on chart v (g_i >= 0 off v):
 * M(v)_d -> M(v)_{d + sum g}. Throws WindowError when a shifted monomial
 * leaves the reported window; callers needing headroom build the value with
 * a larger window.
 */
template <class Scalar>
Matrix<Scalar> mult_map(const SheafValue<Scalar>& val, const Exponents& g, int d) {
  if (!valid_at(g, val.vertex()))
    throw std::invalid_argument("mult_map: monomial not valid on this chart");
  const SliceBasis<Scalar>& src = val.slice(d);
  const SliceBasis<Scalar>& dst = val.slice(d + g.sum());
  Matrix<Scalar> m(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    m.col(c) = dst.reduce_monomial(src.reps[static_cast<size_t>(c)].first,
                                   Exponents(src.reps[static_cast<size_t>(c)].second + g));
  }
  return m;
}

/**
 * Slice matrix of the map of presented sheaves induced by a monomial map of
 * the covering free sheaves. free_map[j'][j] lists terms (e, c) sending the
 * summand j of src's cover into summand j' of dst's cover via multiplication
 * by c x^e; all terms must shift total degree by the same `shift`.
 *
 * With verify=true, well-definedness on the computed quotients is checked:
 * mapping a window monomial directly agrees with reducing first and mapping
 * representatives.
 */
template <class Scalar>
Matrix<Scalar> induced_map(const SheafValue<Scalar>& src, const SheafValue<Scalar>& dst,
                           const std::vector<std::vector<Entry>>& free_map, int d, int shift,
                           bool verify = false) {
  const SliceBasis<Scalar>& s = src.slice(d);
  const SliceBasis<Scalar>& t = dst.slice(d + shift);
  const auto map_monomial = [&](int j, const Exponents& a) {
    Vector<Scalar> acc = Vector<Scalar>::Zero(t.dim());
    for (size_t j2 = 0; j2 < free_map.size(); ++j2) {
      for (const Term& term : free_map[j2][static_cast<size_t>(j)]) {
        acc += scalar_from_rational<Scalar>(term.coeff) *
               t.reduce_monomial(static_cast<int>(j2), Exponents(a + term.exp));
      }
    }
    return acc;
  };
  Matrix<Scalar> m(t.dim(), s.dim());
  for (int c = 0; c < s.dim(); ++c)
    m.col(c) = map_monomial(s.reps[static_cast<size_t>(c)].first, s.reps[static_cast<size_t>(c)].second);
  if (verify) {
    for (size_t tm = 0; tm < s.targets.size(); ++tm) {
      Vector<Scalar> direct = map_monomial(s.targets[tm].first, s.targets[tm].second);
      Vector<Scalar> via = m * s.reduce_monomial(s.targets[tm].first, s.targets[tm].second);
      if (direct != via)
        throw std::logic_error("induced_map: free-cover map does not descend to the quotient");
    }
  }
  return m;
}

}  // namespace qcoh
