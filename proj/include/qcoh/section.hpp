#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qcoh/linalg.hpp"
#include "qcoh/vertex.hpp"

namespace qcoh {

// Exponent vector of a Laurent monomial x^a, a in Z^{n+1}. Over the chart v
// the legal monomials are those with a_i >= 0 for every i outside v (the
// chart ring is generated by the fractions x_i/x_j with j in v).
using Exponents = Eigen::VectorXi;

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool lex_less(const Exponents& a, const Exponents& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline bool valid_at(const Exponents& a, const Vertex& v) {
  for (int i = 0; i <= v.n(); ++i) {
    if (!v.contains(i) && a[i] < 0) return false;
  }
  return true;
}

inline bool within_window(const Exponents& a, int W) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > W || a[i] < -W) return false;
  }
  return true;
}

// Packs an exponent vector into one integer key; ordering of keys equals lex
// ordering of vectors. Requires |a_i| <= 120 and n <= 6, enough for desk
// scale by a wide margin.
inline uint64_t exp_key(const Exponents& a) {
  if (a.size() > 7) throw std::invalid_argument("exp_key: n too large");
  uint64_t k = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const int e = a[i];
    if (e < -120 || e > 120) throw WindowError("exp_key: exponent out of packable range");
    k = (k << 8) | static_cast<uint64_t>(e + 128);
  }
  return k;
}

// Window slice of the degree-d sections of O(d) over the chart v:
// all a with sum(a) = d, a_i >= 0 off v, |a_i| <= W, in lex order.
struct SectionSpace {
  Vertex vertex;
  int degree = 0;
  int window = 0;
  std::vector<Exponents> basis;
};

namespace detail {

inline void enumerate_rec(const Vertex& v, int d, int W, int coord, Exponents& cur,
                          std::vector<Exponents>& out) {
  const int n = v.n();
  if (coord == n + 1) {
    if (d == 0) out.push_back(cur);
    return;
  }
  // bounds the remaining coordinates can still contribute
  int lo_rest = 0, hi_rest = 0;
  for (int j = coord + 1; j <= n; ++j) {
    lo_rest += v.contains(j) ? -W : 0;
    hi_rest += W;
  }
  const int lo = v.contains(coord) ? -W : 0;
  for (int e = lo; e <= W; ++e) {
    const int rem = d - e;
    if (rem < lo_rest || rem > hi_rest) continue;
    cur[coord] = e;
    enumerate_rec(v, rem, W, coord + 1, cur, out);
  }
  cur[coord] = 0;
}

}  // namespace detail

inline SectionSpace section_basis(const Vertex& v, int d, int W) {
  if (W < std::abs(d)) throw WindowError("section_basis: window smaller than |degree|");
  SectionSpace s{v, d, W, {}};
  Exponents cur = Exponents::Zero(v.n() + 1);
  detail::enumerate_rec(v, d, W, 0, cur, s.basis);
  return s;
}

/**
 * Basis-inclusion matrix of section_basis(v,d,W) into section_basis(w,d,W)
 * for v a subset of w (restriction is a localization, injective on windows).
 * Composites along chains equal the direct matrix.
 */
template <class Scalar>
Matrix<Scalar> restriction_matrix(const Vertex& v, const Vertex& w, int d, int W) {
  if (!v.subset_of(w)) throw std::invalid_argument("restriction_matrix: v must be a subset of w");
  const SectionSpace sv = section_basis(v, d, W);
  const SectionSpace sw = section_basis(w, d, W);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(sw.basis.size()),
                                          static_cast<Eigen::Index>(sv.basis.size()));
  // both bases are lex sorted; walk them together
  size_t iw = 0;
  for (size_t iv = 0; iv < sv.basis.size(); ++iv) {
    while (iw < sw.basis.size() && lex_less(sw.basis[iw], sv.basis[iv])) ++iw;
    if (iw >= sw.basis.size() || sw.basis[iw] != sv.basis[iv])
      throw std::logic_error("restriction_matrix: chart basis not contained in finer chart");
    m(static_cast<Eigen::Index>(iw), static_cast<Eigen::Index>(iv)) = Scalar(1);
  }
  return m;
}

}  // namespace qcoh
