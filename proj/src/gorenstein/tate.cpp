#include "qcoh/gorenstein/tate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcoh::gor {
namespace {

constexpr long long kMaxSpace = 1 << 22;

long long pow_ll(int base, int exp, const char* what) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > kMaxSpace) throw std::invalid_argument(std::string(what) + ": enumeration too large");
  }
  return v;
}

long long ntuple_add(const FinModule& N, int r, long long c1, long long c2) {
  long long out = 0, mult = 1;
  for (int i = 0; i < r; ++i) {
    out += static_cast<long long>(
               N.elem_add(static_cast<int>(c1 % N.size), static_cast<int>(c2 % N.size))) *
           mult;
    c1 /= N.size;
    c2 /= N.size;
    mult *= N.size;
  }
  return out;
}

long long ntuple_smul(const FinModule& N, int r, int s, long long c) {
  long long out = 0, mult = 1;
  for (int i = 0; i < r; ++i) {
    out += static_cast<long long>(N.elem_smul(s, static_cast<int>(c % N.size))) * mult;
    c /= N.size;
    mult *= N.size;
  }
  return out;
}

// Hom(-, N) applied to B : P' -> P; sends a tuple in N^{B.rows} (a map out of
// P) to its precomposition in N^{B.cols}.
long long hom_transfer(const FinModule& N, const IMat& B, long long code) {
  std::vector<int> x(static_cast<size_t>(B.rows));
  for (int i = 0; i < B.rows; ++i) {
    x[static_cast<size_t>(i)] = static_cast<int>(code % N.size);
    code /= N.size;
  }
  long long out = 0, mult = 1;
  for (int c = 0; c < B.cols; ++c) {
    int acc = N.class_of(0);
    for (int r = 0; r < B.rows; ++r)
      acc = N.elem_add(acc, N.elem_smul(B.at(r, c), x[static_cast<size_t>(r)]));
    out += static_cast<long long>(acc) * mult;
    mult *= N.size;
  }
  return out;
}

int residue_field_size(const FiniteRing& R) {
  return R.q / (R.q - static_cast<int>(R.units.size()));
}

/**
 * Composition length of Z/B. Elements are codes with 0 the zero element; add
 * and smul realize the module operations on codes. Over a local ring every
 * composition factor is the residue field, so the length is read off the
 * group order; otherwise the subquotient is materialized.
 */
template <class Add, class Smul>
int quotient_length(const FiniteRing& R, std::vector<long long> Z, std::vector<long long> B,
                    Add add, Smul smul) {
  std::sort(Z.begin(), Z.end());
  Z.erase(std::unique(Z.begin(), Z.end()), Z.end());
  std::sort(B.begin(), B.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());
  for (long long b : B)
    if (!std::binary_search(Z.begin(), Z.end(), b))
      throw std::logic_error("cohomology: coboundaries escape the cocycles");
  if (B.empty()) throw std::logic_error("cohomology: empty coboundary set");

  if (R.is_local) {
    if (Z.size() % B.size()) throw std::logic_error("cohomology: order must divide");
    const long long h = static_cast<long long>(Z.size() / B.size());
    const int f = residue_field_size(R);
    int e = 0;
    long long v = 1;
    while (v < h) {
      v *= f;
      ++e;
    }
    if (v != h) throw std::logic_error("cohomology: order is not a residue-field power");
    return e;
  }

  if (Z.size() > 4096) throw std::invalid_argument("cohomology: cocycle set too large");
  const int n = static_cast<int>(Z.size());
  const auto idx = [&](long long v) {
    const auto it = std::lower_bound(Z.begin(), Z.end(), v);
    if (it == Z.end() || *it != v) throw std::logic_error("cohomology: set not closed");
    return static_cast<int>(it - Z.begin());
  };
  ActionModule A;
  A.R = &R;
  A.size = n;
  A.zero = idx(0);
  A.add_t.resize(static_cast<size_t>(n) * n);
  A.smul_t.resize(static_cast<size_t>(R.q) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      A.add_t[static_cast<size_t>(a) * n + b] =
          idx(add(Z[static_cast<size_t>(a)], Z[static_cast<size_t>(b)]));
  for (int r = 0; r < R.q; ++r)
    for (int a = 0; a < n; ++a)
      A.smul_t[static_cast<size_t>(r) * n + a] = idx(smul(r, Z[static_cast<size_t>(a)]));
  std::vector<int> sub;
  for (long long b : B) sub.push_back(idx(b));
  return length(quotient_action(A, sub));
}

// Cocycles and coboundaries of the Hom(-, N) complex at one spot: the group
// is N^rank, `out` the boundary map feeding the next spot, `in` (nullable)
// the one feeding this spot.
void hom_spot(const FinModule& N, int rank, const IMat& out, const IMat* in,
              std::vector<long long>& Z, std::vector<long long>& B) {
  if (out.rows != rank) throw std::logic_error("cohomology: outgoing map shape mismatch");
  const long long domain = pow_ll(N.size, rank, "hom complex");
  Z.clear();
  for (long long c = 0; c < domain; ++c)
    if (hom_transfer(N, out, c) == 0) Z.push_back(c);
  B.clear();
  if (in) {
    if (in->cols != rank) throw std::logic_error("cohomology: incoming map shape mismatch");
    const long long prev = pow_ll(N.size, in->rows, "hom complex");
    for (long long c = 0; c < prev; ++c) B.push_back(hom_transfer(N, *in, c));
  } else {
    B.push_back(0);
  }
}

int hom_spot_length(const FiniteRing& R, const FinModule& N, int rank, const IMat& out,
                    const IMat* in) {
  std::vector<long long> Z, B;
  hom_spot(N, rank, out, in, Z, B);
  return quotient_length(
      R, Z, B, [&](long long a, long long b) { return ntuple_add(N, rank, a, b); },
      [&](int s, long long c) { return ntuple_smul(N, rank, s, c); });
}

std::vector<int> idempotent_multiples(const FiniteRing& R, int e) {
  std::vector<int> v;
  for (int r = 0; r < R.q; ++r) v.push_back(R.mul(e, r));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> restricted_codes(const FiniteRing& R, int rank, const std::vector<int>& digits) {
  pow_ll(static_cast<int>(digits.size()), rank, "idempotent probe");
  std::vector<int> cur{0};
  int mult = 1;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> next;
    for (int base : cur)
      for (int d : digits) next.push_back(base + d * mult);
    cur = std::move(next);
    mult *= R.q;
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

bool restricted_exact_at(const FiniteRing& R, const std::vector<int>& digits, const IMat& in,
                         const IMat& out) {
  std::vector<int> ker;
  for (int c : restricted_codes(R, out.cols, digits))
    if (apply_mat(R, out, c) == 0) ker.push_back(c);
  std::vector<int> im;
  for (int c : restricted_codes(R, in.cols, digits)) im.push_back(apply_mat(R, in, c));
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return ker == im;
}

}  // namespace

int CompleteResolution::rank_at(int i) const {
  if (i < lo || i > hi) throw std::out_of_range("complete resolution: degree outside window");
  return ranks[static_cast<size_t>(i - lo)];
}

const IMat& CompleteResolution::d_at(int i) const {
  if (i < lo || i >= hi) throw std::out_of_range("complete resolution: no boundary at degree");
  return d[static_cast<size_t>(i - lo)];
}

CompleteResolution complete_resolution(const FinModule& M, int m) {
  const FiniteRing& R = *M.R;
  if (!R.self_injective)
    throw std::invalid_argument(
        "complete_resolution: " + R.name +
        " is not self-injective, splicing against the dual resolution is unsound");
  if (m < 1) throw std::invalid_argument("complete_resolution: window must be positive");

  CompleteResolution T;
  T.lo = -(m + 1);
  T.hi = m + 1;

  const ActionModule A = M.action();
  const ProjResolution left = proj_resolution_action(A, m + 1);
  const FinModule Rfree = FinModule::free_module(R, 1);
  const HomSet H = hom_set(M, Rfree);
  const ProjResolution right = proj_resolution_action(H.act, m);

  for (int i = m + 1; i >= 0; --i) T.ranks.push_back(left.ranks[static_cast<size_t>(i)]);
  for (int i = 1; i <= m + 1; ++i) T.ranks.push_back(right.ranks[static_cast<size_t>(i - 1)]);
  T.aug = left.aug;

  for (int i = m + 1; i >= 1; --i) T.d.push_back(left.boundary[static_cast<size_t>(i - 1)]);

  // Splice map: cover of M, evaluation into the double dual, then the dual of
  // the cover of Hom(M, R). Entry (j, t) is psi_j(m_t).
  IMat D0 = IMat::zero(R, right.ranks[0], left.ranks[0]);
  for (int j = 0; j < right.ranks[0]; ++j) {
    const std::vector<int>& psi = H.tuples[static_cast<size_t>(right.aug[static_cast<size_t>(j)])];
    for (int t = 0; t < left.ranks[0]; ++t)
      D0.at(j, t) = Rfree.reps[static_cast<size_t>(
          apply_hom(M, Rfree, psi, left.aug[static_cast<size_t>(t)]))];
  }
  T.d.push_back(D0);
  for (int i = 1; i <= m; ++i)
    T.d.push_back(transpose_mat(right.boundary[static_cast<size_t>(i - 1)]));

  T.dd_zero = true;
  for (size_t k = 0; k + 1 < T.d.size(); ++k) {
    const IMat C = mat_mul(R, T.d[k + 1], T.d[k]);
    for (int v : C.a) T.dd_zero = T.dd_zero && v == R.zero;
  }

  T.exact_interior = left.exact && right.exact;
  for (int i = T.lo + 1; i < T.hi && T.exact_interior; ++i)
    T.exact_interior = mat_kernel(R, T.d_at(i)) == mat_image(R, T.d_at(i - 1));

  // M must be exactly what the splice sees at degree 0: the cover's kernel
  // dies in d^0 and the image is a faithful copy of M.
  {
    const int r0 = left.ranks[0];
    bool ok = true;
    const long long domain = pow_ll(R.q, r0, "comparison");
    for (long long code = 0; code < domain && ok; ++code) {
      int acc = A.zero;
      long long rest = code;
      for (int i = 0; i < r0; ++i) {
        acc = A.add(acc, A.smul(static_cast<int>(rest % R.q), T.aug[static_cast<size_t>(i)]));
        rest /= R.q;
      }
      if (acc == A.zero) ok = apply_mat(R, D0, static_cast<int>(code)) == 0;
    }
    T.comparison_ok = ok && static_cast<int>(mat_image(R, D0).size()) == M.size;
  }

  T.hom_proj_exact = true;
  T.hom_inj_exact = true;
  for (int e : R.idempotents) {
    const std::vector<int> digits = idempotent_multiples(R, e);
    for (int i = T.lo + 1; i < T.hi; ++i) {
      T.hom_inj_exact =
          T.hom_inj_exact && restricted_exact_at(R, digits, T.d_at(i - 1), T.d_at(i));
      T.hom_proj_exact = T.hom_proj_exact && restricted_exact_at(R, digits,
                                                                 transpose_mat(T.d_at(i)),
                                                                 transpose_mat(T.d_at(i - 1)));
    }
  }

  T.period = (left.period > 0 && right.period > 0) ? std::lcm(left.period, right.period) : 0;
  return T;
}

int TateTable::at(int i) const {
  for (const auto& [deg, dim] : dims)
    if (deg == i) return dim;
  throw std::out_of_range("tate table: degree not tabulated");
}

int ext_dim(const ProjResolution& PR, const FinModule& N, int i) {
  if (i < 0) throw std::invalid_argument("ext_dim: negative degree");
  if (static_cast<size_t>(i) >= PR.boundary.size())
    throw std::invalid_argument("ext_dim: resolution too short");
  return hom_spot_length(*N.R, N, PR.ranks[static_cast<size_t>(i)],
                         PR.boundary[static_cast<size_t>(i)],
                         i >= 1 ? &PR.boundary[static_cast<size_t>(i - 1)] : nullptr);
}

int ext_dim(const FinModule& M, const FinModule& N, int i) {
  if (i < 0) throw std::invalid_argument("ext_dim: negative degree");
  return ext_dim(proj_resolution(M, i + 1), N, i);
}

TateTable tate_table(const CompleteResolution& T, const FinModule& N, int ilo, int ihi) {
  if (ilo > ihi) throw std::invalid_argument("tate_table: empty range");
  if (T.lo > -ihi - 1 || T.hi < -ilo + 1)
    throw std::invalid_argument("tate_table: window does not cover the range");
  TateTable out;
  for (int i = ilo; i <= ihi; ++i) {
    const IMat& bout = T.d_at(-i - 1);
    const IMat& bin = T.d_at(-i);
    out.dims.emplace_back(i, hom_spot_length(*N.R, N, T.rank_at(-i), bout, &bin));
  }
  return out;
}

TateTable tate_table(const FinModule& M, const FinModule& N, int ilo, int ihi) {
  const int m = std::max(std::abs(ilo), std::abs(ihi)) + 2;
  const CompleteResolution T = complete_resolution(M, m);
  if (!T.certified())
    throw std::runtime_error("tate_table: complete resolution failed certification");
  return tate_table(T, N, ilo, ihi);
}

TateTable tate_table_injective_side(const FinModule& M, const FinModule& N, int ilo, int ihi) {
  if (ilo > ihi) throw std::invalid_argument("tate_table: empty range");
  const FiniteRing& R = *M.R;
  const int m = std::max({-ilo, ihi + 2, 2});
  const CompleteResolution U = complete_resolution(N, m);
  if (!U.certified())
    throw std::runtime_error("tate_table: complete resolution failed certification");

  // Homs M -> R^rank as image tuples of M's generators, free codes.
  struct Spot {
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> index;
  };
  std::map<int, Spot> spots;  // keyed by degree of U
  const auto spot_at = [&](int deg) -> Spot& {
    auto it = spots.find(deg);
    if (it != spots.end()) return it->second;
    Spot s;
    s.tuples = hom_tuples(M, FinModule::free_module(R, U.rank_at(deg)));
    for (size_t k = 0; k < s.tuples.size(); ++k)
      s.index[s.tuples[k]] = static_cast<int>(k);
    return spots.emplace(deg, std::move(s)).first->second;
  };
  const auto post = [&](const std::vector<int>& tuple, const IMat& D) {
    std::vector<int> out(tuple.size());
    for (size_t j = 0; j < tuple.size(); ++j) out[j] = apply_mat(R, D, tuple[j]);
    return out;
  };

  TateTable table;
  for (int i = ilo; i <= ihi; ++i) {
    Spot& cur = spot_at(i + 1);
    Spot& prev = spot_at(i);
    const IMat& dout = U.d_at(i + 1);
    const IMat& din = U.d_at(i);
    const std::vector<int> zero_next(static_cast<size_t>(M.gens),
                                     0);  // zero map has all-zero codes
    std::vector<long long> Z, B;
    for (size_t k = 0; k < cur.tuples.size(); ++k)
      if (post(cur.tuples[k], dout) == zero_next) Z.push_back(static_cast<long long>(k));
    for (const auto& t : prev.tuples) B.push_back(cur.index.at(post(t, din)));
    const int rank = U.rank_at(i + 1);
    const auto add = [&](long long a, long long b) {
      std::vector<int> s(static_cast<size_t>(M.gens));
      for (int j = 0; j < M.gens; ++j)
        s[static_cast<size_t>(j)] =
            free_code_add(R, rank, cur.tuples[static_cast<size_t>(a)][static_cast<size_t>(j)],
                          cur.tuples[static_cast<size_t>(b)][static_cast<size_t>(j)]);
      return static_cast<long long>(cur.index.at(s));
    };
    const auto smul = [&](int r, long long a) {
      std::vector<int> s(static_cast<size_t>(M.gens));
      for (int j = 0; j < M.gens; ++j)
        s[static_cast<size_t>(j)] = free_code_smul(
            R, rank, r, cur.tuples[static_cast<size_t>(a)][static_cast<size_t>(j)]);
      return static_cast<long long>(cur.index.at(s));
    };
    table.dims.emplace_back(i, quotient_length(R, Z, B, add, smul));
  }
  return table;
}

int tate_ext_dim(const FinModule& M, const FinModule& N, int i) {
  return tate_table(M, N, i, i).at(i);
}

int gext_dim(const FinModule& M, const FinModule& N, int i) {
  if (i < 0) throw std::invalid_argument("gext_dim: negative degree");
  if (i == 0) return length(hom_set(M, N).act);
  const CompleteResolution T = complete_resolution(M, 2);
  if (!T.certified())
    throw std::runtime_error("gext_dim: Gorenstein-projective witness failed certification");
  return 0;
}

AmReport am_sequence_check(const FinModule& M, const FinModule& N, int maxdeg) {
  if (maxdeg < 1) throw std::invalid_argument("am_sequence_check: degree must be positive");
  const FiniteRing& R = *M.R;
  const ProjResolution PR = proj_resolution(M, maxdeg + 1);
  const CompleteResolution T = complete_resolution(M, maxdeg + 2);
  if (!T.certified())
    throw std::runtime_error("am_sequence_check: complete resolution failed certification");

  AmReport rep;
  rep.exact = PR.exact;
  for (int i = 1; i <= maxdeg; ++i) {
    std::vector<long long> Ze, Be, Zt, Bt;
    hom_spot(N, PR.ranks[static_cast<size_t>(i)], PR.boundary[static_cast<size_t>(i)],
             &PR.boundary[static_cast<size_t>(i - 1)], Ze, Be);
    hom_spot(N, T.rank_at(-i), T.d_at(-i - 1), &T.d_at(-i), Zt, Bt);

    const auto dim = [&](int rank, const std::vector<long long>& Z,
                         const std::vector<long long>& B) {
      return quotient_length(
          R, Z, B, [&](long long a, long long b) { return ntuple_add(N, rank, a, b); },
          [&](int s, long long c) { return ntuple_smul(N, rank, s, c); });
    };
    AmRow row;
    row.i = i;
    row.gext = 0;  // certified complete resolution above is the witness
    row.ext = dim(PR.ranks[static_cast<size_t>(i)], Ze, Be);
    row.tate = dim(T.rank_at(-i), Zt, Bt);
    std::sort(Ze.begin(), Ze.end());
    std::sort(Zt.begin(), Zt.end());
    std::sort(Be.begin(), Be.end());
    std::sort(Bt.begin(), Bt.end());
    Be.erase(std::unique(Be.begin(), Be.end()), Be.end());
    Bt.erase(std::unique(Bt.begin(), Bt.end()), Bt.end());
    row.iso_ext_tate =
        PR.ranks[static_cast<size_t>(i)] == T.rank_at(-i) && Ze == Zt && Be == Bt;
    rep.exact = rep.exact && row.gext == 0 && row.iso_ext_tate && row.ext == row.tate;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace qcoh::gor
