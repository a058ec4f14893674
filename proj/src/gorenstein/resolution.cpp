#include "qcoh/gorenstein/resolution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace qcoh::gor {
namespace {

constexpr long long kMaxCodes = 1 << 20;

int pow_checked(int base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > kMaxCodes) throw std::invalid_argument("resolution: code space too large");
  }
  return static_cast<int>(v);
}

std::vector<int> code_digits(const FiniteRing& R, int rank, int code) {
  std::vector<int> d(static_cast<size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    d[static_cast<size_t>(i)] = code % R.q;
    code /= R.q;
  }
  return d;
}

}  // namespace

IMat IMat::zero(const FiniteRing& R, int rows, int cols) {
  IMat A;
  A.rows = rows;
  A.cols = cols;
  A.a.assign(static_cast<size_t>(rows) * cols, R.zero);
  return A;
}

int apply_mat(const FiniteRing& R, const IMat& A, int code) {
  const std::vector<int> x = code_digits(R, A.cols, code);
  int out = 0, mult = 1;
  for (int r = 0; r < A.rows; ++r) {
    int acc = R.zero;
    for (int c = 0; c < A.cols; ++c)
      acc = R.add(acc, R.mul(A.at(r, c), x[static_cast<size_t>(c)]));
    out += acc * mult;
    mult *= R.q;
  }
  return out;
}

IMat mat_mul(const FiniteRing& R, const IMat& A, const IMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("resolution: matrix shape mismatch");
  IMat C = IMat::zero(R, A.rows, B.cols);
  for (int r = 0; r < A.rows; ++r)
    for (int c = 0; c < B.cols; ++c) {
      int acc = R.zero;
      for (int k = 0; k < A.cols; ++k) acc = R.add(acc, R.mul(A.at(r, k), B.at(k, c)));
      C.at(r, c) = acc;
    }
  return C;
}

IMat transpose_mat(const IMat& A) {
  IMat T;
  T.rows = A.cols;
  T.cols = A.rows;
  T.a.resize(A.a.size());
  for (int r = 0; r < A.rows; ++r)
    for (int c = 0; c < A.cols; ++c) T.at(c, r) = A.at(r, c);
  return T;
}

std::vector<int> mat_kernel(const FiniteRing& R, const IMat& A) {
  const int domain = pow_checked(R.q, A.cols);
  std::vector<int> out;
  for (int code = 0; code < domain; ++code)
    if (apply_mat(R, A, code) == 0) out.push_back(code);
  return out;
}

std::vector<int> mat_image(const FiniteRing& R, const IMat& A) {
  std::vector<int> cols;
  for (int c = 0; c < A.cols; ++c) {
    int code = 0, mult = 1;
    for (int r = 0; r < A.rows; ++r) {
      code += A.at(r, c) * mult;
      mult *= R.q;
    }
    cols.push_back(code);
  }
  return span_codes(R, A.rows, cols);
}

ProjResolution proj_resolution_action(const ActionModule& A, int len) {
  if (len < 0) throw std::invalid_argument("resolution: negative length");
  const FiniteRing& R = *A.R;
  ProjResolution res;

  res.aug = minimal_action_generators(A);
  const int r0 = static_cast<int>(res.aug.size());
  res.ranks.push_back(r0);

  // Kernel of the cover R^{r0} ->> A.
  std::vector<int> syz;
  {
    const int domain = pow_checked(R.q, r0);
    for (int code = 0; code < domain; ++code) {
      int acc = A.zero, rest = code;
      for (int i = 0; i < r0; ++i) {
        acc = A.add(acc, A.smul(rest % R.q, res.aug[static_cast<size_t>(i)]));
        rest /= R.q;
      }
      if (acc == A.zero) syz.push_back(code);
    }
  }
  bool exact = static_cast<int>(action_span(A, res.aug).size()) == A.size;

  std::map<std::pair<int, std::vector<int>>, int> seen;
  seen[{r0, syz}] = 0;

  for (int step = 0; step < len; ++step) {
    const int rank = res.ranks.back();
    const std::vector<int> gens = minimal_code_generators(R, rank, syz);
    const int next_rank = static_cast<int>(gens.size());

    IMat B = IMat::zero(R, rank, next_rank);
    for (int c = 0; c < next_rank; ++c) {
      const std::vector<int> d = code_digits(R, rank, gens[static_cast<size_t>(c)]);
      for (int r = 0; r < rank; ++r) B.at(r, c) = d[static_cast<size_t>(r)];
    }

    // im(B) is the span of the chosen generators; exactness here is the
    // statement that it fills the previous kernel.
    exact = exact && mat_image(R, B) == syz;

    res.ranks.push_back(next_rank);
    res.boundary.push_back(B);
    syz = mat_kernel(R, B);

    const auto key = std::make_pair(next_rank, syz);
    const auto it = seen.find(key);
    if (it != seen.end() && res.period == 0) {
      res.preperiod = it->second;
      res.period = step + 1 - it->second;
    } else if (it == seen.end()) {
      seen[key] = step + 1;
    }
  }
  res.exact = exact;
  return res;
}

ProjResolution proj_resolution(const FinModule& M, int len) {
  return proj_resolution_action(M.action(), len);
}

namespace {

bool fits(long long base, int exp, long long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) return false;
  }
  return true;
}

}  // namespace

std::optional<int> projective_dimension(const FinModule& M, int horizon) {
  if (is_projective(M)) return 0;
  const FiniteRing& R = *M.R;
  const ActionModule A = M.action();

  std::vector<int> aug = minimal_action_generators(A);
  int rank = static_cast<int>(aug.size());
  std::vector<int> syz;
  {
    const int domain = pow_checked(R.q, rank);
    for (int code = 0; code < domain; ++code) {
      int acc = A.zero, rest = code;
      for (int i = 0; i < rank; ++i) {
        acc = A.add(acc, A.smul(rest % R.q, aug[static_cast<size_t>(i)]));
        rest /= R.q;
      }
      if (acc == A.zero) syz.push_back(code);
    }
  }

  std::map<std::pair<int, std::vector<int>>, int> seen;
  seen[{rank, syz}] = 0;

  for (int i = 1; i <= horizon; ++i) {
    // Budget escape on runaway syzygy ranks. Sound because the ring is
    // finite, hence artinian of depth zero: finite projective dimension
    // already forces projectivity, which was ruled out above.
    if (!fits(R.q, rank, 1 << 18)) return std::nullopt;

    // syz is the i-th syzygy of M inside R^rank.
    const FinModule S = FinModule::from_action(submodule_action(R, rank, syz));
    if (!fits(static_cast<long long>(S.ambient), S.gens, 1 << 22)) return std::nullopt;
    if (is_projective(S)) return i;

    const std::vector<int> gens = minimal_code_generators(R, rank, syz);
    const int next_rank = static_cast<int>(gens.size());
    IMat B = IMat::zero(R, rank, next_rank);
    for (int c = 0; c < next_rank; ++c) {
      const std::vector<int> d = code_digits(R, rank, gens[static_cast<size_t>(c)]);
      for (int r = 0; r < rank; ++r) B.at(r, c) = d[static_cast<size_t>(r)];
    }
    rank = next_rank;
    syz = mat_kernel(R, B);

    const auto key = std::make_pair(rank, syz);
    if (seen.count(key)) return std::nullopt;  // cycle of non-projective syzygies
    seen[key] = i;
  }
  throw std::runtime_error("projective_dimension: horizon exceeded without a cycle");
}

std::optional<int> injective_dimension(const FinModule& M, int horizon) {
  if (!M.R->self_injective)
    throw std::invalid_argument(
        "injective_dimension: duality route needs a self-injective ring");
  return projective_dimension(dual_module(M), horizon);
}

}  // namespace qcoh::gor
