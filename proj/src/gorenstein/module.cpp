#include "qcoh/gorenstein/module.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qcoh::gor {
namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("FinModule: " + msg);
}

constexpr long long kMaxAmbient = 1 << 20;
constexpr long long kMaxHomSpace = 1 << 22;

int checked_pow(int base, int exp, long long cap, const char* what) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) fail(std::string(what) + " enumeration too large");
  }
  return static_cast<int>(v);
}

}  // namespace

void ActionModule::validate() const {
  const FiniteRing& r = *R;
  for (int a = 0; a < size; ++a) {
    if (add(zero, a) != a) fail("zero is not neutral");
    for (int b = 0; b < size; ++b) {
      if (add(a, b) != add(b, a)) fail("addition not commutative");
      for (int c = 0; c < size; ++c)
        if (add(add(a, b), c) != add(a, add(b, c))) fail("addition not associative");
    }
  }
  for (int s = 0; s < r.q; ++s)
    for (int t = 0; t < r.q; ++t)
      for (int a = 0; a < size; ++a) {
        if (smul(r.mul(s, t), a) != smul(s, smul(t, a))) fail("action not associative");
        if (smul(r.add(s, t), a) != add(smul(s, a), smul(t, a)))
          fail("action not additive in scalars");
      }
  for (int s = 0; s < r.q; ++s)
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        if (smul(s, add(a, b)) != add(smul(s, a), smul(s, b)))
          fail("action not additive in elements");
  for (int a = 0; a < size; ++a) {
    if (smul(r.one, a) != a) fail("unit does not act as identity");
    if (smul(r.zero, a) != zero) fail("zero scalar does not annihilate");
  }
}

std::vector<int> action_span(const ActionModule& A, const std::vector<int>& seed) {
  std::vector<char> in(static_cast<size_t>(A.size), 0);
  std::vector<int> stack;
  const auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      stack.push_back(x);
    }
  };
  push(A.zero);
  for (int s : seed)
    for (int r = 0; r < A.R->q; ++r) push(A.smul(r, s));
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < A.size; ++y)
      if (in[static_cast<size_t>(y)]) push(A.add(x, y));
  }
  std::vector<int> out;
  for (int x = 0; x < A.size; ++x)
    if (in[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

std::vector<int> minimal_action_generators(const ActionModule& A) {
  std::vector<int> gens;
  std::vector<int> current{A.zero};
  for (int x = 0; x < A.size; ++x) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = action_span(A, gens);
    if (static_cast<int>(current.size()) == A.size) break;
  }
  for (size_t i = 0; i < gens.size();) {
    std::vector<int> rest;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (static_cast<int>(action_span(A, rest).size()) == A.size)
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

ActionModule quotient_action(const ActionModule& A, const std::vector<int>& sub,
                             std::vector<int>* coset_of_out) {
  std::vector<int> coset_of(static_cast<size_t>(A.size), -1);
  std::vector<int> reps;
  for (int x = 0; x < A.size; ++x) {
    if (coset_of[static_cast<size_t>(x)] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int s : sub) coset_of[static_cast<size_t>(A.add(x, s))] = idx;
  }
  ActionModule Q;
  Q.R = A.R;
  Q.size = static_cast<int>(reps.size());
  Q.zero = coset_of[static_cast<size_t>(A.zero)];
  Q.add_t.resize(static_cast<size_t>(Q.size) * Q.size);
  Q.smul_t.resize(static_cast<size_t>(A.R->q) * Q.size);
  for (int a = 0; a < Q.size; ++a)
    for (int b = 0; b < Q.size; ++b)
      Q.add_t[static_cast<size_t>(a) * Q.size + b] =
          coset_of[static_cast<size_t>(A.add(reps[static_cast<size_t>(a)],
                                              reps[static_cast<size_t>(b)]))];
  for (int r = 0; r < A.R->q; ++r)
    for (int a = 0; a < Q.size; ++a)
      Q.smul_t[static_cast<size_t>(r) * Q.size + a] =
          coset_of[static_cast<size_t>(A.smul(r, reps[static_cast<size_t>(a)]))];
  if (coset_of_out) *coset_of_out = std::move(coset_of);
  return Q;
}

// ---- free-module codes -------------------------------------------------

int free_code_add(const FiniteRing& R, int rank, int c1, int c2) {
  int out = 0, mult = 1;
  for (int i = 0; i < rank; ++i) {
    out += R.add(c1 % R.q, c2 % R.q) * mult;
    c1 /= R.q;
    c2 /= R.q;
    mult *= R.q;
  }
  return out;
}

int free_code_smul(const FiniteRing& R, int rank, int r, int c) {
  int out = 0, mult = 1;
  for (int i = 0; i < rank; ++i) {
    out += R.mul(r, c % R.q) * mult;
    c /= R.q;
    mult *= R.q;
  }
  return out;
}

std::vector<int> span_codes(const FiniteRing& R, int rank, const std::vector<int>& seed) {
  const int ambient = checked_pow(R.q, rank, kMaxAmbient, "free module");
  std::vector<char> in(static_cast<size_t>(ambient), 0);
  std::vector<int> stack;
  const auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      stack.push_back(x);
    }
  };
  push(0);
  for (int s : seed)
    for (int r = 0; r < R.q; ++r) push(free_code_smul(R, rank, r, s));
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (size_t i = 0; i < static_cast<size_t>(ambient); ++i)
      if (in[i]) push(free_code_add(R, rank, x, static_cast<int>(i)));
  }
  std::vector<int> out;
  for (int x = 0; x < ambient; ++x)
    if (in[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

std::vector<int> minimal_code_generators(const FiniteRing& R, int rank,
                                         const std::vector<int>& sub) {
  std::vector<int> gens;
  std::vector<int> current{0};
  for (int x : sub) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = span_codes(R, rank, gens);
    if (current == sub) break;
  }
  for (size_t i = 0; i < gens.size();) {
    std::vector<int> rest;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (span_codes(R, rank, rest) == sub)
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

ActionModule submodule_action(const FiniteRing& R, int rank, const std::vector<int>& sub) {
  ActionModule A;
  A.R = &R;
  A.size = static_cast<int>(sub.size());
  const auto index_of = [&](int code) {
    return static_cast<int>(std::lower_bound(sub.begin(), sub.end(), code) - sub.begin());
  };
  A.zero = index_of(0);
  A.add_t.resize(static_cast<size_t>(A.size) * A.size);
  A.smul_t.resize(static_cast<size_t>(R.q) * A.size);
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b)
      A.add_t[static_cast<size_t>(a) * A.size + b] = index_of(
          free_code_add(R, rank, sub[static_cast<size_t>(a)], sub[static_cast<size_t>(b)]));
  for (int r = 0; r < R.q; ++r)
    for (int a = 0; a < A.size; ++a)
      A.smul_t[static_cast<size_t>(r) * A.size + a] =
          index_of(free_code_smul(R, rank, r, sub[static_cast<size_t>(a)]));
  return A;
}

// ---- FinModule ----------------------------------------------------------

FinModule FinModule::cokernel(const FiniteRing& R, int gens, std::vector<std::vector<int>> rels) {
  if (gens < 0) fail("negative generator count");
  for (const auto& col : rels)
    if (static_cast<int>(col.size()) != gens) fail("relation column length mismatch");

  FinModule M;
  M.R = &R;
  M.gens = gens;
  M.rels = std::move(rels);
  M.ambient = checked_pow(R.q, gens, kMaxAmbient, "presentation");

  std::vector<int> seed;
  for (const auto& col : M.rels) {
    int code = 0, mult = 1;
    for (int i = 0; i < gens; ++i) {
      const int e = col[static_cast<size_t>(i)];
      if (e < 0 || e >= R.q) fail("relation entry out of range");
      code += e * mult;
      mult *= R.q;
    }
    seed.push_back(code);
  }
  const std::vector<int> sub = span_codes(R, gens, seed);

  M.coset_of.assign(static_cast<size_t>(M.ambient), -1);
  for (int code = 0; code < M.ambient; ++code) {
    if (M.coset_of[static_cast<size_t>(code)] >= 0) continue;
    const int idx = static_cast<int>(M.reps.size());
    M.reps.push_back(code);
    for (int s : sub)
      M.coset_of[static_cast<size_t>(free_code_add(R, gens, code, s))] = idx;
  }
  M.size = static_cast<int>(M.reps.size());
  return M;
}

FinModule FinModule::free_module(const FiniteRing& R, int rank) {
  return cokernel(R, rank, {});
}

FinModule FinModule::from_action(const ActionModule& A) {
  const std::vector<int> gens = minimal_action_generators(A);
  const int s = static_cast<int>(gens.size());
  const int tuples = checked_pow(A.R->q, s, kMaxAmbient, "presentation recovery");
  std::vector<int> kernel;
  for (int code = 0; code < tuples; ++code) {
    int rest = code, acc = A.zero;
    for (int i = 0; i < s; ++i) {
      acc = A.add(acc, A.smul(rest % A.R->q, gens[static_cast<size_t>(i)]));
      rest /= A.R->q;
    }
    if (acc == A.zero) kernel.push_back(code);
  }
  std::vector<std::vector<int>> rels;
  for (int g : minimal_code_generators(*A.R, s, kernel)) {
    std::vector<int> col(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) {
      col[static_cast<size_t>(i)] = g % A.R->q;
      g /= A.R->q;
    }
    rels.push_back(std::move(col));
  }
  return cokernel(*A.R, s, std::move(rels));
}

int FinModule::code_digit(int code, int i) const {
  for (int k = 0; k < i; ++k) code /= R->q;
  return code % R->q;
}

int FinModule::code_add(int c1, int c2) const { return free_code_add(*R, gens, c1, c2); }
int FinModule::code_smul(int r, int c) const { return free_code_smul(*R, gens, r, c); }

int FinModule::gen_class(int j) const {
  int code = 1;
  for (int i = 0; i < j; ++i) code *= R->q;
  return class_of(gens == 0 ? 0 : code);
}

ActionModule FinModule::action() const {
  ActionModule A;
  A.R = R;
  A.size = size;
  A.zero = class_of(0);
  A.add_t.resize(static_cast<size_t>(size) * size);
  A.smul_t.resize(static_cast<size_t>(R->q) * size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      A.add_t[static_cast<size_t>(a) * size + b] = elem_add(a, b);
  for (int r = 0; r < R->q; ++r)
    for (int a = 0; a < size; ++a)
      A.smul_t[static_cast<size_t>(r) * size + a] = elem_smul(r, a);
  return A;
}

std::string FinModule::describe() const {
  if (size == 1) return "0";
  std::string out = gens == 1 ? "R" : "R^" + std::to_string(gens);
  if (rels.empty()) return out;
  out += "/(";
  for (size_t c = 0; c < rels.size(); ++c) {
    if (c) out += ";";
    if (gens != 1) out += "(";
    for (int i = 0; i < gens; ++i) {
      if (i) out += ",";
      out += R->elem_name(rels[c][static_cast<size_t>(i)]);
    }
    if (gens != 1) out += ")";
  }
  out += ")";
  return out;
}

// ---- homomorphisms ------------------------------------------------------

std::vector<std::vector<int>> hom_tuples(const FinModule& M, const FinModule& N) {
  if (M.R != N.R) fail("homomorphisms need a common ring");
  long long space = 1;
  for (int i = 0; i < M.gens; ++i) {
    space *= N.size;
    if (space > kMaxHomSpace) fail("homomorphism enumeration too large");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(static_cast<size_t>(M.gens));
  for (long long code = 0; code < space; ++code) {
    long long rest = code;
    for (int i = 0; i < M.gens; ++i) {
      tuple[static_cast<size_t>(i)] = static_cast<int>(rest % N.size);
      rest /= N.size;
    }
    bool ok = true;
    for (const auto& col : M.rels) {
      int acc = N.class_of(0);
      for (int i = 0; i < M.gens; ++i)
        acc = N.elem_add(acc, N.elem_smul(col[static_cast<size_t>(i)],
                                          tuple[static_cast<size_t>(i)]));
      if (acc != N.class_of(0)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(tuple);
  }
  return out;
}

int apply_hom(const FinModule& M, const FinModule& N, const std::vector<int>& tuple, int elem) {
  const int code = M.reps[static_cast<size_t>(elem)];
  int acc = N.class_of(0);
  for (int i = 0; i < M.gens; ++i)
    acc = N.elem_add(acc, N.elem_smul(M.code_digit(code, i), tuple[static_cast<size_t>(i)]));
  return acc;
}

HomSet hom_set(const FinModule& M, const FinModule& N) {
  HomSet H;
  H.tuples = hom_tuples(M, N);
  const int n = static_cast<int>(H.tuples.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[H.tuples[static_cast<size_t>(i)]] = i;

  H.act.R = M.R;
  H.act.size = n;
  H.act.add_t.resize(static_cast<size_t>(n) * n);
  H.act.smul_t.resize(static_cast<size_t>(M.R->q) * n);
  std::vector<int> tmp(static_cast<size_t>(M.gens));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < M.gens; ++i)
        tmp[static_cast<size_t>(i)] = N.elem_add(H.tuples[static_cast<size_t>(a)][static_cast<size_t>(i)],
                                                 H.tuples[static_cast<size_t>(b)][static_cast<size_t>(i)]);
      H.act.add_t[static_cast<size_t>(a) * n + b] = index.at(tmp);
    }
  for (int r = 0; r < M.R->q; ++r)
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < M.gens; ++i)
        tmp[static_cast<size_t>(i)] =
            N.elem_smul(r, H.tuples[static_cast<size_t>(a)][static_cast<size_t>(i)]);
      H.act.smul_t[static_cast<size_t>(r) * n + a] = index.at(tmp);
    }
  std::vector<int> zero(static_cast<size_t>(M.gens), N.class_of(0));
  H.act.zero = index.at(zero);
  return H;
}

int length(const ActionModule& A) {
  if (A.size <= 1) return 0;
  int best = -1, best_size = A.size + 1;
  for (int x = 0; x < A.size; ++x) {
    if (x == A.zero) continue;
    const std::vector<int> orbit = action_span(A, {x});
    if (static_cast<int>(orbit.size()) < best_size && orbit.size() > 1) {
      best = x;
      best_size = static_cast<int>(orbit.size());
    }
  }
  if (best < 0) fail("no nonzero cyclic submodule found");
  const std::vector<int> simple = action_span(A, {best});
  return 1 + length(quotient_action(A, simple));
}

int length(const FinModule& M) { return length(M.action()); }

bool is_projective(const FinModule& M) {
  if (M.size == 1) return true;
  const FinModule F = FinModule::free_module(*M.R, M.gens);
  for (const auto& tuple : hom_tuples(M, F)) {
    bool splits = true;
    for (int j = 0; j < M.gens && splits; ++j)
      splits = M.class_of(F.reps[static_cast<size_t>(tuple[static_cast<size_t>(j)])]) ==
               M.gen_class(j);
    if (splits) return true;
  }
  return false;
}

bool is_injective(const FinModule& M) {
  const FiniteRing& R = *M.R;
  for (const auto& ideal : R.ideals) {
    if (static_cast<int>(ideal.size()) == R.q || ideal.size() == 1) continue;
    const std::vector<int> gens = minimal_ideal_generators(R, ideal);
    const int s = static_cast<int>(gens.size());
    const int rcodes = checked_pow(R.q, s, kMaxAmbient, "ideal relation");
    std::vector<std::vector<int>> rels;
    for (int code = 0; code < rcodes; ++code) {
      int rest = code, acc = R.zero;
      std::vector<int> rv(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        rv[static_cast<size_t>(i)] = rest % R.q;
        rest /= R.q;
        acc = R.add(acc, R.mul(rv[static_cast<size_t>(i)], gens[static_cast<size_t>(i)]));
      }
      if (acc == R.zero) rels.push_back(std::move(rv));
    }
    long long space = 1;
    for (int i = 0; i < s; ++i) {
      space *= M.size;
      if (space > kMaxHomSpace) fail("Baer enumeration too large");
    }
    for (long long code = 0; code < space; ++code) {
      long long rest = code;
      std::vector<int> img(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        img[static_cast<size_t>(i)] = static_cast<int>(rest % M.size);
        rest /= M.size;
      }
      bool valid = true;
      for (const auto& rv : rels) {
        int acc = M.class_of(0);
        for (int i = 0; i < s; ++i)
          acc = M.elem_add(acc, M.elem_smul(rv[static_cast<size_t>(i)],
                                            img[static_cast<size_t>(i)]));
        if (acc != M.class_of(0)) {
          valid = false;
          break;
        }
      }
      if (!valid) continue;
      bool extends = false;
      for (int y = 0; y < M.size && !extends; ++y) {
        bool ok = true;
        for (int i = 0; i < s; ++i)
          if (M.elem_smul(gens[static_cast<size_t>(i)], y) != img[static_cast<size_t>(i)]) {
            ok = false;
            break;
          }
        extends = ok;
      }
      if (!extends) return false;
    }
  }
  return true;
}

bool are_isomorphic(const FinModule& M, const FinModule& N) {
  if (M.R != N.R || M.size != N.size) return false;
  if (M.size == 1) return true;
  for (const auto& tuple : hom_tuples(M, N)) {
    std::vector<char> hit(static_cast<size_t>(N.size), 0);
    int count = 0;
    for (int m = 0; m < M.size; ++m) {
      const int y = apply_hom(M, N, tuple, m);
      if (!hit[static_cast<size_t>(y)]) {
        hit[static_cast<size_t>(y)] = 1;
        ++count;
      }
    }
    if (count == N.size) return true;
  }
  return false;
}

FinModule dual_module(const FinModule& M) {
  return FinModule::from_action(hom_set(M, FinModule::free_module(*M.R, 1)).act);
}

FinModule parse_module(const FiniteRing& R, const std::string& spec) {
  if (spec == "R") return FinModule::free_module(R, 1);
  if (spec == "k") {
    if (!R.is_local)
      fail("module 'k' (residue field) needs a local ring; " + R.name + " is not local");
    std::vector<char> unit(static_cast<size_t>(R.q), 0);
    for (int u : R.units) unit[static_cast<size_t>(u)] = 1;
    std::vector<int> rad;
    for (int a = 0; a < R.q; ++a)
      if (!unit[static_cast<size_t>(a)]) rad.push_back(a);
    std::vector<std::vector<int>> rels;
    for (int g : minimal_ideal_generators(R, rad)) rels.push_back({g});
    return FinModule::cokernel(R, 1, std::move(rels));
  }
  const size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon), tail = spec.substr(colon + 1);
    if (head == "free") {
      int rank = 0;
      try {
        size_t used = 0;
        rank = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument(tail);
      } catch (const std::logic_error&) {
        fail("unreadable rank in '" + spec + "'");
      }
      if (rank < 0 || rank > 4) fail("free rank out of range in '" + spec + "'");
      return FinModule::free_module(R, rank);
    }
    if (head == "quot") {
      std::vector<std::vector<int>> rels;
      size_t start = 0;
      while (start <= tail.size()) {
        const size_t comma = tail.find(',', start);
        const std::string lit =
            tail.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (lit.empty()) fail("empty element literal in '" + spec + "'");
        rels.push_back({parse_element(R, lit)});
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return FinModule::cokernel(R, 1, std::move(rels));
    }
  }
  fail("unreadable module spec '" + spec + "' (expected k, R, free:g or quot:c1,...)");
}

}  // namespace qcoh::gor
