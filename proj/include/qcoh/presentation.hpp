#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/rational.hpp"
#include "qcoh/section.hpp"

namespace qcoh {

// One Laurent-free monomial summand c * x^e of a matrix entry. Exponents are
// nonnegative: entries are maps of twisted free sheaves, given by multiplying
// with honest polynomials.
struct Term {
  Exponents exp;
  Rational coeff;
};

// A homogeneous polynomial entry as a formal sum of terms; kept normalized
// (distinct exponents, lex sorted, zero coefficients dropped).
using Entry = std::vector<Term>;

inline Entry normalize_entry(Entry e) {
  std::map<uint64_t, std::pair<Exponents, Rational>> acc;
  for (auto& t : e) {
    auto [it, fresh] = acc.try_emplace(exp_key(t.exp), t.exp, Rational(0));
    it->second.second += t.coeff;
  }
  Entry out;
  for (auto& [k, v] : acc) {
    if (v.second != 0) out.push_back(Term{v.first, v.second});
  }
  return out;
}

/**
 * A coherent sheaf on P^n presented as coker( (+)_i O(a_i) --matrix--> (+)_j O(b_j) ).
 *
 * matrix[j][i] is the (j,i) entry: a homogeneous polynomial of total degree
 * b_j - a_i with nonnegative exponents (a map O(a_i) -> O(b_j) is
 * multiplication by such a polynomial). targets may be nonempty with sources
 * empty (direct sums of twists, zero relations).
 */
struct TwistPresentation {
  int n = 0;
  std::vector<int> targets;
  std::vector<int> sources;
  std::vector<std::vector<Entry>> matrix;  // targets.size() x sources.size()

  void validate() const {
    if (n < 0) throw std::invalid_argument("presentation: n < 0");
    if (targets.empty()) throw std::invalid_argument("presentation: needs at least one target");
    if (matrix.size() != targets.size())
      throw std::invalid_argument("presentation: row count mismatch");
    for (size_t j = 0; j < matrix.size(); ++j) {
      if (matrix[j].size() != sources.size())
        throw std::invalid_argument("presentation: column count mismatch");
      for (size_t i = 0; i < sources.size(); ++i) {
        for (const Term& t : matrix[j][i]) {
          if (t.exp.size() != n + 1)
            throw std::invalid_argument("presentation: exponent arity mismatch");
          if (t.exp.minCoeff() < 0)
            throw std::invalid_argument("presentation: entry exponents must be nonnegative");
          if (t.exp.sum() != targets[j] - sources[i])
            throw std::invalid_argument("presentation: entry not homogeneous of forced degree");
        }
      }
    }
  }

  // Canonicalizes every entry (sorted distinct exponents, no zero coeffs);
  // parse/serialize and equality assume this form.
  void normalize() {
    for (auto& row : matrix)
      for (auto& e : row) e = normalize_entry(std::move(e));
  }

  // Monomial type: every entry is a single term (or zero).
  bool is_monomial() const {
    for (const auto& row : matrix)
      for (const auto& e : row)
        if (e.size() > 1) return false;
    return true;
  }

  // Largest single exponent appearing in any entry; 0 when the matrix is empty.
  int max_entry_exponent() const {
    int m = 0;
    for (const auto& row : matrix)
      for (const auto& e : row)
        for (const Term& t : e) m = std::max(m, t.exp.maxCoeff());
    return m;
  }

  static TwistPresentation twist(int n, int k) {
    TwistPresentation p;
    p.n = n;
    p.targets = {k};
    p.matrix.resize(1);
    return p;
  }

  static TwistPresentation sum_of_twists(int n, std::vector<int> ks) {
    TwistPresentation p;
    p.n = n;
    p.targets = std::move(ks);
    p.matrix.resize(p.targets.size());
    return p;
  }

  bool operator==(const TwistPresentation& o) const {
    if (n != o.n || targets != o.targets || sources != o.sources) return false;
    for (size_t j = 0; j < matrix.size(); ++j)
      for (size_t i = 0; i < matrix[j].size(); ++i) {
        const Entry &a = matrix[j][i], &b = o.matrix[j][i];
        if (a.size() != b.size()) return false;
        for (size_t t = 0; t < a.size(); ++t)
          if (a[t].exp != b[t].exp || a[t].coeff != b[t].coeff) return false;
      }
    return true;
  }
};

// Twisting by O(e) shifts both summand lists and keeps the matrix.
inline TwistPresentation twist_by(TwistPresentation p, int e) {
  for (int& b : p.targets) b += e;
  for (int& a : p.sources) a += e;
  return p;
}

namespace detail {

inline Rational parse_rational(const std::string& tok) {
  const auto slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(tok));
    const Integer num(tok.substr(0, slash));
    const Integer den(tok.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("presentation: bad rational literal '" + tok + "'");
  }
}

inline std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace detail

/**
 * Text format, line oriented:
 *
 *   # comment (blank lines ignored)
 *   n 1
 *   targets 0
 *   sources -1
 *   entry 0 0  1 [0 1]  -1/2 [1 0]
 *
 * "entry j i" is followed by one or more "<coeff> [e_0 ... e_n]" groups;
 * unlisted entries are zero. Coefficients are integers or fractions p/q.
 */
inline TwistPresentation parse_presentation(std::istream& in) {
  TwistPresentation p;
  bool saw_n = false, saw_targets = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (kw == "n") {
      if (!(ls >> p.n)) throw std::invalid_argument("presentation: bad n" + where);
      saw_n = true;
    } else if (kw == "targets" || kw == "sources") {
      std::vector<int>& list = (kw == "targets") ? p.targets : p.sources;
      int v;
      while (ls >> v) list.push_back(v);
      if (kw == "targets") saw_targets = true;
    } else if (kw == "entry") {
      if (!saw_n || !saw_targets)
        throw std::invalid_argument("presentation: entry before n/targets" + where);
      if (p.matrix.empty())
        p.matrix.assign(p.targets.size(), std::vector<Entry>(p.sources.size()));
      size_t j, i;
      if (!(ls >> j >> i) || j >= p.targets.size() || i >= p.sources.size())
        throw std::invalid_argument("presentation: bad entry indices" + where);
      std::string tok;
      Entry terms;
      while (ls >> tok) {
        Term t;
        t.coeff = detail::parse_rational(tok);
        char bracket;
        if (!(ls >> bracket) || bracket != '[')
          throw std::invalid_argument("presentation: expected [exponents]" + where);
        t.exp = Exponents::Zero(p.n + 1);
        for (int c = 0; c <= p.n; ++c) {
          if (!(ls >> t.exp[c]))
            throw std::invalid_argument("presentation: expected exponent" + where);
        }
        if (!(ls >> bracket) || bracket != ']')
          throw std::invalid_argument("presentation: expected ]" + where);
        terms.push_back(std::move(t));
      }
      if (terms.empty()) throw std::invalid_argument("presentation: empty entry" + where);
      p.matrix[j][i] = normalize_entry(std::move(terms));
    } else {
      throw std::invalid_argument("presentation: unknown keyword '" + kw + "'" + where);
    }
  }
  if (!saw_n || !saw_targets) throw std::invalid_argument("presentation: missing n or targets");
  if (p.matrix.empty()) p.matrix.assign(p.targets.size(), std::vector<Entry>(p.sources.size()));
  p.validate();
  return p;
}

inline TwistPresentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

inline std::string serialize_presentation(const TwistPresentation& p) {
  std::ostringstream os;
  os << "n " << p.n << "\n";
  os << "targets";
  for (int b : p.targets) os << " " << b;
  os << "\n";
  if (!p.sources.empty()) {
    os << "sources";
    for (int a : p.sources) os << " " << a;
    os << "\n";
  }
  for (size_t j = 0; j < p.matrix.size(); ++j) {
    for (size_t i = 0; i < p.matrix[j].size(); ++i) {
      const Entry& e = p.matrix[j][i];
      if (e.empty()) continue;
      os << "entry " << j << " " << i;
      for (const Term& t : e) {
        os << "  " << detail::rational_str(t.coeff) << " [";
        for (int c = 0; c <= p.n; ++c) os << (c ? " " : "") << t.exp[c];
        os << "]";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qcoh
