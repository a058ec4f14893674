#include "qcoh/gorenstein/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcoh::gor {
namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("FiniteRing: " + msg);
}

constexpr int kMaxCarrier = 32;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ---- polynomial mini-parser: sums of [c][*][x[^k]] terms ---------------

struct PolyTerm {
  long long coeff = 1;
  int deg = 0;
};

std::vector<long long> parse_poly(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail("empty polynomial");

  std::vector<PolyTerm> terms;
  size_t i = 0;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
      if (i == s.size()) fail("dangling sign in polynomial '" + raw + "'");
    }
    PolyTerm t;
    bool saw_num = false, saw_x = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      saw_num = true;
      long long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > 1000000) fail("coefficient too large in '" + raw + "'");
        ++i;
      }
      t.coeff = v;
      if (i < s.size() && s[i] == '*') ++i;
    }
    if (i < s.size() && s[i] == 'x') {
      saw_x = true;
      ++i;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          fail("missing exponent in '" + raw + "'");
        int e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + (s[i] - '0');
          if (e > 64) fail("exponent too large in '" + raw + "'");
          ++i;
        }
        t.deg = e;
      } else {
        t.deg = 1;
      }
    }
    if (!saw_num && !saw_x) fail("unreadable term in polynomial '" + raw + "'");
    t.coeff *= sign;
    terms.push_back(t);
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      fail("unexpected character '" + std::string(1, s[i]) + "' in '" + raw + "'");
  }

  int deg = 0;
  for (const PolyTerm& t : terms) deg = std::max(deg, t.deg);
  std::vector<long long> coeffs(static_cast<size_t>(deg) + 1, 0);
  for (const PolyTerm& t : terms) coeffs[static_cast<size_t>(t.deg)] += t.coeff;
  return coeffs;
}

std::string poly_name(const std::vector<int>& c) {
  std::string out;
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) {
    if (c[static_cast<size_t>(d)] == 0) continue;
    if (!out.empty()) out += "+";
    const int v = c[static_cast<size_t>(d)];
    if (d == 0 || v != 1) out += std::to_string(v);
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

int mod_inverse(int a, int p) {
  for (int b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  fail("no inverse mod " + std::to_string(p));
}

std::vector<std::string> decimal_names(int m) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

std::vector<int> span_ideal(const FiniteRing& R, const std::vector<int>& seed) {
  std::vector<char> in(static_cast<size_t>(R.q), 0);
  std::vector<int> stack;
  const auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = 1;
      stack.push_back(x);
    }
  };
  push(R.zero);
  for (int s : seed)
    for (int r = 0; r < R.q; ++r) push(R.mul(r, s));
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < R.q; ++y)
      if (in[static_cast<size_t>(y)]) push(R.add(x, y));
  }
  std::vector<int> out;
  for (int x = 0; x < R.q; ++x)
    if (in[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

std::vector<int> minimal_ideal_generators(const FiniteRing& R, const std::vector<int>& ideal) {
  std::vector<int> gens;
  std::vector<int> current{R.zero};
  for (int x : ideal) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = span_ideal(R, gens);
    if (current == ideal) break;
  }
  // drop generators made redundant by later ones
  for (size_t i = 0; i < gens.size();) {
    std::vector<int> rest;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (span_ideal(R, rest) == ideal)
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

namespace {

std::vector<std::vector<int>> all_ideals(const FiniteRing& R) {
  std::set<std::vector<int>> found;
  for (int a = 0; a < R.q; ++a) found.insert(span_ideal(R, {a}));
  // close under ideal sums
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<int>> snapshot(found.begin(), found.end());
    for (const auto& i1 : snapshot) {
      for (const auto& i2 : snapshot) {
        std::vector<int> seed = i1;
        seed.insert(seed.end(), i2.begin(), i2.end());
        if (found.insert(span_ideal(R, seed)).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

// Baer criterion for R as a module over itself: every homomorphism from an
// ideal into R is multiplication by some ring element.
bool baer_self_injective(const FiniteRing& R) {
  for (const auto& ideal : R.ideals) {
    if (static_cast<int>(ideal.size()) == R.q) continue;  // whole ring: extend by identity
    if (ideal.size() == 1) continue;                      // zero ideal
    const std::vector<int> gens = minimal_ideal_generators(R, ideal);
    const int s = static_cast<int>(gens.size());
    if (s > 3) fail("ideal needs more than 3 generators; carrier too rich for the Baer scan");
    int tuples = 1;
    for (int i = 0; i < s; ++i) tuples *= R.q;
    // relations among the generators
    std::vector<std::vector<int>> rels;
    for (int code = 0; code < tuples; ++code) {
      int rest = code, acc = R.zero;
      std::vector<int> rv(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        rv[static_cast<size_t>(i)] = rest % R.q;
        rest /= R.q;
        acc = R.add(acc, R.mul(rv[static_cast<size_t>(i)], gens[static_cast<size_t>(i)]));
      }
      if (acc == R.zero) rels.push_back(std::move(rv));
    }
    for (int code = 0; code < tuples; ++code) {
      int rest = code;
      std::vector<int> img(static_cast<size_t>(s));
      for (int i = 0; i < s; ++i) {
        img[static_cast<size_t>(i)] = rest % R.q;
        rest /= R.q;
      }
      bool valid = true;
      for (const auto& rv : rels) {
        int acc = R.zero;
        for (int i = 0; i < s; ++i)
          acc = R.add(acc, R.mul(rv[static_cast<size_t>(i)], img[static_cast<size_t>(i)]));
        if (acc != R.zero) {
          valid = false;
          break;
        }
      }
      if (!valid) continue;
      bool extends = false;
      for (int y = 0; y < R.q && !extends; ++y) {
        bool ok = true;
        for (int i = 0; i < s; ++i)
          if (R.mul(gens[static_cast<size_t>(i)], y) != img[static_cast<size_t>(i)]) {
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

}  // namespace

FiniteRing FiniteRing::from_tables(int q, std::vector<int> add, std::vector<int> mul,
                                   std::string name, std::vector<std::string> names) {
  if (q < 2 || q > kMaxCarrier) fail("carrier size " + std::to_string(q) + " out of range");
  if (static_cast<int>(add.size()) != q * q || static_cast<int>(mul.size()) != q * q)
    fail("table size mismatch");
  for (int v : add)
    if (v < 0 || v >= q) fail("addition table entry out of range");
  for (int v : mul)
    if (v < 0 || v >= q) fail("multiplication table entry out of range");

  FiniteRing R;
  R.q = q;
  R.add_t = std::move(add);
  R.mul_t = std::move(mul);
  R.name = std::move(name);
  if (names.empty()) {
    for (int i = 0; i < q; ++i) names.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != q) fail("element name count mismatch");
  R.elem_names = std::move(names);

  // identities
  int zero = -1, one = -1;
  for (int z = 0; z < q; ++z) {
    bool ok = true;
    for (int a = 0; a < q; ++a) ok = ok && R.add(z, a) == a && R.add(a, z) == a;
    if (ok) zero = z;
  }
  if (zero < 0) fail("no additive identity");
  R.zero = zero;
  for (int e = 0; e < q; ++e) {
    bool ok = true;
    for (int a = 0; a < q; ++a) ok = ok && R.mul(e, a) == a && R.mul(a, e) == a;
    if (ok) one = e;
  }
  if (one < 0) fail("no multiplicative identity");
  R.one = one;
  if (one == zero) fail("1 = 0");

  R.neg_t.assign(static_cast<size_t>(q), -1);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b)
      if (R.add(a, b) == zero) {
        R.neg_t[static_cast<size_t>(a)] = b;
        break;
      }
    if (R.neg_t[static_cast<size_t>(a)] < 0) fail("missing additive inverse");
  }

  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (R.add(a, b) != R.add(b, a)) fail("addition not commutative");
      if (R.mul(a, b) != R.mul(b, a)) fail("multiplication not commutative");
    }
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        if (R.add(R.add(a, b), c) != R.add(a, R.add(b, c))) fail("addition not associative");
        if (R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c)))
          fail("multiplication not associative");
        if (R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c)))
          fail("distributivity fails");
      }

  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b)
      if (R.mul(a, b) == one) {
        R.units.push_back(a);
        break;
      }
  }
  for (int e = 0; e < q; ++e)
    if (e != zero && R.mul(e, e) == e) R.idempotents.push_back(e);

  R.is_field = static_cast<int>(R.units.size()) == q - 1;
  // non-units form an ideal iff they are closed under addition
  R.is_local = true;
  {
    std::vector<char> unit(static_cast<size_t>(q), 0);
    for (int u : R.units) unit[static_cast<size_t>(u)] = 1;
    for (int a = 0; a < q && R.is_local; ++a)
      for (int b = 0; b < q; ++b)
        if (!unit[static_cast<size_t>(a)] && !unit[static_cast<size_t>(b)] &&
            unit[static_cast<size_t>(R.add(a, b))]) {
          R.is_local = false;
          break;
        }
  }
  R.ideals = all_ideals(R);
  R.self_injective = baer_self_injective(R);
  return R;
}

FiniteRing parse_ring(const std::string& spec) {
  const auto bad = [&]() { fail("unreadable ring spec '" + spec + "'"); };
  const size_t c1 = spec.find(':');
  if (c1 == std::string::npos) bad();
  const std::string head = spec.substr(0, c1);

  if (head == "Zmod") {
    int m = 0;
    try {
      size_t used = 0;
      m = std::stoi(spec.substr(c1 + 1), &used);
      if (used != spec.size() - c1 - 1) bad();
    } catch (const std::logic_error&) {
      bad();
    }
    if (m < 2 || m > kMaxCarrier) fail("modulus " + std::to_string(m) + " out of range");
    std::vector<int> add(static_cast<size_t>(m) * m), mul(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        add[static_cast<size_t>(a) * m + b] = (a + b) % m;
        mul[static_cast<size_t>(a) * m + b] = (a * b) % m;
      }
    FiniteRing R = FiniteRing::from_tables(m, std::move(add), std::move(mul),
                                           "Zmod:" + std::to_string(m), decimal_names(m));
    R.kind = "zmod";
    R.char_p = m;
    return R;
  }

  if (head == "GF") {
    const size_t c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) bad();
    int p = 0;
    try {
      size_t used = 0;
      p = std::stoi(spec.substr(c1 + 1, c2 - c1 - 1), &used);
      if (used != c2 - c1 - 1) bad();
    } catch (const std::logic_error&) {
      bad();
    }
    if (!is_prime(p)) fail("coefficient modulus " + std::to_string(p) + " is not prime");
    std::vector<long long> raw = parse_poly(spec.substr(c2 + 1));
    std::vector<int> f;
    for (long long c : raw) f.push_back(static_cast<int>(((c % p) + p) % p));
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2) fail("quotient polynomial must have degree at least 1");
    const int deg = static_cast<int>(f.size()) - 1;
    if (f.back() != 1) {
      const int inv = mod_inverse(f.back(), p);
      for (int& c : f) c = c * inv % p;
    }
    long long q = 1;
    for (int i = 0; i < deg; ++i) {
      q *= p;
      if (q > kMaxCarrier) fail("carrier p^deg exceeds the supported size");
    }
    const int qi = static_cast<int>(q);

    const auto decode = [&](int idx) {
      std::vector<int> c(static_cast<size_t>(deg));
      for (int i = 0; i < deg; ++i) {
        c[static_cast<size_t>(i)] = idx % p;
        idx /= p;
      }
      return c;
    };
    const auto encode = [&](const std::vector<int>& c) {
      int idx = 0;
      for (int i = deg - 1; i >= 0; --i) idx = idx * p + c[static_cast<size_t>(i)];
      return idx;
    };
    const auto reduce = [&](std::vector<int> c) {
      for (int d = static_cast<int>(c.size()) - 1; d >= deg; --d) {
        const int lead = c[static_cast<size_t>(d)];
        if (lead == 0) continue;
        for (int i = 0; i <= deg; ++i) {
          int& slot = c[static_cast<size_t>(d - deg + i)];
          slot = ((slot - lead * f[static_cast<size_t>(i)]) % p + p) % p;
        }
      }
      c.resize(static_cast<size_t>(deg));
      return c;
    };

    std::vector<int> add(static_cast<size_t>(qi) * qi), mul(static_cast<size_t>(qi) * qi);
    std::vector<std::string> names;
    for (int a = 0; a < qi; ++a) names.push_back(poly_name(decode(a)));
    for (int a = 0; a < qi; ++a) {
      const std::vector<int> ca = decode(a);
      for (int b = 0; b < qi; ++b) {
        const std::vector<int> cb = decode(b);
        std::vector<int> s(static_cast<size_t>(deg));
        for (int i = 0; i < deg; ++i)
          s[static_cast<size_t>(i)] = (ca[static_cast<size_t>(i)] + cb[static_cast<size_t>(i)]) % p;
        add[static_cast<size_t>(a) * qi + b] = encode(s);
        std::vector<int> prod(static_cast<size_t>(2 * deg - 1), 0);
        for (int i = 0; i < deg; ++i)
          for (int j = 0; j < deg; ++j)
            prod[static_cast<size_t>(i + j)] =
                (prod[static_cast<size_t>(i + j)] +
                 ca[static_cast<size_t>(i)] * cb[static_cast<size_t>(j)]) %
                p;
        mul[static_cast<size_t>(a) * qi + b] = encode(reduce(std::move(prod)));
      }
    }
    FiniteRing R = FiniteRing::from_tables(qi, std::move(add), std::move(mul),
                                           "GF:" + std::to_string(p) + ":" + poly_name(f),
                                           std::move(names));
    R.kind = "gfpoly";
    R.char_p = p;
    R.poly_f = f;
    return R;
  }

  fail("unreadable ring spec '" + spec + "' (expected Zmod:m or GF:p:f)");
}

int parse_element(const FiniteRing& R, const std::string& lit) {
  if (R.kind == "zmod") {
    try {
      size_t used = 0;
      const long long v = std::stoll(lit, &used);
      if (used != lit.size()) throw std::invalid_argument(lit);
      return static_cast<int>(((v % R.q) + R.q) % R.q);
    } catch (const std::logic_error&) {
      fail("unreadable integer literal '" + lit + "'");
    }
  }
  if (R.kind == "gfpoly") {
    const std::vector<long long> raw = parse_poly(lit);
    const int p = R.char_p;
    int acc = R.zero;
    // Horner evaluation of the literal at the class of x
    int x = -1;
    for (int e = 0; e < R.q; ++e)
      if (R.elem_name(e) == "x") x = e;
    if (x < 0) {
      // degree-1 quotient: x reduces to a constant, recover it from f
      const int c0 = R.poly_f.at(0);
      x = ((p - c0) % p + p) % p;
    }
    for (int d = static_cast<int>(raw.size()) - 1; d >= 0; --d) {
      acc = R.mul(acc, x);
      const int c = static_cast<int>(((raw[static_cast<size_t>(d)] % p) + p) % p);
      acc = R.add(acc, c % R.q);
    }
    return acc;
  }
  for (int e = 0; e < R.q; ++e)
    if (R.elem_name(e) == lit) return e;
  fail("unknown element '" + lit + "'");
}

}  // namespace qcoh::gor
