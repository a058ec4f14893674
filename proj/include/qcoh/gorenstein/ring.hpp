#pragma once

#include <string>
#include <vector>

namespace qcoh::gor {

/**
 * Finite commutative ring with unit, given by full addition/multiplication
 * tables on an indexed carrier. All structure flags (field, local,
 * self-injective) are computed from the tables, never asserted.
 */
struct FiniteRing {
  int q = 0;                      // carrier size
  std::vector<int> add_t, mul_t;  // q*q tables, row major
  std::vector<int> neg_t;         // additive inverses
  int zero = 0, one = 0;
  std::string name;
  std::vector<std::string> elem_names;

  // parsing context for element literals ("" for table-built rings)
  std::string kind;         // "zmod", "gfpoly" or ""
  int char_p = 0;           // modulus / coefficient prime
  std::vector<int> poly_f;  // ascending coefficients of the quotient polynomial

  // computed structure
  bool is_field = false;
  bool is_local = false;        // non-units form an ideal
  bool self_injective = false;  // Baer criterion for R over itself
  std::vector<int> units;
  std::vector<int> idempotents;          // nonzero idempotents
  std::vector<std::vector<int>> ideals;  // sorted element lists, {0} and R included

  int add(int a, int b) const { return add_t[a * q + b]; }
  int mul(int a, int b) const { return mul_t[a * q + b]; }
  int neg(int a) const { return neg_t[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  const std::string& elem_name(int a) const { return elem_names[a]; }

  /**
   * Builds every derived field and checks the ring axioms on the full tables;
   * throws std::invalid_argument on any violation.
   */
  static FiniteRing from_tables(int q, std::vector<int> add, std::vector<int> mul,
                                std::string name, std::vector<std::string> names = {});
};

/**
 * Ring mini-language: "Zmod:m" or "GF:p:f" with f a polynomial in x over F_p.
 * f need not be irreducible; the carrier is F_p[x]/(f), so "GF:2:x^2" is the
 * four-element non-field F_2[x]/(x^2).
 */
FiniteRing parse_ring(const std::string& spec);

// Element literal in the ring's own mini-language: an integer for "Zmod:m",
// a polynomial in x for "GF:p:f", or an element name for table-built rings.
int parse_element(const FiniteRing& R, const std::string& lit);

// Smallest ideal containing the seed elements.
std::vector<int> span_ideal(const FiniteRing& R, const std::vector<int>& seed);
std::vector<int> minimal_ideal_generators(const FiniteRing& R, const std::vector<int>& ideal);

}  // namespace qcoh::gor
