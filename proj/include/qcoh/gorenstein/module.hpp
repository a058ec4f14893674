#pragma once

#include <string>
#include <vector>

#include "qcoh/gorenstein/ring.hpp"

namespace qcoh::gor {

/**
 * Explicit finite module over a FiniteRing: indexed carrier with full
 * addition and scalar-action tables.
 */
struct ActionModule {
  const FiniteRing* R = nullptr;
  int size = 0;
  std::vector<int> add_t;   // size*size
  std::vector<int> smul_t;  // q x size
  int zero = 0;

  int add(int a, int b) const { return add_t[static_cast<size_t>(a) * size + b]; }
  int smul(int r, int m) const { return smul_t[static_cast<size_t>(r) * size + m]; }
  int neg(int m) const { return smul(R->neg(R->one), m); }
  void validate() const;  // module axioms on the full tables
};

// Submodule spanned by the seed elements, as a sorted index list.
std::vector<int> action_span(const ActionModule& A, const std::vector<int>& seed);
// Greedy-then-pruned minimal generating set of the whole carrier.
std::vector<int> minimal_action_generators(const ActionModule& A);
// A modulo a submodule (sorted element list), with coset-of mapping.
ActionModule quotient_action(const ActionModule& A, const std::vector<int>& sub,
                             std::vector<int>* coset_of = nullptr);

/**
 * Finitely presented module coker(R^rels -> R^gens) with its carrier
 * materialized. Elements of the ambient free module R^gens are mixed-radix
 * codes base q; the carrier indexes cosets by least representative.
 */
struct FinModule {
  const FiniteRing* R = nullptr;
  int gens = 0;
  std::vector<std::vector<int>> rels;  // relation columns, each of length gens

  int ambient = 0;            // q^gens
  std::vector<int> coset_of;  // ambient code -> carrier index
  std::vector<int> reps;      // carrier index -> least representative code
  int size = 0;

  static FinModule cokernel(const FiniteRing& R, int gens, std::vector<std::vector<int>> rels);
  static FinModule free_module(const FiniteRing& R, int rank);
  static FinModule from_action(const ActionModule& A);  // minimal presentation

  int code_digit(int code, int i) const;
  int code_add(int c1, int c2) const;
  int code_smul(int r, int c) const;
  int class_of(int code) const { return coset_of[static_cast<size_t>(code)]; }
  int gen_class(int j) const;

  int elem_add(int a, int b) const {
    return class_of(code_add(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]));
  }
  int elem_smul(int r, int a) const {
    return class_of(code_smul(r, reps[static_cast<size_t>(a)]));
  }

  ActionModule action() const;
  bool is_zero() const { return size == 1; }
  std::string describe() const;
};

// Free-module code helpers (digits base q, `rank` of them).
int free_code_add(const FiniteRing& R, int rank, int c1, int c2);
int free_code_smul(const FiniteRing& R, int rank, int r, int c);
std::vector<int> span_codes(const FiniteRing& R, int rank, const std::vector<int>& seed);
std::vector<int> minimal_code_generators(const FiniteRing& R, int rank,
                                         const std::vector<int>& sub);
// A submodule of R^rank (sorted codes) as an explicit module; elements keep
// the sorted-code order.
ActionModule submodule_action(const FiniteRing& R, int rank, const std::vector<int>& sub);

/**
 * Every homomorphism M -> N, each recorded by the images of M's presentation
 * generators (carrier indices of N), in lexicographic order.
 */
std::vector<std::vector<int>> hom_tuples(const FinModule& M, const FinModule& N);
int apply_hom(const FinModule& M, const FinModule& N, const std::vector<int>& tuple, int elem);

// Hom(M, N) as a module under pointwise operations, with its tuples.
struct HomSet {
  std::vector<std::vector<int>> tuples;
  ActionModule act;
};
HomSet hom_set(const FinModule& M, const FinModule& N);

int length(const ActionModule& A);  // composition series length
int length(const FinModule& M);

bool is_projective(const FinModule& M);  // the presentation cover splits
bool is_injective(const FinModule& M);   // Baer criterion over the ring's ideals
bool are_isomorphic(const FinModule& M, const FinModule& N);

FinModule dual_module(const FinModule& M);  // Hom(M, R), minimally presented

/**
 * Module mini-language: "k" (residue field of a local ring), "R" (free rank
 * one), "free:g", or "quot:c1,...,cr" (R modulo the listed element literals).
 */
FinModule parse_module(const FiniteRing& R, const std::string& spec);

}  // namespace qcoh::gor
