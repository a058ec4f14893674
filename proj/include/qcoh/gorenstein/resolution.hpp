#pragma once

#include <optional>
#include <vector>

#include "qcoh/gorenstein/module.hpp"

namespace qcoh::gor {

// Matrix over a FiniteRing, entries as element indices, row major. A map
// R^cols -> R^rows whose column j is the image of the j-th basis vector.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<int> a;

  int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const IMat&) const = default;

  static IMat zero(const FiniteRing& R, int rows, int cols);
};

// Image of a code under the matrix: R^cols -> R^rows.
int apply_mat(const FiniteRing& R, const IMat& A, int code);
IMat mat_mul(const FiniteRing& R, const IMat& A, const IMat& B);
IMat transpose_mat(const IMat& A);
// Kernel as sorted codes in R^cols; image as sorted codes in R^rows.
std::vector<int> mat_kernel(const FiniteRing& R, const IMat& A);
std::vector<int> mat_image(const FiniteRing& R, const IMat& A);

/**
 * Free resolution P_len -> ... -> P_1 -> P_0 ->> M with a minimal generating
 * set at every stage. boundary[i] is the map P_{i+1} -> P_i; aug records the
 * carrier indices the basis of P_0 maps to.
 *
 * The syzygy states (rank, sorted kernel codes) are tracked while building;
 * a revisited state makes the tail of the resolution periodic, recorded by
 * preperiod/period (period 0 when no repeat happened within len steps).
 */
struct ProjResolution {
  std::vector<int> ranks;      // ranks of P_0 .. P_len
  std::vector<IMat> boundary;  // boundary[i] : P_{i+1} -> P_i
  std::vector<int> aug;
  bool exact = false;
  int preperiod = -1;
  int period = 0;
};

ProjResolution proj_resolution_action(const ActionModule& A, int len);
ProjResolution proj_resolution(const FinModule& M, int len);

/**
 * Projective dimension, deciding projectivity of each syzygy module outright.
 * nullopt means certified infinite: the syzygy states entered a cycle none of
 * whose members is projective. The horizon only guards against runaway state
 * spaces and overflowing it throws.
 */
std::optional<int> projective_dimension(const FinModule& M, int horizon = 24);

// Injective dimension via the exact duality Hom(-, R); requires a
// self-injective ring.
std::optional<int> injective_dimension(const FinModule& M, int horizon = 24);

}  // namespace qcoh::gor
