#pragma once

#include <utility>
#include <vector>

#include "qcoh/gorenstein/resolution.hpp"

namespace qcoh::gor {

/**
 * Doubly infinite acyclic complex of free modules, materialized on the degree
 * window [lo, hi], with M recovered as the image of d^0. Built by splicing a
 * free resolution of M against the dual of a free resolution of Hom(M, R);
 * over a self-injective ring the splice is totally acyclic.
 *
 * Every flag below is verified on the window by enumeration, not assumed:
 *  - dd_zero, exact_interior: complex property and exactness at inner degrees,
 *  - comparison_ok: d^0 factors through M and embeds it (so H at degree 0
 *    sees exactly M on both sides of the splice),
 *  - hom_proj_exact / hom_inj_exact: exactness is preserved by Hom(-, Re)
 *    and Hom(Re, -) for every nonzero idempotent e, covering the functors
 *    against projective and injective test modules.
 */
struct CompleteResolution {
  int lo = 0, hi = 0;
  std::vector<int> ranks;  // ranks of T^lo .. T^hi
  std::vector<IMat> d;     // d[i - lo] : T^i -> T^{i+1}, i in [lo, hi-1]
  std::vector<int> aug;    // images in M of the basis of T^0

  bool dd_zero = false;
  bool exact_interior = false;
  bool hom_proj_exact = false;
  bool hom_inj_exact = false;
  bool comparison_ok = false;
  int period = 0;  // common period of the two splice halves, 0 if undetected

  int rank_at(int i) const;
  const IMat& d_at(int i) const;  // valid for lo <= i < hi
  bool certified() const {
    return dd_zero && exact_interior && hom_proj_exact && hom_inj_exact && comparison_ok;
  }
};

// Window covers degrees [-(m+1), m+1]. Requires a self-injective ring.
CompleteResolution complete_resolution(const FinModule& M, int m);

// Stable cohomology dimensions (composition lengths), indexed by degree.
struct TateTable {
  std::vector<std::pair<int, int>> dims;
  int at(int i) const;
};

// Length of Ext^i(M, N), from a free resolution of M.
int ext_dim(const FinModule& M, const FinModule& N, int i);
int ext_dim(const ProjResolution& PR, const FinModule& N, int i);

// H^i(Hom(T, N)) for i in [ilo, ihi]; T must cover degrees [-ihi-1, -ilo+1].
TateTable tate_table(const CompleteResolution& T, const FinModule& N, int ilo, int ihi);
TateTable tate_table(const FinModule& M, const FinModule& N, int ilo, int ihi);
// Same dimensions computed from the other variable: a complete resolution of
// N read as a complete injective resolution, with Hom(M, -) applied.
TateTable tate_table_injective_side(const FinModule& M, const FinModule& N, int ilo, int ihi);
int tate_ext_dim(const FinModule& M, const FinModule& N, int i);

/**
 * Relative (Gorenstein) ext dimension. Over a self-injective ring every
 * module is Gorenstein-projective, with its own certified complete
 * resolution as witness, so degrees >= 1 vanish; degree 0 is Hom. The
 * witness is still demanded: a failed certification throws rather than
 * returning the formal 0.
 */
int gext_dim(const FinModule& M, const FinModule& N, int i);

/**
 * The comparison exact sequence linking relative, absolute and stable ext in
 * degrees 1..maxdeg. Exactness here is equivalent to every absolute-to-stable
 * comparison map being an isomorphism alongside vanishing relative terms;
 * iso_ext_tate records literal equality of cocycle and coboundary sets
 * between the two independently built complexes.
 */
struct AmRow {
  int i = 0;
  int gext = 0, ext = 0, tate = 0;
  bool iso_ext_tate = false;
};
struct AmReport {
  std::vector<AmRow> rows;
  bool exact = false;
};
AmReport am_sequence_check(const FinModule& M, const FinModule& N, int maxdeg);

}  // namespace qcoh::gor
