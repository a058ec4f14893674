#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "corpus.hpp"
#include "qcoh/functors.hpp"

using corpus::exps;
using corpus::term;
using qcoh::adjoint_transpose;
using qcoh::decomposition_sequence;
using qcoh::DecompositionResult;
using qcoh::dv_sections;
using qcoh::DvValue;
using qcoh::Entry;
using qcoh::evaluate;
using qcoh::Exponents;
using qcoh::ext_against_dv;
using qcoh::ExtCompareRow;
using qcoh::Fp;
using qcoh::induced_map;
using qcoh::inverse_transpose;
using qcoh::Matrix;
using qcoh::matrix_equal;
using qcoh::MorphismData;
using qcoh::morphisms_equal;
using qcoh::Rational;
using qcoh::restriction_map;
using qcoh::section_basis;
using qcoh::SheafFamily;
using qcoh::SheafValue;
using qcoh::SliceMap;
using qcoh::slice_maps_equal;
using qcoh::TwistPresentation;
using qcoh::unit_morphism;
using qcoh::valid_at;
using qcoh::validate_morphism;
using qcoh::Vector;
using qcoh::Vertex;
using qcoh::vertices;
using qcoh::within_window;

namespace {

// x1^2 instead of x1: a length-2 point concentrated in chart {0}
TwistPresentation fat_point_p1() {
  TwistPresentation p;
  p.n = 1;
  p.targets = {0};
  p.sources = {-2};
  p.matrix = {{Entry{term({0, 2})}}};
  p.validate();
  return p;
}

TwistPresentation non_monomial_p1() {
  TwistPresentation p;
  p.n = 1;
  p.targets = {0};
  p.sources = {-1};
  p.matrix = {{Entry{term({1, 0}), term({0, 1})}}};
  p.validate();
  return p;
}

template <class S>
MorphismData<S> restrict_degrees(const MorphismData<S>& f, int dlo, int dhi) {
  MorphismData<S> out;
  for (const auto& [key, mat] : f.blocks)
    if (key.second >= dlo && key.second <= dhi) out.blocks[key] = mat;
  return out;
}

}  // namespace

TEST_CASE("evaluate is the chart value") {
  for (const Vertex& v : vertices(1)) {
    const SheafValue<Rational> val = evaluate<Rational>(TwistPresentation::twist(1, 0), v, 4);
    const auto& sl = val.slice(0);
    const auto basis = section_basis(v, 0, 4).basis;
    REQUIRE(sl.reps.size() == basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
      REQUIRE(sl.reps[i].first == 0);
      REQUIRE(sl.reps[i].second == basis[i]);
    }
  }
  const SheafValue<Rational> sky = evaluate<Rational>(corpus::skyscraper_p1(), Vertex::of({0}, 1), 4);
  for (int d = -3; d <= 3; ++d) REQUIRE(sky.dim(d) == 1);
  const SheafValue<Rational> zero = evaluate<Rational>(corpus::zero_sheaf_p1(), Vertex::of({0}, 1), 4);
  for (int d = -3; d <= 3; ++d) REQUIRE(zero.dim(d) == 0);
}

TEST_CASE("dv sections: localization of the input module") {
  const Vertex v0 = Vertex::of({0}, 1), v1 = Vertex::of({1}, 1), v01 = Vertex::of({0, 1}, 1);
  const TwistPresentation o0 = TwistPresentation::twist(1, 0);

  SECTION("w inside v gives back N") {
    for (const TwistPresentation& q : {o0, corpus::skyscraper_p1()}) {
      const SheafValue<Rational> dv = dv_sections<Rational>(q, v01, v1, 4);
      const SheafValue<Rational> n = evaluate<Rational>(q, v01, 4);
      for (int d = -3; d <= 3; ++d) {
        REQUIRE(dv.dim(d) == n.dim(d));
        REQUIRE(dv.slice(d).reps == n.slice(d).reps);
      }
    }
  }
  SECTION("inverting the second chart of P^1") {
    const SheafValue<Rational> dv = dv_sections<Rational>(o0, v0, v1, 4);
    const SheafValue<Rational> loc = evaluate<Rational>(o0, v01, 4);
    for (int d = -3; d <= 3; ++d) {
      REQUIRE(dv.slice(d).reps == loc.slice(d).reps);
      // full Laurent window in degree d
      REQUIRE(dv.dim(d) == 2 * 4 + 1 - std::abs(d));
    }
  }
  SECTION("zero module localizes to zero") {
    for (const Vertex& w : vertices(1))
      for (int d = -3; d <= 3; ++d)
        REQUIRE(dv_sections<Rational>(corpus::zero_sheaf_p1(), v0, w, 4).dim(d) == 0);
  }
  SECTION("slice depends only on the union; values over v are localizations") {
    DvValue<Rational> dv(corpus::skyscraper_p1(), v0, 4);
    for (const Vertex& w : vertices(1)) {
      for (int d = -2; d <= 2; ++d) {
        REQUIRE(dv.at(w).dim(d) == dv.at(v0.unite(w)).dim(d));
        REQUIRE(dv.at(w).slice(d).reps == dv_sections<Rational>(corpus::skyscraper_p1(), v0, w, 4).slice(d).reps);
      }
    }
    REQUIRE(dv.base_vertex() == v0);
    REQUIRE(dv.at(v01).dim(0) == evaluate<Rational>(corpus::skyscraper_p1(), v01, 4).dim(0));
  }
  SECTION("non-monomial input rejected") {
    REQUIRE_THROWS_AS(dv_sections<Rational>(non_monomial_p1(), v0, v1, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(DvValue<Rational>(non_monomial_p1(), v0, 4), std::invalid_argument);
  }
}

TEST_CASE("morphism validation catches broken restriction squares") {
  const Vertex v0 = Vertex::of({0}, 1);
  SheafFamily<Rational> m(TwistPresentation::twist(1, 0), 4);
  const auto at = [&](const Vertex& w) -> const SheafValue<Rational>& { return m.at(w); };
  const auto dv_at = [&](const Vertex& w) -> const SheafValue<Rational>& {
    return m.at(v0.unite(w));
  };

  MorphismData<Rational> f = unit_morphism(m, v0, -2, 2);
  REQUIRE_NOTHROW(validate_morphism(f, 1, at, dv_at));

  MorphismData<Rational> broken = f;
  Matrix<Rational>& blk = broken.blocks.at({Vertex::of({0}, 1).mask(), 0});
  blk(0, 0) += Rational(1);
  REQUIRE_THROWS_AS(validate_morphism(broken, 1, at, dv_at), std::invalid_argument);

  MorphismData<Rational> misshapen = f;
  misshapen.blocks.at({v0.mask(), 0}) = Matrix<Rational>::Zero(1, 1);
  REQUIRE_THROWS_AS(validate_morphism(misshapen, 1, at, dv_at), std::invalid_argument);
}

TEST_CASE("adjunction transposes") {
  const int n = 1;
  const Vertex v0 = Vertex::of({0}, 1);
  SheafFamily<Rational> m(TwistPresentation::twist(1, 0), 4);
  const auto m_at = [&](const Vertex& w) -> const SheafValue<Rational>& { return m.at(w); };

  SECTION("zero morphism round-trips to zero") {
    MorphismData<Rational> f;
    for (const Vertex& w : vertices(n))
      for (int d = -2; d <= 6; ++d)
        f.blocks[{w.mask(), d}] =
            Matrix<Rational>::Zero(m.at(v0.unite(w)).dim(d), m.at(w).dim(d));
    const SliceMap<Rational> g = adjoint_transpose(f, v0);
    for (const auto& [d, mat] : g)
      for (Eigen::Index r = 0; r < mat.rows(); ++r)
        for (Eigen::Index c = 0; c < mat.cols(); ++c) REQUIRE(mat(r, c) == Rational(0));
    const MorphismData<Rational> back = inverse_transpose(n, v0, m_at, m_at, g, -2, 2);
    REQUIRE(morphisms_equal(back, restrict_degrees(f, -2, 2)));
  }

  SECTION("unit of the adjunction transposes to the identity") {
    const MorphismData<Rational> f = unit_morphism(m, v0, -2, 6);
    const SliceMap<Rational> g = adjoint_transpose(f, v0);
    for (const auto& [d, mat] : g) {
      REQUIRE(mat.rows() == mat.cols());
      REQUIRE(matrix_equal(mat, Matrix<Rational>(Matrix<Rational>::Identity(mat.rows(), mat.cols()))));
    }
    const MorphismData<Rational> back = inverse_transpose(n, v0, m_at, m_at, g, -2, 2);
    REQUIRE(morphisms_equal(back, restrict_degrees(f, -2, 2)));
  }

  SECTION("identity of D^v(N) transposes to the counit and back") {
    const auto dv_at = [&](const Vertex& w) -> const SheafValue<Rational>& {
      return m.at(v0.unite(w));
    };
    MorphismData<Rational> f;
    for (const Vertex& w : vertices(n)) {
      for (int d = -2; d <= 6; ++d) {
        const Eigen::Index k = m.at(v0.unite(w)).dim(d);
        f.blocks[{w.mask(), d}] = Matrix<Rational>::Identity(k, k);
      }
    }
    REQUIRE_NOTHROW(validate_morphism(f, n, dv_at, dv_at));
    const SliceMap<Rational> g = adjoint_transpose(f, v0);
    for (const auto& [d, mat] : g)
      REQUIRE(matrix_equal(mat, Matrix<Rational>(Matrix<Rational>::Identity(mat.rows(), mat.cols()))));
    const MorphismData<Rational> back = inverse_transpose(n, v0, dv_at, m_at, g, -2, 2);
    REQUIRE(morphisms_equal(back, restrict_degrees(f, -2, 2)));
  }

  SECTION("linear-form morphisms into D^v(O(1)) round-trip") {
    SheafFamily<Rational> nfam(TwistPresentation::twist(1, 1), 5);
    const auto n_at = [&](const Vertex& u) -> const SheafValue<Rational>& { return nfam.at(u); };
    for (const auto& [c0, c1] :
         std::vector<std::pair<Rational, Rational>>{{1, 0}, {0, 1}, {2, -3}, {Rational(1, 2), 5}}) {
      const std::vector<std::vector<Entry>> fm = {{Entry{term({1, 0}, c0), term({0, 1}, c1)}}};
      MorphismData<Rational> f;
      for (const Vertex& w : vertices(n))
        for (int d = -2; d <= 6; ++d)
          f.blocks[{w.mask(), d}] = induced_map(m.at(w), nfam.at(v0.unite(w)), fm, d, 0);
      const auto dvn_at = [&](const Vertex& w) -> const SheafValue<Rational>& {
        return nfam.at(v0.unite(w));
      };
      REQUIRE_NOTHROW(validate_morphism(f, n, m_at, dvn_at));

      const SliceMap<Rational> g = adjoint_transpose(f, v0);
      for (const auto& [d, mat] : g)
        REQUIRE(matrix_equal(mat, induced_map(m.at(v0), nfam.at(v0), fm, d, 0)));

      const MorphismData<Rational> back = inverse_transpose(n, v0, m_at, n_at, g, -2, 2);
      REQUIRE(morphisms_equal(back, restrict_degrees(f, -2, 2)));

      // transpose of the rebuilt morphism gives back the slice maps
      const SliceMap<Rational> g2 = adjoint_transpose(back, v0);
      SliceMap<Rational> g_cut;
      for (const auto& [d, mat] : g)
        if (d >= -2 && d <= 2) g_cut[d] = mat;
      REQUIRE(slice_maps_equal(g2, g_cut));
    }
  }

  SECTION("projection onto the skyscraper round-trips") {
    SheafFamily<Rational> sky(corpus::skyscraper_p1(), 4);
    const auto sky_at = [&](const Vertex& u) -> const SheafValue<Rational>& { return sky.at(u); };
    const std::vector<std::vector<Entry>> fm = {{Entry{term({0, 0})}}};
    MorphismData<Rational> f;
    for (const Vertex& w : vertices(n))
      for (int d = -2; d <= 6; ++d)
        f.blocks[{w.mask(), d}] = induced_map(m.at(w), sky.at(v0.unite(w)), fm, d, 0);
    const auto dvn_at = [&](const Vertex& w) -> const SheafValue<Rational>& {
      return sky.at(v0.unite(w));
    };
    REQUIRE_NOTHROW(validate_morphism(f, n, m_at, dvn_at));
    const SliceMap<Rational> g = adjoint_transpose(f, v0);
    const MorphismData<Rational> back = inverse_transpose(n, v0, m_at, sky_at, g, -2, 2);
    REQUIRE(morphisms_equal(back, restrict_degrees(f, -2, 2)));
  }

  SECTION("missing clearing degrees are reported") {
    const MorphismData<Rational> f = unit_morphism(m, v0, -2, 2);
    SliceMap<Rational> g = adjoint_transpose(f, v0);
    // degrees above 2 are required to clear denominators of boundary classes
    REQUIRE_THROWS_AS(inverse_transpose(n, v0, m_at, m_at, g, -2, 2), std::invalid_argument);
  }
}

TEST_CASE("support decomposition") {
  SECTION("skyscraper: single maximal chart, unit is an isomorphism") {
    const DecompositionResult<Rational> dec = decomposition_sequence<Rational>(corpus::skyscraper_p1(), 4);
    REQUIRE(dec.maximal == std::vector<Vertex>{Vertex::of({0}, 1)});
    REQUIRE(dec.unit_iso);
    REQUIRE(dec.supp_k.empty());
    REQUIRE(dec.supp_c.empty());
    REQUIRE(dec.strict_decrease);
    REQUIRE(dec.ranks_consistent);
    REQUIRE(dec.kernel_natural);
    REQUIRE(dec.supp_stable);
  }
  SECTION("fat point: still a single chart, still an isomorphism") {
    const DecompositionResult<Rational> dec = decomposition_sequence<Rational>(fat_point_p1(), 4);
    REQUIRE(dec.maximal == std::vector<Vertex>{Vertex::of({0}, 1)});
    REQUIRE(dec.unit_iso);
  }
  SECTION("two points: decomposes into the two chart skyscrapers") {
    const DecompositionResult<Rational> dec = decomposition_sequence<Rational>(corpus::two_points_p1(), 4);
    REQUIRE(dec.maximal == std::vector<Vertex>{Vertex::of({0}, 1), Vertex::of({1}, 1)});
    REQUIRE(dec.unit_iso);
    REQUIRE(dec.strict_decrease);
  }
  SECTION("structure sheaf of P^1: kernel zero, cokernel on the small charts") {
    const DecompositionResult<Rational> dec =
        decomposition_sequence<Rational>(TwistPresentation::twist(1, 0), 4);
    REQUIRE(dec.maximal == std::vector<Vertex>{Vertex::of({0, 1}, 1)});
    REQUIRE_FALSE(dec.unit_iso);
    REQUIRE(dec.supp_k.empty());
    REQUIRE(dec.supp_c == std::vector<Vertex>{Vertex::of({0}, 1), Vertex::of({1}, 1)});
    REQUIRE(dec.strict_decrease);
    REQUIRE(dec.kernel_natural);
  }
  SECTION("line in P^2") {
    const DecompositionResult<Rational> dec = decomposition_sequence<Rational>(corpus::line_p2(), 4);
    REQUIRE(dec.maximal == std::vector<Vertex>{Vertex::of({0, 1}, 2)});
    REQUIRE(dec.supp_k.empty());
    REQUIRE(dec.supp_c == std::vector<Vertex>{Vertex::of({0}, 2), Vertex::of({1}, 2)});
    REQUIRE(dec.strict_decrease);
  }
  SECTION("zero module rejected") {
    REQUIRE_THROWS_AS(decomposition_sequence<Rational>(corpus::zero_sheaf_p1(), 4),
                      std::invalid_argument);
  }
  SECTION("certificates hold across the corpus") {
    for (const TwistPresentation& p :
         {corpus::skyscraper_p1(), corpus::two_points_p1(), fat_point_p1(),
          TwistPresentation::twist(1, 0), TwistPresentation::twist(1, -2), corpus::line_p2()}) {
      const DecompositionResult<Rational> dec = decomposition_sequence<Rational>(p, 4);
      INFO("targets " << p.targets.size() << " n=" << p.n);
      REQUIRE(dec.ranks_consistent);
      REQUIRE(dec.kernel_natural);
      REQUIRE(dec.strict_decrease);
      REQUIRE(dec.supp_stable);
    }
  }
}

TEST_CASE("localization preserves per-multidegree exactness") {
  // 0 -> O(-1) --x1--> O(0) -> skyscraper -> 0 transported through D^{{0}}:
  // at every chart containing {0} and every interior multidegree, the three
  // membership indicators form an exact pattern.
  SheafFamily<Rational> sky(corpus::skyscraper_p1(), 5);
  const Exponents e1 = exps({0, 1});
  for (const Vertex& u : vertices(1)) {
    if (!u.contains(0)) continue;  // charts of the form {0} union w
    for (int d = -2; d <= 2; ++d) {
      for (const Exponents& a : section_basis(u, d, 3).basis) {
        const Exponents pre = a - e1;
        const int has_preimage = valid_at(pre, u) ? 1 : 0;
        const Vector<Rational> cls = sky.at(u).slice(d).reduce_monomial(0, a);
        int survives = 0;
        for (Eigen::Index r = 0; r < cls.size(); ++r)
          if (cls(r) != Rational(0)) survives = 1;
        INFO("u=" << u.str() << " d=" << d << " a=(" << a[0] << "," << a[1] << ")");
        REQUIRE(has_preimage - 1 + survives == 0);
      }
    }
  }
}

TEST_CASE("hom comparison against the right adjoint") {
  const Vertex v0 = Vertex::of({0}, 1), v1 = Vertex::of({1}, 1);
  const TwistPresentation o0 = TwistPresentation::twist(1, 0);

  SECTION("free module against the structure value: both sides are N") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<Rational>(o0, v0, o0, 0, 3, {-1, 0, 1});
    for (const ExtCompareRow& r : rows) {
      INFO("degree " << r.degree);
      // interior slice of N = R({0}): monomials of degree d with sup norm <= 2
      const Eigen::Index expect =
          static_cast<Eigen::Index>(section_basis(v0, r.degree, 3 - 1).basis.size());
      REQUIRE(r.module_side == expect);
      REQUIRE(r.sheaf_side == expect);
      REQUIRE(r.agree());
    }
  }
  SECTION("same comparison over a prime field with a wider window") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<qcoh::Fp<101>>(o0, v0, o0, 0, 4, {0, 1});
    for (const ExtCompareRow& r : rows) {
      const Eigen::Index expect =
          static_cast<Eigen::Index>(section_basis(v0, r.degree, 4 - 1).basis.size());
      REQUIRE(r.module_side == expect);
      REQUIRE(r.agree());
    }
  }
  SECTION("no maps from the skyscraper into the free value") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<Rational>(corpus::skyscraper_p1(), v0, o0, 0, 4, {-1, 0, 1});
    for (const ExtCompareRow& r : rows) {
      REQUIRE(r.module_side == 0);
      REQUIRE(r.sheaf_side == 0);
    }
  }
  SECTION("base chart outside the support: everything vanishes") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<Rational>(corpus::skyscraper_p1(), v1, o0, 0, 4, {0});
    REQUIRE(rows.at(0).module_side == 0);
    REQUIRE(rows.at(0).sheaf_side == 0);
  }
  SECTION("zero target: both sides vanish") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<Rational>(o0, v0, corpus::zero_sheaf_p1(), 0, 4, {-1, 0, 1});
    for (const ExtCompareRow& r : rows) {
      REQUIRE(r.module_side == 0);
      REQUIRE(r.sheaf_side == 0);
    }
  }
  SECTION("maps from the free value into the skyscraper") {
    const std::vector<ExtCompareRow> rows =
        ext_against_dv<Rational>(o0, v0, corpus::skyscraper_p1(), 0, 4, {-1, 0, 1});
    for (const ExtCompareRow& r : rows) {
      INFO("degree " << r.degree);
      REQUIRE(r.module_side == 1);
      REQUIRE(r.sheaf_side == 1);
    }
  }
  SECTION("out-of-scope and invalid inputs") {
    REQUIRE_THROWS_AS(ext_against_dv<Rational>(o0, v0, o0, 1, 4, {0}), std::invalid_argument);
    REQUIRE_THROWS_AS(ext_against_dv<Rational>(non_monomial_p1(), v0, o0, 0, 4, {0}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(ext_against_dv<Rational>(o0, v0, TwistPresentation::twist(2, 0), 0, 4, {0}),
                      std::invalid_argument);
  }
}
