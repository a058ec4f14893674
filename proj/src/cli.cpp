#include "qcoh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/cech.hpp"
#include "qcoh/functors.hpp"
#include "qcoh/gorenstein/predicates.hpp"
#include "qcoh/gorenstein/tate.hpp"
#include "qcoh/presentation.hpp"
#include "qcoh/rational.hpp"

namespace qcoh::cli {
namespace {

using json = nlohmann::ordered_json;
using Table = std::vector<std::vector<std::string>>;

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  const auto bad = [&]() -> Range {
    throw std::invalid_argument("range '" + s + "' is not of the form a..b");
  };
  const size_t dots = s.find("..");
  if (dots == std::string::npos) return bad();
  Range r;
  try {
    size_t used = 0;
    r.lo = std::stoi(s.substr(0, dots), &used);
    if (used != dots) return bad();
    const std::string rest = s.substr(dots + 2);
    r.hi = std::stoi(rest, &used);
    if (used != rest.size()) return bad();
  } catch (const std::out_of_range&) {
    return bad();
  } catch (const std::invalid_argument&) {
    return bad();
  }
  if (r.lo > r.hi) throw std::invalid_argument("range '" + s + "' is empty");
  return r;
}

std::string chart_name(const Vertex& v) {
  std::string s;
  for (int i = 0; i <= v.n(); ++i) {
    if (!v.contains(i)) continue;
    if (!s.empty()) s += '+';
    s += std::to_string(i);
  }
  return s;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void emit(const json& doc, const Table& table, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    for (const auto& row : table) {
      for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
  } else {
    out << doc.dump(2) << '\n';
  }
}

// Prints the report, then turns the collected certificate failures into the
// exit status, loudly: every failure is named on the diagnostic stream.
int finish(const json& doc, const Table& table, const std::string& format,
           const std::vector<std::string>& failures, std::ostream& out, std::ostream& err) {
  emit(doc, table, format, out);
  for (const std::string& f : failures) err << "certificate failed: " << f << '\n';
  return failures.empty() ? 0 : 1;
}

TwistPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open presentation file '" + path + "'");
  return parse_presentation(in);
}

void check_n(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("--n must lie in 1..6 (chart count is 2^(n+1))");
}

long long binom(long long a, long long k) {
  if (k < 0 || a < 0 || k > a) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (a - k + i) / i;
  return r;
}

// Closed-form line-bundle dimensions: monomial counts in degree d and the
// dual count in the all-negative corner; everything between vanishes.
std::vector<long long> twist_oracle(int n, int d) {
  std::vector<long long> h(static_cast<size_t>(n) + 1, 0);
  h.front() = binom(n + d, n);
  h.back() = binom(-d - 1, n);
  return h;
}

// ---------------------------------------------------------------- cohomology

int cmd_cohomology(std::optional<int> n_opt, int twist, std::optional<int> window,
                   const std::string& sheaf_path, bool check, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  CohomologyRow row;
  const bool presented = !sheaf_path.empty();
  if (presented) {
    const TwistPresentation p = load_presentation(sheaf_path);
    if (n_opt && *n_opt != p.n)
      throw std::invalid_argument("--n disagrees with the presentation file");
    const int W = window ? *window : std::abs(twist) + p.n + 2;
    row = presented_cohomology<Rational>(p, W, twist);
  } else {
    if (!n_opt) throw std::invalid_argument("cohomology needs --n or --sheaf");
    check_n(*n_opt);
    const int W = window ? *window : std::abs(twist) + *n_opt + 2;
    row = cohomology_table<Rational>(*n_opt, twist, twist, W).front();
  }

  json doc;
  doc["command"] = "cohomology";
  doc["n"] = row.n;
  doc["d"] = row.d;
  doc["window"] = row.window;
  doc["h"] = row.h;
  doc["stabilized"] = row.stabilized;

  Table table{{"n", "d", "window", "stabilized", "i", "h"}};
  for (size_t i = 0; i < row.h.size(); ++i)
    table.push_back({std::to_string(row.n), std::to_string(row.d), std::to_string(row.window),
                     row.stabilized ? "1" : "0", std::to_string(i), std::to_string(row.h[i])});

  std::vector<std::string> failures;
  if (!row.stabilized)
    failures.push_back("dimensions change between windows " + std::to_string(row.window) +
                       " and " + std::to_string(row.window + 2) + "; enlarge --window");
  if (check) {
    if (presented) {
      const TwistPresentation p = load_presentation(sheaf_path);
      const CohomologyRow deep = presented_cohomology<Rational>(p, row.window + 4, twist);
      if (deep.h != row.h) failures.push_back("dimensions still moving at window + 4");
    } else {
      const std::vector<long long> want = twist_oracle(row.n, row.d);
      for (int i = 0; i <= row.n; ++i)
        if (static_cast<long long>(row.h[static_cast<size_t>(i)]) != want[static_cast<size_t>(i)])
          failures.push_back("h^" + std::to_string(i) + " disagrees with the closed-form count");
    }
  }
  return finish(doc, table, format, failures, out, err);
}

// ---------------------------------------------------------------- ext-twists

int cmd_ext_twists(int n, int source, const Range& r, std::optional<int> window, bool check,
                   const std::string& format, std::ostream& out, std::ostream& err) {
  check_n(n);
  const int spread = std::max(std::abs(r.lo - source), std::abs(r.hi - source));
  const int W = window ? *window : spread + n + 2;

  json doc;
  doc["command"] = "ext-twists";
  doc["n"] = n;
  doc["source"] = source;
  doc["window"] = W;
  doc["rows"] = json::array();
  Table table{{"n", "source", "window", "d", "stabilized", "i", "dim"}};
  std::vector<std::string> failures;

  for (int d = r.lo; d <= r.hi; ++d) {
    const std::vector<Eigen::Index> h = twist_cohomology_dims<Rational>(n, d - source, W);
    const bool stab = twist_cohomology_dims<Rational>(n, d - source, W + 2) == h;
    json jr;
    jr["d"] = d;
    jr["dims"] = h;
    jr["stabilized"] = stab;
    doc["rows"].push_back(jr);
    for (size_t i = 0; i < h.size(); ++i)
      table.push_back({std::to_string(n), std::to_string(source), std::to_string(W),
                       std::to_string(d), stab ? "1" : "0", std::to_string(i),
                       std::to_string(h[i])});
    if (!stab)
      failures.push_back("dimensions for d=" + std::to_string(d) + " not stabilized; enlarge --window");
    if (check) {
      const std::vector<long long> want = twist_oracle(n, d - source);
      for (int i = 0; i <= n; ++i)
        if (static_cast<long long>(h[static_cast<size_t>(i)]) != want[static_cast<size_t>(i)])
          failures.push_back("ext^" + std::to_string(i) + " at d=" + std::to_string(d) +
                             " disagrees with the closed-form count");
    }
  }
  return finish(doc, table, format, failures, out, err);
}

// ----------------------------------------------------------------- decompose

json charts_json(const std::vector<Vertex>& charts) {
  json arr = json::array();
  for (const Vertex& v : charts) arr.push_back(chart_name(v));
  return arr;
}

int cmd_decompose(const std::string& sheaf_path, std::optional<int> window, bool check,
                  const std::string& format, std::ostream& out, std::ostream& err) {
  const TwistPresentation p = load_presentation(sheaf_path);
  const int W = window ? *window : p.n + 2 + p.max_entry_exponent();
  const DecompositionResult<Rational> res = decomposition_sequence<Rational>(p, W);

  std::map<uint32_t, std::array<long long, 4>> totals;
  for (const auto& [key, s] : res.slices) {
    auto& t = totals[key.first];
    t[0] += s.k_dim;
    t[1] += s.m_dim;
    t[2] += s.mid_dim;
    t[3] += s.c_dim;
  }

  json doc;
  doc["command"] = "decompose";
  doc["n"] = p.n;
  doc["window"] = W;
  doc["maximal"] = charts_json(res.maximal);
  doc["supports"] = {{"module", charts_json(res.supp_m)},
                     {"kernel", charts_json(res.supp_k)},
                     {"cokernel", charts_json(res.supp_c)}};
  doc["charts"] = json::array();
  doc["certificates"] = {{"supports_stable", res.supp_stable},
                         {"ranks_consistent", res.ranks_consistent},
                         {"kernel_natural", res.kernel_natural},
                         {"strict_decrease", res.strict_decrease}};
  doc["unit_iso"] = res.unit_iso;

  const auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  Table table{{"chart", "k", "m", "mid", "c", "supports_stable", "ranks_consistent",
               "kernel_natural", "strict_decrease", "unit_iso"}};
  for (const Vertex& v : vertices(p.n)) {
    const auto& t = totals[v.mask()];
    doc["charts"].push_back(
        {{"chart", chart_name(v)}, {"k", t[0]}, {"m", t[1]}, {"mid", t[2]}, {"c", t[3]}});
    table.push_back({chart_name(v), std::to_string(t[0]), std::to_string(t[1]),
                     std::to_string(t[2]), std::to_string(t[3]), flag(res.supp_stable),
                     flag(res.ranks_consistent), flag(res.kernel_natural),
                     flag(res.strict_decrease), flag(res.unit_iso)});
  }

  std::vector<std::string> failures;
  if (!res.supp_stable) failures.push_back("support changes at window + 2; enlarge --window");
  if (!res.ranks_consistent) failures.push_back("slice ranks are inconsistent");
  if (!res.kernel_natural) failures.push_back("kernel is not preserved by restrictions");
  if (!res.strict_decrease)
    failures.push_back("kernel or cokernel support is not strictly smaller");
  if (check) {
    const DecompositionResult<Rational> wide = decomposition_sequence<Rational>(p, W + 2);
    if (wide.maximal != res.maximal)
      failures.push_back("maximal support charts change at window + 2");
    if (!(wide.supp_stable && wide.ranks_consistent && wide.kernel_natural &&
          wide.strict_decrease))
      failures.push_back("decomposition certificates fail at window + 2");
  }
  return finish(doc, table, format, failures, out, err);
}

// ---------------------------------------------------------- adjunction-check

using AtFn = std::function<const SheafValue<Rational>&(const Vertex&)>;

bool round_trip(int n, const Vertex& v, const AtFn& src_at, const AtFn& n_at,
                const MorphismData<Rational>& f) {
  try {
    const SliceMap<Rational> g = adjoint_transpose(f, v);
    const MorphismData<Rational> back = inverse_transpose(n, v, src_at, n_at, g, -2, 2);
    MorphismData<Rational> cut;
    for (const auto& [key, mat] : f.blocks)
      if (key.second >= -2 && key.second <= 2) cut.blocks[key] = mat;
    if (!morphisms_equal(back, cut)) return false;
    SliceMap<Rational> gcut;
    for (const auto& [d, mat] : g)
      if (d >= -2 && d <= 2) gcut[d] = mat;
    return slice_maps_equal(adjoint_transpose(back, v), gcut);
  } catch (const std::exception&) {
    return false;
  }
}

struct TripRow {
  std::string kind;
  std::string chart;
  bool ok = false;
};

// One presentation-level quotient coker(x_n^e: O(-e) -> O): e = 1 cuts out a
// hyperplane, e = 2 thickens it.
TwistPresentation hyperplane_quotient(int n, int e) {
  TwistPresentation p;
  p.n = n;
  p.targets = {0};
  p.sources = {-e};
  Exponents a = Exponents::Zero(n + 1);
  a[n] = e;
  p.matrix = {{Entry{Term{a, Rational(1)}}}};
  p.validate();
  return p;
}

std::vector<TripRow> adjunction_rows(int n, int W) {
  check_n(n);
  if (W < 2) throw std::invalid_argument("adjunction-check needs --window >= 2");
  const SheafFamily<Rational> m(TwistPresentation::twist(n, 0), W);
  // one extra exponent of room: linear forms push window monomials one step
  const SheafFamily<Rational> one(TwistPresentation::twist(n, 1), W + 1);
  const SheafFamily<Rational> point(hyperplane_quotient(n, 1), W);
  const SheafFamily<Rational> fat(hyperplane_quotient(n, 2), W);
  const AtFn m_at = [&m](const Vertex& w) -> const SheafValue<Rational>& { return m.at(w); };
  const AtFn one_at = [&one](const Vertex& w) -> const SheafValue<Rational>& { return one.at(w); };
  const AtFn point_at = [&point](const Vertex& w) -> const SheafValue<Rational>& {
    return point.at(w);
  };
  const AtFn fat_at = [&fat](const Vertex& w) -> const SheafValue<Rational>& { return fat.at(w); };

  // g must cover every degree reached while clearing denominators: at most
  // n off-base coordinates, each no deeper than the window.
  const int cap = 3 + n * W;

  // three fixed coefficient vectors for linear-form morphisms O -> D^v(O(1))
  std::vector<std::vector<Rational>> coeffs(3, std::vector<Rational>(static_cast<size_t>(n) + 1));
  for (int i = 0; i <= n; ++i) {
    coeffs[0][static_cast<size_t>(i)] = (i == 0) ? Rational(1) : Rational(0);
    coeffs[1][static_cast<size_t>(i)] = Rational(1);
    coeffs[2][static_cast<size_t>(i)] = (i % 2 == 0) ? Rational(2) : Rational(-3);
  }

  std::vector<TripRow> rows;
  for (const Vertex& v : vertices(n)) {
    const std::string chart = chart_name(v);
    const AtFn dv_at = [&m, v](const Vertex& w) -> const SheafValue<Rational>& {
      return m.at(v.unite(w));
    };

    {
      const MorphismData<Rational> f = unit_morphism(m, v, -2, cap);
      rows.push_back({"unit", chart, round_trip(n, v, m_at, m_at, f)});
    }
    {
      MorphismData<Rational> f;
      for (const Vertex& w : vertices(n))
        for (int d = -2; d <= cap; ++d)
          f.blocks[{w.mask(), d}] =
              Matrix<Rational>::Zero(m.at(v.unite(w)).dim(d), m.at(w).dim(d));
      rows.push_back({"zero", chart, round_trip(n, v, m_at, m_at, f)});
    }
    {
      MorphismData<Rational> f;
      for (const Vertex& w : vertices(n))
        for (int d = -2; d <= cap; ++d) {
          const Eigen::Index k = m.at(v.unite(w)).dim(d);
          f.blocks[{w.mask(), d}] = Matrix<Rational>::Identity(k, k);
        }
      rows.push_back({"identity", chart, round_trip(n, v, dv_at, m_at, f)});
    }
    for (size_t ci = 0; ci < coeffs.size(); ++ci) {
      Entry entry;
      for (int i = 0; i <= n; ++i) {
        if (coeffs[ci][static_cast<size_t>(i)] == Rational(0)) continue;
        Exponents a = Exponents::Zero(n + 1);
        a[i] = 1;
        entry.push_back(Term{a, coeffs[ci][static_cast<size_t>(i)]});
      }
      const std::vector<std::vector<Entry>> fm = {{entry}};
      MorphismData<Rational> f;
      for (const Vertex& w : vertices(n))
        for (int d = -2; d <= cap; ++d)
          f.blocks[{w.mask(), d}] = induced_map(m.at(w), one.at(v.unite(w)), fm, d, 0);
      rows.push_back({"linear-" + std::to_string(ci), chart, round_trip(n, v, m_at, one_at, f)});
    }
    for (const auto& [kind, fam, at] :
         std::vector<std::tuple<std::string, const SheafFamily<Rational>*, const AtFn*>>{
             {"point", &point, &point_at}, {"fat-point", &fat, &fat_at}}) {
      const std::vector<std::vector<Entry>> fm = {
          {Entry{Term{Exponents::Zero(n + 1), Rational(1)}}}};
      MorphismData<Rational> f;
      for (const Vertex& w : vertices(n))
        for (int d = -2; d <= cap; ++d)
          f.blocks[{w.mask(), d}] = induced_map(m.at(w), fam->at(v.unite(w)), fm, d, 0);
      rows.push_back({kind, chart, round_trip(n, v, m_at, *at, f)});
    }
  }
  return rows;
}

int cmd_adjunction(int n, std::optional<int> window, bool check, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  const int W = window ? *window : 4;
  const std::vector<TripRow> rows = adjunction_rows(n, W);

  json doc;
  doc["command"] = "adjunction-check";
  doc["n"] = n;
  doc["window"] = W;
  doc["count"] = rows.size();
  doc["rows"] = json::array();
  Table table{{"kind", "chart", "ok"}};
  bool all_ok = true;
  for (const TripRow& r : rows) {
    doc["rows"].push_back({{"kind", r.kind}, {"chart", r.chart}, {"ok", r.ok}});
    table.push_back({r.kind, r.chart, r.ok ? "1" : "0"});
    all_ok = all_ok && r.ok;
  }
  doc["all_ok"] = all_ok;

  std::vector<std::string> failures;
  for (const TripRow& r : rows)
    if (!r.ok) failures.push_back(r.kind + " morphism at chart " + r.chart + " fails to round-trip");
  if (check)
    for (const TripRow& r : adjunction_rows(n, W + 1))
      if (!r.ok)
        failures.push_back(r.kind + " morphism at chart " + r.chart +
                           " fails to round-trip at window + 1");
  return finish(doc, table, format, failures, out, err);
}

// ---------------------------------------------------------------------- tate

int cmd_tate(const std::string& ring_spec, const std::string& module_spec,
             const std::string& against_spec, const Range& r, bool check,
             const std::string& format, std::ostream& out, std::ostream& err) {
  const gor::FiniteRing R = gor::parse_ring(ring_spec);
  const gor::FinModule M = gor::parse_module(R, module_spec);
  const gor::FinModule N = gor::parse_module(R, against_spec);
  const gor::TateTable t = gor::tate_table(M, N, r.lo, r.hi);

  json doc;
  doc["command"] = "tate";
  doc["ring"] = R.name;
  doc["module"] = M.describe();
  doc["against"] = N.describe();
  doc["lo"] = r.lo;
  doc["hi"] = r.hi;
  doc["rows"] = json::array();
  Table table{{"i", "dim"}};
  for (const auto& [i, dim] : t.dims) {
    doc["rows"].push_back({{"i", i}, {"dim", dim}});
    table.push_back({std::to_string(i), std::to_string(dim)});
  }

  std::vector<std::string> failures;
  if (check) {
    const gor::TateTable inj = gor::tate_table_injective_side(M, N, r.lo, r.hi);
    bool balanced = inj.dims == t.dims;
    doc["balanced"] = balanced;
    if (!balanced)
      failures.push_back("projective-side and injective-side dimensions disagree");
  }
  return finish(doc, table, format, failures, out, err);
}

// ------------------------------------------------------------------ am-check

int cmd_am_check(const std::string& ring_spec, const std::string& module_spec,
                 const std::string& against_spec, const Range& r, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  if (r.lo < 1) throw std::invalid_argument("--degree-range must start at 1 or later");
  const gor::FiniteRing R = gor::parse_ring(ring_spec);
  const gor::FinModule M = gor::parse_module(R, module_spec);
  const gor::FinModule N = gor::parse_module(R, against_spec);
  const gor::AmReport rep = gor::am_sequence_check(M, N, r.hi);

  json doc;
  doc["command"] = "am-check";
  doc["ring"] = R.name;
  doc["module"] = M.describe();
  doc["against"] = N.describe();
  doc["rows"] = json::array();
  Table table{{"i", "gext", "ext", "tate", "iso", "exact"}};
  for (const gor::AmRow& row : rep.rows) {
    if (row.i < r.lo || row.i > r.hi) continue;
    doc["rows"].push_back({{"i", row.i},
                           {"gext", row.gext},
                           {"ext", row.ext},
                           {"tate", row.tate},
                           {"iso", row.iso_ext_tate}});
    table.push_back({std::to_string(row.i), std::to_string(row.gext), std::to_string(row.ext),
                     std::to_string(row.tate), row.iso_ext_tate ? "1" : "0",
                     rep.exact ? "1" : "0"});
  }
  doc["exact"] = rep.exact;

  std::vector<std::string> failures;
  if (!rep.exact)
    failures.push_back("relative-to-absolute comparison sequence is not exact for this pair");
  return finish(doc, table, format, failures, out, err);
}

// ---------------------------------------------------------- gorenstein-report

int cmd_gorenstein(const std::string& ring_spec, int size_bound, const Range& probe_range,
                   const std::string& format, std::ostream& out, std::ostream& err) {
  if (probe_range.lo < 1) throw std::invalid_argument("--degree-range must start at 1 or later");
  const gor::FiniteRing R = gor::parse_ring(ring_spec);
  const int bound = size_bound > 0 ? size_bound : R.q * R.q;
  const gor::GorensteinReport rep =
      gor::gorenstein_predicates(R, bound, 2, 2, probe_range.hi);

  json doc;
  doc["command"] = "gorenstein-report";
  doc["ring"] = rep.ring_name;
  doc["self_injective"] = rep.self_injective;
  doc["probe_degree"] = rep.probe_degree;
  doc["size_bound"] = bound;
  doc["verdict"] = rep.all_true ? "all-true" : (rep.all_false ? "all-false" : "mixed");
  doc["conditions"] = json::array();
  const auto& names = gor::gorenstein_condition_names();
  Table table{{"condition", "holds"}};
  for (size_t i = 0; i < rep.conditions.size(); ++i) {
    doc["conditions"].push_back(
        {{"index", i + 1}, {"name", names[i]}, {"holds", rep.conditions[i]}});
    table.push_back({std::to_string(i + 1), rep.conditions[i] ? "1" : "0"});
  }
  doc["witnesses"] = rep.witnesses;
  doc["modules"] = json::array();
  for (const gor::ModuleFacts& f : rep.modules) {
    json jm;
    jm["module"] = f.desc;
    jm["projective"] = f.projective;
    jm["injective"] = f.injective;
    jm["pd"] = f.pd ? json(*f.pd) : json(nullptr);
    jm["id"] = f.id ? json(*f.id) : json(nullptr);
    jm["gorenstein_projective_certified"] = f.gproj_certified;
    jm["period"] = f.period;
    doc["modules"].push_back(jm);
  }
  doc["finitistic"] = {{"pd", rep.fpd ? json(*rep.fpd) : json(nullptr)},
                       {"id", rep.fid ? json(*rep.fid) : json(nullptr)}};
  doc["global_gorenstein"] = {{"pd", rep.gl_gpd ? json(*rep.gl_gpd) : json(nullptr)},
                              {"id", rep.gl_gid ? json(*rep.gl_gid) : json(nullptr)}};
  doc["four_way_zero"] = rep.four_way_zero;
  doc["pd_id_iff"] = rep.pd_id_iff;

  std::vector<std::string> failures;
  if (!rep.coherent)
    failures.push_back("the eight conditions disagree (mixed verdict)");
  if (!rep.gl_gpd || !rep.gl_gid)
    failures.push_back("a module lacks a certified complete resolution");
  if (!rep.four_way_zero)
    failures.push_back("finitistic and global Gorenstein dimensions are not all zero");
  if (!rep.pd_id_iff)
    failures.push_back("finite projective and injective dimension do not coincide");
  return finish(doc, table, format, failures, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact sheaf cohomology on projective space and a finite Gorenstein laboratory"};
  app.require_subcommand(1);

  std::string format = "json";
  const auto add_common = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val("json");
  };

  std::optional<int> n_opt;
  int twist = 0;
  std::optional<int> window;
  std::string sheaf_path;
  bool check = false;

  CLI::App* coh = app.add_subcommand("cohomology", "twisted cohomology dimensions h^i");
  coh->add_option("--n", n_opt, "projective dimension of the ambient space");
  coh->add_option("--twist", twist, "twist degree d");
  coh->add_option("--window", window, "exponent window (defaults to |twist| + n + 2)");
  coh->add_option("--sheaf", sheaf_path, "presentation file instead of a line bundle");
  coh->add_flag("--check", check, "cross-check against a wider window / closed form");
  add_common(coh);

  int en = 1, source = 0;
  std::string range_str = "-3..3";
  CLI::App* ext = app.add_subcommand("ext-twists", "ext dimensions between line bundles");
  ext->add_option("--n", en, "projective dimension of the ambient space")->required();
  ext->add_option("--twist", source, "source twist (defaults to 0)");
  ext->add_option("--range", range_str, "target twist range a..b");
  ext->add_option("--window", window, "exponent window");
  ext->add_flag("--check", check, "cross-check against the closed-form counts");
  add_common(ext);

  std::string pos_path;
  CLI::App* dec = app.add_subcommand("decompose", "kernel/image/cokernel support decomposition");
  dec->add_option("file", pos_path, "presentation file");
  dec->add_option("--sheaf", sheaf_path, "presentation file");
  dec->add_option("--window", window, "exponent window");
  dec->add_flag("--check", check, "re-run the certificates at window + 2");
  add_common(dec);

  int an = 1;
  CLI::App* adj = app.add_subcommand("adjunction-check",
                                     "round-trip generated morphisms through the adjunction");
  adj->add_option("--n", an, "projective dimension of the ambient space")->required();
  adj->add_option("--window", window, "exponent window (defaults to 4)");
  adj->add_flag("--check", check, "repeat the round-trips at window + 1");
  add_common(adj);

  std::string ring_spec, module_spec = "k", against_spec = "k";
  CLI::App* tate = app.add_subcommand("tate", "stable cohomology dimensions over a finite ring");
  tate->add_option("--ring", ring_spec, "ring spec, Zmod:m or GF:p:f")->required();
  tate->add_option("--module", module_spec, "module spec: k, R, free:g or quot:...");
  tate->add_option("--against", against_spec, "second argument module");
  tate->add_option("--range", range_str, "degree range a..b")->default_val("-3..3");
  tate->add_flag("--check", check, "also compute the injective-side table and compare");
  add_common(tate);

  std::string degree_range = "1..5";
  CLI::App* am = app.add_subcommand("am-check",
                                    "exactness of the relative-to-absolute comparison sequence");
  am->add_option("--ring", ring_spec, "ring spec, Zmod:m or GF:p:f")->required();
  am->add_option("--module", module_spec, "module spec");
  am->add_option("--against", against_spec, "second argument module");
  am->add_option("--degree-range", degree_range, "degrees to report, a..b with a >= 1");
  add_common(am);

  int size_bound = 0;
  std::string probe_range = "1..3";
  CLI::App* gor_cmd = app.add_subcommand("gorenstein-report",
                                         "eight equivalent finiteness conditions over a ring");
  gor_cmd->add_option("--ring", ring_spec, "ring spec, Zmod:m or GF:p:f")->required();
  gor_cmd->add_option("--size-bound", size_bound, "largest module size surveyed (default q^2)");
  gor_cmd->add_option("--degree-range", probe_range, "probe degrees, 1..p");
  add_common(gor_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (coh->parsed())
      return cmd_cohomology(n_opt, twist, window, sheaf_path, check, format, out, err);
    if (ext->parsed())
      return cmd_ext_twists(en, source, parse_range(range_str), window, check, format, out, err);
    if (dec->parsed()) {
      if (!pos_path.empty() && !sheaf_path.empty() && pos_path != sheaf_path)
        throw std::invalid_argument("two different presentation files given");
      const std::string path = sheaf_path.empty() ? pos_path : sheaf_path;
      if (path.empty()) throw std::invalid_argument("decompose needs a presentation file");
      return cmd_decompose(path, window, check, format, out, err);
    }
    if (adj->parsed()) return cmd_adjunction(an, window, check, format, out, err);
    if (tate->parsed())
      return cmd_tate(ring_spec, module_spec, against_spec, parse_range(range_str), check, format,
                      out, err);
    if (am->parsed())
      return cmd_am_check(ring_spec, module_spec, against_spec, parse_range(degree_range), format,
                          out, err);
    if (gor_cmd->parsed())
      return cmd_gorenstein(ring_spec, size_bound, parse_range(probe_range), format, out, err);
    err << "error: no command selected\n";
    return 2;
  } catch (const WindowError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "certificate failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qcoh::cli
