#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/gorenstein/tate.hpp"

namespace qcoh::gor {

struct ModuleFacts {
  FinModule M;
  std::string desc;
  bool projective = false;
  bool injective = false;
  std::optional<int> pd, id;  // nullopt = certified infinite
  bool gproj_certified = false;
  int period = 0;
};

/**
 * Survey of a finite module universe over a self-injective ring. The eight
 * conditions are jointly equivalent characterizations of vanishing stable
 * cohomology; `coherent` records that the probe saw them agree unanimously.
 */
struct GorensteinReport {
  std::string ring_name;
  bool self_injective = false;
  int probe_degree = 3;
  std::vector<ModuleFacts> modules;

  std::array<bool, 8> conditions{};
  std::vector<std::string> witnesses;
  bool all_true = false, all_false = false, coherent = false;

  std::optional<int> fpd, fid;        // sup of the finite pd / id values
  std::optional<int> gl_gpd, gl_gid;  // sup of certified Gorenstein dimensions
  bool four_way_zero = false;
  bool pd_id_iff = false;
};

const std::array<std::string, 8>& gorenstein_condition_names();

// Iso-class representatives of cokernel presentations within the bounds.
std::vector<FinModule> enumerate_modules(const FiniteRing& R, int size_bound, int max_gens = 2,
                                         int max_rels = 2);

GorensteinReport gorenstein_predicates(const FiniteRing& R, int size_bound, int max_gens = 2,
                                       int max_rels = 2, int probe_degree = 3);

}  // namespace qcoh::gor
