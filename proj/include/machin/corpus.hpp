#pragma once

// The classical formulae, addressable by id.

#include <string>
#include <vector>

#include "machin/relation.hpp"

namespace machin {

struct NamedRelation {
  std::string id;
  ArctanRelation relation;
};

/// machin, euler, hutton, hermann, simson, gauss, wrench1, wrench2, wrench3.
const std::vector<NamedRelation>& known_formulae();

/// Throws std::out_of_range for an unknown id.
const ArctanRelation& formula(const std::string& id);

}  // namespace machin
