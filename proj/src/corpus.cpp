#include "machin/corpus.hpp"

#include <stdexcept>

namespace machin {

namespace {

NamedRelation make(const char* id, const char* text) { return {id, parse_relation(text)}; }

}  // namespace

const std::vector<NamedRelation>& known_formulae() {
  static const std::vector<NamedRelation> all = {
      make("machin", "4*atan(1/5) - 1*atan(1/239) = 1*pi/4"),
      make("euler", "1*atan(1/2) + 1*atan(1/3) = 1*pi/4"),
      make("hutton", "2*atan(1/2) - 1*atan(1/7) = 1*pi/4"),
      make("hermann", "2*atan(1/3) + 1*atan(1/7) = 1*pi/4"),
      make("simson", "8*atan(1/10) - 1*atan(1/239) - 4*atan(1/515) = 1*pi/4"),
      make("gauss", "12*atan(1/18) + 8*atan(1/57) - 5*atan(1/239) = 1*pi/4"),
      make("wrench1", "5*atan(1/2) + 2*atan(1/53) + 1*atan(1/4443) = 3*pi/4"),
      make("wrench2", "5*atan(1/3) - 2*atan(1/53) - 1*atan(1/4443) = 2*pi/4"),
      make("wrench3", "5*atan(1/7) + 4*atan(1/53) + 2*atan(1/4443) = 1*pi/4"),
  };
  return all;
}

const ArctanRelation& formula(const std::string& id) {
  for (const auto& f : known_formulae()) {
    if (f.id == id) return f.relation;
  }
  throw std::out_of_range("unknown formula id: " + id);
}

}  // namespace machin
