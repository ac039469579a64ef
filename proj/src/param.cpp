#include "cbtau/param.hpp"

#include "cbtau/errors.hpp"

namespace cbtau {

const Rational& ParameterPoint::at(std::string_view symbol) const {
  auto it = values_.find(symbol);
  if (it == values_.end()) throw MissingSymbol(std::string(symbol));
  return it->second;
}

}  // namespace cbtau
