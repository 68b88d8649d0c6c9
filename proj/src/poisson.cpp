#include "sepvar/poisson.hpp"

#include <charconv>

namespace sepvar {

PoissonStructure PoissonStructure::canonical(std::size_t n) {
  return PoissonStructure(std::vector<LaurentPoly2>(n, LaurentPoly2(Rational(1))), "canonical");
}

PoissonStructure PoissonStructure::slot(std::size_t n, std::size_t k) {
  if (k >= n) throw InputError("slot " + std::to_string(k + 1) + " out of range 1.." + std::to_string(n));
  std::vector<LaurentPoly2> w(n);
  w[k] = LaurentPoly2(Rational(1));
  return PoissonStructure(std::move(w), "slot:" + std::to_string(k + 1));
}

bool parse_structure_shorthand(const std::string& text, std::size_t n, PoissonStructure& out) {
  if (text == "canonical") {
    out = PoissonStructure::canonical(n);
    return true;
  }
  if (text.rfind("slot:", 0) != 0) return false;
  std::size_t k = 0;
  const char* first = text.data() + 5;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last || first == last) throw InputError("malformed structure '" + text + "'");
  if (k == 0 || k > n) throw InputError("structure '" + text + "' is out of range 1.." + std::to_string(n));
  out = PoissonStructure::slot(n, k - 1);
  return true;
}

} // namespace sepvar
