#include "eulerperm/grid.hpp"

#include <cmath>
#include <string>

#include "eulerperm/error.hpp"

namespace eulerperm {

Grid::Grid(int n, double box_length) : n_(n), length_(box_length) {
  if (n < 4 || n % 2 != 0) throw InvalidInput("grid size must be even and >= 4, got " + std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length)) throw InvalidInput("box length must be positive");
}

}  // namespace eulerperm
