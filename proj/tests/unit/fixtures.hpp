#pragma once

#include "jsrkit/matrix_set.hpp"

namespace fixtures {

inline jsrkit::MatrixSet ando_shih() {
  using jsrkit::Matrix;
  return jsrkit::MatrixSet({Matrix{{1, 0}, {1, 0}}, Matrix{{0, 1}, {0, -1}}}, "ando_shih");
}

inline jsrkit::MatrixSet example5() {
  using jsrkit::Matrix;
  return jsrkit::MatrixSet({Matrix{{0, 1, 7, 4}, {1, 6, -2, -3}, {-1, -1, -2, -6}, {3, 0, 9, 1}},
                            Matrix{{-3, 3, 0, -2}, {-2, 1, 4, 9}, {4, -3, 1, 1}, {1, -5, -1, -2}},
                            Matrix{{1, 4, 5, 10}, {0, 5, 1, -4}, {0, -1, 4, 6}, {-1, 5, 0, 1}}},
                           "example5");
}

}  // namespace fixtures
