#pragma once

#include <array>
#include <string>

#include "sstkit/integer.hpp"

namespace sstkit {

/// 2x2 matrix over a commutative ring, entries row-major.
template <class T>
struct Matrix2 {
  std::array<T, 4> e{};

  static Matrix2 identity() { return Matrix2{{T(1), T(0), T(0), T(1)}}; }

  T& operator()(int r, int c) { return e[r * 2 + c]; }
  const T& operator()(int r, int c) const { return e[r * 2 + c]; }

  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return Matrix2{{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
                    a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
  }

  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return Matrix2{{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
  }

  friend bool operator==(const Matrix2& a, const Matrix2& b) { return a.e == b.e; }
};

using IntMatrix = Matrix2<Integer>;

inline std::string to_string(const IntMatrix& m) {
  return "[[" + m.e[0].get_str() + "," + m.e[1].get_str() + "],[" + m.e[2].get_str() + "," + m.e[3].get_str() + "]]";
}

} // namespace sstkit
