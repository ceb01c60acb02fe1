#pragma once

// The 8-dimensional quadratic space of Zorn matrices: the Gram matrix J,
// multiplication operators as matrices, orthogonality tests and the
// spinor-norm criterion for membership in Omega.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moufang/composition.hpp"
#include "moufang/fields.hpp"

namespace moufang {

using Vector8 = std::array<FieldElement, 8>;

/// 8x8 matrix over GF(q) acting on column vectors in the (x0..x7) coordinates.
struct Matrix8 {
  std::array<std::array<FieldElement, 8>, 8> m;

  static Matrix8 filled(const FieldElement& v) {
    Matrix8 r;
    for (auto& row : r.m) row.fill(v);
    return r;
  }
  static Matrix8 identity(const Field& f) {
    Matrix8 r = filled(f.zero());
    for (int i = 0; i < 8; ++i) r.m[i][i] = f.one();
    return r;
  }
  FieldElement& operator()(int i, int j) { return m[i][j]; }
  const FieldElement& operator()(int i, int j) const { return m[i][j]; }

  Vector8 column(int j) const {
    Vector8 v;
    for (int i = 0; i < 8; ++i) v[i] = m[i][j];
    return v;
  }
  Matrix8 transpose() const {
    Matrix8 r = *this;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  friend Matrix8 operator*(const Matrix8& a, const Matrix8& b) {
    Matrix8 r = filled(zero_like(a.m[0][0]));
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < 8; ++k) {
        if (a.m[i][k].is_zero()) continue;
        for (int j = 0; j < 8; ++j) r.m[i][j] += a.m[i][k] * b.m[k][j];
      }
    return r;
  }
  friend Matrix8 operator-(const Matrix8& a, const Matrix8& b) {
    Matrix8 r = a;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) r.m[i][j] -= b.m[i][j];
    return r;
  }
  friend Matrix8 operator+(const Matrix8& a, const Matrix8& b) {
    Matrix8 r = a;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) r.m[i][j] += b.m[i][j];
    return r;
  }
  friend Vector8 operator*(const Matrix8& a, const Vector8& v) {
    Vector8 r;
    r.fill(zero_like(v[0]));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) r[i] += a.m[i][j] * v[j];
    return r;
  }
  friend bool operator==(const Matrix8&, const Matrix8&) = default;
};

inline std::string to_string(const Matrix8& a) {
  std::string s;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) s += (j ? " " : "") + to_string(a.m[i][j]);
    s += "\n";
  }
  return s;
}

/// Gram matrix J of the bilinear form: <x,y> = x^t J y.
inline Matrix8 form_matrix(const Field& f) {
  Matrix8 r;
  r.m = gram_matrix(f.one());
  return r;
}

enum class Side { left, right };

/// Column j is the coordinate vector of a*e_j (left) or e_j*a (right).
inline Matrix8 mult_operator_matrix(const ZornF& a, Side side) {
  const FieldElement z = zero_like(a.a);
  Matrix8 r = Matrix8::filled(z);
  for (int j = 0; j < 8; ++j) {
    std::array<FieldElement, 8> e;
    e.fill(z);
    e[j] = one_like(a.a);
    const ZornF ej = ZornF::from_coords(e);
    const auto col = (side == Side::left ? a * ej : ej * a).coords();
    for (int i = 0; i < 8; ++i) r.m[i][j] = col[i];
  }
  return r;
}

/// Matrix of the map x -> conj(x).
inline Matrix8 conjugation_matrix(const Field& f) {
  Matrix8 r = Matrix8::filled(f.zero());
  r.m[0][7] = r.m[7][0] = f.one();
  for (int i = 1; i < 7; ++i) r.m[i][i] = -f.one();
  return r;
}

/// Determinant by Gaussian elimination.
inline FieldElement det(Matrix8 a) {
  FieldElement d = one_like(a.m[0][0]);
  for (int c = 0; c < 8; ++c) {
    int piv = c;
    while (piv < 8 && a.m[piv][c].is_zero()) ++piv;
    if (piv == 8) return zero_like(d);
    if (piv != c) {
      std::swap(a.m[piv], a.m[c]);
      d = -d;
    }
    d *= a.m[c][c];
    const FieldElement s = inv(a.m[c][c]);
    for (int r = c + 1; r < 8; ++r) {
      if (a.m[r][c].is_zero()) continue;
      const FieldElement f = a.m[r][c] * s;
      for (int k = c; k < 8; ++k) a.m[r][k] -= f * a.m[c][k];
    }
  }
  return d;
}

/// Inverse by Gauss-Jordan elimination; throws if singular.
inline Matrix8 inverse(const Matrix8& a) {
  const FieldElement z = zero_like(a.m[0][0]), o = one_like(a.m[0][0]);
  Matrix8 l = a, r = Matrix8::filled(z);
  for (int i = 0; i < 8; ++i) r.m[i][i] = o;
  for (int c = 0; c < 8; ++c) {
    int piv = c;
    while (piv < 8 && l.m[piv][c].is_zero()) ++piv;
    if (piv == 8) throw std::domain_error("matrix inverse: singular matrix");
    std::swap(l.m[piv], l.m[c]);
    std::swap(r.m[piv], r.m[c]);
    const FieldElement s = inv(l.m[c][c]);
    for (int k = 0; k < 8; ++k) {
      l.m[c][k] *= s;
      r.m[c][k] *= s;
    }
    for (int row = 0; row < 8; ++row) {
      if (row == c || l.m[row][c].is_zero()) continue;
      const FieldElement f = l.m[row][c];
      for (int k = 0; k < 8; ++k) {
        l.m[row][k] -= f * l.m[c][k];
        r.m[row][k] -= f * r.m[c][k];
      }
    }
  }
  return r;
}

inline FieldElement quadratic_norm(const Vector8& v) { return norm(ZornF::from_coords(v)); }

/// Preserves N on every basis vector and satisfies M^t J M = J. Both are
/// required: the bilinear condition alone does not determine N in characteristic 2.
inline bool is_orthogonal(const Matrix8& a) {
  const Field f = a.m[0][0].field();
  for (int j = 0; j < 8; ++j) {
    Vector8 e;
    e.fill(f.zero());
    e[j] = f.one();
    if (!(quadratic_norm(a.column(j)) == quadratic_norm(e))) return false;
  }
  const Matrix8 j = form_matrix(f);
  return a.transpose() * j * a == j;
}

inline bool is_rotation(const Matrix8& a) { return is_orthogonal(a) && det(a) == one_like(a.m[0][0]); }

enum class SquareClass { square, non_square, undefined };

inline std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::square: return "square";
    case SquareClass::non_square: return "non-square";
    default: return "undefined";
  }
}

struct SpinorVerdict {
  bool in_special_orthogonal = false;
  SquareClass discriminant_square_class = SquareClass::undefined;
  bool in_omega = false;
  std::optional<FieldElement> discriminant;  // empty for the identity
  std::size_t image_dimension = 0;
};

/// Spinor-norm test for a rotation over a field of odd order. The form
/// chi(u,v) = <u,w> with v = w(1-M) lives on the image of 1-M; the basis is
/// the pivot columns of 1-M with the matching unit vectors as preimages.
inline SpinorVerdict spinor_norm(const Matrix8& a) {
  const Field f = a.m[0][0].field();
  if (f.characteristic() == 2) throw std::domain_error("spinor_norm: only defined here for odd q");
  if (!is_rotation(a)) throw std::invalid_argument("spinor_norm: matrix is not a rotation");
  const Matrix8 t = Matrix8::identity(f) - a;
  // pivot columns of t
  Matrix8 e = t;
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < 8 && row < 8; ++c) {
    int piv = row;
    while (piv < 8 && e.m[piv][c].is_zero()) ++piv;
    if (piv == 8) continue;
    std::swap(e.m[piv], e.m[row]);
    const FieldElement s = inv(e.m[row][c]);
    for (int r = row + 1; r < 8; ++r) {
      if (e.m[r][c].is_zero()) continue;
      const FieldElement m = e.m[r][c] * s;
      for (int k = c; k < 8; ++k) e.m[r][k] -= m * e.m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  SpinorVerdict v;
  v.in_special_orthogonal = true;
  v.image_dimension = pivots.size();
  if (pivots.empty()) {
    v.discriminant_square_class = SquareClass::square;
    v.in_omega = true;
    return v;
  }
  const Matrix8 j = form_matrix(f);
  const std::size_t k = pivots.size();
  std::vector<std::vector<FieldElement>> g(k, std::vector<FieldElement>(k, f.zero()));
  for (std::size_t r = 0; r < k; ++r) {
    const Vector8 jv = j * t.column(pivots[r]);  // J v_r
    for (std::size_t c = 0; c < k; ++c) g[r][c] = jv[pivots[c]];  // v_r^t J e_{p_c}
  }
  // determinant of the k x k Gram matrix
  FieldElement d = f.one();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && g[piv][c].is_zero()) ++piv;
    if (piv == k) {
      d = f.zero();
      break;
    }
    if (piv != c) {
      std::swap(g[piv], g[c]);
      d = -d;
    }
    d *= g[c][c];
    const FieldElement s = inv(g[c][c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const FieldElement m = g[r][c] * s;
      for (std::size_t x = c; x < k; ++x) g[r][x] -= m * g[c][x];
    }
  }
  if (d.is_zero()) throw std::logic_error("spinor_norm: degenerate form on the image of 1-M");
  v.discriminant = d;
  v.discriminant_square_class = is_square(d) ? SquareClass::square : SquareClass::non_square;
  v.in_omega = v.discriminant_square_class == SquareClass::square;
  return v;
}

/// Matrix of x -> -conj(x).
inline Matrix8 negated_conjugation_matrix(const Field& f) {
  Matrix8 r = Matrix8::filled(f.zero());
  r.m[0][7] = r.m[7][0] = -f.one();
  for (int i = 1; i < 7; ++i) r.m[i][i] = f.one();
  return r;
}

}  // namespace moufang
