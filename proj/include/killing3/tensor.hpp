#pragma once

// Fixed 3-dimensional tensor arithmetic shared by every module.

#include <array>
#include <complex>
#include <cstddef>

namespace killing3 {

using Complex = std::complex<double>;

enum class Signature { Riemannian, Lorentzian };

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  friend Vec3 operator+(Vec3 a, const Vec3& b) {
    for (std::size_t i = 0; i < 3; ++i) a.v[i] += b.v[i];
    return a;
  }
  friend Vec3 operator-(Vec3 a, const Vec3& b) {
    for (std::size_t i = 0; i < 3; ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend Vec3 operator*(double s, Vec3 a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

using CVec3 = std::array<Complex, 3>;

struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(std::size_t i, std::size_t j) { return a[i][j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i][j]; }

  static Mat3 identity();
  static Mat3 diag(double a0, double a1, double a2);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
  Vec3 column(std::size_t j) const;

  Mat3 transpose() const;
  double trace() const;
  double determinant() const;
  /// Throws Error(Domain) when the matrix is singular to working precision.
  Mat3 inverse() const;
  double max_abs() const;
  double frobenius() const;

  friend Mat3 operator*(const Mat3& x, const Mat3& y);
  friend Vec3 operator*(const Mat3& x, const Vec3& v);
  friend Mat3 operator+(Mat3 x, const Mat3& y);
  friend Mat3 operator-(Mat3 x, const Mat3& y);
  friend Mat3 operator*(double s, Mat3 x);
};

/// Symmetric 3x3 matrix with six stored entries (00, 01, 02, 11, 12, 22).
class Sym3 {
 public:
  Sym3() = default;
  Sym3(double a00, double a01, double a02, double a11, double a12, double a22)
      : e_{a00, a01, a02, a11, a12, a22} {}

  /// Symmetrizes its argument: entry (i,j) becomes (m_ij + m_ji)/2.
  static Sym3 from_mat(const Mat3& m);
  static Sym3 identity() { return {1, 0, 0, 1, 0, 1}; }
  static Sym3 diag(double a, double b, double c) { return {a, 0, 0, b, 0, c}; }

  double operator()(std::size_t i, std::size_t j) const { return e_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double x) { e_[index(i, j)] = x; }

  Mat3 to_mat() const;
  double trace() const { return e_[0] + e_[3] + e_[5]; }
  double determinant() const { return to_mat().determinant(); }
  double frobenius() const { return to_mat().frobenius(); }
  double max_abs() const { return to_mat().max_abs(); }
  bool all_finite() const;

  friend Sym3 operator+(Sym3 x, const Sym3& y);
  friend Sym3 operator-(Sym3 x, const Sym3& y);
  friend Sym3 operator*(double s, Sym3 x);

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }
  std::array<double, 6> e_{};
};

struct SymEigen {
  std::array<double, 3> values{};  // ascending
  Mat3 vectors;                    // column j pairs with values[j]
};

/// Closed-form (trigonometric Cardano) eigen-solve with one Newton polish of
/// each root. Throws Error(NonFinite) on non-finite input.
SymEigen sym_eig3(const Sym3& m);

/// Roots of det(m - lambda I) as used by sym_eig3, ascending.
std::array<double, 3> sym_eigenvalues3(const Sym3& m);

/// Max deviation of the Gram matrix g(e_i, e_j) from diag(+-1, 1, 1).
double gram_residual(const std::array<Vec3, 3>& frame, const Sym3& g, Signature signature);

/// Frame components R(e_a, e_b, e_c, e_d) = g(R(e_a, e_b) e_c, e_d).
class Riemann4 {
 public:
  double operator()(int a, int b, int c, int d) const { return r_[a][b][c][d]; }
  double& at(int a, int b, int c, int d) { return r_[a][b][c][d]; }

  /// Largest violation of antisymmetry, pair symmetry, and the first Bianchi identity.
  double symmetry_residual() const;
  double first_bianchi_residual() const;

 private:
  std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3> r_{};
};

}  // namespace killing3
