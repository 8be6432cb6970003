#include "killing3/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "killing3/errors.hpp"

namespace killing3 {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Mat3 Mat3::identity() { return diag(1, 1, 1); }

Mat3 Mat3::diag(double a0, double a1, double a2) {
  Mat3 m;
  m(0, 0) = a0;
  m(1, 1) = a1;
  m(2, 2) = a2;
  return m;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    m(i, 0) = c0[i];
    m(i, 1) = c1[i];
    m(i, 2) = c2[i];
  }
  return m;
}

Vec3 Mat3::column(std::size_t j) const { return {{a[0][j], a[1][j], a[2][j]}}; }

Mat3 Mat3::transpose() const {
  Mat3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = a[j][i];
  return t;
}

double Mat3::trace() const { return a[0][0] + a[1][1] + a[2][2]; }

double Mat3::determinant() const {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 Mat3::inverse() const {
  const double det = determinant();
  const double scale = std::max(max_abs(), 1e-300);
  if (!std::isfinite(det) || std::abs(det) <= 1e-300 * scale * scale * scale)
    fail(ErrorCode::Domain, "singular 3x3 matrix");
  Mat3 inv;
  inv(0, 0) = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  inv(0, 1) = a[0][2] * a[2][1] - a[0][1] * a[2][2];
  inv(0, 2) = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  inv(1, 0) = a[1][2] * a[2][0] - a[1][0] * a[2][2];
  inv(1, 1) = a[0][0] * a[2][2] - a[0][2] * a[2][0];
  inv(1, 2) = a[0][2] * a[1][0] - a[0][0] * a[1][2];
  inv(2, 0) = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  inv(2, 1) = a[0][1] * a[2][0] - a[0][0] * a[2][1];
  inv(2, 2) = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return (1.0 / det) * inv;
}

double Mat3::max_abs() const {
  double m = 0.0;
  for (const auto& row : a)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

double Mat3::frobenius() const {
  double s = 0.0;
  for (const auto& row : a)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 z;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) z(i, j) += x(i, k) * y(k, j);
  return z;
}

Vec3 operator*(const Mat3& x, const Vec3& v) {
  Vec3 w;
  for (std::size_t i = 0; i < 3; ++i) w[i] = x(i, 0) * v[0] + x(i, 1) * v[1] + x(i, 2) * v[2];
  return w;
}

Mat3 operator+(Mat3 x, const Mat3& y) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x(i, j) += y(i, j);
  return x;
}

Mat3 operator-(Mat3 x, const Mat3& y) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x(i, j) -= y(i, j);
  return x;
}

Mat3 operator*(double s, Mat3 x) {
  for (auto& row : x.a)
    for (double& e : row) e *= s;
  return x;
}

Sym3 Sym3::from_mat(const Mat3& m) {
  return {m(0, 0),
          0.5 * (m(0, 1) + m(1, 0)),
          0.5 * (m(0, 2) + m(2, 0)),
          m(1, 1),
          0.5 * (m(1, 2) + m(2, 1)),
          m(2, 2)};
}

Mat3 Sym3::to_mat() const {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  return m;
}

bool Sym3::all_finite() const {
  return std::all_of(e_.begin(), e_.end(), [](double x) { return std::isfinite(x); });
}

Sym3 operator+(Sym3 x, const Sym3& y) {
  for (std::size_t i = 0; i < 6; ++i) x.e_[i] += y.e_[i];
  return x;
}

Sym3 operator-(Sym3 x, const Sym3& y) {
  for (std::size_t i = 0; i < 6; ++i) x.e_[i] -= y.e_[i];
  return x;
}

Sym3 operator*(double s, Sym3 x) {
  for (double& e : x.e_) e *= s;
  return x;
}

namespace {

struct CharPoly {
  // det(m - lambda I) = -lambda^3 + c2 lambda^2 - c1 lambda + c0
  double c2, c1, c0;

  double value(double l) const { return ((-l + c2) * l - c1) * l + c0; }
  double slope(double l) const { return (-3.0 * l + 2.0 * c2) * l - c1; }
};

CharPoly char_poly(const Sym3& m) {
  return {m.trace(),
          m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1) + m(0, 0) * m(2, 2) - m(0, 2) * m(0, 2) +
              m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2),
          m.determinant()};
}

// Unit vector of largest-magnitude cross product of two rows of (m - lambda I).
bool null_vector(const Sym3& m, double lambda, Vec3& out) {
  Mat3 a = m.to_mat() - Mat3::diag(lambda, lambda, lambda);
  const Vec3 r0{{a(0, 0), a(0, 1), a(0, 2)}};
  const Vec3 r1{{a(1, 0), a(1, 1), a(1, 2)}};
  const Vec3 r2{{a(2, 0), a(2, 1), a(2, 2)}};
  const std::array<Vec3, 3> c{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (norm(c[i]) > norm(c[best])) best = i;
  const double n = norm(c[best]);
  const double scale = std::max({norm(r0), norm(r1), norm(r2), 1e-300});
  if (n <= 1e-13 * scale * scale) return false;
  out = (1.0 / n) * c[best];
  return true;
}

// Orthonormal pair spanning the plane orthogonal to unit vector v.
void complement(const Vec3& v, Vec3& u, Vec3& w) {
  const Vec3 seed = std::abs(v[0]) > std::abs(v[1]) ? Vec3{{-v[2], 0.0, v[0]}} : Vec3{{0.0, v[2], -v[1]}};
  u = (1.0 / norm(seed)) * seed;
  w = cross(v, u);
}

std::array<double, 3> cardano_roots(const Sym3& m) {
  if (!m.all_finite()) fail(ErrorCode::NonFinite, "sym_eig3: non-finite matrix entry");
  const double q = m.trace() / 3.0;
  const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  const double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                    (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * p1;
  std::array<double, 3> ev{};
  if (p2 == 0.0) return {q, q, q};
  const double p = std::sqrt(p2 / 6.0);
  const Sym3 b = (1.0 / p) * (m - Sym3::diag(q, q, q));
  const double half_det = std::clamp(0.5 * b.determinant(), -1.0, 1.0);
  const double angle = std::acos(half_det) / 3.0;
  ev[2] = q + 2.0 * p * std::cos(angle);
  ev[0] = q + 2.0 * p * std::cos(angle + 2.0 * std::numbers::pi / 3.0);
  ev[1] = 3.0 * q - ev[0] - ev[2];
  std::sort(ev.begin(), ev.end());

  // Newton polish; skipped near repeated roots where the slope degenerates.
  const CharPoly cp = char_poly(m);
  for (std::size_t i = 0; i < 3; ++i) {
    const double gap = std::min(i > 0 ? ev[i] - ev[i - 1] : INFINITY, i < 2 ? ev[i + 1] - ev[i] : INFINITY);
    const double slope = cp.slope(ev[i]);
    if (slope == 0.0) continue;
    const double step = cp.value(ev[i]) / slope;
    if (std::isfinite(step) && std::abs(step) < 0.1 * gap) ev[i] -= step;
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

std::array<double, 3> sym_eigenvalues3(const Sym3& m) { return sym_eig3(m).values; }

SymEigen sym_eig3(const Sym3& m) {
  SymEigen out;
  out.values = cardano_roots(m);
  const auto& ev = out.values;
  const double scale = std::max({std::abs(ev[0]), std::abs(ev[2]), 1e-300});
  if (ev[2] - ev[0] <= 1e-14 * scale) {
    out.vectors = Mat3::identity();
    return out;
  }
  // Solve the best-separated eigenvalue by cross products, the rest on its complement.
  const bool low_isolated = (ev[1] - ev[0]) >= (ev[2] - ev[1]);
  const std::size_t iso = low_isolated ? 0 : 2;
  Vec3 v;
  const bool found = null_vector(m, ev[iso], v);
  if (!found) v = Vec3{{1.0, 0.0, 0.0}};
  Vec3 u, w;
  complement(v, u, w);
  const Mat3 a = m.to_mat();
  const double b00 = dot(u, a * u), b01 = dot(u, a * w), b11 = dot(w, a * w);
  // 2x2 Jacobi rotation diagonalizing [[b00, b01], [b01, b11]].
  double c = 1.0, s = 0.0;
  if (b01 != 0.0) {
    const double tau = (b11 - b00) / (2.0 * b01);
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = t * c;
  }
  Vec3 e1 = c * u - s * w;
  Vec3 e2 = s * u + c * w;
  double l1 = dot(e1, a * e1), l2 = dot(e2, a * e2);
  if (l1 > l2) {
    std::swap(e1, e2);
    std::swap(l1, l2);
  }
  // Cardano loses accuracy on the clustered pair; the deflated block does not.
  const double lv = dot(v, a * v) / dot(v, v);
  if (low_isolated) {
    out.vectors = Mat3::from_columns(v, e1, e2);
    if (found && lv <= l1) out.values = {lv, l1, l2};
  } else {
    out.vectors = Mat3::from_columns(e1, e2, v);
    if (found && lv >= l2) out.values = {l1, l2, lv};
  }
  return out;
}

double gram_residual(const std::array<Vec3, 3>& frame, const Sym3& g, Signature signature) {
  const Mat3 gm = g.to_mat();
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double target = i == j ? 1.0 : 0.0;
      if (i == 0 && j == 0 && signature == Signature::Lorentzian) target = -1.0;
      worst = std::max(worst, std::abs(dot(frame[i], gm * frame[j]) - target));
    }
  }
  return worst;
}

double Riemann4::symmetry_residual() const {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const double x = r_[a][b][c][d];
          worst = std::max({worst, std::abs(x + r_[b][a][c][d]), std::abs(x + r_[a][b][d][c]),
                            std::abs(x - r_[c][d][a][b])});
        }
  return worst;
}

double Riemann4::first_bianchi_residual() const {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          worst = std::max(worst, std::abs(r_[a][b][c][d] + r_[b][c][a][d] + r_[c][a][b][d]));
  return worst;
}

}  // namespace killing3
