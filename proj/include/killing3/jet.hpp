#pragma once

// Truncated Taylor jets in the two quotient coordinates (r, theta).
//
// A jet stores the Taylor coefficients c_ij of r^i theta^j (i + j <= 3) of a
// function about a base point, together with the order up to which those
// coefficients are valid. Arithmetic propagates the valid order (a product is
// valid to the smaller order of its factors, a derivative loses one order),
// so asking for a derivative that the inputs cannot support raises
// Error(JetOrder) instead of returning a silent zero.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include "killing3/errors.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

inline constexpr int kMaxJetOrder = 3;

namespace jet_detail {

inline constexpr std::size_t kTerms = 10;

// Slot of the monomial r^i theta^j, graded by total degree.
constexpr std::size_t slot(int i, int j) {
  const int n = i + j;
  return static_cast<std::size_t>(n * (n + 1) / 2 + j);
}

struct Monomial {
  int i, j;
};

inline constexpr std::array<Monomial, kTerms> kMonomials{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                                          {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};

constexpr double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace jet_detail

template <typename T>
class BasicJet {
 public:
  BasicJet() = default;
  BasicJet(T constant, int order = kMaxJetOrder) : order_(order) { c_[0] = constant; }  // NOLINT

  static BasicJet variable_r(double r0, int order = kMaxJetOrder) {
    BasicJet j(T(r0), order);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }
  static BasicJet variable_theta(double theta0, int order = kMaxJetOrder) {
    BasicJet j(T(theta0), order);
    if (order >= 1) j.c_[2] = T(1);
    return j;
  }
  /// Builds a jet from partial derivatives; derivs[slot(i,j)] = d^{i+j} f / dr^i dtheta^j.
  static BasicJet from_partials(const std::array<T, jet_detail::kTerms>& derivs, int order) {
    BasicJet j(T(0), order);
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s) {
      const auto [a, b] = jet_detail::kMonomials[s];
      if (a + b <= order) j.c_[s] = derivs[s] / (jet_detail::factorial(a) * jet_detail::factorial(b));
    }
    return j;
  }
  /// Jet of a function of r alone from its derivatives f, f', f'', f''' at r0.
  static BasicJet univariate_r(const std::array<T, 4>& f, int order) {
    BasicJet j(T(0), order);
    for (int n = 0; n <= order; ++n) j.c_[jet_detail::slot(n, 0)] = f[n] / jet_detail::factorial(n);
    return j;
  }
  static BasicJet univariate_theta(const std::array<T, 4>& f, int order) {
    BasicJet j(T(0), order);
    for (int n = 0; n <= order; ++n) j.c_[jet_detail::slot(0, n)] = f[n] / jet_detail::factorial(n);
    return j;
  }

  int order() const { return order_; }
  T value() const { return c_[0]; }

  /// Partial derivative d^{nr+nt} / dr^nr dtheta^nt at the base point.
  T d(int nr, int nt) const {
    if (nr < 0 || nt < 0 || nr + nt > order_)
      fail(ErrorCode::JetOrder, "jet derivative of order " + std::to_string(nr + nt) +
                                    " requested from a jet valid to order " + std::to_string(order_));
    return c_[jet_detail::slot(nr, nt)] * (jet_detail::factorial(nr) * jet_detail::factorial(nt));
  }
  T d_r() const { return d(1, 0); }
  T d_theta() const { return d(0, 1); }
  T d_rr() const { return d(2, 0); }
  T d_rtheta() const { return d(1, 1); }
  T d_thetatheta() const { return d(0, 2); }
  T d_rrr() const { return d(3, 0); }
  T d_rrtheta() const { return d(2, 1); }
  T d_rthetatheta() const { return d(1, 2); }
  T d_thetathetatheta() const { return d(0, 3); }

  /// d/dr and d/dtheta as jets; the result is valid to one order less.
  BasicJet dr() const { return shift(1, 0); }
  BasicJet dtheta() const { return shift(0, 1); }
  /// Coordinate derivative along axis 0 (t, always zero), 1 (r) or 2 (theta).
  BasicJet partial(int axis) const {
    if (axis == 1) return dr();
    if (axis == 2) return dtheta();
    if (order_ < 1) fail(ErrorCode::JetOrder, "derivative of an order-0 jet");
    return BasicJet(T(0), order_ - 1);
  }

  /// Same jet truncated to a lower order.
  BasicJet truncated(int order) const {
    BasicJet j = *this;
    j.order_ = std::min(order, order_);
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s)
      if (jet_detail::kMonomials[s].i + jet_detail::kMonomials[s].j > j.order_) j.c_[s] = T(0);
    return j;
  }

  const std::array<T, jet_detail::kTerms>& coefficients() const { return c_; }

  BasicJet operator-() const {
    BasicJet j = *this;
    for (auto& x : j.c_) x = -x;
    return j;
  }
  BasicJet& operator+=(const BasicJet& o) {
    order_ = std::min(order_, o.order_);
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s) c_[s] += o.c_[s];
    return truncate_self();
  }
  BasicJet& operator-=(const BasicJet& o) {
    order_ = std::min(order_, o.order_);
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s) c_[s] -= o.c_[s];
    return truncate_self();
  }
  BasicJet& operator*=(const BasicJet& o) {
    *this = *this * o;
    return *this;
  }
  BasicJet& operator*=(T s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend BasicJet operator+(BasicJet a, const BasicJet& b) { return a += b; }
  friend BasicJet operator-(BasicJet a, const BasicJet& b) { return a -= b; }
  friend BasicJet operator+(BasicJet a, T s) {
    a.c_[0] += s;
    return a;
  }
  friend BasicJet operator+(T s, BasicJet a) { return a + s; }
  friend BasicJet operator-(BasicJet a, T s) {
    a.c_[0] -= s;
    return a;
  }
  friend BasicJet operator-(T s, const BasicJet& a) { return (-a) + s; }
  friend BasicJet operator*(BasicJet a, T s) { return a *= s; }
  friend BasicJet operator*(T s, BasicJet a) { return a *= s; }
  friend BasicJet operator/(BasicJet a, T s) { return a *= (T(1) / s); }

  friend BasicJet operator*(const BasicJet& a, const BasicJet& b) {
    BasicJet out(T(0), std::min(a.order_, b.order_));
    for (std::size_t p = 0; p < jet_detail::kTerms; ++p) {
      const auto [i1, j1] = jet_detail::kMonomials[p];
      if (i1 + j1 > out.order_ || a.c_[p] == T(0)) continue;
      for (std::size_t q = 0; q < jet_detail::kTerms; ++q) {
        const auto [i2, j2] = jet_detail::kMonomials[q];
        if (i1 + j1 + i2 + j2 > out.order_) continue;
        out.c_[jet_detail::slot(i1 + i2, j1 + j2)] += a.c_[p] * b.c_[q];
      }
    }
    return out;
  }

  /// f(jet) from f and its first three derivatives at the base value.
  friend BasicJet compose(const BasicJet& a, const std::array<T, 4>& f) {
    BasicJet u = a;
    u.c_[0] = T(0);
    BasicJet out(f[0], a.order_);
    BasicJet power(T(1), a.order_);
    for (int n = 1; n <= a.order_; ++n) {
      power = power * u;
      out += power * (f[n] / jet_detail::factorial(n));
    }
    return out;
  }

  friend BasicJet reciprocal(const BasicJet& a) {
    const T x = a.c_[0];
    if (x == T(0)) fail(ErrorCode::Domain, "jet reciprocal of zero");
    const T i1 = T(1) / x;
    return compose(a, {i1, -i1 * i1, T(2) * i1 * i1 * i1, T(-6) * i1 * i1 * i1 * i1});
  }
  friend BasicJet operator/(const BasicJet& a, const BasicJet& b) { return a * reciprocal(b); }
  friend BasicJet operator/(T s, const BasicJet& b) { return reciprocal(b) * s; }

 private:
  BasicJet shift(int di, int dj) const {
    if (order_ < 1) fail(ErrorCode::JetOrder, "derivative of an order-0 jet");
    BasicJet out(T(0), order_ - 1);
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s) {
      const auto [i, j] = jet_detail::kMonomials[s];
      if (i < di || j < dj || i + j > order_) continue;
      const double mult = di ? i : j;
      out.c_[jet_detail::slot(i - di, j - dj)] += c_[s] * mult;
    }
    return out;
  }
  BasicJet& truncate_self() {
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s)
      if (jet_detail::kMonomials[s].i + jet_detail::kMonomials[s].j > order_) c_[s] = T(0);
    return *this;
  }

  std::array<T, jet_detail::kTerms> c_{};
  int order_ = kMaxJetOrder;
};

using Jet = BasicJet<double>;
using CJet = BasicJet<std::complex<double>>;

/// Value and partials of a scalar field at a point, valid up to order().
using ScalarJet = Jet;

CJet to_complex(const Jet& re, const Jet& im);
CJet to_complex(const Jet& re);
Jet real_part(const CJet& z);
Jet imag_part(const CJet& z);
CJet conj(const CJet& z);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet exp(const Jet& a);
Jet sqrt(const Jet& a);
Jet square(const Jet& a);

}  // namespace killing3
