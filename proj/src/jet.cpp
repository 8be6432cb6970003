#include "killing3/jet.hpp"

#include <cmath>

namespace killing3 {

CJet to_complex(const Jet& re, const Jet& im) {
  std::array<Complex, jet_detail::kTerms> partials{};
  const int order = std::min(re.order(), im.order());
  for (std::size_t s = 0; s < jet_detail::kTerms; ++s) {
    const auto [i, j] = jet_detail::kMonomials[s];
    if (i + j <= order) partials[s] = Complex(re.d(i, j), im.d(i, j));
  }
  return CJet::from_partials(partials, order);
}

CJet to_complex(const Jet& re) { return to_complex(re, Jet(0.0, re.order())); }

namespace {

template <typename F>
Jet map_coefficients(const CJet& z, F f) {
  std::array<double, jet_detail::kTerms> partials{};
  for (std::size_t s = 0; s < jet_detail::kTerms; ++s) {
    const auto [i, j] = jet_detail::kMonomials[s];
    if (i + j <= z.order()) partials[s] = f(z.d(i, j));
  }
  return Jet::from_partials(partials, z.order());
}

}  // namespace

Jet real_part(const CJet& z) {
  return map_coefficients(z, [](Complex c) { return c.real(); });
}

Jet imag_part(const CJet& z) {
  return map_coefficients(z, [](Complex c) { return c.imag(); });
}

CJet conj(const CJet& z) { return to_complex(real_part(z), -imag_part(z)); }

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {s, c, -s, -c});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {c, -s, -c, s});
}

Jet tan(const Jet& a) {
  const double t = std::tan(a.value());
  const double sec2 = 1.0 + t * t;
  return compose(a, {t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t)});
}

Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return compose(a, {s, c, s, c});
}

Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return compose(a, {c, s, c, s});
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e, e});
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) fail(ErrorCode::Domain, "jet sqrt of a non-positive value");
  const double s = std::sqrt(x);
  return compose(a, {s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)});
}

Jet square(const Jet& a) { return a * a; }

}  // namespace killing3
