#pragma once

#include <complex>

namespace cavcp::specfun {

using Cplx = std::complex<double>;

// A complex value carried as v * exp(e) with a real exponent, so that
// quantities like J_m(x1) with Im x1 ~ 1e3 can flow through products
// without leaving the representable range.
struct ScaledC {
  Cplx v{0.0, 0.0};
  double e{0.0};

  static ScaledC from(Cplx value);
  void normalize();

  // Collapses to a plain double pair. Deep underflow returns 0; overflow
  // throws RangeError.
  Cplx value() const;

  ScaledC operator*(const ScaledC& o) const { return ScaledC{v * o.v, e + o.e}; }
  ScaledC operator/(const ScaledC& o) const { return ScaledC{v / o.v, e - o.e}; }
  ScaledC operator*(Cplx c) const { return ScaledC{v * c, e}; }
  ScaledC operator*(double c) const { return ScaledC{v * c, e}; }
};

// Ratio a/b as a plain complex (exponents cancel first).
Cplx sc_ratio(const ScaledC& a, const ScaledC& b);
ScaledC sc_add(const ScaledC& a, const ScaledC& b);

// ---------------------------------------------------------------------------
// Raw cylinder functions of integer order m >= 0 and complex argument.
// Accurate to ~1e-12 relative over |z| <= 1e4 with Im z >= -1 (J/Y/H) and
// Re z >= 0 (I/K). Overflow of the value itself throws RangeError; z = 0 is
// a domain error for Y, H and K.
// ---------------------------------------------------------------------------
Cplx bessel_j(int m, Cplx z);
Cplx bessel_j_prime(int m, Cplx z);
Cplx bessel_y(int m, Cplx z);
Cplx bessel_y_prime(int m, Cplx z);
Cplx bessel_h1(int m, Cplx z);
Cplx bessel_h1_prime(int m, Cplx z);
Cplx bessel_i(int m, Cplx z);
Cplx bessel_i_prime(int m, Cplx z);
Cplx bessel_k(int m, Cplx z);
Cplx bessel_k_prime(int m, Cplx z);

// ---------------------------------------------------------------------------
// Reduced (logarithmic-derivative) functions. These are evaluated through
// ratio algorithms and never form the raw overflow-prone values, so they
// remain usable for metallic arguments with |Im z| ~ 1e3 and beyond.
//   jtilde = J_m'/J_m     htilde = H_m^(1)'/H_m^(1)
//   itilde = I_m'/I_m     ktilde = K_m'/K_m
// htilde requires Im z >= 0 (contour side of the real axis); itilde/ktilde
// require Re z >= 0. A pole of the parent function within ~1e-12 raises
// PoleError.
// ---------------------------------------------------------------------------
enum class Reduced { htilde, jtilde, itilde, ktilde };

Cplx reduced(Reduced kind, int m, Cplx z);
Cplx jtilde(int m, Cplx z);
Cplx htilde(int m, Cplx z);
Cplx itilde(int m, Cplx z);
Cplx ktilde(int m, Cplx z);

// ---------------------------------------------------------------------------
// Scaled evaluations for assembling wall products. The J pair is valid for
// Im z >= -1; H requires Im z >= 0; I/K require Re w >= 0.
// ---------------------------------------------------------------------------
void scaled_j_pair(int m, Cplx z, ScaledC& jm, ScaledC& jpm);
void scaled_h1_pair(int m, Cplx z, ScaledC& hm, ScaledC& hpm);
void scaled_ik(int m, Cplx w, ScaledC& im, ScaledC& km);

// ---------------------------------------------------------------------------
// Real zeros of J_m and J_m'. Zeros of J_0' are the zeros of J_1. Results
// are memoized; the cache is safe for concurrent readers.
// ---------------------------------------------------------------------------
struct BesselZero {
  int m = 0;
  int j = 1;
  bool derivative = false;
  double value = 0.0;
};

double bessel_zero(int m, int j, bool derivative);
BesselZero bessel_zero_info(int m, int j, bool derivative);

}  // namespace cavcp::specfun
