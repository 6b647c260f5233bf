#pragma once

#include <complex>

#include "cavcp/bessel.hpp"
#include "cavcp/material.hpp"

namespace cavcp::mirror {

using Cplx = std::complex<double>;

// Inputs for one reflection-coefficient evaluation. freq is omega (rad/s)
// at real frequency or xi at imaginary frequency; q is the axial
// wavenumber (1/m) and may be complex on the rotated contour.
struct MirrorInput {
  int m = 0;
  double freq = 0.0;
  bool imag_freq = false;
  Cplx q{0.0, 0.0};
  double R = 0.0;
  Material material;
};

struct ReflectionPair {
  Cplx r_M{0.0, 0.0};
  Cplx r_N{0.0, 0.0};
  Cplx rt_M{0.0, 0.0};  // reduced coefficients
  Cplx rt_N{0.0, 0.0};
};

// Reduced coefficients plus the wall prefactor in scaled form so the Green
// assembly can keep products representable:
//   real frequency:  pref = H_m^(1)(x)/J_m(x),    r_sigma = -pref rt_sigma
//   imag frequency:  pref = K_m(y)/I_m(y),
//                    r_sigma = (2i/pi)(-1)^m pref rt_sigma
struct WallCoefficients {
  Cplx rt_M{0.0, 0.0};
  Cplx rt_N{0.0, 0.0};
  specfun::ScaledC pref;
};

WallCoefficients wall_real_freq(int m, double omega, Cplx q, double R,
                                const Material& mat);
// Reduced coefficients are exactly real at imaginary frequency.
struct WallCoefficientsImag {
  double rt_M = 0.0;
  double rt_N = 0.0;
  specfun::ScaledC pref;
};
WallCoefficientsImag wall_imag_freq(int m, double xi, double q, double R,
                                    const Material& mat);

ReflectionPair reflection_real_freq(const MirrorInput& in);
ReflectionPair reflection_imag_freq(const MirrorInput& in);

// Shared algebra for the reduced pair (A + B_sigma)/(A + B_D) with the
// common x1^2 x^2 factor cancelled symbolically. Exposed for tests.
void reduced_pair(int m, Cplx kR, Cplx qR, Cplx x, Cplx x1, Cplx eps,
                  Cplx htx, Cplx jtx, Cplx htx1, Cplx& rt_M, Cplx& rt_N);

}  // namespace cavcp::mirror
