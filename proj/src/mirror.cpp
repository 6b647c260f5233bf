#include "cavcp/mirror.hpp"

#include <cmath>

#include "cavcp/constants.hpp"
#include "cavcp/errors.hpp"

namespace cavcp::mirror {

using specfun::ScaledC;

namespace {

const Cplx kI{0.0, 1.0};

Cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Branch with Im >= 0; the argument always lies in the closed upper half
// plane for passive media and the rotated contour, where the principal
// square root already returns the right sheet.
Cplx axial_root(Cplx sq) {
  if (sq.imag() == 0.0) sq = Cplx{sq.real(), +0.0};
  return std::sqrt(sq);
}

}  // namespace

void reduced_pair(int m, Cplx kR, Cplx qR, Cplx x, Cplx x1, Cplx eps,
                  Cplx htx, Cplx jtx, Cplx htx1, Cplx& rt_M, Cplx& rt_N) {
  Cplx x2 = x * x, x12 = x1 * x1;
  Cplx em1 = eps - 1.0;
  Cplx ahat = -double(m) * double(m) * kR * kR * qR * qR * em1 * em1 / (x12 * x2);
  Cplx bm = eps * htx1 * htx1 * x2 - (htx1 * jtx + eps * htx1 * htx) * x1 * x +
            htx * jtx * x12;
  Cplx bn = eps * htx1 * htx1 * x2 - (eps * htx1 * jtx + htx1 * htx) * x1 * x +
            htx * jtx * x12;
  Cplx bd = eps * htx1 * htx1 * x2 - (eps + 1.0) * htx1 * jtx * x1 * x +
            jtx * jtx * x12;
  Cplx den = ahat + bd;
  if (std::abs(den) < 1.0e-300)
    throw PoleError("reflection denominator underflow: evaluation point on a cavity pole");
  rt_M = (ahat + bm) / den;
  rt_N = (ahat + bn) / den;
}

WallCoefficients wall_real_freq(int m, double omega, Cplx q, double R,
                                const Material& mat) {
  if (omega <= 0.0 || R <= 0.0)
    throw std::invalid_argument("wall_real_freq: need omega > 0 and R > 0");
  double k = omega / kSpeedOfLight;
  Cplx eta = axial_root(Cplx{k * k, 0.0} - q * q);
  Cplx x = eta * R;

  WallCoefficients out;
  ScaledC h, hp, jj, jp;
  specfun::scaled_h1_pair(m, x, h, hp);
  specfun::scaled_j_pair(m, x, jj, jp);
  if (std::abs(jj.v) == 0.0)
    throw PoleError("wall_real_freq: J_m(x) vanished in the prefactor");
  out.pref = h / jj;

  if (mat.is_perfect()) {
    out.rt_N = {1.0, 0.0};
    Cplx jt = specfun::jtilde(m, x);
    Cplx ht = specfun::htilde(m, x);
    out.rt_M = ht / jt;
    return out;
  }

  Cplx eps = eps_real_freq(mat, omega);
  Cplx eta1 = axial_root(eps * k * k - q * q);
  Cplx x1 = eta1 * R;
  Cplx ht = specfun::htilde(m, x);
  Cplx jt = specfun::jtilde(m, x);
  Cplx ht1 = specfun::htilde(m, x1);
  reduced_pair(m, Cplx{k * R, 0.0}, q * R, x, x1, eps, ht, jt, ht1, out.rt_M,
               out.rt_N);
  return out;
}

WallCoefficientsImag wall_imag_freq(int m, double xi, double q, double R,
                                    const Material& mat) {
  if (xi <= 0.0 || R <= 0.0 || q < 0.0)
    throw std::invalid_argument("wall_imag_freq: need xi > 0, q >= 0, R > 0");
  double kappa = xi / kSpeedOfLight;
  double zeta = std::hypot(kappa, q);
  double y = zeta * R;

  WallCoefficientsImag out;
  ScaledC iv, kv;
  specfun::scaled_ik(m, Cplx{y, 0.0}, iv, kv);
  out.pref = kv / iv;

  auto real_of = [](Cplx z) { return z.real(); };

  if (mat.is_perfect()) {
    out.rt_N = 1.0;
    double kt = real_of(specfun::ktilde(m, Cplx{y, 0.0}));
    double it = real_of(specfun::itilde(m, Cplx{y, 0.0}));
    out.rt_M = kt / it;
    return out;
  }

  double eps = eps_imag_freq(mat, xi);
  double zeta1 = std::sqrt(eps * kappa * kappa + q * q);
  double y1 = zeta1 * R;
  double kt = real_of(specfun::ktilde(m, Cplx{y, 0.0}));
  double it = real_of(specfun::itilde(m, Cplx{y, 0.0}));
  double kt1 = real_of(specfun::ktilde(m, Cplx{y1, 0.0}));

  // Same algebra as reduced_pair after x -> iy, jt -> it/i, ht -> kt/i;
  // every factor of i cancels and the assembly is purely real.
  double y2 = y * y, y12 = y1 * y1;
  double em1 = eps - 1.0;
  double ahat = double(m) * double(m) * (kappa * R) * (kappa * R) * (q * R) *
                (q * R) * em1 * em1 / (y12 * y2);
  double bm = eps * kt1 * kt1 * y2 - (kt1 * it + eps * kt1 * kt) * y1 * y +
              kt * it * y12;
  double bn = eps * kt1 * kt1 * y2 - (eps * kt1 * it + kt1 * kt) * y1 * y +
              kt * it * y12;
  double bd = eps * kt1 * kt1 * y2 - (eps + 1.0) * kt1 * it * y1 * y +
              it * it * y12;
  double den = ahat + bd;
  if (std::abs(den) < 1.0e-300)
    throw PoleError("wall_imag_freq: reflection denominator underflow");
  out.rt_M = (ahat + bm) / den;
  out.rt_N = (ahat + bn) / den;
  return out;
}

ReflectionPair reflection_real_freq(const MirrorInput& in) {
  WallCoefficients w =
      wall_real_freq(in.m, in.freq, in.q, in.R, in.material);
  ReflectionPair out;
  out.rt_M = w.rt_M;
  out.rt_N = w.rt_N;
  Cplx pref = w.pref.value();  // RangeError propagates as an overflow signal
  out.r_M = -pref * w.rt_M;
  out.r_N = -pref * w.rt_N;
  return out;
}

ReflectionPair reflection_imag_freq(const MirrorInput& in) {
  if (std::abs(in.q.imag()) != 0.0)
    throw std::invalid_argument("reflection_imag_freq: q must be real");
  WallCoefficientsImag w =
      wall_imag_freq(in.m, in.freq, in.q.real(), in.R, in.material);
  ReflectionPair out;
  out.rt_M = {w.rt_M, 0.0};
  out.rt_N = {w.rt_N, 0.0};
  Cplx factor = (2.0 * kI / kPi) * ipow(2 * in.m);  // (2i/pi)(-1)^m
  Cplx pref = w.pref.value();
  out.r_M = factor * pref * w.rt_M;
  out.r_N = factor * pref * w.rt_N;
  return out;
}

}  // namespace cavcp::mirror
