#include "cavcp/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "cavcp/constants.hpp"
#include "cavcp/errors.hpp"

namespace cavcp::specfun {

namespace {

constexpr double kLogHuge = 700.0;
constexpr double kLogTiny = -745.0;
constexpr double kEps = 1.0e-16;
constexpr double kEulerGamma = 0.57721566490153286061;
const Cplx kI{0.0, 1.0};

Cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

bool near_zero(Cplx z) { return std::abs(z) == 0.0; }

}  // namespace

ScaledC ScaledC::from(Cplx value) {
  ScaledC s{value, 0.0};
  s.normalize();
  return s;
}

void ScaledC::normalize() {
  double a = std::abs(v);
  if (a == 0.0 || !std::isfinite(a)) return;
  if (a > 1.0e-8 && a < 1.0e8) return;
  e += std::log(a);
  v /= a;
}

Cplx ScaledC::value() const {
  double a = std::abs(v);
  if (a == 0.0) return {0.0, 0.0};
  double total = e + std::log(a);
  if (total > kLogHuge) throw RangeError("scaled value overflows double range");
  if (total < kLogTiny) return {0.0, 0.0};
  return (v / a) * std::exp(total);
}

Cplx sc_ratio(const ScaledC& a, const ScaledC& b) {
  if (near_zero(b.v)) throw PoleError("scaled ratio: zero denominator");
  ScaledC r = a / b;
  return r.value();
}

ScaledC sc_add(const ScaledC& a, const ScaledC& b) {
  if (near_zero(a.v)) return b;
  if (near_zero(b.v)) return a;
  const ScaledC& big = (a.e >= b.e) ? a : b;
  const ScaledC& small = (a.e >= b.e) ? b : a;
  double d = small.e - big.e;
  ScaledC r{big.v + ((d < kLogTiny) ? Cplx{0.0, 0.0} : small.v * std::exp(d)),
            big.e};
  r.normalize();
  return r;
}

namespace {

// ---------------------------------------------------------------------------
// Power series, |z| <= 12 (J) or |w| <= 2 (I base orders).
// ---------------------------------------------------------------------------

ScaledC series_jin(int m, Cplx z, bool modified) {
  if (near_zero(z)) return (m == 0) ? ScaledC{{1.0, 0.0}, 0.0} : ScaledC{};
  Cplx zh = 0.5 * z;
  ScaledC t0;
  t0.e = double(m) * std::log(std::abs(zh)) - std::lgamma(double(m) + 1.0);
  t0.v = std::polar(1.0, double(m) * std::arg(zh));
  Cplx q = zh * zh;
  if (!modified) q = -q;
  Cplx term{1.0, 0.0}, sum{1.0, 0.0}, comp{0.0, 0.0};
  for (int k = 1; k <= 500; ++k) {
    term *= q / (double(k) * double(k + m));
    Cplx y = term - comp;
    Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < kEps * std::abs(sum) && k > 3) break;
  }
  t0.v *= sum;
  t0.normalize();
  return t0;
}

// Y_0, Y_1 for |z| <= 12.
void series_y01(Cplx z, Cplx& y0, Cplx& y1) {
  Cplx j0 = series_jin(0, z, false).value();
  Cplx j1 = series_jin(1, z, false).value();
  Cplx lg = std::log(0.5 * z) + kEulerGamma;
  Cplx q = 0.25 * z * z;

  Cplx u{1.0, 0.0}, s0{0.0, 0.0};
  double hk = 0.0;
  for (int k = 1; k <= 500; ++k) {
    u *= q / (double(k) * double(k));
    hk += 1.0 / double(k);
    Cplx term = ((k % 2) ? 1.0 : -1.0) * hk * u;
    s0 += term;
    if (std::abs(term) < kEps * (std::abs(s0) + 1.0) && k > 3) break;
  }
  y0 = (2.0 / kPi) * (lg * j0 + s0);

  Cplx w{1.0, 0.0}, s1 = w;  // k = 0 term: (H_0 + H_1) w_0 = 1
  hk = 0.0;
  double hk1 = 1.0;
  double sgn = -1.0;
  for (int k = 1; k <= 500; ++k) {
    w *= q / (double(k) * double(k + 1));
    hk += 1.0 / double(k);
    hk1 += 1.0 / double(k + 1);
    Cplx term = sgn * (hk + hk1) * w;
    s1 += term;
    sgn = -sgn;
    if (std::abs(term) < kEps * (std::abs(s1) + 1.0) && k > 3) break;
  }
  y1 = (2.0 / kPi) * (lg * j1 - 1.0 / z - 0.25 * z * s1);
}

// K_0, K_1 for |w| <= 2.
void series_k01(Cplx w, Cplx& k0, Cplx& k1) {
  Cplx i0 = series_jin(0, w, true).value();
  Cplx i1 = series_jin(1, w, true).value();
  Cplx lg = std::log(0.5 * w) + kEulerGamma;
  Cplx q = 0.25 * w * w;

  Cplx u{1.0, 0.0}, s0{0.0, 0.0};
  double hk = 0.0;
  for (int k = 1; k <= 500; ++k) {
    u *= q / (double(k) * double(k));
    hk += 1.0 / double(k);
    Cplx term = hk * u;
    s0 += term;
    if (std::abs(term) < kEps * (std::abs(s0) + 1.0) && k > 3) break;
  }
  k0 = -lg * i0 + s0;

  Cplx v{1.0, 0.0}, s1 = v;
  hk = 0.0;
  double hk1 = 1.0;
  for (int k = 1; k <= 500; ++k) {
    v *= q / (double(k) * double(k + 1));
    hk += 1.0 / double(k);
    hk1 += 1.0 / double(k + 1);
    Cplx term = (hk + hk1) * v;
    s1 += term;
    if (std::abs(term) < kEps * (std::abs(s1) + 1.0) && k > 3) break;
  }
  k1 = 1.0 / w + lg * i1 - 0.25 * w * s1;
}

// ---------------------------------------------------------------------------
// Hankel asymptotic expansion, |z| > 12, orders 0 and 1.
// sign=+1 gives H^(1), sign=-1 gives H^(2); optimal truncation.
// ---------------------------------------------------------------------------
ScaledC hankel_asym(int nu, Cplx z, int sign) {
  double mu = 4.0 * double(nu) * double(nu);
  Cplx fac = double(sign) * kI / (8.0 * z);
  Cplx term{1.0, 0.0}, sum = term;
  double prev = 1.0;
  for (int k = 0; k < 60; ++k) {
    Cplx next = term * (mu - double(2 * k + 1) * double(2 * k + 1)) /
                double(k + 1) * fac;
    double a = std::abs(next);
    if (a >= prev) break;  // asymptotic tail turned around
    sum += next;
    term = next;
    prev = a;
    if (a < kEps * std::abs(sum)) break;
  }
  ScaledC r;
  r.e = -double(sign) * z.imag();
  double phase = double(sign) * (z.real() - double(nu) * kPi / 2.0 - kPi / 4.0);
  r.v = std::sqrt(2.0 / (kPi * z)) * std::polar(1.0, phase) * sum;
  r.normalize();
  return r;
}

// J_0, J_1, Y_0, Y_1 over Im z in [-1, 4]-ish; valid wherever the
// J + iY combination is representable.
void jy01_base(Cplx z, ScaledC& j0, ScaledC& j1, ScaledC& y0, ScaledC& y1) {
  if (std::abs(z) <= 12.0) {
    j0 = series_jin(0, z, false);
    j1 = series_jin(1, z, false);
    Cplx a, b;
    series_y01(z, a, b);
    y0 = ScaledC::from(a);
    y1 = ScaledC::from(b);
    return;
  }
  ScaledC h1_0 = hankel_asym(0, z, +1), h2_0 = hankel_asym(0, z, -1);
  ScaledC h1_1 = hankel_asym(1, z, +1), h2_1 = hankel_asym(1, z, -1);
  j0 = sc_add(h1_0, h2_0) * 0.5;
  j1 = sc_add(h1_1, h2_1) * 0.5;
  y0 = sc_add(h1_0, h2_0 * Cplx{-1.0, 0.0}) * Cplx{0.0, -0.5};
  y1 = sc_add(h1_1, h2_1 * Cplx{-1.0, 0.0}) * Cplx{0.0, -0.5};
}

// ---------------------------------------------------------------------------
// Ratio chains (backward recurrence from above the turning point).
// ---------------------------------------------------------------------------

int start_order(int mtop, double a) {
  int turn = int(a + 11.0 * std::cbrt(std::max(1.0, a))) + 25;
  return std::max(mtop + 25, turn);
}

// r[n] = F_{n+1}(z)/F_n(z), n = 0..mtop; F = J (modified=false) or I.
void ratio_chain(int mtop, Cplx z, bool modified, std::vector<Cplx>& r) {
  r.assign(mtop + 1, Cplx{0.0, 0.0});
  int M = start_order(mtop, std::abs(z));
  Cplx rr{0.0, 0.0};
  Cplx t = 2.0 / z;
  double s = modified ? 1.0 : -1.0;
  for (int n = M; n >= 1; --n) {
    Cplx d = double(n) * t + s * rr;
    if (near_zero(d)) d = Cplx{1.0e-290, 0.0};
    rr = 1.0 / d;
    if (n - 1 <= mtop) r[n - 1] = rr;
  }
}

// Scaled J_0..J_mtop via ratio chain + series/asymptotic anchor.
void j_chain(int mtop, Cplx z, std::vector<ScaledC>& out) {
  out.assign(mtop + 1, ScaledC{});
  if (near_zero(z)) {
    out[0] = ScaledC{{1.0, 0.0}, 0.0};
    return;
  }
  std::vector<Cplx> r;
  ratio_chain(std::max(mtop, 1), z, false, r);
  ScaledC j0, j1, y0, y1;
  jy01_base(z, j0, j1, y0, y1);
  auto mag = [](const ScaledC& s) {
    return near_zero(s.v) ? -1.0e308 : s.e + std::log(std::abs(s.v));
  };
  if (mag(j0) >= mag(j1)) {
    out[0] = j0;
    if (mtop >= 1) out[1] = j0 * r[0];
  } else {
    out[0] = j1 / ScaledC::from(r[0]);
    if (mtop >= 1) out[1] = j1;
  }
  out[0].normalize();
  for (int n = 2; n <= mtop; ++n) {
    out[n] = out[n - 1] * r[n - 1];
    out[n].normalize();
  }
}

// Forward three-term chain F_{n+1} = (2n/z) F_n + s F_{n-1} with joint
// rescaling; used for Y and H (s=-1) and K (s=+1).
void forward_chain(int mtop, Cplx z, double s, ScaledC f0, ScaledC f1,
                   std::vector<ScaledC>& out) {
  out.assign(std::max(mtop + 1, 2), ScaledC{});
  double e = std::max(f0.e, f1.e);
  Cplx a = f0.v * ((f0.e - e) < kLogTiny ? 0.0 : std::exp(f0.e - e));
  Cplx b = f1.v * ((f1.e - e) < kLogTiny ? 0.0 : std::exp(f1.e - e));
  out[0] = ScaledC{a, e};
  out[1] = ScaledC{b, e};
  Cplx t = 2.0 / z;
  for (int n = 1; n < mtop; ++n) {
    Cplx c = double(n) * t * b + s * a;
    a = b;
    b = c;
    double m = std::abs(b);
    if (m > 1.0e50) {
      double lg = std::log(m);
      a /= m;
      b /= m;
      e += lg;
    }
    out[n + 1] = ScaledC{b, e};
  }
  for (auto& x : out) x.normalize();
}

// ---------------------------------------------------------------------------
// Modified-Bessel engine, Re w >= 0.
// ---------------------------------------------------------------------------

// Steed-type continued fraction for K_0, K_1, |w| >= 2, Re w > 0.
void cf2_k01(Cplx w, ScaledC& k0, ScaledC& k1) {
  Cplx b = 2.0 * (1.0 + w);
  Cplx d = 1.0 / b;
  Cplx delh = d, h = d;
  Cplx q1{0.0, 0.0}, q2{1.0, 0.0};
  const double a1 = 0.25;
  Cplx q{a1, 0.0};
  double cc = a1, a = -a1;
  Cplx s = 1.0 + q * delh;
  bool ok = false;
  for (int i = 2; i <= 100000; ++i) {
    a -= 2.0 * double(i - 1);
    cc = -a * cc / double(i);
    Cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += cc * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    Cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) {
      ok = true;
      break;
    }
  }
  if (!ok) throw ConvergenceError("K continued fraction did not converge");
  h = a1 * h;
  k0.e = -w.real();
  k0.v = std::sqrt(kPi / (2.0 * w)) / s * std::polar(1.0, -w.imag());
  k0.normalize();
  k1 = k0 * ((w + 0.5 - h) / w);
  k1.normalize();
}

void mod_k01(Cplx w, ScaledC& k0, ScaledC& k1) {
  if (std::abs(w) < 2.0) {
    Cplx a, b;
    series_k01(w, a, b);
    k0 = ScaledC::from(a);
    k1 = ScaledC::from(b);
  } else {
    cf2_k01(w, k0, k1);
  }
}

// Scaled I_0..I_mtop and K_0..K_mtop.
void ik_chain(int mtop, Cplx w, std::vector<ScaledC>& iv,
              std::vector<ScaledC>& kv) {
  ScaledC k0, k1;
  mod_k01(w, k0, k1);
  forward_chain(std::max(mtop, 1), w, +1.0, k0, k1, kv);
  std::vector<Cplx> r;
  ratio_chain(std::max(mtop, 1), w, true, r);
  // Wronskian anchor: I_0 = 1 / (w (K_1 + r_0 K_0)).
  ScaledC denom = sc_add(kv[1], kv[0] * r[0]);
  ScaledC i0{1.0 / (w * denom.v), -denom.e};
  i0.normalize();
  iv.assign(std::max(mtop + 1, 2), ScaledC{});
  iv[0] = i0;
  for (int n = 1; n <= std::max(mtop, 1); ++n) {
    iv[n] = iv[n - 1] * r[n - 1];
    iv[n].normalize();
  }
}

// H^(1)_0..mtop for Im z <= threshold (J + iY route).
void h1_chain_raw(int mtop, Cplx z, std::vector<ScaledC>& out) {
  ScaledC j0, j1, y0, y1;
  jy01_base(z, j0, j1, y0, y1);
  ScaledC h0 = sc_add(j0, y0 * kI);
  ScaledC h1 = sc_add(j1, y1 * kI);
  forward_chain(std::max(mtop, 1), z, -1.0, h0, h1, out);
}

constexpr double kHankelImSwitch = 4.0;

// H^(1)_0..mtop via K for Im z > threshold.
void h1_chain_viak(int mtop, Cplx z, std::vector<ScaledC>& out) {
  Cplx w = -kI * z;
  std::vector<ScaledC> iv, kv;
  ik_chain(mtop, w, iv, kv);
  out.assign(kv.size(), ScaledC{});
  Cplx pref = 2.0 / (kI * kPi);
  for (size_t n = 0; n < kv.size(); ++n) {
    out[n] = kv[n] * (pref * ipow(-int(n)));
  }
}

void h1_chain(int mtop, Cplx z, std::vector<ScaledC>& out) {
  if (z.imag() > kHankelImSwitch) {
    h1_chain_viak(mtop, z, out);
  } else {
    h1_chain_raw(mtop, z, out);
  }
}

void check_order(int m) {
  if (m < 0) throw std::invalid_argument("bessel order must be >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------
// Raw functions
// ---------------------------------------------------------------------------

Cplx bessel_j(int m, Cplx z) {
  check_order(m);
  if (z.imag() > kHankelImSwitch) {
    std::vector<ScaledC> iv, kv;
    ik_chain(m, -kI * z, iv, kv);
    return (iv[m] * ipow(m)).value();
  }
  std::vector<ScaledC> jv;
  j_chain(m, z, jv);
  return jv[m].value();
}

Cplx bessel_j_prime(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) return (m == 1) ? Cplx{0.5, 0.0} : Cplx{0.0, 0.0};
  if (z.imag() > kHankelImSwitch) {
    std::vector<ScaledC> iv, kv;
    ik_chain(m + 1, -kI * z, iv, kv);
    ScaledC ip = (m == 0) ? iv[1] : sc_add(iv[m - 1], iv[m + 1]) * 0.5;
    return (ip * ipow(m - 1)).value();
  }
  std::vector<ScaledC> jv;
  j_chain(m + 1, z, jv);
  ScaledC jp = (m == 0) ? jv[1] * Cplx{-1.0, 0.0}
                        : sc_add(jv[m - 1], jv[m + 1] * Cplx{-1.0, 0.0}) * 0.5;
  return jp.value();
}

Cplx bessel_y(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("Y_m is singular at z = 0");
  if (z.imag() > kHankelImSwitch) {
    // Y = (H - J)/i; |H| << |J| here, no cancellation.
    std::vector<ScaledC> hv;
    h1_chain_viak(m, z, hv);
    std::vector<ScaledC> iv, kv;
    ik_chain(m, -kI * z, iv, kv);
    ScaledC j = iv[m] * ipow(m);
    return sc_add(hv[m], j * Cplx{-1.0, 0.0}).value() / kI;
  }
  std::vector<ScaledC> yv;
  ScaledC j0, j1, y0, y1;
  jy01_base(z, j0, j1, y0, y1);
  forward_chain(std::max(m, 1), z, -1.0, y0, y1, yv);
  return yv[m].value();
}

Cplx bessel_y_prime(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("Y_m' is singular at z = 0");
  if (m == 0) return -bessel_y(1, z);
  return 0.5 * (bessel_y(m - 1, z) - bessel_y(m + 1, z));
}

Cplx bessel_h1(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("H_m^(1) is singular at z = 0");
  std::vector<ScaledC> hv;
  h1_chain(m, z, hv);
  return hv[m].value();
}

Cplx bessel_h1_prime(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("H_m^(1) is singular at z = 0");
  std::vector<ScaledC> hv;
  h1_chain(m + 1, z, hv);
  ScaledC hp = (m == 0) ? hv[1] * Cplx{-1.0, 0.0}
                        : sc_add(hv[m - 1], hv[m + 1] * Cplx{-1.0, 0.0}) * 0.5;
  return hp.value();
}

Cplx bessel_i(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) return (m == 0) ? Cplx{1.0, 0.0} : Cplx{0.0, 0.0};
  std::vector<ScaledC> iv, kv;
  ik_chain(m, z, iv, kv);
  return iv[m].value();
}

Cplx bessel_i_prime(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) return (m == 1) ? Cplx{0.5, 0.0} : Cplx{0.0, 0.0};
  std::vector<ScaledC> iv, kv;
  ik_chain(m + 1, z, iv, kv);
  ScaledC ip = (m == 0) ? iv[1] : sc_add(iv[m - 1], iv[m + 1]) * 0.5;
  return ip.value();
}

Cplx bessel_k(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("K_m is singular at z = 0");
  std::vector<ScaledC> iv, kv;
  ik_chain(m, z, iv, kv);
  return kv[m].value();
}

Cplx bessel_k_prime(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("K_m is singular at z = 0");
  std::vector<ScaledC> iv, kv;
  ik_chain(m + 1, z, iv, kv);
  ScaledC kp = (m == 0) ? kv[1] * Cplx{-1.0, 0.0}
                        : sc_add(kv[m - 1], kv[m + 1]) * Cplx{-0.5, 0.0};
  return kp.value();
}

// ---------------------------------------------------------------------------
// Reduced functions
// ---------------------------------------------------------------------------

namespace {
constexpr double kPoleMagnitude = 1.0e12;
}

Cplx jtilde(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) {
    if (m == 0) return {0.0, 0.0};
    throw PoleError("jtilde: z = 0 is a pole for m >= 1");
  }
  if (z.imag() > kHankelImSwitch) return -kI * itilde(m, -kI * z);
  std::vector<Cplx> r;
  ratio_chain(m, z, false, r);
  Cplx v = double(m) / z - r[m];
  if (std::abs(v) > kPoleMagnitude)
    throw PoleError("jtilde: argument within ~1e-12 of a zero of J_m");
  return v;
}

Cplx itilde(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) {
    if (m == 0) return {0.0, 0.0};
    throw PoleError("itilde: z = 0 is a pole for m >= 1");
  }
  std::vector<Cplx> r;
  ratio_chain(m, z, true, r);
  return double(m) / z + r[m];
}

Cplx ktilde(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("ktilde is singular at z = 0");
  ScaledC k0, k1;
  mod_k01(z, k0, k1);
  Cplx rho = sc_ratio(k1, k0);  // K_1/K_0
  for (int n = 1; n <= m; ++n) rho = 2.0 * double(n) / z + 1.0 / rho;
  return double(m) / z - rho;
}

Cplx htilde(int m, Cplx z) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("htilde is singular at z = 0");
  if (z.imag() > kHankelImSwitch) return -kI * ktilde(m, -kI * z);
  std::vector<ScaledC> hv;
  h1_chain(std::max(m, 1), z, hv);
  if (m == 0) return -sc_ratio(hv[1], hv[0]);
  return sc_ratio(hv[m - 1], hv[m]) - double(m) / z;
}

Cplx reduced(Reduced kind, int m, Cplx z) {
  switch (kind) {
    case Reduced::jtilde: return jtilde(m, z);
    case Reduced::htilde: return htilde(m, z);
    case Reduced::itilde: return itilde(m, z);
    case Reduced::ktilde: return ktilde(m, z);
  }
  throw std::invalid_argument("unknown reduced kind");
}

// ---------------------------------------------------------------------------
// Scaled pairs
// ---------------------------------------------------------------------------

void scaled_j_pair(int m, Cplx z, ScaledC& jm, ScaledC& jpm) {
  check_order(m);
  if (near_zero(z)) {
    jm = (m == 0) ? ScaledC{{1.0, 0.0}, 0.0} : ScaledC{};
    jpm = (m == 1) ? ScaledC{{0.5, 0.0}, 0.0} : ScaledC{};
    return;
  }
  if (z.imag() > kHankelImSwitch) {
    std::vector<ScaledC> iv, kv;
    ik_chain(m + 1, -kI * z, iv, kv);
    jm = iv[m] * ipow(m);
    ScaledC ip = (m == 0) ? iv[1] : sc_add(iv[m - 1], iv[m + 1]) * 0.5;
    jpm = ip * ipow(m - 1);
    return;
  }
  std::vector<ScaledC> jv;
  j_chain(m + 1, z, jv);
  jm = jv[m];
  jpm = (m == 0) ? jv[1] * Cplx{-1.0, 0.0}
                 : sc_add(jv[m - 1], jv[m + 1] * Cplx{-1.0, 0.0}) * 0.5;
}

void scaled_h1_pair(int m, Cplx z, ScaledC& hm, ScaledC& hpm) {
  check_order(m);
  if (near_zero(z)) throw std::invalid_argument("H_m^(1) is singular at z = 0");
  std::vector<ScaledC> hv;
  h1_chain(m + 1, z, hv);
  hm = hv[m];
  hpm = (m == 0) ? hv[1] * Cplx{-1.0, 0.0}
                 : sc_add(hv[m - 1], hv[m + 1] * Cplx{-1.0, 0.0}) * 0.5;
}

void scaled_ik(int m, Cplx w, ScaledC& im, ScaledC& km) {
  check_order(m);
  if (near_zero(w)) throw std::invalid_argument("K_m is singular at w = 0");
  std::vector<ScaledC> iv, kv;
  ik_chain(m, w, iv, kv);
  im = iv[m];
  km = kv[m];
}

// ---------------------------------------------------------------------------
// Zeros of J_m and J_m'
// ---------------------------------------------------------------------------

namespace {

double j_real(int m, double x) { return bessel_j(m, Cplx{x, 0.0}).real(); }
double jp_real(int m, double x) { return bessel_j_prime(m, Cplx{x, 0.0}).real(); }
double jpp_real(int m, double x) {
  // From the defining ODE.
  double mm = double(m);
  return (mm * mm / (x * x) - 1.0) * j_real(m, x) - jp_real(m, x) / x;
}

// Safeguarded Newton for f within a sign-changing bracket.
template <class F, class DF>
double newton_bracketed(F f, DF df, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw ConvergenceError("zero finder: bracket does not change sign");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    double dx = fx / df(x);
    double xn = x - dx;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < 1.0e-15 * x) return xn;
    x = xn;
  }
  return x;
}

struct ZeroKey {
  int m, j;
  bool der;
  bool operator<(const ZeroKey& o) const {
    return std::tie(m, j, der) < std::tie(o.m, o.j, o.der);
  }
};

std::map<ZeroKey, double> g_zero_cache;
std::shared_mutex g_zero_mutex;

double zero_uncached(int m, int j, bool derivative);

double zero_cached(int m, int j, bool derivative) {
  ZeroKey key{m, j, derivative};
  {
    std::shared_lock lock(g_zero_mutex);
    auto it = g_zero_cache.find(key);
    if (it != g_zero_cache.end()) return it->second;
  }
  double v = zero_uncached(m, j, derivative);
  std::unique_lock lock(g_zero_mutex);
  g_zero_cache.emplace(key, v);
  return v;
}

// McMahon guess for the j-th positive zero of J_0, then safeguarded Newton.
double zero_j0(int j) {
  double b = (double(j) - 0.25) * kPi;
  double guess = b + 1.0 / (8.0 * b);
  double lo = guess - 0.6, hi = guess + 0.6;
  while (j_real(0, lo) * j_real(0, hi) > 0.0) {
    lo -= 0.2;
    hi += 0.2;
  }
  return newton_bracketed([&](double x) { return j_real(0, x); },
                          [&](double x) { return jp_real(0, x); }, lo, hi);
}

double zero_uncached(int m, int j, bool derivative) {
  if (!derivative) {
    if (m == 0) return zero_j0(j);
    // Interlacing: j_{m,j} lies strictly between j_{m-1,j} and j_{m-1,j+1}.
    double lo = zero_cached(m - 1, j, false);
    double hi = zero_cached(m - 1, j + 1, false);
    return newton_bracketed([&](double x) { return j_real(m, x); },
                            [&](double x) { return jp_real(m, x); },
                            lo * (1.0 + 1.0e-12) + 1.0e-12,
                            hi * (1.0 - 1.0e-12));
  }
  if (m == 0) return zero_cached(1, j, false);  // J_0' = -J_1
  // j'_{m,1} in (m, j_{m,1}); j'_{m,j} in (j_{m,j-1}, j_{m,j}) for j >= 2.
  double lo = (j == 1) ? double(m) * (1.0 + 1.0e-9) + 1.0e-9
                       : zero_cached(m, j - 1, false) * (1.0 + 1.0e-12);
  double hi = zero_cached(m, j, false) * (1.0 - 1.0e-12);
  return newton_bracketed([&](double x) { return jp_real(m, x); },
                          [&](double x) { return jpp_real(m, x); }, lo, hi);
}

}  // namespace

double bessel_zero(int m, int j, bool derivative) {
  if (m < 0 || j < 1) throw std::invalid_argument("bessel_zero: need m >= 0, j >= 1");
  return zero_cached(m, j, derivative);
}

BesselZero bessel_zero_info(int m, int j, bool derivative) {
  return BesselZero{m, j, derivative, bessel_zero(m, j, derivative)};
}

}  // namespace cavcp::specfun
