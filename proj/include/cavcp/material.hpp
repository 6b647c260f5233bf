#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cavcp {

using Cplx = std::complex<double>;

enum class MaterialModel { drude, plasma, perfect_conductor, tabulated };

// One optical-data sample: angular frequency (rad/s) and permittivity.
struct EpsSample {
  double omega = 0.0;
  Cplx eps{1.0, 0.0};
};

struct Material {
  MaterialModel model = MaterialModel::perfect_conductor;
  std::string name = "perfect conductor";
  double omega_p = 0.0;  // plasma frequency, rad/s
  double gamma = 0.0;    // relaxation frequency, rad/s
  std::vector<EpsSample> table;  // ascending omega

  static Material drude(std::string name, double omega_p, double gamma);
  static Material plasma(std::string name, double omega_p);
  static Material perfect();
  static Material tabulated(std::string name, std::vector<EpsSample> table);
  // Frequency-independent permittivity, realised as a two-point table
  // spanning [1e6, 1e20] rad/s. Used by the scaling sweeps.
  static Material fixed_eps(std::string name, Cplx eps);

  bool is_perfect() const { return model == MaterialModel::perfect_conductor; }
};

// Permittivity at real frequency omega > 0. For the perfect conductor this
// returns +infinity as a symbolic flag; the mirror module dispatches on
// is_perfect() and never consumes it.
Cplx eps_real_freq(const Material& mat, double omega);

// Permittivity at imaginary frequency i*xi, xi > 0; real and > 1 for the
// dissipative models. Tabulated data carry no imaginary-frequency
// information and raise std::invalid_argument.
double eps_imag_freq(const Material& mat, double xi);

// Principal square root with the branch fixed so that eps in the closed
// upper half plane lands in the closed first quadrant.
Cplx sqrt_eps(Cplx eps);

// JSON file format:
//   {"name": ..., "model": "drude"|"plasma"|"perfect_conductor"|"tabulated",
//    "omega_p_rad_s": ..., "gamma_rad_s": ...,
//    "table": [[omega_rad_s, re_eps, im_eps], ...]}
Material load_material(const std::string& path);
void save_material(const Material& mat, const std::string& path);

}  // namespace cavcp
