#include "cavcp/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace cavcp {

Material Material::drude(std::string name, double omega_p, double gamma) {
  if (omega_p <= 0.0 || gamma < 0.0)
    throw std::invalid_argument("drude: need omega_p > 0 and gamma >= 0");
  Material m;
  m.model = MaterialModel::drude;
  m.name = std::move(name);
  m.omega_p = omega_p;
  m.gamma = gamma;
  return m;
}

Material Material::plasma(std::string name, double omega_p) {
  Material m = drude(std::move(name), omega_p, 0.0);
  m.model = MaterialModel::plasma;
  return m;
}

Material Material::perfect() { return Material{}; }

Material Material::tabulated(std::string name, std::vector<EpsSample> table) {
  if (table.size() < 2)
    throw std::invalid_argument("tabulated: need at least two samples");
  if (!std::is_sorted(table.begin(), table.end(),
                      [](const EpsSample& a, const EpsSample& b) {
                        return a.omega < b.omega;
                      }))
    throw std::invalid_argument("tabulated: samples must ascend in omega");
  if (table.front().omega <= 0.0)
    throw std::invalid_argument("tabulated: omega samples must be positive");
  Material m;
  m.model = MaterialModel::tabulated;
  m.name = std::move(name);
  m.table = std::move(table);
  return m;
}

Material Material::fixed_eps(std::string name, Cplx eps) {
  return tabulated(std::move(name), {{1.0e6, eps}, {1.0e20, eps}});
}

Cplx eps_real_freq(const Material& mat, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("eps_real_freq: omega must be > 0");
  switch (mat.model) {
    case MaterialModel::drude:
    case MaterialModel::plasma: {
      double d = omega * omega + mat.gamma * mat.gamma;
      double wp2 = mat.omega_p * mat.omega_p;
      return {1.0 - wp2 / d, (mat.gamma / omega) * wp2 / d};
    }
    case MaterialModel::perfect_conductor:
      return {std::numeric_limits<double>::infinity(), 0.0};
    case MaterialModel::tabulated: {
      const auto& t = mat.table;
      if (omega < t.front().omega || omega > t.back().omega)
        throw std::invalid_argument("tabulated material: omega out of range");
      auto hi = std::lower_bound(
          t.begin(), t.end(), omega,
          [](const EpsSample& s, double w) { return s.omega < w; });
      if (hi == t.begin()) return hi->eps;
      auto lo = hi - 1;
      double f = (std::log(omega) - std::log(lo->omega)) /
                 (std::log(hi->omega) - std::log(lo->omega));
      return lo->eps + f * (hi->eps - lo->eps);
    }
  }
  throw std::logic_error("unknown material model");
}

double eps_imag_freq(const Material& mat, double xi) {
  if (xi <= 0.0) throw std::invalid_argument("eps_imag_freq: xi must be > 0");
  switch (mat.model) {
    case MaterialModel::drude:
    case MaterialModel::plasma:
      return 1.0 + mat.omega_p * mat.omega_p / (xi * (xi + mat.gamma));
    case MaterialModel::perfect_conductor:
      return std::numeric_limits<double>::infinity();
    case MaterialModel::tabulated:
      throw std::invalid_argument(
          "tabulated material carries no imaginary-frequency data");
  }
  throw std::logic_error("unknown material model");
}

Cplx sqrt_eps(Cplx eps) {
  if (eps.imag() == 0.0) eps = Cplx{eps.real(), +0.0};
  return std::sqrt(eps);
}

namespace {

using nlohmann::json;

Material from_json(const json& j) {
  std::string model = j.at("model").get<std::string>();
  std::string name = j.value("name", model);
  if (model == "drude")
    return Material::drude(name, j.at("omega_p_rad_s").get<double>(),
                           j.at("gamma_rad_s").get<double>());
  if (model == "plasma")
    return Material::plasma(name, j.at("omega_p_rad_s").get<double>());
  if (model == "perfect_conductor") {
    Material m = Material::perfect();
    m.name = name;
    return m;
  }
  if (model == "tabulated") {
    std::vector<EpsSample> table;
    for (const auto& row : j.at("table")) {
      table.push_back(
          {row.at(0).get<double>(),
           Cplx{row.at(1).get<double>(), row.at(2).get<double>()}});
    }
    return Material::tabulated(name, std::move(table));
  }
  throw std::invalid_argument("unknown material model: " + model);
}

json to_json(const Material& m) {
  json j;
  j["name"] = m.name;
  switch (m.model) {
    case MaterialModel::drude:
      j["model"] = "drude";
      j["omega_p_rad_s"] = m.omega_p;
      j["gamma_rad_s"] = m.gamma;
      break;
    case MaterialModel::plasma:
      j["model"] = "plasma";
      j["omega_p_rad_s"] = m.omega_p;
      break;
    case MaterialModel::perfect_conductor:
      j["model"] = "perfect_conductor";
      break;
    case MaterialModel::tabulated: {
      j["model"] = "tabulated";
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& s : m.table)
        rows.push_back({s.omega, s.eps.real(), s.eps.imag()});
      j["table"] = rows;
      break;
    }
  }
  return j;
}

}  // namespace

Material load_material(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open material file: " + path);
  json j;
  in >> j;
  return from_json(j);
}

void save_material(const Material& mat, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write material file: " + path);
  out << to_json(mat).dump(2) << "\n";
}

}  // namespace cavcp
