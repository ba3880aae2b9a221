#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "ttheat/grid.hpp"

namespace ttheat {

enum class CaseId { u1, u2, u3 };
enum class Scenario { regular, variable, remapped };

using Fn1 = std::function<double(double)>;
using Fn3 = std::function<double(double, double, double)>;

/// Coefficients of L u = sum_a q_a (q_a u_a)_a = sum_a (q_a^2 u_aa + q_a q_a' u_a), where
/// q = 1/x~' is the inverse map derivative. q = 1 gives the standard Laplacian.
struct CoordinateMetric {
  Fn1 q = [](double) { return 1.0; };
  Fn1 dq = [](double) { return 0.0; };
};

/// u(x,y,z,t) = tau(t) phi(x,y,z) with forcing f = tau' phi - tau L phi.
struct ManufacturedCase {
  CaseId id = CaseId::u1;
  Fn1 tau;
  Fn1 dtau;
  Fn3 phi;
  /// First and second partial derivatives of phi along axis a.
  std::function<double(std::size_t, double, double, double)> phi_d1;
  std::function<double(std::size_t, double, double, double)> phi_d2;
  /// phi = s(x) s(y) s(z) with these one-dimensional factors, when separable.
  std::optional<std::array<Fn1, 3>> factor;  ///< s, s', s''
  std::optional<std::size_t> reference_rank;

  [[nodiscard]] double solution(double x, double y, double z, double t) const {
    return tau(t) * phi(x, y, z);
  }
  [[nodiscard]] double l_phi(double x, double y, double z, const CoordinateMetric& m) const;
  [[nodiscard]] double forcing(double x, double y, double z, double t,
                               const CoordinateMetric& m = {}) const;
};

[[nodiscard]] ManufacturedCase manufactured(CaseId id);

/// Unit-cube grid for a scenario: regular spacing; geometric stretching with ratio
/// 1.125^(20/nc) (1.125 at nc = 20); or equispaced with the map x~ = -2 exp(-2x).
[[nodiscard]] Grid3 scenario_grid(Scenario s, std::size_t nc, std::size_t n_ghost = kDefaultGhosts);
[[nodiscard]] CoordinateMetric scenario_metric(Scenario s);

[[nodiscard]] CaseId parse_case(const std::string& s);
[[nodiscard]] Scenario parse_scenario(const std::string& s);
[[nodiscard]] std::string to_string(CaseId c);
[[nodiscard]] std::string to_string(Scenario s);

}  // namespace ttheat
