#include "ttheat/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "ttheat/errors.hpp"

namespace ttheat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double coord(std::size_t a, double x, double y, double z) { return a == 0 ? x : (a == 1 ? y : z); }

ManufacturedCase sine_case(CaseId id) {
  ManufacturedCase c;
  c.id = id;
  const Fn1 s = [](double x) { return std::sin(kTwoPi * x); };
  const Fn1 ds = [](double x) { return kTwoPi * std::cos(kTwoPi * x); };
  const Fn1 d2s = [](double x) { return -kTwoPi * kTwoPi * std::sin(kTwoPi * x); };
  c.factor = std::array<Fn1, 3>{s, ds, d2s};
  c.phi = [s](double x, double y, double z) { return s(x) * s(y) * s(z); };
  auto partial = [s](const Fn1& d) {
    return [s, d](std::size_t a, double x, double y, double z) {
      const double v[3] = {x, y, z};
      double p = 1.0;
      for (std::size_t b = 0; b < 3; ++b) p *= b == a ? d(v[b]) : s(v[b]);
      return p;
    };
  };
  c.phi_d1 = partial(ds);
  c.phi_d2 = partial(d2s);
  c.reference_rank = 1;
  return c;
}

}  // namespace

double ManufacturedCase::l_phi(double x, double y, double z, const CoordinateMetric& m) const {
  double s = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const double xa = coord(a, x, y, z);
    const double q = m.q(xa);
    s += q * q * phi_d2(a, x, y, z) + q * m.dq(xa) * phi_d1(a, x, y, z);
  }
  return s;
}

double ManufacturedCase::forcing(double x, double y, double z, double t,
                                 const CoordinateMetric& m) const {
  return dtau(t) * phi(x, y, z) - tau(t) * l_phi(x, y, z, m);
}

ManufacturedCase manufactured(CaseId id) {
  switch (id) {
    case CaseId::u1: {
      auto c = sine_case(id);
      c.tau = [](double) { return 1.0; };
      c.dtau = [](double) { return 0.0; };
      return c;
    }
    case CaseId::u2: {
      auto c = sine_case(id);
      c.tau = [](double t) { return std::cos(kTwoPi * t); };
      c.dtau = [](double t) { return -kTwoPi * std::sin(kTwoPi * t); };
      return c;
    }
    case CaseId::u3: {
      ManufacturedCase c;
      c.id = id;
      c.tau = [](double t) { return t; };
      c.dtau = [](double) { return 1.0; };
      c.phi = [](double x, double y, double z) {
        const double s = x + y + z - 1.5;
        return std::exp(-s * s);
      };
      c.phi_d1 = [](std::size_t, double x, double y, double z) {
        const double s = x + y + z - 1.5;
        return -2.0 * s * std::exp(-s * s);
      };
      c.phi_d2 = [](std::size_t, double x, double y, double z) {
        const double s = x + y + z - 1.5;
        return (4.0 * s * s - 2.0) * std::exp(-s * s);
      };
      c.reference_rank = 11;
      return c;
    }
  }
  throw InvalidInput("unknown manufactured case");
}

Grid3 scenario_grid(Scenario s, std::size_t nc, std::size_t n_ghost) {
  switch (s) {
    case Scenario::regular:
      return Grid3::cube(regular_axis(0.0, 1.0, nc, n_ghost));
    case Scenario::variable: {
      // Nested refinements of one smooth stretching: the ratio tends to 1 as nc grows.
      const double rho = std::pow(1.125, 20.0 / static_cast<double>(nc));
      const double h0 = (rho - 1.0) / (std::pow(rho, static_cast<double>(nc)) - 1.0);
      return Grid3::cube(geometric_axis(0.0, h0, rho, nc, n_ghost));
    }
    case Scenario::remapped:
      return Grid3::cube(
          remapped_axis(0.0, 1.0, nc, n_ghost, [](double x) { return 4.0 * std::exp(-2.0 * x); }));
  }
  throw InvalidInput("unknown scenario");
}

CoordinateMetric scenario_metric(Scenario s) {
  CoordinateMetric m;
  if (s == Scenario::remapped) {
    m.q = [](double x) { return 0.25 * std::exp(2.0 * x); };
    m.dq = [](double x) { return 0.5 * std::exp(2.0 * x); };
  }
  return m;
}

CaseId parse_case(const std::string& s) {
  if (s == "u1") return CaseId::u1;
  if (s == "u2") return CaseId::u2;
  if (s == "u3") return CaseId::u3;
  throw InvalidInput("unknown case '" + s + "'");
}

Scenario parse_scenario(const std::string& s) {
  if (s == "regular") return Scenario::regular;
  if (s == "variable") return Scenario::variable;
  if (s == "remapped") return Scenario::remapped;
  throw InvalidInput("unknown scenario '" + s + "'");
}

std::string to_string(CaseId c) {
  switch (c) {
    case CaseId::u1: return "u1";
    case CaseId::u2: return "u2";
    case CaseId::u3: return "u3";
  }
  return "?";
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::regular: return "regular";
    case Scenario::variable: return "variable";
    case Scenario::remapped: return "remapped";
  }
  return "?";
}

}  // namespace ttheat
