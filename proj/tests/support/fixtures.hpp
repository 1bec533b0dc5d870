#pragma once

#include <cmath>
#include <random>

#include "gridcert/netmodel.hpp"

// Test-only network generators and closed-form oracles. Nothing here calls
// into the solver or certificate code it is used to check.
namespace gridcert::testing {

inline CMatrix reference_three_bus_z() {
  CMatrix z(2, 2);
  z << Complex(-1.0 / 7.0, 0.0), Complex(-1.0 / 7.0, 0.0),
      Complex(-1.0 / 7.0, 0.0), Complex(-64.0 / 203.0, 2.0 / 29.0);
  return z;
}

/// 3-bus reference read in the consumption convention (negated on input).
inline ImpedanceMatrix reference_three_bus() { return impedance_fixture(-reference_three_bus_z()); }

inline Network two_bus(double r, double x, double v0 = 1.0) {
  Network net;
  net.v0 = v0;
  net.buses = {Bus{0, {}}, Bus{1, {}}};
  net.lines = {Line{0, 1, r, x}};
  return net;
}

inline Network chain(int n, double r, double x) {
  Network net;
  for (int b = 0; b <= n; ++b) net.buses.push_back(Bus{b, {}});
  for (int b = 1; b <= n; ++b) net.lines.push_back(Line{b - 1, b, r, x});
  return net;
}

/// Radial network: each bus attaches to a uniformly chosen earlier bus.
/// Line r, x are uniform in [0.01, 1]; with `shunts` every load bus gets a
/// capacitive shunt_b in [0, 0.2] with probability 1/2.
inline Network random_radial(std::mt19937_64& rng, int n, bool shunts) {
  std::uniform_real_distribution<double> imp(0.01, 1.0);
  std::uniform_real_distribution<double> cap(0.0, 0.2);
  std::bernoulli_distribution coin(0.5);
  Network net;
  net.v0 = 1.0;
  for (int b = 0; b <= n; ++b) {
    Bus bus{b, {}};
    if (b > 0 && shunts && coin(rng)) bus.shunt = Complex(0.0, cap(rng));
    net.buses.push_back(bus);
  }
  for (int b = 1; b <= n; ++b) {
    std::uniform_int_distribution<int> parent(0, b - 1);
    net.lines.push_back(Line{parent(rng), b, imp(rng), imp(rng)});
  }
  return net;
}

/// High-branch voltage of a 2-bus line R + jX feeding consumption P + jQ
/// from a slack at v0 (real reference), or NaN past the nose. Solves
/// |v|^4 - (v0^2 - 2(RP + XQ))|v|^2 + |Z|^2 |S|^2 = 0.
inline double two_bus_voltage(double r, double x, double p, double q, double v0 = 1.0) {
  const double b = v0 * v0 - 2.0 * (r * p + x * q);
  const double c = (r * r + x * x) * (p * p + q * q);
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return std::nan("");
  return std::sqrt(0.5 * (b + std::sqrt(disc)));
}

/// Largest t with consumption t (dp, dq) solvable on a 2-bus line:
/// (v0^2/2 - t (R dp + X dq))^2 >= |Z|^2 t^2 (dp^2 + dq^2).
inline double two_bus_t_star(double r, double x, double dp, double dq, double v0 = 1.0) {
  const double a = r * dp + x * dq;
  const double m = std::hypot(r, x) * std::hypot(dp, dq);
  // v0^2/2 - t a = t m  (the other root is never the first crossing for t > 0)
  return 0.5 * v0 * v0 / (a + m);
}

}  // namespace gridcert::testing
