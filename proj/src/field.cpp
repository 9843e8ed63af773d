#include "annulus/field.hpp"

#include <cmath>

namespace annulus {

QuadratureScheme QuadratureScheme::geometric(double t_min, double t_max,
                                             int M) {
  if (!(t_min > 0.0) || !(t_max > t_min) || M < 1)
    throw config_error("QuadratureScheme::geometric: need 0 < t_min < t_max, M >= 1");
  QuadratureScheme q;
  q.kind = Kind::midpoint_geometric;
  q.t_min = t_min;
  q.t_max = t_max;
  double ratio = std::pow(t_max / t_min, 1.0 / M);
  double w = std::log(ratio);  // dt/t measure of each geometric cell, exact
  q.nodes.resize(M);
  q.weights.assign(M, w);
  for (int i = 0; i < M; ++i)
    q.nodes[i] = t_min * std::pow(ratio, i + 0.5);  // geometric midpoint
  return q;
}

QuadratureScheme QuadratureScheme::uniform(double t_min, double t_max, int M) {
  if (!(t_max > t_min) || M < 1)
    throw config_error("QuadratureScheme::uniform: need t_min < t_max, M >= 1");
  QuadratureScheme q;
  q.kind = Kind::midpoint_uniform;
  q.t_min = t_min;
  q.t_max = t_max;
  double h = (t_max - t_min) / M;
  q.nodes.resize(M);
  q.weights.assign(M, h);
  for (int i = 0; i < M; ++i) q.nodes[i] = t_min + (i + 0.5) * h;
  return q;
}

WeightField::WeightField(Field f) : field(std::move(f)) {
  for (const cd& v : field.values) {
    if (!(v.real() >= 0.0) || v.imag() != 0.0)
      throw config_error("WeightField: values must be real and nonnegative");
  }
}

}  // namespace annulus
