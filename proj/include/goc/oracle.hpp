#pragma once

#include <cstddef>

#include "goc/envelope.hpp"

namespace goc {

struct OracleWitness {
  double z1 = 0.0;
  double z2 = 0.0;
  double w = 1.0;  // weight on z1
};

struct OracleResult {
  double eta = 0.0;
  double alpha = 0.0;
  double oracle_value = 0.0;
  double envelope_value = 0.0;
  OracleWitness witness;
  double witness_acceptance = 0.0;

  double gap() const { return envelope_value - oracle_value; }
};

struct OracleGrid {
  std::size_t z_points = 401;
  std::size_t w_points = 201;
};

/// Brute force over two-point offset mixtures: maximizes
/// [w nu(z1) + (1-w) nu(z2)] / [4 (w k(z1) + (1-w) k(z2))] subject to the
/// mixture acceptance being at least alpha. For every offset pair the weight
/// is scanned on the w grid, and the weight where the constraint binds is also
/// tried, since the ratio is monotone in w. Compared with table.c_at(alpha).
OracleResult two_point_oracle(const Scenario& scenario, const EnvelopeTable& table, double alpha,
                              const OracleGrid& grid = {});

/// Two-point search with z1 == z2 only: max nu(z) / (4 k(z)) s.t. k(z) >= alpha.
double single_point_oracle(const Scenario& scenario, double eta, double alpha,
                           std::size_t z_points);

/// Three-point mixtures on a coarse grid with simplex weights; used to check
/// that a third support point never beats the best two-point mixture.
double three_point_oracle(const Scenario& scenario, double eta, double alpha,
                          std::size_t z_points, std::size_t w_points);

/// Two-point search on the same coarse grid as three_point_oracle.
double two_point_value(const Scenario& scenario, double eta, double alpha, std::size_t z_points,
                       std::size_t w_points);

}  // namespace goc
