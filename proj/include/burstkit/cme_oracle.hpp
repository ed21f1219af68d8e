#pragma once

// Steady state of the truncated master equations by direct elimination,
// independent of the closed-form solution. States are (m, n) with
// m in 0..m_max and n in 0..n_max; births out of the box are dropped
// (reflecting boundary), and the mass sitting on the boundary is reported as
// a bound on the leak.
//
// The generator is block tridiagonal in n (protein changes by one), so it is
// solved by linear level reduction: eliminate levels from n_max down to 0,
// solve the small system at level 0, then substitute upwards. Each level is
// kept with its own log scale, so distributions whose bulk sits far from
// n = 0 neither underflow nor overflow.

#include <cstddef>
#include <vector>

#include "burstkit/distribution.hpp"
#include "burstkit/params.hpp"

namespace burstkit {

class TruncatedStateSpace {
public:
    TruncatedStateSpace(std::size_t m_max, std::size_t n_max);

    std::size_t m_max() const { return m_max_; }
    std::size_t n_max() const { return n_max_; }
    std::size_t size() const { return (m_max_ + 1) * (n_max_ + 1); }

    std::size_t index(std::size_t m, std::size_t n) const { return m * (n_max_ + 1) + n; }
    std::size_t m_of(std::size_t index) const { return index / (n_max_ + 1); }
    std::size_t n_of(std::size_t index) const { return index % (n_max_ + 1); }

private:
    std::size_t m_max_;
    std::size_t n_max_;
};

struct OracleOptions {
    double boundary_tolerance = 1e-12;
    double residual_tolerance = 1e-10;
};

struct BinaryOracleResult {
    JointSteadyState state;
    double boundary_mass = 0.0;  // mass at n = n_max
    double residual = 0.0;       // max |(pi Q)_j|
};

struct TwoStageOracleResult {
    TruncatedStateSpace space;
    std::vector<double> joint;  // by space.index(m, n)
    DiscreteDistribution marginal_n;
    std::vector<double> marginal_m;
    double mass_m_ge_2 = 0.0;
    double boundary_mass_n = 0.0;  // mass at n = n_max
    double boundary_mass_m = 0.0;  // mass at m = m_max
    double residual = 0.0;
};

// Throws NumericalError if the boundary mass exceeds the tolerance or the
// residual of the solution is above residual_tolerance.
BinaryOracleResult solve_truncated_binary(const BinaryParams& params, std::size_t n_max,
                                          const OracleOptions& options = {});

TwoStageOracleResult solve_truncated_two_stage(const TwoStageRates& rates, std::size_t m_max,
                                               std::size_t n_max,
                                               const OracleOptions& options = {});

// a in {0.1, 1, 10}, b in {1, 10, 100, 1000}, theta in {0.9, 0.99, 1},
// nu in {0, 1, 100, 1000}, keeping the combinations with a <= b.
std::vector<BinaryParams> validation_grid();

}  // namespace burstkit
