#include "burstkit/cme_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "burstkit/errors.hpp"

namespace burstkit {

namespace {

// Outgoing rates of a state.
struct StateRates {
    double m_up = 0.0;
    double m_down = 0.0;
    double n_up = 0.0;
    double n_down = 0.0;
};

// Rates with the reflecting boundary applied.
template <class RateFn>
StateRates bounded_rates(const RateFn& rates, std::size_t m, std::size_t n, std::size_t m_max,
                         std::size_t n_max) {
    StateRates r = rates(m, n);
    if (m == m_max) r.m_up = 0.0;
    if (n == n_max) r.n_up = 0.0;
    if (m == 0) r.m_down = 0.0;
    if (n == 0) r.n_down = 0.0;
    return r;
}

template <class RateFn>
std::vector<double> solve_levels(const RateFn& rates, const TruncatedStateSpace& space) {
    const std::size_t phases = space.m_max() + 1;
    const std::size_t levels = space.n_max() + 1;
    using Matrix = Eigen::MatrixXd;
    using RowVector = Eigen::RowVectorXd;

    auto local_block = [&](std::size_t n) {
        Matrix block = Matrix::Zero(phases, phases);
        for (std::size_t m = 0; m < phases; ++m) {
            const StateRates r = bounded_rates(rates, m, n, space.m_max(), space.n_max());
            if (m + 1 < phases) block(m, m + 1) = r.m_up;
            if (m > 0) block(m, m - 1) = r.m_down;
            block(m, m) = -(r.m_up + r.m_down + r.n_up + r.n_down);
        }
        return block;
    };
    auto up_rates = [&](std::size_t n) {
        Eigen::VectorXd up(phases);
        for (std::size_t m = 0; m < phases; ++m) {
            up(m) = bounded_rates(rates, m, n, space.m_max(), space.n_max()).n_up;
        }
        return up;
    };
    auto down_rates = [&](std::size_t n) {
        Eigen::VectorXd down(phases);
        for (std::size_t m = 0; m < phases; ++m) {
            down(m) = bounded_rates(rates, m, n, space.m_max(), space.n_max()).n_down;
        }
        return down;
    };

    // R[n] maps pi_{n-1} to pi_n.
    std::vector<Matrix> transfer(levels);
    Matrix reduced = local_block(levels - 1);
    for (std::size_t n = levels - 1; n >= 1; --n) {
        const Matrix inverse = (-reduced).partialPivLu().inverse();
        transfer[n] = up_rates(n - 1).asDiagonal() * inverse;
        reduced = local_block(n - 1) + transfer[n] * down_rates(n).asDiagonal();
        // Rows of the censored generator sum to minus the rate of leaving
        // downwards. Rebuilding the diagonal from that avoids the
        // cancellation of large, nearly equal in and out rates.
        const Eigen::VectorXd down = down_rates(n - 1);
        for (Eigen::Index m = 0; m < reduced.rows(); ++m) {
            double off = 0.0;
            for (Eigen::Index k = 0; k < reduced.cols(); ++k) {
                if (k != m) off += reduced(m, k);
            }
            reduced(m, m) = -(off + down(m));
        }
    }

    // pi_0 reduced = 0, normalized to sum 1 at level 0
    Matrix system = reduced.transpose();
    system.row(phases - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(phases);
    rhs(phases - 1) = 1.0;
    RowVector level = system.fullPivLu().solve(rhs).transpose();
    for (Eigen::Index i = 0; i < level.size(); ++i) level(i) = std::max(level(i), 0.0);

    std::vector<RowVector> scaled(levels);
    std::vector<double> log_scale(levels, 0.0);
    double scale = level.maxCoeff();
    scaled[0] = scale > 0.0 ? RowVector(level / scale) : level;
    log_scale[0] = scale > 0.0 ? std::log(scale) : 0.0;
    for (std::size_t n = 1; n < levels; ++n) {
        RowVector next = scaled[n - 1] * transfer[n];
        scale = next.maxCoeff();
        if (scale > 0.0) {
            scaled[n] = next / scale;
            log_scale[n] = log_scale[n - 1] + std::log(scale);
        } else {
            scaled[n] = next;
            log_scale[n] = log_scale[n - 1];
        }
    }
    const double top = *std::max_element(log_scale.begin(), log_scale.end());
    std::vector<double> probs(space.size(), 0.0);
    double total = 0.0;
    for (std::size_t n = 0; n < levels; ++n) {
        const double factor = std::exp(log_scale[n] - top);
        for (std::size_t m = 0; m < phases; ++m) {
            const double p = std::max(0.0, scaled[n](static_cast<Eigen::Index>(m)) * factor);
            probs[space.index(m, n)] = p;
            total += p;
        }
    }
    for (double& p : probs) p /= total;
    return probs;
}

// max_j |(pi Q)_j|
template <class RateFn>
double generator_residual(const RateFn& rates, const TruncatedStateSpace& space,
                          const std::vector<double>& probs) {
    std::vector<double> flow(space.size(), 0.0);
    for (std::size_t m = 0; m <= space.m_max(); ++m) {
        for (std::size_t n = 0; n <= space.n_max(); ++n) {
            const std::size_t i = space.index(m, n);
            const StateRates r = bounded_rates(rates, m, n, space.m_max(), space.n_max());
            const double p = probs[i];
            flow[i] -= p * (r.m_up + r.m_down + r.n_up + r.n_down);
            if (r.m_up > 0.0) flow[space.index(m + 1, n)] += p * r.m_up;
            if (r.m_down > 0.0) flow[space.index(m - 1, n)] += p * r.m_down;
            if (r.n_up > 0.0) flow[space.index(m, n + 1)] += p * r.n_up;
            if (r.n_down > 0.0) flow[space.index(m, n - 1)] += p * r.n_down;
        }
    }
    double worst = 0.0;
    for (double f : flow) worst = std::max(worst, std::abs(f));
    return worst;
}

void check(double boundary, double residual, const OracleOptions& options) {
    if (boundary > options.boundary_tolerance) {
        throw NumericalError("truncation too small: boundary mass " + std::to_string(boundary) +
                             " exceeds " + std::to_string(options.boundary_tolerance));
    }
    if (!(residual <= options.residual_tolerance)) {
        throw NumericalError("stationary solve residual " + std::to_string(residual) +
                             " exceeds " + std::to_string(options.residual_tolerance));
    }
}

}  // namespace

TruncatedStateSpace::TruncatedStateSpace(std::size_t m_max, std::size_t n_max)
    : m_max_(m_max), n_max_(n_max) {}

BinaryOracleResult solve_truncated_binary(const BinaryParams& params, std::size_t n_max,
                                          const OracleOptions& options) {
    validate(params);
    const double off_rate = switch_off_rate(params);
    auto rates = [&](std::size_t m, std::size_t n) {
        const double nd = static_cast<double>(n);
        if (m == 0) return StateRates{switch_on_rate(params, nd), 0.0, 0.0, nd};
        return StateRates{0.0, off_rate, params.nu, nd};
    };
    const TruncatedStateSpace space(1, n_max);
    const std::vector<double> probs = solve_levels(rates, space);

    BinaryOracleResult result{JointSteadyState{std::vector<double>(n_max + 1),
                                               std::vector<double>(n_max + 1),
                                               point_mass(0)}};
    std::vector<double> marginal(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        result.state.p0[n] = probs[space.index(0, n)];
        result.state.p1[n] = probs[space.index(1, n)];
        marginal[n] = result.state.p0[n] + result.state.p1[n];
    }
    result.boundary_mass = marginal[n_max];
    result.residual = generator_residual(rates, space, probs);
    check(result.boundary_mass, result.residual, options);
    result.state.marginal = DiscreteDistribution(std::move(marginal), result.boundary_mass);
    return result;
}

TwoStageOracleResult solve_truncated_two_stage(const TwoStageRates& rates, std::size_t m_max,
                                               std::size_t n_max, const OracleOptions& options) {
    validate_simulation_rates(rates);
    if (m_max < 1) throw ValidationError("m_max must be >= 1");
    auto rate_fn = [&](std::size_t m, std::size_t n) {
        const double md = static_cast<double>(m);
        const double nd = static_cast<double>(n);
        return StateRates{rates.mu0_M + rates.mu1_M * nd, rates.rho_M * md, rates.nu_P * md,
                          rates.rho_P * nd};
    };
    const TruncatedStateSpace space(m_max, n_max);
    std::vector<double> probs = solve_levels(rate_fn, space);

    std::vector<double> marginal_n(n_max + 1, 0.0);
    std::vector<double> marginal_m(m_max + 1, 0.0);
    for (std::size_t m = 0; m <= m_max; ++m) {
        for (std::size_t n = 0; n <= n_max; ++n) {
            const double p = probs[space.index(m, n)];
            marginal_n[n] += p;
            marginal_m[m] += p;
        }
    }
    double above_one = 0.0;
    for (std::size_t m = 2; m <= m_max; ++m) above_one += marginal_m[m];
    const double boundary_n = marginal_n[n_max];
    const double boundary_m = marginal_m[m_max];
    const double residual = generator_residual(rate_fn, space, probs);
    check(std::max(boundary_n, boundary_m), residual, options);

    return TwoStageOracleResult{space,
                                std::move(probs),
                                DiscreteDistribution(std::move(marginal_n), boundary_n + boundary_m),
                                std::move(marginal_m),
                                above_one,
                                boundary_n,
                                boundary_m,
                                residual};
}

std::vector<BinaryParams> validation_grid() {
    std::vector<BinaryParams> grid;
    for (double a : {0.1, 1.0, 10.0}) {
        for (double b : {1.0, 10.0, 100.0, 1000.0}) {
            if (a > b) continue;
            for (double theta : {0.9, 0.99, 1.0}) {
                for (double nu : {0.0, 1.0, 100.0, 1000.0}) grid.push_back({a, b, theta, nu});
            }
        }
    }
    return grid;
}

}  // namespace burstkit
