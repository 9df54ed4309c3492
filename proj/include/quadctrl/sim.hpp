#pragma once

#include "quadctrl/system.hpp"

#include <eigen3/Eigen/Dense>
#include <eigen3/Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace quadctrl {

struct NonFinite : std::runtime_error {
    NonFinite() : std::runtime_error("trajectory left the finite range") {}
};

// Piecewise-constant control: `values[i]` is held for `segment_duration`.
struct ControlSchedule {
    double segment_duration = 0.0;
    std::vector<DVec> values;
    double bound = 1.0;

    double total_time() const { return segment_duration * static_cast<double>(values.size()); }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DVec> states;
};

constexpr double kBlowUpRadius = 1e6;

namespace detail {

inline void check_finite(const DVec& x) {
    double norm2 = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) throw NonFinite();
        norm2 += v * v;
    }
    if (norm2 > kBlowUpRadius * kBlowUpRadius) throw NonFinite();
}

inline DVec rk4_step(const DSystem& sys, const DVec& x, const DVec& u, double dt) {
    auto f = [&](const DVec& state) { return vector_field(sys, state, u); };
    DVec k1 = f(x);
    DVec k2 = f(x + (dt / 2.0) * k1);
    DVec k3 = f(x + (dt / 2.0) * k2);
    DVec k4 = f(x + dt * k3);
    DVec out = x;
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace detail

// Classical 4th-order Runge-Kutta over the schedule. dt must divide the
// segment duration. Throws NonFinite on blow-up (quadratic drifts can escape
// in finite time).
inline Trajectory integrate(const DSystem& sys, DVec x0, const ControlSchedule& schedule,
                            double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    double steps_real = schedule.segment_duration / dt;
    auto steps = static_cast<std::size_t>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-12 || steps == 0)
        throw std::invalid_argument("dt must divide the segment duration");

    Trajectory traj;
    double t = 0.0;
    detail::check_finite(x0);
    traj.times.push_back(t);
    traj.states.push_back(x0);
    for (const DVec& u : schedule.values) {
        if (u.size() != sys.num_controls())
            throw std::invalid_argument("control value dimension mismatch");
        for (std::size_t s = 0; s < steps; ++s) {
            x0 = detail::rk4_step(sys, x0, u, dt);
            detail::check_finite(x0);
            t += dt;
            traj.times.push_back(t);
            traj.states.push_back(x0);
        }
    }
    return traj;
}

struct CloudStats {
    std::vector<DVec> endpoints;
    std::size_t dropped = 0;  // samples lost to blow-up
    std::size_t empirical_rank = 0;
    std::vector<double> singular_values;
    double orthant_coverage = 0.0;  // fraction of sign patterns realized
};

inline std::size_t empirical_rank(const std::vector<DVec>& endpoints, double rel_tol = 1e-6) {
    if (endpoints.empty()) throw std::invalid_argument("empty endpoint cloud");
    const std::size_t n = endpoints.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(endpoints.size()), static_cast<Eigen::Index>(n));
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = endpoints[i][j];
    mean = m.colwise().mean();
    m.rowwise() -= mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

// Monte Carlo sweep of piecewise-constant random controls. Each sample uses
// an RNG stream derived from (seed, sample index), so results do not depend
// on execution order.
inline CloudStats reachable_cloud(const DSystem& sys, double horizon, std::size_t samples,
                                  double bound, std::size_t segments, std::uint64_t seed,
                                  double dt = 1e-3) {
    if (horizon <= 0.0 || samples == 0 || segments == 0)
        throw std::invalid_argument("reachable_cloud: bad sampling parameters");
    double segment_duration = horizon / static_cast<double>(segments);
    // Snap dt to an integer number of steps per segment.
    auto steps = static_cast<std::size_t>(std::ceil(segment_duration / dt));
    double dt_eff = segment_duration / static_cast<double>(steps);

    CloudStats stats;
    for (std::size_t i = 0; i < samples; ++i) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> dist(-bound, bound);
        ControlSchedule schedule;
        schedule.segment_duration = segment_duration;
        schedule.bound = bound;
        for (std::size_t s = 0; s < segments; ++s) {
            DVec u(sys.num_controls());
            for (auto& v : u) v = dist(rng);
            schedule.values.push_back(std::move(u));
        }
        try {
            Trajectory traj = integrate(sys, DVec(sys.n, 0.0), schedule, dt_eff);
            stats.endpoints.push_back(traj.states.back());
        } catch (const NonFinite&) {
            ++stats.dropped;
        }
    }

    if (!stats.endpoints.empty()) {
        stats.empirical_rank = empirical_rank(stats.endpoints);
        const std::size_t n = stats.endpoints.front().size();
        Eigen::MatrixXd m(static_cast<Eigen::Index>(stats.endpoints.size()),
                          static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < stats.endpoints.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    stats.endpoints[i][j];
        Eigen::MatrixXd centered = m.rowwise() - m.colwise().mean();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            stats.singular_values.push_back(svd.singularValues()(i));
        // Sign patterns of the endpoints projected on the dominant directions.
        std::size_t r = stats.empirical_rank;
        if (r > 0 && r <= 16) {
            Eigen::MatrixXd proj = centered * svd.matrixV().leftCols(static_cast<Eigen::Index>(r));
            std::vector<bool> seen(std::size_t(1) << r, false);
            std::size_t distinct = 0;
            for (Eigen::Index i = 0; i < proj.rows(); ++i) {
                std::size_t pattern = 0;
                for (Eigen::Index j = 0; j < proj.cols(); ++j)
                    if (proj(i, j) > 0.0) pattern |= std::size_t(1) << j;
                if (!seen[pattern]) {
                    seen[pattern] = true;
                    ++distinct;
                }
            }
            stats.orthant_coverage =
                static_cast<double>(distinct) / static_cast<double>(std::size_t(1) << r);
        }
    }
    return stats;
}

}  // namespace quadctrl
