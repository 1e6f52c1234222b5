// Copyright 2026 The prens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prens/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "prens/numerics.hpp"
#include "prens/rng.hpp"

namespace prens {

namespace {

constexpr std::size_t kBatches = 10;

void validate_config(const SimulationConfig& cfg) {
    if (!(cfg.t_final > 0)) throw InvalidInput("simulation: t_final must be positive");
    if (cfg.burn_in < 0) throw InvalidInput("simulation: burn_in must be nonnegative");
    if (!(cfg.burn_in < cfg.t_final))
        throw InvalidInput("simulation: burn_in must be below t_final");
    if (cfg.trajectories == 0) throw InvalidInput("simulation: need at least one trajectory");
}

std::size_t worker_count(std::size_t items) {
    std::size_t cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("PRENS_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) cap = static_cast<std::size_t>(parsed);
    }
    return std::max<std::size_t>(1, std::min(cap, items));
}

/// Runs body(t) for t in [0, items) on a worker pool. Each index writes only
/// its own slot, so the later index-ordered reduction is schedule-independent.
template <typename Body>
void parallel_for_index(std::size_t items, const Body& body) {
    const std::size_t workers = worker_count(items);
    if (workers <= 1) {
        for (std::size_t t = 0; t < items; ++t) body(t);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t t = w; t < items; t += workers) body(t);
        });
    }
    for (auto& th : pool) th.join();
}

struct JumpTrajectory {
    std::vector<double> batch_occupancy; // kBatches × members
    std::uint64_t jumps = 0;
    bool absorbed = false;
};

std::size_t sample_categorical(StreamRng& rng, const RealVector& weights, double total) {
    const double u = rng.uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

} // namespace

OccupationStats simulate_jump(const RateMatrix& rates, const RealVector& initial_weights,
                              const SimulationConfig& cfg) {
    validate_config(cfg);
    const std::size_t members = rates.members();
    if (initial_weights.size() != members)
        throw InvalidInput("simulate_jump: initial distribution size mismatch");
    double wsum = 0;
    for (double w : initial_weights) {
        if (w < 0 || !std::isfinite(w))
            throw InvalidInput("simulate_jump: initial weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-10)
        throw InvalidInput("simulate_jump: initial weights must sum to one");

    // Error bars come from 10 batch means. With enough trajectories the
    // batches group whole trajectories, which also captures the
    // initial-draw variance of reducible certificate chains; a single long
    // trajectory is batched by time windows instead.
    const bool batch_by_trajectory = cfg.trajectories >= kBatches;
    const double window = (cfg.t_final - cfg.burn_in) / static_cast<double>(kBatches);
    std::vector<JumpTrajectory> results(cfg.trajectories);

    parallel_for_index(cfg.trajectories, [&](std::size_t t) {
        StreamRng rng(cfg.seed, t);
        JumpTrajectory& traj = results[t];
        traj.batch_occupancy.assign(kBatches * members, 0.0);

        auto deposit = [&](std::size_t state, double from, double to) {
            const double a = std::max(from, cfg.burn_in);
            const double b = std::min(to, cfg.t_final);
            if (b <= a) return;
            if (batch_by_trajectory) {
                traj.batch_occupancy[(t % kBatches) * members + state] += b - a;
                return;
            }
            std::size_t batch = static_cast<std::size_t>((a - cfg.burn_in) / window);
            batch = std::min(batch, kBatches - 1);
            double cursor = a;
            while (cursor < b) {
                const double edge = cfg.burn_in + window * static_cast<double>(batch + 1);
                const double stop = (batch + 1 == kBatches) ? b : std::min(b, edge);
                traj.batch_occupancy[batch * members + state] += stop - cursor;
                cursor = stop;
                ++batch;
            }
        };

        std::size_t state = sample_categorical(rng, initial_weights, wsum);
        double now = 0.0;
        while (now < cfg.t_final) {
            const double total = rates.total_rate(state);
            if (total <= 0.0) {
                traj.absorbed = true;
                deposit(state, now, cfg.t_final);
                break;
            }
            const double dwell = rng.exponential() / total;
            const double next = now + dwell;
            deposit(state, now, next);
            if (next >= cfg.t_final) break;
            // choose destination proportional to its rate
            double u = rng.uniform() * total;
            std::size_t dest = members - 1;
            for (std::size_t j = 0; j < members; ++j) {
                if (j == state) continue;
                u -= rates(state, j);
                if (u < 0) {
                    dest = j;
                    break;
                }
            }
            state = dest;
            now = next;
            ++traj.jumps;
        }
    });

    OccupationStats stats;
    stats.total_time = static_cast<double>(cfg.trajectories) * (cfg.t_final - cfg.burn_in);
    stats.batch_fractions = RealMatrix(kBatches, members);
    RealVector occupancy(members, 0.0);
    RealVector batch_time(kBatches, 0.0);
    for (std::size_t t = 0; t < cfg.trajectories; ++t) {
        stats.jump_count += results[t].jumps;
        stats.absorbing_state_reached = stats.absorbing_state_reached || results[t].absorbed;
        for (std::size_t b = 0; b < kBatches; ++b)
            for (std::size_t k = 0; k < members; ++k) {
                const double occ = results[t].batch_occupancy[b * members + k];
                stats.batch_fractions(b, k) += occ;
                occupancy[k] += occ;
                batch_time[b] += occ;
            }
    }
    for (std::size_t b = 0; b < kBatches; ++b)
        for (std::size_t k = 0; k < members; ++k)
            stats.batch_fractions(b, k) =
                batch_time[b] > 0 ? stats.batch_fractions(b, k) / batch_time[b] : 0.0;

    double accounted = 0;
    for (double o : occupancy) accounted += o;
    stats.fractions.assign(members, 0.0);
    for (std::size_t k = 0; k < members; ++k)
        stats.fractions[k] = accounted > 0 ? occupancy[k] / accounted : 0.0;

    stats.std_errors.assign(members, 0.0);
    for (std::size_t k = 0; k < members; ++k) {
        double mean = 0;
        for (std::size_t b = 0; b < kBatches; ++b) mean += stats.batch_fractions(b, k);
        mean /= static_cast<double>(kBatches);
        double var = 0;
        for (std::size_t b = 0; b < kBatches; ++b) {
            const double d = stats.batch_fractions(b, k) - mean;
            var += d * d;
        }
        var /= static_cast<double>(kBatches - 1);
        stats.std_errors[k] = std::sqrt(var / static_cast<double>(kBatches));
    }
    return stats;
}

DiffusionStats simulate_diffusion(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                                  const SimulationConfig& cfg, const RealVector& initial_mean) {
    validate_config(cfg);
    const std::size_t dim = dyn.dim();
    RealVector start = initial_mean;
    if (start.empty()) start.assign(dim, 0.0);
    if (start.size() != dim)
        throw InvalidInput("simulate_diffusion: initial mean dimension mismatch");

    double knorm = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < dim; ++j) row += std::abs(dyn.drift()(i, j));
        knorm = std::max(knorm, row);
    }
    if (!(cfg.dt > 0) || cfg.dt * knorm > 0.1)
        throw InvalidInput("simulate_diffusion: need dt > 0 with dt*|K| <= 0.1");
    if (!is_hurwitz(dyn.drift()))
        throw SingularDynamics("simulate_diffusion: stationary statistics need a Hurwitz drift");

    const RealSymmetricMatrix b_v = excess_diffusion(dyn, v);
    const RealMatrix noise = sym_sqrt(b_v) * std::sqrt(cfg.dt); // throws NotPSD when invalid

    const auto steps = static_cast<std::uint64_t>(std::llround(cfg.t_final / cfg.dt));
    const auto burn_steps = static_cast<std::uint64_t>(std::llround(cfg.burn_in / cfg.dt));

    struct Partial {
        RealVector sum;
        RealVector sumsq; // upper triangle, row-major packed
        std::uint64_t samples = 0;
    };
    std::vector<Partial> parts(cfg.trajectories);
    const std::size_t tri = dim * (dim + 1) / 2;

    parallel_for_index(cfg.trajectories, [&](std::size_t t) {
        StreamRng rng(cfg.seed, t);
        Partial& part = parts[t];
        part.sum.assign(dim, 0.0);
        part.sumsq.assign(tri, 0.0);

        RealVector mu = start;
        RealVector drift(dim), kick(dim), xi(dim);
        for (std::uint64_t step = 1; step <= steps; ++step) {
            for (std::size_t i = 0; i < dim; ++i) xi[i] = rng.normal();
            for (std::size_t i = 0; i < dim; ++i) {
                double kmu = 0, nx = 0;
                for (std::size_t j = 0; j < dim; ++j) {
                    kmu += dyn.drift()(i, j) * mu[j];
                    nx += noise(i, j) * xi[j];
                }
                drift[i] = kmu;
                kick[i] = nx;
            }
            for (std::size_t i = 0; i < dim; ++i) mu[i] += -drift[i] * cfg.dt + kick[i];
            if (step > burn_steps) {
                ++part.samples;
                std::size_t idx = 0;
                for (std::size_t i = 0; i < dim; ++i) {
                    part.sum[i] += mu[i];
                    for (std::size_t j = i; j < dim; ++j) part.sumsq[idx++] += mu[i] * mu[j];
                }
            }
        }
    });

    RealVector sum(dim, 0.0), sumsq(tri, 0.0);
    std::uint64_t samples = 0;
    for (const auto& part : parts) {
        samples += part.samples;
        for (std::size_t i = 0; i < dim; ++i) sum[i] += part.sum[i];
        for (std::size_t i = 0; i < tri; ++i) sumsq[i] += part.sumsq[i];
    }
    if (samples == 0) throw InvalidInput("simulate_diffusion: no samples after burn-in");

    RealVector mean(dim);
    for (std::size_t i = 0; i < dim; ++i) mean[i] = sum[i] / static_cast<double>(samples);
    RealMatrix cov(dim, dim);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const double second = sumsq[idx++] / static_cast<double>(samples);
            const double c = second - mean[i] * mean[j];
            cov(i, j) = c;
            cov(j, i) = c;
        }
    return DiffusionStats{std::move(mean), RealSymmetricMatrix(std::move(cov)), samples};
}

CertificateValidation validate_certificate(const Lindbladian& gen,
                                           const DiscreteEnsemble& ensemble,
                                           const PRVerdict& verdict,
                                           const SimulationConfig& cfg) {
    if (gen.dim() != ensemble.dim())
        throw InvalidInput("validate_certificate: dimension mismatch");
    if (verdict.decision != PRDecision::PR || !verdict.certificate.has_value())
        throw InvalidInput("validate_certificate: verdict must be PR with a certificate");
    const RateMatrix& rates = *verdict.certificate;
    if (rates.members() != ensemble.size())
        throw InvalidInput("validate_certificate: certificate size mismatch");

    CertificateValidation out;
    out.stats = simulate_jump(rates, ensemble.weights(), cfg);

    // Members expected to relax fewer than five times over the run carry no
    // usable statistics; rate scale = the chain's mixing rate.
    const double rate_scale = mixing_rate(rates);
    out.exemption_threshold = rate_scale > 0
                                  ? 5.0 / (cfg.t_final * rate_scale)
                                  : std::numeric_limits<double>::infinity();
    if (rate_scale <= 0)
        out.notes.push_back("certificate chain has no relaxing mode; occupations cannot mix "
                            "and every member is exempt");

    out.pass = true;
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        MemberCheck check;
        check.index = k;
        check.weight = ensemble.weights()[k];
        check.fraction = out.stats.fractions[k];
        check.std_error = out.stats.std_errors[k];
        check.deviation = std::abs(check.fraction - check.weight);
        check.exempt = check.weight < out.exemption_threshold;
        check.pass = check.exempt || check.deviation <= 3.0 * check.std_error;
        out.pass = out.pass && check.pass;
        out.members.push_back(check);
    }
    return out;
}

} // namespace prens
