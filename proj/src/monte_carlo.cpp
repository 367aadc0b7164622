// SPDX-License-Identifier: Apache-2.0
#include "mdnc/monte_carlo.hpp"

#include "mdnc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mdnc {

namespace {

struct ChunkTally {
    std::uint64_t frame_outages = 0;
    std::vector<std::uint64_t> user_outages;
    double energy_saved = 0.0;  // idle-relay variant only
};

struct Threshold {
    std::vector<int> relays;
    Matrix h_thr, h_mean;  // M x k
    Vector g_thr, g_mean;  // k
};

// Link succeeds iff B log2(1 + |h|^2 p / (N0 B)) >= alpha0, i.e. |h|^2 >= thr.
Threshold thresholds(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p) {
    Threshold t;
    t.relays = u.theta();
    const int k = static_cast<int>(t.relays.size());
    const double snr_req = std::expm1(s.alpha0 / s.B * std::log(2.0));
    t.h_thr.resize(s.M, k);
    t.h_mean.resize(s.M, k);
    t.g_thr.resize(k);
    t.g_mean.resize(k);
    const double inf = std::numeric_limits<double>::infinity();
    for (int a = 0; a < k; ++a) {
        const int j = t.relays[static_cast<std::size_t>(a)];
        for (int i = 0; i < s.M; ++i) {
            t.h_thr(i, a) = p.p(i) > 0.0 ? snr_req * s.N0_h(i, j) * s.B / p.p(i) : inf;
            t.h_mean(i, a) = std::pow(s.d_h(i, j), -s.n_h(i, j)) * s.sigma_h(i, j);
        }
        t.g_thr(a) = p.p_relay(j) > 0.0 ? snr_req * s.N0_g(j) * s.B / p.p_relay(j) : inf;
        t.g_mean(a) = std::pow(s.d_g(j), -s.n_g(j)) * s.sigma_g(j);
    }
    return t;
}

ChunkTally run_chunk(const ScenarioConfig& s, const Threshold& t, const PowerAllocation& p, const McConfig& mc,
                     Scheme scheme, std::uint64_t chunk, std::uint64_t n) {
    PhiloxStream rng(mc.seed, (std::uint64_t{mc.stream} << 32) | chunk);
    const int M = s.M;
    const int k = static_cast<int>(t.relays.size());
    ChunkTally out;
    out.user_outages.assign(static_cast<std::size_t>(M), 0);
    std::vector<std::uint8_t> h_ok(static_cast<std::size_t>(M * k));
    std::vector<std::uint8_t> g_ok(static_cast<std::size_t>(k));
    const double slot = s.T * s.delta_P;
    for (std::uint64_t n_i = 0; n_i < n; ++n_i) {
        for (int a = 0; a < k; ++a) {
            for (int i = 0; i < M; ++i)
                h_ok[static_cast<std::size_t>(a * M + i)] = rng.exponential(t.h_mean(i, a)) >= t.h_thr(i, a);
            g_ok[static_cast<std::size_t>(a)] = rng.exponential(t.g_mean(a)) >= t.g_thr(a);
        }
        if (scheme == Scheme::Mdnc) {
            // a relay forwards only if it decoded every user; BS needs M codewords
            int delivered = 0;
            for (int a = 0; a < k; ++a) {
                bool all = true;
                for (int i = 0; i < M; ++i) all = all && h_ok[static_cast<std::size_t>(a * M + i)];
                if (all && g_ok[static_cast<std::size_t>(a)]) ++delivered;
                if (!all && mc.idle_failed_relays)
                    out.energy_saved += slot * p.p_relay(t.relays[static_cast<std::size_t>(a)]);
            }
            if (delivered < M) {
                ++out.frame_outages;
                for (auto& v : out.user_outages) ++v;
            }
        } else {
            // user i gets through if any relay decoded it and reached the BS
            bool any_fail = false;
            for (int i = 0; i < M; ++i) {
                bool ok = false;
                for (int a = 0; a < k; ++a) {
                    const bool dec = h_ok[static_cast<std::size_t>(a * M + i)];
                    ok = ok || (dec && g_ok[static_cast<std::size_t>(a)]);
                    if (!dec && mc.idle_failed_relays)
                        out.energy_saved += slot * p.p_relay(t.relays[static_cast<std::size_t>(a)]);
                }
                if (!ok) {
                    ++out.user_outages[static_cast<std::size_t>(i)];
                    any_fail = true;
                }
            }
            if (any_fail) ++out.frame_outages;
        }
    }
    return out;
}

double binomial_se(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

McResult monte_carlo_outage(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p,
                            const McConfig& mc, Scheme scheme) {
    if (mc.samples < 1) throw std::invalid_argument("monte_carlo: samples must be >= 1");
    if (u.size() != s.N || u.count() == 0) throw std::invalid_argument("monte_carlo: bad schedule");
    const Threshold t = thresholds(s, u, p);
    const std::uint64_t chunks = (mc.samples + kMcChunk - 1) / kMcChunk;
    std::vector<ChunkTally> tally(static_cast<std::size_t>(chunks));

    int threads = mc.threads > 0 ? mc.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1, chunks));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t ch = next++; ch < chunks; ch = next++) {
            const std::uint64_t n = std::min(kMcChunk, mc.samples - ch * kMcChunk);
            tally[static_cast<std::size_t>(ch)] = run_chunk(s, t, p, mc, scheme, ch, n);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // merged in chunk order so the floating-point sum is reproducible
    McResult r;
    r.scheme = scheme;
    r.samples = mc.samples;
    std::vector<std::uint64_t> users(static_cast<std::size_t>(s.M), 0);
    std::uint64_t frames = 0;
    double saved = 0.0;
    for (const auto& c : tally) {
        frames += c.frame_outages;
        for (int i = 0; i < s.M; ++i) users[static_cast<std::size_t>(i)] += c.user_outages[static_cast<std::size_t>(i)];
        saved += c.energy_saved;
    }
    const double n = static_cast<double>(mc.samples);
    r.user_outage.resize(s.M);
    r.user_std_error.resize(s.M);
    for (int i = 0; i < s.M; ++i) {
        r.user_outage(i) = static_cast<double>(users[static_cast<std::size_t>(i)]) / n;
        r.user_std_error(i) = binomial_se(r.user_outage(i), mc.samples);
    }
    if (scheme == Scheme::Mdnc) {
        r.outages = frames;
        r.outage = static_cast<double>(frames) / n;
        r.std_error = binomial_se(r.outage, mc.samples);
    } else {
        r.outages = std::accumulate(users.begin(), users.end(), std::uint64_t{0});
        r.outage = r.user_outage.mean();
        // users are not independent; this is the per-user error scaled to the mean
        r.std_error = r.user_std_error.mean() / std::sqrt(static_cast<double>(s.M));
    }
    const EnergyBreakdown e = scheme_energy(s, scheme, u, p);
    r.mean_energy = e.E_tot - saved / n;
    r.ee = s.M * s.alpha0 * s.T * (1.0 - r.outage) / r.mean_energy;
    return r;
}

McResult monte_carlo_ee(const ScenarioConfig& s, const RelaySchedule& u, const PowerAllocation& p,
                        const McConfig& mc, Scheme scheme) {
    return monte_carlo_outage(s, u, p, mc, scheme);
}

Vector exponential_samples(std::uint64_t seed, std::uint32_t stream, double mean, std::uint64_t n) {
    PhiloxStream rng(seed, std::uint64_t{stream} << 32);
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.exponential(mean);
    return v;
}

}  // namespace mdnc
