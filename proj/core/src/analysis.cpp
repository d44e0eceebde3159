#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <gifnet/analysis.hpp>
#include <gifnet/csv.hpp>
#include <gifnet/dynamics.hpp>
#include <gifnet/error.hpp>
#include <gifnet/parallel.hpp>
#include <gifnet/trace.hpp>

namespace gifnet {

bool variation_report::holds() const {
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (!(measured[i] <= bound[i] + budget[i])) return false;
    }
    return product_bound_holds;
}

double variation_report::worst_ratio() const {
    double r = 0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        if (bound[i] > 0) r = std::max(r, measured[i]/bound[i]);
        else if (measured[i] > 0) r = std::numeric_limits<double>::infinity();
    }
    return r;
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr int n_dyn = 4;   // conductance, v_syn, v_ext, sigma_sq

// Running max/min per agreement block for one worker.
struct sweep_acc {
    std::size_t n = 0;
    int m = 0;
    std::uint64_t blocks = 0;
    std::vector<double> dyn;    // [((block*4 + q)*N + k)*2 + {max, min}]
    std::vector<double> ker;    // [block*2 + {max, min}]
    std::vector<double> ker_a;  // [block*2N + {argmax factors, argmin factors}]
    std::vector<double> mag;    // [q*N + k] largest |value|

    sweep_acc(std::size_t n_, int m_): n(n_), m(m_) {
        blocks = std::uint64_t(1) << (n*std::size_t(m + 1));
        dyn.resize(blocks*n_dyn*n*2);
        for (std::size_t i = 0; i < dyn.size(); i += 2) {
            dyn[i] = -inf;
            dyn[i + 1] = inf;
        }
        ker.resize(blocks*2);
        for (std::size_t i = 0; i < ker.size(); i += 2) {
            ker[i] = -inf;
            ker[i + 1] = inf;
        }
        ker_a.assign(blocks*2*n, 0.0);
        mag.assign(n_dyn*n, 0.0);
    }

    void merge(const sweep_acc& o) {
        for (std::size_t i = 0; i < dyn.size(); i += 2) {
            dyn[i] = std::max(dyn[i], o.dyn[i]);
            dyn[i + 1] = std::min(dyn[i + 1], o.dyn[i + 1]);
        }
        for (std::uint64_t b = 0; b < blocks; ++b) {
            if (o.ker[2*b] > ker[2*b]) {
                ker[2*b] = o.ker[2*b];
                std::copy_n(&o.ker_a[b*2*n], n, &ker_a[b*2*n]);
            }
            if (o.ker[2*b + 1] < ker[2*b + 1]) {
                ker[2*b + 1] = o.ker[2*b + 1];
                std::copy_n(&o.ker_a[b*2*n + n], n, &ker_a[b*2*n + n]);
            }
        }
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::max(mag[i], o.mag[i]);
    }
};

class sweeper {
public:
    sweeper(const validated_params& vp, int m, const integral_config& cfg, sweep_acc& acc):
        vp_(vp), n_(vp.size()), m_(m), acc_(acc), a_(vp.size())
    {
        for (int s = 0; s <= m; ++s) stack_.emplace_back(vp, cfg);
        pats_.resize(std::size_t(1) << n_);
        for (std::size_t c = 0; c < pats_.size(); ++c) pats_[c] = decode_pattern(c, n_);
    }

    // state at time -m-1
    void run(const network_trace& start) {
        stack_[0].load_state(start);
        descend(0, 0);
    }

private:
    const validated_params& vp_;
    std::size_t n_;
    int m_;
    sweep_acc& acc_;
    std::vector<network_trace> stack_;
    std::vector<pattern> pats_;
    std::vector<double> a_;

    void update(std::uint64_t block, int q, std::size_t k, double v) {
        double* slot = &acc_.dyn[((block*n_dyn + std::uint64_t(q))*n_ + k)*2];
        slot[0] = std::max(slot[0], v);
        slot[1] = std::min(slot[1], v);
        double& mg = acc_.mag[std::size_t(q)*n_ + k];
        mg = std::max(mg, std::abs(v));
    }

    void leaf(network_trace& tr, std::uint64_t code) {
        const std::size_t shift = n_*std::size_t(m_);
        // kernel: p(0, .) from the state at -1
        auto law = law_from_trace(vp_, tr);
        for (std::size_t c = 0; c < pats_.size(); ++c) {
            const auto& pat = pats_[c];
            double p = 1;
            for (std::size_t k = 0; k < n_; ++k) {
                a_[k] = pat[k]? law.neurons[k].p_fire: law.neurons[k].p_silent;
                p *= a_[k];
            }
            const std::uint64_t b = code | (std::uint64_t(c) << shift);
            if (p > acc_.ker[2*b]) {
                acc_.ker[2*b] = p;
                std::copy(a_.begin(), a_.end(), &acc_.ker_a[b*2*n_]);
            }
            if (p < acc_.ker[2*b + 1]) {
                acc_.ker[2*b + 1] = p;
                std::copy(a_.begin(), a_.end(), &acc_.ker_a[b*2*n_ + n_]);
            }
        }
        // dynamics at 0: the unit (-1, 0] does not depend on omega(0)
        tr.integrate();
        for (std::size_t c = 0; c < pats_.size(); ++c) {
            const auto& pat = pats_[c];
            const std::uint64_t b = code | (std::uint64_t(c) << shift);
            for (std::size_t k = 0; k < n_; ++k) {
                const bool f = pat[k];
                update(b, 0, k, tr.peek_conductance(k));
                update(b, 1, k, tr.peek_v_syn(k, f));
                update(b, 2, k, tr.peek_v_ext(k, f));
                update(b, 3, k, tr.peek_sigma_sq(k, f));
            }
        }
    }

    void descend(int s, std::uint64_t code) {
        auto& tr = stack_[std::size_t(s)];
        if (s == m_) {
            leaf(tr, code);
            return;
        }
        tr.integrate();
        auto& next = stack_[std::size_t(s) + 1];
        for (std::size_t c = 0; c < pats_.size(); ++c) {
            next.load_state(tr);
            next.apply(pats_[c]);
            descend(s + 1, code | (std::uint64_t(c) << (n_*std::size_t(s))));
        }
    }
};

} // namespace

std::vector<variation_report> measure_variation(const validated_params& vp, int m, int tail_horizon,
                                                const enumeration_options& opt)
{
    if (m < 0 || tail_horizon < 0) throw error(errc::invalid_argument, "m and tail_horizon must be >= 0");
    const std::size_t n = vp.size();
    const std::size_t tail_bits = n*std::size_t(tail_horizon);
    const std::size_t block_bits = n*std::size_t(m + 1);
    if (tail_bits + n*std::size_t(m) > 50 || block_bits > 30) {
        throw error(errc::enumeration_too_large, "enumeration over 2^" + std::to_string(tail_bits + block_bits)
            + " configurations");
    }
    // enumerated tails (the all-zero one doubles as the Omega_0 tail) + Omega_1
    const std::uint64_t starts = (std::uint64_t(1) << tail_bits) + 1;
    const std::uint64_t leaves = starts*(std::uint64_t(1) << (n*std::size_t(m)));
    if (leaves > opt.max_leaves) {
        throw error(errc::enumeration_too_large, std::to_string(leaves) + " leaf states exceed the guard of "
            + std::to_string(opt.max_leaves));
    }

    // keep the per-worker tables within a few hundred MB
    const double table_bytes = double(std::uint64_t(1) << block_bits)*double(n_dyn*n*2 + 2 + 2*n)*8;
    std::size_t workers = worker_count(opt.workers);
    workers = std::min<std::size_t>(workers, std::max<std::size_t>(1, std::size_t(4e8/table_bytes)));
    workers = std::min<std::size_t>(workers, std::size_t(starts));

    std::vector<sweep_acc> accs;
    for (std::size_t w = 0; w < workers; ++w) accs.emplace_back(n, m);

    parallel_for(workers, workers, [&](std::size_t w) {
        sweeper sw(vp, m, opt.integrals, accs[w]);
        network_trace start(vp, opt.integrals);
        pattern pat(n);
        for (std::uint64_t i = w; i < starts; i += workers) {
            if (i + 1 == starts) start.reset_all_ones(-m - 1);
            else {
                start.reset_silent(-m - tail_horizon - 1);
                for (int s = 0; s < tail_horizon; ++s) {
                    for (std::size_t k = 0; k < n; ++k) pat[k] = (i >> (std::size_t(s)*n + k)) & 1;
                    start.advance(pat);
                }
            }
            sw.run(start);
        }
    });
    for (std::size_t w = 1; w < workers; ++w) accs[0].merge(accs[w]);
    const auto& acc = accs[0];

    auto consts = make_variation_constants(vp);
    const std::uint64_t pair_count = acc.blocks*(tail_horizon > 0? (std::uint64_t(1) << (2*tail_bits)) + 2: 2);
    std::vector<variation_report> out;
    const quantity dyn_q[n_dyn] = {quantity::conductance, quantity::v_syn, quantity::v_ext, quantity::sigma_sq};
    for (int q = 0; q < n_dyn; ++q) {
        variation_report r;
        r.q = dyn_q[q];
        r.m = m;
        r.tail_horizon = tail_horizon;
        r.pairs = pair_count;
        for (std::size_t k = 0; k < n; ++k) {
            double v = 0;
            for (std::uint64_t b = 0; b < acc.blocks; ++b) {
                const double* slot = &acc.dyn[((b*n_dyn + std::uint64_t(q))*n + k)*2];
                v = std::max(v, slot[0] - slot[1]);
            }
            r.measured.push_back(v);
            r.bound.push_back(variation_bound(consts, r.q, m, k));
            r.budget.push_back(1e-8*(1 + acc.mag[std::size_t(q)*n + k]));
        }
        out.push_back(std::move(r));
    }

    variation_report kr;
    kr.q = quantity::kernel;
    kr.m = m;
    kr.tail_horizon = tail_horizon;
    kr.pairs = pair_count;
    double kv = 0;
    for (std::uint64_t b = 0; b < acc.blocks; ++b) {
        const double diff = acc.ker[2*b] - acc.ker[2*b + 1];
        kv = std::max(kv, diff);
        // |prod a - prod a'| <= sum |a_k - a'_k| on the pair realising the spread
        double l1 = 0;
        for (std::size_t k = 0; k < n; ++k) l1 += std::abs(acc.ker_a[b*2*n + k] - acc.ker_a[b*2*n + n + k]);
        if (diff > l1 + 1e-15) kr.product_bound_holds = false;
    }
    if (kv > 2) kr.product_bound_holds = false;
    kr.measured.push_back(kv);
    kr.bound.push_back(variation_bound(consts, quantity::kernel, m));
    kr.budget.push_back(1e-8);
    out.push_back(std::move(kr));
    return out;
}

variation_report measure_variation(const validated_params& vp, quantity q, int m, int tail_horizon,
                                   const enumeration_options& opt)
{
    auto all = measure_variation(vp, m, tail_horizon, opt);
    for (auto& r: all) {
        if (r.q == q) return r;
    }
    throw error(errc::invalid_argument, "unknown quantity");
}

markov_error_result markov_error(const validated_params& vp, int depth, std::size_t probe_count, int tail_horizon,
                                 std::uint64_t seed, const integral_config& cfg)
{
    if (depth < 0 || tail_horizon < 0) throw error(errc::invalid_argument, "depth and tail_horizon must be >= 0");
    const std::size_t n = vp.size();
    if (n > 20) throw error(errc::enumeration_too_large, "2^N patterns with N > 20");
    markov_error_result res;
    res.depth = depth;
    const tick ref = std::max<tick>(history_horizon(vp, 1e-10), depth + tail_horizon + 1);
    res.reference_depth = ref;
    probe_count = std::max<std::size_t>(probe_count, 4);

    network_trace deep(vp, cfg);
    network_trace shallow(vp, cfg);
    const std::uint64_t np = std::uint64_t(1) << n;
    std::vector<std::uint8_t> rows(std::size_t(ref)*n);
    double kl_sum = 0;

    for (std::size_t probe = 0; probe < probe_count; ++probe) {
        // Each probe is a fixed function of absolute time, so every depth
        // truncates the same histories. Row r holds time r - ref.
        const double density = step_stream(seed, probe, ~std::uint64_t(0)).uniform(0);
        for (tick r = 0; r < ref; ++r) {
            const tick t = r - ref;
            step_stream rs(seed, probe, std::uint64_t(-t));
            for (std::size_t k = 0; k < n; ++k) {
                std::uint8_t v;
                switch (probe) {
                case 0: v = 0; break;
                case 1: v = 1; break;
                case 2: v = t % 2 == 0; break;
                case 3: v = k == 0; break;
                default: v = rs.uniform(k) < density;
                }
                rows[std::size_t(r)*n + k] = v;
            }
        }
        deep.reset_silent(-ref - 1);
        for (tick r = 0; r < ref; ++r) deep.advance(std::span(rows).subspan(std::size_t(r)*n, n));
        shallow.reset_silent(-depth - 1);
        for (tick r = ref - depth; r < ref; ++r) shallow.advance(std::span(rows).subspan(std::size_t(r)*n, n));
        auto ld = law_from_trace(vp, deep);
        auto ls = law_from_trace(vp, shallow);

        double tv = 0, kl = 0, zs = 0;
        std::vector<double> qs(np);
        for (std::uint64_t c = 0; c < np; ++c) {
            auto pat = decode_pattern(c, n);
            qs[c] = std::exp(potential(ls, pat).total);
            zs += qs[c];
        }
        for (std::uint64_t c = 0; c < np; ++c) {
            auto pat = decode_pattern(c, n);
            const double p = transition_prob(ld, pat);
            const double q = qs[c]/zs;
            tv += std::abs(p - q);
            if (p > 0) kl += p*(potential(ld, pat).total - std::log(q));
        }
        res.max_tv = std::max(res.max_tv, 0.5*tv);
        kl_sum += std::max(kl, 0.0);
    }
    res.mean_kl = kl_sum/double(probe_count);
    return res;
}

double monomial_expansion::coefficient(const std::vector<std::pair<std::size_t, int>>& factors) const {
    std::size_t mask = 0;
    for (auto [k, t]: factors) mask |= std::size_t(1) << bit(k, t);
    return lambda.at(mask);
}

monomial_expansion expand_monomials(const validated_params& vp, int depth, const integral_config& cfg) {
    const std::size_t n = vp.size();
    if (depth < 0) throw error(errc::invalid_argument, "depth must be >= 0");
    const std::size_t bits = n*std::size_t(depth + 1);
    if (bits > 20) throw error(errc::enumeration_too_large, "monomial expansion over 2^" + std::to_string(bits) + " blocks");

    monomial_expansion e;
    e.depth = depth;
    e.n = n;
    const std::size_t total = std::size_t(1) << bits;
    std::vector<double> phi(total);
    const std::size_t ctx_bits = n*std::size_t(depth);
    const std::size_t np = std::size_t(1) << n;

    std::vector<network_trace> stack;
    for (int s = 0; s <= depth; ++s) stack.emplace_back(vp, cfg);
    std::vector<pattern> pats(np);
    for (std::size_t c = 0; c < np; ++c) pats[c] = decode_pattern(c, n);

    auto leaf = [&](const network_trace& tr, std::size_t code) {
        auto law = law_from_trace(vp, tr);
        std::vector<double> w(np);
        double z = 0;
        for (std::size_t c = 0; c < np; ++c) {
            w[c] = potential(law, pats[c]).total;
            z += std::exp(w[c]);
        }
        const double lz = std::log(z);
        for (std::size_t c = 0; c < np; ++c) phi[code | (c << ctx_bits)] = w[c] - lz;
    };
    auto descend = [&](auto&& self, int s, std::size_t code) -> void {
        auto& tr = stack[std::size_t(s)];
        if (s == depth) {
            leaf(tr, code);
            return;
        }
        tr.integrate();
        for (std::size_t c = 0; c < np; ++c) {
            stack[std::size_t(s) + 1].load_state(tr);
            stack[std::size_t(s) + 1].apply(pats[c]);
            self(self, s + 1, code | (c << (n*std::size_t(s))));
        }
    };
    stack[0].reset_silent(-depth - 1);
    descend(descend, 0, 0);

    // Moebius inversion over the subset lattice
    e.lambda = phi;
    for (std::size_t i = 0; i < bits; ++i) {
        const std::size_t b = std::size_t(1) << i;
        for (std::size_t mask = 0; mask < total; ++mask) {
            if (mask & b) e.lambda[mask] -= e.lambda[mask ^ b];
        }
    }
    // reconstruction: zeta transform back
    std::vector<double> back = e.lambda;
    for (std::size_t i = 0; i < bits; ++i) {
        const std::size_t b = std::size_t(1) << i;
        for (std::size_t mask = 0; mask < total; ++mask) {
            if (mask & b) back[mask] += back[mask ^ b];
        }
    }
    for (std::size_t mask = 0; mask < total; ++mask) e.residual = std::max(e.residual, std::abs(back[mask] - phi[mask]));
    return e;
}

silent_interval_result silent_interval_check(const validated_params& vp, std::size_t k, int t0, std::size_t trials,
                                             std::uint64_t seed, tick burn_in, std::size_t workers)
{
    if (t0 < 0) throw error(errc::invalid_argument, "T0 must be >= 0");
    if (k >= vp.size()) throw error(errc::invalid_argument, "neuron index out of range", k);
    silent_interval_result res;
    auto b = derive_bounds(vp);
    double cap_lo = 1, cap_hi_prod = 1;
    for (std::size_t i = 0; i < vp.size(); ++i) {
        cap_lo *= b.cap_lo[i];
        cap_hi_prod *= b.cap_hi[i];
    }
    res.lower = std::pow(cap_lo, t0);
    res.upper = std::pow(b.cap_hi[k], t0);
    res.upper_product = std::pow(cap_hi_prod, t0);
    if (t0 == 0) {
        res.empirical = 1;
        res.within = true;
        return res;
    }
    simulation_options opt;
    opt.steps = burn_in + t0;
    opt.trials = trials;
    opt.seed = seed;
    opt.workers = workers;
    auto rs = simulate(vp, opt);
    std::size_t silent = 0;
    for (auto& r: rs) {
        bool quiet = true;
        for (tick t = burn_in; t < burn_in + t0 && quiet; ++t) quiet = !r.bit(k, t);
        silent += quiet;
    }
    const double p = double(silent)/double(trials);
    res.empirical = p;
    res.stderr_ = std::sqrt(std::max(p*(1 - p), 1.0/double(trials))/double(trials));
    res.within = res.lower - 3*res.stderr_ <= p && p <= res.upper + 3*res.stderr_;
    return res;
}

spike_stats empirical_stats(const std::vector<raster>& rasters, int max_lag, int width) {
    if (rasters.empty()) throw error(errc::invalid_argument, "no rasters");
    if (max_lag < 0 || width < 1) throw error(errc::invalid_argument, "max_lag >= 0 and width >= 1 required");
    const std::size_t n = rasters[0].size();
    const tick n0 = rasters[0].first(), n1 = rasters[0].last();
    for (auto& r: rasters) {
        if (r.size() != n || r.first() != n0 || r.last() != n1) {
            throw error(errc::window_mismatch, "rasters differ in N or window");
        }
    }
    if (n*std::size_t(width) > 20) throw error(errc::enumeration_too_large, "block width x N exceeds 20 bits");

    spike_stats s;
    s.n = n;
    s.max_lag = max_lag;
    s.width = width;
    const std::size_t M = rasters.size();
    const std::size_t L = std::size_t(max_lag) + 1;

    // per-raster estimates, pooled as a mean with the spread across rasters
    std::vector<std::vector<double>> rate_r(M, std::vector<double>(n));
    std::vector<std::vector<double>> prod_r(M, std::vector<double>(n*n*L, 0.0));
    std::vector<std::vector<std::vector<double>>> blk_r(M);
    for (std::size_t i = 0; i < M; ++i) {
        const auto& r = rasters[i];
        const double len = double(r.length());
        for (std::size_t k = 0; k < n; ++k) {
            double c = 0;
            for (tick t = n0; t <= n1; ++t) c += r.bit(k, t);
            rate_r[i][k] = c/len;
        }
        for (std::size_t lag = 0; lag < L; ++lag) {
            const tick from = n0 + tick(lag);
            if (from > n1) continue;
            const double cnt = double(n1 - from + 1);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t j = 0; j < n; ++j) {
                    double c = 0;
                    for (tick t = from; t <= n1; ++t) c += r.bit(k, t) && r.bit(j, t - tick(lag));
                    prod_r[i][(k*n + j)*L + lag] = c/cnt;
                }
            }
        }
        blk_r[i].resize(std::size_t(width));
        for (int w = 1; w <= width; ++w) {
            auto& f = blk_r[i][std::size_t(w - 1)];
            f.assign(std::size_t(1) << (n*std::size_t(w)), 0.0);
            const tick from = n0 + w - 1;
            if (from > n1) continue;
            for (tick t = from; t <= n1; ++t) {
                std::size_t code = 0;
                for (int sft = 0; sft < w; ++sft) {
                    for (std::size_t k = 0; k < n; ++k) {
                        if (r.bit(k, t - w + 1 + sft)) code |= std::size_t(1) << (std::size_t(sft)*n + k);
                    }
                }
                f[code] += 1;
            }
            for (auto& v: f) v /= double(n1 - from + 1);
        }
    }

    auto mean_se = [M](auto get, double& mean, double& se) {
        mean = 0;
        for (std::size_t i = 0; i < M; ++i) mean += get(i);
        mean /= double(M);
        if (M < 2) {
            se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        double v = 0;
        for (std::size_t i = 0; i < M; ++i) v += (get(i) - mean)*(get(i) - mean);
        se = std::sqrt(v/double(M - 1)/double(M));
    };

    s.rates.resize(n);
    s.rate_se.resize(n);
    for (std::size_t k = 0; k < n; ++k) mean_se([&](std::size_t i) { return rate_r[i][k]; }, s.rates[k], s.rate_se[k]);
    s.pairwise.resize(n*n*L);
    s.pairwise_se.resize(n*n*L);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t lag = 0; lag < L; ++lag) {
                const std::size_t idx = (k*n + j)*L + lag;
                mean_se([&](std::size_t i) { return prod_r[i][idx] - rate_r[i][k]*rate_r[i][j]; },
                        s.pairwise[idx], s.pairwise_se[idx]);
            }
        }
    }
    s.blocks.resize(std::size_t(width));
    s.block_se.resize(std::size_t(width));
    for (int w = 1; w <= width; ++w) {
        const std::size_t nb = std::size_t(1) << (n*std::size_t(w));
        auto& f = s.blocks[std::size_t(w - 1)];
        auto& se = s.block_se[std::size_t(w - 1)];
        f.resize(nb);
        se.resize(nb);
        for (std::size_t c = 0; c < nb; ++c) {
            mean_se([&](std::size_t i) { return blk_r[i][std::size_t(w - 1)][c]; }, f[c], se[c]);
        }
    }
    return s;
}

raster bin_raster(const raster& r, int width) {
    if (width < 1) throw error(errc::invalid_argument, "bin width must be >= 1");
    if (r.past().kind == past_kind::repeat) throw error(errc::invalid_argument, "binning a repeat past is not supported");
    const tick bins = tick(r.length())/width;
    if (bins < 1) throw error(errc::invalid_argument, "bin width exceeds the window");
    raster out(r.size(), r.first(), r.first() + bins - 1, r.past());
    for (tick b = 0; b < bins; ++b) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            bool any = false;
            for (tick t = r.first() + b*width; t < r.first() + (b + 1)*width && !any; ++t) any = r.bit(k, t);
            out.set(k, r.first() + b, any);
        }
    }
    return out;
}

void write_variation_csv(std::ostream& os, const std::vector<variation_report>& reports) {
    csv_writer w(os);
    w.row("quantity", "neuron", "m", "measured", "bound");
    for (auto& r: reports) {
        for (std::size_t i = 0; i < r.measured.size(); ++i) {
            if (r.q == quantity::kernel) w.row(to_string(r.q), "all", r.m, r.measured[i], r.bound[i]);
            else w.row(to_string(r.q), i, r.m, r.measured[i], r.bound[i]);
        }
    }
}

void write_markov_csv(std::ostream& os, const std::vector<markov_error_result>& rows) {
    csv_writer w(os);
    w.row("D", "max_tv", "mean_kl");
    for (auto& r: rows) w.row(r.depth, r.max_tv, r.mean_kl);
}

void write_monomials_csv(std::ostream& os, const monomial_expansion& e) {
    csv_writer w(os);
    w.row("indices", "lambda");
    const std::size_t bits = e.n*std::size_t(e.depth + 1);
    for (std::size_t mask = 0; mask < e.lambda.size(); ++mask) {
        std::string idx;
        for (std::size_t b = 0; b < bits; ++b) {
            if (!(mask >> b & 1)) continue;
            if (!idx.empty()) idx += ' ';
            idx += std::to_string(b%e.n) + "@" + std::to_string(int(b/e.n) - e.depth);
        }
        w.row(idx.empty()? std::string("{}"): idx, e.lambda[mask]);
    }
}

void write_stats_csv(std::ostream& os, const spike_stats& s) {
    csv_writer w(os);
    w.row("estimator", "indices", "value", "stderr");
    for (std::size_t k = 0; k < s.n; ++k) w.row("rate", std::to_string(k), s.rates[k], s.rate_se[k]);
    const std::size_t L = std::size_t(s.max_lag) + 1;
    for (std::size_t k = 0; k < s.n; ++k) {
        for (std::size_t j = 0; j < s.n; ++j) {
            for (std::size_t lag = 0; lag < L; ++lag) {
                const std::size_t idx = (k*s.n + j)*L + lag;
                w.row("pairwise", std::to_string(k) + " " + std::to_string(j) + " " + std::to_string(lag),
                      s.pairwise[idx], s.pairwise_se[idx]);
            }
        }
    }
    for (std::size_t wi = 0; wi < s.blocks.size(); ++wi) {
        const std::size_t width = wi + 1;
        for (std::size_t c = 0; c < s.blocks[wi].size(); ++c) {
            // block written oldest row first, one N-char row per step
            std::string code;
            for (std::size_t t = 0; t < width; ++t) {
                if (t) code += '|';
                for (std::size_t k = 0; k < s.n; ++k) code += (c >> (t*s.n + k) & 1)? '1': '0';
            }
            w.row("block", code, s.blocks[wi][c], s.block_se[wi][c]);
        }
    }
}

void write_law_csv(std::ostream& os, const std::vector<conditional_law>& laws) {
    csv_writer w(os);
    w.row("n", "k", "v_det", "sigma", "x", "p_fire");
    for (auto& l: laws) {
        for (std::size_t k = 0; k < l.neurons.size(); ++k) {
            const auto& nl = l.neurons[k];
            w.row(l.time, k, nl.v_det, nl.sigma, nl.x, nl.p_fire);
        }
    }
}

} // namespace gifnet
