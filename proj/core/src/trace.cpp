#include <algorithm>
#include <cmath>

#include <gifnet/dynamics.hpp>
#include <gifnet/error.hpp>
#include <gifnet/trace.hpp>

namespace gifnet {

namespace detail {

struct synapse {
    std::size_t j = 0;
    std::size_t tau_idx = 0;
    double g = 0, w = 0;
};

struct tau_table {
    double tau = 1;
    std::vector<double> shift;   // (d+1)x(d+1)
    std::vector<double> a, b;    // [node][i] for alpha and its integral from 0
    std::vector<double> fixed;   // moments of the all-ones history
};

struct trace_tables {
    validated_params vp;
    std::size_t n = 0;
    int d = 0;
    integral_config cfg;
    gl_rule rule;
    std::size_t nq = 0;              // nodes per coarse rule
    std::vector<double> nodes;       // 3*nq + 1 positions in (0, 1]
    std::vector<double> binom;       // (d+1)x(d+1)
    std::vector<synapse> syn;
    std::vector<std::size_t> syn_begin;
    std::vector<tau_table> taus;
    std::vector<double> cap, gl, tl;
    std::vector<char> has_current;
    std::vector<std::vector<double>> step_edges;

    explicit trace_tables(const validated_params& p): vp(p) {}

    double c(int i, int q) const { return binom[std::size_t(i)*(d + 1) + q]; }

    // a_i(x) = e^{-x/tau} C(d,i) (x/tau)^{d-i};  b_i(x) = C(d,i) int_0^x (u/tau)^{d-i} e^{-u/tau} du
    void coefficients(double tau, double x, double* a, double* b) const {
        const double y = x/tau;
        const double e = std::exp(-y);
        for (int i = 0; i <= d; ++i) {
            const int p = d - i;
            a[i] = e*c(d, i)*(p == 0? 1.0: std::pow(y, p));
            double jp;
            if (p == 0) jp = -tau*std::expm1(-y);
            else jp = tau*(tail_polynomial(p, 1.0, 0.0) - tail_polynomial(p, 1.0, y)*e);
            b[i] = c(d, i)*jp;
        }
    }
};

} // namespace detail

using detail::trace_tables;

network_trace::network_trace(const validated_params& vp, const integral_config& cfg) {
    check(cfg);
    auto t = std::make_shared<trace_tables>(vp);
    const std::size_t n = vp.size();
    const int d = vp.degree();
    t->n = n;
    t->d = d;
    t->cfg = cfg;
    t->rule = gauss_legendre(cfg.nodes_per_unit);
    const std::size_t nq = t->rule.size();
    t->nq = nq;
    for (std::size_t q = 0; q < nq; ++q) t->nodes.push_back(t->rule.x[q]);
    for (std::size_t q = 0; q < nq; ++q) t->nodes.push_back(0.5*t->rule.x[q]);
    for (std::size_t q = 0; q < nq; ++q) t->nodes.push_back(0.5 + 0.5*t->rule.x[q]);
    t->nodes.push_back(1.0);

    t->binom.assign(std::size_t(d + 1)*(d + 1), 0.0);
    for (int i = 0; i <= d; ++i) {
        t->binom[std::size_t(i)*(d + 1)] = 1;
        for (int q = 1; q <= i; ++q) {
            t->binom[std::size_t(i)*(d + 1) + q] = t->c(i - 1, q - 1) + (q <= i - 1? t->c(i - 1, q): 0.0);
        }
    }

    t->syn_begin.push_back(0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (vp.g(k, j) == 0) continue;
            const double tau = vp.tau(k, j);
            std::size_t ti = 0;
            while (ti < t->taus.size() && t->taus[ti].tau != tau) ++ti;
            if (ti == t->taus.size()) {
                detail::tau_table tt;
                tt.tau = tau;
                const std::size_t w = std::size_t(d + 1);
                tt.shift.assign(w*w, 0.0);
                const double e1 = std::exp(-1/tau);
                for (int i = 0; i <= d; ++i) {
                    for (int c = 0; c <= i; ++c) {
                        tt.shift[std::size_t(i)*w + c] = t->c(i, c)*std::pow(tau, -(i - c))*e1;
                    }
                }
                tt.a.resize(t->nodes.size()*w);
                tt.b.resize(t->nodes.size()*w);
                for (std::size_t q = 0; q < t->nodes.size(); ++q) {
                    t->coefficients(tau, t->nodes[q], &tt.a[q*w], &tt.b[q*w]);
                }
                // all-ones history: M = S M + e_0, S lower triangular
                tt.fixed.assign(w, 0.0);
                for (std::size_t i = 0; i < w; ++i) {
                    double s = i == 0? 1.0: 0.0;
                    for (std::size_t c = 0; c < i; ++c) s += tt.shift[i*w + c]*tt.fixed[c];
                    tt.fixed[i] = s/(1 - tt.shift[i*w + i]);
                }
                t->taus.push_back(std::move(tt));
            }
            t->syn.push_back({j, ti, vp.g(k, j), vp.weight(k, j)});
        }
        t->syn_begin.push_back(t->syn.size());
        t->cap.push_back(vp.capacitance(k));
        t->gl.push_back(vp.leak_conductance(k));
        t->tl.push_back(vp.tau_leak(k));
        t->has_current.push_back(!vp.current().empty(k));
        std::vector<double> edges;
        if (!vp.current().empty(k)) {
            for (auto& c: vp.current().terms[k]) {
                if (c.type == current_term::kind::step) {
                    edges.push_back(c.t_on);
                    edges.push_back(c.t_off);
                }
            }
        }
        t->step_edges.push_back(std::move(edges));
    }

    n_ = n;
    mom_.assign(t->syn.size()*std::size_t(d + 1), 0.0);
    for (auto* v: {&r0_, &r2_, &rsyn_, &rext_, &gs_, &g_now_, &u0_, &u2_, &usyn_, &uext_, &gam_, &g_next_}) {
        v->assign(n, 0.0);
    }
    scratch_.assign(2*t->nodes.size(), 0.0);
    tab_ = std::move(t);
    reset_silent(0);
}

void network_trace::load_state(const network_trace& o) {
    time_ = o.time_;
    integrated_ = o.integrated_;
    mom_ = o.mom_;
    r0_ = o.r0_;
    r2_ = o.r2_;
    rsyn_ = o.rsyn_;
    rext_ = o.rext_;
    gs_ = o.gs_;
    g_now_ = o.g_now_;
    if (o.integrated_) {
        u0_ = o.u0_;
        u2_ = o.u2_;
        usyn_ = o.usyn_;
        uext_ = o.uext_;
        gam_ = o.gam_;
        g_next_ = o.g_next_;
    }
}

void network_trace::reset_silent(tick t) {
    const auto& T = *tab_;
    time_ = t;
    integrated_ = false;
    std::fill(mom_.begin(), mom_.end(), 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
        r0_[k] = T.tl[k];
        r2_[k] = 0.5*T.tl[k];
        rsyn_[k] = 0;
        rext_[k] = T.has_current[k]? ext_current_memory(T.vp, k, double(t), T.tl[k]): 0.0;
        gs_[k] = 0;
        g_now_[k] = T.gl[k];
    }
}

void network_trace::reset_all_ones(tick t) {
    const auto& T = *tab_;
    const std::size_t w = std::size_t(T.d + 1);
    const std::size_t last = (T.nodes.size() - 1)*w;
    time_ = t;
    integrated_ = false;
    for (std::size_t s = 0; s < T.syn.size(); ++s) {
        const auto& tt = T.taus[T.syn[s].tau_idx];
        std::copy(tt.fixed.begin(), tt.fixed.end(), mom_.begin() + s*w);
    }
    for (std::size_t k = 0; k < n_; ++k) {
        r0_[k] = r2_[k] = rsyn_[k] = rext_[k] = 0;
        gs_[k] = 1;
        double g = T.gl[k];
        for (std::size_t s = T.syn_begin[k]; s < T.syn_begin[k + 1]; ++s) {
            const auto& tt = T.taus[T.syn[s].tau_idx];
            double a = 0;
            for (std::size_t i = 0; i < w; ++i) a += tt.a[last + i]*tt.fixed[i];
            g += T.syn[s].g*a;
        }
        g_now_[k] = g;
    }
}

void network_trace::replay(const raster& r, tick from, tick to) {
    reset_silent(from - 1);
    std::vector<std::uint8_t> pat(n_);
    for (tick t = from; t <= to; ++t) {
        for (std::size_t k = 0; k < n_; ++k) pat[k] = r.bit(k, t);
        advance(pat);
    }
}

void network_trace::integrate() {
    const auto& T = *tab_;
    const double b = double(time_);
    for (std::size_t k = 0; k < n_; ++k) {
        if (!T.step_edges[k].empty()) {
            std::vector<double> cuts{0.0};
            for (double e: T.step_edges[k]) {
                if (e > b && e < b + 1) cuts.push_back(e - b);
            }
            if (cuts.size() > 1) {
                cuts.push_back(1.0);
                std::sort(cuts.begin(), cuts.end());
                integrate_generic(k, cuts);
                continue;
            }
        }
        integrate_neuron(k);
    }
    integrated_ = true;
}

void network_trace::integrate_neuron(std::size_t k) {
    const auto& T = *tab_;
    const std::size_t w = std::size_t(T.d + 1);
    const std::size_t nn = T.nodes.size();
    const std::size_t nq = T.nq;
    double* K = scratch_.data();
    double* A = scratch_.data() + nn;
    const double gl = T.gl[k];
    for (std::size_t q = 0; q < nn; ++q) {
        K[q] = gl*T.nodes[q];
        A[q] = 0;
    }
    double galpha1 = 0;
    for (std::size_t s = T.syn_begin[k]; s < T.syn_begin[k + 1]; ++s) {
        const auto& sy = T.syn[s];
        const double* M = &mom_[s*w];
        bool any = false;
        for (std::size_t i = 0; i < w; ++i) any |= M[i] != 0;
        if (!any) continue;
        const auto& tt = T.taus[sy.tau_idx];
        const double* a = tt.a.data();
        const double* bb = tt.b.data();
        if (w == 1) {
            const double m0 = M[0];
            for (std::size_t q = 0; q < nn; ++q) {
                K[q] += sy.g*bb[q]*m0;
                A[q] += sy.w*a[q]*m0;
            }
            galpha1 += sy.g*a[nn - 1]*m0;
        }
        else {
            for (std::size_t q = 0; q < nn; ++q) {
                double al = 0, cu = 0;
                for (std::size_t i = 0; i < w; ++i) {
                    al += a[q*w + i]*M[i];
                    cu += bb[q*w + i]*M[i];
                }
                K[q] += sy.g*cu;
                A[q] += sy.w*al;
                if (q == nn - 1) galpha1 += sy.g*al;
            }
        }
    }

    const double inv_c = 1/T.cap[k];
    const double k1 = K[nn - 1];
    const bool cur = T.has_current[k];
    const double b = double(time_);
    double coarse[4] = {0, 0, 0, 0}, fine[4] = {0, 0, 0, 0}, mag[4] = {0, 0, 0, 0};
    for (std::size_t q = 0; q < 3*nq; ++q) {
        const double x = T.nodes[q];
        const double gam = std::exp((K[q] - k1)*inv_c);
        const double i_ext = cur? T.vp.current_at(k, b + x): 0.0;
        const double v[4] = {gam, gam*gam, gam*A[q], gam*i_ext};
        if (q < nq) {
            const double wq = T.rule.w[q];
            for (int c = 0; c < 4; ++c) coarse[c] += wq*v[c];
        }
        else {
            const double wq = 0.5*T.rule.w[(q - nq)%nq];
            for (int c = 0; c < 4; ++c) {
                fine[c] += wq*v[c];
                mag[c] += wq*std::abs(v[c]);
            }
        }
    }
    for (int c = 0; c < 4; ++c) {
        if (!(std::abs(fine[c] - coarse[c]) <= T.cfg.rel_tol*mag[c])) {
            integrate_generic(k, {0.0, 1.0});
            return;
        }
    }
    u0_[k] = fine[0];
    u2_[k] = fine[1];
    usyn_[k] = fine[2];
    uext_[k] = fine[3];
    gam_[k] = std::exp(-k1*inv_c);
    g_next_[k] = gl + galpha1;
}

void network_trace::integrate_generic(std::size_t k, const std::vector<double>& cuts) {
    const auto& T = *tab_;
    const std::size_t w = std::size_t(T.d + 1);
    const double inv_c = 1/T.cap[k];
    const double b = double(time_);
    std::vector<double> a(w), bb(w);

    // K(x) = int_0^x g_k, A(x) = sum_j W_kj alpha_kj(b + x)
    auto eval = [&](double x, double& K, double& A, double& GA) {
        K = T.gl[k]*x;
        A = 0;
        GA = 0;
        for (std::size_t s = T.syn_begin[k]; s < T.syn_begin[k + 1]; ++s) {
            const auto& sy = T.syn[s];
            const double* M = &mom_[s*w];
            T.coefficients(T.taus[sy.tau_idx].tau, x, a.data(), bb.data());
            double al = 0, cu = 0;
            for (std::size_t i = 0; i < w; ++i) {
                al += a[i]*M[i];
                cu += bb[i]*M[i];
            }
            K += sy.g*cu;
            A += sy.w*al;
            GA += sy.g*al;
        }
    };
    double k1, a1, ga1;
    eval(1.0, k1, a1, ga1);
    auto f = [&](double x) -> std::array<double, 4> {
        double K, A, GA;
        eval(x, K, A, GA);
        const double gam = std::exp((K - k1)*inv_c);
        const double i_ext = T.has_current[k]? T.vp.current_at(k, b + x): 0.0;
        return {gam, gam*gam, gam*A, gam*i_ext};
    };
    std::array<double, 4> acc{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto part = gifnet::integrate<4>(f, cuts[i], cuts[i + 1], T.rule, T.cfg);
        for (int c = 0; c < 4; ++c) acc[c] += part[c];
    }
    u0_[k] = acc[0];
    u2_[k] = acc[1];
    usyn_[k] = acc[2];
    uext_[k] = acc[3];
    gam_[k] = std::exp(-k1*inv_c);
    g_next_[k] = T.gl[k] + ga1;
}

void network_trace::apply(std::span<const std::uint8_t> pattern) {
    if (!integrated_) integrate();
    const auto& T = *tab_;
    const std::size_t w = std::size_t(T.d + 1);
    for (std::size_t k = 0; k < n_; ++k) {
        if (pattern[k]) {
            r0_[k] = r2_[k] = rsyn_[k] = rext_[k] = 0;
            gs_[k] = 1;
        }
        else {
            const double g = gam_[k];
            r0_[k] = g*r0_[k] + u0_[k];
            r2_[k] = g*g*r2_[k] + u2_[k];
            rsyn_[k] = g*rsyn_[k] + usyn_[k];
            rext_[k] = g*rext_[k] + uext_[k];
            gs_[k] *= g;
        }
        g_now_[k] = g_next_[k];
    }
    double tmp[32];
    for (std::size_t s = 0; s < T.syn.size(); ++s) {
        const auto& sy = T.syn[s];
        const auto& S = T.taus[sy.tau_idx].shift;
        double* M = &mom_[s*w];
        if (w == 1) M[0] *= S[0];
        else {
            for (std::size_t i = 0; i < w; ++i) {
                double acc = 0;
                for (std::size_t c = 0; c <= i; ++c) acc += S[i*w + c]*M[c];
                tmp[i] = acc;
            }
            std::copy(tmp, tmp + w, M);
        }
        if (pattern[sy.j]) M[0] += 1;
    }
    ++time_;
    integrated_ = false;
}

double network_trace::v_syn(std::size_t k) const {
    return rsyn_[k]/tab_->cap[k];
}

double network_trace::v_ext(std::size_t k) const {
    const auto& T = *tab_;
    return T.vp.leak_reversal()/T.tl[k]*r0_[k] + rext_[k]/T.cap[k];
}

double network_trace::sigma_sq(std::size_t k) const {
    const auto& T = *tab_;
    const double sr = T.vp.reset_std(), sb = T.vp.noise_amplitude()/T.cap[k];
    return gs_[k]*gs_[k]*sr*sr + sb*sb*r2_[k];
}

double network_trace::peek_v_syn(std::size_t k, bool fired) const {
    if (fired) return 0;
    return (gam_[k]*rsyn_[k] + usyn_[k])/tab_->cap[k];
}

double network_trace::peek_v_ext(std::size_t k, bool fired) const {
    if (fired) return 0;
    const auto& T = *tab_;
    const double g = gam_[k];
    return T.vp.leak_reversal()/T.tl[k]*(g*r0_[k] + u0_[k]) + (g*rext_[k] + uext_[k])/T.cap[k];
}

double network_trace::peek_sigma_sq(std::size_t k, bool fired) const {
    const auto& T = *tab_;
    const double sr = T.vp.reset_std();
    if (fired) return sr*sr;
    const double sb = T.vp.noise_amplitude()/T.cap[k];
    const double g = gam_[k];
    const double gs = g*gs_[k];
    return gs*gs*sr*sr + sb*sb*(g*g*r2_[k] + u2_[k]);
}

} // namespace gifnet
