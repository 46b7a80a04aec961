#include "specdim/sparse_barrier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#include "specdim/error.hpp"
#include "specdim/logdomain.hpp"

namespace specdim {

namespace {

constexpr std::int64_t kGreenMaxBox = std::int64_t(1) << 21;

}  // namespace

BarrierProfile exp_profile(double eta) {
    require(eta > 0.0, Err::BadParams, "eta must be positive");
    BarrierProfile p;
    p.name = "exp";
    p.log_beta = [](double x) { return x; };
    p.eta = eta;
    return p;
}

BarrierProfile exp_scaled_profile(double c, double eta) {
    require(c > 0.0, Err::BadParams, "scale factor must be positive");
    require(eta > 0.0, Err::BadParams, "eta must be positive");
    char buf[64];
    std::snprintf(buf, sizeof buf, "exp_scaled(%g)", c);
    BarrierProfile p;
    p.name = buf;
    p.log_beta = [c](double x) { return c * x; };
    p.eta = eta;
    return p;
}

BarrierProfile power_profile(double pw, double eta) {
    require(pw > 0.0, Err::BadParams, "exponent must be positive");
    require(eta > 0.0, Err::BadParams, "eta must be positive");
    char buf[64];
    std::snprintf(buf, sizeof buf, "power(%g)", pw);
    BarrierProfile p;
    p.name = buf;
    p.log_beta = [pw](double x) { return pw * std::log(x); };
    p.eta = eta;
    return p;
}

void validate_profile(const BarrierProfile& p) {
    require(bool(p.log_beta), Err::BadProfile, "profile has no log_beta");
    require(p.eta > 0.0, Err::BadProfile, "eta must be positive");

    // Strict increase along a geometric grid.
    double prev = p.log_beta(0.5);
    require(std::isfinite(prev), Err::BadProfile, "log beta not finite");
    for (double x = 1.0; x <= 1.0e12; x *= 2.0) {
        const double cur = p.log_beta(x);
        require(std::isfinite(cur), Err::BadProfile, "log beta not finite");
        require(cur > prev, Err::BadProfile, "ln beta must increase");
        prev = cur;
    }

    // Convexity of ln beta: uniform second differences near the origin plus
    // midpoint checks along the geometric grid.  Tolerances scale with the
    // magnitude so exactly-linear profiles survive roundoff.
    for (double x = 2.0; x <= 200.0; x += 1.0) {
        const double d2 = p.log_beta(x + 1.0) - 2.0 * p.log_beta(x) + p.log_beta(x - 1.0);
        require(d2 >= -1e-9 * std::max(1.0, std::fabs(p.log_beta(x))), Err::BadProfile,
                "ln beta must be convex");
    }
    for (double x = 1.0; x <= 1.0e9; x *= 4.0) {
        const double mid = p.log_beta(2.5 * x);
        const double avg = 0.5 * (p.log_beta(x) + p.log_beta(4.0 * x));
        require(mid <= avg + 1e-9 * std::max(1.0, std::fabs(avg)), Err::BadProfile,
                "ln beta must be convex");
    }

    // Subadditivity of beta^{-1} over products (follows from convexity; this
    // is the property the dimension bounds actually consume).
    std::mt19937 rng(20260814u);
    std::uniform_real_distribution<double> u(1.0, 100.0);
    for (int it = 0; it < 1000; ++it) {
        const double b1 = u(rng);
        const double b2 = u(rng);
        const double lx = p.log_beta(b1);
        const double ly = p.log_beta(b2);
        const double s1 = beta_inv(p, lx);
        const double s2 = beta_inv(p, ly);
        const double s12 = beta_inv(p, lx + ly);
        require(s12 <= s1 + s2 + 1e-9, Err::BadProfile,
                "beta inverse must be subadditive over products");
    }
}

double beta_inv(const BarrierProfile& p, double log_y) {
    require(bool(p.log_beta), Err::BadProfile, "profile has no log_beta");
    require(std::isfinite(log_y), Err::BadParams, "beta_inv needs a finite log argument");
    double lo = 1.0, hi = 2.0;
    int guard = 0;
    if (p.log_beta(lo) > log_y) {
        hi = lo;
        while (p.log_beta(lo) > log_y) {
            lo *= 0.5;
            require(lo > 0.0 && ++guard < 1100, Err::NonInvertible,
                    "no lower bracket for beta inverse");
        }
    } else {
        while (p.log_beta(hi) < log_y) {
            hi *= 2.0;
            require(std::isfinite(hi) && ++guard < 1100, Err::NonInvertible,
                    "no upper bracket for beta inverse");
        }
    }
    for (int it = 0; it < 300 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (p.log_beta(mid) < log_y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SparseScales build_scales(const BarrierProfile& p, int K, std::int64_t cap) {
    validate_profile(p);
    require(K >= 1, Err::BadParams, "need at least one scale");
    require(cap >= 2, Err::BadParams, "cap must be at least 2");
    SparseScales s;
    s.cap = cap;
    const double log_cap = std::log(double(cap));
    double log_L = std::log(2.0);
    std::int64_t L = 2;
    bool mat = true;
    for (int k = 1; k <= K; ++k) {
        ScaleEntry e;
        e.index = k;
        e.log_L = log_L;
        e.materializable = mat;
        if (mat) e.L = L;
        if (log_L <= 690.0) {
            // beta's argument still fits in a double
            e.beta_ok = true;
            e.log_beta_L = p.log_beta(mat ? double(L) : std::exp(log_L));
            e.log_v = p.eta * e.log_beta_L;
        }
        s.entries.push_back(e);
        if (k == K || !e.beta_ok) break;
        const double log_next = double(k) * e.log_beta_L;
        require(log_next > log_L, Err::BadProfile, "scales fail to increase (beta too slow)");
        if (log_next <= log_cap) {
            const std::int64_t next = std::int64_t(std::ceil(std::exp(log_next)));
            require(next > L, Err::BadProfile, "scales fail to increase (beta too slow)");
            L = next;
            log_L = std::log(double(next));
            mat = true;
        } else {
            log_L = log_next;
            mat = false;
        }
    }
    return s;
}

Potential barrier_potential(const BarrierProfile& p, const SparseScales& s) {
    require(!s.entries.empty(), Err::BadParams, "empty scale set");
    std::vector<std::int64_t> sites;
    std::vector<double> log_vs;
    bool symbolic = false;
    for (const auto& e : s.entries) {
        if (e.materializable) {
            sites.push_back(e.L);
            log_vs.push_back(e.beta_ok ? e.log_v : std::numeric_limits<double>::quiet_NaN());
        } else {
            symbolic = true;
        }
    }
    const std::int64_t cap = s.cap;
    Potential pot;
    pot.name = "sparse_barrier(" + p.name + ")";
    pot.v = [sites, log_vs, symbolic, cap](std::int64_t n) {
        if (symbolic && n > cap)
            fail(Err::ScaleNotMaterializable, "site lies beyond the materializable scales");
        const auto it = std::lower_bound(sites.begin(), sites.end(), n);
        if (it == sites.end() || *it != n) return 0.0;
        const double lv = log_vs[std::size_t(it - sites.begin())];
        require(std::isfinite(lv) && lv <= 709.0, Err::ScaleNotMaterializable,
                "barrier value exceeds double range");
        return std::exp(lv);
    };
    return pot;
}

std::vector<SingleStepRow> single_step_bounds(const BarrierProfile& p, const SparseScales& s,
                                              const std::vector<double>& E_grid) {
    (void)p;
    require(!E_grid.empty(), Err::InvalidGrid, "empty energy grid");
    for (double E : E_grid)
        require(std::fabs(E) <= 2.0, Err::BadParams, "single-step bound needs E in [-2,2]");
    std::vector<SingleStepRow> out;
    for (const auto& e : s.entries) {
        if (!e.beta_ok) continue;
        for (double E : E_grid) {
            SingleStepRow r;
            r.k = e.index;
            r.energy = E;
            const double lv = e.log_v;
            if (lv <= 700.0) {
                const double V = std::exp(lv);
                const double a = E - V;
                r.log_norm = std::log(0.5 * (std::fabs(a) + std::hypot(a, 2.0)));
                r.log_lo = std::log(std::max(1.0, V - 2.0));
                r.log_hi = std::log(V + 3.0);
            } else {
                // log domain: V dominates everything else in sight
                const double ea = std::exp(-lv);
                const double la = lv + std::log1p(-E * ea);
                r.log_norm =
                    la + std::log(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::exp(-2.0 * la))));
                r.log_lo = lv + std::log1p(-2.0 * ea);
                r.log_hi = lv + std::log1p(3.0 * ea);
            }
            r.ok = r.log_norm >= r.log_lo - 1e-12 && r.log_norm <= r.log_hi + 1e-12;
            out.push_back(r);
        }
    }
    return out;
}

double free_stretch_bound(double E) {
    require(std::fabs(E) < 2.0, Err::BadParams, "free stretch bound needs E inside (-2,2)");
    return std::sqrt((2.0 + std::fabs(E)) / (2.0 - std::fabs(E)));
}

std::vector<FreeStretchRow> free_stretch_check(const std::vector<double>& E_grid,
                                               std::int64_t max_len) {
    require(!E_grid.empty(), Err::InvalidGrid, "empty energy grid");
    require(max_len >= 1, Err::BadParams, "max_len must be at least 1");
    const HalfLineOperator free_op{constant_potential(0.0), 0.0};
    std::vector<FreeStretchRow> out;
    for (double E : E_grid) {
        FreeStretchRow r;
        r.energy = E;
        r.max_len = max_len;
        r.log_bound = std::log(free_stretch_bound(E));
        TransferProduct prod(free_op, E);
        double mn = kPosInf, mx = kNegInf;
        for (std::int64_t len = 1; len <= max_len; ++len) {
            prod.step();
            const double v = prod.log_opnorm();
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        r.min_log_norm = mn;
        r.max_log_norm = mx;
        r.ok = mn >= -1e-9 && mx <= r.log_bound + 1e-9;
        out.push_back(r);
    }
    return out;
}

ExpBoundReport expbound_check(const BarrierProfile& p, const SparseScales& s,
                              const std::vector<double>& E_grid, double eps,
                              const std::vector<int>& n_range, int m_samples,
                              std::int64_t max_steps) {
    require(!E_grid.empty(), Err::InvalidGrid, "empty energy grid");
    require(eps > 0.0, Err::BadParams, "eps must be positive");
    require(m_samples >= 2, Err::BadParams, "need at least two samples per window");
    require(max_steps >= 2, Err::BadParams, "max_steps too small");
    for (double E : E_grid)
        require(std::fabs(E) < 2.0, Err::BadParams, "expbound needs E inside (-2,2)");

    std::vector<int> ns(n_range);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    require(!ns.empty(), Err::BadParams, "empty scale range");

    struct NInfo {
        int n = 0;
        double log_lower = 0.0, log_upper = 0.0;
        std::vector<std::int64_t> ms;
    };
    struct Sample {
        std::int64_t m = 0;
        std::size_t slot = 0;
    };
    std::vector<NInfo> infos;
    std::vector<Sample> samples;
    for (int n : ns) {
        require(n >= 1 && n + 1 <= int(s.entries.size()), Err::BadParams,
                "scale window needs entries n and n+1");
        const ScaleEntry& e = s.entries[std::size_t(n - 1)];
        const ScaleEntry& nx = s.entries[std::size_t(n)];
        require(e.materializable && e.beta_ok, Err::ScaleNotMaterializable,
                "scale L_n not materializable");
        const std::int64_t m_lo = e.L;
        require(m_lo <= max_steps, Err::BadParams, "max_steps below L_n");
        const std::int64_t m_hi =
            nx.materializable ? std::min<std::int64_t>(nx.L - 1, max_steps) : max_steps;
        const double b = beta_inv(p, e.log_L);
        const double lnb = std::log(b);
        const double alpha = e.log_beta_L / e.log_L;
        NInfo info;
        info.n = n;
        info.log_lower = alpha * (e.log_L - lnb) - eps * lnb;
        info.log_upper = alpha * (e.log_L + lnb) + eps * lnb;
        std::set<std::int64_t> pick;
        pick.insert(m_lo);
        pick.insert(m_hi);
        const double ratio = double(m_hi) / double(m_lo);
        for (int j = 1; j + 1 < m_samples; ++j) {
            const double f = double(j) / double(m_samples - 1);
            const double mv = double(m_lo) * std::pow(ratio, f);
            const std::int64_t m = std::min<std::int64_t>(
                m_hi, std::max<std::int64_t>(m_lo, std::int64_t(std::llround(mv))));
            pick.insert(m);
        }
        info.ms.assign(pick.begin(), pick.end());
        for (std::int64_t m : info.ms) samples.push_back({m, infos.size()});
        infos.push_back(std::move(info));
    }
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.m < b.m; });
    const std::int64_t m_max = samples.back().m;

    // The streams below cross every barrier site up to m_max; make sure none
    // of those can overflow before entering the parallel region.
    for (const auto& e : s.entries) {
        if (e.materializable && e.L <= m_max)
            require(e.beta_ok && e.log_v <= 709.0, Err::ScaleNotMaterializable,
                    "stream crosses a barrier beyond double range");
    }

    const HalfLineOperator H{barrier_potential(p, s), 0.0};
    const std::size_t S = samples.size();
    std::vector<ExpBoundRow> all(E_grid.size() * S);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ei = 0; ei < std::int64_t(E_grid.size()); ++ei) {
        const double E = E_grid[std::size_t(ei)];
        TransferProduct prod(H, E);
        std::size_t si = 0;
        for (std::int64_t step = 1; step <= m_max && si < S; ++step) {
            prod.step();
            while (si < S && samples[si].m == step) {
                const NInfo& info = infos[samples[si].slot];
                ExpBoundRow r;
                r.n = info.n;
                r.m = step;
                r.energy = E;
                r.log_norm = prod.log_opnorm();
                r.log_lower = info.log_lower;
                r.log_upper = info.log_upper;
                r.within = r.log_norm >= r.log_lower && r.log_norm <= r.log_upper;
                all[std::size_t(ei) * S + si] = r;
                ++si;
            }
        }
    }

    ExpBoundReport rep;
    rep.eps = eps;
    rep.rows = std::move(all);
    rep.ns.reserve(infos.size());
    rep.lower_margin.assign(infos.size(), kPosInf);
    rep.upper_margin.assign(infos.size(), kPosInf);
    for (const auto& info : infos) rep.ns.push_back(info.n);
    for (const auto& r : rep.rows) {
        const std::size_t slot =
            std::size_t(std::lower_bound(rep.ns.begin(), rep.ns.end(), r.n) - rep.ns.begin());
        rep.lower_margin[slot] = std::min(rep.lower_margin[slot], r.log_norm - r.log_lower);
        rep.upper_margin[slot] = std::min(rep.upper_margin[slot], r.log_upper - r.log_norm);
    }
    return rep;
}

FnDeltaResult f_n_delta(const BarrierProfile& p, const SparseScales& s, int n, double delta,
                        const std::vector<double>& l_grid, double eps) {
    require(n >= 1 && n <= int(s.entries.size()), Err::BadParams, "scale index out of range");
    const ScaleEntry& e = s.entries[std::size_t(n - 1)];
    require(e.beta_ok, Err::ScaleNotMaterializable, "scale has no evaluable beta");
    require(delta >= 0.0 && delta <= 1.0, Err::BadParams, "delta must lie in [0,1]");
    require(eps > 0.0, Err::BadParams, "eps must be positive");
    require(!l_grid.empty(), Err::InvalidGrid, "empty l grid");
    for (std::size_t i = 0; i < l_grid.size(); ++i) {
        require(l_grid[i] >= 1.0, Err::InvalidGrid, "l grid must start at 1 or later");
        if (i) require(l_grid[i] > l_grid[i - 1], Err::InvalidGrid, "l grid must increase");
    }

    const double lnL = e.log_L;
    const double b = beta_inv(p, lnL);
    const double lnb = std::log(b);
    const double alpha = e.log_beta_L / lnL;
    const double lnA = lnL - lnb;
    const double lnB = -2.0 * alpha * lnA;
    const double lnC = lnL + lnb;
    const double lnD = 2.0 * alpha * lnC;
    const double Ln = e.materializable ? double(e.L) : std::exp(lnL);

    FnDeltaResult out;
    out.n = n;
    out.delta = delta;
    out.eps = eps;
    out.log_case_boundary = lnD + lnC - 2.0 * eps * lnL;
    out.log_min = kPosInf;
    out.l_at_min = l_grid.front();
    for (double l : l_grid) {
        const double lnl = std::log(l);
        const double m = l + Ln - 1.0;  // >= 2, so ln m > 0 and ln ln m is safe
        const double lnm = std::log(m);
        const double log_num = log_add_exp(lnA, lnl + lnB);
        const double log_arg = log_add_exp(lnC, lnl + lnD) + lnm + 2.0 * std::log(lnm);
        const double bb = beta_inv(p, log_arg);
        const double lf = log_num - (1.0 - delta) * std::log(bb);
        out.l.push_back(l);
        out.log_F.push_back(lf);
        out.case_id.push_back(lnl <= out.log_case_boundary ? 1 : 2);
        if (lf < out.log_min) {
            out.log_min = lf;
            out.l_at_min = l;
        }
    }
    return out;
}

namespace {

// Thomas solve of (H - z) x = e_i on sites [1, N]; returns x_j.  Im z > 0
// keeps every pivot's imaginary part below -Im z, so the sweep never breaks.
std::complex<double> tridiag_green(const HalfLineOperator& h, std::int64_t i, std::int64_t j,
                                   std::complex<double> z, std::int64_t N) {
    const std::size_t n = std::size_t(N);
    std::vector<std::complex<double>> cp(n + 1), dp(n + 1);
    const std::complex<double> b1 = std::complex<double>(h.effective_v(1), 0.0) - z;
    cp[1] = 1.0 / b1;
    dp[1] = (i == 1 ? 1.0 : 0.0) * cp[1];
    for (std::size_t sidx = 2; sidx <= n; ++sidx) {
        const std::complex<double> bs =
            std::complex<double>(h.effective_v(std::int64_t(sidx)), 0.0) - z;
        const std::complex<double> m = bs - cp[sidx - 1];
        cp[sidx] = 1.0 / m;
        const double r = std::int64_t(sidx) == i ? 1.0 : 0.0;
        dp[sidx] = (r - dp[sidx - 1]) * cp[sidx];
    }
    std::complex<double> x = dp[n];
    std::complex<double> xj = std::int64_t(n) == j ? x : std::complex<double>(0.0, 0.0);
    for (std::size_t sidx = n - 1; sidx >= 1; --sidx) {
        x = dp[sidx] - cp[sidx] * x;
        if (std::int64_t(sidx) == j) xj = x;
        if (sidx == 1) break;
    }
    return xj;
}

}  // namespace

std::complex<double> green_function(const HalfLineOperator& H, std::int64_t i, std::int64_t j,
                                    std::complex<double> z, std::int64_t n_trunc) {
    require(bool(H.potential.v), Err::BadParams, "operator has no potential");
    require(!H.neumann(), Err::BadParams, "Green function needs theta inside (-pi/2, pi/2)");
    require(i >= 1 && j >= 1, Err::BadParams, "site indices start at 1");
    require(z.imag() > 0.0, Err::BadParams, "Green function needs Im z > 0");
    if (n_trunc > 0) {
        require(n_trunc >= std::max(i, j), Err::BoxTooSmall, "truncation excludes the sites");
        return tridiag_green(H, i, j, z, n_trunc);
    }
    std::int64_t N = std::max<std::int64_t>(4 * std::max(i, j), 256);
    std::complex<double> prev = tridiag_green(H, i, j, z, N);
    for (N *= 2; N <= kGreenMaxBox; N *= 2) {
        const std::complex<double> cur = tridiag_green(H, i, j, z, N);
        if (std::abs(cur - prev) <= 1e-10 * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    fail(Err::BoxTooSmall, "Green function did not settle below the box cap");
}

std::vector<GreenIdentityRow> green_identity_check(const BarrierProfile& p,
                                                   const SparseScales& s, int k,
                                                   const std::vector<std::int64_t>& ns,
                                                   std::complex<double> z) {
    require(k >= 1 && k <= int(s.entries.size()), Err::BadParams, "scale index out of range");
    const ScaleEntry& e = s.entries[std::size_t(k - 1)];
    require(e.materializable && e.beta_ok && e.log_v <= 709.0, Err::ScaleNotMaterializable,
            "barrier k must carry a representable value");
    require(!ns.empty(), Err::InvalidGrid, "empty site list");
    const std::int64_t Lk = e.L;
    const double V = std::exp(e.log_v);

    const HalfLineOperator full{barrier_potential(p, s), 0.0};
    // Removing the (L_k - 1, L_k) bond decouples the half-line starting at
    // L_k; its Green function is computed by an independent solve on the
    // shifted potential.
    Potential shifted;
    shifted.name = full.potential.name + "|shift" + std::to_string(Lk);
    shifted.v = [pot = full.potential.v, Lk](std::int64_t m) { return pot(m + Lk - 1); };
    const HalfLineOperator tail{shifted, 0.0};

    std::vector<GreenIdentityRow> out;
    for (std::int64_t n : ns) {
        require(n > Lk, Err::BadParams, "identity needs n > L_k");
        GreenIdentityRow row;
        row.n = n;
        const std::complex<double> lhs = green_function(full, 1, n, z);
        const std::complex<double> g_left = green_function(full, 1, Lk - 1, z);
        const std::complex<double> gp_k = green_function(tail, 1, n - Lk + 1, z);
        const std::complex<double> gp_k1 = green_function(tail, 2, n - Lk + 1, z);
        row.full = lhs;
        const std::complex<double> rhs_split = -g_left * gp_k;
        const std::complex<double> rhs_site = -gp_k1 / (std::complex<double>(V, 0.0) - z);
        const std::complex<double> rhs_combined = g_left * gp_k1 / (std::complex<double>(V, 0.0) - z);
        const double den = std::max(std::abs(lhs), 1e-300);
        row.rel_err_split = std::abs(lhs - rhs_split) / den;
        row.rel_err_site = std::abs(gp_k - rhs_site) / std::max(std::abs(gp_k), 1e-300);
        row.rel_err_combined = std::abs(lhs - rhs_combined) / den;
        out.push_back(row);
    }
    return out;
}

GaugeFunction barrier_gauge(const BarrierProfile& p) {
    require(bool(p.log_beta), Err::BadProfile, "profile has no log_beta");
    GaugeFunction g;
    g.name = "G_beta(" + p.name + ")";
    g.s_min = std::max(1.0, 0.5 * p.log_beta(1.0) + 0.5);
    const BarrierProfile copy = p;
    g.log_form = [copy](double sv) { return -std::log(beta_inv(copy, 2.0 * sv)); };
    return g;
}

GaugeFunction barrier_gauge_lower(const BarrierProfile& p, double delta) {
    require(bool(p.log_beta), Err::BadProfile, "profile has no log_beta");
    require(delta > 0.0 && delta < 1.0, Err::BadParams, "delta must lie in (0,1)");
    GaugeFunction g;
    char buf[96];
    std::snprintf(buf, sizeof buf, "G_lower(%s,delta=%g)", p.name.c_str(), delta);
    g.name = buf;
    g.s_min = std::max(1.0, 0.5 * p.log_beta(1.0) + 0.5);
    const BarrierProfile copy = p;
    g.log_form = [copy, delta](double sv) {
        return (delta - 1.0) * std::log(beta_inv(copy, 2.0 * sv));
    };
    return g;
}

GaugeFunction barrier_gauge_upper(const BarrierProfile& p, double delta) {
    require(bool(p.log_beta), Err::BadProfile, "profile has no log_beta");
    require(delta > 0.0, Err::BadParams, "delta must be positive");
    const auto lb = p.log_beta;
    GaugeFunction g =
        bound_gauge(BoundGaugeKind::FromGrowth, [lb](double w) { return lb(std::exp(w)); }, delta);
    char buf[96];
    std::snprintf(buf, sizeof buf, "G_upper(%s,delta=%g)", p.name.c_str(), delta);
    g.name = buf;
    return g;
}

}  // namespace specdim
