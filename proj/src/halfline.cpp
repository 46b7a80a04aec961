#include "specdim/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "specdim/error.hpp"

namespace specdim {

namespace {

constexpr double kPiHalf = 1.5707963267948966;

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

void check_operator(const HalfLineOperator& h) {
    require(static_cast<bool>(h.potential.v), Err::BadParams, "potential not set");
    require(h.theta > -kPiHalf && h.theta <= kPiHalf, Err::BadParams,
            "theta outside (-pi/2, pi/2]");
}

}  // namespace

Potential constant_potential(double c) {
    Potential p;
    char buf[48];
    std::snprintf(buf, sizeof buf, "constant(%g)", c);
    p.name = buf;
    p.v = [c](std::int64_t) { return c; };
    return p;
}

Potential table_potential(std::vector<double> vals, double fill) {
    Potential p;
    p.name = "table";
    p.v = [vals = std::move(vals), fill](std::int64_t n) {
        return n >= 1 && static_cast<std::size_t>(n) <= vals.size() ? vals[n - 1] : fill;
    };
    return p;
}

bool HalfLineOperator::neumann() const { return theta == kPiHalf; }

double HalfLineOperator::effective_v(std::int64_t n) const {
    double val = potential(n);
    if (n == 1 && theta != 0.0 && !neumann()) val -= std::tan(theta);
    return val;
}

TransferProduct::TransferProduct(const HalfLineOperator& H, double E) : h_(&H), energy_(E) {
    check_operator(H);
    if (H.neumann()) {
        // Phi_0 = [[0,-1],[1,0]] carries the swapped boundary data
        // u1 = (1,0), u2 = (0,-1); still a rotation, det +1.
        q_[0][0] = 0.0;
        q_[0][1] = -1.0;
        q_[1][0] = 1.0;
        q_[1][1] = 0.0;
    }
}

void TransferProduct::step() {
    ++n_;
    const double e = energy_ - h_->effective_v(n_);
    // M = T_n * Q; entries stay O(|e| + 1).
    const double m00 = e * q_[0][0] - q_[1][0];
    const double m01 = e * q_[0][1] - q_[1][1];
    const double m10 = q_[0][0];
    const double m11 = q_[0][1];
    const double r = std::hypot(m00, m10);  // det M = 1, so the column is nonzero
    require(std::isfinite(r) && r > 0.0, Err::BadParams, "transfer step not finite");
    const double cth = m00 / r, sth = m10 / r;
    const double r01 = cth * m01 + sth * m11;
    const double r11 = -sth * m01 + cth * m11;  // = 1/r in exact arithmetic
    require(r11 != 0.0, Err::BadParams, "degenerate transfer step");
    q_[0][0] = cth;
    q_[0][1] = -sth;
    q_[1][0] = sth;
    q_[1][1] = cth;
    // Fold [[r, r01],[0, r11]] onto the stored triangular factor.
    SignedLog off = r01 == 0.0 ? SignedLog::zero()
                               : SignedLog{lc_ + std::log(std::fabs(r01)), sign_of(r01) * sc_};
    sb_.log_mag += std::log(r);
    sb_ = sb_ + off;
    la_ += std::log(r);
    lc_ += std::log(std::fabs(r11));
    sc_ *= sign_of(r11);
}

double TransferProduct::log_frobenius() const {
    const double terms[3] = {2.0 * la_, 2.0 * sb_.log_mag, 2.0 * lc_};
    return 0.5 * log_sum_exp_serial(terms, 3);
}

double TransferProduct::log_opnorm() const {
    // s_max^2 = ||.||_F^2 (1 + sqrt(1 - 4 det^2 / ||.||_F^4)) / 2.
    const double phi = 2.0 * log_frobenius();
    const double d = la_ + lc_;
    const double q = 4.0 * std::exp(2.0 * (d - phi));
    const double root = std::sqrt(std::max(0.0, 1.0 - q));
    return 0.5 * (phi + std::log(0.5 * (1.0 + root)));
}

ScaledMatrix2 TransferProduct::snapshot() const {
    ScaledMatrix2 m;
    m.log_scale = log_frobenius();
    m.log_opnorm = log_opnorm();
    m.log_det = la_ + lc_;
    m.det_sign = sa_ * sc_;
    const double r00 = sa_ * std::exp(la_ - m.log_scale);
    const double r01 = sb_.sign * std::exp(sb_.log_mag - m.log_scale);
    const double r11 = sc_ * std::exp(lc_ - m.log_scale);
    m.unit[0][0] = q_[0][0] * r00;
    m.unit[0][1] = q_[0][0] * r01 + q_[0][1] * r11;
    m.unit[1][0] = q_[1][0] * r00;
    m.unit[1][1] = q_[1][0] * r01 + q_[1][1] * r11;
    return m;
}

void TransferProduct::columns(SignedLog out[4]) const {
    const SignedLog r00{la_, sa_}, r11{lc_, sc_};
    out[0] = SignedLog::from_double(q_[0][0]) * r00;
    out[1] = SignedLog::from_double(q_[1][0]) * r00;
    out[2] = SignedLog::from_double(q_[0][0]) * sb_ + SignedLog::from_double(q_[0][1]) * r11;
    out[3] = SignedLog::from_double(q_[1][0]) * sb_ + SignedLog::from_double(q_[1][1]) * r11;
}

ScaledMatrix2 transfer(const HalfLineOperator& H, double E, std::int64_t n) {
    require(n >= 1, Err::BadParams, "transfer needs n >= 1");
    TransferProduct p(H, E);
    for (std::int64_t i = 0; i < n; ++i) p.step();
    return p.snapshot();
}

namespace {

constexpr double kRenormHi = 1e150;
constexpr double kRenormLo = 1e-150;

// One fundamental solution in scaled form: true u(n) = cur * e^offset.
struct ScaledSolution {
    double prev, cur, offset = 0.0;
    double log_acc = kNegInf;  // ln ||u||^2_n so far

    void absorb_current() {
        if (cur != 0.0)
            log_acc = log_add_exp(log_acc, 2.0 * (std::log(std::fabs(cur)) + offset));
    }
    double log_u(double x) const {
        return x == 0.0 ? kNegInf : std::log(std::fabs(x)) + offset;
    }
    // ln ||u||^2_L for L = n + frac given next = u(n+1), frac in [0,1)
    double log_norm2_at(double frac, double next) const {
        if (frac <= 0.0 || next == 0.0) return log_acc;
        return log_add_exp(log_acc, std::log(frac) + 2.0 * log_u(next));
    }
    double advance(double coeff) {  // returns scaled u(n+1)
        const double next = coeff * cur - prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::fabs(prev), std::fabs(cur));
        if (mag > kRenormHi || (mag > 0.0 && mag < kRenormLo)) {
            prev /= mag;
            cur /= mag;
            offset += std::log(mag);
        }
        return next;
    }
};

void check_checkpoints(const std::vector<double>& cps, std::int64_t n_max) {
    for (std::size_t i = 0; i < cps.size(); ++i) {
        require(cps[i] >= 1.0 && cps[i] <= static_cast<double>(n_max - 1), Err::BadParams,
                "checkpoint outside [1, n_max - 1]");
        require(i == 0 || cps[i] > cps[i - 1], Err::BadParams, "checkpoints must be increasing");
    }
}

}  // namespace

SolutionPair solve_u1_u2(const HalfLineOperator& H, double E, std::int64_t n_max,
                         const std::vector<double>& checkpoints) {
    check_operator(H);
    require(n_max >= 2, Err::BadParams, "n_max must be >= 2");
    check_checkpoints(checkpoints, n_max);

    SolutionPair out;
    out.u1.energy = out.u2.energy = E;
    if (checkpoints.empty()) return out;

    ScaledSolution s1, s2;
    if (H.neumann()) {
        s1 = {1.0, 0.0};
        s2 = {0.0, -1.0};
    } else {
        s1 = {0.0, 1.0};
        s2 = {1.0, 0.0};
    }

    TransferProduct prod(H, E);
    const std::int64_t n_end = static_cast<std::int64_t>(checkpoints.back());
    std::size_t ci = 0;
    for (std::int64_t n = 1; n <= n_end && ci < checkpoints.size(); ++n) {
        prod.step();
        s1.absorb_current();
        s2.absorb_current();
        const double coeff = E - H.effective_v(n);
        s1.advance(coeff);  // now prev == u(n), cur == u(n+1), signs survive renorm
        s2.advance(coeff);
        while (ci < checkpoints.size() && static_cast<std::int64_t>(checkpoints[ci]) == n) {
            const double L = checkpoints[ci];
            const double frac = L - static_cast<double>(n);
            auto emit = [L, frac](SolutionTrace& t, const ScaledSolution& s) {
                t.lengths.push_back(L);
                t.log_norm2.push_back(s.log_norm2_at(frac, s.cur));
                t.log_u.push_back(s.log_u(s.prev));
                t.sign_u.push_back(sign_of(s.prev));
                t.log_u_next.push_back(s.log_u(s.cur));
                t.sign_u_next.push_back(sign_of(s.cur));
            };
            emit(out.u1, s1);
            emit(out.u2, s2);
            out.wronskian.push_back(prod.det_sign() * std::exp(prod.log_det_drift()));
            ++ci;
        }
    }
    return out;
}

namespace {

// ln ||u||^2_L from the integer-L prefix table and the per-site logs.
double log_norm2_real(const std::vector<double>& acc, const std::vector<double>& lu, double L) {
    const auto fl = static_cast<std::size_t>(L);
    const double frac = L - static_cast<double>(fl);
    double v = acc[fl];
    if (frac > 0.0 && lu[fl + 1] != kNegInf)
        v = log_add_exp(v, std::log(frac) + 2.0 * lu[fl + 1]);
    return v;
}

}  // namespace

LengthScaleResult length_scale(const HalfLineOperator& H, double E, double eps,
                               std::int64_t n_max) {
    check_operator(H);
    require(eps > 0.0, Err::BadParams, "eps must be positive");
    require(n_max >= 3, Err::BadParams, "n_max too small");
    const double target = -std::log(2.0 * eps);  // ln(||u1||_L ||u2||_L) to hit

    ScaledSolution s1{0.0, 1.0}, s2{1.0, 0.0};
    if (H.neumann()) {
        s1 = {1.0, 0.0};
        s2 = {0.0, -1.0};
    }
    // acc*[n] = ln ||u*||^2_n, lu*[n] = ln |u*(n)|; index 0 unused.
    std::vector<double> acc1{kNegInf}, acc2{kNegInf}, lu1{kNegInf}, lu2{kNegInf};
    std::int64_t n_stop = 0;
    for (std::int64_t n = 1; n + 1 <= n_max; ++n) {
        lu1.push_back(s1.log_u(s1.cur));
        lu2.push_back(s2.log_u(s2.cur));
        s1.absorb_current();
        s2.absorb_current();
        acc1.push_back(s1.log_acc);
        acc2.push_back(s2.log_acc);
        const double coeff = E - H.effective_v(n);
        s1.advance(coeff);
        s2.advance(coeff);
        n_stop = n;
        if (0.5 * (s1.log_acc + s2.log_acc) >= target) break;
    }
    lu1.push_back(s1.log_u(s1.cur));  // u(n_stop + 1) for the fractional term
    lu2.push_back(s2.log_u(s2.cur));

    auto g = [&](double L) {
        return 0.5 * (log_norm2_real(acc1, lu1, L) + log_norm2_real(acc2, lu2, L));
    };

    const double attained = g(static_cast<double>(n_stop));
    if (attained < target) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "product ln %.6g at L = %lld, target ln %.6g; raise n_max", attained,
                      static_cast<long long>(n_stop), target);
        fail(Err::LengthNotReached, buf);
    }
    double lo = 1.0, hi = static_cast<double>(n_stop);
    if (g(lo) >= target) return {lo, g(lo)};
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return {hi, g(hi)};
}

std::vector<std::int64_t> geometric_schedule(std::int64_t lo, std::int64_t hi, double ratio) {
    require(lo >= 1 && hi >= lo, Err::BadParams, "bad schedule bounds");
    require(ratio > 1.0, Err::BadParams, "schedule ratio must exceed 1");
    std::vector<std::int64_t> out;
    double x = static_cast<double>(lo);
    std::int64_t n = lo;
    while (n < hi) {
        out.push_back(n);
        x *= ratio;
        n = std::max(n + 1, static_cast<std::int64_t>(std::ceil(x)));
    }
    out.push_back(hi);
    return out;
}

LyapunovResult upper_lyapunov(const HalfLineOperator& H, double E,
                              std::vector<std::int64_t> schedule) {
    if (schedule.empty()) schedule = geometric_schedule(8, 1000000);
    require(schedule.front() >= 1, Err::BadParams, "schedule entries must be >= 1");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        require(schedule[i] > schedule[i - 1], Err::BadParams, "schedule must be increasing");

    TransferProduct p(H, E);
    LyapunovResult res;
    res.ns = std::move(schedule);
    res.lambda.reserve(res.ns.size());
    std::int64_t cur = 0;
    double drift = 0.0;
    for (std::int64_t n : res.ns) {
        while (cur < n) {
            p.step();
            ++cur;
        }
        res.lambda.push_back(p.log_opnorm() / static_cast<double>(n));
        drift = std::max(drift, std::fabs(p.log_det_drift()));
    }
    res.det_drift = drift;
    const double n_last = static_cast<double>(res.ns.back());
    double best = kNegInf;
    for (std::size_t i = 0; i < res.ns.size(); ++i)
        if (static_cast<double>(res.ns[i]) * 10.0 >= n_last) best = std::max(best, res.lambda[i]);
    res.estimate = best;
    if (res.ns.size() >= 4) {
        std::vector<double> xs(res.ns.begin(), res.ns.end());
        TrendOptions opt;
        opt.slope_tol = 0.005;  // lambda units per decade, not log units
        opt.band = 0.005;
        res.trend = classify_trend(xs, res.lambda, opt);
    }
    res.positive = res.estimate >= kLyapunovMin &&
                   (res.trend.cls == Trend::Stable || res.trend.cls == Trend::Increasing);
    return res;
}

namespace {

std::vector<LyapunovPoint> scan_impl(const HalfLineOperator& H, const std::vector<double>& energies,
                                     std::int64_t n_max, bool parallel) {
    check_operator(H);
    require(n_max >= 16, Err::BadParams, "n_max too small for a schedule");
    const auto sched = geometric_schedule(8, n_max);
    std::vector<LyapunovPoint> out(energies.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(energies.size()); ++i) {
            const auto r = upper_lyapunov(H, energies[static_cast<std::size_t>(i)], sched);
            out[static_cast<std::size_t>(i)] = {energies[static_cast<std::size_t>(i)], r.estimate,
                                                r.positive};
        }
    } else {
        for (std::size_t i = 0; i < energies.size(); ++i) {
            const auto r = upper_lyapunov(H, energies[i], sched);
            out[i] = {energies[i], r.estimate, r.positive};
        }
    }
    return out;
}

}  // namespace

std::vector<LyapunovPoint> lyapunov_scan(const HalfLineOperator& H,
                                         const std::vector<double>& energies,
                                         std::int64_t n_max) {
    return scan_impl(H, energies, n_max, true);
}

std::vector<LyapunovPoint> lyapunov_scan_serial(const HalfLineOperator& H,
                                                const std::vector<double>& energies,
                                                std::int64_t n_max) {
    return scan_impl(H, energies, n_max, false);
}

std::string to_string(SubordinacyVerdict v) {
    switch (v) {
        case SubordinacyVerdict::TendsToZero: return "TendsToZero";
        case SubordinacyVerdict::BoundedAway: return "BoundedAway";
        default: return "Undetermined";
    }
}

SubordinacyResult subordinacy_functional(const HalfLineOperator& H, double E,
                                         const GaugeFunction& rho,
                                         const std::vector<double>& L_schedule) {
    require(!L_schedule.empty(), Err::InvalidGrid, "empty length schedule");
    const auto n_max = static_cast<std::int64_t>(std::ceil(L_schedule.back())) + 2;
    const SolutionPair pr = solve_u1_u2(H, E, n_max, L_schedule);

    SubordinacyResult res;
    for (std::size_t i = 0; i < L_schedule.size(); ++i) {
        const double l1 = pr.u1.log_norm2[i], l2 = pr.u2.log_norm2[i];
        const double s = 0.5 * (l1 + l2);  // ln(1/t) at this length
        if (!(s > rho.s_min)) continue;    // gauge not defined at this scale yet
        const double v = rho.log_form(s) + l1;
        res.lengths.push_back(L_schedule[i]);
        res.log_value.push_back(v);
        res.running_min.push_back(res.running_min.empty() ? v
                                                          : std::min(res.running_min.back(), v));
    }
    if (res.lengths.size() >= 4) {
        res.trend = classify_trend(res.lengths, res.running_min);
        switch (res.trend.cls) {
            case Trend::Decreasing: res.verdict = SubordinacyVerdict::TendsToZero; break;
            case Trend::Stable:
            case Trend::Increasing: res.verdict = SubordinacyVerdict::BoundedAway; break;
            default: res.verdict = SubordinacyVerdict::Undetermined;
        }
    }
    return res;
}

TransferSumResult transfer_sum_criterion(const HalfLineOperator& H, double E,
                                         const std::function<double(double)>& log_f,
                                         const std::vector<double>& L_schedule) {
    check_operator(H);
    require(static_cast<bool>(log_f), Err::BadParams, "growth function not set");
    require(!L_schedule.empty(), Err::InvalidGrid, "empty length schedule");
    require(L_schedule.front() >= 1.0, Err::BadParams, "lengths must be >= 1");
    for (std::size_t i = 1; i < L_schedule.size(); ++i)
        require(L_schedule[i] > L_schedule[i - 1], Err::BadParams, "lengths must be increasing");

    TransferProduct p(H, E);
    TransferSumResult res;
    double acc = kNegInf;
    std::size_t ci = 0;
    const auto n_end = static_cast<std::int64_t>(L_schedule.back());
    for (std::int64_t n = 1; n <= n_end && ci < L_schedule.size(); ++n) {
        p.step();
        acc = log_add_exp(acc, 2.0 * p.log_frobenius());
        while (ci < L_schedule.size() && static_cast<std::int64_t>(L_schedule[ci]) == n) {
            const double L = L_schedule[ci];
            const double lf = log_f(L);
            require(std::isfinite(lf), Err::BadParams, "growth function not finite");
            res.lengths.push_back(L);
            res.log_sum.push_back(acc);
            res.log_ratio.push_back(acc - lf);
            ++ci;
        }
    }
    const std::size_t tail = res.lengths.size() / 2;
    for (std::size_t i = tail; i < res.log_ratio.size(); ++i)
        res.limsup_log_ratio = std::max(res.limsup_log_ratio, res.log_ratio[i]);
    const double thresh = std::log(2.0) - 1e-9;
    for (double r : res.log_ratio) res.threshold_attained |= r >= thresh;
    return res;
}

SchnolResult schnol_trace(const HalfLineOperator& H, double E, double delta,
                          const std::vector<double>& L_schedule) {
    require(delta > 0.0, Err::BadParams, "delta must be positive");
    require(L_schedule.size() >= 4, Err::InvalidGrid, "need >= 4 lengths for a trend");
    require(L_schedule.front() >= 3.0, Err::BadParams, "lengths must be >= 3 (ln ln positivity)");
    const auto n_max = static_cast<std::int64_t>(std::ceil(L_schedule.back())) + 2;
    const SolutionPair pr = solve_u1_u2(H, E, n_max, L_schedule);

    SchnolResult res;
    res.lengths = L_schedule;
    res.log_ratio.reserve(L_schedule.size());
    for (std::size_t i = 0; i < L_schedule.size(); ++i) {
        const double L = L_schedule[i];
        res.log_ratio.push_back(pr.u1.log_norm2[i] - std::log(L) -
                                (1.0 + delta) * std::log(std::log(L)));
    }
    res.trend = classify_trend(res.lengths, res.log_ratio).cls;
    return res;
}

GaugeFunction bound_gauge(BoundGaugeKind kind, const std::function<double(double)>& log_f,
                          double param, double c) {
    if (kind == BoundGaugeKind::RhoBeta) return make_rho_beta(param);
    if (kind == BoundGaugeKind::FDelta) return make_f_delta(param);

    require(static_cast<bool>(log_f), Err::BadParams, "FromGrowth needs the growth function");
    require(param > 0.0, Err::BadParams, "delta must be positive");
    require(c > 0.0, Err::BadParams, "constant must be positive");
    const double delta = param;
    const double log_c = std::log(c);

    // w solving log_f(w) = y; bracket by doubling, then bisect.
    auto invert = [log_f](double y) -> double {
        double lo = -1.0, hi = 1.0;
        int guard = 0;
        while (log_f(hi) < y) {
            hi *= 2.0;
            require(++guard < 1100 && hi < 1e300, Err::NonInvertible,
                    "growth function never reaches the requested value");
        }
        while (log_f(lo) > y) {
            lo *= 2.0;
            require(++guard < 2200 && lo > -1e300, Err::NonInvertible,
                    "growth function has no lower branch for the requested value");
        }
        for (int it = 0; it < 400 && hi - lo > 1e-12 * std::max(1.0, std::fabs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (log_f(mid) < y)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    require(log_f(1.0) < log_f(8.0), Err::NonInvertible, "growth function must increase");

    GaugeFunction g;
    char buf[64];
    std::snprintf(buf, sizeof buf, "from_growth(delta=%g,c=%g)", delta, c);
    g.name = buf;
    // Need w = ln f^{-1}(c t^{-2}) > 1 so ln w stays positive.
    g.s_min = std::max(1.0, 0.5 * (log_f(1.0) - log_c) + 0.5);
    g.log_form = [invert, delta, log_c](double s) {
        const double w = invert(log_c + 2.0 * s);
        return -w - (1.0 + delta) * std::log(w);
    };
    return g;
}

}  // namespace specdim
