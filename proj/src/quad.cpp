#include "quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace isoc::quad {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Rows: {abscissa, Gauss weight, Kronrod weight}; abscissae are used as +-x.
constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double a, b;
    double value;
    double error;
};

using Integrand = std::function<double(double)>;

Panel g7k15(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    if (!std::isfinite(y0)) throw EvaluationError("integrand returned a non-finite value");
    double g7 = kG7K15[0][1] * y0;
    double k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i][0];
        const double yl = f(mid - dx);
        const double yr = f(mid + dx);
        if (!std::isfinite(yl) || !std::isfinite(yr))
            throw EvaluationError("integrand returned a non-finite value");
        g7 += kG7K15[i][1] * (yl + yr);
        k15 += kG7K15[i][2] * (yl + yr);
    }
    g7 *= half;
    k15 *= half;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

// One finite segment, already transformed to remove endpoint trouble.
struct Segment {
    Integrand f;
    double a, b;
};

constexpr double kAbsFloor = 1e-300;
constexpr int kMaxPanels = 20000;

IntegralResult adaptive(const std::vector<Segment>& segments, double rel_tol) {
    struct Item {
        Panel p;
        int seg;
    };
    struct ItemOrder {
        bool operator()(const Item& x, const Item& y) const {
            if (x.p.error != y.p.error) return x.p.error < y.p.error;
            if (x.seg != y.seg) return x.seg > y.seg;
            return x.p.a < y.p.a;
        }
    };
    std::priority_queue<Item, std::vector<Item>, ItemOrder> items;
    double total = 0.0, total_err = 0.0;
    int n_panels = 0;
    for (size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.b <= s.a) continue;
        // seed with two panels so the initial error estimate is honest
        const double mid = 0.5 * (s.a + s.b);
        for (auto [a, b] : {std::pair{s.a, mid}, std::pair{mid, s.b}}) {
            Panel p = g7k15(s.f, a, b);
            total += p.value;
            total_err += p.error;
            items.push({p, static_cast<int>(i)});
            ++n_panels;
        }
    }
    while (total_err > std::max(rel_tol * std::abs(total), kAbsFloor)) {
        if (items.empty()) break;
        if (n_panels >= kMaxPanels)
            throw AccuracyError("integrate: refinement budget exhausted", total, total_err);
        Item worst = items.top();
        items.pop();
        total -= worst.p.value;
        total_err -= worst.p.error;
        const double mid = 0.5 * (worst.p.a + worst.p.b);
        if (mid <= worst.p.a || mid >= worst.p.b) {
            // interval at machine resolution; accept as is
            total += worst.p.value;
            continue;
        }
        const auto& f = segments[static_cast<size_t>(worst.seg)].f;
        Panel left = g7k15(f, worst.p.a, mid);
        Panel right = g7k15(f, mid, worst.p.b);
        total += left.value + right.value;
        total_err += left.error + right.error;
        items.push({left, worst.seg});
        items.push({right, worst.seg});
        n_panels += 2;
    }
    return {total, total_err};
}

// Removes an integrable endpoint singularity (t - a)^sigma, sigma in (-1, 0),
// by the substitution t = a + u^(1/(1+sigma)).
Segment desingularize(Integrand f, double a, double b, double sigma) {
    if (sigma > -1e-12 || sigma <= -1.0) {
        return Segment{std::move(f), a, b};
    }
    const double e = 1.0 + sigma;  // in (0, 1)
    const double ub = std::pow(b - a, e);
    auto g = [f = std::move(f), a, e](double u) {
        const double t = a + std::pow(u, 1.0 / e);
        return f(t) * std::pow(u, 1.0 / e - 1.0) / e;
    };
    return Segment{std::move(g), 0.0, ub};
}

// Maps [L, inf) with power tail t^-tau onto (0, 1] via u = L / t; the induced
// endpoint exponent tau - 2 is removed by desingularize when negative.
Segment tail_power(Integrand f, double L, double tau) {
    auto g = [f = std::move(f), L](double u) {
        const double t = L / u;
        return f(t) * L / (u * u);
    };
    return desingularize(std::move(g), 0.0, 1.0, tau - 2.0);
}

// Maps [L, inf) with super-polynomial decay onto (0, 1] via t = L - ln v.
Segment tail_exponential(Integrand f, double L) {
    auto g = [f = std::move(f), L](double v) { return f(L - std::log(v)) / v; };
    return Segment{std::move(g), 0.0, 1.0};
}

}  // namespace

IntegralResult integrate(const IntegralSpec& spec) {
    require(static_cast<bool>(spec.integrand), "integrate: missing integrand");
    require(spec.lower >= 0.0, "integrate: lower bound must be >= 0");
    require(spec.upper > spec.lower, "integrate: empty or inverted interval");
    require(spec.rel_tol > 0.0, "integrate: rel_tol must be positive");
    if (spec.singularity_exponent <= -1.0)
        throw DivergenceError("integrate: declared endpoint exponent <= -1, integral diverges");

    std::vector<Segment> segments;
    if (std::isinf(spec.upper)) {
        if (spec.tail_exponent <= 1.0)
            throw DivergenceError("integrate: declared tail exponent <= 1, integral diverges");
        const bool power_tail = std::isfinite(spec.tail_exponent);
        if (spec.lower > 0.0) {
            if (power_tail)
                segments.push_back(tail_power(spec.integrand, spec.lower, spec.tail_exponent));
            else
                segments.push_back(tail_exponential(spec.integrand, spec.lower));
        } else {
            segments.push_back(
                desingularize(spec.integrand, 0.0, 1.0, spec.singularity_exponent));
            if (power_tail)
                segments.push_back(tail_power(spec.integrand, 1.0, spec.tail_exponent));
            else
                segments.push_back(tail_exponential(spec.integrand, 1.0));
        }
    } else {
        segments.push_back(desingularize(spec.integrand, spec.lower, spec.upper,
                                         spec.singularity_exponent));
    }
    return adaptive(segments, spec.rel_tol);
}

const char* attainment_name(Attainment a) {
    switch (a) {
        case Attainment::interior: return "interior";
        case Attainment::limit_at_zero: return "limit_at_zero";
        case Attainment::limit_at_infinity: return "limit_at_infinity";
    }
    return "unknown";
}

namespace {

double checked_eval(const std::function<double(double)>& f, double s) {
    const double v = f(s);
    if (!std::isfinite(v))
        throw EvaluationError("sup_scan: objective returned a non-finite value at s=" +
                              std::to_string(s));
    return v;
}

// Aitken delta-squared limit from three consecutive decade samples.
double aitken_limit(double v1, double v2, double v3) {
    const double d1 = v2 - v1;
    const double d2 = v3 - v2;
    if (d1 == d2 || d1 == 0.0) return v3;
    const double rho = d2 / d1;
    if (!(std::abs(rho) < 1.0)) return v3;
    return v3 + d2 * rho / (1.0 - rho);
}

struct BoundaryLimit {
    double value;
    int decades;
    bool dropped;   // objective fell off the plateau: max is interior after all
};

// Follows the objective decade by decade past the grid edge (direction = +1
// toward +inf, -1 toward 0) until the Aitken limit of the decade samples
// stabilises to rel_tol.
BoundaryLimit follow_boundary(const std::function<double(double)>& objective, double edge,
                              int direction, double grid_max, double plateau_eps,
                              double rel_tol, int max_decades) {
    double v1 = checked_eval(objective, edge * std::pow(10.0, -2.0 * direction));
    double v2 = checked_eval(objective, edge * std::pow(10.0, -1.0 * direction));
    double v3 = checked_eval(objective, edge);
    double L_prev = aitken_limit(v1, v2, v3);
    int stable = 0;
    double L = L_prev;
    for (int j = 1; j <= max_decades; ++j) {
        const double s = edge * std::pow(10.0, direction * j);
        if (s <= 0.0 || !std::isfinite(s)) break;
        const double v = checked_eval(objective, s);
        if (v < grid_max - 3.0 * plateau_eps) {
            return {grid_max, j, true};
        }
        v1 = v2;
        v2 = v3;
        v3 = v;
        L = aitken_limit(v1, v2, v3);
        if (std::abs(L - L_prev) <= rel_tol * std::max(std::abs(L), 1e-300)) {
            if (++stable >= 2) return {std::max(L, grid_max), j, false};
        } else {
            stable = 0;
        }
        L_prev = L;
    }
    // Not stabilised: geometric growth means no finite limit.
    const double d1 = v2 - v1, d2 = v3 - v2;
    if (d2 > 0.0 && d2 >= 0.9 * d1 && v3 > grid_max + plateau_eps)
        throw DivergenceError("sup_scan: objective increases without a finite limit");
    throw AccuracyError("sup_scan: boundary extrapolation did not stabilise", L, std::abs(L - L_prev));
}

}  // namespace

SupremumResult sup_scan(const std::function<double(double)>& objective,
                        const ScanOptions& options) {
    require(options.lo > 0.0 && options.hi > options.lo, "sup_scan: invalid scan range");
    require(options.points_per_decade >= 2, "sup_scan: need at least 2 points per decade");
    require(options.rel_tol > 0.0, "sup_scan: rel_tol must be positive");

    const double le0 = std::log10(options.lo);
    const double le1 = std::log10(options.hi);
    const int n = static_cast<int>(std::ceil((le1 - le0) * options.points_per_decade)) + 1;
    const double step = (le1 - le0) / (n - 1);

    std::vector<double> s(n), v(n);
    int best = 0;
    for (int i = 0; i < n; ++i) {
        s[i] = std::pow(10.0, le0 + step * i);
        v[i] = checked_eval(objective, s[i]);
        if (v[i] > v[best]) best = i;  // strict: ties keep the smallest s
    }
    const double M = v[best];
    const double plateau_eps = std::max(10.0 * options.rel_tol, 1e-12) * std::max(std::abs(M), 1e-300);
    const bool left_tied = v.front() >= M - plateau_eps;
    const bool right_tied = v.back() >= M - plateau_eps;

    if (left_tied && right_tied) {
        // Flat to tolerance across the whole grid: equal maxima resolve to
        // the smallest s.
        return {s.front(), M, Attainment::interior, n, 0};
    }
    if (right_tied) {
        if (options.limit_at_infinity) {
            return {kInf, *options.limit_at_infinity, Attainment::limit_at_infinity, n, 0};
        }
        BoundaryLimit bl = follow_boundary(objective, options.hi, +1, M, plateau_eps,
                                           options.rel_tol, options.max_extension_decades);
        if (!bl.dropped)
            return {kInf, bl.value, Attainment::limit_at_infinity, n, bl.decades};
    } else if (left_tied) {
        if (options.limit_at_zero) {
            return {0.0, *options.limit_at_zero, Attainment::limit_at_zero, n, 0};
        }
        BoundaryLimit bl = follow_boundary(objective, options.lo, -1, M, plateau_eps,
                                           options.rel_tol, options.max_extension_decades);
        if (!bl.dropped)
            return {0.0, bl.value, Attainment::limit_at_zero, n, bl.decades};
    }

    // Interior maximum: golden-section refinement in log coordinates on the
    // bracket around the best grid point.
    const int ilo = std::max(0, best - 1);
    const int ihi = std::min(n - 1, best + 1);
    double xa = std::log(s[ilo]);
    double xb = std::log(s[ihi]);
    double best_x = std::log(s[best]);
    double best_v = M;
    const double inv_phi = 0.6180339887498949;
    double xc = xb - inv_phi * (xb - xa);
    double xd = xa + inv_phi * (xb - xa);
    double vc = checked_eval(objective, std::exp(xc));
    double vd = checked_eval(objective, std::exp(xd));
    int iters = 0;
    while (xb - xa > options.rel_tol && iters < 300) {
        ++iters;
        if (vc >= vd) {  // prefer the left half on ties (smallest s)
            xb = xd;
            xd = xc;
            vd = vc;
            xc = xb - inv_phi * (xb - xa);
            vc = checked_eval(objective, std::exp(xc));
        } else {
            xa = xc;
            xc = xd;
            vc = vd;
            xd = xa + inv_phi * (xb - xa);
            vd = checked_eval(objective, std::exp(xd));
        }
        const double vx = std::max(vc, vd);
        const double xx = (vc >= vd) ? xc : xd;
        if (vx > best_v || (vx == best_v && xx < best_x)) {
            best_v = vx;
            best_x = xx;
        }
    }
    return {std::exp(best_x), best_v, Attainment::interior, n, iters};
}

double cumulative_tail(const WeightedMeasure& m, double x, double rel_tol) {
    require(x >= 0.0, "cumulative_tail: x must be >= 0");
    if (m.tail_exponent <= 1.0)
        throw DivergenceError("cumulative_tail: measure '" + m.name + "' has divergent tail");
    IntegralSpec spec;
    spec.integrand = m.density;
    spec.lower = x;
    spec.upper = kInf;
    spec.singularity_exponent = (x == 0.0) ? m.singularity_exponent : 0.0;
    spec.tail_exponent = m.tail_exponent;
    spec.rel_tol = rel_tol;
    return integrate(spec).value;
}

double cumulative_mass(const WeightedMeasure& m, double x, double rel_tol) {
    require(x >= 0.0, "cumulative_mass: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (m.singularity_exponent <= -1.0)
        throw DivergenceError("cumulative_mass: measure '" + m.name +
                              "' is not integrable near 0");
    IntegralSpec spec;
    spec.integrand = m.density;
    spec.lower = 0.0;
    spec.upper = x;
    spec.singularity_exponent = m.singularity_exponent;
    spec.rel_tol = rel_tol;
    return integrate(spec).value;
}

}  // namespace isoc::quad
