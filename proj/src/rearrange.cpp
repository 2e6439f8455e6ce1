#include "rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace isoc::rearrange {

namespace {

Rational qabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational qpow(const Rational& x, long p) {
    require(p >= 1, "rational power: exponent must be >= 1");
    Rational r(1);
    for (long i = 0; i < p; ++i) r *= x;
    return r;
}

// 15-point Gauss-Legendre on [a, b]; enough for the short smooth cells the
// radial path produces.
template <typename F>
double gauss15(const F& f, double a, double b) {
    static const double X[8] = {0.000000000000000, 0.201194093997435, 0.394151347077563,
                                0.570972172608539, 0.724417731360170, 0.848206583410427,
                                0.937273392400706, 0.987992518020485};
    static const double W[8] = {0.202578241925561, 0.198431485327112, 0.186161000015562,
                                0.166269205816994, 0.139570677926154, 0.107159220467172,
                                0.070366047488108, 0.030753241996117};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = W[0] * f(mid);
    for (int i = 1; i < 8; ++i)
        sum += W[i] * (f(mid - half * X[i]) + f(mid + half * X[i]));
    return sum * half;
}

}  // namespace

Rational StepFunction::total_width() const { return edges.back() - edges.front(); }

StepFunction make_step(std::vector<Rational> edges, std::vector<Rational> values) {
    require(edges.size() == values.size() + 1, "step function: need one more edge than values");
    require(!values.empty(), "step function: empty");
    for (size_t i = 1; i < edges.size(); ++i)
        require(edges[i] > edges[i - 1], "step function: edges must be strictly increasing");
    return {std::move(edges), std::move(values)};
}

StepFunction make_unit_steps(std::vector<Rational> values) {
    std::vector<Rational> edges(values.size() + 1);
    for (size_t i = 0; i < edges.size(); ++i) edges[i] = Rational(static_cast<long>(i));
    return make_step(std::move(edges), std::move(values));
}

Rational distribution_function(const StepFunction& u, const Rational& t) {
    Rational total(0);
    for (size_t i = 0; i < u.values.size(); ++i)
        if (qabs(u.values[i]) > t) total += u.edges[i + 1] - u.edges[i];
    return total;
}

StepFunction decreasing_rearrangement(const StepFunction& u) {
    std::vector<std::pair<Rational, Rational>> cells;  // (|value|, width)
    cells.reserve(u.values.size());
    for (size_t i = 0; i < u.values.size(); ++i)
        cells.emplace_back(qabs(u.values[i]), u.edges[i + 1] - u.edges[i]);
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    StepFunction out;
    out.edges.push_back(Rational(0));
    Rational pos(0);
    for (auto& [v, w] : cells) {
        if (!out.values.empty() && out.values.back() == v) {
            pos += w;
            out.edges.back() = pos;
        } else {
            out.values.push_back(v);
            pos += w;
            out.edges.push_back(pos);
        }
    }
    return out;
}

CavalieriExact check_cavalieri(const StepFunction& u, long p) {
    require(p >= 1, "check_cavalieri: p must be >= 1");
    Rational lhs(0);
    for (size_t i = 0; i < u.values.size(); ++i)
        lhs += qpow(qabs(u.values[i]), p) * (u.edges[i + 1] - u.edges[i]);
    const StepFunction star = decreasing_rearrangement(u);
    Rational rhs(0);
    for (size_t i = 0; i < star.values.size(); ++i)
        rhs += qpow(star.values[i], p) * (star.edges[i + 1] - star.edges[i]);
    return {lhs, rhs, qabs(lhs - rhs)};
}

namespace {

// Values of f on the common refinement of two step functions sharing the
// same total interval.
std::vector<std::pair<Rational, std::pair<Rational, Rational>>> common_refinement(
    const StepFunction& u, const StepFunction& v) {
    std::vector<Rational> edges;
    edges.reserve(u.edges.size() + v.edges.size());
    std::merge(u.edges.begin(), u.edges.end(), v.edges.begin(), v.edges.end(),
               std::back_inserter(edges));
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<std::pair<Rational, std::pair<Rational, Rational>>> out;  // (width, (u, v))
    size_t iu = 0, iv = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        while (iu + 1 < u.values.size() && u.edges[iu + 1] <= edges[i]) ++iu;
        while (iv + 1 < v.values.size() && v.edges[iv + 1] <= edges[i]) ++iv;
        out.push_back({edges[i + 1] - edges[i], {u.values[iu], v.values[iv]}});
    }
    return out;
}

}  // namespace

HardyLittlewoodResult check_hardy_littlewood(const StepFunction& u, const StepFunction& v) {
    require(u.edges.front() == v.edges.front() && u.edges.back() == v.edges.back(),
            "check_hardy_littlewood: functions must share the same interval");
    Rational lhs(0);
    for (auto& [w, uv] : common_refinement(u, v)) lhs += uv.first * uv.second * w;
    const StepFunction us = decreasing_rearrangement(u);
    const StepFunction vs = decreasing_rearrangement(v);
    // Rearranged functions live on [0, width); pad the shorter support with
    // zeros via a shared edge list.
    Rational rhs(0);
    {
        std::vector<Rational> edges;
        std::merge(us.edges.begin(), us.edges.end(), vs.edges.begin(), vs.edges.end(),
                   std::back_inserter(edges));
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        size_t iu = 0, iv = 0;
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            const Rational& a = edges[i];
            while (iu + 1 < us.values.size() && us.edges[iu + 1] <= a) ++iu;
            while (iv + 1 < vs.values.size() && vs.edges[iv + 1] <= a) ++iv;
            const bool u_in = a < us.edges.back();
            const bool v_in = a < vs.edges.back();
            if (u_in && v_in)
                rhs += us.values[iu] * vs.values[iv] * (edges[i + 1] - edges[i]);
        }
    }
    return {lhs, rhs};
}

// --- radial path ----------------------------------------------------------

double PiecewiseLinear::operator()(double t) const {
    if (x.empty() || t < x.front() || t > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), t);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    const size_t i = static_cast<size_t>(it - x.begin());
    const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + w * (y[i] - y[i - 1]);
}

double PiecewiseLinear::max_value() const {
    double m = 0.0;
    for (double v : y) m = std::max(m, v);
    return m;
}

PiecewiseLinear make_piecewise_linear(std::vector<double> x, std::vector<double> y) {
    require(x.size() == y.size() && x.size() >= 2, "piecewise linear: need >= 2 nodes");
    for (size_t i = 1; i < x.size(); ++i)
        require(x[i] > x[i - 1], "piecewise linear: nodes must be strictly increasing");
    for (double v : y) require(std::isfinite(v), "piecewise linear: non-finite value");
    return {std::move(x), std::move(y)};
}

double distribution_function_radial(const PiecewiseLinear& phi,
                                    const profile::ModelGeometry& g, double t) {
    if (t < 0.0) return kInf;  // infinite-volume manifold
    double total = 0.0;
    for (size_t i = 0; i + 1 < phi.x.size(); ++i) {
        const double ra = phi.x[i], rb = phi.x[i + 1];
        const double ya = std::abs(phi.y[i]), yb = std::abs(phi.y[i + 1]);
        if (ya <= t && yb <= t) continue;
        double lo = ra, hi = rb;
        if (ya <= t || yb <= t) {
            const double rc = ra + (t - ya) * (rb - ra) / (yb - ya);
            if (ya > t) hi = rc;
            else lo = rc;
        }
        if (hi > lo) total += (lo > 0.0 ? g.V(hi) - g.V(lo) : g.V(hi));
    }
    return total;
}

PiecewiseLinear decreasing_rearrangement_radial(const PiecewiseLinear& phi,
                                                const profile::ModelGeometry& g, int levels) {
    require(levels >= 2, "rearrangement: need at least 2 levels");
    const double top = phi.max_value();
    if (top == 0.0) return make_piecewise_linear({0.0, 1.0}, {0.0, 0.0});

    std::vector<double> ts;
    ts.reserve(static_cast<size_t>(levels) + phi.y.size() + 1);
    for (int j = 0; j <= levels; ++j) ts.push_back(top * j / levels);
    for (double v : phi.y)
        if (v > 0.0 && v < top) ts.push_back(v);
    std::sort(ts.begin(), ts.end(), std::greater<>());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    // One point per level: s = nu(t), traversed with t descending so s is
    // nondecreasing; duplicate s keep the highest t.
    std::vector<double> xs, ys;
    xs.reserve(ts.size());
    ys.reserve(ts.size());
    for (double t : ts) {
        const double s = distribution_function_radial(phi, g, t);
        if (!xs.empty() && s <= xs.back()) continue;
        xs.push_back(s);
        ys.push_back(t);
    }
    if (xs.empty() || xs.front() > 0.0) {
        xs.insert(xs.begin(), 0.0);
        ys.insert(ys.begin(), top);
    }
    if (xs.size() < 2) {
        xs.push_back(xs.back() + 1.0);
        ys.push_back(0.0);
    }
    return make_piecewise_linear(std::move(xs), std::move(ys));
}

PairCheck check_cavalieri_radial(const PiecewiseLinear& phi, const profile::ModelGeometry& g,
                                 double p, int levels) {
    require(p >= 1.0, "check_cavalieri_radial: p must be >= 1");
    double lhs = 0.0;
    for (size_t i = 0; i + 1 < phi.x.size(); ++i) {
        lhs += gauss15(
            [&](double r) { return std::pow(std::abs(phi(r)), p) * g.A(r); },
            phi.x[i], phi.x[i + 1]);
    }
    const PiecewiseLinear star = decreasing_rearrangement_radial(phi, g, levels);
    double rhs = 0.0;
    for (size_t i = 0; i + 1 < star.x.size(); ++i) {
        rhs += gauss15([&](double s) { return std::pow(star(s), p); }, star.x[i], star.x[i + 1]);
    }
    return {lhs, rhs};
}

PairCheck check_polya_szego(const PiecewiseLinear& phi, const profile::ModelGeometry& g,
                            const profile::IsoperimetricProfile& prof, double p, int levels) {
    require(p >= 1.0, "check_polya_szego: p must be >= 1");
    require(phi.y.back() == 0.0, "check_polya_szego: phi must vanish at the support edge");
    require(phi.x.front() == 0.0 || phi.y.front() == 0.0,
            "check_polya_szego: phi must be defined from r = 0 or start at 0");
    for (double v : phi.y) require(v >= 0.0, "check_polya_szego: phi must be nonnegative");

    const PiecewiseLinear star = decreasing_rearrangement_radial(phi, g, levels);
    double lhs = 0.0;
    for (size_t i = 0; i + 1 < star.x.size(); ++i) {
        const double slope = (star.y[i + 1] - star.y[i]) / (star.x[i + 1] - star.x[i]);
        if (slope >= 0.0) continue;  // constant cells contribute 0
        lhs += std::pow(-slope, p) *
               gauss15([&](double s) { return std::pow(prof.h(s), p); }, star.x[i], star.x[i + 1]);
    }
    double rhs = 0.0;
    for (size_t i = 0; i + 1 < phi.x.size(); ++i) {
        const double slope = (phi.y[i + 1] - phi.y[i]) / (phi.x[i + 1] - phi.x[i]);
        if (slope == 0.0) continue;
        const double va = phi.x[i] > 0.0 ? g.V(phi.x[i]) : 0.0;
        rhs += std::pow(std::abs(slope), p) * (g.V(phi.x[i + 1]) - va);
    }
    return {lhs, rhs};
}

}  // namespace isoc::rearrange
