#include "marclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marclab {

void NumericPolicy::validate() const {
    if (grid_points_per_piece < 8) throw std::invalid_argument("NumericPolicy: G must be >= 8");
    if (!(tol_rel > 0)) throw std::invalid_argument("NumericPolicy: tol_rel must be positive");
    if (oracle_grid < 16) throw std::invalid_argument("NumericPolicy: oracle grid too small");
}

namespace num {
namespace {

// Golden-section maximization on [lo, hi]; h is assumed continuous there.
SupResult golden_max(const std::function<double(double)>& h, double lo, double hi,
                     double tol_rel) {
    const double gr = 0.6180339887498949;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double hc = h(c), hd = h(d);
    int guard = 200;
    while (hi - lo > tol_rel * std::max({std::fabs(lo), std::fabs(hi), 1e-300}) && guard-- > 0) {
        if (hc < hd) {
            lo = c;
            c = d;
            hc = hd;
            d = lo + gr * (hi - lo);
            hd = h(d);
        } else {
            hi = d;
            d = c;
            hd = hc;
            c = hi - gr * (hi - lo);
            hc = h(c);
        }
    }
    if (hc >= hd) return {hc, c};
    return {hd, d};
}

}  // namespace

std::vector<double> domain_grid(double L, const NumericPolicy& pol) {
    std::vector<double> g;
    if (std::isinf(L)) {
        for (double t = 1.0; t > 1e-14; t *= 0.5) g.push_back(t);
        for (double t = 2.0; t <= pol.horizon; t *= 2.0) g.push_back(t);
    } else {
        for (int j = 1; j <= 48; ++j) g.push_back(L * std::ldexp(1.0, -j));
        for (int j = 1; j <= 30; ++j) g.push_back(L * (1.0 - std::ldexp(1.0, -j)));
        int n = pol.grid_points_per_piece * 4;
        for (int i = 1; i < n; ++i) g.push_back(L * i / n);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

SupResult sup_refined(const std::function<double(double)>& h, double a, double b,
                      std::span<const double> knots, const NumericPolicy& pol) {
    if (!(a < b)) throw std::invalid_argument("sup_refined: empty interval");

    std::vector<double> pts;
    const bool unbounded = std::isinf(b);
    double span = unbounded ? 1.0 : b - a;

    // geometric approach to the open endpoints
    for (int j = 0; j <= 46; ++j) {
        pts.push_back(a + span * std::ldexp(1.0, -j) * 0.5);
        if (!unbounded) pts.push_back(b - span * std::ldexp(1.0, -j) * 0.5);
    }
    if (unbounded) {
        for (double t = std::max(a, 1e-12) * 2; t <= pol.horizon; t *= 2.0)
            if (t > a) pts.push_back(t);
    } else {
        for (int i = 1; i < pol.grid_points_per_piece; ++i)
            pts.push_back(a + span * i / pol.grid_points_per_piece);
    }
    for (double k : knots)
        if (k > a && k < b) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> vals(pts.size());
    SupResult best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = h(pts[i]);
        if (vals[i] > best.value) best = {vals[i], pts[i]};
    }
    if (std::isinf(best.value)) return best;

    // refine around the three best samples
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(3, order.size()),
                      order.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
    for (std::size_t r = 0; r < std::min<std::size_t>(3, order.size()); ++r) {
        std::size_t i = order[r];
        double lo = i == 0 ? pts[i] : pts[i - 1];
        double hi = i + 1 == pts.size() ? pts[i] : pts[i + 1];
        if (hi <= lo) continue;
        SupResult g = golden_max(h, lo, hi, pol.tol_rel);
        if (g.value > best.value) best = g;
    }
    return best;
}

SupResult inf_refined(const std::function<double(double)>& h, double a, double b,
                      std::span<const double> knots, const NumericPolicy& pol) {
    auto neg = [&h](double t) { return -h(t); };
    SupResult r = sup_refined(neg, a, b, knots, pol);
    return {-r.value, r.arg};
}

}  // namespace num
}  // namespace marclab
