#include "twidist/warping.hpp"

#include <algorithm>
#include <stdexcept>

#include "twidist/words.hpp"

namespace twidist::warping {

namespace {

bool check_boundary(const std::vector<GridPoint>& points, GridOrder order) {
    if (points.empty()) return false;
    if (order.m < 1 || order.n < 1) return false;
    if (points.front() != GridPoint{1, 1}) return false;
    if (points.back() != GridPoint{order.m, order.n}) return false;
    for (const GridPoint& p : points)
        if (p.i < 1 || p.i > order.m || p.j < 1 || p.j > order.n) return false;
    return true;
}

}  // namespace

bool validate_path(const std::vector<GridPoint>& points, GridOrder order) {
    if (!check_boundary(points, order)) return false;
    for (std::size_t l = 1; l < points.size(); ++l) {
        const int di = points[l].i - points[l - 1].i;
        const int dj = points[l].j - points[l - 1].j;
        if (di < 0 || di > 1 || dj < 0 || dj > 1) return false;
        if (di == 0 && dj == 0) return false;
    }
    return true;
}

bool validate_walk(const std::vector<GridPoint>& points, GridOrder order) {
    if (!check_boundary(points, order)) return false;
    for (std::size_t l = 1; l < points.size(); ++l) {
        const int di = points[l].i - points[l - 1].i;
        const int dj = points[l].j - points[l - 1].j;
        if (di < 0 || di > 1 || dj < 0 || dj > 1) return false;
    }
    return true;
}

WarpingPath walk_to_path(const WarpingWalk& walk) {
    if (!validate_walk(walk.points, walk.order))
        throw std::invalid_argument("walk_to_path: invalid warping walk");
    WarpingPath p;
    p.order = walk.order;
    p.points = words::condense(walk.points);
    return p;
}

bool WarpingFunction::valid() const {
    if (domain_len < 1 || codomain_len < 1) return false;
    if (static_cast<int>(map.size()) != domain_len) return false;
    if (map.front() != 1 || map.back() != codomain_len) return false;
    for (std::size_t l = 1; l < map.size(); ++l) {
        const int step = map[l] - map[l - 1];
        if (step < 0 || step > 1) return false;  // monotone and surjective
    }
    return true;
}

WarpingFunction WarpingFunction::identity(int n) {
    WarpingFunction f{n, n, {}};
    f.map.resize(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) f.map[static_cast<std::size_t>(l)] = l + 1;
    return f;
}

TimeSeries apply_warping(const WarpingFunction& f, const TimeSeries& x) {
    if (f.codomain_len != static_cast<int>(x.size()))
        throw std::invalid_argument("apply_warping: codomain length does not match series length");
    TimeSeries out(f.map.size());
    for (std::size_t l = 0; l < f.map.size(); ++l)
        out[l] = x[static_cast<std::size_t>(f.map[l] - 1)];
    return out;
}

WarpingFunction compose_warping(const WarpingFunction& inner, const WarpingFunction& outer) {
    if (inner.codomain_len != outer.domain_len)
        throw std::invalid_argument("compose_warping: codomain/domain mismatch");
    WarpingFunction h{inner.domain_len, outer.codomain_len, {}};
    h.map.resize(inner.map.size());
    for (std::size_t l = 0; l < inner.map.size(); ++l)
        h.map[l] = outer.map[static_cast<std::size_t>(inner.map[l] - 1)];
    return h;
}

std::pair<WarpingFunction, WarpingFunction> path_projections(const WarpingPath& p) {
    WarpingFunction phi{static_cast<int>(p.points.size()), p.order.m, {}};
    WarpingFunction psi{static_cast<int>(p.points.size()), p.order.n, {}};
    phi.map.reserve(p.points.size());
    psi.map.reserve(p.points.size());
    for (const GridPoint& q : p.points) {
        phi.map.push_back(q.i);
        psi.map.push_back(q.j);
    }
    return {phi, psi};
}

std::pair<TimeSeries, TimeSeries> path_expansions(const WarpingPath& p, const TimeSeries& x,
                                                  const TimeSeries& y) {
    if (p.order.m != static_cast<int>(x.size()) || p.order.n != static_cast<int>(y.size()))
        throw std::invalid_argument("path_expansions: order does not match series lengths");
    TimeSeries ex, ey;
    ex.reserve(p.points.size());
    ey.reserve(p.points.size());
    for (const GridPoint& q : p.points) {
        ex.push_back(x[static_cast<std::size_t>(q.i - 1)]);
        ey.push_back(y[static_cast<std::size_t>(q.j - 1)]);
    }
    return {ex, ey};
}

double cost_along(const std::vector<GridPoint>& points, GridOrder order, const TimeSeries& x,
                  const TimeSeries& y) {
    if (order.m != static_cast<int>(x.size()) || order.n != static_cast<int>(y.size()))
        throw std::invalid_argument("cost_along: order does not match series lengths");
    double cost = 0.0;
    for (const GridPoint& q : points) {
        const double d = x[static_cast<std::size_t>(q.i - 1)] - y[static_cast<std::size_t>(q.j - 1)];
        cost += d * d;
    }
    return cost;
}

namespace {

void dfs_paths(int m, int n, std::vector<GridPoint>& stack,
               const std::function<void(const WarpingPath&)>& sink) {
    const GridPoint cur = stack.back();
    if (cur.i == m && cur.j == n) {
        sink(WarpingPath{{m, n}, stack});
        return;
    }
    // step priority: diagonal, then down (i+1), then right (j+1)
    const GridPoint steps[3] = {{cur.i + 1, cur.j + 1}, {cur.i + 1, cur.j}, {cur.i, cur.j + 1}};
    for (const GridPoint& nx : steps) {
        if (nx.i > m || nx.j > n) continue;
        stack.push_back(nx);
        dfs_paths(m, n, stack, sink);
        stack.pop_back();
    }
}

void dfs_walks(int m, int n, std::size_t max_len, std::vector<GridPoint>& stack,
               const std::function<void(const WarpingWalk&)>& sink) {
    const GridPoint cur = stack.back();
    if (cur.i == m && cur.j == n) sink(WarpingWalk{{m, n}, stack});
    if (stack.size() == max_len) return;
    const GridPoint steps[4] = {
        {cur.i, cur.j}, {cur.i + 1, cur.j + 1}, {cur.i + 1, cur.j}, {cur.i, cur.j + 1}};
    for (const GridPoint& nx : steps) {
        if (nx.i > m || nx.j > n) continue;
        stack.push_back(nx);
        dfs_walks(m, n, max_len, stack, sink);
        stack.pop_back();
    }
}

}  // namespace

void for_each_path(int m, int n, const std::function<void(const WarpingPath&)>& sink) {
    if (m < 1 || n < 1) throw std::invalid_argument("for_each_path: order must be positive");
    std::vector<GridPoint> stack{{1, 1}};
    dfs_paths(m, n, stack, sink);
}

void for_each_walk(int m, int n, std::size_t max_len,
                   const std::function<void(const WarpingWalk&)>& sink) {
    if (m < 1 || n < 1) throw std::invalid_argument("for_each_walk: order must be positive");
    if (max_len == 0) return;
    std::vector<GridPoint> stack{{1, 1}};
    dfs_walks(m, n, max_len, stack, sink);
}

std::size_t count_paths(int m, int n) {
    std::size_t count = 0;
    for_each_path(m, n, [&](const WarpingPath&) { ++count; });
    return count;
}

std::pair<WarpingFunction, WarpingFunction> pullback_equalizer(const WarpingFunction& f,
                                                               const WarpingFunction& g) {
    if (!f.valid() || !g.valid())
        throw std::invalid_argument("pullback_equalizer: inputs must be warping functions");
    if (f.codomain_len != g.codomain_len)
        throw std::invalid_argument("pullback_equalizer: codomains differ");

    // Fibers of a warping function are contiguous index ranges; record the
    // start of each fiber for both functions.
    const int n = f.codomain_len;
    std::vector<int> f_lo(static_cast<std::size_t>(n) + 1, 0), f_hi(static_cast<std::size_t>(n) + 1, -1);
    std::vector<int> g_lo = f_lo, g_hi = f_hi;
    for (int l = 0; l < f.domain_len; ++l) {
        const int i = f.map[static_cast<std::size_t>(l)];
        if (f_hi[static_cast<std::size_t>(i)] < 0) f_lo[static_cast<std::size_t>(i)] = l + 1;
        f_hi[static_cast<std::size_t>(i)] = l + 1;
    }
    for (int l = 0; l < g.domain_len; ++l) {
        const int i = g.map[static_cast<std::size_t>(l)];
        if (g_hi[static_cast<std::size_t>(i)] < 0) g_lo[static_cast<std::size_t>(i)] = l + 1;
        g_hi[static_cast<std::size_t>(i)] = l + 1;
    }

    WarpingFunction theta{0, f.domain_len, {}};
    WarpingFunction theta2{0, g.domain_len, {}};
    for (int i = 1; i <= n; ++i) {
        const int ka = f_hi[static_cast<std::size_t>(i)] - f_lo[static_cast<std::size_t>(i)];
        const int kb = g_hi[static_cast<std::size_t>(i)] - g_lo[static_cast<std::size_t>(i)];
        const int steps = std::max(ka, kb);
        for (int t = 0; t <= steps; ++t) {
            theta.map.push_back(f_lo[static_cast<std::size_t>(i)] + std::min(t, ka));
            theta2.map.push_back(g_lo[static_cast<std::size_t>(i)] + std::min(t, kb));
        }
    }
    theta.domain_len = static_cast<int>(theta.map.size());
    theta2.domain_len = static_cast<int>(theta2.map.size());
    return {theta, theta2};
}

}  // namespace twidist::warping
