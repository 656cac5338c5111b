#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "twidist/core.hpp"

namespace twidist::warping {

/// Point in the [m] x [n] grid, 1-based as in all serialized output.
struct GridPoint {
    int i = 0;
    int j = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct GridOrder {
    int m = 0;
    int n = 0;
    friend bool operator==(const GridOrder&, const GridOrder&) = default;
};

/// Monotone grid traversal from (1,1) to (m,n) with steps {(1,0),(0,1),(1,1)}.
struct WarpingPath {
    GridOrder order;
    std::vector<GridPoint> points;
};

/// Path relaxed to the weak step condition: zero-steps may duplicate points.
struct WarpingWalk {
    GridOrder order;
    std::vector<GridPoint> points;
};

bool validate_path(const std::vector<GridPoint>& points, GridOrder order);
bool validate_walk(const std::vector<GridPoint>& points, GridOrder order);

/// Removes consecutive duplicate points; the condensed form of a valid walk
/// is a valid path of the same order.
WarpingPath walk_to_path(const WarpingWalk& walk);

/// Surjective, monotonically non-decreasing index map [domain_len] -> [codomain_len].
/// The associated 0/1 matrix is never materialized; application is a gather.
struct WarpingFunction {
    int domain_len = 0;
    int codomain_len = 0;
    std::vector<int> map;  // 1-based values into [codomain_len]

    bool valid() const;
    static WarpingFunction identity(int n);
};

/// output[l] = x[f(l)]; the result is an expansion of x.
TimeSeries apply_warping(const WarpingFunction& f, const TimeSeries& x);

/// l -> outer(inner(l)). Applying the composite equals applying inner's
/// gather to the outer-gathered series, i.e. apply(compose(f,g), x) =
/// apply(f, apply(g, x)).
WarpingFunction compose_warping(const WarpingFunction& inner, const WarpingFunction& outer);

/// The two coordinate projections of a path as warping functions of its order.
std::pair<WarpingFunction, WarpingFunction> path_projections(const WarpingPath& p);

/// Equal-length expansions (x_{i_1},...,x_{i_l}) and (y_{j_1},...,y_{j_l})
/// induced by traversing p.
std::pair<TimeSeries, TimeSeries> path_expansions(const WarpingPath& p, const TimeSeries& x,
                                                  const TimeSeries& y);

/// Sum of squared differences accumulated along the given points.
double cost_along(const std::vector<GridPoint>& points, GridOrder order, const TimeSeries& x,
                  const TimeSeries& y);

/// Depth-first enumeration of every warping path of the given order, with
/// step priority (1,1) < (1,0) < (0,1) for determinism. Intended for small
/// orders (brute-force oracle work).
void for_each_path(int m, int n, const std::function<void(const WarpingPath&)>& sink);

/// Same for warping walks up to max_len points (zero-steps allowed).
void for_each_walk(int m, int n, std::size_t max_len,
                   const std::function<void(const WarpingWalk&)>& sink);

std::size_t count_paths(int m, int n);

/// Given warping functions into the same [n], builds warping functions
/// theta, theta2 on a common domain with f∘theta = g∘theta2. Fibers of the
/// shared codomain are zipped pointwise, the longer fiber side absorbing the
/// tail, ordered lexicographically. The common domain length is
/// >= max(domain lengths).
std::pair<WarpingFunction, WarpingFunction> pullback_equalizer(const WarpingFunction& f,
                                                               const WarpingFunction& g);

}  // namespace twidist::warping
