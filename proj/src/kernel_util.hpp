#pragma once

// Internal helpers shared by the parallel energy and gradient kernels.

#include <algorithm>
#include <array>
#include <cmath>

#include "nlg/domain.hpp"

namespace nlg::detail {

/// Half-open index box [lo, hi) of cells whose centres may lie in a bounding box.
struct CellRange {
    std::array<int, 3> lo{0, 0, 0};
    std::array<int, 3> hi{1, 1, 1};
};

inline CellRange cell_range(const Grid& g, const BoxDomain& bounds) {
    CellRange r;
    for (int a = 0; a < g.dim(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const double qlo = (bounds.lower()[a] - g.origin()[a]) / g.h();
        const double qhi = (bounds.upper()[a] - g.origin()[a]) / g.h();
        r.lo[ua] = std::max(0, static_cast<int>(std::floor(qlo)));
        r.hi[ua] = std::min(g.counts()[ua], static_cast<int>(std::ceil(qhi)) + 1);
        if (r.hi[ua] < r.lo[ua]) r.hi[ua] = r.lo[ua];
    }
    return r;
}

/// Displacement of every cell centre by `step`, split per axis into whole cells and a fraction.
struct Stencil {
    int corners = 1;
    std::array<int, 3> shift{0, 0, 0};
    std::array<double, 3> frac{0.0, 0.0, 0.0};
};

inline Stencil make_stencil(const Grid& g, const Vec3& step) {
    Stencil s;
    s.corners = 1 << g.dim();
    for (int a = 0; a < g.dim(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const double d = step[a] / g.h();
        const double fl = std::floor(d);
        s.shift[ua] = static_cast<int>(fl);
        s.frac[ua] = d - fl;
    }
    return s;
}

/// Lower corner and fraction along one axis; beyond the outermost centres the end
/// interval is extended linearly, matching SampledField::interpolate.
inline void axis_weight(int base, double frac, int count, int& b, double& f) {
    if (count < 2) {
        b = 0;
        f = 0.0;
        return;
    }
    b = base;
    f = frac;
    if (b < 0) {
        f += b;
        b = 0;
    } else if (b > count - 2) {
        f += b - (count - 2);
        b = count - 2;
    }
}

struct Corners {
    int count = 1;
    std::array<std::size_t, 8> index{};
    std::array<double, 8> weight{};
};

/// Interpolation corners of the point cell + step for the stencil of `step`.
inline Corners corners_at(const Grid& g, const std::array<int, 3>& cell, const Stencil& st) {
    const int n = g.dim();
    std::array<int, 3> b{0, 0, 0};
    std::array<double, 3> f{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        axis_weight(cell[ua] + st.shift[ua], st.frac[ua], g.counts()[ua], b[ua], f[ua]);
    }
    Corners c;
    c.count = st.corners;
    for (int k = 0; k < st.corners; ++k) {
        double w = 1.0;
        std::array<int, 3> id{0, 0, 0};
        for (int a = 0; a < n; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            const int bit = (k >> a) & 1;
            w *= bit ? f[ua] : 1.0 - f[ua];
            id[ua] = b[ua] + bit;
        }
        c.index[static_cast<std::size_t>(k)] = g.index(id[0], id[1], id[2]);
        c.weight[static_cast<std::size_t>(k)] = w;
    }
    return c;
}

/// Calls f(flat_index, cell) for every cell of the range, in index order.
template <class F>
void for_each_cell(const Grid& g, const CellRange& r, F&& f) {
    for (int k = r.lo[2]; k < r.hi[2]; ++k)
        for (int j = r.lo[1]; j < r.hi[1]; ++j)
            for (int i = r.lo[0]; i < r.hi[0]; ++i) f(g.index(i, j, k), std::array<int, 3>{i, j, k});
}

}  // namespace nlg::detail
