#pragma once

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "cocite/graph.hpp"

namespace cocite {

struct LayoutResult {
    std::map<NodeId, std::pair<double, double>> coordinates;
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// Fruchterman-Reingold force-directed layout: repulsion between all pairs,
/// attraction along edges, linearly cooling displacement cap. Seeded and
/// deterministic; the result is centered on the centroid, so a single node
/// lands at the origin. No frame clamp, so disconnected components separate.
inline LayoutResult spring_layout(const Graph& g, int iterations, unsigned seed) {
    if (iterations < 1) throw InfeasibleError("layout needs at least one iteration");
    std::size_t n = g.n();
    LayoutResult out;
    if (n == 0) return out;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = unit(rng);
        y[i] = unit(rng);
    }

    const double k = std::sqrt(1.0 / static_cast<double>(n));
    double t = 0.1;
    const double dt = t / static_cast<double>(iterations + 1);
    std::vector<double> dx(n), dy(n);

    for (int iter = 0; iter < iterations; ++iter) {
        std::fill(dx.begin(), dx.end(), 0.0);
        std::fill(dy.begin(), dy.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double ddx = x[i] - x[j], ddy = y[i] - y[j];
                double dist2 = ddx * ddx + ddy * ddy;
                if (dist2 < 1e-12) {  // coincident nodes: deterministic nudge
                    ddx = 1e-6 * static_cast<double>(i - j);
                    ddy = 1e-6;
                    dist2 = ddx * ddx + ddy * ddy;
                }
                double rep = k * k / dist2;
                dx[i] += ddx * rep;
                dy[i] += ddy * rep;
                dx[j] -= ddx * rep;
                dy[j] -= ddy * rep;
            }
        }
        for (const auto& [u, v, w] : g.edges()) {
            static_cast<void>(w);
            auto ui = static_cast<std::size_t>(u), vi = static_cast<std::size_t>(v);
            double ddx = x[ui] - x[vi], ddy = y[ui] - y[vi];
            double dist = std::sqrt(ddx * ddx + ddy * ddy);
            if (dist < 1e-9) continue;
            double att = dist / k;  // f_a(d)/d = d/k
            dx[ui] -= ddx * att;
            dy[ui] -= ddy * att;
            dx[vi] += ddx * att;
            dy[vi] += ddy * att;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double len = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
            if (len > 0) {
                double step = std::min(len, t);
                x[i] += dx[i] / len * step;
                y[i] += dy[i] / len * step;
            }
        }
        t -= dt;
    }

    double cx = 0, cy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cx += x[i];
        cy += y[i];
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double px = x[i] - cx, py = y[i] - cy;
        out.coordinates[g.id_of(static_cast<int>(i))] = {px, py};
        if (i == 0) {
            out.min_x = out.max_x = px;
            out.min_y = out.max_y = py;
        } else {
            out.min_x = std::min(out.min_x, px);
            out.max_x = std::max(out.max_x, px);
            out.min_y = std::min(out.min_y, py);
            out.max_y = std::max(out.max_y, py);
        }
    }
    return out;
}

}  // namespace cocite
