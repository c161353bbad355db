#pragma once

#include <functional>
#include <initializer_list>

namespace tvs {

/// Composite 16-point Gauss-Legendre rule. An interval of length L is cut at 0
/// and 1 (where clamped coefficient curves have kinks) and each piece gets
/// max(1, ceil(L_piece * nodes_per_unit / 16)) panels.
struct Quadrature {
    int nodes_per_unit = 256;

    Quadrature doubled() const { return Quadrature{2 * nodes_per_unit}; }

    /// Calls visit(x, weight) for every node of the rule on [a, b], a <= b.
    /// `kinks` adds breakpoints beyond 0 and 1.
    void for_each_node(double a, double b, const std::function<void(double, double)>& visit,
                       std::initializer_list<double> kinks = {}) const;

    double integrate(const std::function<double(double)>& f, double a, double b) const;

    /// (1/(b-a)) * integral over [a, b]; f(a) when the interval is empty.
    double average(const std::function<double(double)>& f, double a, double b) const;
};

} // namespace tvs
