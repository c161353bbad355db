#include "tvs/quadrature.hpp"

#include "tvs/error.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace tvs {

void Quadrature::for_each_node(double a, double b, const std::function<void(double, double)>& visit,
                               std::initializer_list<double> kinks) const
{
    if (nodes_per_unit < 16)
        throw Error(ErrorKind::InvalidArgument, "quadrature needs at least 16 nodes per unit length");
    std::vector<double> cuts{a};
    for (double kink : {0.0, 1.0})
        if (kink > a && kink < b)
            cuts.push_back(kink);
    for (double kink : kinks)
        if (kink > a && kink < b)
            cuts.push_back(kink);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    using Rule = boost::math::quadrature::gauss<double, 16>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const long panels = std::max(1L, static_cast<long>(std::ceil((hi - lo) * nodes_per_unit / 16.0)));
        const double width = (hi - lo) / static_cast<double>(panels);
        for (long k = 0; k < panels; ++k) {
            const double pa = lo + static_cast<double>(k) * width;
            const double pb = k + 1 == panels ? hi : pa + width;
            const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
            for (std::size_t j = 0; j < x.size(); ++j) {
                visit(mid - half * x[j], half * w[j]);
                visit(mid + half * x[j], half * w[j]);
            }
        }
    }
}

double Quadrature::integrate(const std::function<double(double)>& f, double a, double b) const
{
    if (b < a)
        return -integrate(f, b, a);
    double total = 0.0;
    for_each_node(a, b, [&](double x, double w) { total += w * f(x); });
    return total;
}

double Quadrature::average(const std::function<double(double)>& f, double a, double b) const
{
    if (b == a)
        return f(a);
    return integrate(f, a, b) / (b - a);
}

} // namespace tvs
