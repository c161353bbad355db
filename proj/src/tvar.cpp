#include "tvs/tvar.hpp"

#include "tvs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tvs {
namespace {

double clamp_unit(double u) { return std::clamp(u, 0.0, 1.0); }

CurveFn constant(double c)
{
    return [c](double) { return c; };
}

TvarSpec frozen(TvarSpec spec)
{
    spec.time_invariant = true;
    return spec;
}

TvarSpec build(std::string_view label)
{
    using std::numbers::pi;
    const std::string name(label);
    if (label == "periodic1")
        return TvarSpec::make(name, {[](double u) { return 0.8 + 0.19 * std::sin(4 * pi * u); }});
    if (label == "periodic2")
        return TvarSpec::make(name, {[](double u) { return 0.3 + 0.19 * std::sin(4 * pi * u); }});
    if (label == "increasing1")
        return TvarSpec::make(name, {[](double u) { return 0.8 + 0.19 * u; }});
    if (label == "increasing2")
        return TvarSpec::make(name, {[](double u) { return 0.5 + 0.19 * u; }});
    if (label == "increasing3")
        return TvarSpec::make(name, {[](double u) { return 0.9 + 0.09 * u; }});
    if (label == "increasing4")
        return TvarSpec::make(name, {[](double u) { return 0.5 + 0.09 * u; }});
    if (label == "increasing5")
        return TvarSpec::make(name, {[](double u) { return 0.5 + 0.49 * u; }});
    if (label == "increasing6")
        return TvarSpec::make(name, {[](double u) { return 0.5 + 0.4 * u; }});
    if (label == "stationaryAR")
        return constant_ar({-0.6}, 1.0, name);
    if (label == "indepNonHetero")
        return constant_ar({0.0}, 1.0, name);
    if (label == "indepHetero")
        return TvarSpec::make(name, {constant(0.0)}, [](double u) { return 5.0 - 16.0 * (u - 0.5) * (u - 0.5); });
    if (label == "mdl11")
        return TvarSpec::make(name, {[](double u) { return 1.8 * std::cos(1.5 - std::cos(4 * pi * u)); }, constant(-0.81)});
    if (label == "mdl12")
        return constant_ar({1.0, -0.81}, 1.0, name);
    if (label == "decreasing1")
        return TvarSpec::make(name, {[](double u) { return 0.99 - 0.49 * u; }});
    if (label == "decreasing2")
        return TvarSpec::make(name, {[](double u) { return 0.5 - u; }});
    throw Error(ErrorKind::InvalidArgument, "unknown model label '" + name + "'");
}

} // namespace

std::vector<double> TvarSpec::coefficients_at(double u) const
{
    const double w = clamp_unit(u);
    std::vector<double> a(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        a[j] = coeffs[j](w);
    return a;
}

double TvarSpec::sigma_at(double u) const { return sigma ? sigma(clamp_unit(u)) : 1.0; }

TvarSpec TvarSpec::make(std::string label, std::vector<CurveFn> coeffs, CurveFn sigma)
{
    if (coeffs.empty())
        throw Error(ErrorKind::InvalidArgument, "tvAR order must be at least 1");
    for (const auto& f : coeffs)
        if (!f)
            throw Error(ErrorKind::InvalidArgument, "empty coefficient function");
    TvarSpec spec;
    spec.label = std::move(label);
    spec.coeffs = std::move(coeffs);
    spec.sigma = sigma ? std::move(sigma) : constant(1.0);
    return spec;
}

TvarSpec constant_ar(std::vector<double> coeffs, double sigma, std::string label)
{
    std::vector<CurveFn> fns;
    for (double a : coeffs)
        fns.push_back(constant(a));
    return frozen(TvarSpec::make(std::move(label), std::move(fns), constant(sigma)));
}

TvarSpec motivating_example()
{
    return TvarSpec::make("motivating", {[](double u) { return 0.15 + 0.15 * u; }, [](double u) { return 0.25 - 0.15 * u; }});
}

namespace catalog {

const std::vector<std::string>& labels()
{
    static const std::vector<std::string> names = {
        "periodic1",   "periodic2",   "increasing1",    "increasing2", "increasing3",
        "increasing4", "increasing5", "increasing6",    "stationaryAR", "indepNonHetero",
        "indepHetero", "mdl11",       "mdl12",          "decreasing1", "decreasing2",
    };
    return names;
}

TvarSpec get(std::string_view label) { return build(label); }

bool contains(std::string_view label)
{
    const auto& names = labels();
    return std::find(names.begin(), names.end(), label) != names.end();
}

} // namespace catalog

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t burn_in_length(int order) noexcept
{
    return static_cast<std::size_t>(std::max(200, 10 * order));
}

Series simulate_tvar(const TvarSpec& spec, std::size_t T, std::uint64_t seed)
{
    GaussianNoise noise(seed);
    return simulate_tvar(spec, T, noise);
}

Series simulate_tvar(const TvarSpec& spec, std::size_t T, NoiseSource& noise)
{
    if (T < 1)
        throw Error(ErrorKind::InvalidArgument, "simulation length must be at least 1");
    const int p = spec.order();
    const std::size_t burn = burn_in_length(p);
    const double scale = static_cast<double>(T);

    // state[i] holds X_{t-1-i}
    std::vector<double> state(static_cast<std::size_t>(p), 0.0);
    std::vector<double> out;
    out.reserve(T);

    const auto step = [&](long t) {
        const double u = static_cast<double>(t) / scale;
        const double s = spec.sigma_at(u);
        if (!(s >= 0.0))
            throw Error(ErrorKind::InvalidArgument, "sigma must be non-negative, got " + std::to_string(s));
        double x = s * noise.next();
        const auto a = spec.coefficients_at(u);
        for (int j = 0; j < p; ++j)
            x += a[static_cast<std::size_t>(j)] * state[static_cast<std::size_t>(j)];
        if (!std::isfinite(x))
            throw Error(ErrorKind::SimulationDiverged,
                        "simulation of '" + spec.label + "' diverged at time index " + std::to_string(t));
        if (p > 0) {
            std::copy_backward(state.begin(), state.end() - 1, state.end());
            state[0] = x;
        }
        return x;
    };

    for (long t = 1 - static_cast<long>(burn); t <= 0; ++t)
        step(t);
    for (long t = 1; t <= static_cast<long>(T); ++t)
        out.push_back(step(t));
    return Series(std::move(out));
}

} // namespace tvs
