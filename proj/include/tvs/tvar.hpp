#pragma once

#include "tvs/series.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tvs {

using CurveFn = std::function<double(double)>;

/// Time-varying AR(p) model X_t = sum_j a_j(t/T) X_{t-j} + sigma(t/T) Z_t.
struct TvarSpec {
    std::string label;
    std::vector<CurveFn> coeffs; ///< a_1, ..., a_p on rescaled time [0, 1]
    CurveFn sigma;               ///< innovation scale, defaults to 1
    /// True when every curve is constant; lets averaged moments skip quadrature.
    bool time_invariant = false;

    int order() const noexcept { return static_cast<int>(coeffs.size()); }

    /// Coefficients a_1(u), ..., a_p(u), with u clamped to [0, 1].
    std::vector<double> coefficients_at(double u) const;
    double sigma_at(double u) const;

    static TvarSpec make(std::string label, std::vector<CurveFn> coeffs, CurveFn sigma = {});
};

/// Stationary AR(p) with the given coefficients.
TvarSpec constant_ar(std::vector<double> coeffs, double sigma = 1.0, std::string label = "constantAR");

/// tvAR(2) with a_1(u) = 0.15 + 0.15u and a_2(u) = 0.25 - 0.15u, unit noise.
TvarSpec motivating_example();

namespace catalog {

/// The 15 simulation models, in the order periodic1, periodic2, increasing1..6,
/// stationaryAR, indepNonHetero, indepHetero, mdl11, mdl12, decreasing1, decreasing2.
const std::vector<std::string>& labels();

/// Throws invalid-argument for unknown labels.
TvarSpec get(std::string_view label);

bool contains(std::string_view label);

} // namespace catalog

/// Source of i.i.d. innovations.
class NoiseSource {
public:
    virtual ~NoiseSource() = default;
    virtual double next() = 0;
};

class GaussianNoise final : public NoiseSource {
public:
    explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
    double next() override { return dist_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_;
};

/// splitmix64 finaliser applied to base ^ f(stream): independent, order-free seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept;

/// Presample length max(200, 10p), run with coefficients frozen at u = 0 from a zero state.
std::size_t burn_in_length(int order) noexcept;

/// Simulates X_1..X_T. Innovations are consumed in time order starting with the
/// burn-in, so Z_1 is the (burn_in_length(p) + 1)-th draw of the stream.
Series simulate_tvar(const TvarSpec& spec, std::size_t T, std::uint64_t seed);
Series simulate_tvar(const TvarSpec& spec, std::size_t T, NoiseSource& noise);

} // namespace tvs
