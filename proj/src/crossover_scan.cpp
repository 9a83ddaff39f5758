#include "refresh/error.hpp"
#include "refresh/lifecycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace refresh
{

namespace
{

struct Grid
{
    double dt;
    double tMax;
    std::int64_t last; // index of the final point (== tMax)

    double at(std::int64_t k) const noexcept
    {
        return k >= last ? tMax : static_cast<double>(k) * dt;
    }
};

Grid makeGrid(const ScanOptions& o)
{
    if (!std::isfinite(o.tMaxYears) || o.tMaxYears <= 0.0)
    {
        throw ValidationError("t_max", "must be > 0");
    }
    if (!std::isfinite(o.dtYears) || o.dtYears <= 0.0 ||
        o.dtYears > o.tMaxYears)
    {
        throw ValidationError("dt", "must satisfy 0 < dt <= t_max");
    }
    const auto last =
        static_cast<std::int64_t>(std::ceil(o.tMaxYears / o.dtYears - 1e-9));
    return Grid{o.dtYears, o.tMaxYears, std::max<std::int64_t>(last, 1)};
}

double curve(const RateTerms& r, double t, bool upfront,
             ReplacementMode mode) noexcept
{
    if (mode == ReplacementMode::Discrete)
    {
        const double purchases =
            std::floor(t / r.lifetimeYears) + (upfront ? 1.0 : 0.0);
        return purchases * r.embodiedKg + r.operationalKgPerYear * t;
    }
    return (upfront ? r.embodiedKg : 0.0) + r.rate() * t;
}

struct Gap
{
    const RateTerms& opt0;
    const RateTerms& opt1;
    const ScanOptions& options;

    double operator()(double t) const noexcept
    {
        return curve(opt0, t, options.option0Upfront, options.replacement) -
               curve(opt1, t, true, options.replacement);
    }
};

bool differentSide(double start, double value) noexcept
{
    return value == 0.0 || std::signbit(value) != std::signbit(start);
}

double interpolate(const Grid& grid, const Gap& gap, std::int64_t k)
{
    const double t0 = grid.at(k - 1);
    const double t1 = grid.at(k);
    const double g0 = gap(t0);
    const double g1 = gap(t1);
    if (g1 == 0.0)
    {
        return t1;
    }
    return t0 + (t1 - t0) * g0 / (g0 - g1);
}

} // namespace

std::optional<double> crossoverScanSerial(const RateTerms& opt0,
                                          const RateTerms& opt1,
                                          const ScanOptions& options)
{
    const Grid grid = makeGrid(options);
    const Gap gap{opt0, opt1, options};
    const double start = gap(0.0);
    if (start == 0.0)
    {
        return 0.0;
    }
    for (std::int64_t k = 1; k <= grid.last; ++k)
    {
        if (differentSide(start, gap(grid.at(k))))
        {
            return interpolate(grid, gap, k);
        }
    }
    return std::nullopt;
}

std::optional<double> crossoverScan(const RateTerms& opt0,
                                    const RateTerms& opt1,
                                    const ScanOptions& options)
{
    const Grid grid = makeGrid(options);
    const Gap gap{opt0, opt1, options};
    const double start = gap(0.0);
    if (start == 0.0)
    {
        return 0.0;
    }

    // Blocks are scanned in order; inside a block the first bracketing index
    // is found with a parallel min-reduction so the result matches the
    // serial scan exactly.
    constexpr std::int64_t kBlock = 1 << 14;
    constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t begin = 1; begin <= grid.last; begin += kBlock)
    {
        const std::int64_t end = std::min(begin + kBlock, grid.last + 1);
        std::int64_t first = kNone;
#pragma omp parallel for reduction(min : first) schedule(static)
        for (std::int64_t k = begin; k < end; ++k)
        {
            if (differentSide(start, gap(grid.at(k))) && k < first)
            {
                first = k;
            }
        }
        if (first != kNone)
        {
            return interpolate(grid, gap, first);
        }
    }
    return std::nullopt;
}

} // namespace refresh
