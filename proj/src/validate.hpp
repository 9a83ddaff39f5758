#pragma once

#include "refresh/error.hpp"

#include <cmath>
#include <string>

namespace refresh::detail
{

inline void requireFinite(double v, const std::string& field)
{
    if (!std::isfinite(v))
    {
        throw ValidationError(field, "must be a finite number");
    }
}

inline void requireNonNegative(double v, const std::string& field)
{
    requireFinite(v, field);
    if (v < 0.0)
    {
        throw ValidationError(field, "must be >= 0");
    }
}

inline void requirePositive(double v, const std::string& field)
{
    requireFinite(v, field);
    if (v <= 0.0)
    {
        throw ValidationError(field, "must be > 0");
    }
}

inline void requireFraction(double v, const std::string& field)
{
    requireFinite(v, field);
    if (v < 0.0 || v > 1.0)
    {
        throw ValidationError(field, "must be in [0, 1]");
    }
}

} // namespace refresh::detail
