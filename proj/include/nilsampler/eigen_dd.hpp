#pragma once

#include <Eigen/Core>

#include "nilsampler/double_double.hpp"

namespace Eigen {

template <>
struct NumTraits<nilsampler::DoubleDouble> : GenericNumTraits<nilsampler::DoubleDouble> {
    using Real = nilsampler::DoubleDouble;
    using NonInteger = nilsampler::DoubleDouble;
    using Literal = nilsampler::DoubleDouble;
    using Nested = nilsampler::DoubleDouble;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 0,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 12
    };

    static inline Real epsilon() { return Real(nilsampler::dd_const::eps); }
    static inline Real dummy_precision() { return Real(1e-28); }
    static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
    static inline Real lowest() { return Real(-std::numeric_limits<double>::max()); }
    static inline int digits10() { return 31; }
};

}  // namespace Eigen
