#include "opdop/quadsurd.hpp"

namespace opdop {

Extended QuadSurd::to_extended() const
{
    Extended r(a_);
    if (d_ != 0) {
        r += Extended(b_) * sqrt(Extended(d_));
    }
    return r;
}

double QuadSurd::to_double() const
{
    return to_extended().convert_to<double>();
}

std::string QuadSurd::str() const
{
    if (d_ == 0) {
        return format_rational(a_);
    }
    return format_rational(a_) + (b_ < 0 ? " - " : " + ") + format_rational(abs(b_)) + "*sqrt(" +
        std::to_string(d_) + ")";
}

} // namespace opdop
