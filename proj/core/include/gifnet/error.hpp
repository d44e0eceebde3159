#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gifnet {

enum class errc {
    non_positive_capacitance,
    non_positive_leak,
    non_positive_tau,
    non_positive_sigma,
    refractory_out_of_range,
    negative_conductance,
    non_finite_value,
    shape_mismatch,
    bad_profile,
    series_divergence,
    malformed_header,
    bad_bit_char,
    window_mismatch,
    unresolvable_past,
    enumeration_too_large,
    horizon_too_shallow,
    quadrature_non_convergence,
    invalid_argument,
    io_error,
};

std::string_view errc_name(errc e);

// All library failures are reported through this type. `index` names the
// offending neuron/synapse/line where that makes sense, npos otherwise.
class error: public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    error(errc code, std::string what, std::size_t index = npos);

    errc code() const noexcept { return code_; }
    std::size_t index() const noexcept { return index_; }

private:
    errc code_;
    std::size_t index_;
};

} // namespace gifnet
