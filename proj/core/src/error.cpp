#include <gifnet/error.hpp>

namespace gifnet {

std::string_view errc_name(errc e) {
    switch (e) {
    case errc::non_positive_capacitance: return "NonPositiveCapacitance";
    case errc::non_positive_leak: return "NonPositiveLeak";
    case errc::non_positive_tau: return "NonPositiveTau";
    case errc::non_positive_sigma: return "NonPositiveSigma";
    case errc::refractory_out_of_range: return "RefractoryOutOfRange";
    case errc::negative_conductance: return "NegativeConductance";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::bad_profile: return "BadProfile";
    case errc::series_divergence: return "SeriesDivergence";
    case errc::malformed_header: return "MalformedHeader";
    case errc::bad_bit_char: return "BadBitChar";
    case errc::window_mismatch: return "WindowMismatch";
    case errc::unresolvable_past: return "UnresolvablePast";
    case errc::enumeration_too_large: return "EnumerationTooLarge";
    case errc::horizon_too_shallow: return "HorizonTooShallow";
    case errc::quadrature_non_convergence: return "QuadratureNonConvergence";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
    }
    return "Unknown";
}

static std::string decorate(errc code, const std::string& what, std::size_t index) {
    std::string s(errc_name(code));
    if (index != error::npos) s += "[" + std::to_string(index) + "]";
    s += ": ";
    s += what;
    return s;
}

error::error(errc code, std::string what, std::size_t index):
    std::runtime_error(decorate(code, what, index)), code_(code), index_(index)
{}

} // namespace gifnet
