#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace gifnet {

// Round-trippable decimal rendering used by every CSV writer.
std::string fmt_real(double v);

class csv_writer {
public:
    explicit csv_writer(std::ostream& os): os_(os) {}

    template <typename... Cols>
    void row(const Cols&... cols) {
        bool first = true;
        ((put(cols, first)), ...);
        os_ << '\n';
    }

private:
    std::ostream& os_;

    void sep(bool& first) {
        if (!first) os_ << ',';
        first = false;
    }
    void put(double v, bool& first) { sep(first); os_ << fmt_real(v); }
    void put(std::string_view s, bool& first) { sep(first); os_ << s; }
    void put(const std::string& s, bool& first) { sep(first); os_ << s; }
    void put(const char* s, bool& first) { sep(first); os_ << s; }
    template <typename I>
    requires std::is_integral_v<I>
    void put(I v, bool& first) { sep(first); os_ << v; }
};

} // namespace gifnet
