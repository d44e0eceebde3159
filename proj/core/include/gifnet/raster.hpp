#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gifnet {

using tick = std::int64_t;

enum class past_kind { empty, all_ones, repeat };

// Convention for the times before the raster window. `repeat` tiles `block`
// (time-major rows of N bits) backwards so that its last row sits at n0-1.
struct past_convention {
    past_kind kind = past_kind::empty;
    std::vector<std::uint8_t> block;
    std::size_t block_len = 0;
    tick expansion_depth = tick(1) << 20;

    static past_convention empty() { return {}; }
    static past_convention all_ones() { return {past_kind::all_ones, {}, 0}; }
    static past_convention repeat(std::vector<std::uint8_t> rows, std::size_t n_neurons, tick depth = tick(1) << 20);

    bool operator==(const past_convention&) const = default;
};

class raster {
public:
    raster() = default;
    raster(std::size_t n_neurons, tick n0, tick n1, past_convention past = {});

    static raster silent(std::size_t n, tick n0, tick n1) { return raster(n, n0, n1); }
    static raster all_ones(std::size_t n, tick n0, tick n1);

    std::size_t size() const { return n_; }
    tick first() const { return n0_; }
    tick last() const { return n1_; }
    std::size_t length() const { return std::size_t(n1_ - n0_ + 1); }
    const past_convention& past() const { return past_; }

    // omega_k(n) for any n <= last(), with the past convention before first()
    bool bit(std::size_t k, tick n) const;
    void set(std::size_t k, tick n, bool v);

    // row of N bits at time n inside the window
    std::span<const std::uint8_t> pattern(tick n) const;
    void set_pattern(tick n, std::span<const std::uint8_t> bits);

    bool operator==(const raster&) const = default;

private:
    std::size_t n_ = 0;
    tick n0_ = 0, n1_ = -1;
    past_convention past_;
    std::vector<std::uint8_t> bits_; // time-major
};

using spike_time_list = std::vector<tick>;

// Integer times n with omega_j(n) = 1, n < t, n >= floor(t) - horizon.
spike_time_list spike_times(const raster& r, std::size_t j, double t, tick horizon);

// Last time m <= n with omega_k(m) = 1; nullopt stands for minus infinity.
std::optional<tick> last_reset(const raster& r, std::size_t k, tick n);

// Enumerates pairs agreeing on {n-m..n} and differing on the tail
// {n-m-h..n-m-1} (all combinations, Empty beyond), plus the two extremal
// pairs that use Omega_0 / Omega_1 for everything before n-m.
class cylinder_pairs {
public:
    static constexpr std::uint64_t guard = std::uint64_t(1) << 24;

    cylinder_pairs(std::size_t n_neurons, tick n, int m, int tail_horizon);

    std::uint64_t count() const { return count_; }
    std::uint64_t agreement_blocks() const { return blocks_; }
    std::uint64_t tails_per_block() const { return per_block_; }

    // false when exhausted
    bool next(std::pair<raster, raster>& out);

private:
    std::size_t n_;
    tick t_;
    int m_, h_;
    std::uint64_t blocks_, tail_configs_, per_block_, count_;
    std::uint64_t pos_ = 0;
};

void write_raster(std::ostream& os, const raster& r);
raster read_raster(std::istream& is);
void write_raster(const std::filesystem::path& path, const raster& r);
raster read_raster(const std::filesystem::path& path);

} // namespace gifnet
