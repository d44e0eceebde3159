#include <algorithm>
#include <cmath>
#include <istream>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <gifnet/error.hpp>
#include <gifnet/raster.hpp>

namespace gifnet {

namespace {

tick floor_mod(tick a, tick b) {
    tick r = a % b;
    return r < 0? r + b: r;
}

} // namespace

past_convention past_convention::repeat(std::vector<std::uint8_t> rows, std::size_t n_neurons, tick depth) {
    if (n_neurons == 0 || rows.empty() || rows.size() % n_neurons) {
        throw error(errc::invalid_argument, "repeat block must hold whole rows of N bits");
    }
    past_convention p;
    p.kind = past_kind::repeat;
    p.block_len = rows.size()/n_neurons;
    p.block = std::move(rows);
    p.expansion_depth = depth;
    return p;
}

raster::raster(std::size_t n_neurons, tick n0, tick n1, past_convention past):
    n_(n_neurons), n0_(n0), n1_(n1), past_(std::move(past))
{
    if (n_neurons == 0) throw error(errc::invalid_argument, "raster needs at least one neuron");
    if (n1 < n0) throw error(errc::invalid_argument, "raster window is empty");
    if (past_.kind == past_kind::repeat && past_.block.size() != past_.block_len*n_) {
        throw error(errc::invalid_argument, "repeat block does not match the neuron count");
    }
    bits_.assign(length()*n_, 0);
}

raster raster::all_ones(std::size_t n, tick n0, tick n1) {
    raster r(n, n0, n1, past_convention::all_ones());
    std::fill(r.bits_.begin(), r.bits_.end(), 1);
    return r;
}

bool raster::bit(std::size_t k, tick n) const {
    if (n > n1_) throw error(errc::invalid_argument, "raster queried after its window");
    if (n >= n0_) return bits_[std::size_t(n - n0_)*n_ + k];
    switch (past_.kind) {
    case past_kind::empty: return false;
    case past_kind::all_ones: return true;
    case past_kind::repeat: {
        tick L = tick(past_.block_len);
        tick row = floor_mod(n - n0_, L);
        return past_.block[std::size_t(row)*n_ + k];
    }
    }
    return false;
}

void raster::set(std::size_t k, tick n, bool v) {
    if (n < n0_ || n > n1_) throw error(errc::invalid_argument, "raster write outside the window");
    bits_[std::size_t(n - n0_)*n_ + k] = v;
}

std::span<const std::uint8_t> raster::pattern(tick n) const {
    if (n < n0_ || n > n1_) throw error(errc::invalid_argument, "pattern outside the window");
    return {bits_.data() + std::size_t(n - n0_)*n_, n_};
}

void raster::set_pattern(tick n, std::span<const std::uint8_t> bits) {
    if (n < n0_ || n > n1_) throw error(errc::invalid_argument, "pattern outside the window");
    if (bits.size() != n_) throw error(errc::invalid_argument, "pattern has the wrong width");
    auto* dst = bits_.data() + std::size_t(n - n0_)*n_;
    for (std::size_t k = 0; k < n_; ++k) dst[k] = bits[k]? 1: 0;
}

spike_time_list spike_times(const raster& r, std::size_t j, double t, tick horizon) {
    spike_time_list out;
    tick ft = tick(std::floor(t));
    tick hi = (double(ft) < t)? ft: ft - 1;
    hi = std::min(hi, r.last());
    for (tick n = ft - horizon; n <= hi; ++n) {
        if (r.bit(j, n)) out.push_back(n);
    }
    return out;
}

std::optional<tick> last_reset(const raster& r, std::size_t k, tick n) {
    n = std::min(n, r.last());
    for (tick m = n; m >= r.first(); --m) {
        if (r.bit(k, m)) return m;
    }
    const auto& past = r.past();
    switch (past.kind) {
    case past_kind::empty: return std::nullopt;
    case past_kind::all_ones: return std::min(n, r.first() - 1);
    case past_kind::repeat: {
        bool any = false;
        for (std::size_t row = 0; row < past.block_len; ++row) any |= past.block[row*r.size() + k] != 0;
        if (!any) return std::nullopt;
        tick start = std::min(n, r.first() - 1);
        for (tick m = start; m >= start - past.expansion_depth; --m) {
            if (r.bit(k, m)) return m;
        }
        throw error(errc::unresolvable_past, "last reset lies beyond the expansion depth", k);
    }
    }
    return std::nullopt;
}

cylinder_pairs::cylinder_pairs(std::size_t n_neurons, tick n, int m, int tail_horizon):
    n_(n_neurons), t_(n), m_(m), h_(tail_horizon)
{
    if (m < 0 || tail_horizon < 0 || n_neurons == 0) {
        throw error(errc::invalid_argument, "cylinder_pairs needs m, tail_horizon >= 0 and N >= 1");
    }
    std::size_t block_bits = n_*std::size_t(m + 1);
    std::size_t tail_bits = n_*std::size_t(h_);
    if (block_bits + 2*tail_bits > 40) {
        throw error(errc::enumeration_too_large, "2^" + std::to_string(block_bits + 2*tail_bits) + " pairs requested");
    }
    blocks_ = std::uint64_t(1) << block_bits;
    tail_configs_ = std::uint64_t(1) << tail_bits;
    per_block_ = h_ > 0? tail_configs_*tail_configs_ + 2: 2;
    count_ = blocks_*per_block_;
    if (count_ > guard) {
        throw error(errc::enumeration_too_large, std::to_string(count_) + " pairs exceed the guard of "
            + std::to_string(guard));
    }
}

bool cylinder_pairs::next(std::pair<raster, raster>& out) {
    if (pos_ >= count_) return false;
    std::uint64_t block = pos_/per_block_;
    std::uint64_t t = pos_%per_block_;
    ++pos_;

    const tick lo = t_ - m_ - h_;
    auto fill_block = [&](raster& r) {
        for (int s = 0; s <= m_; ++s) {
            for (std::size_t k = 0; k < n_; ++k) {
                r.set(k, t_ - m_ + s, (block >> (std::size_t(s)*n_ + k)) & 1);
            }
        }
    };
    auto fill_tail = [&](raster& r, std::uint64_t cfg) {
        for (int s = 0; s < h_; ++s) {
            for (std::size_t k = 0; k < n_; ++k) r.set(k, lo + s, (cfg >> (std::size_t(s)*n_ + k)) & 1);
        }
    };

    std::uint64_t both = h_ > 0? tail_configs_*tail_configs_: 0;
    if (t < both) {
        raster a(n_, lo, t_), b(n_, lo, t_);
        fill_tail(a, t/tail_configs_);
        fill_tail(b, t%tail_configs_);
        fill_block(a);
        fill_block(b);
        out = {std::move(a), std::move(b)};
    }
    else {
        raster zero(n_, lo, t_);
        raster ones(n_, lo, t_, past_convention::all_ones());
        fill_tail(ones, tail_configs_ - 1);
        fill_block(zero);
        fill_block(ones);
        if (t == both) out = {std::move(zero), std::move(ones)};
        else out = {std::move(ones), std::move(zero)};
    }
    return true;
}

void write_raster(std::ostream& os, const raster& r) {
    if (r.past().kind == past_kind::repeat) {
        throw error(errc::invalid_argument, "the raster file format has no repeat past");
    }
    os << "GIFRASTER 1\n";
    os << "neurons " << r.size() << '\n';
    os << "window " << r.first() << ' ' << r.last() << '\n';
    os << "past " << (r.past().kind == past_kind::empty? "empty": "allones") << '\n';
    std::string line(r.size(), '0');
    for (tick n = r.first(); n <= r.last(); ++n) {
        auto p = r.pattern(n);
        for (std::size_t k = 0; k < r.size(); ++k) line[k] = p[k]? '1': '0';
        os << line << '\n';
    }
}

raster read_raster(std::istream& is) {
    std::string line;
    auto header = [&](const char* what) -> std::istringstream {
        if (!std::getline(is, line)) throw error(errc::malformed_header, std::string("missing ") + what + " line");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return std::istringstream(line);
    };

    {
        auto ss = header("magic");
        std::string magic;
        int version = 0;
        if (!(ss >> magic >> version) || magic != "GIFRASTER" || version != 1) {
            throw error(errc::malformed_header, "expected 'GIFRASTER 1'");
        }
    }
    long long n = 0;
    {
        auto ss = header("neurons");
        std::string key;
        if (!(ss >> key >> n) || key != "neurons" || n < 1) throw error(errc::malformed_header, "bad neurons line");
    }
    long long n0 = 0, n1 = 0;
    {
        auto ss = header("window");
        std::string key;
        if (!(ss >> key >> n0 >> n1) || key != "window") throw error(errc::malformed_header, "bad window line");
        if (n1 < n0) throw error(errc::malformed_header, "empty window");
    }
    past_convention past;
    {
        auto ss = header("past");
        std::string key, v;
        if (!(ss >> key >> v) || key != "past") throw error(errc::malformed_header, "bad past line");
        if (v == "empty") past = past_convention::empty();
        else if (v == "allones") past = past_convention::all_ones();
        else throw error(errc::malformed_header, "unknown past '" + v + "'");
    }

    raster r(std::size_t(n), n0, n1, past);
    std::size_t lineno = 4;
    for (tick t = n0; t <= n1; ++t) {
        ++lineno;
        if (!std::getline(is, line)) {
            throw error(errc::window_mismatch, "file ends before the window does", lineno);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != std::size_t(n)) {
            throw error(errc::bad_bit_char, "expected " + std::to_string(n) + " bits", lineno);
        }
        for (std::size_t k = 0; k < line.size(); ++k) {
            char c = line[k];
            if (c != '0' && c != '1') throw error(errc::bad_bit_char, "bit must be 0 or 1", lineno);
            r.set(k, t, c == '1');
        }
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line != "\r") {
            throw error(errc::window_mismatch, "extra rows after the window", lineno);
        }
    }
    return r;
}

void write_raster(const std::filesystem::path& path, const raster& r) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error(errc::io_error, "cannot write " + path.string());
    write_raster(os, r);
    if (!os) throw error(errc::io_error, "write failed for " + path.string());
}

raster read_raster(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error(errc::io_error, "cannot open " + path.string());
    return read_raster(is);
}

} // namespace gifnet
