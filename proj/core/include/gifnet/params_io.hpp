#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <gifnet/params.hpp>

namespace gifnet {

// JSON parameter files. Field names mirror network_params; per-neuron arrays
// and matrices also accept a single scalar that is broadcast.
network_params parse_params(const std::string& text);
network_params load_params(const std::filesystem::path& path);
std::string dump_params(const network_params& p);

// bounds.csv: quantity,neuron,value
void write_bounds_csv(std::ostream& os, const bounds_table& b);

} // namespace gifnet
