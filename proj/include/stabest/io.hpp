#pragma once

#include <string>
#include <vector>

#include "stabest/processes.hpp"

namespace stabest {

// CSV with header `t,value`, one row per grid point, full decimal precision.
std::string render_path_csv(const SamplePath& path);

// Structured text sidecar: model, parameters, seed.
std::string render_path_metadata(const SamplePath& path);

void write_path_csv(const SamplePath& path, const std::string& csv_path,
                    const std::string& meta_path);

// Reads the `t,value` format back; throws io_error naming the offending line
// on parse failures.
std::vector<double> read_path_csv(const std::string& path);

} // namespace stabest
