#include "stabest/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "stabest/errors.hpp"

namespace stabest {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string render_path_csv(const SamplePath& path) {
    std::string out = "t,value\n";
    const double n = static_cast<double>(path.n);
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        out += fmt(static_cast<double>(k) / n);
        out += ',';
        out += fmt(path.values[k]);
        out += '\n';
    }
    return out;
}

std::string render_path_metadata(const SamplePath& path) {
    std::ostringstream os;
    os << "model = " << model_name(path.model) << "\n";
    os << "n = " << path.n << "\n";
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FbmParams>) {
                os << "hurst = " << fmt(p.hurst) << "\n";
                os << "unit_variance = " << fmt(p.unit_variance) << "\n";
            } else if constexpr (std::is_same_v<T, LevyParams>) {
                os << "alpha = " << fmt(p.alpha) << "\n";
            } else if constexpr (std::is_same_v<T, LfsmParams>) {
                os << "hurst = " << fmt(p.hurst) << "\n";
                os << "alpha = " << fmt(p.alpha) << "\n";
                os << "kernel_halfwidth = " << fmt(p.kernel_halfwidth) << "\n";
                os << "mesh_div = " << p.mesh_div << "\n";
            } else if constexpr (std::is_same_v<T, TakenakaParams>) {
                os << "nu = " << fmt(p.nu) << "\n";
                os << "alpha = " << fmt(p.alpha) << "\n";
                double r_lo, r_hi;
                takenaka_effective_radius_range(p, path.n, r_lo, r_hi);
                os << "r_min = " << fmt(r_lo) << "\n";
                os << "r_max = " << fmt(r_hi) << "\n";
                os << "r_log_step = " << fmt(p.r_log_step) << "\n";
            }
        },
        path.params);
    os << "master_seed = " << path.seed.master_seed << "\n";
    os << "stream_index = " << path.seed.stream_index << "\n";
    return os.str();
}

void write_path_csv(const SamplePath& path, const std::string& csv_path,
                    const std::string& meta_path) {
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw io_error("cannot open output file " + csv_path);
        f << render_path_csv(path);
        if (!f) throw io_error("failed writing " + csv_path);
    }
    if (!meta_path.empty()) {
        std::ofstream f(meta_path, std::ios::binary);
        if (!f) throw io_error("cannot open output file " + meta_path);
        f << render_path_metadata(path);
        if (!f) throw io_error("failed writing " + meta_path);
    }
}

std::vector<double> read_path_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open input file " + path);
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "t,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw io_error(path + ":" + std::to_string(lineno) + ": expected 't,value' row");
        try {
            std::size_t pos = 0;
            const std::string field = line.substr(comma + 1);
            const double v = std::stod(field, &pos);
            if (pos != field.size()) throw std::invalid_argument(field);
            values.push_back(v);
        } catch (const std::exception&) {
            throw io_error(path + ":" + std::to_string(lineno) + ": unparseable value field");
        }
    }
    if (values.size() < 2) throw io_error(path + ": fewer than two data rows");
    return values;
}

} // namespace stabest
