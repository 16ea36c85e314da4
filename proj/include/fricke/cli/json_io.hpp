/**
 * @file json_io.hpp
 * @brief Deterministic file output: JSON reports (stable key order), CSV with
 *        17 significant digits, and a minimal scatter SVG.
 */
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fricke::cli {

using Json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

class CsvWriter {
public:
    /// The config is echoed as a '#'-prefixed preamble line; the first CSV
    /// line proper is the header row.
    CsvWriter(std::vector<std::string> columns, const Json& config_echo)
        : columns_(std::move(columns)) {
        buf_ += "# config: " + config_echo.dump() + "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) buf_ += ",";
            buf_ += columns_[i];
        }
        buf_ += "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) buf_ += ",";
            buf_ += fmt17(values[i]);
        }
        buf_ += "\n";
    }

    void row_with_index(std::size_t idx, const std::vector<double>& values) {
        buf_ += std::to_string(idx);
        for (double v : values) {
            buf_ += ",";
            buf_ += fmt17(v);
        }
        buf_ += "\n";
    }

    const std::string& str() const { return buf_; }

private:
    std::vector<std::string> columns_;
    std::string buf_;
};

/// Minimal scatter plot; points scaled into a fixed viewport.
inline std::string scatter_svg(const std::vector<std::pair<double, double>>& pts,
                               const std::string& title) {
    const int w = 640, h = 640, margin = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (pts.empty()) xmin = ymin = 0, xmax = ymax = 1;
    const double xr = xmax - xmin < 1e-12 ? 1.0 : xmax - xmin;
    const double yr = ymax - ymin < 1e-12 ? 1.0 : ymax - ymin;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\""
         + std::to_string(h) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h)
         + "\" fill=\"white\" stroke=\"black\"/>\n";
    s += "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"14\">" + title + "</text>\n";
    for (const auto& [x, y] : pts) {
        const double px = margin + (x - xmin) / xr * (w - 2 * margin);
        const double py = h - margin - (y - ymin) / yr * (h - 2 * margin);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\" fill=\"#1f4e96\"/>\n",
                      px, py);
        s += buf;
    }
    s += "</svg>\n";
    return s;
}

}  // namespace fricke::cli
