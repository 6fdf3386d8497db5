#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ptchain/analysis.hpp"
#include "ptchain/sweeps.hpp"

namespace ptchain {

/// Shortest decimal string that round-trips the double exactly; both zeros
/// print as "0".
inline std::string format_double(double value) {
    if (value == 0.0) return "0";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// Write via a temporary file in the same directory, then rename into place,
/// so a failed run never leaves a partial output behind.
inline void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string spectrum_csv(const SpectrumClassification& cls) {
    std::string csv = "index,re,im,is_real,edge_weight,is_edge\n";
    for (const StateClassification& st : cls.states) {
        csv += std::to_string(st.index);
        csv += ',';
        csv += format_double(st.energy.real());
        csv += ',';
        csv += format_double(st.energy.imag());
        csv += ',';
        csv += st.is_real ? '1' : '0';
        csv += ',';
        csv += format_double(st.edge_weight);
        csv += ',';
        csv += st.is_edge ? '1' : '0';
        csv += '\n';
    }
    return csv;
}

inline std::string profile_csv(const OccupationProfile& prof) {
    const bool kitaev = prof.model_kind == ModelKind::Kitaev;
    std::string csv = kitaev ? "site,n_e,n_h\n" : "site,n\n";
    for (std::size_t i = 0; i < prof.electron.size(); ++i) {
        csv += std::to_string(i + 1);
        csv += ',';
        csv += format_double(prof.electron[i]);
        if (kitaev) {
            csv += ',';
            csv += format_double(prof.hole[i]);
        }
        csv += '\n';
    }
    return csv;
}

inline std::string sweep_csv(const SweepResult& result) {
    std::string csv = "axis_value,index,re,im\n";
    for (const SweepRow& row : result.rows) {
        const std::string axis = format_double(row.axis_value);
        for (std::size_t k = 0; k < row.eigenvalues.size(); ++k) {
            csv += axis;
            csv += ',';
            csv += std::to_string(k);
            csv += ',';
            csv += format_double(row.eigenvalues[k].real());
            csv += ',';
            csv += format_double(row.eigenvalues[k].imag());
            csv += '\n';
        }
    }
    return csv;
}

inline std::string phasemap_csv(const PhaseMap& map) {
    std::string csv = "mu,gamma,count\n";
    for (std::size_t i = 0; i < map.mu_axis.size(); ++i) {
        for (std::size_t j = 0; j < map.gamma_axis.size(); ++j) {
            csv += format_double(map.mu_axis[i]);
            csv += ',';
            csv += format_double(map.gamma_axis[j]);
            csv += ',';
            csv += std::to_string(map.counts[i][j]);
            csv += '\n';
        }
    }
    return csv;
}

namespace detail {

struct SvgFrame {
    double x0, x1, y0, y1;      // data ranges
    double width = 640.0, height = 480.0;
    double margin = 48.0;

    double px(double x) const {
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin);
    }
    double py(double y) const {
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin);
    }
};

inline void svg_axes(std::string& svg, const SvgFrame& f, const std::string& x_label,
                     const std::string& y_label) {
    auto line = [&](double ax, double ay, double bx, double by) {
        svg += "<line x1=\"" + format_double(ax) + "\" y1=\"" + format_double(ay) +
               "\" x2=\"" + format_double(bx) + "\" y2=\"" + format_double(by) +
               "\" stroke=\"black\"/>\n";
    };
    line(f.margin, f.height - f.margin, f.width - f.margin, f.height - f.margin);
    line(f.margin, f.margin, f.margin, f.height - f.margin);
    svg += "<text x=\"" + format_double(f.width / 2) + "\" y=\"" +
           format_double(f.height - 12.0) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           x_label + "</text>\n";
    svg += "<text x=\"14\" y=\"" + format_double(f.height / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 " +
           format_double(f.height / 2) + ")\">" + y_label + "</text>\n";
    svg += "<text x=\"" + format_double(f.margin) + "\" y=\"" +
           format_double(f.height - f.margin + 16.0) + "\" font-size=\"11\">" +
           format_double(f.x0) + "</text>\n";
    svg += "<text x=\"" + format_double(f.width - f.margin) + "\" y=\"" +
           format_double(f.height - f.margin + 16.0) + "\" text-anchor=\"end\" font-size=\"11\">" +
           format_double(f.x1) + "</text>\n";
    svg += "<text x=\"" + format_double(f.margin - 4.0) + "\" y=\"" +
           format_double(f.height - f.margin) + "\" text-anchor=\"end\" font-size=\"11\">" +
           format_double(f.y0) + "</text>\n";
    svg += "<text x=\"" + format_double(f.margin - 4.0) + "\" y=\"" +
           format_double(f.margin) + "\" text-anchor=\"end\" font-size=\"11\">" +
           format_double(f.y1) + "</text>\n";
}

}  // namespace detail

/// Scatter chart of Im(E) for every eigenvalue against the sweep axis.
inline std::string svg_sweep_chart(const SweepResult& result, const std::string& x_label) {
    double y_lo = 0.0, y_hi = 0.0;
    for (const SweepRow& row : result.rows)
        for (const Complex& e : row.eigenvalues) {
            y_lo = std::min(y_lo, e.imag());
            y_hi = std::max(y_hi, e.imag());
        }
    if (y_hi == y_lo) { y_hi += 1.0; y_lo -= 1.0; }
    const double pad = 0.05 * (y_hi - y_lo);
    detail::SvgFrame f{result.rows.front().axis_value, result.rows.back().axis_value,
                       y_lo - pad, y_hi + pad};

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      format_double(f.width) + "\" height=\"" + format_double(f.height) + "\">\n";
    detail::svg_axes(svg, f, x_label, "Im E");
    for (const SweepRow& row : result.rows)
        for (const Complex& e : row.eigenvalues)
            svg += "<circle cx=\"" + format_double(f.px(row.axis_value)) + "\" cy=\"" +
                   format_double(f.py(e.imag())) + "\" r=\"1.5\" fill=\"#1f6fb2\"/>\n";
    svg += "</svg>\n";
    return svg;
}

/// Two-color cell map of the zero-mode counts: bright for 2, dark for 0.
inline std::string svg_phase_map(const PhaseMap& map) {
    detail::SvgFrame f{map.mu_axis.front(), map.mu_axis.back(), map.gamma_axis.front(),
                       map.gamma_axis.back()};
    const double cell_w = (f.width - 2 * f.margin) / static_cast<double>(map.mu_axis.size());
    const double cell_h = (f.height - 2 * f.margin) / static_cast<double>(map.gamma_axis.size());

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      format_double(f.width) + "\" height=\"" + format_double(f.height) + "\">\n";
    detail::svg_axes(svg, f, "mu", "gamma");
    for (std::size_t i = 0; i < map.mu_axis.size(); ++i) {
        for (std::size_t j = 0; j < map.gamma_axis.size(); ++j) {
            const char* fill = "#808080";
            if (map.counts[i][j] == 2) fill = "#ffcc00";
            else if (map.counts[i][j] == 0) fill = "#000000";
            const double x = f.margin + cell_w * static_cast<double>(i);
            const double y = f.height - f.margin - cell_h * static_cast<double>(j + 1);
            svg += "<rect x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
                   "\" width=\"" + format_double(cell_w) + "\" height=\"" + format_double(cell_h) +
                   "\" fill=\"" + fill + "\" data-count=\"" + std::to_string(map.counts[i][j]) +
                   "\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace ptchain
