// SPDX-License-Identifier: Apache-2.0
//
// swhbf - switch-based hybrid beamforming for wideband multi-carrier receivers
// Copyright (C) 2026 The swhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SWHBF_REPORT_HPP
#define SWHBF_REPORT_HPP

#include "channel.hpp"
#include "config.hpp"
#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace swhbf
{

inline constexpr const char *results_csv_header = "scheme,axis,axis_value,trial,se_bps_hz,ee_bps_hz_w,evals,wall_time_s";

// 12 significant digits.
inline std::string format_g12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail
{
inline std::ofstream open_for_write(const std::filesystem::path &path)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

inline void close_checked(std::ofstream &out, const std::filesystem::path &path)
{
    out.close();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}
} // namespace detail

inline void sort_rows(std::vector<ResultRow> &rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
        if (a.scheme != b.scheme)
            return a.scheme < b.scheme;
        if (a.axis_value != b.axis_value)
            return a.axis_value < b.axis_value;
        return a.trial < b.trial;
    });
}

inline std::string format_csv(std::vector<ResultRow> rows)
{
    sort_rows(rows);
    std::string out = std::string(results_csv_header) + "\n";
    for (const auto &r : rows)
    {
        out += r.scheme + "," + r.axis + "," + format_g12(r.axis_value) + "," + std::to_string(r.trial) + "," +
               format_g12(r.se) + "," + format_g12(r.ee) + "," + std::to_string(r.solver_evaluations) + "," +
               format_g12(r.wall_time_s) + "\n";
    }
    return out;
}

// Rows sorted by (scheme, axis_value, trial).
inline void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
{
    auto out = detail::open_for_write(path);
    out << format_csv(rows);
    detail::close_checked(out, path);
}

inline std::vector<ResultRow> parse_csv(std::istream &in, const std::string &origin)
{
    std::string line;
    if (!std::getline(in, line) || line != results_csv_header)
        throw IoError(origin + ": missing or unexpected header");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 8)
            throw IoError(origin + ":" + std::to_string(lineno) + ": expected 8 fields");
        try
        {
            rows.push_back({f[0], f[1], std::stod(f[2]), std::stoi(f[3]), std::stod(f[4]), std::stod(f[5]),
                            std::stol(f[6]), std::stod(f[7])});
        }
        catch (const std::exception &)
        {
            throw IoError(origin + ":" + std::to_string(lineno) + ": malformed field");
        }
    }
    return rows;
}

inline std::vector<ResultRow> read_csv(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_csv(in, path.string());
}

// ---------- SVG ----------

struct Series
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Static line chart with axes, ticks and legend. Raw data is embedded as an XML comment.
inline std::string render_line_chart(const std::vector<Series> &series, const std::string &title,
                                     const std::string &x_label, const std::string &y_label)
{
    constexpr double W = 720, Hh = 480, left = 70, right = 170, top = 40, bottom = 60;
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
        {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin))
        xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin)
        xmax = xmin + 1;
    if (ymax == ymin)
        ymax = ymin + 1;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = W - left - right, ph = Hh - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\" viewBox=\"0 0 " << W
      << " " << Hh << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<!-- data\n";
    for (const auto &s : series)
    {
        o << "series " << s.label << "\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            o << format_g12(s.x[i]) << " " << format_g12(s.y[i]) << "\n";
    }
    o << "-->\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        o << "<line x1=\"" << px(xv) << "\" y1=\"" << top + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << top + ph + 5
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << px(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << format_g12(std::round(xv * 1000) / 1000)
          << "</text>\n";
        o << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\"" << py(yv)
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << format_g12(std::round(yv * 1000) / 1000)
          << "</text>\n";
    }
    o << "<text x=\"" << left + pw / 2 << "\" y=\"" << Hh - 15 << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    o << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + ph / 2
      << ")\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si)
    {
        const auto &s = series[si];
        const char *color = palette[si % std::size(palette)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            o << px(s.x[i]) << "," << py(s.y[i]) << (i + 1 < s.x.size() ? " " : "");
        o << "\"/>\n";
        if (s.x.size() <= 32)
            for (std::size_t i = 0; i < s.x.size(); ++i)
                o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        const double ly = top + 16 + 18.0 * static_cast<double>(si);
        o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 36 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline void write_text(const std::filesystem::path &path, const std::string &text)
{
    auto out = detail::open_for_write(path);
    out << text;
    detail::close_checked(out, path);
}

inline std::string axis_label(const std::string &axis)
{
    if (axis == "snr" || axis == "none")
        return "SNR (dB)";
    if (axis == "bandwidth")
        return "Bandwidth (Hz)";
    if (axis == "subcarriers")
        return "Number of subcarriers";
    return axis;
}

// Mean SE (and EE) per scheme against the sweep axis.
inline void emit_summary_plots(const std::vector<ResultRow> &rows, const std::filesystem::path &dir)
{
    const std::string axis = rows.empty() ? "none" : rows.front().axis;
    std::vector<Series> se, ee;
    for (const auto &m : mean_by_scheme(rows))
    {
        if (se.empty() || se.back().label != m.scheme)
        {
            se.push_back({m.scheme, {}, {}});
            ee.push_back({m.scheme, {}, {}});
        }
        se.back().x.push_back(m.axis_value);
        se.back().y.push_back(m.mean_se);
        ee.back().x.push_back(m.axis_value);
        ee.back().y.push_back(m.mean_ee);
    }
    write_text(dir / "se.svg", render_line_chart(se, "Average spectral efficiency", axis_label(axis), "SE (bits/s/Hz)"));
    write_text(dir / "ee.svg", render_line_chart(ee, "Average energy efficiency", axis_label(axis), "EE (bits/s/Hz/W)"));
}

// ---------- beam pattern ----------

struct BeamPatternSpec
{
    int n_ant = 64;
    double spacing = 0.5;
    double carrier_hz = 60e9;
    double bandwidth_hz = 4e9;
    double focus_rad = std::numbers::pi / 6.0;
    std::vector<double> frequencies_hz; // empty: f_c - B/2, f_c, f_c + B/2
    int grid_points = 1001;

    std::vector<double> resolved_frequencies() const
    {
        if (!frequencies_hz.empty())
            return frequencies_hz;
        return {carrier_hz - bandwidth_hz / 2.0, carrier_hz, carrier_hz + bandwidth_hz / 2.0};
    }
};

// grid_points angles strictly inside (-pi/2, pi/2), evenly spaced.
inline std::vector<double> open_half_circle_grid(int points)
{
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = std::numbers::pi / (points + 1);
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = -std::numbers::pi / 2.0 + (i + 1) * step;
    return g;
}

// Writes the SVG figure and its CSV companion (frequency_hz,angle_rad,gain; grid_points rows per frequency).
inline void emit_beam_pattern_figure(const BeamPatternSpec &spec, const std::filesystem::path &svg_path,
                                     const std::filesystem::path &csv_path)
{
    if (spec.n_ant < 1 || spec.grid_points < 2)
        throw ConfigError("beampattern: need at least one antenna and two grid points");
    const auto grid = open_half_circle_grid(spec.grid_points);
    std::vector<Series> series;
    std::string csv = "frequency_hz,angle_rad,gain\n";
    for (double f : spec.resolved_frequencies())
    {
        if (!(f > 0.0))
            throw ConfigError("beampattern: frequencies must be positive");
        const auto gain = beam_pattern(spec.focus_rad, spec.carrier_hz, f, spec.n_ant, grid, spec.spacing, spec.carrier_hz);
        char label[64];
        std::snprintf(label, sizeof(label), "f = %.4g GHz", f / 1e9);
        series.push_back({label, grid, gain});
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv += format_g12(f) + "," + format_g12(grid[i]) + "," + format_g12(gain[i]) + "\n";
    }
    write_text(csv_path, csv);
    write_text(svg_path, render_line_chart(series, "Beam pattern, focus " + format_g12(spec.focus_rad) + " rad",
                                           "Angle (rad)", "Normalized gain"));
}

inline void emit_oracle_summary(const OracleSummary &s, const std::filesystem::path &path)
{
    std::string out = "scheme,trials,mean_ratio,min_ratio,frac_ratio_ge_0.95\n";
    for (const auto &r : s.schemes)
        out += r.scheme + "," + std::to_string(s.trials) + "," + format_g12(r.mean_ratio) + "," +
               format_g12(r.min_ratio) + "," + format_g12(r.frac_at_least_95) + "\n";
    write_text(path, out);
}

} // namespace swhbf

#endif
