#include "actuation/output.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace actuation {

namespace {

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Shortest text that parses back to the same double, for axis values.
std::string compact(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

void stats_row(std::ostringstream& out, int generation, const char* group, const GroupStats& s) {
    out << generation << ',' << group << ',' << fixed(s.mean) << ',' << fixed(s.sd) << ',' << fixed(s.q05) << ','
        << fixed(s.q95) << '\n';
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "generation,group,mean_c,sd_c,q05,q95\n";
    for (const GenerationSummary& s : trajectory.summaries) {
        stats_row(out, s.generation, "A", s.group_a);
        if (s.group_b) {
            stats_row(out, s.generation, "B", *s.group_b);
            stats_row(out, s.generation, "all", s.overall);
        }
    }
    return out.str();
}

std::string samples_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "generation,agent,group,c,w\n";
    for (const PopulationState& pop : trajectory.samples) {
        for (std::size_t i = 0; i < pop.agents.size(); ++i) {
            const Agent& agent = pop.agents[i];
            out << pop.generation << ',' << i << ',' << to_string(agent.group) << ',' << fixed(agent.c) << ','
                << fixed(agent.w) << '\n';
        }
    }
    return out.str();
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    for (const SweepAxis& axis : result.axes) out << axis.name << ',';
    out << "replicate,final_mean_c_overall,final_mean_c_A,final_mean_c_B,converged_at\n";
    for (const SweepCell& cell : result.cells) {
        for (std::size_t r = 0; r < cell.replicates.size(); ++r) {
            const ReplicateOutcome& rep = cell.replicates[r];
            for (double v : cell.values) out << compact(v) << ',';
            out << r << ',' << fixed(rep.final_mean) << ',' << fixed(rep.final_mean_a) << ','
                << (rep.final_mean_b ? fixed(*rep.final_mean_b) : std::string()) << ','
                << (rep.converged_at ? std::to_string(*rep.converged_at) : std::string("NA")) << '\n';
        }
    }
    return out.str();
}

std::string heat_color(double v, double lo, double hi) {
    double u = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    if (!std::isfinite(u)) u = 0.5;
    u = std::clamp(u, 0.0, 1.0);
    // Piecewise-linear diverging ramp: red -> near-white -> dark blue.
    struct Rgb {
        double r, g, b;
    };
    constexpr Rgb red{178, 24, 43}, pale{247, 247, 247}, blue{5, 48, 97};
    const Rgb& a = u < 0.5 ? red : pale;
    const Rgb& b = u < 0.5 ? pale : blue;
    const double t = u < 0.5 ? u * 2.0 : (u - 0.5) * 2.0;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + (b.r - a.r) * t)),
                  static_cast<int>(std::lround(a.g + (b.g - a.g) * t)),
                  static_cast<int>(std::lround(a.b + (b.b - a.b) * t)));
    return buf;
}

std::string sweep_heatmap_svg(const SweepResult& result, double lo, double hi, const std::string& title) {
    // Columns follow the last axis, rows the first (a one-axis sweep is one row).
    const bool two_axes = result.axes.size() >= 2;
    const SweepAxis& col_axis = result.axes.back();
    const std::size_t cols = col_axis.values.size();
    const std::size_t rows = two_axes ? result.axes.front().values.size() : 1;

    const double cell_w = std::max(2.0, std::min(40.0, 600.0 / static_cast<double>(cols)));
    const double cell_h = std::max(2.0, std::min(40.0, 400.0 / static_cast<double>(rows)));
    const double left = 70, top = 40, legend_w = 90;
    const double plot_w = cell_w * static_cast<double>(cols), plot_h = cell_h * static_cast<double>(rows);
    const double width = left + plot_w + legend_w + 20, height = top + plot_h + 50;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 1) << "\" height=\""
        << fixed(height, 1) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<title>" << escape_xml(title) << "</title>\n";
    svg << "<text x=\"" << fixed(left, 1) << "\" y=\"20\" font-size=\"13\">" << escape_xml(title) << "</text>\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t index = r * cols + c;
            if (index >= result.cells.size()) continue;
            const SweepCell& cell = result.cells[index];
            // First axis increases upward, like a conventional y axis.
            const double y = top + plot_h - static_cast<double>(r + 1) * cell_h;
            svg << "<rect x=\"" << fixed(left + static_cast<double>(c) * cell_w, 2) << "\" y=\"" << fixed(y, 2)
                << "\" width=\"" << fixed(cell_w, 2) << "\" height=\"" << fixed(cell_h, 2) << "\" fill=\""
                << heat_color(cell.median_final_mean, lo, hi) << "\"><title>" << fixed(cell.median_final_mean, 1)
                << "</title></rect>\n";
        }
    }
    // Axis labels with the first and last values.
    svg << "<text x=\"" << fixed(left + plot_w / 2, 1) << "\" y=\"" << fixed(top + plot_h + 32, 1)
        << "\" text-anchor=\"middle\">" << escape_xml(col_axis.name) << "</text>\n";
    svg << "<text x=\"" << fixed(left, 1) << "\" y=\"" << fixed(top + plot_h + 14, 1) << "\">"
        << compact(col_axis.values.front()) << "</text>\n";
    svg << "<text x=\"" << fixed(left + plot_w, 1) << "\" y=\"" << fixed(top + plot_h + 14, 1)
        << "\" text-anchor=\"end\">" << compact(col_axis.values.back()) << "</text>\n";
    if (two_axes) {
        const SweepAxis& row_axis = result.axes.front();
        svg << "<text x=\"12\" y=\"" << fixed(top + plot_h / 2, 1) << "\" transform=\"rotate(-90 12 "
            << fixed(top + plot_h / 2, 1) << ")\" text-anchor=\"middle\">" << escape_xml(row_axis.name)
            << "</text>\n";
        svg << "<text x=\"" << fixed(left - 4, 1) << "\" y=\"" << fixed(top + plot_h, 1) << "\" text-anchor=\"end\">"
            << compact(row_axis.values.front()) << "</text>\n";
        svg << "<text x=\"" << fixed(left - 4, 1) << "\" y=\"" << fixed(top + 10, 1) << "\" text-anchor=\"end\">"
            << compact(row_axis.values.back()) << "</text>\n";
    }
    // Legend: vertical gradient from lo (bottom) to hi (top).
    const double lx = left + plot_w + 20, lh = std::max(plot_h, 100.0);
    svg << "<defs><linearGradient id=\"legend\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
    for (int k = 0; k <= 10; ++k) {
        const double u = k / 10.0;
        svg << "<stop offset=\"" << fixed(u, 2) << "\" stop-color=\"" << heat_color(lo + u * (hi - lo), lo, hi)
            << "\"/>";
    }
    svg << "</linearGradient></defs>\n";
    svg << "<rect x=\"" << fixed(lx, 1) << "\" y=\"" << fixed(top, 1) << "\" width=\"16\" height=\"" << fixed(lh, 1)
        << "\" fill=\"url(#legend)\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << fixed(lx + 20, 1) << "\" y=\"" << fixed(top + 10, 1) << "\">" << fixed(hi, 0)
        << " Hz</text>\n";
    svg << "<text x=\"" << fixed(lx + 20, 1) << "\" y=\"" << fixed(top + lh, 1) << "\">" << fixed(lo, 0)
        << " Hz</text>\n";
    svg << "<text x=\"" << fixed(lx + 20, 1) << "\" y=\"" << fixed(top + lh / 2 + 4, 1) << "\">mean c</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

nlohmann::json RunManifest::to_json() const {
    return nlohmann::json{{"command", command},     {"version", version},         {"seed", seed},
                          {"config", config},       {"started_at", started_at}, {"finished_at", finished_at},
                          {"outputs", outputs}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace actuation
