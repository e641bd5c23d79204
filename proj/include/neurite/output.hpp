#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "neurite/config.hpp"
#include "neurite/grid.hpp"
#include "neurite/stepper.hpp"
#include "neurite/validate.hpp"

namespace neurite {

/// Output root directory, overridable through NEURITE_OUTPUT_ROOT.
inline std::filesystem::path output_root() {
    if (const char* env = std::getenv("NEURITE_OUTPUT_ROOT")) return env;
    return ".";
}

namespace detail {

// 17 significant digits reproduce a double exactly and print identically
// across runs, which makes the CSV output byte-deterministic.
inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    std::string s = buf;
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

}  // namespace detail

inline void write_series_csv(const std::filesystem::path& path, const RunRecord& rec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "time,L1,L2,Lambda_som,Lambda1,Lambda2,mass_residual\n";
    for (size_t i = 0; i < rec.times.size(); ++i) {
        out << detail::fmt17(rec.times[i]) << ',' << detail::fmt17(rec.lengths[0][i]) << ','
            << detail::fmt17(rec.lengths[1][i]) << ',' << detail::fmt17(rec.lambda_som[i]) << ','
            << detail::fmt17(rec.lambda[0][i]) << ',' << detail::fmt17(rec.lambda[1][i]) << ','
            << detail::fmt17(rec.mass_residual[i]) << '\n';
    }
}

inline void write_snapshot_csv(const std::filesystem::path& dir, const Snapshot& snap,
                               const Grid1D& grid) {
    const std::filesystem::path path =
        dir / ("snapshot_" + detail::fmt_time_label(snap.time) + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "y,x1,f_plus_1,f_minus_1,x2,f_plus_2,f_minus_2\n";
    for (int k = 0; k < grid.n_cells; ++k) {
        const double y = grid.center(k);
        const size_t ku = static_cast<size_t>(k);
        out << detail::fmt17(y) << ',' << detail::fmt17(y * snap.lengths[0]) << ','
            << detail::fmt17(snap.f_plus[0][ku]) << ',' << detail::fmt17(snap.f_minus[0][ku])
            << ',' << detail::fmt17(y * snap.lengths[1]) << ','
            << detail::fmt17(snap.f_plus[1][ku]) << ',' << detail::fmt17(snap.f_minus[1][ku])
            << '\n';
    }
}

inline nlohmann::json make_report(const BuiltExperiment& b, const RunRecord& rec) {
    const BoxReport box = box_constraint_monitor(rec, b.params);
    const HypothesisReport hyp = hypothesis_diagnostics(b.functions, b.params);
    double worst_residual = 0.0;
    for (double r : rec.mass_residual) worst_residual = std::max(worst_residual, r);

    nlohmann::json rep;
    rep["name"] = b.name;
    rep["preset"] = b.functions.name;
    rep["termination"] = to_string(rec.termination);
    rep["steps_taken"] = rec.steps_taken;
    rep["final_time"] = rec.final_time;
    rep["final"] = {{"L1", rec.final_state.lengths[0]},
                    {"L2", rec.final_state.lengths[1]},
                    {"Lambda_som", rec.final_state.lambda_som},
                    {"Lambda1", rec.final_state.lambda[0]},
                    {"Lambda2", rec.final_state.lambda[1]}};
    rep["mass"] = {{"initial", rec.initial_mass},
                   {"produced", rec.produced},
                   {"worst_residual", worst_residual}};
    rep["box"] = {{"min_f", box.min_f},
                  {"max_rho", box.max_rho},
                  {"min_length", box.min_length},
                  {"ok", box.ok()}};
    if (box.first_violation_time) rep["box"]["first_violation_time"] = *box.first_violation_time;
    rep["negative_flux_events"] = rec.negative_flux_events;
    rep["hypotheses_ok"] = hyp.ok();
    auto warns = nlohmann::json::array();
    for (const auto& w : hyp.warnings)
        warns.push_back({{"hypothesis", w.hypothesis}, {"message", w.message}});
    rep["hypothesis_warnings"] = warns;
    return rep;
}

// ---------------------------------------------------------------------------
// Minimal static SVG plots (convenience only; acceptance reads the CSVs)
// ---------------------------------------------------------------------------

namespace detail {

struct SvgCurve {
    const std::vector<double>* x = nullptr;
    const std::vector<double>* y = nullptr;
    const char* color = "black";
    std::string label;
};

inline void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                           const std::vector<SvgCurve>& curves) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& c : curves)
        for (size_t i = 0; i < c.x->size(); ++i) {
            const double x = (*c.x)[i], y = (*c.y)[i];
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    const double W = 640.0, H = 420.0, ml = 60.0, mr = 20.0, mt = 40.0, mb = 45.0;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g / %.4g", xmin, xmax);
    out << "<text x=\"" << (W - mr) << "\" y=\"" << H - 12 << "\" text-anchor=\"end\" "
        << "font-size=\"11\">x: " << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g / %.4g", ymin, ymax);
    out << "<text x=\"12\" y=\"" << mt - 8 << "\" font-size=\"11\">y: " << buf << "</text>\n";

    double ly = mt + 14.0;
    for (const auto& c : curves) {
        out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < c.x->size(); ++i)
            out << px((*c.x)[i]) << ',' << py((*c.y)[i]) << ' ';
        out << "\"/>\n";
        if (!c.label.empty()) {
            out << "<text x=\"" << W - mr - 5 << "\" y=\"" << ly << "\" text-anchor=\"end\" "
                << "font-size=\"12\" fill=\"" << c.color << "\">" << c.label << "</text>\n";
            ly += 16.0;
        }
    }
    out << "</svg>\n";
}

}  // namespace detail

inline void write_plots(const std::filesystem::path& dir, const RunRecord& rec,
                        const Grid1D& grid) {
    using detail::SvgCurve;
    detail::write_svg_plot(dir / "lengths.svg", "neurite lengths over time",
                           {SvgCurve{&rec.times, &rec.lengths[0], "crimson", "L1"},
                            SvgCurve{&rec.times, &rec.lengths[1], "steelblue", "L2"}});
    detail::write_svg_plot(dir / "pools.svg", "pool amounts over time",
                           {SvgCurve{&rec.times, &rec.lambda_som, "black", "soma"},
                            SvgCurve{&rec.times, &rec.lambda[0], "crimson", "cone 1"},
                            SvgCurve{&rec.times, &rec.lambda[1], "steelblue", "cone 2"}});
    if (!rec.snapshots.empty()) {
        const std::vector<double> y = grid.center_coords();
        for (const Snapshot& s : rec.snapshots) {
            detail::write_svg_plot(
                dir / ("densities_" + detail::fmt_time_label(s.time) + ".svg"),
                "densities at t = " + detail::fmt_time_label(s.time),
                {SvgCurve{&y, &s.f_plus[0], "crimson", "f+ (1)"},
                 SvgCurve{&y, &s.f_minus[0], "darkorange", "f- (1)"},
                 SvgCurve{&y, &s.f_plus[1], "steelblue", "f+ (2)"},
                 SvgCurve{&y, &s.f_minus[1], "teal", "f- (2)"}});
        }
    }
}

/// Runs one built experiment and writes series, snapshots, report and plots
/// into `dir`. Solver aborts become a diagnostic file plus nonzero status.
inline int run_experiment(const BuiltExperiment& b, const std::filesystem::path& dir,
                          bool plots = true) {
    std::filesystem::create_directories(dir);
    try {
        Stepper st(b.functions, b.params, b.grid, b.stepper);
        const RunRecord rec = st.run(b.initial, b.sampling);
        write_series_csv(dir / "series.csv", rec);
        for (const Snapshot& s : rec.snapshots) write_snapshot_csv(dir, s, b.grid);
        std::ofstream rep(dir / "report.json");
        rep << make_report(b, rec).dump(2) << '\n';
        if (plots) write_plots(dir, rec, b.grid);
        return 0;
    } catch (const std::exception& e) {
        std::ofstream diag(dir / "error.txt");
        diag << "run '" << b.name << "' aborted: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace neurite
