#include "probespec/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "probespec/dressed.hpp"
#include "probespec/pumping.hpp"
#include "probespec/scan.hpp"

namespace probespec {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

fs::path ensure_output_dir(const RunConfig& cfg) {
    if (cfg.output_dir.empty()) {
        throw ConfigError(
            "output_dir is not set (config key 'output_dir' or --out)");
    }
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + cfg.output_dir +
                          "': " + ec.message());
    }
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

std::string system_label(const RunConfig& cfg) {
    return "Fg=" + cfg.F_g.str() + " -> Fe=" + cfg.F_e.str();
}

ordered_json grid_json(const GridSpec& grid) {
    ordered_json j;
    j["min"] = grid.min;
    j["max"] = grid.max;
    j["points"] = grid.points;
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["system"] = system_label(cfg);
    j["F_g"] = cfg.F_g.str();
    j["F_e"] = cfg.F_e.str();
    j["omega_c_rabi"] = cfg.omega_c_rabi;
    j["gamma"] = cfg.gamma;
    j["theta_degrees"] = cfg.theta_degrees;
    j["probe_rabi"] = cfg.probe_rabi;
    j["grid"] = grid_json(cfg.grid);
    j["mode"] = run_mode_name(cfg.mode);
    if (!cfg.sweep_values.empty()) j["sweep_values"] = cfg.sweep_values;
    j["output_dir"] = cfg.output_dir;
    return j;
}

ordered_json complex_json(const Complex& z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

ordered_json pathway_json(const Pathway& path) {
    ordered_json j;
    j["label"] = path.label();
    j["class"] = pathway_class_name(path.cls);
    j["photons"] = path.photons();
    j["initial"] = path.initial.str();
    j["final"] = path.final_state.str();
    j["resonance_detuning"] = path.resonance_detuning;
    j["initial_population"] = path.initial_population;
    j["total_amplitude"] = complex_json(path.total_amplitude);
    std::vector<Complex> finite;
    for (const auto& b : path.branches) {
        if (!b.divergent) finite.push_back(b.amplitude);
    }
    j["interference"] = interference_name(interference_verdict(finite));
    j["has_divergent"] = path.has_divergent;
    ordered_json branches = ordered_json::array();
    for (const auto& b : path.branches) {
        ordered_json bj;
        bj["intermediate"] = b.intermediate.str();
        bj["numerator"] = complex_json(b.numerator);
        bj["denominator"] = b.denominator;
        bj["amplitude"] = complex_json(b.amplitude);
        bj["divergent"] = b.divergent;
        branches.push_back(std::move(bj));
    }
    j["branches"] = std::move(branches);
    return j;
}

ordered_json pathways_json(const std::vector<Pathway>& paths) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : paths) arr.push_back(pathway_json(p));
    return arr;
}

ordered_json peak_json(const Peak& peak) {
    ordered_json j;
    j["delta"] = peak.delta;
    j["weight"] = peak.weight;
    j["class"] = pathway_class_name(peak.cls);
    j["interference"] = interference_name(peak.interference);
    j["constituents"] = peak.constituents;
    return j;
}

ordered_json peak_table_json(const PeakTable& table) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : table.peaks) arr.push_back(peak_json(p));
    return arr;
}

std::string predicted_peaks_csv(const PeakTable& table) {
    std::string csv = "delta,weight,class\n";
    for (const auto& p : table.peaks) {
        csv += fmt_g(p.delta) + "," + fmt_g(p.weight) + "," +
               pathway_class_name(p.cls) + "\n";
    }
    return csv;
}

std::string trace_csv(const SpectrumTrace& trace) {
    std::string csv = "delta,absorption\n";
    for (std::size_t i = 0; i < trace.delta.size(); ++i) {
        csv += fmt_g(trace.delta[i]) + "," + fmt_g(trace.absorption[i]) + "\n";
    }
    return csv;
}

std::string found_peaks_csv(const std::vector<FoundPeak>& peaks) {
    std::string csv = "delta,height,prominence\n";
    for (const auto& p : peaks) {
        csv += fmt_g(p.delta) + "," + fmt_g(p.height) + "," +
               fmt_g(p.prominence) + "\n";
    }
    return csv;
}

ordered_json meta_json(const TraceMeta& meta, const RunConfig& cfg) {
    ordered_json j;
    j["system"] = meta.system;
    j["omega_c_rabi"] = meta.omega_c_rabi;
    j["probe_rabi"] = meta.probe_rabi;
    j["gamma"] = meta.gamma;
    j["theta_degrees"] = cfg.theta_degrees;
    j["theta_radians"] = meta.theta;
    j["max_K"] = meta.max_K;
    j["method"] = meta.method;
    j["normalization"] = meta.normalization;
    j["grid"] = grid_json(cfg.grid);
    return j;
}

void dump_json(const fs::path& path, const ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

// Prominence floor used everywhere a computed trace is searched for maxima.
double prominence_floor(const SpectrumTrace& trace) {
    double top = 0.0;
    for (double a : trace.absorption) top = std::max(top, a);
    return top > 0.0 ? 0.01 * top : 0.0;
}

std::vector<FoundPeak> trace_maxima(const SpectrumTrace& trace) {
    return find_peaks(trace, prominence_floor(trace));
}

constexpr double kWeightFloor = 1e-12;

struct PathwayAnalysis {
    DressedBasis basis;
    PopulationDistribution pops;
    std::vector<Pathway> pathways;
    PeakTable table;
};

PathwayAnalysis analyze_pathways(const TransitionSystem& sys) {
    PathwayAnalysis a;
    a.basis = dress(sys);
    a.pops = pump_steady_state(sys);
    a.pathways = enumerate_pathways(sys, a.basis, a.pops);
    a.table = peak_table(a.pathways);
    return a;
}

}  // namespace

double match_tolerance(const TransitionSystem& sys) {
    return std::max(0.1 * sys.gamma, 0.05 * sys.omega_c_rabi);
}

double central_region_radius(const TransitionSystem& sys,
                             const std::vector<Pathway>& pathways) {
    double reach = 0.0;
    for (const auto& p : pathways) {
        if (p.photons() != 2) continue;
        reach = std::max(reach, std::abs(p.resonance_detuning));
    }
    double radius = 0.25 * sys.gamma;
    if (reach > 0.0) radius = std::max(radius, reach + match_tolerance(sys));
    return radius;
}

CompareReport compare_predictions(const TransitionSystem& sys,
                                  const std::vector<Pathway>& pathways,
                                  const PeakTable& predicted,
                                  const OracleSpectrum& spectrum) {
    CompareReport report;
    report.predicted = predicted;
    report.oracle_peaks = trace_maxima(spectrum.trace);
    report.tolerance = match_tolerance(sys);
    report.central_radius = central_region_radius(sys, pathways);

    // Two-photon predictions split into expected peaks and asserted absences.
    std::vector<double> expected;
    for (const auto& p : predicted.peaks) {
        if (p.cls == PathwayClass::OnePhotonBareDressed) continue;
        if (p.weight > kWeightFloor) {
            expected.push_back(p.delta);
        } else {
            report.absence_predictions.push_back(p.delta);
        }
    }

    // Greedy nearest-first one-to-one pairing between expected positions and
    // measured maxima, considering only pairs within the tolerance.
    struct Candidate {
        double distance;
        std::size_t pred, peak;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        for (std::size_t j = 0; j < report.oracle_peaks.size(); ++j) {
            double d = std::abs(expected[i] - report.oracle_peaks[j].delta);
            if (d <= report.tolerance) candidates.push_back({d, i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  return std::tie(a.distance, a.pred, a.peak) <
                         std::tie(b.distance, b.pred, b.peak);
              });
    std::vector<bool> pred_used(expected.size(), false);
    std::vector<bool> peak_used(report.oracle_peaks.size(), false);
    for (const auto& c : candidates) {
        if (pred_used[c.pred] || peak_used[c.peak]) continue;
        pred_used[c.pred] = true;
        peak_used[c.peak] = true;
        report.matches.push_back({expected[c.pred],
                                  report.oracle_peaks[c.peak].delta,
                                  c.distance});
    }
    std::sort(report.matches.begin(), report.matches.end(),
              [](const PeakMatch& a, const PeakMatch& b) {
                  return a.predicted < b.predicted;
              });
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!pred_used[i]) report.unmatched_predictions.push_back(expected[i]);
    }

    // Every maximum inside the central region must be near some predicted
    // position (any class, any weight) or it counts against the predictions.
    for (const auto& peak : report.oracle_peaks) {
        if (std::abs(peak.delta) > report.central_radius) continue;
        bool explained = false;
        for (const auto& p : predicted.peaks) {
            if (std::abs(p.delta - peak.delta) <= report.tolerance) {
                explained = true;
                break;
            }
        }
        if (!explained) report.unmatched_oracle.push_back(peak.delta);
    }

    report.concordant = report.unmatched_predictions.empty() &&
                        report.unmatched_oracle.empty();
    return report;
}

void run_analyze(const RunConfig& cfg) {
    fs::path dir = ensure_output_dir(cfg);
    TransitionSystem sys = make_system(cfg);
    PathwayAnalysis a = analyze_pathways(sys);

    write_text(dir / "peaks.csv", predicted_peaks_csv(a.table));
    SpectrumTrace sketch =
        synthesize_spectrum(a.table, WidthPolicy{}, cfg.grid.values());
    write_text(dir / "spectrum.csv", trace_csv(sketch));
    dump_json(dir / "pathways.json", pathways_json(a.pathways));

    ordered_json report;
    report["config"] = config_json(cfg);

    ordered_json dressed = ordered_json::array();
    for (const auto& d : a.basis.doublets) {
        ordered_json dj;
        dj["m"] = d.m.str();
        dj["splitting"] = d.omega;
        dj["phase"] = d.phi;
        dressed.push_back(std::move(dj));
    }
    report["doublets"] = std::move(dressed);
    ordered_json survivors = ordered_json::array();
    for (const auto& s : a.basis.survivors) survivors.push_back(s.str());
    report["survivors"] = std::move(survivors);

    ordered_json pops;
    ordered_json values = ordered_json::array();
    for (int i = 0; i < a.pops.populations.size(); ++i) {
        ordered_json pj;
        pj["sublevel"] = sys.sublevel(i).str();
        pj["population"] = a.pops.populations[i];
        values.push_back(std::move(pj));
    }
    pops["values"] = std::move(values);
    ordered_json trapped = ordered_json::array();
    for (const auto& t : a.pops.trapped) trapped.push_back(t.str());
    pops["trapped"] = std::move(trapped);
    report["populations"] = std::move(pops);

    report["peaks"] = peak_table_json(a.table);

    ordered_json notes = ordered_json::array();
    if (a.pops.trapped.empty()) {
        notes.push_back("no trapped states; normal-EIA regime");
    } else {
        std::string note = "optical pumping traps population in:";
        for (const auto& t : a.pops.trapped) note += " " + t.str();
        notes.push_back(note);
    }
    bool has_absence = false;
    for (const auto& p : a.table.peaks) {
        if (p.cls != PathwayClass::OnePhotonBareDressed &&
            p.weight <= kWeightFloor) {
            has_absence = true;
        }
    }
    if (has_absence) {
        notes.push_back(
            "some two-photon resonances carry zero weight (destructive "
            "interference): predicted absences, not peaks");
    }
    notes.push_back(
        "spectrum.csv is a perturbative sketch (sum of Lorentzians), not a "
        "master-equation solution; use the spectrum mode for that");
    report["notes"] = std::move(notes);

    dump_json(dir / "report.json", report);
}

void run_spectrum(const RunConfig& cfg, SolveMethod method) {
    fs::path dir = ensure_output_dir(cfg);
    TransitionSystem sys = make_system(cfg);
    OracleSpectrum spec =
        parallel_spectrum(sys, cfg.probe_rabi, cfg.grid.values(), method);

    write_text(dir / "spectrum.csv", trace_csv(spec.trace));
    dump_json(dir / "spectrum.meta.json", meta_json(spec.meta, cfg));
    write_text(dir / "peaks.csv", found_peaks_csv(trace_maxima(spec.trace)));
}

CompareReport run_compare(const RunConfig& cfg, SolveMethod method) {
    fs::path dir = ensure_output_dir(cfg);
    TransitionSystem sys = make_system(cfg);
    PathwayAnalysis a = analyze_pathways(sys);
    OracleSpectrum spec =
        parallel_spectrum(sys, cfg.probe_rabi, cfg.grid.values(), method);
    CompareReport report = compare_predictions(sys, a.pathways, a.table, spec);

    write_text(dir / "spectrum.csv", trace_csv(spec.trace));
    dump_json(dir / "spectrum.meta.json", meta_json(spec.meta, cfg));
    write_text(dir / "peaks.csv", found_peaks_csv(report.oracle_peaks));
    dump_json(dir / "pathways.json", pathways_json(a.pathways));

    ordered_json j;
    j["config"] = config_json(cfg);
    j["tolerance"] = report.tolerance;
    j["central_radius"] = report.central_radius;
    j["predicted"] = peak_table_json(report.predicted);
    ordered_json peaks = ordered_json::array();
    for (const auto& p : report.oracle_peaks) {
        ordered_json pj;
        pj["delta"] = p.delta;
        pj["height"] = p.height;
        pj["prominence"] = p.prominence;
        peaks.push_back(std::move(pj));
    }
    j["oracle_peaks"] = std::move(peaks);
    ordered_json matches = ordered_json::array();
    for (const auto& m : report.matches) {
        ordered_json mj;
        mj["predicted"] = m.predicted;
        mj["oracle"] = m.oracle;
        mj["distance"] = m.distance;
        matches.push_back(std::move(mj));
    }
    j["matches"] = std::move(matches);
    j["unmatched_predictions"] = report.unmatched_predictions;
    j["predicted_absences"] = report.absence_predictions;
    j["unmatched_oracle"] = report.unmatched_oracle;
    j["verdict"] = report.concordant ? "concordant" : "discrepant";
    dump_json(dir / "report.json", j);

    return report;
}

void run_sweep(const RunConfig& cfg, SolveMethod method) {
    if (cfg.sweep_values.empty()) {
        throw ConfigError("sweep requires a nonempty 'sweep_values' list");
    }
    fs::path dir = ensure_output_dir(cfg);
    std::vector<double> values = cfg.sweep_values;
    std::sort(values.begin(), values.end());

    std::string summary = "omega_c,central_peak_count,dip_depth,splitting\n";
    ordered_json rows = ordered_json::array();
    bool found_threshold = false;
    double threshold = 0.0;

    for (double omega : values) {
        RunConfig point = cfg;
        point.omega_c_rabi = omega;
        TransitionSystem sys = make_system(point);
        PathwayAnalysis a = analyze_pathways(sys);
        OracleSpectrum spec =
            parallel_spectrum(sys, cfg.probe_rabi, cfg.grid.values(), method);

        char name[64];
        std::snprintf(name, sizeof(name), "spectrum_omega_%.6g.csv", omega);
        write_text(dir / name, trace_csv(spec.trace));

        double radius = central_region_radius(sys, a.pathways);
        std::vector<FoundPeak> maxima = trace_maxima(spec.trace);
        std::vector<double> central;
        for (const auto& p : maxima) {
            if (std::abs(p.delta) <= radius) central.push_back(p.delta);
        }

        // Contrast of the central structure: (max - min) / max over the
        // central samples, 0 when the trace carries no absorption there.
        double hi = 0.0, lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < spec.trace.delta.size(); ++i) {
            if (std::abs(spec.trace.delta[i]) > radius) continue;
            hi = std::max(hi, spec.trace.absorption[i]);
            lo = std::min(lo, spec.trace.absorption[i]);
        }
        double dip = hi > 0.0 ? (hi - lo) / hi : 0.0;
        double splitting =
            central.size() >= 2 ? central.back() - central.front() : 0.0;

        summary += fmt_g(omega) + "," + std::to_string(central.size()) + "," +
                   fmt_g(dip) + "," + fmt_g(splitting) + "\n";

        ordered_json row;
        row["omega_c"] = omega;
        row["central_radius"] = radius;
        row["central_peak_count"] = central.size();
        row["central_peaks"] = central;
        row["dip_depth"] = dip;
        row["splitting"] = splitting;
        row["spectrum_file"] = name;
        rows.push_back(std::move(row));

        if (!found_threshold && central.size() > 1) {
            found_threshold = true;
            threshold = omega;
        }
    }

    write_text(dir / "sweep.csv", summary);

    ordered_json report;
    report["config"] = config_json(cfg);
    report["rows"] = std::move(rows);
    if (found_threshold) {
        report["breakup_threshold"] = threshold;
    } else {
        report["breakup_threshold"] = nullptr;
    }
    dump_json(dir / "report.json", report);
}

}  // namespace probespec
