#include "probespec/pathways.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probespec {

namespace {

constexpr double kDivergenceCut = 1e-6;  // |denominator| below this * gamma

DressedStateRef survivor_ref(const SublevelRef& s) {
    return DressedStateRef{false, {}, +1, s};
}

// Intermediate detuning and branch amplitude for i -> mid -> f, with the
// probe already expressed in the dressed basis.  Initial states are bare
// (zero internal energy), so E_i drops out.
Branch make_branch(const Matrix& probe_dressed, const DressedBasis& basis,
                   int initial_idx, const DressedStateRef& mid, int final_idx,
                   double delta_res_abs, double gamma) {
    Branch b;
    b.intermediate = mid;
    const int mid_idx = basis.index(mid);
    b.numerator =
        probe_dressed(final_idx, mid_idx) * probe_dressed(mid_idx, initial_idx);
    b.denominator = dressed_energy(basis, mid) - delta_res_abs;
    b.divergent = std::abs(b.denominator) < kDivergenceCut * gamma;
    if (!b.divergent) b.amplitude = b.numerator / b.denominator;
    return b;
}

Complex finite_branch_sum(const std::vector<Branch>& branches) {
    Complex total{0.0, 0.0};
    for (const auto& b : branches)
        if (!b.divergent) total += b.amplitude;
    return total;
}

std::vector<Complex> finite_amplitudes(const Pathway& p) {
    std::vector<Complex> out;
    for (const auto& b : p.branches)
        if (!b.divergent) out.push_back(b.amplitude);
    return out;
}

HalfInt abs_value(HalfInt m) {
    return m.twice() < 0 ? HalfInt::from_twice(-m.twice()) : m;
}

}  // namespace

std::string pathway_class_name(PathwayClass cls) {
    switch (cls) {
        case PathwayClass::OnePhotonBareDressed: return "one-photon-bare-dressed";
        case PathwayClass::TwoPhotonBareBare: return "two-photon-bare-bare";
        case PathwayClass::TwoPhotonBareDressed: return "two-photon-bare-dressed";
    }
    throw std::logic_error("unknown pathway class");
}

std::string interference_name(Interference v) {
    switch (v) {
        case Interference::Constructive: return "constructive";
        case Interference::Destructive: return "destructive";
        case Interference::Mixed: return "mixed";
        case Interference::NotApplicable: return "not-applicable";
    }
    throw std::logic_error("unknown interference verdict");
}

std::string SymbolicOffset::str() const {
    if (sign == 0) return "0";
    return std::string(sign > 0 ? "+" : "-") + "Omega_" + m.str() + "/4";
}

std::vector<Pathway> enumerate_pathways(const TransitionSystem& sys,
                                        const DressedBasis& basis,
                                        const PopulationDistribution& pops,
                                        int max_photons,
                                        double population_threshold,
                                        double amplitude_threshold) {
    if (max_photons < 1 || max_photons > 2)
        throw std::invalid_argument("max_photons must be 1 or 2");
    if (pops.populations.size() != sys.dim)
        throw std::invalid_argument("population vector does not match system");

    const Matrix probe_dressed = probe_in_dressed_basis(basis, sys);

    // candidate final states for two-photon transitions: every doublet
    // member plus the bare excited sublevels (the probe only raises, so a
    // bare ground state can never terminate a two-photon ladder)
    std::vector<DressedStateRef> doublet_members;
    for (const auto& l : basis.labels)
        if (l.is_doublet) doublet_members.push_back(l);
    std::vector<DressedStateRef> two_photon_finals = doublet_members;
    for (const auto& s : basis.survivors)
        if (s.excited) two_photon_finals.push_back(survivor_ref(s));

    std::vector<Pathway> out;
    for (const auto& s : basis.survivors) {
        if (s.excited) continue;
        const double pop = pops.populations[sys.index(s)];
        if (!(pop > population_threshold)) continue;
        const int i_idx = basis.index(survivor_ref(s));

        // one photon: bare ground -> doublet member
        for (const auto& f : doublet_members) {
            const Complex a = probe_dressed(basis.index(f), i_idx);
            if (std::abs(a) <= amplitude_threshold) continue;
            Pathway p;
            p.cls = PathwayClass::OnePhotonBareDressed;
            p.initial = s;
            p.final_state = f;
            p.total_amplitude = a;
            p.resonance_detuning = dressed_energy(basis, f) / sys.gamma;
            p.initial_population = pop;
            out.push_back(std::move(p));
        }

        if (max_photons < 2) continue;

        // two photons: bare ground -> (doublet member | bare excited), one
        // branch per doublet-member intermediate with nonzero elements
        for (const auto& f : two_photon_finals) {
            const int f_idx = basis.index(f);
            const double delta_res_abs = dressed_energy(basis, f) / 2.0;
            std::vector<Branch> branches;
            for (const auto& mid : doublet_members) {
                const int mid_idx = basis.index(mid);
                if (std::abs(probe_dressed(mid_idx, i_idx)) <= amplitude_threshold)
                    continue;
                if (std::abs(probe_dressed(f_idx, mid_idx)) <= amplitude_threshold)
                    continue;
                branches.push_back(make_branch(probe_dressed, basis, i_idx, mid,
                                               f_idx, delta_res_abs, sys.gamma));
            }
            if (branches.empty()) continue;
            Pathway p;
            p.cls = f.is_doublet ? PathwayClass::TwoPhotonBareDressed
                                 : PathwayClass::TwoPhotonBareBare;
            p.initial = s;
            p.final_state = f;
            p.total_amplitude = finite_branch_sum(branches);
            p.has_divergent = std::any_of(branches.begin(), branches.end(),
                                          [](const Branch& b) { return b.divergent; });
            p.branches = std::move(branches);
            p.resonance_detuning = delta_res_abs / sys.gamma;
            p.initial_population = pop;
            out.push_back(std::move(p));
        }
    }

    std::sort(out.begin(), out.end(), [&](const Pathway& a, const Pathway& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        const int ia = sys.index(a.initial), ib = sys.index(b.initial);
        if (ia != ib) return ia < ib;
        return basis.index(a.final_state) < basis.index(b.final_state);
    });
    return out;
}

Complex branch_amplitude(const SublevelRef& initial,
                         const DressedStateRef& intermediate,
                         const DressedStateRef& final_state,
                         const TransitionSystem& sys, const DressedBasis& basis) {
    if (initial.excited)
        throw std::invalid_argument("initial state must be a ground sublevel");
    if (!intermediate.is_doublet)
        throw std::invalid_argument("intermediate must be a doublet member");
    const int i_idx = basis.index(survivor_ref(initial));  // throws if coupled
    const Matrix probe_dressed = probe_in_dressed_basis(basis, sys);
    const double delta_res_abs = dressed_energy(basis, final_state) / 2.0;
    const Branch b = make_branch(probe_dressed, basis, i_idx, intermediate,
                                 basis.index(final_state), delta_res_abs, sys.gamma);
    if (b.divergent)
        throw std::domain_error("degenerate intermediate: branch diverges");
    return b.amplitude;
}

Interference interference_verdict(const std::vector<Complex>& amplitudes) {
    if (amplitudes.size() < 2) return Interference::NotApplicable;
    Complex coherent{0.0, 0.0};
    double incoherent = 0.0;
    for (const auto& a : amplitudes) {
        coherent += a;
        incoherent += std::norm(a);
    }
    if (incoherent == 0.0) return Interference::NotApplicable;
    const double ratio = std::norm(coherent) / incoherent;
    if (ratio > 1.0 + 1e-9) return Interference::Constructive;
    if (ratio < 1.0 - 1e-9) return Interference::Destructive;
    return Interference::Mixed;
}

PeakTable peak_table(const std::vector<Pathway>& pathways, double merge_tolerance) {
    if (!(merge_tolerance > 0.0))
        throw std::invalid_argument("merge_tolerance must be positive");

    struct Entry {
        int id;
        double delta;
        double weight;
    };
    std::vector<Entry> entries;
    entries.reserve(pathways.size());
    for (size_t i = 0; i < pathways.size(); ++i) {
        const auto& p = pathways[i];
        entries.push_back({static_cast<int>(i), p.resonance_detuning,
                           p.initial_population * std::norm(p.total_amplitude)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.delta < b.delta; });

    PeakTable table;
    table.merge_tolerance = merge_tolerance;
    size_t start = 0;
    while (start < entries.size()) {
        size_t stop = start + 1;
        while (stop < entries.size() &&
               entries[stop].delta - entries[stop - 1].delta <= merge_tolerance)
            ++stop;

        Peak peak;
        double weight_sum = 0.0, delta_weighted = 0.0, delta_plain = 0.0;
        for (size_t k = start; k < stop; ++k) {
            peak.constituents.push_back(entries[k].id);
            weight_sum += entries[k].weight;
            delta_weighted += entries[k].weight * entries[k].delta;
            delta_plain += entries[k].delta;
        }
        std::sort(peak.constituents.begin(), peak.constituents.end());
        peak.weight = weight_sum;
        peak.delta = weight_sum > 0.0 ? delta_weighted / weight_sum
                                      : delta_plain / static_cast<double>(stop - start);

        // dominant class: the heaviest constituent decides the label
        double best = -1.0;
        for (size_t k = start; k < stop; ++k)
            if (entries[k].weight > best) {
                best = entries[k].weight;
                peak.cls = pathways[entries[k].id].cls;
            }

        // verdicts per pathway; the peak reports the unanimous one, Mixed
        // when multi-branch constituents disagree, NotApplicable when no
        // constituent has competing finite branches
        bool any = false, unanimous = true;
        Interference first = Interference::NotApplicable;
        for (const int id : peak.constituents) {
            const auto amps = finite_amplitudes(pathways[id]);
            if (amps.size() < 2) continue;
            const Interference v = interference_verdict(amps);
            if (!any) {
                first = v;
                any = true;
            } else if (v != first) {
                unanimous = false;
            }
        }
        peak.interference = !any ? Interference::NotApplicable
                                 : (unanimous ? first : Interference::Mixed);

        table.peaks.push_back(std::move(peak));
        start = stop;
    }
    return table;
}

BreakupPrediction predict_breakup(HalfInt F_g, HalfInt F_e, double theta) {
    // reference intensity strong enough that distinct splittings cluster
    // apart cleanly; the symbolic positions do not depend on its value
    const double omega_ref = 10.0;
    const TransitionSystem sys =
        build_system(F_g, F_e, omega_ref, 1.0, 0.0, ProbeGeometry{theta});
    const DressedBasis basis = dress(sys);
    const PopulationDistribution pops = pump_steady_state(sys);
    const std::vector<Pathway> pathways = enumerate_pathways(sys, basis, pops);

    std::vector<Pathway> two_photon;
    for (const auto& p : pathways)
        if (p.photons() == 2) two_photon.push_back(p);

    const PeakTable table = peak_table(two_photon);

    BreakupPrediction pred;
    pred.two_photon_peak_count = static_cast<int>(table.peaks.size());

    std::vector<std::pair<double, SymbolicOffset>> seen;
    for (const auto& p : two_photon) {
        SymbolicOffset sym;
        if (p.cls == PathwayClass::TwoPhotonBareDressed) {
            sym.m = abs_value(p.final_state.m);
            sym.sign = p.final_state.sign;
        }
        const bool dup = std::any_of(seen.begin(), seen.end(),
                                     [&](const auto& e) { return e.second == sym; });
        if (!dup) seen.push_back({p.resonance_detuning, sym});
    }
    std::sort(seen.begin(), seen.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [delta, sym] : seen) pred.positions.push_back(sym);
    return pred;
}

SpectrumTrace synthesize_spectrum(const PeakTable& table,
                                  const WidthPolicy& widths,
                                  const std::vector<double>& grid) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("grid must be ascending");
    SpectrumTrace trace;
    trace.delta = grid;
    trace.absorption.assign(grid.size(), 0.0);
    for (const auto& peak : table.peaks) {
        const double hw = peak.cls == PathwayClass::OnePhotonBareDressed
                              ? widths.one_photon_half_width
                              : widths.two_photon_half_width;
        const double hw2 = hw * hw;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double d = grid[i] - peak.delta;
            trace.absorption[i] += peak.weight * hw2 / (d * d + hw2);
        }
    }
    return trace;
}

}  // namespace probespec
