// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tns/experiment.hpp"
#include "tns/initial_conditions.hpp"
#include "tns/integrator.hpp"
#include "tns/lattice.hpp"
#include "test_helpers.hpp"

using namespace tns;
using namespace tns::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s  %s\n", id.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("tns_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct StoredRun {
    RunResult result;
    std::vector<SpectralField> fields;
};

StoredRun run_and_store(const SpectralField& u0, const RunSettings& settings, const MonitorConfig& monitor) {
    StoredRun stored;
    const SampleSink sink = [&](const TrajectorySample&, const SpectralField& field) {
        stored.fields.push_back(field);
    };
    stored.result = run(u0, settings, monitor, sink);
    return stored;
}

FieldProvider memory_provider(const std::vector<SpectralField>& fields) {
    return [&fields](std::size_t i) -> std::optional<SpectralField> {
        if (i >= fields.size())
            return std::nullopt;
        return fields[i];
    };
}

// Trajectories produced by the suite, re-checked globally by C5/C6.
struct NamedRun {
    std::string name;
    const Trajectory* traj;
    const std::vector<SpectralField>* fields;
    double nu;
};

// ---------------------------------------------------------------- C1
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string why;
    for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
        const SpectralField f = random_raw_field(16, 1000 + seed);
        const SpectralField p = leray_project(f);
        const SpectralField pp = leray_project(p);
        if (field_distance(pp, p) > 1e-14 * field_norm(p)) {
            ok = false;
            why = "idempotency breached at seed " + std::to_string(seed);
        }
        if (divergence_sup(p) > 1e-12 * max_coeff_magnitude(p)) {
            ok = false;
            why = "divergence_sup breached at seed " + std::to_string(seed);
        }
        SpectralField residual = f;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < f.grid.mode_count(); ++i)
                residual.comp[c][i] -= p.comp[c][i];
        const double total = field_norm(f) * field_norm(f);
        const double split = field_norm(p) * field_norm(p) + field_norm(residual) * field_norm(residual);
        if (std::abs(total - split) > 1e-12 * total) {
            ok = false;
            why = "Pythagoras breached at seed " + std::to_string(seed);
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 5.0) {
        ok = false;
        why = "runtime bound exceeded";
    }
    std::ostringstream detail;
    detail << "projector suite, 100 random fields at N=16 (" << elapsed << " s)";
    if (!ok)
        detail << " -- " << why;
    report("C01", ok, detail.str());
}

// ---------------------------------------------------------------- C2
void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    for (const int n : {8, 12})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const SpectralField u = random_masked_field(n, 2000 + seed);
            const SpectralField fast = advective_term(u);
            const SpectralField direct = advective_term_direct(u);
            const double rel = field_distance(fast, direct) / field_norm(direct);
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-10;
        }
    const double elapsed = seconds_since(start);
    ok = ok && elapsed < 30.0;
    std::ostringstream detail;
    detail << "advection oracle, worst relative error " << worst << " at N in {8,12} (" << elapsed << " s)";
    report("C02", ok, detail.str());
}

// ---------------------------------------------------------------- C3
struct ExactRunCheck {
    double coeff_err = 0.0;
    double law_err = 0.0;
    double elapsed = 0.0;
};

ExactRunCheck exact_solution_run(const SpectralField& u0, double decay_rate, double grad_sq_0, StoredRun& stored) {
    const auto start = std::chrono::steady_clock::now();
    RunSettings settings;
    settings.nu = 0.1;
    settings.fixed_dt = 1e-3;
    settings.t_end = 1.0;
    settings.sample_every = 100;
    stored = run_and_store(u0, settings, MonitorConfig{});

    ExactRunCheck check;
    const double t_end = stored.result.samples.back().t;
    const double factor = std::exp(-decay_rate * settings.nu * t_end);
    double scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u0.grid.mode_count(); ++i)
            scale = std::max(scale, std::abs(factor * u0.comp[c][i]));
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u0.grid.mode_count(); ++i) {
            const Complex exact = factor * u0.comp[c][i];
            const double err = std::abs(stored.result.final_field.comp[c][i] - exact);
            check.coeff_err = std::max(check.coeff_err, err / (std::abs(exact) > 0.0 ? std::abs(exact) : scale));
        }
    for (const TrajectorySample& s : stored.result.samples) {
        const double law = grad_sq_0 * std::exp(-2.0 * decay_rate * settings.nu * s.t);
        check.law_err = std::max(check.law_err, std::abs(s.grad_sq - law) / law);
    }
    check.elapsed = seconds_since(start);
    return check;
}

// ---------------------------------------------------------------- C4
void criterion_4() {
    InitialConditionSpec spec;
    spec.kind = InitialConditionSpec::Kind::random_band;
    spec.amplitude = 3.0;
    spec.band_min = 1;
    spec.band_max = 4;
    spec.slope = -1.0;
    spec.seed = 424242;
    const SpectralField u0 = ic_random_band(16, spec);

    const double nu = 0.02, t_end = 0.2;
    AdvectionWorkspace ws(u0.grid);
    const auto march = [&](long long steps) {
        SpectralField u = u0;
        const double dt = t_end / static_cast<double>(steps);
        for (long long i = 0; i < steps; ++i)
            u = step(u, dt, nu, ws);
        return u;
    };
    const SpectralField ref = march(1024);
    const double err_coarse = field_distance(march(32), ref);
    const double err_fine = field_distance(march(64), ref);
    const double ratio = err_coarse / err_fine;
    std::ostringstream detail;
    detail << "dt-halving error ratio " << ratio << " (errors " << err_coarse << " -> " << err_fine << ")";
    report("C04", ratio >= 12.0 && ratio <= 20.0, detail.str());
}

// ---------------------------------------------------------------- C5/C6
void criterion_5(const std::vector<NamedRun>& runs) {
    bool ok = true;
    std::ostringstream detail;
    detail << "energy(t) + dissipation - energy(0) <= 1e-8 energy(0):";
    for (const NamedRun& r : runs) {
        const double e0 = r.traj->front().energy;
        double worst = -std::numeric_limits<double>::infinity();
        for (const TrajectorySample& s : *r.traj)
            worst = std::max(worst, s.energy + s.dissipation_integral - e0);
        const bool pass = e0 == 0.0 ? worst <= 0.0 : worst <= 1e-8 * e0;
        ok = ok && pass;
        detail << " " << r.name << " residual " << worst << ";";
    }
    report("C05", ok, detail.str());
}

void criterion_6(const std::vector<NamedRun>& runs) {
    bool ok = true;
    long long total_checks = 0;
    for (const NamedRun& r : runs) {
        const BoundReport rep = verify_trajectory(*r.traj, memory_provider(*r.fields), MonitorConfig{}, r.nu);
        ok = ok && rep.chain_check_failures == 0;
        total_checks += static_cast<long long>(r.fields->size());
    }
    std::ostringstream detail;
    detail << "chain inequalities at " << total_checks << " checkpoints across " << runs.size()
           << " runs, zero failures required";
    report("C06", ok, detail.str());
}

// ---------------------------------------------------------------- C7
void criterion_7() {
    bool ok = true;
    std::ostringstream detail;

    const auto enumerate_count = [](double m) {
        const int bound = static_cast<int>(m) + 1;
        long long count = 0;
        for (int i = -bound; i <= bound; ++i)
            for (int j = -bound; j <= bound; ++j)
                for (int l = -bound; l <= bound; ++l)
                    if (static_cast<double>(i) * i + static_cast<double>(j) * j + static_cast<double>(l) * l <=
                        m * m)
                        ++count;
        return count;
    };
    ok = ok && lattice_count(1.0) == 7 && enumerate_count(1.0) == 7;
    ok = ok && lattice_count(2.0) == 33 && enumerate_count(2.0) == 33;

    const LatticeCalibration base = calibrate_lattice_constants(64.0, 1.0);
    const LatticeCalibration wide = calibrate_lattice_constants(128.0, 1.0);
    ok = ok && std::isfinite(base.c1) && base.c1 > 0.0 && std::isfinite(base.c2) && base.c2 > 0.0;
    const double drift_c1 = std::abs(wide.c1 - base.c1) / base.c1;
    const double drift_c2 = std::abs(wide.c2 - base.c2) / base.c2;
    ok = ok && drift_c1 <= 1e-6 && drift_c2 <= 1e-6;

    // informational: doubling the per-m tail enumeration radius instead moves
    // the truncated sums by their captured shell mass (~2 pi m / R), far
    // above 1e-6; the calibration sweep is the stable knob.
    const LatticeCalibration scaled = calibrate_lattice_constants(64.0, 2.0);
    const double tail_radius_drift = std::abs(scaled.c1 - base.c1) / base.c1;

    detail << "count(1)=7 count(2)=33, c1 = " << base.c1 << ", c2 = " << base.c2
           << ", sweep-doubling drift c1 " << drift_c1 << " c2 " << drift_c2
           << " (info: tail-radius-doubling moves c1 by " << tail_radius_drift << ")";
    report("C07", ok, detail.str());
}

// ---------------------------------------------------------------- C8
void criterion_8(std::vector<NamedRun>& runs, StoredRun& stored, Trajectory& csv_traj) {
    const fs::path dir = scratch_dir("monitor");
    SolverConfig cfg;
    cfg.resolution = 32;
    cfg.nu = 0.05;
    cfg.dt = 2e-3;
    cfg.t_end = 2.0;
    cfg.sample_every = 20;
    cfg.ic.kind = InitialConditionSpec::Kind::random_band;
    // an amplitude that puts the cutoff rule inside the band, so the
    // high-dominant branch and its margin bookkeeping are exercised
    cfg.ic.amplitude = 0.0387;
    cfg.ic.band_min = 4;
    cfg.ic.band_max = 8;
    cfg.ic.slope = -1.0;
    cfg.ic.seed = 99;
    // paper-fidelity tail constant; the calibrated lattice value is covered
    // by the re-verification in C06
    cfg.monitor.c1_mode = MonitorConfig::C1Mode::integral;
    cfg.monitor.c1_value = 1.0;
    cfg.output.directory = dir.string();

    bool ok = true;
    std::ostringstream detail;
    try {
        const ExperimentResult result = run_experiment(cfg);
        ok = ok && (result.exit_status == 0 || result.exit_status == 4);
        detail << "exit status " << result.exit_status << ", " << result.report.intervals.size() << " interval(s), "
               << result.report.notes.size() << " note(s)";

        const BoundReport& rep = result.report;
        const Trajectory& traj = result.run.samples;
        csv_traj = read_trajectory_csv(result.trajectory_path);

        // intervals tile the sampled monitor range
        std::size_t first_after_zero = 0;
        while (first_after_zero < traj.size() && !(traj[first_after_zero].t > 0.0))
            ++first_after_zero;
        if (rep.intervals.empty()) {
            ok = false;
            detail << " -- no intervals";
        } else {
            ok = ok && rep.intervals.front().t_start == traj[first_after_zero].t;
            ok = ok && rep.intervals.back().t_end == traj.back().t;
            for (std::size_t i = 0; i + 1 < rep.intervals.size(); ++i)
                ok = ok && rep.intervals[i].t_end == rep.intervals[i + 1].t_start;
        }

        // the cutoff rule is strict at every interval start
        const double c1 = rep.constants_used.c1;
        for (const IntervalRecord& rec : rep.intervals)
            ok = ok && rec.m_j * c1 * cfg.nu * cfg.nu > 4.0 * rec.grad_sq_start;

        // Case-2 pairs with positive margin: non-increase or a recorded note
        long long violations_found = 0, pairs_checked = 0;
        for (const IntervalRecord& rec : rep.intervals) {
            if (rec.case_label != CaseLabel::high_dominant)
                continue;
            std::size_t first = 0;
            while (first < traj.size() && traj[first].t != rec.t_start)
                ++first;
            std::size_t last = first;
            while (last < traj.size() && traj[last].t != rec.t_end)
                ++last;
            for (std::size_t i = first; i < last && last < traj.size(); ++i) {
                const double m0 = case2_margin_from_grad_sq(traj[i].grad_sq, rec.m_j, cfg.nu, c1);
                const double m1 = case2_margin_from_grad_sq(traj[i + 1].grad_sq, rec.m_j, cfg.nu, c1);
                if (!(m0 > 0.0 && m1 > 0.0))
                    continue;
                ++pairs_checked;
                if (traj[i + 1].grad_sq <= traj[i].grad_sq * (1.0 + 1e-10))
                    continue;
                ++violations_found;
                bool noted = false;
                for (const Note& n : rep.notes)
                    if (n.type == "case2_decrease_violation")
                        for (const auto& [k, v] : n.data)
                            noted = noted || (k == "t0" && v == traj[i].t);
                ok = ok && noted; // violations must be findings, not silence
            }
        }
        detail << ", " << pairs_checked << " case-2 pair(s) checked, " << violations_found
               << " decrease violation(s) (findings), labels:";
        for (const IntervalRecord& rec : rep.intervals)
            detail << " " << to_string(rec.case_label);

        ok = ok && csv_traj.size() == traj.size();

        stored.result = result.run;
        const FieldProvider provider = directory_field_provider(cfg.output.directory, traj);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            auto field = provider(i);
            if (!field) {
                ok = false;
                detail << " -- checkpoint " << i << " missing";
                break;
            }
            stored.fields.push_back(std::move(*field));
        }
        if (stored.fields.size() == traj.size())
            runs.push_back({"monitor", &stored.result.samples, &stored.fields, cfg.nu});
    } catch (const std::exception& e) {
        ok = false;
        detail << " crash: " << e.what();
    }
    report("C08", ok, detail.str());
    fs::remove_all(dir);
}

// ---------------------------------------------------------------- C9
void criterion_9() {
    bool ok = true;
    std::ostringstream detail;
    double worst = 0.0;
    for (const double c : {0.5, 1.0, 2.0}) {
        const double g0 = 1.3;
        const double t_star = w_expiry_time(g0, c);
        if (*local_envelope_W(0.0, g0, c) != g0)
            ok = false;
        if (local_envelope_W(t_star, g0, c).has_value())
            ok = false;
        if (!local_envelope_W(std::nextafter(t_star, 0.0), g0, c).has_value())
            ok = false;
        for (const double frac : {0.1, 0.25, 0.5, 0.75}) {
            const double t = frac * t_star;
            const double h = 1e-5 * t_star;
            const auto w = [&](double tt) { return *local_envelope_W(tt, g0, c); };
            const double deriv = (w(t - 2 * h) - 8.0 * w(t - h) + 8.0 * w(t + h) - w(t + 2 * h)) / (12.0 * h);
            const double rel = std::abs(deriv - c * std::pow(w(t), 3.0)) / (c * std::pow(w(t), 3.0));
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-10;
        }
    }
    detail << "dW/dt = c W^3 worst relative FD error " << worst << ", expiry detected exactly";
    report("C09", ok, detail.str());
}

// ---------------------------------------------------------------- C10
void criterion_10() {
    SolverConfig cfg;
    cfg.resolution = 16;
    cfg.nu = 0.05;
    cfg.dt = 2e-3;
    cfg.t_end = 0.2;
    cfg.sample_every = 10;
    cfg.ic.kind = InitialConditionSpec::Kind::random_band;
    cfg.ic.amplitude = 2.0;
    cfg.ic.band_min = 2;
    cfg.ic.band_max = 5;
    cfg.ic.slope = -1.0;
    cfg.ic.seed = 7;

    const auto read_file = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    const fs::path dir_a = scratch_dir("det_a");
    const fs::path dir_b = scratch_dir("det_b");
    cfg.output.directory = dir_a.string();
    const ExperimentResult a = run_experiment(cfg);
    cfg.output.directory = dir_b.string();
    const ExperimentResult b = run_experiment(cfg);

    const bool csv_same = read_file(a.trajectory_path) == read_file(b.trajectory_path);
    const bool report_same = read_file(a.report_path) == read_file(b.report_path);
    std::ostringstream detail;
    detail << "repeated run: trajectory.csv " << (csv_same ? "identical" : "DIFFERS") << ", report.json "
           << (report_same ? "identical" : "DIFFERS");
    report("C10", csv_same && report_same, detail.str());
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion_1();
    criterion_2();

    StoredRun tg_run, abc_run;
    {
        const ExactRunCheck tg = exact_solution_run(ic_taylor_green(32), 2.0, 1.0, tg_run);
        std::ostringstream detail;
        detail << "Taylor-Green N=32: coeff err " << tg.coeff_err << ", grad law err " << tg.law_err << " ("
               << tg.elapsed << " s)";
        report("C03a", tg.coeff_err <= 1e-6 && tg.law_err <= 1e-6 && tg.elapsed < 60.0, detail.str());
    }
    {
        const ExactRunCheck abc = exact_solution_run(ic_abc(32, 1.0, 1.0, 1.0), 1.0, 3.0, abc_run);
        std::ostringstream detail;
        detail << "ABC(1,1,1) N=32: coeff err " << abc.coeff_err << ", grad law err " << abc.law_err << " ("
               << abc.elapsed << " s)";
        report("C03b", abc.coeff_err <= 1e-6 && abc.law_err <= 1e-6 && abc.elapsed < 60.0, detail.str());
    }

    criterion_4();

    std::vector<NamedRun> runs;
    runs.push_back({"taylor_green", &tg_run.result.samples, &tg_run.fields, 0.1});
    runs.push_back({"abc", &abc_run.result.samples, &abc_run.fields, 0.1});

    StoredRun monitor_run;
    Trajectory monitor_csv;
    criterion_8(runs, monitor_run, monitor_csv);

    criterion_5(runs);
    criterion_6(runs);
    criterion_7();
    criterion_9();
    criterion_10();

    std::printf("acceptance: %d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
