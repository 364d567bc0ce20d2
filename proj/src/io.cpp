#include "tns/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tns {

namespace {

constexpr char kMagic[7] = {'T', 'N', 'S', 'C', 'H', 'K', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double x) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

double get_f64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return std::bit_cast<double>(v);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double nu, double t) {
    std::string blob;
    const std::size_t n = field.grid.mode_count();
    blob.reserve(sizeof(kMagic) + 4 + 16 + 3 * n * 16);
    blob.append(kMagic, sizeof(kMagic));
    put_u32(blob, static_cast<std::uint32_t>(field.grid.modes_per_axis()));
    put_f64(blob, nu);
    put_f64(blob, t);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            put_f64(blob, field.comp[c][i].real());
            put_f64(blob, field.comp[c][i].imag());
        }

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_checkpoint: cannot open '" + path.string() + "'");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out)
        throw std::runtime_error("write_checkpoint: write failed for '" + path.string() + "'");
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_checkpoint: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string blob = buf.str();

    if (blob.size() < sizeof(kMagic) + 4 + 16 || std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("read_checkpoint: '" + path.string() + "' is not a checkpoint file");
    const char* p = blob.data() + sizeof(kMagic);
    const std::uint32_t n_axis = get_u32(p);
    p += 4;
    Checkpoint ck;
    ck.nu = get_f64(p);
    p += 8;
    ck.t = get_f64(p);
    p += 8;

    ck.field = SpectralField(WaveGrid(static_cast<int>(n_axis)));
    const std::size_t n = ck.field.grid.mode_count();
    if (blob.size() != sizeof(kMagic) + 4 + 16 + 3 * n * 16)
        throw std::runtime_error("read_checkpoint: '" + path.string() + "' is truncated");
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            const double re = get_f64(p);
            p += 8;
            const double im = get_f64(p);
            p += 8;
            ck.field.comp[c][i] = Complex(re, im);
        }
    return ck;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_trajectory_csv: cannot open '" + path.string() + "'");
    out << "t,energy,grad_sq,lap_sq,abs_sum_total,f_m,active_m,dissipation_integral\n";
    for (const TrajectorySample& s : traj) {
        out << format_double(s.t) << ',' << format_double(s.energy) << ',' << format_double(s.grad_sq) << ','
            << format_double(s.lap_sq) << ',' << format_double(s.abs_sum_total) << ',' << format_double(s.f_m) << ','
            << format_double(s.active_m) << ',' << format_double(s.dissipation_integral) << '\n';
    }
    if (!out)
        throw std::runtime_error("write_trajectory_csv: write failed for '" + path.string() + "'");
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_trajectory_csv: cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_trajectory_csv: '" + path.string() + "' is empty");
    if (line != "t,energy,grad_sq,lap_sq,abs_sum_total,f_m,active_m,dissipation_integral")
        throw std::runtime_error("read_trajectory_csv: unexpected header in '" + path.string() + "'");

    Trajectory traj;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        double v[8];
        for (int i = 0; i < 8; ++i) {
            if (!std::getline(row, cell, ','))
                throw std::runtime_error("read_trajectory_csv: short row in '" + path.string() + "'");
            v[i] = std::strtod(cell.c_str(), nullptr);
        }
        TrajectorySample s;
        s.t = v[0];
        s.energy = v[1];
        s.grad_sq = v[2];
        s.lap_sq = v[3];
        s.abs_sum_total = v[4];
        s.f_m = v[5];
        s.active_m = v[6];
        s.dissipation_integral = v[7];
        traj.push_back(s);
    }
    return traj;
}

namespace {

// Hand-rolled writer: the schema is small and fixed, and emitting %.17g
// ourselves keeps the byte stream deterministic.
class JsonWriter {
  public:
    void raw(const std::string& s) { out_ += s; }

    void number(double x) {
        if (!std::isfinite(x)) {
            out_ += "null";
            return;
        }
        out_ += format_double(x);
    }

    void integer(long long x) { out_ += std::to_string(x); }

    void string(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            if (c == '"' || c == '\\')
                out_ += '\\';
            out_ += c;
        }
        out_ += '"';
    }

    void boolean(bool b) { out_ += b ? "true" : "false"; }

    const std::string& str() const { return out_; }

  private:
    std::string out_;
};

} // namespace

std::string report_to_json(const BoundReport& report) {
    JsonWriter w;
    w.raw("{\n  \"intervals\": [");
    for (std::size_t i = 0; i < report.intervals.size(); ++i) {
        const IntervalRecord& r = report.intervals[i];
        w.raw(i ? ",\n    {" : "\n    {");
        w.raw("\"j\": ");
        w.integer(r.j);
        w.raw(", \"t_start\": ");
        w.number(r.t_start);
        w.raw(", \"t_end\": ");
        w.number(r.t_end);
        w.raw(", \"m_j\": ");
        w.number(r.m_j);
        w.raw(", \"case_label\": ");
        w.string(to_string(r.case_label));
        w.raw(", \"grad_sq_start\": ");
        w.number(r.grad_sq_start);
        w.raw(", \"grad_sq_end\": ");
        w.number(r.grad_sq_end);
        w.raw(", \"bound_value_at_end\": ");
        w.number(r.bound_value_at_end);
        w.raw(", \"satisfied\": ");
        w.boolean(r.satisfied);
        w.raw(", \"margin_min\": ");
        if (r.margin_min)
            w.number(*r.margin_min);
        else
            w.raw("null");
        w.raw("}");
    }
    w.raw(report.intervals.empty() ? "],\n" : "\n  ],\n");

    w.raw("  \"energy_residual\": ");
    w.number(report.energy_inequality_residual);
    w.raw(",\n  \"chain_failures\": ");
    w.integer(report.chain_check_failures);
    w.raw(",\n  \"w_envelope\": {\"valid_until\": ");
    w.number(report.w_envelope.valid_until);
    w.raw(", \"satisfied_within_window\": ");
    w.boolean(report.w_envelope.satisfied_within_window);
    w.raw("},\n  \"notes\": [");
    for (std::size_t i = 0; i < report.notes.size(); ++i) {
        const Note& n = report.notes[i];
        w.raw(i ? ",\n    {" : "\n    {");
        w.raw("\"type\": ");
        w.string(n.type);
        for (const auto& [key, value] : n.data) {
            w.raw(", ");
            w.string(key);
            w.raw(": ");
            w.number(value);
        }
        w.raw("}");
    }
    w.raw(report.notes.empty() ? "],\n" : "\n  ],\n");

    w.raw("  \"constants_used\": {\"c1\": ");
    w.number(report.constants_used.c1);
    w.raw(", \"c1_mode\": ");
    w.string(report.constants_used.c1_mode);
    w.raw(", \"c2\": ");
    w.number(report.constants_used.c2);
    w.raw(", \"c_local\": ");
    w.number(report.constants_used.c_local);
    w.raw(", \"hysteresis\": ");
    w.number(report.constants_used.hysteresis);
    w.raw(", \"min_interval\": ");
    w.number(report.constants_used.min_interval);
    w.raw(", \"rng\": ");
    w.string(report.constants_used.rng);
    w.raw(", \"seed\": ");
    w.integer(static_cast<long long>(report.constants_used.seed));
    w.raw("}\n}\n");
    return w.str();
}

void write_report_json(const std::filesystem::path& path, const BoundReport& report) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_report_json: cannot open '" + path.string() + "'");
    out << report_to_json(report);
    if (!out)
        throw std::runtime_error("write_report_json: write failed for '" + path.string() + "'");
}

} // namespace tns
