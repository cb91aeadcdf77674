#include "homog/expcli/output.hpp"

#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fftw3.h>
#include <json.hpp>

#include "homog/error.hpp"
#include "homog/kernels/kernels.hpp"
#include "homog/numerics/parallel.hpp"

#ifndef HOMOG_VERSION
#define HOMOG_VERSION "0.0.0"
#endif

namespace homog::expcli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + p.string() + "'");
}

struct Series {
    const char* x;
    const char* y;
    const char* title;
};

// Standard figures per experiment: y against x on log axes.
std::vector<Series> figures(Experiment e) {
    switch (e) {
        case Experiment::BiasSweep: return {{"eps_over_delta", "bias_abs", "bias vs eps/delta"},
                                            {"eps_over_delta", "bias_exact_abs", "exact bias vs eps/delta"}};
        case Experiment::VarianceSweep: return {{"delta", "c_var", "Var C vs delta"}, {"delta", "var_pred", "predicted"}};
        case Experiment::NoScaleSeparation: return {{"delta", "h_mean", "H estimate vs delta"}};
        case Experiment::PluginConsistency: return {{"delta", "h_mean", "H estimate vs delta"}};
        case Experiment::RosenblattVariance: return {{"delta", "scaled_var", "scaled variance vs delta"}};
        case Experiment::DriftRobustness: return {{"delta", "c_drift_mean", "C with drift vs delta"}};
        case Experiment::TheoryVerify: return {{"eps_over_delta", "bias_exact_abs", "exact bias vs eps/delta"},
                                               {"delta", "var_pred", "predicted variance vs delta"}};
    }
    return {};
}

std::string plot_script(const SweepTable& t) {
    std::ostringstream os;
    os << "# gnuplot script; reads results.csv from this directory\n";
    os << "set datafile separator ','\n";
    os << "set datafile columnheaders\n";
    os << "set logscale xy\n";
    os << "set key left top\n";
    os << "set terminal pngcairo size 900,600\n";
    int k = 0;
    for (const Series& s : figures(t.experiment)) {
        const std::string xcol = std::string(s.x) == "eps_over_delta"
                                     ? "(column(\"eps\")/column(\"delta\"))"
                                     : std::string("(column(\"") + s.x + "\"))";
        os << "\nset output 'figure_" << k++ << ".png'\n";
        os << "set title '" << s.title << "'\n";
        os << "set xlabel '" << s.x << "'\n";
        os << "set ylabel '" << s.y << "'\n";
        os << "plot 'results.csv' using " << xcol << ":(column(\"" << s.y << "\")) with linespoints title '"
           << s.y << "'\n";
    }
    return os.str();
}

}  // namespace

std::string format_csv(const SweepTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += t.columns[i] + ",";
    out += "status\n";
    for (const SweepRow& r : t.rows) {
        for (double v : r.values) out += number(v) + ",";
        out += r.status + "\n";
    }
    return out;
}

void emit_outputs(const SweepTable& t, const ExperimentConfig& cfg, double wall_seconds) {
    require(!t.rows.empty(), "emit_outputs: rows must be nonempty");
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    write_file(dir / "results.csv", format_csv(t));

    json oracles = json::object();
    for (const auto& [col, op] : t.oracles) oracles[col] = op;
    json meta = {
        {"config", json::parse(to_json(cfg))},
        {"base_seed", cfg.base_seed},
        {"columns", t.columns},
        {"oracles", oracles},
        {"versions",
         {{"homog", HOMOG_VERSION},
          {"compiler", __VERSION__},
          {"fftw", std::string(fftw_version)},
          {"boost", BOOST_LIB_VERSION},
          {"simd", std::string(kernels::isa_name(kernels::active().isa))}}},
        {"threads", cfg.threads > 0 ? cfg.threads : numerics::default_threads()},
        {"wall_seconds", wall_seconds},
        {"all_cells_ok", t.all_ok()},
    };
    write_file(dir / "meta.json", meta.dump(2) + "\n");
    write_file(dir / "plot.gp", plot_script(t));
}

}  // namespace homog::expcli
