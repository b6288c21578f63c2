#include "cli.hpp"

#include "edge_io.hpp"

#include <girg/generator.hpp>
#include <girg/oracle.hpp>
#include <girg/random.hpp>

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace girg::cli {

namespace {

struct Options {
    std::uint64_t n = std::uint64_t{1} << 15;
    unsigned dim = 1;
    double ple = 2.5;
    double alpha = 0.75;
    double temp = 0.0;
    double deg = 10.0;
    double constant = 1.0;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string edges_out;
    std::string coords_out;
    bool no_store = false;
    std::string format = "edgelist";
    std::string model = "girg";

    // compare
    unsigned points = 33;
    std::string curve_out;

    // bench
    std::vector<std::uint64_t> sweep_n{std::uint64_t{1} << 15};
    std::vector<unsigned> sweep_dim{1};
    std::vector<double> sweep_temp{0.0};
    std::vector<double> sweep_deg{10.0};
    unsigned iterations = 3;
    std::string out;

    CLI::Option* deg_flag = nullptr;
    CLI::Option* const_flag = nullptr;
    CLI::Option* C_flag = nullptr;
    CLI::Option* alpha_flag = nullptr;
    CLI::Option* ple_flag = nullptr;
};

/// Thrown for flag combinations that parse but contradict each other.
class ConflictError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string fmt(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string seconds(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", x);
    return buffer;
}

std::string hex(std::uint64_t x) {
    char buffer[24];
    std::snprintf(buffer, sizeof buffer, "%016" PRIx64, x);
    return buffer;
}

bool given(const CLI::Option* flag) { return flag && flag->count() > 0; }

void require_one_of(const Options& o, const CLI::Option* own, const CLI::Option* foreign, const char* name) {
    if (given(foreign))
        throw ConflictError(std::string("this model takes ") + name + ", not " + foreign->get_name());
    if (given(o.deg_flag) == given(own))
        throw ConflictError(std::string("specify exactly one of --deg and ") + name);
}

GirgParams girg_params(const Options& o) {
    require_one_of(o, o.const_flag, o.C_flag, "--const");
    GirgParams p;
    p.n = o.n;
    p.dimension = o.dim;
    p.ple = o.ple;
    p.temperature = o.temp;
    if (o.deg_flag->count())
        p.degree_target = o.deg;
    else
        p.constant = o.constant;
    p.seed = o.seed;
    p.validate();
    return p;
}

HrgParams hrg_params(const Options& o) {
    require_one_of(o, o.C_flag, o.const_flag, "--C");
    HrgParams p;
    p.n = o.n;
    p.alpha = given(o.ple_flag) && !given(o.alpha_flag) ? (o.ple - 1.0) / 2.0 : o.alpha;
    p.temperature = o.temp;
    if (given(o.deg_flag))
        p.degree_target = o.deg;
    else
        p.C = o.constant;
    p.seed = o.seed;
    p.validate();
    return p;
}

EdgeFormat parse_format(const std::string& name) {
    return name == "binary" ? EdgeFormat::binary : EdgeFormat::edgelist;
}

void check_outputs(const Options& o) {
    if (o.no_store && !o.edges_out.empty())
        throw ConflictError("--no-store and --edges-out are mutually exclusive");
}

Provenance girg_provenance(const GirgParams& p, double constant) {
    return {{"model", "girg"},
            {"n", std::to_string(p.n)},
            {"dim", std::to_string(p.dimension)},
            {"ple", fmt(p.ple)},
            {"temp", fmt(p.temperature)},
            {"const", fmt(constant)},
            {"deg", p.degree_target ? fmt(*p.degree_target) : "none"},
            {"seed", std::to_string(p.seed)},
            {"version", kVersion}};
}

Provenance hrg_provenance(const HrgParams& p, double radius) {
    return {{"model", "hrg"},
            {"n", std::to_string(p.n)},
            {"alpha", fmt(p.alpha)},
            {"ple", fmt(p.ple())},
            {"temp", fmt(p.temperature)},
            {"R", fmt(radius)},
            {"C", fmt(radius - 2.0 * std::log(static_cast<double>(p.n)))},
            {"deg", p.degree_target ? fmt(*p.degree_target) : "none"},
            {"seed", std::to_string(p.seed)},
            {"version", kVersion}};
}

/// Writes `% key value` provenance followed by one row per vertex; removed on failure.
template <class Row>
void write_coords(const std::string& path, const Provenance& provenance, std::uint64_t n, Row row) {
    FileGuard guard(path);
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    for (const auto& [key, value] : provenance)
        out << "% " << key << ' ' << value << '\n';
    for (std::uint64_t v = 0; v < n; ++v)
        out << v << ' ' << row(v) << '\n';
    out.close();
    if (!out)
        throw IoError("write failed on " + path);
    guard.release();
}

/// Counter or file sink; the text header is written once the parameter is known.
struct EdgeOutput {
    EdgeCounter counter;
    std::unique_ptr<EdgeFileWriter> writer;

    EdgeOutput(const Options& o, std::uint64_t n) {
        if (!o.edges_out.empty())
            writer = std::make_unique<EdgeFileWriter>(o.edges_out, parse_format(o.format), n, Provenance{});
    }
    EdgeSink& sink() { return writer ? static_cast<EdgeSink&>(*writer) : counter; }
    std::uint64_t checksum() const { return writer ? writer->checksum() : counter.checksum(); }
};

void print_timings(std::ostream& out, const StepTimings& t) {
    out << " weights_s=" << seconds(t.weights) << " positions_s=" << seconds(t.positions)
        << " binary_s=" << seconds(t.binary) << " pre_s=" << seconds(t.preprocessing)
        << " edges_s=" << seconds(t.edges) << " total_s=" << seconds(t.total());
}

int run_girg(const Options& o, std::ostream& out) {
    check_outputs(o);
    FileGuard edges_guard(o.edges_out);
    const GirgParams params = girg_params(o);
    EdgeOutput output(o, params.n);
    EdgeFileWriter* writer = output.writer.get();
    const GenerationResult result =
        generate_girg(params, output.sink(), o.threads, [&](double constant) {
            if (writer)
                writer->write_provenance(girg_provenance(params, constant));
        });
    if (writer)
        writer->finish();
    if (!o.coords_out.empty()) {
        const WeightSet weights = sample_weights(params.n, params.ple, derive_seed(params.seed, Stream::weights),
                                                 o.threads);
        const PositionSet positions = sample_positions(params.n, params.dimension,
                                                       derive_seed(params.seed, Stream::positions), o.threads);
        write_coords(o.coords_out, girg_provenance(params, result.parameter), params.n, [&](std::uint64_t v) {
            std::string row = fmt(weights[v]);
            for (const double x : positions.point(v))
                row += ' ' + fmt(x);
            return row;
        });
    }
    out << "girg n=" << result.n << " m=" << result.edges << " c=" << fmt(result.parameter)
        << " checksum=" << hex(output.checksum());
    print_timings(out, result.timings);
    out << '\n';
    edges_guard.release();
    return kOk;
}

int run_hrg(const Options& o, std::ostream& out) {
    check_outputs(o);
    FileGuard edges_guard(o.edges_out);
    const HrgParams params = hrg_params(o);
    EdgeOutput output(o, params.n);
    EdgeFileWriter* writer = output.writer.get();
    const GenerationResult result = generate_hrg(params, output.sink(), o.threads, [&](double radius) {
        if (writer)
            writer->write_provenance(hrg_provenance(params, radius));
    });
    if (writer)
        writer->finish();
    const double radius = result.parameter;
    if (!o.coords_out.empty()) {
        const std::vector<double> radii = sample_hrg_radii(params.n, params.alpha, radius, params.seed, o.threads);
        const std::vector<double> angles = sample_hrg_angles(params.n, params.seed, o.threads);
        write_coords(o.coords_out, hrg_provenance(params, radius), params.n,
                     [&](std::uint64_t v) { return fmt(radii[v]) + ' ' + fmt(angles[v]); });
    }
    out << "hrg n=" << result.n << " m=" << result.edges << " R=" << fmt(radius)
        << " C=" << fmt(radius - 2.0 * std::log(static_cast<double>(params.n)))
        << " checksum=" << hex(output.checksum());
    print_timings(out, result.timings);
    out << '\n';
    edges_guard.release();
    return kOk;
}

int run_estimate(const Options& o, std::ostream& out) {
    if (o.model == "hrg") {
        const HrgParams params = hrg_params(o);
        const GenerationResult result = estimate_hrg(params, o.threads);
        out << "hrg n=" << params.n << " R=" << fmt(result.parameter)
            << " C=" << fmt(result.parameter - 2.0 * std::log(static_cast<double>(params.n)));
        if (result.radius_estimate)
            out << " expected_degree=" << fmt(result.radius_estimate->expected_degree)
                << " iterations=" << result.radius_estimate->iterations;
        out << " binary_s=" << seconds(result.timings.binary) << '\n';
        return kOk;
    }
    const GirgParams params = girg_params(o);
    const GenerationResult result = estimate_girg(params, o.threads);
    out << "girg n=" << params.n << " c=" << fmt(result.parameter);
    if (result.estimate)
        out << " weight_scale=" << fmt(result.estimate->weight_scale)
            << " expected_degree=" << fmt(result.estimate->expected_degree)
            << " iterations=" << result.estimate->iterations
            << " rescaled=" << (result.estimate->rescaled ? "yes" : "no");
    out << " binary_s=" << seconds(result.timings.binary) << '\n';
    return kOk;
}

int run_compare(const Options& o, std::ostream& out) {
    if (o.temp != 0.0)
        throw ParameterError("compare analyses the threshold variant only (--temp 0)");
    HrgParams params = hrg_params(o);
    const double radius = estimate_hrg(params, o.threads).parameter;
    const HrgCoordinates coords = sample_hrg_coordinates(params.n, params.alpha, radius, params.seed, o.threads);
    const CouplingAnalysis analysis(coords, o.threads);
    const double matched = analysis.degree_matched_constant();
    const CouplingPoint point = analysis.at(matched);
    out << "compare n=" << params.n << " R=" << fmt(radius) << " hrg_edges=" << analysis.hrg_edges()
        << " d_hrg=" << fmt(analysis.d_hrg()) << " d_girg=" << fmt(analysis.d_girg())
        << " D_girg=" << fmt(analysis.D_girg()) << " c_sub=" << fmt(analysis.c_sub())
        << " c_super=" << fmt(analysis.c_super()) << " c_matched=" << fmt(matched)
        << " missing=" << point.missing << " extra=" << point.extra
        << " ties=" << CouplingAnalysis::kTieConvention << '\n';
    if (!o.curve_out.empty()) {
        FileGuard guard(o.curve_out);
        std::ofstream file(o.curve_out);
        if (!file)
            throw IoError("cannot open " + o.curve_out + " for writing");
        for (const auto& [key, value] : hrg_provenance(params, radius))
            file << "% " << key << ' ' << value << '\n';
        file << "% ties " << CouplingAnalysis::kTieConvention << '\n';
        file << format_coupling_curve(analysis.curve(analysis.c_sub_below(), o.points));
        file.close();
        if (!file)
            throw IoError("write failed on " + o.curve_out);
        guard.release();
    }
    return kOk;
}

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    for (const double x : xs)
        m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double sq = 0.0;
        for (const double x : xs)
            sq += (x - m.mean) * (x - m.mean);
        m.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
    }
    return m;
}

int run_bench(const Options& o, std::ostream& out) {
    if (o.iterations == 0)
        throw ParameterError("--iterations must be at least 1");
    std::ofstream file;
    std::optional<FileGuard> guard;
    if (!o.out.empty()) {
        guard.emplace(o.out);
        file.open(o.out);
        if (!file)
            throw IoError("cannot open " + o.out + " for writing");
    }
    std::ostream& table = o.out.empty() ? out : file;
    table << "model,n,dim,temp,deg,ple,iterations,edges_mean,step,ns_per_edge_mean,ns_per_edge_std\n";
    const bool hrg = o.model == "hrg";
    const std::vector<unsigned> dims = hrg ? std::vector<unsigned>{1} : o.sweep_dim;
    constexpr const char* kSteps[] = {"weights", "positions", "binary", "pre", "edges", "total"};
    for (const std::uint64_t n : o.sweep_n)
        for (const unsigned dim : dims)
            for (const double temp : o.sweep_temp)
                for (const double deg : o.sweep_deg) {
                    std::vector<std::vector<double>> per_step(6);
                    double edges_sum = 0.0;
                    for (unsigned it = 0; it < o.iterations; ++it) {
                        EdgeCounter counter;
                        GenerationResult r;
                        if (hrg) {
                            HrgParams p;
                            p.n = n;
                            p.alpha = given(o.ple_flag) ? (o.ple - 1.0) / 2.0 : o.alpha;
                            p.temperature = temp;
                            p.degree_target = deg;
                            p.seed = o.seed + it;
                            p.validate();
                            r = generate_hrg(p, counter, o.threads);
                        } else {
                            GirgParams p;
                            p.n = n;
                            p.dimension = dim;
                            p.ple = o.ple;
                            p.temperature = temp;
                            p.degree_target = deg;
                            p.seed = o.seed + it;
                            p.validate();
                            r = generate_girg(p, counter, o.threads);
                        }
                        const double m = std::max<double>(1.0, static_cast<double>(r.edges));
                        const StepTimings& t = r.timings;
                        const double values[] = {t.weights, t.positions, t.binary, t.preprocessing, t.edges, t.total()};
                        for (std::size_t s = 0; s < 6; ++s)
                            per_step[s].push_back(values[s] * 1e9 / m);
                        edges_sum += static_cast<double>(r.edges);
                    }
                    for (std::size_t s = 0; s < 6; ++s) {
                        const Moments mo = moments(per_step[s]);
                        table << o.model << ',' << n << ',' << dim << ',' << fmt(temp) << ',' << fmt(deg) << ','
                              << fmt(hrg && !given(o.ple_flag) ? 2.0 * o.alpha + 1.0 : o.ple)
                              << ',' << o.iterations << ',' << fmt(edges_sum / o.iterations) << ',' << kSteps[s]
                              << ',' << fmt(mo.mean) << ',' << fmt(mo.stddev) << '\n';
                    }
                }
    if (!o.out.empty()) {
        file.close();
        if (!file)
            throw IoError("write failed on " + o.out);
        guard->release();
    }
    return kOk;
}

void add_common(CLI::App& cmd, Options& o) {
    cmd.add_option("--n", o.n, "vertex count");
    cmd.add_option("--temp", o.temp, "temperature T in [0, 1); 0 selects the threshold variant");
    cmd.add_option("--seed", o.seed, "master seed");
    cmd.add_option("--threads", o.threads, "worker count (0 = all)");
}

void add_girg_model(CLI::App& cmd, Options& o) {
    cmd.add_option("--dim", o.dim, "torus dimension d");
    o.ple_flag = cmd.add_option("--ple", o.ple, "power-law exponent beta");
    o.deg_flag = cmd.add_option("--deg", o.deg, "target expected average degree");
    o.const_flag = cmd.add_option("--const", o.constant, "explicit constant c");
    o.deg_flag->excludes(o.const_flag);
}

void add_hrg_model(CLI::App& cmd, Options& o, bool with_const) {
    o.alpha_flag = cmd.add_option("--alpha", o.alpha, "radial dispersion alpha > 1/2");
    if (!o.ple_flag) {
        o.ple_flag = cmd.add_option("--ple", o.ple, "power-law exponent beta = 2 alpha + 1");
        o.alpha_flag->excludes(o.ple_flag);
    }
    if (!o.deg_flag)
        o.deg_flag = cmd.add_option("--deg", o.deg, "target expected average degree");
    if (with_const) {
        o.C_flag = cmd.add_option("--C", o.constant, "explicit C in R = 2 ln n + C");
        o.deg_flag->excludes(o.C_flag);
    }
}

void add_outputs(CLI::App& cmd, Options& o) {
    cmd.add_option("--edges-out", o.edges_out, "write edges to this file");
    cmd.add_option("--coords-out", o.coords_out, "write per-vertex coordinates to this file");
    cmd.add_flag("--no-store", o.no_store, "checksum only, no edge output");
    cmd.add_option("--format", o.format, "edge file format")->check(CLI::IsMember({"edgelist", "binary"}));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app("GIRG and HRG generator", "girggen");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options girg_opts;
    auto* girg = app.add_subcommand("girg", "generate a geometric inhomogeneous random graph");
    add_common(*girg, girg_opts);
    add_girg_model(*girg, girg_opts);
    add_outputs(*girg, girg_opts);

    Options hrg_opts;
    auto* hrg = app.add_subcommand("hrg", "generate a hyperbolic random graph");
    add_common(*hrg, hrg_opts);
    add_hrg_model(*hrg, hrg_opts, true);
    add_outputs(*hrg, hrg_opts);

    // estimate accepts the flags of both models.
    Options est_opts;
    auto* estimate = app.add_subcommand("estimate", "report the constant c or the radius R only");
    add_common(*estimate, est_opts);
    estimate->add_option("--model", est_opts.model, "girg or hrg")->check(CLI::IsMember({"girg", "hrg"}));
    add_girg_model(*estimate, est_opts);
    add_hrg_model(*estimate, est_opts, true);

    Options cmp_opts;
    auto* compare = app.add_subcommand("compare", "threshold HRG against its coupled GIRGs");
    add_common(*compare, cmp_opts);
    add_hrg_model(*compare, cmp_opts, true);
    compare->add_option("--points", cmp_opts.points, "rows of the coupling curve");
    compare->add_option("--curve-out", cmp_opts.curve_out, "write the coupling curve as CSV");

    Options bench_opts;
    auto* bench = app.add_subcommand("bench", "per-step time per edge over parameter sweeps");
    bench->add_option("--model", bench_opts.model, "girg or hrg")->check(CLI::IsMember({"girg", "hrg"}));
    bench->add_option("--n", bench_opts.sweep_n, "vertex counts");
    bench->add_option("--dim", bench_opts.sweep_dim, "dimensions (girg)");
    bench->add_option("--temp", bench_opts.sweep_temp, "temperatures");
    bench->add_option("--deg", bench_opts.sweep_deg, "target average degrees");
    bench_opts.ple_flag = bench->add_option("--ple", bench_opts.ple, "power-law exponent");
    bench->add_option("--alpha", bench_opts.alpha, "radial dispersion (hrg)")->excludes(bench_opts.ple_flag);
    bench->add_option("--iterations", bench_opts.iterations, "repetitions per configuration");
    bench->add_option("--seed", bench_opts.seed, "seed of the first repetition");
    bench->add_option("--threads", bench_opts.threads, "worker count (0 = all)");
    bench->add_option("--out", bench_opts.out, "write the table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ExcludesError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kConflict;
    } catch (const CLI::ValidationError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kInvalidValue;
    } catch (const CLI::ParseError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (girg->parsed())
            return run_girg(girg_opts, out);
        if (hrg->parsed())
            return run_hrg(hrg_opts, out);
        if (estimate->parsed())
            return run_estimate(est_opts, out);
        if (compare->parsed())
            return run_compare(cmp_opts, out);
        return run_bench(bench_opts, out);
    } catch (const ConflictError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kConflict;
    } catch (const ParameterError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kInvalidValue;
    } catch (const IoError& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "girggen: error: " << e.what() << '\n';
        return kInternal;
    }
}

} // namespace girg::cli
