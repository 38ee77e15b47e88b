#include "vnscale/commands.hpp"

#include "vnscale/clustering.hpp"
#include "vnscale/dimred.hpp"
#include "vnscale/error.hpp"
#include "vnscale/images.hpp"
#include "vnscale/io.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>

namespace vnscale::cli {

namespace {

namespace fs = std::filesystem;

constexpr Index kLargeN = 3000;

struct Source {
    std::string input;
    std::string shape = "circles";
    Index n = 500;
    double sd = 0.0;
    std::uint64_t seed = 0;
};

struct Pipeline {
    Index grid_size = 200;
    double t_star = 1000.0;
    double kernel_tol = kDefaultKernelTol;
    bool force = false;

    SweepOptions sweep() const { return {grid_size, t_star, kernel_tol}; }
};

void add_source_flags(CLI::App* cmd, Source& src, bool with_input) {
    if (with_input) cmd->add_option("--input", src.input, "Point cloud file (.csv or .json)");
    cmd->add_option("--shape", src.shape, "circles | trefoil | torus_knot | corona | swiss_roll")
        ->capture_default_str();
    cmd->add_option("--n", src.n, "Number of generated points")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--sd", src.sd, "Gaussian noise standard deviation")->capture_default_str()->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", src.seed, "RNG seed")->capture_default_str();
}

void add_pipeline_flags(CLI::App* cmd, Pipeline& p) {
    cmd->add_option("--grid-size", p.grid_size, "Number of scales in the sweep")
        ->capture_default_str()
        ->check(CLI::Range(Index{2}, Index{1000000}));
    cmd->add_option("--t-star", p.t_star, "Large heat time for the reference operator")->capture_default_str();
    cmd->add_option("--kernel-tol", p.kernel_tol, "Relative tolerance for zero eigenvalues")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", p.force, "Allow more than 3000 points");
}

PointCloud generate(const std::string& shape, Index n, double sd, std::uint64_t seed) {
    if (shape == "circles") return gen_interlinked_circles(n, sd, seed);
    return gen_shape(parse_shape_kind(shape), n, sd, seed);
}

PointCloud obtain(const Source& src) {
    if (!src.input.empty()) return io::load_cloud(src.input);
    return generate(src.shape, src.n, src.sd, src.seed);
}

void guard_size(const PointCloud& c, const Pipeline& p) {
    if (c.size() > kLargeN && !p.force) {
        throw InvalidArgument(std::to_string(c.size()) +
                              " points needs --force (one dense eigensolve per grid point)");
    }
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    return os;
}

void write_json(const fs::path& p, const nlohmann::json& j) {
    auto os = open_out(p);
    os << j.dump(2) << '\n';
}

fs::path prepare_dir(const std::string& out) {
    const fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

std::string percent(Index count, Index total) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", 100.0 * static_cast<double>(count) / static_cast<double>(total));
    return buf;
}

// ---- subcommands ---------------------------------------------------------

struct GenerateCmd {
    Source src;
    std::string out;
    std::string format;

    void run(std::ostream& log) const {
        const PointCloud c = generate(src.shape, src.n, src.sd, src.seed);
        const auto f = format.empty() ? io::format_for_path(out) : io::parse_format(format);
        io::save_cloud(out, c, f);
        log << "wrote " << c.size() << " points to " << out << '\n';
    }
};

struct ClusterCmd {
    Source src;
    Pipeline pipe;
    std::string out;

    void run(std::ostream& log) const {
        const PointCloud c = obtain(src);
        guard_size(c, pipe);
        const ClusterAssignment a = cluster(c, pipe.sweep());
        const fs::path dir = prepare_dir(out);
        {
            auto os = open_out(dir / "profile.csv");
            io::write_profile_csv(os, a.profile);
        }
        write_json(dir / "profile.json", io::profile_to_json(a.profile, a.selection));
        write_json(dir / "assignment.json", io::assignment_to_json(a, "profile.csv"));

        log << "k=" << a.k << " r_hat=" << io::format_double(a.r_hat)
            << " H_max=" << io::format_double(a.selection.H_max);
        if (a.selection.degenerate) log << " (degenerate profile)";
        if (c.labels) {
            const ConfusionMatrix m = score(a.labels, *c.labels);
            auto os = open_out(dir / "confusion.csv");
            io::write_confusion_csv(os, m);
            log << " mistakes=" << m.mistakes;
        }
        log << '\n';
    }
};

struct TrialsCmd {
    Source src;
    Pipeline pipe;
    std::vector<double> sds{0.01};
    Index trials = 10;
    std::string out;
    std::string format = "csv";

    void run(std::ostream& out_stream, std::ostream& log) const {
        const auto f = io::parse_format(format);
        if (src.n > kLargeN && !pipe.force) throw InvalidArgument("--n above 3000 needs --force");

        struct Row {
            double sd;
            std::array<Index, 4> counts{};
        };
        std::vector<Row> rows;
        for (double sd : sds) {
            std::vector<Index> ks(static_cast<std::size_t>(trials), 0);
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1)
            for (Index t = 0; t < trials; ++t) {
                try {
                    const PointCloud c = generate(src.shape, src.n, sd, src.seed + static_cast<std::uint64_t>(t));
                    ks[t] = cluster(c, pipe.sweep()).k;
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
            for (const auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
            Row row{sd, {}};
            for (Index k : ks) ++row.counts[static_cast<std::size_t>(std::clamp<Index>(k, 1, 4) - 1)];
            rows.push_back(row);
            log << "sd=" << io::format_double(sd) << " done (" << trials << " trials)\n";
        }

        std::ofstream file;
        std::ostream* os = &out_stream;
        if (!out.empty()) {
            file = open_out(out);
            os = &file;
        }
        if (f == io::Format::csv) {
            *os << "sd,k1,k2,k3,k4plus\n";
            for (const auto& r : rows) {
                *os << io::format_double(r.sd);
                for (Index c : r.counts) *os << ',' << percent(c, trials);
                *os << '\n';
            }
        } else {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : rows) {
                j.push_back({{"sd", r.sd}, {"trials", trials}, {"counts", r.counts}});
            }
            *os << j.dump(2) << '\n';
        }
    }
};

struct ReduceCmd {
    Source src;
    Pipeline pipe;
    Index k = 2;
    std::string out;

    void run(std::ostream& log) const {
        const PointCloud c = obtain(src);
        guard_size(c, pipe);
        const Embedding e = reduce(c, k, pipe.sweep());
        {
            auto os = open_out(out);
            io::write_embedding_csv(os, e, c.labels ? &*c.labels : nullptr);
        }
        log << "r_hat=" << io::format_double(e.r_hat) << " kernel_dim=" << e.kernel_dim;
        if (c.size() > 10) log << " neighbor_overlap_10nn=" << io::format_double(neighbor_overlap(c.points, e.coords, 10));
        log << '\n';
    }
};

struct KMeansCmd {
    Source src;
    KMeansOptions opts;
    std::string out;

    void run(std::ostream& log) const {
        const PointCloud c = obtain(src);
        KMeansOptions o = opts;
        o.seed = src.seed;
        const KMeansResult r = kmeans(c, o);
        const fs::path dir = prepare_dir(out);
        write_json(dir / "assignment.json", io::kmeans_to_json(r));
        log << "k=" << r.k << " cost=" << io::format_double(r.cost);
        if (c.labels) {
            const ConfusionMatrix m = score(r.labels, *c.labels);
            auto os = open_out(dir / "confusion.csv");
            io::write_confusion_csv(os, m);
            log << " mistakes=" << m.mistakes;
        }
        log << '\n';
    }
};

struct IngestCmd {
    std::string dir;
    IngestOptions opts;
    std::string out;
    std::string format;

    void run(std::ostream& log) const {
        const PointCloud c = ingest_images(dir, opts);
        const auto f = format.empty() ? io::format_for_path(out) : io::parse_format(format);
        io::save_cloud(out, c, f);
        log << "wrote " << c.size() << " images of dimension " << c.dim() << " to " << out << '\n';
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scale selection, clustering and dimension reduction by relative von Neumann entropy"};
    app.require_subcommand(1);

    GenerateCmd gen;
    auto* c_gen = app.add_subcommand("generate", "Write a synthetic point cloud");
    add_source_flags(c_gen, gen.src, false);
    c_gen->add_option("--out", gen.out, "Output file")->required();
    c_gen->add_option("--format", gen.format, "csv | json (default: from extension)");

    ClusterCmd clu;
    auto* c_clu = app.add_subcommand("cluster", "Cluster at the entropy-selected scale");
    add_source_flags(c_clu, clu.src, true);
    add_pipeline_flags(c_clu, clu.pipe);
    c_clu->add_option("--out", clu.out, "Output directory")->required();

    TrialsCmd tri;
    auto* c_tri = app.add_subcommand("trials", "Distribution of reported cluster counts over seeded trials");
    add_source_flags(c_tri, tri.src, false);
    add_pipeline_flags(c_tri, tri.pipe);
    c_tri->remove_option(c_tri->get_option("--sd"));
    c_tri->add_option("--sd", tri.sds, "Noise levels")->delimiter(',')->capture_default_str();
    c_tri->add_option("--trials", tri.trials, "Trials per noise level")->capture_default_str()->check(CLI::PositiveNumber);
    c_tri->add_option("--out", tri.out, "Output file (default: stdout)");
    c_tri->add_option("--format", tri.format, "csv | json")->capture_default_str();

    ReduceCmd red;
    auto* c_red = app.add_subcommand("reduce", "Spectral embedding at the entropy-selected scale");
    add_source_flags(c_red, red.src, true);
    add_pipeline_flags(c_red, red.pipe);
    c_red->add_option("--k", red.k, "Target dimension")->capture_default_str()->check(CLI::PositiveNumber);
    c_red->add_option("--out", red.out, "Embedding CSV")->required();

    KMeansCmd km;
    auto* c_km = app.add_subcommand("kmeans", "k-means baseline");
    add_source_flags(c_km, km.src, true);
    c_km->add_option("--k", km.opts.k, "Number of clusters")->required()->check(CLI::PositiveNumber);
    c_km->add_option("--n-init", km.opts.n_init, "Random restarts")->capture_default_str()->check(CLI::PositiveNumber);
    c_km->add_option("--max-iters", km.opts.max_iters, "Lloyd iterations per restart")->capture_default_str();
    c_km->add_option("--out", km.out, "Output directory")->required();

    IngestCmd ing;
    auto* c_ing = app.add_subcommand("ingest-images", "Turn a directory of grayscale images into a point cloud");
    c_ing->add_option("--dir", ing.dir, "Image directory")->required();
    c_ing->add_option("--label-pattern", ing.opts.label_pattern, "Regex; group 1 is the object id")
        ->capture_default_str();
    c_ing->add_option("--out", ing.out, "Output file")->required();
    c_ing->add_option("--format", ing.format, "csv | json (default: from extension)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (c_gen->parsed()) gen.run(out);
        if (c_clu->parsed()) clu.run(out);
        if (c_tri->parsed()) tri.run(out, err);
        if (c_red->parsed()) red.run(out);
        if (c_km->parsed()) km.run(out);
        if (c_ing->parsed()) ing.run(out);
    } catch (const DuplicatePoints& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace vnscale::cli
