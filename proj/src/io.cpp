#include "vnscale/io.hpp"

#include "vnscale/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vnscale::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(std::string_view s, double& out) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

double to_double(std::string_view s, std::size_t line) {
    double v = 0.0;
    if (!parse_double(s, v)) {
        throw Error("line " + std::to_string(line) + ": cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

int to_label(std::string_view s, std::size_t line) {
    const double v = to_double(s, line);
    if (v != static_cast<double>(static_cast<int>(v))) {
        throw Error("line " + std::to_string(line) + ": label '" + std::string(s) + "' is not an integer");
    }
    return static_cast<int>(v);
}

bool getline_nonempty(std::istream& is, std::string& line, std::size_t& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line != "\r") return true;
    }
    return false;
}

template <class Vec>
nlohmann::json to_array(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw InvalidArgument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

Format format_for_path(const std::filesystem::path& p) {
    return p.extension() == ".json" ? Format::json : Format::csv;
}

void write_cloud_csv(std::ostream& os, const PointCloud& c) {
    for (Index j = 0; j < c.dim(); ++j) os << (j ? "," : "") << 'x' << j;
    if (c.labels) os << ",label";
    os << '\n';
    for (Index i = 0; i < c.size(); ++i) {
        for (Index j = 0; j < c.dim(); ++j) os << (j ? "," : "") << format_double(c.points(i, j));
        if (c.labels) os << ',' << (*c.labels)[i];
        os << '\n';
    }
}

PointCloud read_cloud_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!getline_nonempty(is, line, lineno)) throw Error("empty point cloud CSV");

    auto fields = split(line);
    long label_col = -1;
    std::size_t cols = fields.size();
    double probe = 0.0;
    const bool has_header = !parse_double(fields[0], probe);
    if (has_header) {
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (fields[j] == "label") label_col = static_cast<long>(j);
        }
        if (!getline_nonempty(is, line, lineno)) throw Error("point cloud CSV has no rows");
        fields = split(line);
    }
    const std::size_t dim = cols - (label_col >= 0 ? 1 : 0);
    if (dim < 1) throw Error("point cloud CSV has no coordinate columns");

    std::vector<double> coords;
    std::vector<int> labels;
    do {
        fields = split(line);
        if (fields.size() != cols) {
            throw Error("line " + std::to_string(lineno) + ": expected " + std::to_string(cols) + " fields");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (static_cast<long>(j) == label_col) {
                labels.push_back(to_label(fields[j], lineno));
            } else {
                coords.push_back(to_double(fields[j], lineno));
            }
        }
    } while (getline_nonempty(is, line, lineno));

    PointCloud c;
    const Index n = static_cast<Index>(coords.size() / dim);
    c.points = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        coords.data(), n, static_cast<Index>(dim));
    if (label_col >= 0) c.labels = std::move(labels);
    c.validate();
    return c;
}

nlohmann::json cloud_to_json(const PointCloud& c) {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (Index i = 0; i < c.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index k = 0; k < c.dim(); ++k) row.push_back(c.points(i, k));
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    if (c.labels) j["labels"] = *c.labels;
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

PointCloud cloud_from_json(const nlohmann::json& j) {
    try {
        const auto& pts = j.at("points");
        if (!pts.is_array() || pts.empty()) throw InvalidArgument("'points' must be a non-empty array");
        const Index n = static_cast<Index>(pts.size());
        const Index d = static_cast<Index>(pts[0].size());
        PointCloud c;
        c.points.resize(n, d);
        for (Index i = 0; i < n; ++i) {
            if (static_cast<Index>(pts[i].size()) != d) throw InvalidArgument("ragged 'points' array");
            for (Index k = 0; k < d; ++k) c.points(i, k) = pts[i][k].get<double>();
        }
        if (j.contains("labels") && !j["labels"].is_null()) c.labels = j["labels"].get<std::vector<int>>();
        if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed point cloud JSON: ") + e.what());
    }
}

void save_cloud(const std::filesystem::path& p, const PointCloud& c, Format f) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    if (f == Format::json) {
        os << cloud_to_json(c).dump() << '\n';
    } else {
        write_cloud_csv(os, c);
    }
    if (!os) throw Error("failed writing " + p.string());
}

PointCloud load_cloud(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw Error("cannot read " + p.string());
    if (format_for_path(p) == Format::json) {
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(p.string() + ": " + e.what());
        }
        return cloud_from_json(j);
    }
    return read_cloud_csv(is);
}

void write_graph(std::ostream& os, const WeightedGraph& g) {
    os << g.n << ' ' << format_double(g.scale) << '\n';
    for (const auto& e : g.edges) os << e.i << ' ' << e.j << ' ' << format_double(e.w) << '\n';
}

WeightedGraph read_graph(std::istream& is) {
    WeightedGraph g;
    if (!(is >> g.n >> g.scale)) throw Error("graph header must be 'n r'");
    if (g.n < 0 || !(g.scale > 0.0)) throw Error("graph header has invalid n or r");
    Edge e{};
    while (is >> e.i >> e.j >> e.w) {
        if (e.i < 0 || e.j >= g.n || e.i >= e.j) throw Error("edge endpoints must satisfy 0 <= i < j < n");
        if (!(e.w > 0.0) || e.w > g.scale) throw Error("edge weight must lie in (0, r]");
        g.edges.push_back(e);
    }
    if (!is.eof()) throw Error("trailing garbage in graph edge list");
    return g;
}

nlohmann::json spectrum_to_json(const Spectrum& s, bool with_vectors) {
    nlohmann::json j;
    j["mu"] = to_array(s.mu);
    if (with_vectors && s.has_vectors()) {
        nlohmann::json cols = nlohmann::json::array();
        for (Index c = 0; c < s.U.cols(); ++c) cols.push_back(to_array(s.U.col(c)));
        j["vectors"] = std::move(cols);
        j["note"] = "vectors[i] is the unit eigenvector for mu[i]";
    } else {
        j["note"] = "eigenvectors omitted";
    }
    return j;
}

void write_profile_csv(std::ostream& os, const EntropyProfile& p) {
    os << "r,entropy\n";
    for (std::size_t g = 0; g < p.r_grid.size(); ++g) {
        os << format_double(p.r_grid[g]) << ',' << format_double(p.H[g]) << '\n';
    }
}

EntropyProfile read_profile_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!getline_nonempty(is, line, lineno) || split(line) != std::vector<std::string>{"r", "entropy"}) {
        throw Error("entropy profile CSV must start with header 'r,entropy'");
    }
    EntropyProfile p;
    while (getline_nonempty(is, line, lineno)) {
        const auto f = split(line);
        if (f.size() != 2) throw Error("line " + std::to_string(lineno) + ": expected 2 fields");
        p.r_grid.push_back(to_double(f[0], lineno));
        p.H.push_back(to_double(f[1], lineno));
    }
    return p;
}

nlohmann::json profile_to_json(const EntropyProfile& p, const ScaleSelection& sel) {
    nlohmann::json j;
    j["t_star"] = p.t_star;
    j["r"] = p.r_grid;
    j["entropy"] = p.H;
    j["components"] = p.components;
    j["kernel_dim"] = p.kernel_dim;
    j["min_positive_mu"] = p.min_positive_mu;
    j["selection"] = {{"r_hat", sel.r_hat},
                      {"index", sel.index},
                      {"H_max", sel.H_max},
                      {"degenerate", sel.degenerate},
                      {"min_positive_mu", p.min_positive_mu.empty() ? 0.0 : p.min_positive_mu[sel.index]}};
    return j;
}

nlohmann::json assignment_to_json(const ClusterAssignment& a, const std::string& profile_ref) {
    return {{"labels", a.labels},
            {"k", a.k},
            {"r_hat", a.r_hat},
            {"degenerate", a.selection.degenerate},
            {"entropy_profile_ref", profile_ref}};
}

nlohmann::json kmeans_to_json(const KMeansResult& r) {
    return {{"labels", r.labels}, {"k", r.k}, {"cost", r.cost}, {"iterations", r.cost_history.size()}};
}

void write_confusion_csv(std::ostream& os, const ConfusionMatrix& m) {
    const std::size_t k_pred = m.counts.empty() ? 0 : m.counts[0].size();
    os << "truth";
    for (std::size_t c = 0; c < k_pred; ++c) os << ",pred_" << c;
    os << '\n';
    for (std::size_t t = 0; t < m.counts.size(); ++t) {
        os << t;
        for (Index v : m.counts[t]) os << ',' << v;
        os << '\n';
    }
}

void write_embedding_csv(std::ostream& os, const Embedding& e, const std::vector<int>* labels) {
    for (Index j = 0; j < e.coords.cols(); ++j) os << (j ? "," : "") << 'e' << j;
    if (labels) os << ",label";
    os << '\n';
    for (Index i = 0; i < e.coords.rows(); ++i) {
        for (Index j = 0; j < e.coords.cols(); ++j) os << (j ? "," : "") << format_double(e.coords(i, j));
        if (labels) os << ',' << (*labels)[i];
        os << '\n';
    }
}

}  // namespace vnscale::io
