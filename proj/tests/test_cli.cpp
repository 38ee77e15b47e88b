#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vnscale/commands.hpp"
#include "vnscale/images.hpp"
#include "vnscale/io.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace vnscale;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result vnscale_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "vnscale");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

struct ScratchDir {
    fs::path path;
    ScratchDir() : path(fs::temp_directory_path() / ("vnscale_cli_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate writes the requested number of points") {
    ScratchDir dir;
    auto r = vnscale_cli({"generate", "--shape", "swiss_roll", "--n", "800", "--seed", "3", "--out", dir / "roll.csv"});
    REQUIRE(r.code == 0);
    const auto c = io::load_cloud(dir / "roll.csv");
    CHECK(c.size() == 800);
    CHECK(c.dim() == 3);

    r = vnscale_cli({"generate", "--n", "1000", "--sd", "0", "--out", dir / "circles.json"});
    REQUIRE(r.code == 0);
    const auto circles = io::load_cloud(dir / "circles.json");
    REQUIRE(circles.labels);
    std::array<int, 3> counts{};
    for (int l : *circles.labels) ++counts[static_cast<std::size_t>(l)];
    CHECK(counts == std::array<int, 3>{334, 333, 333});
}

TEST_CASE("generate is deterministic for a seed") {
    ScratchDir dir;
    for (const char* name : {"a.csv", "b.csv"}) {
        REQUIRE(vnscale_cli({"generate", "--shape", "trefoil", "--n", "300", "--sd", "0.05", "--seed", "11",
                             "--out", dir / name}).code == 0);
    }
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    REQUIRE(vnscale_cli({"generate", "--shape", "trefoil", "--n", "300", "--sd", "0.05", "--seed", "12",
                         "--out", dir / "c.csv"}).code == 0);
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
}

TEST_CASE("cluster a single circle read from CSV") {
    ScratchDir dir;
    PointCloud c;
    c.points.resize(150, 3);
    for (Index i = 0; i < 150; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / 150.0;
        c.points.row(i) << std::cos(t), std::sin(t), 0.0;
    }
    io::save_cloud(dir / "circle.csv", c, io::Format::csv);
    auto r = vnscale_cli({"cluster", "--input", dir / "circle.csv", "--grid-size", "60", "--out", dir / "run1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("k=1 ", 0) == 0);
    for (const char* f : {"profile.csv", "profile.json", "assignment.json"}) CHECK(fs::exists(dir.path / "run1" / f));
    CHECK(!fs::exists(dir.path / "run1" / "confusion.csv"));

    const auto j = nlohmann::json::parse(slurp(dir.path / "run1" / "assignment.json"));
    CHECK(j.at("k") == 1);
    CHECK(j.at("labels").size() == 150);

    r = vnscale_cli({"cluster", "--input", dir / "circle.csv", "--grid-size", "60", "--out", dir / "run2"});
    REQUIRE(r.code == 0);
    for (const char* f : {"profile.csv", "profile.json", "assignment.json"}) {
        CHECK(slurp(dir.path / "run1" / f) == slurp(dir.path / "run2" / f));
    }
}

TEST_CASE("cluster generated circles reports mistakes") {
    ScratchDir dir;
    const auto r = vnscale_cli({"cluster", "--n", "240", "--sd", "0", "--seed", "2", "--grid-size", "80",
                                "--out", dir / "run"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mistakes=") != std::string::npos);
    CHECK(fs::exists(dir.path / "run" / "confusion.csv"));
}

TEST_CASE("trials tabulates percentages") {
    ScratchDir dir;
    const auto r = vnscale_cli({"trials", "--n", "120", "--sd", "0.01", "--trials", "1", "--grid-size", "40"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string header, row, extra;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "sd,k1,k2,k3,k4plus");
    CHECK(row.rfind("0.01,", 0) == 0);
    CHECK(row.find("100.000") != std::string::npos);
    CHECK(!std::getline(is, extra));

    const auto j = vnscale_cli({"trials", "--n", "90", "--sd", "0.01,0.02", "--trials", "2", "--grid-size", "30",
                                "--format", "json", "--out", dir / "t.json"});
    REQUIRE(j.code == 0);
    const auto parsed = nlohmann::json::parse(slurp(dir.path / "t.json"));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[1].at("sd").get<double>() == 0.02);
}

TEST_CASE("reduce writes an n x k embedding") {
    ScratchDir dir;
    auto r = vnscale_cli({"reduce", "--shape", "trefoil", "--n", "500", "--seed", "1", "--k", "2",
                          "--out", dir / "emb.csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("neighbor_overlap_10nn=") != std::string::npos);
    std::ifstream is(dir / "emb.csv");
    std::string line;
    std::getline(is, line);
    CHECK(line == "e0,e1");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 1);
    }
    CHECK(rows == 500);
}

TEST_CASE("reduce with too large a dimension names the available count") {
    ScratchDir dir;
    const auto r = vnscale_cli({"reduce", "--shape", "trefoil", "--n", "20", "--k", "25", "--grid-size", "10",
                                "--out", dir / "emb.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("only ") != std::string::npos);
    CHECK(r.err.find("non-kernel eigenvectors") != std::string::npos);
}

TEST_CASE("kmeans command") {
    ScratchDir dir;
    const auto r = vnscale_cli({"kmeans", "--n", "300", "--k", "3", "--seed", "4", "--out", dir / "km"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mistakes=") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir.path / "km" / "assignment.json"));
    CHECK(j.at("k") == 3);
    CHECK(j.at("labels").size() == 300);
}

TEST_CASE("ingest-images and duplicate exit code") {
    ScratchDir dir;
    fs::create_directories(dir.path / "imgs");
    for (int obj = 0; obj < 2; ++obj) {
        for (int view = 0; view < 3; ++view) {
            GrayImage img{3, 3, {}};
            for (int p = 0; p < 9; ++p) img.pixels.push_back(static_cast<std::uint8_t>(obj * 100 + view * 10 + p));
            write_pgm(dir.path / "imgs" / ("obj" + std::to_string(obj + 1) + "__" + std::to_string(view) + ".pgm"), img);
        }
    }
    auto r = vnscale_cli({"ingest-images", "--dir", dir / "imgs", "--out", dir / "imgs.csv"});
    REQUIRE(r.code == 0);
    const auto c = io::load_cloud(dir / "imgs.csv");
    CHECK(c.size() == 6);
    CHECK(c.dim() == 9);
    CHECK(*c.labels == std::vector<int>{0, 0, 0, 1, 1, 1});

    fs::copy_file(dir.path / "imgs" / "obj1__0.pgm", dir.path / "imgs" / "obj1__9.pgm");
    r = vnscale_cli({"ingest-images", "--dir", dir / "imgs", "--out", dir / "imgs2.csv"});
    CHECK(r.code == 3);
    CHECK(!r.err.empty());
}

TEST_CASE("argument errors") {
    ScratchDir dir;
    CHECK(vnscale_cli({}).code != 0);
    CHECK(vnscale_cli({"generate", "--shape", "moebius", "--out", dir / "x.csv"}).code == 1);
    CHECK(vnscale_cli({"generate", "--n", "-5", "--out", dir / "x.csv"}).code != 0);
    CHECK(vnscale_cli({"cluster", "--n", "3001", "--out", dir / "big"}).code == 1);
    CHECK(vnscale_cli({"cluster", "--input", dir / "missing.csv", "--out", dir / "o"}).code == 1);
    CHECK(vnscale_cli({"--help"}).code == 0);
}
