#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "apspec/model_file.hpp"
#include "apspec/models.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = APSPEC_CLI_BINARY;

struct Workspace {
    fs::path dir;
    Workspace() : dir(fs::path("cli_test_tmp") / std::to_string(counter++)) {
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    static int counter;
};
int Workspace::counter = 0;

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string write_model(const Workspace& ws, const aps::ClosedFormModel& m,
                        const std::string& name = "model.txt") {
    std::string path = ws.path(name);
    aps::write_model_file(aps::realize(m), path);
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line.rfind("# config-hash=", 0) == 0);  // hash comment comes first
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("bands of the free model fill the window at every level") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::free());
    int rc = run("bands --model " + model + " --window 0 10 --levels 0,1,2,3,4 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    for (int n = 0; n <= 4; ++n) {
        auto rows = read_csv(ws.path("out/bands_n" + std::to_string(n) + ".csv"));
        REQUIRE(rows.size() == 2);  // header + single band
        CHECK(rows[0][0] == "level");
        CHECK(std::stod(rows[1][1]) == doctest::Approx(0.0));
        CHECK(std::stod(rows[1][2]) == doctest::Approx(10.0));
    }
    CHECK(fs::exists(ws.path("out/summary.json")));
}

TEST_CASE("summary measures decrease for the step model") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(1.0));
    int rc = run("bands --model " + model + " --window 0 20 --levels 4,8,12 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    std::string summary = slurp(ws.path("out/summary.json"));
    // pull the three total_measure values in level order
    std::vector<double> measures;
    std::size_t pos = 0;
    while ((pos = summary.find("\"total_measure\":", pos)) != std::string::npos) {
        pos += 16;
        measures.push_back(std::stod(summary.substr(pos)));
    }
    REQUIRE(measures.size() == 3);
    CHECK(measures[0] > measures[1]);
    CHECK(measures[1] > measures[2]);
}

TEST_CASE("invariant sweep of the free model is numerically zero") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::free());
    int rc = run("invariant --model " + model + " --window -20 100 --grid 500 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    auto rows = read_csv(ws.path("out/invariant.csv"));
    REQUIRE(rows.size() == 501);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::fabs(std::stod(rows[i][1])) <= 1e-12);
}

TEST_CASE("kronig penney invariant vanishes at 4 pi^2") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::kronig_penney(3.0));
    double e0 = 4 * M_PI * M_PI;
    std::ostringstream cmd;
    cmd.precision(17);
    cmd << "invariant --model " << model << " --window " << e0 - 1e-9 << " " << e0 + 1e-9
        << " --grid 3 --out " << ws.path("out");
    REQUIRE(run(cmd.str()) == 0);
    auto rows = read_csv(ws.path("out/invariant.csv"));
    CHECK(std::fabs(std::stod(rows[2][1])) <= 1e-10);
    CHECK(std::fabs(std::stod(rows[2][2])) <= 1e-10);
}

TEST_CASE("escape classification of the free model") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::free());
    int rc = run("escape --model " + model + " --window 0.5 30 --grid 100 --nmax 15 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    auto rows = read_csv(ws.path("out/escape.csv"));
    REQUIRE(rows.size() == 101);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] == "NotEscapedBy");
}

TEST_CASE("lyapunov sweep below a tall barrier") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(50.0));
    int rc = run("lyapunov --model " + model + " --window 0.5 40 --grid 40 --level 12 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    auto rows = read_csv(ws.path("out/lyapunov.csv"));
    REQUIRE(rows.size() == 41);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) > 0.5);
}

TEST_CASE("dimension artifact") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::free());
    int rc = run("dimension --model " + model + " --window 0 10 --levels 4,8 --out " +
                 ws.path("out"));
    REQUIRE(rc == 0);
    auto rows = read_csv(ws.path("out/dimension.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][4]) == doctest::Approx(1.0));
}

TEST_CASE("surface export") {
    Workspace ws;
    int rc = run("surface --level -0.2 --grid 32 --out " + ws.path("out"));
    REQUIRE(rc == 0);
    std::string obj = slurp(ws.path("out/surface.obj"));
    CHECK(obj.rfind("# config-hash=", 0) == 0);
    CHECK(obj.find("\nv ") != std::string::npos);
    CHECK(obj.find("\nf ") != std::string::npos);
    CHECK(fs::exists(ws.path("out/surface.csv")));
}

TEST_CASE("outputs are byte-identical across thread counts") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(1.0));
    std::string base = "invariant --model " + model + " --window 0.1 50 --grid 777 --out ";
    REQUIRE(run(base + ws.path("t1") + " --threads 1") == 0);
    REQUIRE(run(base + ws.path("t4") + " --threads 4") == 0);
    CHECK(slurp(ws.path("t1/invariant.csv")) == slurp(ws.path("t4/invariant.csv")));

    std::string escape = "escape --model " + model + " --window 0 20 --grid 500 --out ";
    REQUIRE(run(escape + ws.path("e1") + " --threads 1") == 0);
    REQUIRE(run(escape + ws.path("e7") + " --threads 7") == 0);
    CHECK(slurp(ws.path("e1/escape.csv")) == slurp(ws.path("e7/escape.csv")));
}

TEST_CASE("thread count can come from the environment") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(1.0));
    std::string cmd = "APERIODIC_SPECTRUM_THREADS=3 " + kCli + " invariant --model " + model +
                      " --window 0.1 50 --grid 200 --out " + ws.path("env") +
                      " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    REQUIRE(run("invariant --model " + model + " --window 0.1 50 --grid 200 --out " +
                ws.path("plain")) == 0);
    CHECK(slurp(ws.path("env/invariant.csv")) == slurp(ws.path("plain/invariant.csv")));
}

TEST_CASE("exit codes") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(1.0));

    CHECK(run("bands --model missing.txt --window 0 10 --level 4") == 2);
    CHECK(run("bands --model " + model + " --level 4") == 2);  // window required
    CHECK(run("frobnicate") == 2);
    CHECK(run("dimension --model " + model + " --window 0 20 --levels 1,2,3") == 2);

    // malformed model file
    std::ofstream bad(ws.path("bad.txt"));
    bad << "alphabet = ab\n";
    bad.close();
    CHECK(run("bands --model " + ws.path("bad.txt") + " --window 0 10 --level 4") == 2);

    CHECK(run("--help") == 0);
}

TEST_CASE("identical configs produce identical hashes, different configs differ") {
    Workspace ws;
    std::string model = write_model(ws, aps::ClosedFormModel::step(1.0));
    std::string base = "invariant --model " + model + " --window 0.1 50 --grid 100 --out ";
    REQUIRE(run(base + ws.path("a")) == 0);
    REQUIRE(run(base + ws.path("b")) == 0);
    REQUIRE(run("invariant --model " + model + " --window 0.1 60 --grid 100 --out " +
                ws.path("c")) == 0);

    auto first_line = [](const std::string& text) { return text.substr(0, text.find('\n')); };
    std::string ha = first_line(slurp(ws.path("a/invariant.csv")));
    std::string hb = first_line(slurp(ws.path("b/invariant.csv")));
    std::string hc = first_line(slurp(ws.path("c/invariant.csv")));
    CHECK(ha == hb);
    CHECK(ha != hc);
}
