#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"
#include "willmore/io.hpp"
#include "willmore/threshold.hpp"

using namespace willmore;
using namespace willmore::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result cli(const std::string& args) {
    const std::string cmd = std::string(WILLMORE_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("willmore-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("elastica subcommand") {
    TempDir dir;
    const Result r = cli("elastica --alpha 1 --x 3 --samples 2048 --out " + dir / "arc.csv");
    REQUIRE(r.code == 0);
    const nlohmann::json j = json_of(r);
    CHECK(j["s0"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(j["energy"].get<double>() == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(j["branch"] == "catenoid");
    const SampledCurve arc = read_curve_file(dir / "arc.csv");
    CHECK(arc.size() == 2048);

    CHECK(json_of(cli("elastica --alpha 1 --x 1 --out " + dir / "h.csv"))["energy"].get<double>() == 0.0);
    CHECK(json_of(cli("elastica --alpha 1 --x inf --out " + dir / "i.csv"))["energy"].get<double>() == 4.0);
    CHECK(cli("elastica --alpha -1 --x 2 --out " + dir / "bad.csv").code == 1);
    CHECK(cli("elastica --alpha 1").code == 1);
    CHECK(cli("no-such-command").code == 1);
}

TEST_CASE("threshold, scan-x and sweep") {
    TempDir dir;
    const nlohmann::json sym = json_of(cli("threshold --alpha-minus 1 --alpha-plus 1"));
    CHECK(std::abs(sym["value"].get<double>() - 8 * kPi) < 1e-8);
    CHECK(std::abs(sym["x_star"].get<double>()) < 1e-8);

    REQUIRE(cli("scan-x --alpha-minus 1 --alpha-plus 2 --range -50:50:0.01 --out " + dir / "scan.csv").code == 0);
    std::istringstream scan(slurp(dir / "scan.csv"));
    std::string line;
    std::getline(scan, line);
    CHECK(line == "x,closed_energy");
    double first = 0, last = 0, at_zero = 0;
    int rows = 0;
    while (std::getline(scan, line)) {
        const double x = std::stod(line.substr(0, line.find(',')));
        const double v = std::stod(line.substr(line.find(',') + 1));
        if (rows == 0) first = v;
        last = v;
        if (std::abs(x) < 1e-9) at_zero = v;
        ++rows;
    }
    CHECK(rows == 10001);
    // Tails decay like 4 pi (alpha_plus - alpha_minus) / |x|.
    const BoundaryData asym = BoundaryData::horizontal(1, 2);
    CHECK(first == doctest::Approx(closed_energy_of_cx(asym, BoundaryPoint::finite(-50))).epsilon(1e-15));
    CHECK(last == doctest::Approx(closed_energy_of_cx(asym, BoundaryPoint::finite(50))).epsilon(1e-15));
    CHECK(std::abs(first - 12 * kPi) < 0.1 * kPi);
    CHECK(std::abs(last - 12 * kPi) < 0.1 * kPi);
    CHECK(at_zero == doctest::Approx(8.4 * kPi).epsilon(1e-12));

    REQUIRE(cli("sweep --alpha-minus 1 --alpha-plus-min 1 --alpha-plus-max 1000 --count 7 --out " + dir / "sw.csv").code == 0);
    std::istringstream sweep(slurp(dir / "sw.csv"));
    std::getline(sweep, line);
    CHECK(line == "alpha_plus,inf_value");
    std::vector<double> values;
    while (std::getline(sweep, line)) values.push_back(std::stod(line.substr(line.find(',') + 1)));
    REQUIRE(values.size() == 7);
    CHECK(std::abs(values.front() - 8 * kPi) < 1e-8);
    CHECK(std::abs(values.back() - 10 * kPi) < 0.15 * kPi);
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] > values[i - 1]);
}

TEST_CASE("check subcommand exit codes") {
    TempDir dir;
    write_curve_file(dir / "sphere.csv", circle_arc(0, 1, kPi / 4, 3 * kPi / 4, 2001).reversed());
    const Result ok = cli("check " + dir / "sphere.csv");
    CHECK(ok.code == 0);
    CHECK(json_of(ok)["admissible_improved"] == true);

    // Two full oscillations of large amplitude between horizontal clamps.
    const SampledCurve wiggle = SampledCurve::from_function(
        [](double x) {
            const double w = 1 - x * x;
            return Vec2{x, 1 + 0.8 * w * w * std::sin(4 * kPi * x)};
        },
        -1, 1, 4001);
    const ThresholdResult expected = admissibility(wiggle);
    REQUIRE(*expected.curve_energy > expected.value);
    write_curve_file(dir / "wiggle.csv", wiggle);
    CHECK(cli("check " + dir / "wiggle.csv").code == 2);

    std::ofstream(dir / "broken.csv") << "s,x,y\n0,0,1\n1,oops,1\n";
    CHECK(cli("check " + dir / "broken.csv").code == 1);
    CHECK(cli("check " + dir / "missing.csv").code == 1);
}

TEST_CASE("profile-energy subcommand") {
    TempDir dir;
    write_curve_file(dir / "sphere.csv", circle_arc(0, 1, kPi / 4, 3 * kPi / 4, 2001).reversed());
    const nlohmann::json j = json_of(cli("profile-energy --closed " + dir / "sphere.csv"));
    CHECK(j["closed_willmore"].get<double>() == doctest::Approx(4 * kPi).epsilon(1e-4));
    CHECK(json_of(cli("profile-energy " + dir / "sphere.csv"))["closed_willmore"].is_null());
}

TEST_CASE("flow subcommand") {
    TempDir dir;
    write_curve_file(dir / "geo.csv", circle_arc(0, 1, 0.5, 2.6, 65));
    const Result geo = cli("flow " + dir / "geo.csv --grad-tol 1e-8 --out " + dir / "g.csv --monitors " +
                           dir / "gm.csv");
    REQUIRE(geo.code == 0);
    CHECK(json_of(geo)["steps"] == 0);

    write_curve_file(dir / "cat.csv", perturbed_catenoid(0.05, 257));
    const std::string args = "flow " + dir / "cat.csv --out " + dir / "a.csv --monitors " + dir / "am.csv";
    const Result a = cli(args);
    REQUIRE(a.code == 0);
    const nlohmann::json summary = json_of(a);
    CHECK(summary["converged"] == true);
    CHECK(summary["steps"].get<int>() > 0);
    std::istringstream mon(slurp(dir / "am.csv"));
    std::string line;
    std::getline(mon, line);
    CHECK(line == "step,energy,hyp_length,min_height,grad_norm,accepted_step");
    double prev = INFINITY;
    while (std::getline(mon, line)) {
        std::istringstream row(line);
        std::string step, energy;
        std::getline(row, step, ',');
        std::getline(row, energy, ',');
        CHECK(std::stod(energy) < prev);
        prev = std::stod(energy);
    }

    const std::string first = slurp(dir / "a.csv");
    REQUIRE(cli(args).code == 0);
    CHECK(slurp(dir / "a.csv") == first);
    CHECK(count_lines(first) == 258);

    std::ofstream(dir / "touch.csv") << "s,x,y\n0,0,1\n1,1,0\n2,2,1\n3,3,1\n4,4,1\n5,5,1\n";
    const std::string cmd = std::string(WILLMORE_CLI) + " flow " + dir / "touch.csv --resolution 32 --out " +
                            dir / "t.csv --monitors " + dir / "tm.csv 2>&1 >/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[1024] = {};
    const std::size_t n = std::fread(buf, 1, sizeof buf - 1, pipe);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 1);
    CHECK(std::string(buf, n).find("AxisContact") != std::string::npos);
}
