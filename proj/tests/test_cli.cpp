#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

const std::string kCli = DRIFTBENCH_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("driftbench_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int counter() {
        static int n = 0;
        return ++n;
    }
};

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("generate writes the full NSGT stream deterministically") {
    TempDir tmp;
    const auto a = tmp.path / "a.csv";
    const auto b = tmp.path / "b.csv";
    REQUIRE(run_cli("generate --scenario NSGT --seed 1 --out " + a.string()) == 0);
    REQUIRE(run_cli("generate --scenario NSGT --seed 1 --out " + b.string()) == 0);
    const std::string content = slurp(a);
    CHECK(content == slurp(b));  // byte-identical
    CHECK(count_lines(content) == 10002);  // header + 10001 rows
    CHECK(content.rfind("t,x1,x2,class,component\n", 0) == 0);

    const auto c = tmp.path / "c.csv";
    REQUIRE(run_cli("generate --scenario NSGT --seed 2 --out " + c.string()) == 0);
    CHECK(content != slurp(c));
}

TEST_CASE("generate 5-d header and arff format") {
    TempDir tmp;
    const auto five = tmp.path / "five.csv";
    REQUIRE(run_cli("generate --scenario NSGT-5D --seed 1 --out " + five.string()) == 0);
    CHECK(slurp(five).rfind("t,x1,x2,x3,x4,x5,class,component\n", 0) == 0);

    const auto arff = tmp.path / "x.arff";
    REQUIRE(run_cli("generate --scenario NSGR --seed 1 --format arff --out " + arff.string()) == 0);
    const std::string content = slurp(arff);
    CHECK(content.rfind("@RELATION NSGR\n", 0) == 0);
    CHECK(content.find("@ATTRIBUTE x1 NUMERIC") != std::string::npos);
    CHECK(content.find("@ATTRIBUTE class {A,B}") != std::string::npos);
    CHECK(content.find("@DATA") != std::string::npos);
}

TEST_CASE("generate from a scenario file matches the builtin") {
    TempDir tmp;
    const fs::path shipped = fs::path(DRIFTBENCH_SCENARIO_DIR) / "NSCX.json";
    REQUIRE(fs::exists(shipped));
    const auto from_file = tmp.path / "file.csv";
    const auto builtin = tmp.path / "builtin.csv";
    REQUIRE(run_cli("generate --scenario " + shipped.string() + " --seed 7 --out " +
                    from_file.string()) == 0);
    REQUIRE(run_cli("generate --scenario NSCX --seed 7 --out " + builtin.string()) == 0);
    CHECK(slurp(from_file) == slurp(builtin));
}

TEST_CASE("usage errors exit with code 1") {
    TempDir tmp;
    CHECK(run_cli("generate --scenario NOPE --seed 1 --out " + (tmp.path / "x.csv").string()) == 1);
    CHECK(run_cli("run --scenario NSGT --learner bogus --seeds 1 --outdir " +
                  (tmp.path / "o").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("report on a results-free directory exits with the io code") {
    TempDir tmp;
    CHECK(run_cli("report --results " + tmp.path.string() + " --out " +
                  (tmp.path / "rep").string()) == 3);
}

TEST_CASE("run produces the result bundle and nb lands near its reference") {
    TempDir tmp;
    const auto out = tmp.path / "results";
    REQUIRE(run_cli("run --scenario NSGT --learner nb --learner nn100 --seeds 10 "
                    "--window 500 --outdir " + out.string()) == 0);
    REQUIRE(fs::exists(out / "results.csv"));
    REQUIRE(fs::exists(out / "finals.csv"));
    REQUIRE(fs::exists(out / "curves" / "NSGT.csv"));
    REQUIRE(fs::exists(out / "traces" / "NSGT_nb_seed1.csv"));

    // results.csv: header then one row; nb is the first value column.
    std::ifstream in(out / "results.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "scenario,nb,nn100");
    CHECK(row.rfind("NSGT,", 0) == 0);
    const double nb_pct = std::stod(row.substr(5));
    CHECK(nb_pct > 20.0);  // reference value 25.27
    CHECK(nb_pct < 30.0);

    // compare over the same directory groups the two learners.
    REQUIRE(run_cli("compare --results " + out.string() + " --alpha 0.05 --out " +
                    (tmp.path / "cmp").string()) == 0);
    CHECK(fs::exists(tmp.path / "cmp" / "groups.csv"));
    CHECK(fs::exists(tmp.path / "cmp" / "pvalues.csv"));

    // report renders a deterministic bundle.
    REQUIRE(run_cli("report --results " + out.string() + " --out " +
                    (tmp.path / "rep1").string()) == 0);
    REQUIRE(run_cli("report --results " + out.string() + " --out " +
                    (tmp.path / "rep2").string()) == 0);
    CHECK(slurp(tmp.path / "rep1" / "report.txt") == slurp(tmp.path / "rep2" / "report.txt"));
    CHECK(slurp(tmp.path / "rep1" / "results.csv") == slurp(tmp.path / "rep2" / "results.csv"));
}

TEST_CASE("run with a single seed skips significance flags but succeeds") {
    TempDir tmp;
    const auto out = tmp.path / "single";
    REQUIRE(run_cli("run --scenario NSPC --learner nb --learner sgd --seeds 1 --outdir " +
                    out.string()) == 0);
    const std::string results = slurp(out / "results.csv");
    CHECK(results.find('*') == std::string::npos);
    CHECK(run_cli("compare --results " + out.string()) == 1);  // needs >= 2 seeds
}

TEST_CASE("the oracle is available as learner 'opt' on the run grid") {
    TempDir tmp;
    const auto out = tmp.path / "opt";
    REQUIRE(run_cli("run --scenario NSGT-5D --learner opt --seeds 2 --outdir " +
                    out.string()) == 0);
    const std::string results = slurp(out / "results.csv");
    CHECK(results.rfind("scenario,opt\n", 0) == 0);
    std::istringstream rows(results);
    std::string header, row;
    std::getline(rows, header);
    std::getline(rows, row);
    const double opt_pct = std::stod(row.substr(row.find(',') + 1));
    CHECK(opt_pct > 4.0);  // reference value 5.74
    CHECK(opt_pct < 7.5);
}
