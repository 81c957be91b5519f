// Spawns the command-line binary end to end: dataset generation, solving,
// evaluation, benchmarking, and the documented exit codes (0 success,
// 2 configuration error, 3 interior-origin violation).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "check.h"

namespace fs = std::filesystem;

namespace {

std::string g_bin;

int run(const std::string& args) {
    const int st = std::system((g_bin + " " + args).c_str());
    if (st < 0) return -1;
    return (st & 0x7f) ? 128 : (st >> 8);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

int lines_of(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    TestContext t;
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
        return 1;
    }
    g_bin = argv[1];
    const fs::path dir = fs::temp_directory_path() / "grmr_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string quiet = " 2>/dev/null";

    // Generation writes a loadable CSV with a config comment.
    const fs::path data = dir / "data.csv";
    CHECK_EQ(t, run("generate --dist uniform --n 60 --d 2 --seed 3 --out " + data.string() + " >/dev/null" + quiet), 0);
    const std::string csv = slurp(data);
    CHECK(t, has(csv, "# config:"));
    CHECK_EQ(t, lines_of(csv), 62);  // comment + header + 60 rows

    // Solving that file produces a JSON report with size and evaluations.
    const fs::path sol = dir / "sol.json";
    CHECK_EQ(t, run("solve --input " + data.string() + " --eps 0.2 --out " + sol.string() + " >/dev/null" + quiet), 0);
    const std::string sj = slurp(sol);
    CHECK(t, has(sj, "\"size\""));
    CHECK(t, has(sj, "\"exact_max_regret\""));
    CHECK(t, has(sj, "\"sampled_max_regret\""));
    CHECK(t, has(sj, "\"egrmr\""));  // auto resolves to the exact solver in 2D

    // The heuristic and the dual (size-budget) modes run on generated data.
    const fs::path hsol = dir / "hsol.json";
    CHECK_EQ(t, run("solve --dist normal --n 200 --d 3 --seed 1 --eps 0.3 --m 5000 --out " + hsol.string() + " >/dev/null" + quiet), 0);
    CHECK(t, has(slurp(hsol), "\"hgrmr\""));
    const fs::path dual = dir / "dual.json";
    CHECK_EQ(t, run("solve --input " + data.string() + " --r 4 --out " + dual.string() + " >/dev/null" + quiet), 0);
    CHECK(t, has(slurp(dual), "\"epsilon\""));

    // Evaluation of an explicit row set against the same file.
    const fs::path ev = dir / "eval.json";
    CHECK_EQ(t, run("evaluate --input " + data.string() + " --rows 0,1,2 --out " + ev.string() + " >/dev/null" + quiet), 0);
    CHECK(t, has(slurp(ev), "\"exact_max_regret\""));

    // Benchmarks expand the grid into one CSV row per cell.
    const fs::path bench = dir / "bench.csv";
    CHECK_EQ(t, run("bench --dist-list uniform --n-list 30 --d-list 2 --eps-list 0.2 "
                    "--seed-list 0,1 --method-list egrmr --samples 10000 --out " +
                    bench.string() + " >/dev/null" + quiet), 0);
    const std::string bc = slurp(bench);
    CHECK(t, has(bc, "method,distribution,n,d,eps,k,seed,size"));
    CHECK_EQ(t, lines_of(bc), 4);  // config comment + header + 2 cells

    // Configuration errors exit with 2: bad level, missing flags, d = 1.
    CHECK_EQ(t, run("solve --dist normal --n 10 --d 2 --eps 2 >/dev/null" + quiet), 2);
    CHECK_EQ(t, run("solve --eps 0.1 >/dev/null" + quiet), 2);
    CHECK_EQ(t, run("solve --dist normal --n 10 --d 1 --eps 0.1 >/dev/null" + quiet), 2);

    // A dataset whose hull misses the origin is refused with exit 3 and a
    // machine-readable error object.
    const fs::path shifted = dir / "shifted.csv";
    {
        std::ofstream out(shifted);
        out << "a,b\n2,2\n3,2\n2,3\n3,3\n2.5,2.8\n";
    }
    const fs::path errj = dir / "cond.json";
    CHECK_EQ(t, run("solve --input " + shifted.string() + " --eps 0.1 > " + errj.string() + quiet), 3);
    CHECK(t, has(slurp(errj), "interior-origin"));

    fs::remove_all(dir);
    return t.done("cli");
}
