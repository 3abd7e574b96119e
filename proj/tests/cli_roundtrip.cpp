// End-to-end checks of the command-line tool: output round-trips, run-to-run
// determinism, and the exit-code contract. Takes the binary path as argv[1].
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << '\n';
    if (!ok)
        ++failures;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        std::perror("popen");
        return r;
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_roundtrip <path-to-binary>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    char tmpl[] = "/tmp/quniform-cli-XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (!dir) {
        std::perror("mkdtemp");
        return 2;
    }
    const std::string tmp = dir;

    // generated file feeds back into the diagnostics unchanged
    const std::string csv = tmp + "/p8.csv";
    RunResult gen = run(cli + " generate --seq sobol2d --n 8 --precision 3 --out " + csv);
    check(gen.exit_code == 0, "generate exits 0");
    const RunResult from_file = run(cli + " separation --in " + csv);
    const RunResult from_seq = run(cli + " separation --seq sobol2d --n 8 --precision 3");
    check(from_file.exit_code == 0 && from_seq.exit_code == 0, "separation exits 0");
    check(!from_file.out.empty() && from_file.out == from_seq.out,
          "separation output identical via file and via generator");

    // byte-for-byte determinism across repeated runs
    const std::string gen_cmd = cli + " generate --seq sobol2d --n 64 --out -";
    check(run(gen_cmd).out == run(gen_cmd).out, "generate output is deterministic");
    const std::string scan_cmd = cli + " scan --seq sobol2d --n-list 7,31 --tol 1e-6 --out -";
    const RunResult scan1 = run(scan_cmd);
    check(scan1.exit_code == 0 && scan1.out == run(scan_cmd).out,
          "scan output is deterministic");
    const std::string greedy_cmd = cli + " greedy --d 2 --n 16 --out -";
    const RunResult greedy1 = run(greedy_cmd);
    check(greedy1.exit_code == 0 && greedy1.out == run(greedy_cmd).out,
          "greedy output is deterministic");

    // scatter plot sketch
    const std::string svg = tmp + "/p8.svg";
    run(cli + " separation --seq sobol2d --n 8 --precision 3 --svg " + svg);
    check(slurp(svg).find("<svg") != std::string::npos, "separation writes an SVG scatter");

    // verification driver
    const RunResult theorem = run(cli + " verify --theorem --w 2");
    check(theorem.exit_code == 0, "verify --theorem --w 2 exits 0");
    check(theorem.out.find("PASS") != std::string::npos, "verify --theorem reports PASS");
    const RunResult all = run(cli + " verify --all");
    check(all.exit_code == 0, "verify --all exits 0");
    check(all.out.find("RESULT: PASS") != std::string::npos, "verify --all overall PASS");
    check(run(cli + " verify --ss07 --literal --nmax 16").exit_code == 1,
          "failed claim exits 1");

    // exit-code contract for the error classes
    check(run(cli + " generate --seq sobol2d --n 9 --precision 3").exit_code == 3,
          "unrepresentable precision exits 3");
    check(run(cli + " greedy --d 2 --n 513").exit_code == 3, "over-cap greedy exits 3");
    check(run(cli + " verify --theorem --w 5").exit_code == 3, "over-cap theorem exits 3");
    check(run(cli + " separation --seq nope --n 4").exit_code == 2,
          "unknown sequence exits 2");
    check(run(cli + " generate --bogus").exit_code == 2, "unknown flag exits 2");
    check(run(cli + " generate --seq sobol2d --n 0").exit_code == 2, "empty prefix exits 2");

    // degenerate geometry: duplicated points have no separation radius
    const std::string dup = tmp + "/dup.csv";
    {
        std::ofstream out(dup);
        out << "# precision=3 dim=2 n=2 label=dup\nx1,x2\n0.25,0.25\n0.25,0.25\n";
    }
    check(run(cli + " mesh-ratio --in " + dup).exit_code == 1,
          "coincident points exit 1 for mesh-ratio");
    check(run(cli + " separation --in " + dup).exit_code == 0,
          "coincident points still have a separation report");

    std::cout << (failures == 0 ? "cli round-trip: all checks passed\n"
                                : "cli round-trip: FAILURES\n");
    return failures == 0 ? 0 : 1;
}
