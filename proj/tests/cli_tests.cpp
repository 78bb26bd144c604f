// Black-box checks of the command-line tool: exit codes, output formats.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_output.tmp";
    const std::string cmd = g_binary + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    std::remove(out_path.c_str());
    return r;
}

void expect(bool ok, const std::string& what, const RunResult& r) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        ++g_failures;
        std::cout << "FAILED: " << what << "\nexit=" << r.exit_code << "\noutput:\n"
                  << r.output << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-subvc>\n";
        return 2;
    }
    g_binary = argv[1];

    {
        auto r = run("estimate --gen regular:n=600,d=6,seed=1 --eps 0.25 --mode max-deg "
                     "--trials 2 --samples 200");
        expect(r.exit_code == 0 && r.output.find("\"estimate\"") != std::string::npos &&
                   r.output.find("# summary:") != std::string::npos,
               "estimate with trials emits reports and a summary", r);
    }
    {
        auto r = run("estimate --gen gnp:n=600,p=0.5,seed=2 --eps 0.25 --mode dense --samples 150");
        const bool pair_used = r.output.find("\"pair\":0") == std::string::npos;
        const bool no_neighbor = r.output.find("\"neighbor\":0") != std::string::npos;
        expect(r.exit_code == 0 && pair_used && no_neighbor,
               "dense mode touches only pair queries", r);
    }
    {
        auto r = run("estimate --gen regular:n=100,d=4,seed=1");
        expect(r.exit_code == 2, "missing --eps is a usage error", r);
    }
    {
        auto r = run("estimate --input does_not_exist.txt --eps 0.2");
        expect(r.exit_code == 2, "unreadable input is a usage error", r);
    }
    {
        auto r = run("estimate --gen nosuch:n=5 --eps 0.2");
        expect(r.exit_code == 2, "unknown generator family is a usage error", r);
    }
    {
        std::ofstream f("cli_test_graph.tmp");
        f << "3 2\n0 1\n1 2\n";
        f.close();
        auto r = run("estimate --input cli_test_graph.tmp --eps 0.3 --format csv");
        std::remove("cli_test_graph.tmp");
        expect(r.exit_code == 0 && r.output.find("family,n,d,eps") != std::string::npos,
               "file input with csv output", r);
    }
    {
        auto r = run("bench --family regular --n 400 --d 4,8 --eps 0.3 --trials 2 --mode plain");
        std::size_t rows = 0;
        std::istringstream lines(r.output);
        std::string line;
        while (std::getline(lines, line))
            if (!line.empty() && line.find("family,") == std::string::npos) ++rows;
        expect(r.exit_code == 0 && rows == 4, "bench emits one row per cell and trial", r);
    }
    {
        auto r = run("bench --family regular --n 100 --eps 0.3");
        expect(r.exit_code == 2, "missing sweep list is a usage error", r);
    }
    {
        auto r = run("bench --family regular --n 100 --d \"\" --eps 0.3");
        expect(r.exit_code == 2, "empty sweep list is a usage error", r);
    }
    {
        auto r = run("verify --level nosuch");
        expect(r.exit_code == 2, "unknown verify level is a usage error", r);
    }
    {
        auto r = run("--help");
        expect(r.exit_code == 0 && r.output.find("estimate") != std::string::npos, "--help", r);
    }
    {
        auto r = run("estimate --gen path:n=30,seed=1 --eps 0.3 --out cli_test_report.tmp");
        std::ifstream f("cli_test_report.tmp");
        std::stringstream ss;
        ss << f.rdbuf();
        std::remove("cli_test_report.tmp");
        expect(r.exit_code == 0 && ss.str().find("\"estimate\"") != std::string::npos,
               "--out writes the report to a file", r);
    }

    if (g_failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cout << g_failures << " cli test(s) failed\n";
    return 1;
}
