// End-to-end checks of the command-line surface: exit codes, determinism and
// output shapes. The binary path arrives in TERMERR_BIN (set by ctest).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string g_bin;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run(const std::string& args) {
    const std::string capture = std::filesystem::temp_directory_path() / "termerr_cli_out.txt";
    const std::string cmd = g_bin + " " + args + " > " + capture + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main() {
    const char* bin = std::getenv("TERMERR_BIN");
    if (!bin) {
        std::cerr << "TERMERR_BIN not set\n";
        return 1;
    }
    g_bin = bin;
    const std::string tmp = std::filesystem::temp_directory_path() / "termerr_cli_test";
    std::filesystem::create_directories(tmp);

    // theory: reference first-column values
    {
        RunResult r = run("theory --pos 45 --neg 30");
        expect(r.exit_code == 0, "theory exit code");
        expect(r.output.find("p_rule1     0.8000") != std::string::npos, "theory p_rule1");
        expect(r.output.find("p_rule2     0.7838") != std::string::npos, "theory p_rule2");
    }
    // theory accepts the margin and ratio parameterizations
    {
        RunResult r = run("theory --neg 10 --r 180");
        expect(r.exit_code == 0, "theory margin exit code");
        expect(r.output.find("p_rule1     0.1000") != std::string::npos, "theory via margin");
        RunResult k = run("theory --neg 30 --k 1.5");
        expect(k.output.find("p_rule1     0.8000") != std::string::npos, "theory via ratio");
        expect(run("theory --neg 10 --k 1.23").exit_code == 2, "fractional reward count");
    }
    // domain and usage errors exit 2
    expect(run("theory --pos 3 --neg 3").exit_code == 2, "inadmissible spec exit");
    expect(run("theory --pos 3 --neg 1 --r 2").exit_code == 2, "conflicting parameterizations");
    expect(run("theory").exit_code == 2, "missing spec");
    expect(run("bogus-subcommand").exit_code == 2, "unknown subcommand");

    // bounds: worked examples, boundary excluded
    {
        RunResult r = run("bounds -M 0.2");
        expect(r.exit_code == 0, "bounds exit code");
        expect(r.output.find("min k       9.0000") != std::string::npos, "bounds min k");
        expect(r.output.find("min r/x     8.0000") != std::string::npos, "bounds min ratio");
        expect(run("bounds -M 0.5").output.find("min r/x     2.0000") != std::string::npos,
               "bounds half");
        expect(run("bounds -M 1").exit_code == 2, "bound boundary");
        expect(run("bounds -M 0").exit_code == 2, "bound zero");
    }

    // simulate: determinism, file output, summary on stderr only
    {
        const std::string out1 = tmp + "/sim1.csv";
        const std::string out2 = tmp + "/sim2.csv";
        RunResult r1 = run("--seed 7 simulate --pos 4 --neg 2 --tests 3 --episodes 500 --out " + out1);
        RunResult r2 = run("--seed 7 simulate --pos 4 --neg 2 --tests 3 --episodes 500 --out " + out2);
        expect(r1.exit_code == 0 && r2.exit_code == 0, "simulate exit codes");
        const std::string bytes1 = slurp(out1);
        expect(!bytes1.empty() && bytes1 == slurp(out2), "simulate byte determinism");
        expect(bytes1.find("test,seed,failures,episodes,error_rate") == 0, "simulate csv header");
        expect(bytes1.find("aggregate") != std::string::npos, "simulate aggregate row");
        // unwritable output path exits 3
        expect(run("simulate --pos 4 --neg 2 --tests 1 --episodes 10 --out /nonexistent-dir/x.csv")
                       .exit_code == 3,
               "unwritable path exit");
        // the literal variant lands near its enumerated value 7/15
        RunResult lit = run("--seed 11 simulate --pos 4 --neg 2 --rule rule2-literal --tests 2 "
                            "--episodes 20000 --format json");
        expect(lit.exit_code == 0, "literal simulate exit");
        const auto mean_pos = lit.output.find("\"mean\"");
        expect(mean_pos != std::string::npos, "literal simulate mean present");
        expect(lit.output.find("\"theory\": null") != std::string::npos,
               "literal has no theory column");
    }

    // table1: deterministic bytes across runs and thread counts
    {
        RunResult a = run("--seed 3 --threads 1 table1 --tests 2 --episodes 300");
        RunResult b = run("--seed 3 --threads 1 table1 --tests 2 --episodes 300");
        RunResult c = run("--seed 3 --threads 4 table1 --tests 2 --episodes 300");
        expect(a.exit_code == 0, "table1 exit");
        expect(!a.output.empty() && a.output == b.output, "table1 rerun bytes");
        expect(a.output == c.output, "table1 thread bytes");
        expect(a.output.find("scenario,pos,neg,k,r,r_over_x,rule,theory,sim_mean,sim_std,abs_err") == 0,
               "table1 header");
        RunResult theory = run("table1 --theory-only");
        expect(theory.output.find("45Pos30Neg,45,30,1.5000,15,0.5000,rule1,0.8000,,,") !=
                   std::string::npos,
               "table1 theory row");
        // env seed is honored, flag wins over it
        const std::string env_run = "TERMERR_SEED=3 " + g_bin +
                                    " --threads 1 table1 --tests 2 --episodes 300 > " +
                                    (tmp + "/env.csv") + " 2>/dev/null";
        expect(std::system(env_run.c_str()) == 0, "env seed run");
        expect(slurp(tmp + "/env.csv") == a.output, "env seed equals flag seed");
        // precedence: flag > env > default
        const std::string both_run = "TERMERR_SEED=99 " + g_bin +
                                     " --seed 3 --threads 1 table1 --tests 2 --episodes 300 > " +
                                     (tmp + "/both.csv") + " 2>/dev/null";
        expect(std::system(both_run.c_str()) == 0, "flag+env run");
        expect(slurp(tmp + "/both.csv") == a.output, "flag beats env seed");
        // a config file mirrors the flags; flags win on conflict
        {
            std::ofstream cfg(tmp + "/run.cfg");
            cfg << "seed=3\nthreads=1\n\n[table1]\ntests=2\nepisodes=300\n";
        }
        RunResult from_cfg = run("--config " + tmp + "/run.cfg table1");
        expect(from_cfg.exit_code == 0, "config file run");
        expect(from_cfg.output == a.output, "config file equals flags");
        RunResult cfg_override = run("--config " + tmp + "/run.cfg --seed 4 table1");
        expect(cfg_override.exit_code == 0 && cfg_override.output != a.output,
               "flag overrides config seed");
        // json rendering keeps the exact fractions
        RunResult json = run("--seed 3 --threads 1 table1 --tests 2 --episodes 300 --format json");
        expect(json.output.find("\"exact\": \"4/5\"") != std::string::npos, "table1 json exact");
    }

    // sweep: curves and malformed ranges
    {
        RunResult k = run("sweep --mode k --from 1 --to 10 --step 0.5");
        expect(k.exit_code == 0, "k sweep exit");
        expect(k.output.find("9.0000,0.2000") != std::string::npos, "k sweep hits k=9");
        expect(k.output.find("1.0000,") == std::string::npos, "k sweep excludes k=1");
        RunResult m = run("sweep --mode margin --from 0.5 --to 4 --step 0.5 --x 10");
        expect(m.output.find("2.0000,0.5000,20.0000") != std::string::npos, "margin sweep row");
        expect(run("sweep --mode k --from 2 --to 10 --step 0").exit_code == 2,
               "zero step is malformed");
        expect(run("sweep --mode k --from bad --to 10 --step 1").exit_code == 2,
               "non-numeric range");
        RunResult bound = run("sweep --mode bound --from 0.1 --to 0.9 --step 0.1");
        expect(bound.output.find("0.2000,9.0000,8.0000") != std::string::npos, "bound sweep row");
    }

    // oracle: small range passes and reports the literal gap
    {
        RunResult r = run("oracle --max-total 8");
        expect(r.exit_code == 0, "oracle exit");
        expect(r.output.find("RESULT: all cross-checks agree") != std::string::npos,
               "oracle verdict");
        expect(r.output.find("pos 4 neg 2 rule2-literal: literal reading gives 7/15") !=
                   std::string::npos,
               "oracle literal finding");
        RunResult empty = run("oracle --max-total 2");
        expect(empty.exit_code == 0, "oracle empty range exit");
        expect(empty.output.find("0 admissible compositions") != std::string::npos,
               "oracle empty range note");
        expect(run("oracle --max-total 5000").exit_code == 2, "oracle cap exit");
    }

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cout << "cli_tests: " << g_failures << " failures\n";
    return 1;
}
