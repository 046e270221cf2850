#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "netresp/graph.hpp"
#include "netresp/scenario.hpp"

using namespace netresp;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("netresp_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out_path = work_dir() / "stdout.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + NETRESP_CLI_PATH +
                          " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out_path)};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli("analyze worked-example").exit_code == 0);
  // validation error: bad domain in the scenario file
  const fs::path bad = work_dir() / "bad.scn";
  std::ofstream(bad) << "w = 1\nb = 5\nalpha = 1.5\nq = 0.5\nd = 3\n";
  const RunResult invalid = run_cli("analyze " + bad.string());
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.out.find("alpha") != std::string::npos);
  // computational error: an RK4 step too large to conserve
  CHECK(run_cli("sir --beta 50 --gamma 0.1 --population 1000 --i0 10 "
                "--t-max 10 --step 1")
            .exit_code == 2);
  // I/O error: no such file or preset
  CHECK(run_cli("analyze definitely-missing.scn").exit_code == 3);
  // usage problems are validation errors too
  CHECK(run_cli("sweep pandemic --axis q=abc").exit_code == 1);
  CHECK(run_cli("simulate pandemic --trials 100").exit_code == 1);  // no --seed
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("analyze --csv is byte-stable across runs") {
  const fs::path a = work_dir() / "a.csv";
  const fs::path b = work_dir() / "b.csv";
  for (const char* preset : {"worked-example", "pandemic", "vaccination"}) {
    REQUIRE(run_cli(std::string("--csv ") + a.string() + " analyze " + preset)
                .exit_code == 0);
    REQUIRE(run_cli(std::string("--csv ") + b.string() + " analyze " + preset)
                .exit_code == 0);
    const std::string bytes = slurp(a);
    CHECK(bytes == slurp(b));
    CHECK(bytes.find("label,w,b,alpha,q,d,r,regime,T,M,overflow\n") == 0);
  }
}

TEST_CASE("sweep CSV is byte-identical across thread counts") {
  const fs::path a = work_dir() / "t1.csv";
  const fs::path b = work_dir() / "t4.csv";
  const std::string args = "sweep pandemic --axis q=0:1:21 --axis b=1:12:23";
  REQUIRE(run_cli("--csv " + a.string() + " " + args, "OMP_NUM_THREADS=1")
              .exit_code == 0);
  REQUIRE(run_cli("--csv " + b.string() + " " + args, "OMP_NUM_THREADS=4")
              .exit_code == 0);
  const std::string bytes = slurp(a);
  CHECK(!bytes.empty());
  CHECK(bytes == slurp(b));
  // 21 * 23 rows + header
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 21 * 23 + 1);
}

TEST_CASE("presets list and dump") {
  const RunResult list = run_cli("presets");
  CHECK(list.exit_code == 0);
  for (const auto& name : preset_names()) {
    CHECK(list.out.find(name) != std::string::npos);
  }
  const RunResult dump = run_cli("presets pandemic");
  CHECK(dump.exit_code == 0);
  const ScenarioSpec spec = parse_scenario(dump.out);
  CHECK(spec.label == "pandemic");
  CHECK(spec.params.branching == 8.0);
  // the preset documents where the commonly quoted 1448.8 comes from
  CHECK(dump.out.find("1448.8") != std::string::npos);
  CHECK(dump.out.find("427.9") != std::string::npos);
}

TEST_CASE("graph subcommand reproduces the closed form on the 5-ary tree") {
  const fs::path edges = work_dir() / "tree57.txt";
  write_edge_list_file(make_bary_tree(5, 7), edges.string());
  const RunResult run = run_cli("graph worked-example --graph-file " +
                                edges.string() + " --seed-node 0");
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("2031.17") != std::string::npos);
  CHECK(run.out.find("rho(A) = 0") != std::string::npos);  // tree is nilpotent
  CHECK(run.out.find("converges") != std::string::npos);
}

TEST_CASE("analyze resolves scenario files with graph references") {
  const fs::path edges = work_dir() / "k4.txt";
  write_edge_list_file(make_complete(4), edges.string());
  const fs::path scn = work_dir() / "withgraph.scn";
  std::ofstream(scn) << "label = k4\nw = 1\nb = 3\nalpha = 0.5\nq = 0.5\n"
                     << "d = 4\ngraph = k4.txt\nseed_node = 0\n";
  const RunResult run = run_cli("analyze " + scn.string());
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("walk-sum total") != std::string::npos);
  CHECK(run.out.find("Neumann margin") != std::string::npos);
  // margin 0.25 * 3 = 0.75 < 1
  CHECK(run.out.find("0.75") != std::string::npos);
}

TEST_CASE("simulate on the deterministic tree preset") {
  const fs::path scn = work_dir() / "dtree.scn";
  std::ofstream(scn) << "label = dtree\nw = 1\nb = 2\nalpha = 1\nq = 1\nd = 3\n";
  const RunResult run =
      run_cli("simulate " + scn.string() + " --trials 1000 --seed 7");
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("mean             = 14\n") != std::string::npos);
  CHECK(run.out.find("consistent") != std::string::npos);
}

TEST_CASE("simulate with a graph scenario compares against the walk sum") {
  const fs::path edges = work_dir() / "tree23.txt";
  write_edge_list_file(make_bary_tree(2, 3), edges.string());
  const fs::path scn = work_dir() / "gsim.scn";
  std::ofstream(scn) << "label = gsim\nw = 1\nb = 2\nalpha = 1\nq = 1\nd = 3\n"
                     << "graph = tree23.txt\nseed_node = 0\n";
  const RunResult run =
      run_cli("simulate " + scn.string() + " --trials 256 --seed 3");
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("mean             = 14\n") != std::string::npos);
  CHECK(run.out.find("analytic         = 14\n") != std::string::npos);
  CHECK(run.out.find("consistent") != std::string::npos);
}

TEST_CASE("levers and graph emit CSV under --csv") {
  const fs::path csv = work_dir() / "levers.csv";
  REQUIRE(run_cli("--csv " + csv.string() + " levers pandemic").exit_code == 0);
  const std::string bytes = slurp(csv);
  CHECK(bytes.find("lever,current,critical_at,feasible\n") == 0);
  CHECK(bytes.find("q,0.6,0.178571428571428") != std::string::npos);

  const fs::path edges = work_dir() / "k4g.txt";
  write_edge_list_file(make_complete(4), edges.string());
  const fs::path gcsv = work_dir() / "graph.csv";
  REQUIRE(run_cli("--csv " + gcsv.string() + " graph vaccination-friction " +
                  "--graph-file " + edges.string() + " --seed-node 1")
              .exit_code == 0);
  const std::string gbytes = slurp(gcsv);
  CHECK(gbytes.find("label,nodes,arcs,seed_node,walk_total,rho,margin,"
                    "convergent,overflow\n") == 0);
  CHECK(gbytes.find("vaccination-friction,4,12,1,") != std::string::npos);
  CHECK(gbytes.find(",true,") != std::string::npos);
}

TEST_CASE("simulate reports truncation as unreliable") {
  const fs::path scn = work_dir() / "trunc.scn";
  std::ofstream(scn) << "label = trunc\nw = 1\nb = 5\nalpha = 1\nq = 1\nd = 9\n";
  const RunResult run = run_cli("simulate " + scn.string() +
                                " --trials 50 --seed 7 --cap 1000");
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("50 truncated") != std::string::npos);
  CHECK(run.out.find("unreliable") != std::string::npos);
}

TEST_CASE("preset fidelity through the CLI path") {
  const RunResult worked = run_cli("analyze worked-example");
  CHECK(worked.out.find("2031.17") != std::string::npos);
  CHECK(worked.out.find("406.234") != std::string::npos);
  const RunResult pandemic = run_cli("analyze pandemic");
  CHECK(pandemic.out.find("1448.3") != std::string::npos);
  CHECK(pandemic.out.find("181.038") != std::string::npos);
  const RunResult vacc = run_cli("analyze vaccination");
  CHECK(vacc.out.find("385.3") != std::string::npos);
  CHECK(vacc.out.find("77.06") != std::string::npos);
  const RunResult friction = run_cli("analyze vaccination-friction");
  CHECK(friction.out.find("M_inf  = 2.5") != std::string::npos);
  CHECK(friction.out.find("T_inf = 12.5") != std::string::npos);
  CHECK(friction.out.find("subcritical") != std::string::npos);
}

TEST_CASE("tolerance flag widens the critical band") {
  const fs::path scn = work_dir() / "nearcrit.scn";
  std::ofstream(scn) << "w = 1\nb = 2\nalpha = 0.5\nq = 0.999\nd = 5\n";
  const RunResult strict = run_cli("analyze " + scn.string());
  CHECK(strict.out.find("subcritical") != std::string::npos);
  const RunResult loose = run_cli("--tolerance 0.01 analyze " + scn.string());
  CHECK(loose.out.find("[critical") != std::string::npos);
}

}  // TEST_SUITE
