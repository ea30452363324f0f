// Exercises the installed CLI end to end: exit codes, overrides, and
// byte-identical reruns. Invoked as: test_cli <path-to-edgeavg>.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <edgeavg binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = fs::temp_directory_path() / "edgeavg_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);

  const fs::path config = work / "duality.cfg";
  {
    std::ofstream out(config);
    out << "experiment = duality_check\n"
           "graph.kind = cycle\n"
           "graph.n = 10\n"
           "init.kind = rademacher\n"
           "times = 2\n"
           "replicas = 40\n"
           "seed = 9\n"
           "out_dir = " << (work / "out_a").string() << "\n";
  }

  // Happy path: exit 0 and all three files written.
  expect(run(cli + " run --config " + config.string()) == 0, "run exits 0");
  expect(fs::exists(work / "out_a" / "timeseries.csv"), "timeseries written");
  expect(fs::exists(work / "out_a" / "direct.csv"), "direct written");
  expect(fs::exists(work / "out_a" / "summary.txt"), "summary written");

  // Identical rerun into a second directory is byte-identical.
  expect(run(cli + " run --config " + config.string() + " --out " +
             (work / "out_b").string()) == 0,
         "rerun exits 0");
  for (const std::string name : {"timeseries.csv", "direct.csv", "summary.txt"}) {
    expect(slurp(work / "out_a" / name) == slurp(work / "out_b" / name),
           "byte-identical rerun: " + name);
  }

  // Replica override changes the row count.
  expect(run(cli + " run --config " + config.string() + " --out " +
             (work / "out_c").string() + " --replicas 5") == 0,
         "override run exits 0");
  {
    std::ifstream in(work / "out_c" / "timeseries.csv");
    std::string line;
    int rows = -1;  // discount header
    while (std::getline(in, line)) ++rows;
    expect(rows == 5, "replica override respected");
  }

  // Config errors exit 1.
  const fs::path bad = work / "bad.cfg";
  {
    std::ofstream out(bad);
    out << "experiment = local_tail\n"
           "graph.kind = cycle\n"
           "graph.n = 40\n"
           "init.kind = rademacher\n"
           "times = 4\n";  // epsilon missing
  }
  expect(run(cli + " run --config " + bad.string() + " 2>/dev/null") == 1,
         "config error exits 1");
  expect(run(cli + " run --config " + (work / "missing.cfg").string() +
             " 2>/dev/null") == 1,
         "missing config exits 1");

  // Runtime errors (unwritable output) exit 2.
  expect(run(cli + " run --config " + config.string() +
             " --out /proc/nope/out 2>/dev/null") == 2,
         "unwritable out_dir exits 2");

  fs::remove_all(work);
  if (failures == 0) {
    std::cout << "cli tests passed\n";
    return 0;
  }
  std::cerr << failures << " cli test(s) failed\n";
  return 1;
}
