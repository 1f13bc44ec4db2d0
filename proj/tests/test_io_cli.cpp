#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "twfpd/io.hpp"

using namespace twfpd;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = TWFPD_CONFIG_DIR;
const std::string kCliPath = TWFPD_CLI_PATH;

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("twfpd_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_cli(const std::string& args) {
  const int status = std::system((kCliPath + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("parse_bank_config") {
  SUBCASE("shipped first example") {
    const BankConfig config = load_bank_config(kConfigDir / "example1.json");
    CHECK(config.dim == 2);
    CHECK(config.lambda == 2);
    REQUIRE(config.directions.size() == 3);
    CHECK(config.directions[2].xi == MultiIndex{1, 1});
    for (const DirectionSpec& dir : config.directions) CHECK(dir.moments == 1);
    CHECK(config.coset_reps.empty());
    CHECK(config.orientation == Orientation::kMaxPhase);
  }
  SUBCASE("shipped third example with explicit representatives") {
    const BankConfig config = load_bank_config(kConfigDir / "example3.json");
    CHECK(config.lambda == 3);
    REQUIRE(config.coset_reps.size() == 9);
    CHECK(config.coset_reps[3] == MultiIndex{-4, 2});
    CHECK(config.coset_reps[8] == MultiIndex{0, 0});
    CHECK(config.directions[7].zeta == MultiIndex{2, 0});
  }
  SUBCASE("missing lambda is reported by name") {
    const Json broken = Json::parse(R"({"n":2,"directions":[{"xi":[1,0],"m":1}]})");
    CHECK_THROWS_WITH_AS(parse_bank_config(broken), doctest::Contains("lambda"),
                         std::invalid_argument);
  }
  SUBCASE("round trip through JSON") {
    const BankConfig config = load_bank_config(kConfigDir / "example2.json");
    const BankConfig again = parse_bank_config(bank_config_to_json(config));
    CHECK(again.coset_reps == config.coset_reps);
    CHECK(again.directions[3].zeta == config.directions[3].zeta);
  }
}

TEST_CASE("TWS1 round trip") {
  const fs::path dir = temp_dir("tws");
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uniform(-5.0, 5.0);
  Signal x = Signal::zeros({3, 4, 2});
  for (double& v : x.data) v = uniform(rng);

  write_tws(dir / "a.tws", x);
  const Signal back = read_tws(dir / "a.tws");
  CHECK(back.shape == x.shape);
  CHECK(max_abs_diff(back, x) == 0.0);

  // Byte-identical rewrite.
  write_tws(dir / "b.tws", back);
  CHECK(slurp(dir / "a.tws") == slurp(dir / "b.tws"));
}

TEST_CASE("PGM reading") {
  const fs::path dir = temp_dir("pgm");
  SUBCASE("plain P2 with comment") {
    std::ofstream out(dir / "t.pgm");
    out << "P2\n# comment line\n3 2\n255\n0 128 255\n64 32 16\n";
    out.close();
    const Signal img = read_pgm(dir / "t.pgm");
    REQUIRE(img.shape == std::vector<std::size_t>{2, 3});
    CHECK(img.data[0] == doctest::Approx(0.0));
    CHECK(img.data[1] == doctest::Approx(128.0 / 255));
    CHECK(img.data[5] == doctest::Approx(16.0 / 255));
  }
  SUBCASE("binary 16-bit P5 round trip") {
    Signal img = Signal::zeros({4, 6});
    for (std::size_t i = 0; i < img.size(); ++i) {
      img.data[i] = static_cast<double>(i) / (img.size() - 1);
    }
    write_pgm(dir / "x.pgm", img);
    const Signal back = read_pgm(dir / "x.pgm");
    REQUIRE(back.shape == img.shape);
    CHECK(max_abs_diff(back, img) < 1.0 / 65535);
    // Sniffing dispatch picks the PGM reader.
    const Signal sniffed = read_signal(dir / "x.pgm");
    CHECK(max_abs_diff(sniffed, back) == 0.0);
  }
  SUBCASE("missing file is an I/O error") {
    CHECK_THROWS_AS(read_pgm(dir / "absent.pgm"), IoError);
  }
}

TEST_CASE("filter tables") {
  const fs::path dir = temp_dir("tables");
  const FilterBank bank = build_bank(twfpd_test::example_config(1));
  write_filter_tables(bank, dir);

  SUBCASE("lowpass CSV lists the seven taps in lexicographic order") {
    std::ifstream in(dir / "lowpass.csv");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k1,k2,coeff");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 7);
    CHECK(rows.front() == "-1,-1,0.25");
    CHECK(rows.back() == "1,1,0.25");
  }
  SUBCASE("complementary mask qc4 has the expected seven entries") {
    std::ifstream in(dir / "qc4.csv");
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    bool found_origin = false;
    while (std::getline(in, line)) {
      ++rows;
      if (line == "0,0,0.75") found_origin = true;  // 6/8
    }
    CHECK(rows == 7);
    CHECK(found_origin);
  }
  SUBCASE("companion metadata flags the origin and the moments") {
    const Json meta = read_json(dir / "qc4.json");
    CHECK(meta["role"] == "complementary_wavelet");
    CHECK(meta["vanishing_moments"] == 2);
    CHECK(meta["origin"]["stored"] == true);
    CHECK(meta["origin"]["coeff"] == doctest::Approx(0.75));
  }
  SUBCASE("manifest lists every mask") {
    const Json manifest = read_json(dir / "tables.json");
    CHECK(manifest["tables"].size() == 1 + 3 + 3 + 4);
  }
}

TEST_CASE("decomposition persistence") {
  const fs::path dir = temp_dir("dec");
  const FilterBank bank = build_bank(twfpd_test::example_config(1));
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Signal x = Signal::zeros({8, 8});
  for (double& v : x.data) v = uniform(rng);

  const Decomposition dec = analyze(bank, x, 1);
  write_decomposition(dir, bank, dec);
  const BankConfig stored = read_decomposition_config(dir);
  CHECK(stored.lambda == 2);
  const Decomposition back = read_decomposition(dir, bank);
  CHECK(back.levels == 1);
  CHECK(max_abs_diff(back.coarse, dec.coarse) == 0.0);
  CHECK(max_abs_diff(synthesize(bank, back, SynthesisMode::kLp), x) < 1e-9);
}

TEST_CASE("command line interface") {
  const fs::path dir = temp_dir("cli");
  const std::string example1 = (kConfigDir / "example1.json").string();

  SUBCASE("verify succeeds on every shipped fixture") {
    for (int which = 1; which <= 4; ++which) {
      const std::string config =
          (kConfigDir / ("example" + std::to_string(which) + ".json")).string();
      CHECK(run_cli("verify --bank " + config + " --grid 8 --output " +
                    (dir / "report.json").string()) == 0);
    }
  }
  SUBCASE("verify fails when a complementary mask is dropped") {
    CHECK(run_cli("verify --bank " + example1 + " --grid 0 --drop-qc 4") == 2);
  }
  SUBCASE("missing config file is an I/O failure") {
    CHECK(run_cli("verify --bank /nonexistent.json") == 3);
  }
  SUBCASE("malformed config is a validation failure") {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"n\": 2}";
    bad.close();
    CHECK(run_cli("build --bank " + (dir / "bad.json").string()) == 2);
  }
  SUBCASE("analyze, synthesize, and roundtrip agree and are deterministic") {
    Signal img = Signal::zeros({16, 16});
    for (std::size_t i = 0; i < img.size(); ++i) {
      img.data[i] = 0.5 + 0.5 * std::sin(0.37 * static_cast<double>(i));
    }
    write_tws(dir / "in.tws", img);

    CHECK(run_cli("analyze --bank " + example1 + " --input " + (dir / "in.tws").string() +
                  " --levels 1 --output " + (dir / "dec").string()) == 0);
    CHECK(run_cli("synthesize --input " + (dir / "dec").string() + " --mode lp --output " +
                  (dir / "out.tws").string()) == 0);
    const Signal out = read_tws(dir / "out.tws");
    CHECK(max_abs_diff(out, img) < 1e-9);

    CHECK(run_cli("roundtrip --bank " + example1 + " --input " + (dir / "in.tws").string() +
                  " --levels 1 --mode standard --output " + (dir / "metrics.json").string() +
                  " --recon " + (dir / "recon1.tws").string()) == 0);
    const Json metrics = read_json(dir / "metrics.json");
    CHECK(metrics["max_abs_error"].get<double>() < 1e-9);
    CHECK(metrics["multiplies"]["per_processed_point"].get<double>() <=
          metrics["multiplies"]["standard_constant"].get<double>());

    // Byte-identical reconstructions across runs.
    CHECK(run_cli("roundtrip --bank " + example1 + " --input " + (dir / "in.tws").string() +
                  " --levels 1 --mode standard --recon " + (dir / "recon2.tws").string()) == 0);
    CHECK(slurp(dir / "recon1.tws") == slurp(dir / "recon2.tws"));
  }
  SUBCASE("table command writes the table set") {
    CHECK(run_cli("table --bank " + example1 + " --output " + (dir / "tables").string()) == 0);
    CHECK(fs::exists(dir / "tables" / "lowpass.csv"));
    CHECK(fs::exists(dir / "tables" / "qd3.json"));
  }
  SUBCASE("complexity command reports the cycle constant") {
    CHECK(run_cli("complexity --bank " + example1 + " --size 16x16 --output " +
                  (dir / "cx.json").string()) == 0);
    const Json report = read_json(dir / "cx.json");
    CHECK(report["lp_constant"].get<double>() == doctest::Approx(23.0));
    CHECK(report["alpha"].get<int>() == 7);
  }
}
