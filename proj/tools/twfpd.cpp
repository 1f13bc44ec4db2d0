#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "twfpd/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using twfpd::Json;

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("TWFPD_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
#endif
}

twfpd::FilterBank load_bank(const std::string& bank_path,
                            const std::optional<std::string>& orientation) {
  twfpd::BankConfig config = twfpd::load_bank_config(bank_path);
  if (orientation.has_value()) {
    config.orientation = twfpd::orientation_from_string(*orientation);
  }
  return twfpd::build_bank(config);
}

Json bank_summary(const twfpd::FilterBank& bank) {
  Json doc;
  doc["config"] = twfpd::bank_config_to_json(bank.config);
  doc["lowpass_taps"] = bank.tau.term_count();
  doc["directional_taps"] = Json::array();
  for (const twfpd::TrigPoly& q : bank.q_directional) {
    doc["directional_taps"].push_back(q.term_count());
  }
  doc["complementary_taps"] = Json::array();
  for (const twfpd::TrigPoly& q : bank.q_complementary) {
    doc["complementary_taps"].push_back(q.term_count());
  }
  doc["lowpass_coefficient_sum"] = bank.tau.coeff_sum();
  return doc;
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
      .count();
}

std::vector<std::size_t> parse_size(const std::string& text, int dim) {
  std::vector<std::size_t> shape;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find('x', pos);
    if (next == std::string::npos) next = text.size();
    shape.push_back(std::stoull(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (shape.size() == 1 && dim > 1) shape.assign(dim, shape[0]);
  if (static_cast<int>(shape.size()) != dim) {
    throw std::invalid_argument("--size: expected " + std::to_string(dim) +
                                " extents like 256x256");
  }
  return shape;
}

int run(int argc, char** argv) {
  CLI::App app{"Tight wavelet filter banks with prescribed directions"};
  app.require_subcommand(1);

  std::string bank_path;
  std::string input_path;
  std::string output_path;
  std::optional<std::string> orientation;
  int levels = 0;
  std::string mode = "lp";
  double tol = twfpd::kDefaultVerifyTol;

  auto add_bank = [&](CLI::App* cmd) {
    cmd->add_option("--bank", bank_path, "bank configuration JSON")->required();
    cmd->add_option("--orientation", orientation,
                    "spectral factor orientation override (min|max)");
  };

  CLI::App* cmd_build = app.add_subcommand("build", "build a bank and print its summary");
  add_bank(cmd_build);
  cmd_build->add_option("--output", output_path, "summary JSON path (default stdout)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "check tightness and moment counts");
  add_bank(cmd_verify);
  cmd_verify->add_option("--output", output_path, "report JSON path (default stdout)");
  cmd_verify->add_option("--tol", tol, "tightness tolerance");
  int grid_samples = 32;
  cmd_verify->add_option("--grid", grid_samples,
                         "frequency grid samples per axis for the redundant check (0 disables)");
  int drop_qc = 0;
  cmd_verify
      ->add_option("--drop-qc", drop_qc,
                   "debug: remove the given complementary mask (1-based) before verifying")
      ->default_val(0);

  CLI::App* cmd_table = app.add_subcommand("table", "write filter tables as CSV");
  add_bank(cmd_table);
  cmd_table->add_option("--output", output_path, "output directory")->required();

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "multi-level analysis of a signal");
  add_bank(cmd_analyze);
  cmd_analyze->add_option("--input", input_path, "input signal (TWS1 or PGM)")->required();
  cmd_analyze->add_option("--output", output_path, "output directory")->required();
  cmd_analyze->add_option("--levels", levels, "decomposition level J");

  CLI::App* cmd_synth = app.add_subcommand("synthesize", "reconstruct from a decomposition");
  cmd_synth->add_option("--input", input_path, "decomposition directory")->required();
  cmd_synth->add_option("--output", output_path, "output signal path")->required();
  cmd_synth->add_option("--mode", mode, "synthesis mode (standard|lp)");
  cmd_synth->add_option("--bank", bank_path, "bank configuration (default: from manifest)");
  cmd_synth->add_option("--orientation", orientation,
                        "spectral factor orientation override (min|max)");

  CLI::App* cmd_roundtrip = app.add_subcommand("roundtrip", "analysis + synthesis metrics");
  add_bank(cmd_roundtrip);
  cmd_roundtrip->add_option("--input", input_path, "input signal")->required();
  cmd_roundtrip->add_option("--output", output_path, "metrics JSON path (default stdout)");
  cmd_roundtrip->add_option("--levels", levels, "decomposition level J");
  cmd_roundtrip->add_option("--mode", mode, "synthesis mode (standard|lp)");
  std::string recon_path;
  cmd_roundtrip->add_option("--recon", recon_path, "also write the reconstruction here");

  CLI::App* cmd_complexity = app.add_subcommand("complexity", "multiplication accounting");
  add_bank(cmd_complexity);
  cmd_complexity->add_option("--output", output_path, "report JSON path (default stdout)");
  std::string size_text = "256x256";
  cmd_complexity->add_option("--size", size_text, "signal extents, e.g. 256x256");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const Json& doc) {
    if (output_path.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      twfpd::write_json(output_path, doc);
    }
  };

  if (cmd_build->parsed()) {
    emit(bank_summary(load_bank(bank_path, orientation)));
    return 0;
  }

  if (cmd_verify->parsed()) {
    twfpd::FilterBank bank = load_bank(bank_path, orientation);
    if (drop_qc > 0) {
      if (drop_qc > static_cast<int>(bank.q_complementary.size())) {
        throw std::invalid_argument("--drop-qc: index out of range");
      }
      bank.q_complementary.erase(bank.q_complementary.begin() + (drop_qc - 1));
    }
    const twfpd::VerificationReport report = twfpd::verify_bank(bank, tol, grid_samples);
    emit(twfpd::verification_report_to_json(report));
    return report.tight ? 0 : 2;
  }

  if (cmd_table->parsed()) {
    twfpd::write_filter_tables(load_bank(bank_path, orientation), output_path);
    return 0;
  }

  if (cmd_analyze->parsed()) {
    const twfpd::FilterBank bank = load_bank(bank_path, orientation);
    const twfpd::Signal input = twfpd::read_signal(input_path);
    const twfpd::Decomposition dec = twfpd::analyze(bank, input, levels);
    twfpd::write_decomposition(output_path, bank, dec);
    return 0;
  }

  if (cmd_synth->parsed()) {
    twfpd::BankConfig config = bank_path.empty()
                                   ? twfpd::read_decomposition_config(input_path)
                                   : twfpd::load_bank_config(bank_path);
    if (orientation.has_value()) {
      config.orientation = twfpd::orientation_from_string(*orientation);
    }
    const twfpd::FilterBank bank = twfpd::build_bank(config);
    const twfpd::Decomposition dec = twfpd::read_decomposition(input_path, bank);
    twfpd::write_signal(output_path, twfpd::synthesize(bank, dec,
                                                       twfpd::synthesis_mode_from_string(mode)));
    return 0;
  }

  if (cmd_roundtrip->parsed()) {
    const twfpd::FilterBank bank = load_bank(bank_path, orientation);
    const twfpd::Signal input = twfpd::read_signal(input_path);
    const twfpd::SynthesisMode synthesis_mode = twfpd::synthesis_mode_from_string(mode);

    twfpd::AnalysisCounters analysis_counters;
    auto t0 = std::chrono::steady_clock::now();
    const twfpd::Decomposition dec = twfpd::analyze(bank, input, levels, &analysis_counters);
    const double analysis_ms = elapsed_ms(t0);

    twfpd::SynthesisCounters synthesis_counters;
    t0 = std::chrono::steady_clock::now();
    const twfpd::Signal recon = twfpd::synthesize(bank, dec, synthesis_mode,
                                                  &synthesis_counters);
    const double synthesis_ms = elapsed_ms(t0);

    double max_err = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < input.size(); ++i) {
      const double d = recon.data[i] - input.data[i];
      max_err = std::max(max_err, std::abs(d));
      sq += d * d;
    }

    // Points processed across the level cycles: L (1 + lambda^-n + ...).
    std::uint64_t processed = 0;
    std::uint64_t level_points = input.size();
    const std::uint64_t lattice = static_cast<std::uint64_t>(bank.lattice_size());
    for (int j = 0; j <= levels; ++j) {
      processed += level_points;
      level_points /= lattice;
    }
    const std::uint64_t total_multiplies =
        analysis_counters.total() + synthesis_counters.total();
    const twfpd::ComplexityReport constants =
        twfpd::complexity_report(bank, std::vector<std::size_t>(input.shape));

    Json doc;
    doc["input_shape"] = input.shape;
    doc["levels"] = levels;
    doc["mode"] = mode;
    doc["max_abs_error"] = max_err;
    doc["rms_error"] = std::sqrt(sq / input.size());
    doc["multiplies"] = {
        {"analysis",
         {{"lowpass", analysis_counters.lowpass.multiplies},
          {"directional", analysis_counters.directional.multiplies},
          {"complementary", analysis_counters.complementary.multiplies}}},
        {"synthesis",
         {{"lowpass", synthesis_counters.lowpass.multiplies},
          {"directional", synthesis_counters.directional.multiplies},
          {"complementary", synthesis_counters.complementary.multiplies}}},
        {"total", total_multiplies},
        {"per_processed_point", static_cast<double>(total_multiplies) / processed},
        {"lp_constant", constants.lp_constant},
        {"standard_constant", constants.standard_constant}};
    doc["timings_ms"] = {{"analysis", analysis_ms}, {"synthesis", synthesis_ms}};
    emit(doc);
    if (!recon_path.empty()) twfpd::write_signal(recon_path, recon);
    return 0;
  }

  if (cmd_complexity->parsed()) {
    const twfpd::FilterBank bank = load_bank(bank_path, orientation);
    const auto shape = parse_size(size_text, bank.tau.dim());
    emit(twfpd::complexity_report_to_json(twfpd::complexity_report(bank, shape)));
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  try {
    return run(argc, argv);
  } catch (const twfpd::IoError& err) {
    std::cerr << "I/O error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
