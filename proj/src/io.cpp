#include "twfpd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace twfpd {

namespace {

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

MultiIndex parse_index(const Json& node, int dim, const std::string& where) {
  if (!node.is_array()) {
    throw std::invalid_argument("bank config: " + where + " must be an integer array");
  }
  MultiIndex k;
  for (const Json& v : node) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("bank config: " + where + " must contain integers only");
    }
    k.push_back(v.get<int>());
  }
  if (dim > 0 && static_cast<int>(k.size()) != dim) {
    throw std::invalid_argument("bank config: " + where + " must have length n");
  }
  return k;
}

}  // namespace

BankConfig parse_bank_config(const Json& document) {
  if (!document.is_object()) {
    throw std::invalid_argument("bank config: document must be a JSON object");
  }
  for (const char* field : {"n", "lambda", "directions"}) {
    if (!document.contains(field)) {
      throw std::invalid_argument(std::string("bank config: missing required field \"") +
                                  field + "\"");
    }
  }
  BankConfig config;
  if (!document["n"].is_number_integer()) {
    throw std::invalid_argument("bank config: \"n\" must be an integer");
  }
  config.dim = document["n"].get<int>();
  if (!document["lambda"].is_number_integer()) {
    throw std::invalid_argument("bank config: \"lambda\" must be an integer");
  }
  config.lambda = document["lambda"].get<int>();

  if (!document["directions"].is_array()) {
    throw std::invalid_argument("bank config: \"directions\" must be an array");
  }
  std::size_t index = 0;
  for (const Json& entry : document["directions"]) {
    const std::string where = "directions[" + std::to_string(index) + "]";
    if (!entry.is_object() || !entry.contains("xi")) {
      throw std::invalid_argument("bank config: " + where + " must be an object with \"xi\"");
    }
    DirectionSpec dir;
    dir.xi = parse_index(entry["xi"], config.dim, where + ".xi");
    if (entry.contains("zeta")) {
      dir.zeta = parse_index(entry["zeta"], config.dim, where + ".zeta");
    }
    if (entry.contains("m")) {
      if (!entry["m"].is_number_integer()) {
        throw std::invalid_argument("bank config: " + where + ".m must be an integer");
      }
      dir.moments = entry["m"].get<int>();
    }
    config.directions.push_back(std::move(dir));
    ++index;
  }

  if (document.contains("coset_reps")) {
    if (!document["coset_reps"].is_array()) {
      throw std::invalid_argument("bank config: \"coset_reps\" must be an array of index arrays");
    }
    std::size_t i = 0;
    for (const Json& entry : document["coset_reps"]) {
      config.coset_reps.push_back(
          parse_index(entry, config.dim, "coset_reps[" + std::to_string(i) + "]"));
      ++i;
    }
  }
  if (document.contains("orientation")) {
    if (!document["orientation"].is_string()) {
      throw std::invalid_argument("bank config: \"orientation\" must be a string");
    }
    config.orientation = orientation_from_string(document["orientation"].get<std::string>());
  }
  config.validate();
  return config;
}

BankConfig load_bank_config(const std::filesystem::path& path) {
  return parse_bank_config(read_json(path));
}

Json bank_config_to_json(const BankConfig& config) {
  Json doc;
  doc["n"] = config.dim;
  doc["lambda"] = config.lambda;
  doc["directions"] = Json::array();
  for (const DirectionSpec& dir : config.directions) {
    Json entry;
    entry["xi"] = dir.xi;
    if (!dir.zeta.empty()) entry["zeta"] = dir.zeta;
    entry["m"] = dir.moments;
    doc["directions"].push_back(std::move(entry));
  }
  if (!config.coset_reps.empty()) doc["coset_reps"] = config.coset_reps;
  doc["orientation"] = to_string(config.orientation);
  return doc;
}

Signal read_tws(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  in >> magic;
  if (magic != "TWS1") throw IoError(path.string() + ": not a TWS1 file");
  int dim = 0;
  in >> dim;
  if (!in || dim < 1) throw IoError(path.string() + ": bad dimension");
  std::vector<std::size_t> shape(dim);
  std::size_t total = 1;
  for (int j = 0; j < dim; ++j) {
    long long s = 0;
    in >> s;
    if (!in || s < 1) throw IoError(path.string() + ": bad shape");
    shape[j] = static_cast<std::size_t>(s);
    total *= shape[j];
  }
  std::vector<double> data(total);
  for (std::size_t i = 0; i < total; ++i) {
    in >> data[i];
    if (!in) throw IoError(path.string() + ": truncated sample data");
  }
  return Signal(std::move(shape), std::move(data));
}

void write_tws(const std::filesystem::path& path, const Signal& signal) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "TWS1\n" << signal.dim() << "\n";
  for (int j = 0; j < signal.dim(); ++j) {
    out << signal.shape[j] << (j + 1 == signal.dim() ? "\n" : " ");
  }
  const std::size_t row = signal.shape.back();
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out << format_double(signal.data[i]) << ((i + 1) % row == 0 ? "\n" : " ");
  }
  if (!out) throw IoError("failed while writing " + path.string());
}

namespace {

int pgm_next_token(std::istream& in) {
  // Skips whitespace and '#' comment lines, then reads one integer.
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = 0;
  in >> value;
  if (!in) throw IoError("PGM: malformed header");
  return value;
}

}  // namespace

Signal read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  const bool binary = magic[0] == 'P' && magic[1] == '5';
  if (!binary && !(magic[0] == 'P' && magic[1] == '2')) {
    throw IoError(path.string() + ": not a P2/P5 PGM file");
  }
  const int width = pgm_next_token(in);
  const int height = pgm_next_token(in);
  const int maxval = pgm_next_token(in);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw IoError(path.string() + ": bad PGM header");
  }
  const std::size_t total = static_cast<std::size_t>(width) * height;
  std::vector<double> data(total);
  if (binary) {
    in.get();  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(total * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw IoError(path.string() + ": truncated PGM data");
    for (std::size_t i = 0; i < total; ++i) {
      const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
      data[i] = static_cast<double>(v) / maxval;
    }
  } else {
    for (std::size_t i = 0; i < total; ++i) {
      const int v = pgm_next_token(in);
      data[i] = static_cast<double>(v) / maxval;
    }
  }
  return Signal({static_cast<std::size_t>(height), static_cast<std::size_t>(width)},
                std::move(data));
}

void write_pgm(const std::filesystem::path& path, const Signal& signal, int maxval) {
  if (signal.dim() != 2) throw std::invalid_argument("write_pgm: signal must be 2-D");
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("write_pgm: bad maxval");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << signal.shape[1] << " " << signal.shape[0] << "\n" << maxval << "\n";
  const int bytes = maxval > 255 ? 2 : 1;
  for (double v : signal.data) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const int q = static_cast<int>(std::lround(clamped * maxval));
    if (bytes == 2) out.put(static_cast<char>((q >> 8) & 0xff));
    out.put(static_cast<char>(q & 0xff));
  }
  if (!out) throw IoError("failed while writing " + path.string());
}

Signal read_signal(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  probe.read(magic, 2);
  probe.close();
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
  return read_tws(path);
}

void write_signal(const std::filesystem::path& path, const Signal& signal) {
  if (path.extension() == ".pgm") {
    write_pgm(path, signal);
  } else {
    write_tws(path, signal);
  }
}

namespace {

void write_one_table(const std::filesystem::path& directory, const std::string& name,
                     const TrigPoly& mask, Json metadata, Json& manifest) {
  const std::filesystem::path csv_path = directory / (name + ".csv");
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  const int dim = mask.dim();
  for (int j = 1; j <= dim; ++j) csv << "k" << j << ",";
  csv << "coeff\n";
  for (const auto& [k, c] : mask.terms()) {
    for (int j = 0; j < dim; ++j) csv << k[j] << ",";
    csv << format_double(c) << "\n";
  }
  if (!csv) throw IoError("failed while writing " + csv_path.string());

  const MultiIndex origin(dim, 0);
  metadata["vanishing_moments"] = vanishing_moments(mask);
  metadata["taps"] = mask.term_count();
  metadata["origin"] = {{"index", origin},
                        {"coeff", mask.coeff(origin)},
                        {"stored", mask.terms().contains(origin)}};
  write_json(directory / (name + ".json"), metadata);

  manifest["tables"].push_back({{"name", name}, {"csv", name + ".csv"},
                                {"metadata", name + ".json"}});
}

}  // namespace

Json write_filter_tables(const FilterBank& bank, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  Json manifest;
  manifest["tables"] = Json::array();

  write_one_table(directory, "lowpass", bank.tau, Json{{"role", "lowpass"}}, manifest);
  for (std::size_t l = 0; l < bank.g.size(); ++l) {
    Json meta{{"role", "highpass_factor"},
              {"direction", bank.config.directions[l].xi},
              {"initial_point", bank.config.directions[l].zeta},
              {"m", bank.config.directions[l].moments}};
    write_one_table(directory, "g" + std::to_string(l + 1), bank.g[l], std::move(meta),
                    manifest);
  }
  for (std::size_t l = 0; l < bank.q_directional.size(); ++l) {
    Json meta{{"role", "directional_wavelet"},
              {"direction", bank.config.directions[l].xi},
              {"m", bank.config.directions[l].moments}};
    write_one_table(directory, "qd" + std::to_string(l + 1), bank.q_directional[l],
                    std::move(meta), manifest);
  }
  for (std::size_t mu = 0; mu < bank.q_complementary.size(); ++mu) {
    Json meta{{"role", "complementary_wavelet"},
              {"coset_rep", bank.config.coset_reps[mu]}};
    write_one_table(directory, "qc" + std::to_string(mu + 1), bank.q_complementary[mu],
                    std::move(meta), manifest);
  }
  write_json(directory / "tables.json", manifest);
  return manifest;
}

Json verification_report_to_json(const VerificationReport& report) {
  Json doc;
  doc["tight"] = report.tight;
  doc["tolerance"] = report.tolerance;
  doc["uep_max_residual"] = report.uep_max_residual;
  if (report.grid_max_residual.has_value()) {
    doc["grid_max_residual"] = *report.grid_max_residual;
  }
  doc["sos_max_residual"] = report.sos_max_residual;
  doc["directional_moments"] = report.directional_moments;
  doc["complementary_moments"] = report.complementary_moments;
  doc["accuracy"] = report.accuracy_number;
  doc["flatness"] = report.flatness_number;
  doc["c_order"] = report.c_order;
  doc["min_moment_bound"] = report.min_moment_bound;
  return doc;
}

namespace {

Json phase_to_json(const PhaseCount& phase) {
  return {{"measured", phase.measured}, {"predicted", phase.predicted}};
}

}  // namespace

Json complexity_report_to_json(const ComplexityReport& report) {
  Json doc;
  doc["alpha"] = report.alpha;
  doc["beta"] = report.beta;
  doc["beta_star"] = report.beta_star;
  doc["lp_constant"] = report.lp_constant;
  doc["standard_constant"] = report.standard_constant;
  doc["shape"] = report.shape;
  doc["points"] = report.points;
  doc["phases"] = {{"analysis_lowpass", phase_to_json(report.analysis_lowpass)},
                   {"analysis_directional", phase_to_json(report.analysis_directional)},
                   {"analysis_complementary", phase_to_json(report.analysis_complementary)},
                   {"synth_lp", phase_to_json(report.synth_lp)},
                   {"synth_std_lowpass", phase_to_json(report.synth_std_lowpass)},
                   {"synth_std_directional", phase_to_json(report.synth_std_directional)},
                   {"synth_std_complementary", phase_to_json(report.synth_std_complementary)}};
  doc["lp_cycle_per_point"] = report.lp_cycle_per_point;
  doc["standard_cycle_per_point"] = report.standard_cycle_per_point;
  return doc;
}

void write_json(const std::filesystem::path& path, const Json& document) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << document.dump(2) << "\n";
  if (!out) throw IoError("failed while writing " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(path.string() + ": " + err.what());
  }
  return doc;
}

void write_decomposition(const std::filesystem::path& directory, const FilterBank& bank,
                         const Decomposition& dec) {
  std::filesystem::create_directories(directory);
  Json manifest;
  manifest["format"] = "twfpd-decomposition-v1";
  manifest["levels"] = dec.levels;
  manifest["bank"] = bank_config_to_json(bank.config);
  manifest["coarse"] = "coarse.tws";
  write_tws(directory / "coarse.tws", dec.coarse);

  manifest["detail_levels"] = Json::array();
  for (int j = 0; j <= dec.levels; ++j) {
    Json level;
    level["level"] = j;
    level["directional"] = Json::array();
    level["complementary"] = Json::array();
    const LevelDetail& detail = dec.details[j];
    for (std::size_t l = 0; l < detail.directional.size(); ++l) {
      const std::string name =
          "d" + std::to_string(j) + "_dir" + std::to_string(l + 1) + ".tws";
      write_tws(directory / name, detail.directional[l]);
      level["directional"].push_back(name);
    }
    for (std::size_t mu = 0; mu < detail.complementary.size(); ++mu) {
      const std::string name =
          "d" + std::to_string(j) + "_comp" + std::to_string(mu + 1) + ".tws";
      write_tws(directory / name, detail.complementary[mu]);
      level["complementary"].push_back(name);
    }
    manifest["detail_levels"].push_back(std::move(level));
  }
  write_json(directory / "manifest.json", manifest);
}

BankConfig read_decomposition_config(const std::filesystem::path& directory) {
  const Json manifest = read_json(directory / "manifest.json");
  if (!manifest.contains("bank")) {
    throw std::invalid_argument(directory.string() + ": manifest has no \"bank\" entry");
  }
  return parse_bank_config(manifest["bank"]);
}

Decomposition read_decomposition(const std::filesystem::path& directory,
                                 const FilterBank& bank) {
  const Json manifest = read_json(directory / "manifest.json");
  Decomposition dec;
  dec.levels = manifest.at("levels").get<int>();
  dec.coarse = read_tws(directory / manifest.at("coarse").get<std::string>());
  dec.details.resize(dec.levels + 1);
  for (const Json& level : manifest.at("detail_levels")) {
    const int j = level.at("level").get<int>();
    if (j < 0 || j > dec.levels) {
      throw std::invalid_argument(directory.string() + ": manifest level out of range");
    }
    for (const Json& name : level.at("directional")) {
      dec.details[j].directional.push_back(read_tws(directory / name.get<std::string>()));
    }
    for (const Json& name : level.at("complementary")) {
      dec.details[j].complementary.push_back(read_tws(directory / name.get<std::string>()));
    }
  }
  if (static_cast<int>(dec.details.size()) != dec.levels + 1) {
    throw std::invalid_argument(directory.string() + ": manifest is missing detail levels");
  }
  (void)bank;
  return dec;
}

}  // namespace twfpd
