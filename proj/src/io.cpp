#include "jumptopo/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jumptopo {

namespace {

using nlohmann::json;

std::uint64_t to_little_endian_bits(double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return bits;
}

double from_little_endian_bits(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

json read_header_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("missing header line: " + path);
  return json::parse(line);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_observation_grid(const ObservationGrid& obs, const std::string& path) {
  obs.validate();
  bool csv = has_suffix(path, ".csv");
  if (csv) require(obs.side <= 64, "grid csv mode is limited to N <= 64");

  std::ofstream out = open_out(path);
  json header = {{"d", obs.dim}, {"N", obs.side}, {"sigma", obs.noise_sigma}, {"seed", obs.seed}};
  out << header.dump() << '\n';

  if (csv) {
    std::size_t per_row = static_cast<std::size_t>(obs.side);
    for (std::size_t i = 0; i < obs.values.size(); ++i) {
      out << format_double(obs.values[i]);
      out << ((i + 1) % per_row == 0 ? '\n' : ',');
    }
  } else {
    for (double v : obs.values) {
      std::uint64_t bits = to_little_endian_bits(v);
      out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ObservationGrid read_observation_grid(const std::string& path) {
  std::ifstream in = open_in(path);
  json header = read_header_line(in, path);

  ObservationGrid obs;
  obs.dim = header.at("d").get<int>();
  obs.side = header.at("N").get<int>();
  obs.noise_sigma = header.at("sigma").get<double>();
  obs.seed = header.at("seed").get<std::uint64_t>();
  std::size_t total = LatticeShape{obs.dim, obs.side}.size();
  obs.values.reserve(total);

  if (has_suffix(path, ".csv")) {
    std::string line;
    while (std::getline(in, line)) {
      std::stringstream row(line);
      std::string tok;
      while (std::getline(row, tok, ',')) obs.values.push_back(std::stod(tok));
    }
  } else {
    std::uint64_t bits = 0;
    while (in.read(reinterpret_cast<char*>(&bits), sizeof(bits)))
      obs.values.push_back(from_little_endian_bits(bits));
  }
  if (obs.values.size() != total)
    throw std::runtime_error("grid payload size mismatch in " + path);
  obs.validate();
  return obs;
}

void write_mask(const CubicalMask& mask, const std::string& path) {
  mask.validate();
  std::ofstream out = open_out(path);
  json header = {{"schema", "jumptopo.mask.v1"}, {"d", mask.dim}, {"m", mask.resolution}};
  out << header.dump() << '\n';

  std::uint8_t byte = 0;
  int filled = 0;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (mask.bits[i]) byte |= static_cast<std::uint8_t>(1u << filled);
    if (++filled == 8) {
      out.put(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.put(static_cast<char>(byte));
  if (!out) throw std::runtime_error("write failed: " + path);
}

CubicalMask read_mask(const std::string& path) {
  std::ifstream in = open_in(path);
  json header = read_header_line(in, path);
  if (header.value("schema", "") != "jumptopo.mask.v1")
    throw std::runtime_error("not a mask file: " + path);

  CubicalMask mask;
  mask.dim = header.at("d").get<int>();
  mask.resolution = header.at("m").get<int>();
  std::size_t total = LatticeShape{mask.dim, mask.resolution}.size();
  mask.bits.assign(total, 0);

  std::size_t i = 0;
  char ch = 0;
  while (i < total && in.get(ch)) {
    std::uint8_t byte = static_cast<std::uint8_t>(ch);
    for (int b = 0; b < 8 && i < total; ++b, ++i)
      mask.bits[i] = (byte >> b) & 1u;
  }
  if (i != total) throw std::runtime_error("mask payload size mismatch in " + path);
  mask.validate();
  return mask;
}

void write_shape_sidecar(const ShapeSpec& spec, const std::string& path) {
  spec.validate();
  json j = {{"schema", "jumptopo.shape.v1"},
            {"shape", spec.name},
            {"params", spec.params},
            {"jump_floor", spec.jump_floor},
            {"mu", spec.mu},
            {"reach_mu", spec.reach_mu},
            {"lipschitz", spec.lipschitz},
            {"betti", spec.betti}};
  if (spec.has_analytic_diagram)
    j["analytic_diagram"] = diagrams_to_json(spec.analytic_diagram);
  else
    j["analytic_diagram"] = nullptr;

  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

ShapeSpec read_shape_sidecar(const std::string& path) {
  std::ifstream in = open_in(path);
  json j = json::parse(in);
  if (j.value("schema", "") != "jumptopo.shape.v1")
    throw std::runtime_error("not a shape sidecar: " + path);
  return make_shape(j.at("shape").get<std::string>(), j.at("params"));
}

void write_diagrams_csv(const std::vector<PersistenceDiagram>& diagrams,
                        const std::string& path) {
  std::ofstream out = open_out(path);
  out << "degree,birth,death\n";
  for (const auto& dgm : diagrams)
    for (const auto& p : dgm.points)
      out << dgm.degree << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<PersistenceDiagram> read_diagrams_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "degree,birth,death")
    throw std::runtime_error("not a diagram csv: " + path);

  std::vector<PersistenceDiagram> diagrams;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string deg, birth, death;
    if (!std::getline(row, deg, ',') || !std::getline(row, birth, ',') ||
        !std::getline(row, death, ','))
      throw std::runtime_error("malformed diagram row: " + line);
    int degree = std::stoi(deg);
    while (static_cast<int>(diagrams.size()) <= degree) {
      diagrams.push_back({static_cast<int>(diagrams.size()), {}});
    }
    double d = death == "inf" ? kInfiniteDeath : std::stod(death);
    diagrams[static_cast<std::size_t>(degree)].points.push_back({std::stod(birth), d});
  }
  return diagrams;
}

nlohmann::json diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams) {
  json out = json::array();
  for (const auto& dgm : diagrams) {
    json points = json::array();
    for (const auto& p : dgm.points) {
      json death = std::isinf(p.death) ? json("inf") : json(p.death);
      points.push_back({p.birth, death});
    }
    out.push_back({{"degree", dgm.degree}, {"points", points}});
  }
  return out;
}

std::vector<PersistenceDiagram> diagrams_from_json(const nlohmann::json& j) {
  std::vector<PersistenceDiagram> diagrams;
  for (const auto& entry : j) {
    PersistenceDiagram dgm;
    dgm.degree = entry.at("degree").get<int>();
    for (const auto& p : entry.at("points")) {
      double birth = p.at(0).get<double>();
      double death = p.at(1).is_string() ? kInfiniteDeath : p.at(1).get<double>();
      dgm.points.push_back({birth, death});
    }
    diagrams.push_back(std::move(dgm));
  }
  return diagrams;
}

}  // namespace jumptopo
