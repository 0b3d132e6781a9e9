#include "rotortree/io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "rotortree/decimal.hpp"
#include "rotortree/errors.hpp"

namespace rotortree {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <class Map>
std::vector<Vertex> sorted_keys(const Map& m) {
  std::vector<Vertex> keys;
  keys.reserve(m.size());
  for (const auto& entry : m) keys.push_back(entry.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

unsigned read_k(const Json& doc) {
  if (!doc.is_object()) schema_error("expected a JSON object");
  if (!doc.contains("k") || !doc["k"].is_number_unsigned()) schema_error("missing or invalid \"k\"");
  return doc["k"].get<unsigned>();
}

std::size_t read_size(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
    schema_error(std::string("missing or invalid \"") + key + "\"");
  }
  return doc[key].get<std::size_t>();
}

void write_header(std::ostream& out, const CsvHeader& header) {
  if (!header.manifest_hash.empty()) out << "# manifest " << header.manifest_hash << '\n';
}

std::string decimal_of(const ExactAmount& v) { return format_decimal(to_decimal(v)); }

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

Json config_to_json(const ProppConfig& config) {
  Json doc;
  doc["k"] = config.k();
  doc["even"] = config.even();
  doc["default_rotor"] = config.default_rotor() == DefaultRotor::Canonical ? "canonical" : "toward_origin";
  const auto& overrides = config.policy().overrides();
  if (overrides.empty()) {
    doc["rotor_sequences"] = "canonical";
  } else {
    Json seqs = Json::object();
    for (const Vertex& v : sorted_keys(overrides)) seqs[v.to_string()] = overrides.at(v);
    doc["rotor_sequences"] = seqs;
  }
  Json chips = Json::object();
  for (const Vertex& v : sorted_keys(config.chips())) chips[v.to_string()] = config.chips().at(v).get_str();
  doc["chips"] = chips;
  Json rotors = Json::object();
  for (const Vertex& v : sorted_keys(config.rotors())) rotors[v.to_string()] = config.rotors().at(v).index;
  doc["rotors"] = rotors;
  return doc;
}

ProppConfig config_from_json(const Json& doc) {
  TreeParams params(read_k(doc));
  DefaultRotor rule = DefaultRotor::Canonical;
  if (doc.contains("default_rotor")) {
    const Json& r = doc["default_rotor"];
    if (r == "canonical") {
      rule = DefaultRotor::Canonical;
    } else if (r == "toward_origin") {
      rule = DefaultRotor::TowardOrigin;
    } else {
      schema_error("\"default_rotor\" must be \"canonical\" or \"toward_origin\"");
    }
  }
  ProppConfig config(params, rule);

  if (doc.contains("rotor_sequences")) {
    const Json& seqs = doc["rotor_sequences"];
    if (seqs.is_object()) {
      for (const auto& [key, perm] : seqs.items()) {
        if (!perm.is_array()) schema_error("rotor sequence for \"" + key + "\" must be an array");
        std::vector<unsigned> order;
        for (const Json& d : perm) {
          if (!d.is_number_unsigned()) schema_error("rotor sequence entries must be non-negative integers");
          order.push_back(d.get<unsigned>());
        }
        config.policy().set_sequence(parse_vertex(key, params), std::move(order));
      }
    } else if (seqs != "canonical") {
      schema_error("\"rotor_sequences\" must be \"canonical\" or an object");
    }
  }

  if (doc.contains("chips")) {
    if (!doc["chips"].is_object()) schema_error("\"chips\" must be an object");
    for (const auto& [key, count] : doc["chips"].items()) {
      BigInt c;
      if (count.is_string()) {
        c = parse_bigint(count.get<std::string>());
      } else if (count.is_number_integer()) {
        c = BigInt(count.get<long>());
      } else {
        schema_error("chip count for \"" + key + "\" must be a decimal string");
      }
      config.set_chips(parse_vertex(key, params), std::move(c));
    }
  }

  if (doc.contains("rotors")) {
    if (!doc["rotors"].is_object()) schema_error("\"rotors\" must be an object");
    for (const auto& [key, d] : doc["rotors"].items()) {
      if (!d.is_number_unsigned() || d.get<unsigned>() >= params.k()) {
        schema_error("rotor for \"" + key + "\" must be a direction below k");
      }
      config.set_rotor(parse_vertex(key, params), Direction{d.get<unsigned>()});
    }
  }

  if (doc.contains("even")) {
    if (!doc["even"].is_boolean()) schema_error("\"even\" must be a boolean");
    config.set_even(doc["even"].get<bool>());
  }
  return config;
}

Json target_to_json(const ResidueTarget& target) {
  Json doc;
  doc["k"] = target.params().k();
  doc["horizon"] = target.horizon();
  doc["radius"] = target.radius();
  if (target.cone()) doc["cone"] = *target.cone();
  Json residues = Json::object();
  for (const auto& [cell, r] : target.entries()) {
    residues[cell.first.to_string() + "@" + std::to_string(cell.second)] = r;
  }
  doc["residues"] = residues;
  return doc;
}

ResidueTarget target_from_json(const Json& doc) {
  TreeParams params(read_k(doc));
  std::optional<std::size_t> cone;
  if (doc.contains("cone")) cone = read_size(doc, "cone");
  ResidueTarget target(params, read_size(doc, "horizon"), read_size(doc, "radius"), cone);
  if (doc.contains("residues")) {
    if (!doc["residues"].is_object()) schema_error("\"residues\" must be an object");
    for (const auto& [key, r] : doc["residues"].items()) {
      auto at = key.rfind('@');
      if (at == std::string::npos) schema_error("residue key \"" + key + "\" must look like vertex@time");
      std::size_t t = 0;
      try {
        std::size_t used = 0;
        t = std::stoull(key.substr(at + 1), &used);
        if (used != key.size() - at - 1) throw std::invalid_argument(key);
      } catch (const std::logic_error&) {
        schema_error("bad time in residue key \"" + key + "\"");
      }
      if (!r.is_number_unsigned()) schema_error("residue for \"" + key + "\" must be a non-negative integer");
      target.set(parse_vertex(key.substr(0, at), params), t, r.get<unsigned>());
    }
  }
  return target;
}

void write_trajectory_csv(std::ostream& out, const ProppTrajectory& traj, const CsvHeader& header) {
  if (!traj.has_history()) throw Error(ErrorCode::InvalidArgument, "trajectory has no history");
  write_header(out, header);
  out << "t,vertex,chips,rotor\n";
  for (std::size_t t = 0; t <= traj.horizon(); ++t) {
    const ChipMap& chips = traj.chip_map(t);
    for (const Vertex& v : sorted_keys(chips)) {
      out << t << ',' << v.to_string() << ',' << chips.at(v).get_str() << ',' << traj.rotor_at(v, t).index << '\n';
    }
  }
}

void write_placements_csv(std::ostream& out, std::span<const Placement> placements, const CsvHeader& header) {
  write_header(out, header);
  out << "stage,vertex,epsilon\n";
  for (const Placement& p : placements) out << p.stage << ',' << p.vertex.to_string() << ',' << p.epsilon << '\n';
}

void write_decomposition_csv(std::ostream& out, std::span<const ContributionTerm> terms, const CsvHeader& header) {
  write_header(out, header);
  out << "vertex,s,coefficient,value_exact,value_decimal\n";
  for (const ContributionTerm& term : terms) {
    const unsigned k = term.value.k();
    std::string coefficient = term.move == Move::Inward ? "1" : "-1/" + std::to_string(k - 1);
    out << term.vertex.to_string() << ',' << term.time << ',' << coefficient << ',' << term.value.to_string() << ','
        << decimal_of(term.value) << '\n';
  }
}

void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows, const CsvHeader& header) {
  const bool simulated = std::any_of(rows.begin(), rows.end(), [](const GrowthRow& r) { return r.simulated; });
  write_header(out, header);
  out << "T,discrepancy_exact,discrepancy_decimal,sqrt_kT,ratio,comparator";
  out << (simulated ? ",simulated_exact\n" : "\n");
  for (const GrowthRow& r : rows) {
    out << r.T << ',' << r.discrepancy.to_string() << ',' << format_decimal(r.discrepancy_decimal) << ','
        << format_decimal(r.sqrt_kT) << ',' << format_decimal(r.ratio) << ',' << format_decimal(r.comparator);
    if (simulated) out << ',' << (r.simulated ? r.simulated->to_string() : std::string());
    out << '\n';
  }
}

void write_sphere_csv(std::ostream& out, std::span<const SphereReport> rows, const CsvHeader& header) {
  write_header(out, header);
  out << "x,con_exact,con_decimal,bound_static_exact,bound_static_decimal,bound_chips\n";
  for (const SphereReport& r : rows) {
    out << r.x << ',' << r.con.to_string() << ',' << decimal_of(r.con) << ',' << r.bound_static.to_string() << ','
        << decimal_of(r.bound_static) << ',' << format_decimal(r.bound_chips) << '\n';
  }
}

void write_chip_count_csv(std::ostream& out, std::span<const ChipCountRow> rows, const CsvHeader& header) {
  write_header(out, header);
  out << "R,kappa,discrepancy_exact,discrepancy_decimal,ratio\n";
  for (const ChipCountRow& r : rows) {
    out << r.R << ',' << r.kappa.get_str() << ',' << r.discrepancy.to_string() << ',' << decimal_of(r.discrepancy)
        << ',' << (r.ratio ? format_decimal(*r.ratio) : std::string()) << '\n';
  }
}

}  // namespace rotortree
