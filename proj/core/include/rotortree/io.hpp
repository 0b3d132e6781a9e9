#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotortree/analysis.hpp"
#include "rotortree/forcing.hpp"
#include "rotortree/machines.hpp"

namespace rotortree {

using Json = nlohmann::json;

/// Reads and parses a JSON file. Throws ParseError.
Json load_json_file(const std::filesystem::path& path);

/// { "k", "even", "default_rotor", "rotor_sequences", "chips", "rotors" }.
/// Chip counts are decimal strings; only explicitly set rotors are written.
Json config_to_json(const ProppConfig& config);
ProppConfig config_from_json(const Json& doc);

/// { "k", "horizon", "radius", ["cone"], "residues": {"vertex@time": r} }.
Json target_to_json(const ResidueTarget& target);
ResidueTarget target_from_json(const Json& doc);

/// Every CSV starts with "# manifest <hash>" when a hash is given.
struct CsvHeader {
  std::string manifest_hash;
};

/// t,vertex,chips,rotor for every occupied vertex at every recorded time.
void write_trajectory_csv(std::ostream& out, const ProppTrajectory& traj, const CsvHeader& header = {});
/// stage,vertex,epsilon
void write_placements_csv(std::ostream& out, std::span<const Placement> placements, const CsvHeader& header = {});
/// vertex,s,coefficient,value_exact,value_decimal, one row per surplus move.
void write_decomposition_csv(std::ostream& out, std::span<const ContributionTerm> terms,
                             const CsvHeader& header = {});
/// T,discrepancy_exact,discrepancy_decimal,sqrt_kT,ratio,comparator[,simulated_exact]
void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows, const CsvHeader& header = {});
/// x,con_exact,con_decimal,bound_static_exact,bound_static_decimal,bound_chips
void write_sphere_csv(std::ostream& out, std::span<const SphereReport> rows, const CsvHeader& header = {});
/// R,kappa,discrepancy_exact,discrepancy_decimal,ratio
void write_chip_count_csv(std::ostream& out, std::span<const ChipCountRow> rows, const CsvHeader& header = {});

}  // namespace rotortree
