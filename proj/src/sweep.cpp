#include "mmsim/analysis.hpp"

#include <cstdio>
#include <sstream>

#include "mmsim/errors.hpp"

namespace mmsim {

std::vector<Phase> phase_grid(std::size_t points) {
  if (points == 0) throw ConfigError("grid: must contain at least one point");
  if (points == 1) return {Phase{0.0}};
  std::vector<Phase> grid;
  grid.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid.emplace_back(i + 1 == points ? kTwoPi : kTwoPi * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return grid;
}

std::vector<SweepRow> sweep_phase(std::span<const ModelId> models, std::span<const SeparationRegime> regimes,
                                  std::span<const Phase> grid, const EtherConfig& ether) {
  if (grid.empty()) throw ConfigError("grid: must contain at least one point");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size() * models.size() * regimes.size());
  for (Phase phi : grid) {
    for (ModelId m : models) {
      for (SeparationRegime r : regimes) {
        OutcomeDistribution d;
        switch (m) {
          case ModelId::NonlocalQuantum: d = quantum_joint(phi); break;
          case ModelId::LocalDetection: d = local_joint(phi, r); break;
          case ModelId::Ether: d = ether_joint(phi, ether); break;
        }
        rows.push_back({phi, m, r, d});
      }
    }
  }
  return rows;
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const SweepRow& row : rows) {
    out << num(row.phase.radians) << ',' << to_string(row.model) << ',' << to_string(row.regime) << ','
        << num(row.dist.p_plus_only) << ',' << num(row.dist.p_minus_only) << ',' << num(row.dist.p_both) << ','
        << num(row.dist.p_none) << ',' << num(row.dist.marginal_plus()) << ',' << num(row.dist.marginal_minus())
        << '\n';
  }
  return out.str();
}

}  // namespace mmsim
