#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string_view>

#include "swconn/baselines.hpp"
#include "swconn/d_tree.hpp"
#include "swconn/index.hpp"
#include "swconn/lc_tree.hpp"
#include "swconn/s_tree.hpp"

namespace swconn {

enum class Strategy { kOmstS, kOmstD, kOmstLc, kMstD, kVanillaD, kRwc, kDfs };

inline constexpr std::array<Strategy, 7> kAllStrategies = {
    Strategy::kOmstS, Strategy::kOmstD, Strategy::kOmstLc, Strategy::kMstD,
    Strategy::kVanillaD, Strategy::kRwc, Strategy::kDfs};

inline constexpr std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kOmstS: return "omst-s";
    case Strategy::kOmstD: return "omst-d";
    case Strategy::kOmstLc: return "omst-lc";
    case Strategy::kMstD: return "mst-d";
    case Strategy::kVanillaD: return "vanilla-d";
    case Strategy::kRwc: return "rwc";
    case Strategy::kDfs: return "dfs";
  }
  return "";
}

inline std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

/// True for strategies built on the MST framework, which never search for
/// replacement edges.
inline constexpr bool is_mst_family(Strategy s) {
  return s == Strategy::kOmstS || s == Strategy::kOmstD || s == Strategy::kOmstLc ||
         s == Strategy::kMstD;
}

inline constexpr bool is_omst(Strategy s) {
  return s == Strategy::kOmstS || s == Strategy::kOmstD || s == Strategy::kOmstLc;
}

inline std::unique_ptr<ConnectivityIndex> make_index(Strategy s) {
  switch (s) {
    case Strategy::kOmstS: return std::make_unique<OmstSTree>();
    case Strategy::kOmstD: return std::make_unique<OmstDTree>();
    case Strategy::kOmstLc: return std::make_unique<OmstLcTree>();
    case Strategy::kMstD: return std::make_unique<MstDTree>();
    case Strategy::kVanillaD: return std::make_unique<VanillaDTree>();
    case Strategy::kRwc: return std::make_unique<RwcIndex>();
    case Strategy::kDfs: return std::make_unique<DfsIndex>();
  }
  return nullptr;
}

}  // namespace swconn
