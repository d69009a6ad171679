/**
 * @file reference_instance.hpp
 * @brief The built-in three-state example and its reference values.
 *
 * Actions a1 and a2 specialize to states s1 and s2; a3 is a safe action.
 * Channel i partially identifies s1, channel j partially identifies s2, and
 * the two are conditionally independent. Identical to data/three_state.json.
 */
#pragma once

#include <array>
#include <string_view>

#include "voilab/instance_io.hpp"

namespace voilab::reference {

inline constexpr std::string_view instance_json = R"({
  "states": ["s1", "s2", "s3"],
  "actions": ["a1", "a2", "a3"],
  "rewards": [
    ["12", "0", "3"],
    ["0", "12", "3"],
    ["3", "3", "9"]
  ],
  "channels": {
    "i": [
      ["3/4", "1/4", "1/4"],
      ["1/4", "3/4", "3/4"]
    ],
    "j": [
      ["1/4", "3/4", "1/4"],
      ["3/4", "1/4", "3/4"]
    ]
  }
})";

inline ProblemInstance instance() { return parse_instance(instance_json); }

/// One column of the reference table. Forces are empty at a kink prior,
/// where they are printed as "---".
struct ReferenceColumn {
    std::string_view label;
    std::string_view belief;
    std::string_view voi_i;
    std::string_view voi_j;
    std::string_view voi_j_after_i;
    std::string_view complement_force;
    std::string_view substitute_force;
    std::string_view delta_voi;
    bool on_kink;
};

inline constexpr std::array<ReferenceColumn, 3> reference_table{{
    {"b1", "1/11,2/11,8/11", "0", "3/44", "15/176", "3/176", "0", "3/176", false},
    {"b2", "1/4,1/6,7/12", "11/16", "1/16", "9/64", "49/64", "11/16", "5/64", false},
    {"b3", "5/12,5/12,1/6", "5/2", "5/2", "3/32", "", "", "-77/32", true},
}};

/// The ray from b2 toward the a1/a3 boundary.
inline constexpr std::string_view ray_origin = "1/4,1/6,7/12";
inline constexpr std::string_view ray_direction = "1,0,-1";
inline constexpr std::string_view ray_t_max = "1/4";

} // namespace voilab::reference
