#pragma once

#include "macwt/prob_core.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace macwt {

// Raised for malformed channel files; the message carries the JSON line and
// column for syntax errors, or the field path (e.g. `pmf[1][0][2]`).
class ChannelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChannelSpec {
  MacWiretapChannel channel;
  std::optional<InputDistribution> input;
};

// Document layout:
//   {"K": 2, "input_sizes": [2, 2], "y_size": 3, "z_size": 2,
//    "pmf": [[[[p(y0,z0|00), p(y0,z1|00)], ...]]],   // x_1 .. x_K, y, z
//    "input_dist": [[0.5, 0.5], [0.5, 0.5]]}         // optional
ChannelSpec parse_channel(const std::string& text);
ChannelSpec load_channel(const std::string& path);

nlohmann::json channel_to_json(const MacWiretapChannel& channel,
                               const std::optional<InputDistribution>& input = std::nullopt);

}  // namespace macwt
