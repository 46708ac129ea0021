#include "macwt/channel_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace macwt {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ChannelFormatError(path + ": " + what);
}

std::size_t positive_size(const json& doc, const std::string& key) {
  if (!doc.contains(key)) fail(key, "missing field");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) fail(key, "expected a positive integer");
  return v.get<std::size_t>();
}

// Flattens a nested array with the given shape into `out`.
void flatten(const json& node, const std::vector<std::size_t>& shape, std::size_t depth,
             const std::string& path, std::vector<double>& out) {
  if (depth == shape.size()) {
    if (!node.is_number()) fail(path, "expected a number");
    out.push_back(node.get<double>());
    return;
  }
  if (!node.is_array()) fail(path, "expected an array of length " + std::to_string(shape[depth]));
  if (node.size() != shape[depth]) {
    fail(path, "array has length " + std::to_string(node.size()) + ", expected " +
                   std::to_string(shape[depth]));
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    flatten(node[i], shape, depth + 1, path + "[" + std::to_string(i) + "]", out);
  }
}

}  // namespace

ChannelSpec parse_channel(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte offset; translate it to line and column.
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ChannelFormatError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  const std::size_t k = positive_size(doc, "K");
  if (!doc.contains("input_sizes")) fail("input_sizes", "missing field");
  const json& sizes_node = doc.at("input_sizes");
  if (!sizes_node.is_array() || sizes_node.size() != k) {
    fail("input_sizes", "expected an array of " + std::to_string(k) + " positive integers");
  }
  std::vector<std::size_t> input_sizes;
  for (std::size_t i = 0; i < k; ++i) {
    const json& v = sizes_node[i];
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
      fail("input_sizes[" + std::to_string(i) + "]", "expected a positive integer");
    }
    input_sizes.push_back(v.get<std::size_t>());
  }
  const std::size_t y_size = positive_size(doc, "y_size");
  const std::size_t z_size = positive_size(doc, "z_size");

  if (!doc.contains("pmf")) fail("pmf", "missing field");
  std::vector<std::size_t> shape = input_sizes;
  shape.push_back(y_size);
  shape.push_back(z_size);
  std::vector<double> pmf;
  flatten(doc.at("pmf"), shape, 0, "pmf", pmf);

  std::optional<MacWiretapChannel> channel;
  try {
    channel.emplace(input_sizes, y_size, z_size, std::move(pmf));
  } catch (const std::invalid_argument& e) {
    fail("pmf", e.what());
  }

  ChannelSpec spec{std::move(*channel), std::nullopt};
  if (doc.contains("input_dist") && !doc.at("input_dist").is_null()) {
    const json& node = doc.at("input_dist");
    if (!node.is_array() || node.size() != k) {
      fail("input_dist", "expected " + std::to_string(k) + " probability vectors");
    }
    InputDistribution input;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> p;
      flatten(node[i], {input_sizes[i]}, 0, "input_dist[" + std::to_string(i) + "]", p);
      input.per_user_pmf.push_back(std::move(p));
    }
    try {
      input.validate(spec.channel);
    } catch (const std::invalid_argument& e) {
      fail("input_dist", e.what());
    }
    spec.input = std::move(input);
  }
  return spec;
}

ChannelSpec load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ChannelFormatError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_channel(buf.str());
  } catch (const ChannelFormatError& e) {
    throw ChannelFormatError(path + ": " + e.what());
  }
}

json channel_to_json(const MacWiretapChannel& channel, const std::optional<InputDistribution>& input) {
  std::vector<std::size_t> shape = channel.input_sizes();
  shape.push_back(channel.y_size());
  shape.push_back(channel.z_size());
  std::size_t pos = 0;
  std::function<json(std::size_t)> build = [&](std::size_t depth) -> json {
    if (depth == shape.size()) return channel.pmf()[pos++];
    json arr = json::array();
    for (std::size_t i = 0; i < shape[depth]; ++i) arr.push_back(build(depth + 1));
    return arr;
  };
  json doc = {{"K", channel.user_count()},
              {"input_sizes", channel.input_sizes()},
              {"y_size", channel.y_size()},
              {"z_size", channel.z_size()},
              {"pmf", build(0)}};
  if (input) doc["input_dist"] = input->per_user_pmf;
  return doc;
}

}  // namespace macwt
