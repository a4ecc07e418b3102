#include "divsum/table_model.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace divsum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> parse_row(const nlohmann::json& row, std::size_t vocab_size,
                              const std::string& where) {
  if (!row.is_array())
    throw std::runtime_error("model: " + where + " must be an array");
  if (row.size() != vocab_size)
    throw std::runtime_error("model: " + where + " has " + std::to_string(row.size()) +
                             " entries, vocabulary has " + std::to_string(vocab_size));
  std::vector<double> out;
  out.reserve(row.size());
  for (const auto& cell : row) {
    if (cell.is_null()) {
      out.push_back(kNegInf);
    } else if (cell.is_number()) {
      out.push_back(cell.get<double>());
    } else {
      throw std::runtime_error("model: " + where + " holds a non-numeric, non-null entry");
    }
  }
  return out;
}

}  // namespace

TableModel TableModel::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw std::runtime_error("model: top level must be an object");
  if (!spec.contains("vocabulary") || !spec["vocabulary"].is_array())
    throw std::runtime_error("model: missing 'vocabulary' array");

  TableModel m;
  for (const auto& entry : spec["vocabulary"]) {
    if (!entry.is_string()) throw std::runtime_error("model: vocabulary entries must be strings");
    const std::string token = entry.get<std::string>();
    if (m.ids_.count(token)) throw std::runtime_error("model: duplicate vocabulary token '" + token + "'");
    m.ids_[token] = static_cast<TokenId>(m.vocab_.size());
    m.vocab_.push_back(token);
  }
  auto start_it = m.ids_.find(kStartToken);
  auto stop_it = m.ids_.find(kStopToken);
  if (start_it == m.ids_.end())
    throw std::runtime_error(std::string("model: vocabulary must contain '") + kStartToken + "'");
  if (stop_it == m.ids_.end())
    throw std::runtime_error(std::string("model: vocabulary must contain '") + kStopToken + "'");
  m.start_ = start_it->second;
  m.stop_ = stop_it->second;

  const std::string kind = spec.value("kind", std::string());
  if (kind == "per_step") {
    m.kind_ = Kind::per_step;
    if (!spec.contains("steps") || !spec["steps"].is_array() || spec["steps"].empty())
      throw std::runtime_error("model: per_step kind needs a non-empty 'steps' array");
    std::size_t row_no = 0;
    for (const auto& row : spec["steps"]) {
      m.steps_.push_back(parse_row(row, m.vocab_.size(), "steps[" + std::to_string(row_no) + "]"));
      ++row_no;
    }
  } else if (kind == "conditional") {
    m.kind_ = Kind::conditional;
    m.order_ = spec.value("order", 1);
    if (m.order_ < 1) throw std::runtime_error("model: order must be positive");
    if (!spec.contains("contexts") || !spec["contexts"].is_object())
      throw std::runtime_error("model: conditional kind needs a 'contexts' object");
    for (const auto& [key, row] : spec["contexts"].items()) {
      m.contexts_[key] = parse_row(row, m.vocab_.size(), "contexts['" + key + "']");
    }
    if (spec.contains("default")) {
      m.default_row_ = parse_row(spec["default"], m.vocab_.size(), "default");
    }
  } else {
    throw std::runtime_error("model: 'kind' must be 'per_step' or 'conditional'");
  }
  return m;
}

TableModel TableModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model: cannot open " + path);
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("model: " + path + ": " + e.what());
  }
  return from_json(spec);
}

std::vector<double> TableModel::step(std::span<const TokenId> prefix) const {
  if (kind_ == Kind::per_step) {
    const std::size_t row = std::min(prefix.size(), steps_.size() - 1);
    return steps_[row];
  }
  // Context: the last order_ tokens of start marker + prefix, space-joined.
  std::vector<TokenId> padded;
  padded.reserve(prefix.size() + 1);
  padded.push_back(start_);
  padded.insert(padded.end(), prefix.begin(), prefix.end());
  const std::size_t take = std::min<std::size_t>(order_, padded.size());
  std::string key;
  for (std::size_t k = padded.size() - take; k < padded.size(); ++k) {
    if (!key.empty()) key.push_back(' ');
    key += vocab_[padded[k]];
  }
  auto it = contexts_.find(key);
  if (it != contexts_.end()) return it->second;
  if (default_row_) return *default_row_;
  throw std::runtime_error("model: no scores for context '" + key + "' and no default row");
}

std::optional<TokenId> TableModel::token_id(const std::string& token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string detokenize_ids(const SequenceModel& model, const std::vector<TokenId>& tokens) {
  const auto& vocab = model.vocabulary();
  std::string out;
  for (TokenId t : tokens) {
    if (t == model.start_id() || t == model.stop_id()) continue;
    if (t < 0 || static_cast<std::size_t>(t) >= vocab.size())
      throw std::out_of_range("token id outside vocabulary");
    if (!out.empty()) out.push_back(' ');
    out += vocab[t];
  }
  return out;
}

}  // namespace divsum
