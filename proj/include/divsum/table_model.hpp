#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "divsum/decoder.hpp"

namespace divsum {

// Names every model vocabulary must contain.
inline constexpr const char* kStartToken = "<s>";
inline constexpr const char* kStopToken = "</s>";

// A SequenceModel backed by explicit score tables in JSON. Two kinds:
//   per_step      rows of log-scores indexed by position; the last row
//                 repeats for positions past the table
//   conditional   order-k tables mapping the space-joined last k tokens
//                 (start marker included) to a score row, with an optional
//                 "default" row for unlisted contexts
// Score rows list one number per vocabulary entry; null means minus
// infinity. See docs/formats.md for the schema.
class TableModel : public SequenceModel {
 public:
  static TableModel from_json(const nlohmann::json& spec);
  static TableModel load(const std::string& path);

  const std::vector<std::string>& vocabulary() const override { return vocab_; }
  TokenId start_id() const override { return start_; }
  TokenId stop_id() const override { return stop_; }
  std::vector<double> step(std::span<const TokenId> prefix) const override;

  std::optional<TokenId> token_id(const std::string& token) const;

 private:
  enum class Kind { per_step, conditional };

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, TokenId> ids_;
  TokenId start_ = -1;
  TokenId stop_ = -1;
  Kind kind_ = Kind::per_step;
  std::vector<std::vector<double>> steps_;
  int order_ = 1;
  std::unordered_map<std::string, std::vector<double>> contexts_;
  std::optional<std::vector<double>> default_row_;
};

// Maps token ids back to vocabulary strings, dropping the start and stop
// markers; the result is the space-joined text of the hypothesis.
std::string detokenize_ids(const SequenceModel& model, const std::vector<TokenId>& tokens);

}  // namespace divsum
