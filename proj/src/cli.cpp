#include "divsum/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "divsum/extractiveness.hpp"
#include "divsum/pipeline.hpp"
#include "divsum/rouge.hpp"
#include "divsum/table_model.hpp"
#include "divsum/textproc.hpp"

namespace divsum::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RecordOutcome {
  std::string line;           // serialized output for this record
  bool ok = false;
  std::vector<double> stats;  // command-specific per-record aggregates
};

// fn must be safe to call from several threads at once.
std::vector<RecordOutcome> map_records(
    const std::vector<std::string>& lines,
    const std::function<RecordOutcome(const std::string&)>& fn) {
  std::vector<RecordOutcome> results(lines.size());
  const unsigned workers =
      std::min<unsigned>(thread_limit(), static_cast<unsigned>(lines.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) results[i] = fn(lines[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= lines.size()) return;
        results[i] = fn(lines[i]);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

RecordOutcome error_outcome(const ordered_json& id, const std::string& message) {
  ordered_json entry;
  entry["id"] = id;
  entry["error"] = message;
  RecordOutcome out;
  out.line = entry.dump();
  return out;
}

// Parses the line and pulls the required string fields, then hands the
// record to build. Any failure turns into an error entry for this line.
RecordOutcome guard_record(const std::string& line,
                           const std::vector<std::string>& required_fields,
                           const std::function<RecordOutcome(const ordered_json&)>& build) {
  ordered_json record;
  try {
    record = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    return error_outcome(nullptr, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) return error_outcome(nullptr, "record is not an object");
  ordered_json id = record.contains("id") ? record["id"] : ordered_json(nullptr);
  if (!id.is_string()) return error_outcome(nullptr, "missing string field 'id'");
  for (const std::string& field : required_fields) {
    if (!record.contains(field) || (field == "candidates" ? !record[field].is_array()
                                                          : !record[field].is_string())) {
      return error_outcome(id, "missing " +
                                   std::string(field == "candidates" ? "array" : "string") +
                                   " field '" + field + "'");
    }
  }
  try {
    return build(record);
  } catch (const std::exception& e) {
    return error_outcome(id, e.what());
  }
}

ordered_json report_to_json(const ExtractivenessReport& report) {
  ordered_json spans = ordered_json::array();
  for (const CommonSpan& span : report.spans) {
    spans.push_back({{"summary_start", span.summary_start},
                     {"document_start", span.document_start},
                     {"length", span.length}});
  }
  ordered_json out;
  out["plagiarism_score"] = report.plagiarism_score;
  out["extraction_score"] = report.extraction_score;
  out["proportions"] = report.proportions;
  out["spans"] = std::move(spans);
  return out;
}

void write_outcomes(std::ostream& out, const std::vector<RecordOutcome>& outcomes) {
  for (const RecordOutcome& o : outcomes) out << o.line << '\n';
}

std::size_t count_errors(const std::vector<RecordOutcome>& outcomes) {
  std::size_t errors = 0;
  for (const RecordOutcome& o : outcomes) {
    if (!o.ok) ++errors;
  }
  return errors;
}

// Mean of stats[k] over successful records; null when none succeeded.
ordered_json stat_mean(const std::vector<RecordOutcome>& outcomes, std::size_t k) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const RecordOutcome& o : outcomes) {
    if (o.ok) {
      sum += o.stats[k];
      ++n;
    }
  }
  if (n == 0) return nullptr;
  return sum / static_cast<double>(n);
}

ordered_json hypothesis_to_json(const SequenceModel& model, const BeamHypothesis& hyp,
                                bool length_norm) {
  ordered_json tokens = ordered_json::array();
  for (TokenId t : hyp.tokens) tokens.push_back(model.vocabulary()[t]);
  ordered_json out;
  out["text"] = detokenize_ids(model, hyp.tokens);
  out["tokens"] = std::move(tokens);
  out["log_score"] = hyp.log_score;
  if (length_norm) {
    std::size_t content = hyp.tokens.size();
    if (!hyp.tokens.empty() && hyp.tokens.back() == model.stop_id()) --content;
    out["normalized_score"] =
        hyp.log_score / static_cast<double>(std::max<std::size_t>(content, 1));
  }
  return out;
}

std::unique_ptr<Embedder> build_embedder(const EmbedderChoice& choice) {
  if (choice.embeddings_path) {
    return std::make_unique<EmbeddingTable>(load_embeddings(*choice.embeddings_path));
  }
  return std::make_unique<HashedEmbedder>(choice.hash_dimension, choice.hash_seed);
}

}  // namespace

unsigned thread_limit() {
  if (const char* env = std::getenv("DIVSUM_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(std::min(parsed, 256L));
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::size_t run_score(std::istream& in, std::ostream& out, const ScoreOptions& options) {
  const auto lines = read_lines(in);
  auto outcomes = map_records(lines, [&](const std::string& line) {
    return guard_record(line, {"document", "summary"}, [&](const ordered_json& record) {
      const TokenSeq summary = tokenize(record["summary"].get<std::string>());
      const TokenSeq document = tokenize(record["document"].get<std::string>());
      const ExtractivenessReport report =
          extraction_score(summary, document, options.min_span_length);
      ordered_json entry;
      entry["id"] = record["id"];
      entry.update(report_to_json(report));
      RecordOutcome outcome;
      outcome.line = entry.dump();
      outcome.ok = true;
      outcome.stats = {report.plagiarism_score, report.extraction_score};
      return outcome;
    });
  });
  write_outcomes(out, outcomes);

  ordered_json aggregate;
  aggregate["aggregate"] = true;
  aggregate["records"] = lines.size();
  aggregate["errors"] = count_errors(outcomes);
  aggregate["mean_plagiarism_score"] = stat_mean(outcomes, 0);
  aggregate["mean_extraction_score"] = stat_mean(outcomes, 1);
  out << aggregate.dump() << '\n';
  return count_errors(outcomes);
}

std::size_t run_rouge(std::istream& in, std::ostream& out) {
  const auto lines = read_lines(in);
  auto outcomes = map_records(lines, [&](const std::string& line) {
    return guard_record(line, {"reference", "candidate"}, [&](const ordered_json& record) {
      const TokenSeq reference = tokenize(record["reference"].get<std::string>());
      const TokenSeq candidate = tokenize(record["candidate"].get<std::string>());
      const RougeScores scores = rouge_all(candidate, reference);
      auto triple = [](const RougeTriple& t) {
        return ordered_json{{"precision", t.precision}, {"recall", t.recall}, {"f1", t.f1}};
      };
      ordered_json entry;
      entry["id"] = record["id"];
      entry["rouge1"] = triple(scores.rouge1);
      entry["rouge2"] = triple(scores.rouge2);
      entry["rougeL"] = triple(scores.rougeL);
      RecordOutcome outcome;
      outcome.line = entry.dump();
      outcome.ok = true;
      outcome.stats = {scores.rouge1.f1, scores.rouge2.f1, scores.rougeL.f1};
      return outcome;
    });
  });
  write_outcomes(out, outcomes);

  ordered_json aggregate;
  aggregate["aggregate"] = true;
  aggregate["records"] = lines.size();
  aggregate["errors"] = count_errors(outcomes);
  aggregate["mean_rouge1_f"] = stat_mean(outcomes, 0);
  aggregate["mean_rouge2_f"] = stat_mean(outcomes, 1);
  aggregate["mean_rougeL_f"] = stat_mean(outcomes, 2);
  out << aggregate.dump() << '\n';
  return count_errors(outcomes);
}

void run_decode(std::ostream& out, const DecodeOptions& options) {
  options.config.validate();
  const TableModel model = TableModel::load(options.model_path);
  const auto groups = diverse_beam_search(model, options.config);

  ordered_json config;
  config["beam_width"] = options.config.beam_width;
  config["groups"] = options.config.groups;
  config["diversity_strength"] = options.config.diversity_strength;
  config["diversity"] =
      options.config.diversity == DiversityKind::hamming ? "hamming" : "ngram";
  config["ngram_order"] = options.config.ngram_order;
  config["min_tokens"] = options.config.min_tokens;
  config["max_tokens"] = options.config.max_tokens;
  config["length_norm"] = options.config.length_norm;

  ordered_json group_entries = ordered_json::array();
  for (const auto& group : groups) {
    ordered_json entries = ordered_json::array();
    for (const BeamHypothesis& hyp : group) {
      entries.push_back(hypothesis_to_json(model, hyp, options.config.length_norm));
    }
    group_entries.push_back(std::move(entries));
  }

  ordered_json doc;
  doc["model"] = options.model_path;
  doc["config"] = std::move(config);
  doc["groups"] = std::move(group_entries);
  out << doc.dump(2) << '\n';
}

std::size_t run_merge(std::istream& in, std::ostream& out, const MergeCliOptions& options) {
  options.mmr.validate();
  const std::unique_ptr<Embedder> embedder = build_embedder(options.embedder);
  std::unique_ptr<TableModel> model;
  if (options.model_path) {
    options.decode.validate();
    model = std::make_unique<TableModel>(TableModel::load(*options.model_path));
  }

  MergeOptions merge_options;
  merge_options.mmr = options.mmr;
  merge_options.min_span_length = options.min_span_length;
  merge_options.all_hypotheses = options.all_hypotheses;

  const std::vector<std::string> required =
      model ? std::vector<std::string>{"document"}
            : std::vector<std::string>{"document", "candidates"};

  const auto lines = read_lines(in);
  auto outcomes = map_records(lines, [&](const std::string& line) {
    return guard_record(line, required, [&](const ordered_json& record) {
      const std::string document = record["document"].get<std::string>();
      MergeResult result;
      if (model) {
        result = decode_and_merge(*model, document, options.decode, *embedder, merge_options);
      } else {
        std::vector<std::string> candidates;
        for (const auto& entry : record["candidates"]) {
          if (!entry.is_string())
            throw std::invalid_argument("'candidates' entries must be strings");
          candidates.push_back(entry.get<std::string>());
        }
        result = merge_diverse_summaries(document, candidates, *embedder, merge_options);
      }
      ordered_json selected = ordered_json::array();
      for (const Candidate& c : result.selected) {
        selected.push_back({{"index", c.index}, {"sentence", c.sentence}});
      }
      ordered_json entry;
      entry["id"] = record["id"];
      entry["final_summary"] = result.final_summary;
      entry["selected"] = std::move(selected);
      entry["report"] = report_to_json(result.report);
      RecordOutcome outcome;
      outcome.line = entry.dump();
      outcome.ok = true;
      return outcome;
    });
  });
  write_outcomes(out, outcomes);
  return count_errors(outcomes);
}

}  // namespace divsum::cli
