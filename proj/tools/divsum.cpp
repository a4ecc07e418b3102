#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "divsum/cli.hpp"

namespace {

// "-" selects stdin.
std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  return file;
}

void add_decode_flags(CLI::App* cmd, divsum::DecodeConfig& config) {
  cmd->add_option("--beam-width", config.beam_width, "Total beam width");
  cmd->add_option("--groups", config.groups, "Number of beam groups; must divide the width");
  cmd->add_option("--lambda", config.diversity_strength, "Diversity weight during selection");
  cmd->add_option("--diversity", [&config](const std::vector<std::string>& values) {
        const std::string& v = values.front();
        if (v == "hamming") config.diversity = divsum::DiversityKind::hamming;
        else if (v == "ngram") config.diversity = divsum::DiversityKind::ngram;
        else return false;
        return true;
      }, "Diversity term: hamming or ngram")
      ->type_name("TEXT");
  cmd->add_option("--ngram-order", config.ngram_order, "n for the ngram diversity term");
  cmd->add_option("--min-len", config.min_tokens, "Minimum generated tokens before stopping");
  cmd->add_option("--max-len", config.max_tokens, "Hard cap on generated tokens");
  cmd->add_flag("--length-norm", config.length_norm,
                "Rank hypotheses by score divided by token count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diverse decoding, merging, and extractiveness scoring over JSONL corpora"};
  app.require_subcommand(1);

  std::string input_path = "-";
  divsum::cli::ScoreOptions score_options;
  divsum::cli::DecodeOptions decode_options;
  divsum::cli::MergeCliOptions merge_options;
  std::string merge_embeddings;
  std::string merge_model;

  CLI::App* score = app.add_subcommand("score", "Extractiveness of summaries against documents");
  score->add_option("input", input_path, "JSONL file of {id, document, summary}; - for stdin");
  score->add_option("--min-span", score_options.min_span_length,
                    "Shortest common span that counts");

  CLI::App* rouge = app.add_subcommand("rouge", "ROUGE-1/2/L for candidate summaries");
  rouge->add_option("input", input_path, "JSONL file of {id, reference, candidate}; - for stdin");

  CLI::App* decode = app.add_subcommand("decode", "Decode a table model with grouped beams");
  decode->add_option("model", decode_options.model_path, "Model JSON file")->required();
  add_decode_flags(decode, decode_options.config);

  CLI::App* merge = app.add_subcommand("merge", "Select and join diverse summary sentences");
  merge->add_option("input", input_path,
                    "JSONL file of {id, document, candidates}; - for stdin");
  merge->add_option("--embeddings", merge_embeddings, "Embedding table file");
  merge->add_option("--hash-dim", merge_options.embedder.hash_dimension,
                    "Dimension of the hashed fallback embedder");
  merge->add_option("--seed", merge_options.embedder.hash_seed,
                    "Seed of the hashed fallback embedder");
  merge->add_option("--n", merge_options.mmr.num_picks, "Sentences to select");
  merge->add_option("--beta", merge_options.mmr.beta,
                    "Relevance weight; 1-beta weighs redundancy");
  merge->add_option("--min-span", merge_options.min_span_length,
                    "Shortest common span that counts in the report");
  merge->add_flag("--all-hypotheses", merge_options.all_hypotheses,
                  "With --model, merge every finished hypothesis instead of "
                  "each group's best");
  merge->add_option("--model", merge_model,
                    "Decode this model per record instead of reading 'candidates'");
  add_decode_flags(merge, merge_options.decode);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream file;
    std::size_t record_errors = 0;
    if (score->parsed()) {
      record_errors = divsum::cli::run_score(open_input(input_path, file), std::cout, score_options);
    } else if (rouge->parsed()) {
      record_errors = divsum::cli::run_rouge(open_input(input_path, file), std::cout);
    } else if (decode->parsed()) {
      divsum::cli::run_decode(std::cout, decode_options);
    } else if (merge->parsed()) {
      if (!merge_embeddings.empty()) merge_options.embedder.embeddings_path = merge_embeddings;
      if (!merge_model.empty()) merge_options.model_path = merge_model;
      record_errors = divsum::cli::run_merge(open_input(input_path, file), std::cout, merge_options);
    }
    return record_errors == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
