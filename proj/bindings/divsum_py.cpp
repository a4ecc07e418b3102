#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "divsum/decoder.hpp"
#include "divsum/embed.hpp"
#include "divsum/extractiveness.hpp"
#include "divsum/mmr.hpp"
#include "divsum/pipeline.hpp"
#include "divsum/rouge.hpp"
#include "divsum/table_model.hpp"
#include "divsum/textproc.hpp"

namespace py = pybind11;

namespace {

divsum::DecodeConfig build_config(int beam_width, int groups, double diversity_strength,
                                  const std::string& diversity, int ngram_order,
                                  int min_tokens, int max_tokens, bool length_norm) {
  divsum::DecodeConfig config;
  config.beam_width = beam_width;
  config.groups = groups;
  config.diversity_strength = diversity_strength;
  if (diversity == "hamming") {
    config.diversity = divsum::DiversityKind::hamming;
  } else if (diversity == "ngram") {
    config.diversity = divsum::DiversityKind::ngram;
  } else {
    throw std::invalid_argument("diversity must be 'hamming' or 'ngram'");
  }
  config.ngram_order = ngram_order;
  config.min_tokens = min_tokens;
  config.max_tokens = max_tokens;
  config.length_norm = length_norm;
  config.validate();
  return config;
}

std::unique_ptr<divsum::Embedder> build_embedder(
    const std::optional<std::string>& embeddings_path, std::size_t hash_dimension,
    std::uint64_t hash_seed) {
  if (embeddings_path) {
    return std::make_unique<divsum::EmbeddingTable>(
        divsum::load_embeddings(*embeddings_path));
  }
  return std::make_unique<divsum::HashedEmbedder>(hash_dimension, hash_seed);
}

py::dict report_dict(const divsum::ExtractivenessReport& report) {
  py::list spans;
  for (const auto& span : report.spans) {
    py::dict entry;
    entry["summary_start"] = span.summary_start;
    entry["document_start"] = span.document_start;
    entry["length"] = span.length;
    spans.append(std::move(entry));
  }
  py::dict out;
  out["plagiarism_score"] = report.plagiarism_score;
  out["extraction_score"] = report.extraction_score;
  out["spans"] = std::move(spans);
  out["proportions"] = report.proportions;
  return out;
}

py::dict triple_dict(const divsum::RougeTriple& triple) {
  py::dict out;
  out["precision"] = triple.precision;
  out["recall"] = triple.recall;
  out["f1"] = triple.f1;
  return out;
}

py::dict hypothesis_dict(const divsum::SequenceModel& model,
                         const divsum::BeamHypothesis& hyp) {
  py::list tokens;
  for (divsum::TokenId t : hyp.tokens) {
    tokens.append(model.vocabulary()[static_cast<std::size_t>(t)]);
  }
  py::dict out;
  out["text"] = divsum::detokenize_ids(model, hyp.tokens);
  out["tokens"] = std::move(tokens);
  out["log_score"] = hyp.log_score;
  out["group"] = hyp.group;
  out["finished"] = hyp.finished;
  return out;
}

py::dict merge_dict(const divsum::MergeResult& result) {
  py::list selected;
  for (const auto& candidate : result.selected) {
    py::dict entry;
    entry["index"] = candidate.index;
    entry["sentence"] = candidate.sentence;
    selected.append(std::move(entry));
  }
  py::dict out;
  out["final_summary"] = result.final_summary;
  out["selected"] = std::move(selected);
  out["diverse_inputs"] = result.diverse_inputs;
  out["report"] = report_dict(result.report);
  return out;
}

}  // namespace

PYBIND11_MODULE(_divsum, m) {
  m.doc() = "Diverse decoding, sentence merging, and extractiveness metrics";

  m.def(
      "tokenize",
      [](const std::string& text) { return divsum::tokenize(text).tokens; },
      py::arg("text"),
      "Lowercased tokens with end punctuation peeled off as single tokens.");

  m.def(
      "token_spans",
      [](const std::string& text) { return divsum::tokenize(text).source_char_spans; },
      py::arg("text"),
      "Byte offset [begin, end) of each token in the raw input.");

  m.def(
      "split_sentences",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& sentence : divsum::split_sentences(text)) {
          out.push_back(sentence.raw);
        }
        return out;
      },
      py::arg("text"),
      "Sentence strings split on . ! ? before whitespace plus an uppercase "
      "letter, with common abbreviations guarded.");

  m.def("extraction_penalty", &divsum::extraction_penalty, py::arg("proportion"),
        "Per-span cost p * (e^(p-1) - (1-p)/e); 0 at p=0, 1 at p=1.");

  m.def(
      "plagiarism_score",
      [](const std::string& summary, const std::string& document) {
        return divsum::plagiarism_score(divsum::tokenize(summary),
                                        divsum::tokenize(document));
      },
      py::arg("summary"), py::arg("document"),
      "Length of the longest copied token run over summary length.");

  m.def(
      "extraction_report",
      [](const std::string& summary, const std::string& document,
         std::size_t min_span_length) {
        return report_dict(divsum::extraction_score(
            divsum::tokenize(summary), divsum::tokenize(document), min_span_length));
      },
      py::arg("summary"), py::arg("document"), py::arg("min_span_length") = 3,
      "Copied spans, their proportions, and both extractiveness scores.");

  m.def(
      "rouge_scores",
      [](const std::string& candidate, const std::string& reference) {
        const auto scores = divsum::rouge_all(divsum::tokenize(candidate),
                                              divsum::tokenize(reference));
        py::dict out;
        out["rouge1"] = triple_dict(scores.rouge1);
        out["rouge2"] = triple_dict(scores.rouge2);
        out["rougeL"] = triple_dict(scores.rougeL);
        return out;
      },
      py::arg("candidate"), py::arg("reference"),
      "Precision, recall, and F1 for unigram, bigram, and subsequence overlap.");

  py::class_<divsum::TableModel>(m, "TableModel",
                                 "Sequence scorer backed by explicit JSON tables.")
      .def_static("load", &divsum::TableModel::load, py::arg("path"),
                  "Reads a model JSON file.")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return divsum::TableModel::from_json(nlohmann::json::parse(text));
          },
          py::arg("text"), "Parses a model from a JSON string.")
      .def_property_readonly("vocabulary", &divsum::TableModel::vocabulary)
      .def(
          "decode",
          [](const divsum::TableModel& model, int beam_width, int groups,
             double diversity_strength, const std::string& diversity, int ngram_order,
             int min_tokens, int max_tokens, bool length_norm) {
            const auto config =
                build_config(beam_width, groups, diversity_strength, diversity,
                             ngram_order, min_tokens, max_tokens, length_norm);
            py::list out;
            for (const auto& group : divsum::diverse_beam_search(model, config)) {
              py::list entries;
              for (const auto& hyp : group) entries.append(hypothesis_dict(model, hyp));
              out.append(std::move(entries));
            }
            return out;
          },
          py::arg("beam_width") = 24, py::arg("groups") = 6,
          py::arg("diversity_strength") = 0.3, py::arg("diversity") = "hamming",
          py::arg("ngram_order") = 2, py::arg("min_tokens") = 35,
          py::arg("max_tokens") = 150, py::arg("length_norm") = false,
          "Grouped beam search; returns one best-first hypothesis list per group.");

  m.def(
      "merge_candidates",
      [](const std::string& document, const std::vector<std::string>& candidates,
         std::size_t num_picks, double beta, std::size_t min_span_length,
         const std::optional<std::string>& embeddings_path, std::size_t hash_dimension,
         std::uint64_t hash_seed) {
        const auto embedder = build_embedder(embeddings_path, hash_dimension, hash_seed);
        divsum::MergeOptions options;
        options.mmr.num_picks = num_picks;
        options.mmr.beta = beta;
        options.min_span_length = min_span_length;
        return merge_dict(
            divsum::merge_diverse_summaries(document, candidates, *embedder, options));
      },
      py::arg("document"), py::arg("candidates"), py::arg("num_picks") = 3,
      py::arg("beta") = 0.35, py::arg("min_span_length") = 3,
      py::arg("embeddings_path") = std::nullopt, py::arg("hash_dimension") = 64,
      py::arg("hash_seed") = 0,
      "Deduplicates candidate sentences, selects num_picks of them by relevance "
      "and redundancy, and joins the picks into one summary.");

  m.def(
      "decode_and_merge",
      [](const divsum::TableModel& model, const std::string& document, int beam_width,
         int groups, double diversity_strength, const std::string& diversity,
         int ngram_order, int min_tokens, int max_tokens, bool length_norm,
         bool all_hypotheses, std::size_t num_picks, double beta,
         std::size_t min_span_length, const std::optional<std::string>& embeddings_path,
         std::size_t hash_dimension, std::uint64_t hash_seed) {
        const auto config =
            build_config(beam_width, groups, diversity_strength, diversity, ngram_order,
                         min_tokens, max_tokens, length_norm);
        const auto embedder = build_embedder(embeddings_path, hash_dimension, hash_seed);
        divsum::MergeOptions options;
        options.mmr.num_picks = num_picks;
        options.mmr.beta = beta;
        options.min_span_length = min_span_length;
        options.all_hypotheses = all_hypotheses;
        return merge_dict(
            divsum::decode_and_merge(model, document, config, *embedder, options));
      },
      py::arg("model"), py::arg("document"), py::arg("beam_width") = 24,
      py::arg("groups") = 6, py::arg("diversity_strength") = 0.3,
      py::arg("diversity") = "hamming", py::arg("ngram_order") = 2,
      py::arg("min_tokens") = 35, py::arg("max_tokens") = 150,
      py::arg("length_norm") = false, py::arg("all_hypotheses") = false,
      py::arg("num_picks") = 3, py::arg("beta") = 0.35, py::arg("min_span_length") = 3,
      py::arg("embeddings_path") = std::nullopt, py::arg("hash_dimension") = 64,
      py::arg("hash_seed") = 0,
      "Runs grouped decoding on the model, then merges the decoded texts "
      "against the document.");

  m.attr("__version__") = "0.1.0";
}
