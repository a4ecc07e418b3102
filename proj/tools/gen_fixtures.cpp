// Regenerates the checked-in test fixtures. Run from the repo root:
//   gen_fixtures [output_dir]
// Output defaults to tests/fixtures. Golden files freeze the behavior of the
// build that generated them; regenerate only when a change is intended, and
// review the diff.

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divsum/cli.hpp"
#include "divsum/extractiveness.hpp"
#include "divsum/textproc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Active in every build type, unlike assert under NDEBUG.
#define require(cond)                                                  \
  do {                                                                 \
    if (!(cond)) {                                                     \
      std::cerr << "fixture check failed at " << __FILE__ << ':'       \
                << __LINE__ << ": " #cond << '\n';                     \
      std::exit(1);                                                    \
    }                                                                  \
  } while (0)

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    std::exit(1);
  }
  out << content;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Copying models: one order-1 chain reproduces a document sentence verbatim,
// two parallel paraphrase rails sit a fixed log-score behind it. The four
// entry words all funnel into the copy rail, so an undiversified beam piles
// onto it and grouped decoding gets pushed onto the paraphrase rails.

struct CopyingFixture {
  std::vector<std::string> vocab;
  json model;
  std::string document;
  std::vector<std::string> copy_tokens;  // the planted sentence
};

std::string fixture_word(int doc, char role, int k) {
  std::string w;
  w.push_back(role);
  w.push_back(static_cast<char>('a' + doc));
  w.push_back(static_cast<char>('a' + k % 26));
  if (k >= 26) w.push_back(static_cast<char>('a' + k / 26));
  return w;
}

CopyingFixture make_copying_fixture(int doc) {
  const int rail_len = 8 + doc % 5;       // generated tokens per hypothesis
  const double gap_a = 0.050 + 0.002 * doc;  // first paraphrase rail
  const double gap_b = 0.132 + 0.002 * doc;  // second paraphrase rail

  CopyingFixture fx;
  std::vector<std::string> entries, copy_rail, rail_a, rail_b, filler;
  for (int k = 0; k < 4; ++k) entries.push_back(fixture_word(doc, 'n', k));
  for (int k = 0; k < rail_len - 1; ++k) {
    copy_rail.push_back(fixture_word(doc, 'c', k));
    rail_a.push_back(fixture_word(doc, 'p', k));
    rail_b.push_back(fixture_word(doc, 'r', k));
  }
  for (int k = 0; k < 12; ++k) filler.push_back(fixture_word(doc, 'f', k));

  fx.vocab = {"<s>", "</s>"};
  for (const auto* rail : {&entries, &copy_rail, &rail_a, &rail_b}) {
    fx.vocab.insert(fx.vocab.end(), rail->begin(), rail->end());
  }
  {
    std::set<std::string> unique(fx.vocab.begin(), fx.vocab.end());
    require(unique.size() == fx.vocab.size());
  }

  auto row = [&](std::initializer_list<std::pair<std::string, double>> scores) {
    json r = json::array();
    for (std::size_t i = 0; i < fx.vocab.size(); ++i) r.push_back(nullptr);
    for (const auto& [token, score] : scores) {
      const auto it = std::find(fx.vocab.begin(), fx.vocab.end(), token);
      require(it != fx.vocab.end());
      r[it - fx.vocab.begin()] = score;
    }
    return r;
  };

  json contexts;
  contexts["<s>"] = row({{entries[0], 0.0},
                         {entries[1], -0.01},
                         {entries[2], -0.02},
                         {entries[3], -0.03}});
  for (const auto& e : entries) {
    contexts[e] = row({{copy_rail[0], 0.0}, {rail_a[0], -gap_a}, {rail_b[0], -gap_b}});
  }
  for (int k = 0; k + 1 < rail_len - 1; ++k) {
    contexts[copy_rail[k]] =
        row({{copy_rail[k + 1], 0.0}, {rail_a[k + 1], -gap_a}, {rail_b[k + 1], -gap_b}});
    contexts[rail_a[k]] = row({{rail_a[k + 1], 0.0}});
    contexts[rail_b[k]] = row({{rail_b[k + 1], 0.0}});
  }
  contexts[copy_rail[rail_len - 2]] = row({{"</s>", 0.0}});
  contexts[rail_a[rail_len - 2]] = row({{"</s>", 0.0}});
  contexts[rail_b[rail_len - 2]] = row({{"</s>", 0.0}});

  fx.model["vocabulary"] = fx.vocab;
  fx.model["kind"] = "conditional";
  fx.model["order"] = 1;
  fx.model["contexts"] = std::move(contexts);

  fx.copy_tokens.push_back(entries[0]);
  fx.copy_tokens.insert(fx.copy_tokens.end(), copy_rail.begin(), copy_rail.end());

  std::vector<std::string> filler1(filler.begin(), filler.begin() + 6);
  std::vector<std::string> filler2(filler.begin() + 6, filler.end());
  fx.document =
      join(filler1) + " . " + join(fx.copy_tokens) + " . " + join(filler2) + " .";
  return fx;
}

void write_copying_fixtures(const fs::path& dir) {
  fs::create_directories(dir / "copying");
  std::string corpus;
  for (int doc = 0; doc < 10; ++doc) {
    const CopyingFixture fx = make_copying_fixture(doc);

    // The planted sentence must sit in the document verbatim.
    const divsum::TokenSeq summary = divsum::make_token_seq(fx.copy_tokens);
    const divsum::TokenSeq document = divsum::tokenize(fx.document);
    const auto report = divsum::extraction_score(summary, document, 3);
    require(report.plagiarism_score == 1.0 && report.extraction_score == 1.0);

    char name[32];
    std::snprintf(name, sizeof(name), "model_%02d.json", doc);
    write_file(dir / "copying" / name, fx.model.dump(2) + "\n");

    char id[16];
    std::snprintf(id, sizeof(id), "copy-%02d", doc);
    ordered_json record;
    record["id"] = id;
    record["document"] = fx.document;
    corpus += record.dump() + "\n";
  }
  write_file(dir / "copying" / "corpus.jsonl", corpus);
}

// ---------------------------------------------------------------------------
// Score corpus: summaries against one document, each designed around a known
// span structure. The asserts re-derive the intended closed-form values.

const char* kScoreDocument =
    "the storm closed the harbor before dawn . "
    "fishing crews waited for the signal . "
    "repairs continued through the morning .";

void write_score_fixtures(const fs::path& dir) {
  struct Row {
    const char* id;
    std::string summary;
    double plagiarism;  // expected; negative means skip the check
    double extraction;
  };
  auto penalty = [](double p) { return divsum::extraction_penalty(p); };

  const std::vector<Row> rows = {
      // Verbatim slice of the document.
      {"full-copy", "fishing crews waited for the signal", 1.0, 1.0},
      // No word in common with the document.
      {"novel", "engineers rebuilt several bridges overnight", 0.0, 0.0},
      // 5 copied tokens out of 10.
      {"half-copy", "the storm closed the harbor overnight while nobody watched quietly",
       0.5, penalty(0.5)},
      // Copied runs of 4 and 3 inside 10 tokens; the runs come from two
      // different document sentences so they cannot merge.
      {"two-spans", "storm closed the harbor crews waited for anything else entirely",
       0.4, penalty(0.4) + penalty(0.3)},
      // Shared bigrams only; nothing reaches three tokens.
      {"bigrams-only", "the storm arrived when fishing crews mended repairs continued badly",
       0.2, 0.0},
      // Exactly minimum-length span, 3 of 12.
      {"min-span", "waited for the engineers who rebuilt several bridges overnight in "
                   "heavy fog", 0.25, penalty(0.25)},
      // Same 3-token run copied twice; document positions may repeat.
      {"repeated-span", "before dawn . nothing else matched before dawn .",
       -1.0, 2 * penalty(1.0 / 3.0)},
      // Single shared unigrams, no runs.
      {"unigrams-only", "signal without warning morning mist rolled over", -1.0, 0.0},
      // A full document sentence plus a novel tail of equal length.
      {"copy-prefix", "repairs continued through the morning while engineers rebuilt "
                      "several bridges", 0.5, penalty(0.5)},
      // Whole-document summary; one span covers everything.
      {"whole-document", kScoreDocument, 1.0, 1.0},
  };

  const divsum::TokenSeq document = divsum::tokenize(kScoreDocument);
  std::string corpus;
  for (const Row& row : rows) {
    const auto report =
        divsum::extraction_score(divsum::tokenize(row.summary), document, 3);
    if (row.plagiarism >= 0.0) require(report.plagiarism_score == row.plagiarism);
    require(std::abs(report.extraction_score - row.extraction) < 1e-12);
    ordered_json record;
    record["id"] = row.id;
    record["document"] = kScoreDocument;
    record["summary"] = row.summary;
    corpus += record.dump() + "\n";
  }
  write_file(dir / "score_corpus.jsonl", corpus);

  std::istringstream in(corpus);
  std::ostringstream out;
  divsum::cli::run_score(in, out, divsum::cli::ScoreOptions{});
  write_file(dir / "score_golden.jsonl", out.str());
}

void write_rouge_fixtures(const fs::path& dir) {
  struct Row {
    const char* id;
    const char* reference;
    const char* candidate;
  };
  const std::vector<Row> rows = {
      {"identical", "the quick brown fox jumps", "the quick brown fox jumps"},
      {"disjoint", "alpha beta gamma delta", "epsilon zeta eta theta"},
      {"prefix", "the cat sat on the mat", "the cat sat"},
      {"reversed", "north south east west", "west east south north"},
      {"partial", "council approves the new harbor budget after debate",
       "council approves budget after long debate"},
      {"repeat", "go go go stop", "go stop go"},
  };
  std::string corpus;
  for (const Row& row : rows) {
    ordered_json record;
    record["id"] = row.id;
    record["reference"] = row.reference;
    record["candidate"] = row.candidate;
    corpus += record.dump() + "\n";
  }
  write_file(dir / "rouge_corpus.jsonl", corpus);

  std::istringstream in(corpus);
  std::ostringstream out;
  divsum::cli::run_rouge(in, out);
  write_file(dir / "rouge_golden.jsonl", out.str());
}

void write_merge_fixtures(const fs::path& dir) {
  const std::string copy_summary =
      "the storm closed the harbor before dawn . fishing crews waited for the signal .";
  const std::string paraphrase_one =
      "heavy weather shut everything down early . boats idled until clearance came .";
  const std::string paraphrase_two =
      "crews spent the gray hours mending nets . work resumed once skies lifted .";

  std::string corpus;
  {
    ordered_json record;
    record["id"] = "merge-00";
    record["document"] = kScoreDocument;
    record["candidates"] = {copy_summary, paraphrase_one, paraphrase_two};
    corpus += record.dump() + "\n";
  }
  {
    // Duplicate sentences across candidates collapse before selection.
    ordered_json record;
    record["id"] = "merge-01";
    record["document"] = kScoreDocument;
    record["candidates"] = {copy_summary, copy_summary, paraphrase_one};
    corpus += record.dump() + "\n";
  }
  write_file(dir / "merge_corpus.jsonl", corpus);

  std::istringstream in(corpus);
  std::ostringstream out;
  divsum::cli::MergeCliOptions options;
  divsum::cli::run_merge(in, out, options);
  write_file(dir / "merge_golden.jsonl", out.str());
}

// Per-step toy model usable with the stock decode settings: the stop marker
// becomes dominant right when the minimum length is reached.
void write_toy_decode_model(const fs::path& dir) {
  std::vector<std::string> vocab = {"<s>", "</s>"};
  for (int k = 0; k < 10; ++k) vocab.push_back("w" + std::to_string(k));

  json steps = json::array();
  for (int t = 0; t < 36; ++t) {
    json row = json::array();
    row.push_back(nullptr);  // <s>
    if (t < 35) {
      row.push_back(-9.0);  // </s>, masked below the minimum length anyway
      for (int k = 0; k < 10; ++k) {
        row.push_back(-0.37 * ((k + t) % 10) - 0.05 * k);
      }
    } else {
      row.push_back(0.0);
      for (int k = 0; k < 10; ++k) row.push_back(-3.0 - 0.1 * k);
    }
    steps.push_back(std::move(row));
  }

  json model;
  model["vocabulary"] = vocab;
  model["kind"] = "per_step";
  model["steps"] = std::move(steps);
  write_file(dir / "toy_decode_model.json", model.dump() + "\n");

  std::ostringstream out;
  divsum::cli::DecodeOptions options;
  options.model_path = (dir / "toy_decode_model.json").string();
  divsum::cli::run_decode(out, options);
  // The transcript must not depend on where the tree sits on disk.
  std::string transcript = out.str();
  const std::string needle = "\"model\": \"" + options.model_path + "\"";
  const auto pos = transcript.find(needle);
  require(pos != std::string::npos);
  transcript.replace(pos, needle.size(), "\"model\": \"toy_decode_model.json\"");
  write_file(dir / "decode_golden.json", transcript);
}

void write_tokenizer_golden(const fs::path& dir) {
  const std::vector<std::string> texts = {
      "The cat sat.",
      "Hello, world!",
      "A U.S.-based co-op, yes.",
      "Dr. Smith left. She stayed.",
      "what?! really...",
      "semi;colon: test",
      "  spaced   out  ",
      "don't re-enter the on-site area",
      "numbers 3.5 and 1,000 stay odd",
      "trailing!!",
      "...leading",
      "one",
      "",
      "e.g. apples, i.e. fruit",
      "MIXED Case TEXT",
  };
  std::string golden;
  for (const std::string& text : texts) {
    ordered_json record;
    record["text"] = text;
    record["tokens"] = divsum::tokenize(text).tokens;
    golden += record.dump() + "\n";
  }
  write_file(dir / "tokenizer_golden.jsonl", golden);

  const std::vector<std::string> split_texts = {
      "He left. She stayed.",
      "Dr. Smith left.",
      "A. B.",
      "The U.S. team won! Then it rained.",
      "No terminal punctuation here",
      "e.g. this stays whole. Next one splits.",
  };
  std::string split_golden;
  for (const std::string& text : split_texts) {
    ordered_json record;
    record["text"] = text;
    ordered_json sentences = ordered_json::array();
    for (const auto& s : divsum::split_sentences(text)) sentences.push_back(s.raw);
    record["sentences"] = std::move(sentences);
    split_golden += record.dump() + "\n";
  }
  write_file(dir / "splitter_golden.jsonl", split_golden);
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("tests/fixtures");
  fs::create_directories(dir);
  write_copying_fixtures(dir);
  write_score_fixtures(dir);
  write_rouge_fixtures(dir);
  write_merge_fixtures(dir);
  write_toy_decode_model(dir);
  write_tokenizer_golden(dir);
  std::cout << "fixtures written to " << dir << '\n';
  return 0;
}
