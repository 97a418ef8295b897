#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "physqa/jsonl.hpp"

namespace physqa {

// The eight physics topics a record may carry.
enum class Topic {
  Kinematics,
  Mechanics,
  ElectrostaticsAndCurrentElectricity,
  Thermodynamics,
  Optics,
  Magnetism,
  ElectronicDevices,
  Atoms,
};

const std::vector<std::string>& topic_names();
std::optional<Topic> topic_from_string(const std::string& name);
const std::string& topic_to_string(Topic t);

inline const std::array<std::string, 4>& option_labels() {
  static const std::array<std::string, 4> labels = {"a", "b", "c", "d"};
  return labels;
}

// One multiple-choice question. Fields are stored as parsed (topic and
// answer as strings) so that files with bad values load and then fail
// validation with a precise violation rather than a parse abort.
struct QuestionRecord {
  std::string id;
  std::string question;
  std::map<std::string, std::string> options;  // keyed "a".."d"
  std::string answer;                          // lowercase label
  std::string explanation;
  std::string topic;
  std::vector<std::string> subtopics;
  std::string image;  // path relative to the corpus image root

  const std::string& option_text(const std::string& label) const;
  bool operator==(const QuestionRecord&) const = default;
};

struct CorpusMetadata {
  std::string name;
  std::string version;
  std::string created;
  bool operator==(const CorpusMetadata&) const = default;
};

struct Corpus {
  std::vector<QuestionRecord> records;
  CorpusMetadata metadata;

  std::size_t size() const { return records.size(); }
  const QuestionRecord* find(const std::string& id) const;
  bool operator==(const Corpus&) const = default;
};

struct SplitSpec {
  double train_fraction = 0.85;
  std::uint64_t seed = 42;
  double tolerance = 0.02;  // max per-label share deviation between splits
  bool stratify_topics = false;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every record invariant; never throws on arbitrary field contents.
// Violations are data. image_root empty skips the image-existence check.
ValidationResult validate_record(const QuestionRecord& r,
                                 const std::filesystem::path& image_root);

Json record_to_json(const QuestionRecord& r);
QuestionRecord record_from_json(const Json& j, std::size_t line_no);

// Loads a JSONL corpus (optional leading {"corpus": {...}} metadata line),
// validating every record against image_root. Throws ParseError with the
// line number on malformed lines and ValidationError naming the record id
// and violated invariant otherwise. Record order is preserved.
Corpus load_corpus(const std::filesystem::path& path,
                   const std::filesystem::path& image_root);

// Same format, no validation; for derived files (e.g. CoT variants whose
// image field holds a filename triple).
Corpus load_corpus_raw(const std::filesystem::path& path);

void save_corpus(const Corpus& c, const std::filesystem::path& path);

// Seed-deterministic stratified split on the answer label: train gets
// round(train_fraction * N) records and every label's share deviates
// between the two sides by at most spec.tolerance. Output corpora keep the
// input record order. Throws InfeasibleSplitError naming the worst label
// when the tolerance cannot be met.
std::pair<Corpus, Corpus> stratified_split(const Corpus& c, const SplitSpec& spec);

}  // namespace physqa
