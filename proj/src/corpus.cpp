#include "physqa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "physqa/image_io.hpp"
#include "physqa/rng.hpp"
#include "physqa/text.hpp"

namespace physqa {

const std::vector<std::string>& topic_names() {
  static const std::vector<std::string> names = {
      "Kinematics",
      "Mechanics",
      "Electrostatics and Current Electricity",
      "Thermodynamics",
      "Optics",
      "Magnetism",
      "Electronic Devices",
      "Atoms",
  };
  return names;
}

std::optional<Topic> topic_from_string(const std::string& name) {
  const auto& names = topic_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Topic>(i);
  }
  return std::nullopt;
}

const std::string& topic_to_string(Topic t) {
  return topic_names()[static_cast<std::size_t>(t)];
}

const std::string& QuestionRecord::option_text(const std::string& label) const {
  auto it = options.find(label);
  if (it == options.end()) throw Error("record " + id + ": no option '" + label + "'");
  return it->second;
}

const QuestionRecord* Corpus::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

ValidationResult validate_record(const QuestionRecord& r,
                                 const std::filesystem::path& image_root) {
  ValidationResult result;
  auto add = [&](std::string code, std::string message) {
    result.violations.push_back({std::move(code), std::move(message)});
  };

  if (r.id.empty()) add("id_empty", "id is empty");
  if (r.question.empty()) add("question_empty", "question text is empty");

  if (r.options.size() != 4) {
    add("option_count", "expected exactly 4 options, found " +
                            std::to_string(r.options.size()));
  }
  for (const auto& label : option_labels()) {
    if (!r.options.count(label)) add("option_missing", "missing option '" + label + "'");
  }
  for (const auto& [label, text] : r.options) {
    bool known = false;
    for (const auto& l : option_labels()) known = known || l == label;
    if (!known) add("option_label", "unknown option label '" + label + "'");
    (void)text;
  }

  bool answer_ok = false;
  for (const auto& l : option_labels()) answer_ok = answer_ok || l == r.answer;
  if (!answer_ok) {
    add("answer_label", "answer not in {a,b,c,d}: '" + r.answer + "'");
  } else if (!r.options.count(r.answer)) {
    add("answer_option", "answer '" + r.answer + "' has no matching option");
  }

  if (!topic_from_string(r.topic)) {
    add("topic", "unknown topic '" + r.topic + "'");
  }

  if (r.image.empty()) {
    add("image_empty", "image reference is empty");
  } else if (!image_root.empty()) {
    const auto path = image_root / r.image;
    if (!std::filesystem::exists(path)) {
      add("image_missing", "image missing: " + path.string());
    } else if (!png_decodes(path)) {
      add("image_decode", "image does not decode: " + path.string());
    }
  }
  return result;
}

Json record_to_json(const QuestionRecord& r) {
  Json opts = Json::object();
  // a..d first, any stray labels after (kept so invalid records round-trip).
  for (const auto& label : option_labels()) {
    auto it = r.options.find(label);
    if (it != r.options.end()) opts[label] = it->second;
  }
  for (const auto& [label, text] : r.options) {
    if (!opts.contains(label)) opts[label] = text;
  }
  Json j = Json::object();
  j["id"] = r.id;
  j["question"] = r.question;
  j["options"] = opts;
  j["answer"] = r.answer;
  j["explanation"] = r.explanation;
  j["topic"] = r.topic;
  j["subtopics"] = r.subtopics;
  j["image"] = r.image;
  return j;
}

namespace {

std::string require_string(const Json& j, const char* key, std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError("line " + std::to_string(line_no) + ": missing or non-string field '" +
                     key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

QuestionRecord record_from_json(const Json& j, std::size_t line_no) {
  QuestionRecord r;
  r.id = require_string(j, "id", line_no);
  r.question = require_string(j, "question", line_no);
  if (!j.contains("options") || !j["options"].is_object()) {
    throw ParseError("line " + std::to_string(line_no) + ": missing or non-object field 'options'");
  }
  for (const auto& [label, text] : j["options"].items()) {
    if (!text.is_string()) {
      throw ParseError("line " + std::to_string(line_no) + ": option '" + label +
                       "' is not a string");
    }
    r.options[to_lower(label)] = text.get<std::string>();
  }
  r.answer = to_lower(trim(require_string(j, "answer", line_no)));
  r.explanation = require_string(j, "explanation", line_no);
  r.topic = require_string(j, "topic", line_no);
  if (j.contains("subtopics")) {
    if (!j["subtopics"].is_array()) {
      throw ParseError("line " + std::to_string(line_no) + ": 'subtopics' is not an array");
    }
    for (const auto& s : j["subtopics"]) {
      if (!s.is_string()) {
        throw ParseError("line " + std::to_string(line_no) + ": subtopic is not a string");
      }
      r.subtopics.push_back(s.get<std::string>());
    }
  }
  r.image = require_string(j, "image", line_no);
  return r;
}

namespace {

Corpus load_corpus_impl(const std::filesystem::path& path,
                        const std::filesystem::path& image_root, bool validate) {
  Corpus corpus;
  const auto lines = read_jsonl(path);
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [line_no, value] = lines[i];
    if (i == 0 && value.is_object() && value.contains("corpus")) {
      const Json& meta = value["corpus"];
      corpus.metadata.name = meta.value("name", "");
      corpus.metadata.version = meta.value("version", "");
      corpus.metadata.created = meta.value("created", "");
      continue;
    }
    if (!value.is_object()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": record is not an object");
    }
    QuestionRecord r = record_from_json(value, line_no);
    if (!seen_ids.insert(r.id).second) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate id '" + r.id + "'");
    }
    if (validate) {
      const auto result = validate_record(r, image_root);
      if (!result.ok()) {
        std::string msg = path.string() + ":" + std::to_string(line_no) +
                          ": record '" + r.id + "' invalid:";
        for (const auto& v : result.violations) msg += " [" + v.code + "] " + v.message + ";";
        throw ValidationError(msg);
      }
    }
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path,
                   const std::filesystem::path& image_root) {
  return load_corpus_impl(path, image_root, true);
}

Corpus load_corpus_raw(const std::filesystem::path& path) {
  return load_corpus_impl(path, {}, false);
}

void save_corpus(const Corpus& c, const std::filesystem::path& path) {
  std::vector<Json> lines;
  lines.reserve(c.records.size() + 1);
  if (!c.metadata.name.empty() || !c.metadata.version.empty() ||
      !c.metadata.created.empty()) {
    Json meta = Json::object();
    meta["name"] = c.metadata.name;
    meta["version"] = c.metadata.version;
    meta["created"] = c.metadata.created;
    Json header = Json::object();
    header["corpus"] = meta;
    lines.push_back(header);
  }
  for (const auto& r : c.records) lines.push_back(record_to_json(r));
  write_jsonl(path, lines);
}

namespace {

struct Group {
  std::string key;            // answer label, or label|topic when topic-stratified
  std::string label;          // answer label component
  std::vector<std::size_t> indices;
};

double max_label_deviation(const std::map<std::string, long>& train_counts,
                           const std::map<std::string, long>& total_counts,
                           long n_train, long n_test, std::string* worst_label) {
  double worst = 0.0;
  for (const auto& [label, total] : total_counts) {
    const long in_train = train_counts.count(label) ? train_counts.at(label) : 0;
    const double share_train = n_train > 0 ? double(in_train) / double(n_train) : 0.0;
    const double share_test = n_test > 0 ? double(total - in_train) / double(n_test) : 0.0;
    const double dev = std::fabs(share_train - share_test);
    if (dev > worst) {
      worst = dev;
      if (worst_label) *worst_label = label;
    }
  }
  return worst;
}

}  // namespace

std::pair<Corpus, Corpus> stratified_split(const Corpus& c, const SplitSpec& spec) {
  if (c.records.empty()) throw Error("stratified_split: corpus is empty");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error("stratified_split: train_fraction must be in (0,1)");
  }
  if (spec.tolerance < 0.0) throw Error("stratified_split: tolerance must be >= 0");

  const long n = static_cast<long>(c.records.size());
  const long n_train = std::lround(spec.train_fraction * double(n));
  const long n_test = n - n_train;

  // Group records by stratification key, keys in sorted order.
  std::map<std::string, Group> groups;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    const auto& r = c.records[i];
    const std::string key =
        spec.stratify_topics ? r.answer + "|" + r.topic : r.answer;
    auto& g = groups[key];
    g.key = key;
    g.label = r.answer;
    g.indices.push_back(i);
  }

  // Largest-remainder apportionment of the train quota across groups.
  struct Alloc {
    const Group* group;
    long take;
    double remainder;
  };
  std::vector<Alloc> allocs;
  long assigned = 0;
  for (const auto& [key, g] : groups) {
    const double exact = spec.train_fraction * double(g.indices.size());
    long take = static_cast<long>(std::floor(exact));
    allocs.push_back({&g, take, exact - double(take)});
    assigned += take;
  }
  long leftover = n_train - assigned;
  std::vector<std::size_t> order(allocs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return allocs[a].remainder > allocs[b].remainder;
  });
  for (std::size_t i = 0; leftover > 0 && i < order.size(); ++i) {
    auto& a = allocs[order[i]];
    if (a.take < static_cast<long>(a.group->indices.size())) {
      ++a.take;
      --leftover;
    }
  }
  // Rare: remainders exhausted against group capacity; sweep again.
  for (std::size_t i = 0; leftover > 0 && i < allocs.size(); ++i) {
    auto& a = allocs[i];
    const long room = static_cast<long>(a.group->indices.size()) - a.take;
    const long add = std::min(room, leftover);
    a.take += add;
    leftover -= add;
  }
  if (leftover != 0) throw Error("stratified_split: cannot reach requested train size");

  // Greedy rebalance on the answer-label deviation.
  std::map<std::string, long> total_by_label, train_by_label;
  for (const auto& [key, g] : groups) {
    total_by_label[g.label] += static_cast<long>(g.indices.size());
  }
  auto recompute_train_by_label = [&]() {
    train_by_label.clear();
    for (const auto& a : allocs) train_by_label[a.group->label] += a.take;
  };
  recompute_train_by_label();

  std::string worst_label;
  double dev = max_label_deviation(train_by_label, total_by_label, n_train, n_test,
                                   &worst_label);
  for (int iter = 0; iter < 4 * static_cast<int>(allocs.size()) && dev > spec.tolerance;
       ++iter) {
    double best_dev = dev;
    std::size_t best_from = allocs.size(), best_to = allocs.size();
    for (std::size_t from = 0; from < allocs.size(); ++from) {
      if (allocs[from].take <= 0) continue;
      for (std::size_t to = 0; to < allocs.size(); ++to) {
        if (to == from) continue;
        if (allocs[to].take >= static_cast<long>(allocs[to].group->indices.size()))
          continue;
        --allocs[from].take;
        ++allocs[to].take;
        recompute_train_by_label();
        const double d =
            max_label_deviation(train_by_label, total_by_label, n_train, n_test, nullptr);
        if (d < best_dev) {
          best_dev = d;
          best_from = from;
          best_to = to;
        }
        ++allocs[from].take;
        --allocs[to].take;
      }
    }
    if (best_from == allocs.size()) break;
    --allocs[best_from].take;
    ++allocs[best_to].take;
    recompute_train_by_label();
    dev = max_label_deviation(train_by_label, total_by_label, n_train, n_test,
                              &worst_label);
  }
  if (dev > spec.tolerance) {
    throw InfeasibleSplitError(
        "stratified_split: label '" + worst_label + "' cannot satisfy tolerance " +
            std::to_string(spec.tolerance) + " (deviation " + std::to_string(dev) + ")",
        worst_label);
  }

  // Seeded per-group shuffle, then emit both sides in original corpus order.
  std::vector<bool> in_train(c.records.size(), false);
  for (const auto& a : allocs) {
    std::vector<std::size_t> idx = a.group->indices;
    Rng rng(derive_seed(spec.seed, "split/" + a.group->key));
    rng.shuffle(idx);
    for (long k = 0; k < a.take; ++k) in_train[idx[static_cast<std::size_t>(k)]] = true;
  }

  Corpus train, test;
  train.metadata = c.metadata;
  test.metadata = c.metadata;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    (in_train[i] ? train : test).records.push_back(c.records[i]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace physqa
