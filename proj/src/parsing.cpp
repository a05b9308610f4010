#include "gridbench/parsing.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <stdexcept>

namespace gridbench {

namespace {

constexpr std::string_view kOpenTag = "[ANS]";
constexpr std::string_view kCloseTag = "[/ANS]";

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// U+2212 MINUS SIGN shows up in model output in place of '-'.
std::string normalize_minus(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

struct Token {
  std::string text;   // original case
  std::string folded; // lower case
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back({current, lower(current)});
      current.clear();
    }
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> split_words(std::string_view form) {
  std::vector<std::string> words;
  for (const Token& t : tokenize(form)) words.push_back(t.text);
  return words;
}

bool is_case_sensitive(const std::vector<std::string>& words) {
  return words.size() == 1 && words[0].size() == 1 && std::isupper(static_cast<unsigned char>(words[0][0]));
}

bool word_matches(const Token& token, const std::string& word, bool case_sensitive, bool allow_plural) {
  if (case_sensitive) return token.text == word;
  const std::string w = lower(word);
  if (token.folded == w) return true;
  if (!allow_plural) return false;
  return token.folded == w + "s" || token.folded == w + "es";
}

// Number of tokens matched by `form` at position `i`, or 0.
std::size_t match_at(const std::vector<Token>& tokens, std::size_t i, const std::string& form, bool allow_plural) {
  const std::vector<std::string> words = split_words(form);
  if (words.empty() || i + words.size() > tokens.size()) return 0;
  const bool exact_case = is_case_sensitive(words);
  for (std::size_t k = 0; k < words.size(); ++k) {
    const bool last = k + 1 == words.size();
    if (!word_matches(tokens[i + k], words[k], exact_case, allow_plural && last && !exact_case)) return 0;
  }
  return words.size();
}

// Scans tokens left to right, taking the longest form that matches at each
// position; calls `on_match(term)` once per mention.
template <typename Term, typename Callback>
void scan_terms(const std::vector<Token>& tokens, const std::map<Term, std::vector<std::string>>& table,
                bool allow_plural, Callback on_match) {
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t best_len = 0;
    const Term* best = nullptr;
    for (const auto& [term, forms] : table) {
      for (const std::string& form : forms) {
        const std::size_t len = match_at(tokens, i, form, allow_plural);
        if (len > best_len) {
          best_len = len;
          best = &term;
        }
      }
    }
    if (best != nullptr) {
      on_match(*best);
      i += best_len;
    } else {
      ++i;
    }
  }
}

std::optional<int> token_number(const Token& token, const SynonymTable& table) {
  if (!token.folded.empty() && std::all_of(token.folded.begin(), token.folded.end(),
                                           [](unsigned char c) { return std::isdigit(c) != 0; })) {
    if (token.folded.size() > 9) return std::nullopt;
    return std::stoi(token.folded);
  }
  for (const auto& [value, forms] : table.number_words) {
    for (const std::string& form : forms) {
      if (token.folded == lower(form)) return value;
    }
  }
  return std::nullopt;
}

template <typename Term>
void check_bucket_injective(const std::map<Term, std::vector<std::string>>& table, std::string_view category) {
  std::map<std::string, Term> seen;
  for (const auto& [term, forms] : table) {
    for (const std::string& form : forms) {
      const std::string key = is_case_sensitive(split_words(form)) ? form : lower(form);
      auto [it, inserted] = seen.emplace(key, term);
      if (!inserted && !(it->second == term)) {
        throw std::invalid_argument("synonym '" + form + "' maps to two " + std::string(category) + " terms");
      }
    }
  }
}

template <typename Term, typename Parse>
std::map<Term, std::vector<std::string>> read_bucket(const nlohmann::json& j, Parse parse, std::string_view what) {
  std::map<Term, std::vector<std::string>> out;
  for (const auto& [key, forms] : j.items()) {
    const auto term = parse(key);
    if (!term) throw std::invalid_argument("unknown " + std::string(what) + " '" + key + "' in synonym table");
    out[*term] = forms.template get<std::vector<std::string>>();
  }
  return out;
}

template <typename Term, typename Name>
nlohmann::json write_bucket(const std::map<Term, std::vector<std::string>>& table, Name name) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [term, forms] : table) j[std::string(name(term))] = forms;
  return j;
}

SynonymTable build_defaults() {
  SynonymTable t;
  t.relations = {
      {Relation::Front, {"in front", "front", "forward", "ahead"}},
      {Relation::Back, {"behind", "back", "backward", "rear"}},
      {Relation::Above, {"above", "up", "over", "on top"}},
      {Relation::Below, {"below", "under", "down", "beneath"}},
      {Relation::Left, {"left"}},
      {Relation::Right, {"right"}},
  };
  t.colors = {
      {BlockColor::Red, {"red", "reddish"}},          {BlockColor::Orange, {"orange", "orangish"}},
      {BlockColor::Yellow, {"yellow", "yellowish"}},  {BlockColor::Green, {"green", "greenish"}},
      {BlockColor::Blue, {"blue", "bluish"}},         {BlockColor::Purple, {"purple", "purplish"}},
  };
  t.shapes = {
      {ShapeKind::Row, {"row", "line"}},
      {ShapeKind::Column, {"column"}},
      {ShapeKind::Tower, {"tower", "rectangular prism", "pillar"}},
      {ShapeKind::Plane, {"plane", "platform", "rectangle", "wall", "square", "ring", "O"}},
      {ShapeKind::Cube, {"cube"}},
  };
  t.vertical_modifiers = {"vertical", "vertically", "upright"};
  t.directions = {
      {MoveDirection::Forward, {"forward", "forwards", "ahead", "straight"}},
      {MoveDirection::Backward, {"back", "backward", "backwards"}},
      {MoveDirection::Up, {"up", "upward", "upwards"}},
      {MoveDirection::Down, {"down", "downward", "downwards"}},
      {MoveDirection::Left, {"left"}},
      {MoveDirection::Right, {"right"}},
  };
  t.number_words = {{1, {"one"}}, {2, {"two"}},   {3, {"three"}}, {4, {"four"}}, {5, {"five"}},
                    {6, {"six"}}, {7, {"seven"}}, {8, {"eight"}}, {9, {"nine"}}, {10, {"ten"}}};
  t.check_injective();
  return t;
}

}  // namespace

AnswerSpan extract_ans_span(std::string_view text) {
  const std::size_t close = text.rfind(kCloseTag);
  if (close != std::string_view::npos) {
    const std::size_t open = text.substr(0, close).rfind(kOpenTag);
    if (open != std::string_view::npos) {
      const std::size_t begin = open + kOpenTag.size();
      return {trim(text.substr(begin, close - begin)), AnswerSpan::Source::TaggedSpan};
    }
  }
  return {std::string(text), AnswerSpan::Source::WholeText};
}

const SynonymTable& SynonymTable::defaults() {
  static const SynonymTable table = build_defaults();
  return table;
}

void SynonymTable::check_injective() const {
  check_bucket_injective(relations, "relation");
  check_bucket_injective(colors, "color");
  check_bucket_injective(shapes, "shape");
  check_bucket_injective(directions, "direction");
  check_bucket_injective(number_words, "number");
}

// Buckets named in the file replace the built-in lists for those terms only.
template <typename K>
void merge_into(std::map<K, std::vector<std::string>>& into, std::map<K, std::vector<std::string>> from) {
  for (auto& [key, forms] : from) into[key] = std::move(forms);
}

SynonymTable SynonymTable::from_json(const nlohmann::json& j) {
  SynonymTable t = defaults();
  if (j.contains("relations")) {
    merge_into(t.relations, read_bucket<Relation>(
                                j.at("relations"), [](const std::string& s) { return parse_relation(s); }, "relation"));
  }
  if (j.contains("colors")) {
    merge_into(t.colors,
               read_bucket<BlockColor>(j.at("colors"), [](const std::string& s) { return parse_color(s); }, "color"));
  }
  if (j.contains("shapes")) {
    merge_into(t.shapes, read_bucket<ShapeKind>(
                             j.at("shapes"), [](const std::string& s) { return parse_shape_kind(s); }, "shape"));
  }
  if (j.contains("vertical_modifiers")) {
    t.vertical_modifiers = j.at("vertical_modifiers").get<std::vector<std::string>>();
  }
  if (j.contains("directions")) {
    merge_into(t.directions,
               read_bucket<MoveDirection>(
                   j.at("directions"), [](const std::string& s) { return parse_move_direction(s); }, "direction"));
  }
  if (j.contains("number_words")) {
    merge_into(t.number_words, read_bucket<int>(
                                   j.at("number_words"),
                                   [](const std::string& s) -> std::optional<int> {
                                     try {
                                       return std::stoi(s);
                                     } catch (const std::exception&) {
                                       return std::nullopt;
                                     }
                                   },
                                   "number"));
  }
  t.check_injective();
  return t;
}

SynonymTable SynonymTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synonym table " + path.string());
  return from_json(nlohmann::json::parse(in));
}

nlohmann::json SynonymTable::to_json() const {
  nlohmann::json j;
  j["relations"] = write_bucket(relations, [](Relation r) { return to_string(r); });
  j["colors"] = write_bucket(colors, [](BlockColor c) { return to_string(c); });
  j["shapes"] = write_bucket(shapes, [](ShapeKind k) { return to_string(k); });
  j["vertical_modifiers"] = vertical_modifiers;
  j["directions"] = write_bucket(directions, [](MoveDirection d) { return to_string(d); });
  j["number_words"] = write_bucket(number_words, [](int n) { return std::to_string(n); });
  return j;
}

std::optional<Coordinate> parse_coordinate(std::string_view span) {
  const std::string text = normalize_minus(span);

  static const std::regex tuple(R"([\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?[\)\]])");
  std::optional<Coordinate> found;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tuple); it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    Coordinate c{std::stoi(m[1].str()), std::stoi(m[2].str()), 0};
    if (m[3].matched) c.z = std::stoi(m[3].str());
    found = c;
  }
  if (found) return found;

  // Labeled forms: "x: 7, y: 0, z: 10", "{'x': 7, ...}", "x = 7".
  auto labeled = [&](char axis) -> std::optional<int> {
    const std::regex re(std::string("(?:^|[^A-Za-z])") + axis + R"(['"]?\s*[:=]\s*(-?\d+))",
                        std::regex::icase);
    std::optional<int> value;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
      value = std::stoi((*it)[1].str());
    }
    return value;
  };
  const auto x = labeled('x');
  const auto y = labeled('y');
  if (!x || !y) return std::nullopt;
  return Coordinate{*x, *y, labeled('z').value_or(0)};
}

std::optional<std::vector<Step>> parse_instructions(std::string_view span, const SynonymTable& table) {
  std::string text = lower(span);
  static const std::regex separators(R"(\s+(?:and|then)\s+|[,;\n])");
  text = std::regex_replace(text, separators, "|");

  std::vector<Step> steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('|', start);
    if (end == std::string::npos) end = text.size();
    const std::vector<Token> tokens = tokenize(std::string_view(text).substr(start, end - start));
    start = end + 1;

    std::vector<MoveDirection> directions;
    std::vector<int> numbers;
    for (const Token& token : tokens) {
      for (const auto& [direction, forms] : table.directions) {
        if (std::find(forms.begin(), forms.end(), token.folded) != forms.end()) directions.push_back(direction);
      }
      if (auto n = token_number(token, table)) numbers.push_back(*n);
    }
    if (directions.empty() && numbers.empty()) continue;
    if (directions.size() != 1 || numbers.size() != 1 || numbers[0] < 1) return std::nullopt;
    steps.push_back({directions[0], numbers[0]});
  }
  if (steps.empty()) return std::nullopt;
  return steps;
}

RelationSet extract_relations(std::string_view text, const SynonymTable& table) {
  RelationSet out;
  scan_terms(tokenize(text), table.relations, false, [&](Relation r) { out.insert(r); });
  return out;
}

int count_color_terms(std::string_view text, BlockColor color, const SynonymTable& table) {
  int count = 0;
  scan_terms(tokenize(text), table.colors, true, [&](BlockColor c) { count += c == color ? 1 : 0; });
  return count;
}

std::set<int> extract_numbers(std::string_view text, const SynonymTable& table) {
  std::set<int> out;
  static const std::regex digits(R"(\d+)");
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), digits); it != std::sregex_iterator(); ++it) {
    const std::string value = it->str();
    if (value.size() <= 9) out.insert(std::stoi(value));
  }
  for (const Token& token : tokenize(text)) {
    for (const auto& [value, forms] : table.number_words) {
      for (const std::string& form : forms) {
        if (token.folded == lower(form)) out.insert(value);
      }
    }
  }
  return out;
}

ShapeCounts extract_shape_mentions(std::string_view text, const SynonymTable& table) {
  ShapeCounts counts{};
  // Clauses: commas, sentence ends and the word "and" bound the scope of the
  // vertical-modifier rule.
  static const std::regex clause_break(R"([,.;:!?\n]|\band\b)", std::regex::icase);
  const std::string s(text);
  std::vector<std::string> clauses;
  std::sregex_token_iterator it(s.begin(), s.end(), clause_break, -1);
  for (; it != std::sregex_token_iterator(); ++it) clauses.push_back(it->str());

  for (const std::string& clause : clauses) {
    const std::vector<Token> tokens = tokenize(clause);
    bool vertical = false;
    for (const Token& token : tokens) {
      for (const std::string& modifier : table.vertical_modifiers) {
        if (token.folded == lower(modifier)) vertical = true;
      }
    }
    scan_terms(tokens, table.shapes, true, [&](ShapeKind k) {
      at(counts, (k == ShapeKind::Row && vertical) ? ShapeKind::Column : k) += 1;
    });
  }
  return counts;
}

std::string render_instructions(std::span<const Step> steps) {
  std::string out;
  for (const Step& step : steps) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(step.direction)) + " " + std::to_string(step.length);
  }
  return out;
}

std::string render_relations(RelationSet set, Perspective perspective) {
  static constexpr std::array<Relation, 6> kOrder{Relation::Front, Relation::Back,  Relation::Left,
                                                  Relation::Right, Relation::Above, Relation::Below};
  std::vector<std::string> parts;
  for (Relation r : kOrder) {
    if (!set.contains(r)) continue;
    const bool me = perspective == Perspective::Viewer;
    switch (r) {
      case Relation::Front: parts.push_back(me ? "in front of me" : "in front of"); break;
      case Relation::Back: parts.push_back(me ? "behind me" : "behind"); break;
      case Relation::Left: parts.push_back(me ? "to my left" : "to the left of"); break;
      case Relation::Right: parts.push_back(me ? "to my right" : "to the right of"); break;
      case Relation::Above: parts.push_back(me ? "above me" : "above"); break;
      case Relation::Below: parts.push_back(me ? "below me" : "below"); break;
    }
  }
  if (parts.empty()) return perspective == Perspective::Viewer ? "at my position" : "at the same place as";
  if (parts.size() == 1) return parts[0];
  if (parts.size() == 2) return parts[0] + " and " + parts[1];
  std::string out;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) out += parts[i] + ", ";
  return out + "and " + parts.back();
}

}  // namespace gridbench
