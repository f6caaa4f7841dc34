#include "hatemonger/ingest.hpp"

#include <istream>
#include <ostream>

#include "hatemonger/error.hpp"
#include "hatemonger/report.hpp"
#include "text.hpp"

namespace hm {

namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

void ScoreTable::add(std::string_view user, std::string_view post_id, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw InputError("score out of range [0,1]: " + format_number(score));
  }
  register_user(user);
  auto& p = posts_[*users_.find(user)];
  p.scores.push_back(score);
  p.post_ids.emplace_back(post_id);
}

void ScoreTable::register_user(std::string_view user) {
  if (user.empty()) throw InputError("empty user id");
  const NodeId id = users_.intern(user);
  if (id == posts_.size()) posts_.emplace_back();
}

std::size_t ScoreTable::total_posts() const {
  std::size_t n = 0;
  for (const auto& p : posts_) n += p.scores.size();
  return n;
}

std::optional<std::size_t> ScoreTable::find(std::string_view user) const {
  if (auto id = users_.find(user)) return *id;
  return std::nullopt;
}

bool operator==(const ScoreTable& a, const ScoreTable& b) {
  if (a.user_count() != b.user_count()) return false;
  for (std::size_t i = 0; i < a.user_count(); ++i) {
    if (a.users()[i] != b.users()[i]) return false;
    if (a.posts_[i].scores != b.posts_[i].scores) return false;
    if (a.posts_[i].post_ids != b.posts_[i].post_ids) return false;
  }
  return true;
}

ScoreTable parse_scores(std::istream& in) {
  ScoreTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3) {
      throw InputError(at_line(line_no) + "expected 'user_id,post_id,score'");
    }
    if (fields[0].empty()) throw InputError(at_line(line_no) + "empty user id");
    const auto score = detail::parse_double(fields[2]);
    if (!score) {
      throw InputError(at_line(line_no) + "non-numeric score '" + std::string(fields[2]) + "'");
    }
    if (!(*score >= 0.0 && *score <= 1.0)) {
      throw InputError(at_line(line_no) + "score out of range [0,1]: " + std::string(fields[2]));
    }
    table.add(fields[0], fields[1], *score);
  }
  return table;
}

void write_scores(std::ostream& out, const ScoreTable& table) {
  for (std::size_t u = 0; u < table.user_count(); ++u) {
    const auto& user = table.users()[u];
    const auto scores = table.scores(u);
    const auto ids = table.post_ids(u);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out << user << ',' << ids[i] << ',' << format_number(scores[i]) << '\n';
    }
  }
}

void LabelSet::set(std::string_view user, int label) {
  if (user.empty()) throw InputError("empty user id");
  if (label != 0 && label != 1) throw InputError("label must be 0 or 1");
  if (auto id = users_.find(user)) {
    if (labels_[*id] != label) {
      throw InputError("conflicting labels for user '" + std::string(user) + "'");
    }
    return;
  }
  users_.intern(user);
  labels_.push_back(static_cast<std::int8_t>(label));
}

std::optional<int> LabelSet::get(std::string_view user) const {
  if (auto id = users_.find(user)) return labels_[*id];
  return std::nullopt;
}

LabelSet parse_labels(std::istream& in) {
  LabelSet labels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 2) throw InputError(at_line(line_no) + "expected 'user_id,label'");
    if (fields[0].empty()) throw InputError(at_line(line_no) + "empty user id");
    if (fields[1] != "0" && fields[1] != "1") {
      throw InputError(at_line(line_no) + "label must be 0 or 1, got '" +
                       std::string(fields[1]) + "'");
    }
    try {
      labels.set(fields[0], fields[1] == "1" ? 1 : 0);
    } catch (const InputError& e) {
      throw InputError(at_line(line_no) + e.what());
    }
  }
  return labels;
}

void write_labels(std::ostream& out, const LabelSet& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels.users()[i] << ',' << labels.label_at(i) << '\n';
  }
}

}  // namespace hm
