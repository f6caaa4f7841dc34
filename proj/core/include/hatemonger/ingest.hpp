#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatemonger/graph.hpp"

namespace hm {

/// Per-user post hate scores in [0,1], grouped by user in order of first
/// appearance and, within a user, in file order.
class ScoreTable {
 public:
  /// Appends one post. Throws InputError if `score` is outside [0,1].
  void add(std::string_view user, std::string_view post_id, double score);
  /// Registers a user with no posts.
  void register_user(std::string_view user);

  std::size_t user_count() const { return users_.size(); }
  std::size_t total_posts() const;
  std::span<const std::string> users() const { return users_.names(); }
  std::optional<std::size_t> find(std::string_view user) const;

  std::span<const double> scores(std::size_t user_index) const {
    return posts_[user_index].scores;
  }
  std::span<const std::string> post_ids(std::size_t user_index) const {
    return posts_[user_index].post_ids;
  }

  friend bool operator==(const ScoreTable& a, const ScoreTable& b);

 private:
  struct Posts {
    std::vector<double> scores;
    std::vector<std::string> post_ids;
  };
  IdMap users_;
  std::vector<Posts> posts_;
};

/// Parses `user_id,post_id,score` lines. Blank and `#` lines are skipped.
ScoreTable parse_scores(std::istream& in);

/// Writes the table back as `user_id,post_id,score` with 17 significant digits.
void write_scores(std::ostream& out, const ScoreTable& table);

/// Ground-truth user labels; 1 marks a hate-monger.
class LabelSet {
 public:
  /// Inserts a label. A repeated user with the same label is accepted; a
  /// conflicting one throws InputError.
  void set(std::string_view user, int label);
  std::optional<int> get(std::string_view user) const;
  std::size_t size() const { return users_.size(); }
  std::span<const std::string> users() const { return users_.names(); }
  int label_at(std::size_t i) const { return labels_[i]; }

 private:
  IdMap users_;
  std::vector<std::int8_t> labels_;
};

/// Parses `user_id,label` lines with label in {0,1}.
LabelSet parse_labels(std::istream& in);

void write_labels(std::ostream& out, const LabelSet& labels);

}  // namespace hm
