#include "jitlab/vcs/diff_parser.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "jitlab/core/error.hpp"
#include "jitlab/vcs/line_kind.hpp"

namespace jitlab::vcs {
namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

// Reads one path token (quoted or not) starting at `pos`; advances `pos`.
std::string read_path_token(std::string_view line, std::size_t& pos, bool to_end) {
  if (pos < line.size() && line[pos] == '"') {
    std::size_t end = pos + 1;
    while (end < line.size() && line[end] != '"') {
      if (line[end] == '\\') ++end;
      ++end;
    }
    std::string out = unquote_git_path(line.substr(pos, end + 1 - pos));
    pos = std::min(line.size(), end + 1);
    return out;
  }
  if (to_end) {
    std::string out(line.substr(pos));
    pos = line.size();
    return out;
  }
  const auto space = line.find(' ', pos);
  std::string out(line.substr(pos, space - pos));
  pos = space == std::string_view::npos ? line.size() : space;
  return out;
}

std::string strip_prefix(std::string path, std::string_view prefix) {
  if (starts_with(path, prefix)) path.erase(0, prefix.size());
  return path;
}

// "diff --git a/X b/Y" where X == Y (the only case git leaves unresolved).
std::optional<std::pair<std::string, std::string>> header_paths(std::string_view line) {
  constexpr std::string_view kPrefix = "diff --git ";
  std::string_view rest = line.substr(kPrefix.size());
  if (!rest.empty() && rest.front() == '"') {
    std::size_t pos = 0;
    std::string a = read_path_token(rest, pos, false);
    while (pos < rest.size() && rest[pos] == ' ') ++pos;
    std::string b = read_path_token(rest, pos, true);
    return std::make_pair(strip_prefix(a, "a/"), strip_prefix(b, "b/"));
  }
  if (rest.size() < 5 || (rest.size() - 5) % 2 != 0) return std::nullopt;  // "a/" + " b/"
  const std::size_t half = (rest.size() - 5) / 2;
  std::string_view a = rest.substr(0, half + 2);
  std::string_view b = rest.substr(half + 3);
  if (!starts_with(a, "a/") || !starts_with(b, "b/") || a.substr(2) != b.substr(2)) return std::nullopt;
  return std::make_pair(std::string(a.substr(2)), std::string(b.substr(2)));
}

bool parse_range(std::string_view text, int& start, int& count) {
  const auto comma = text.find(',');
  auto parse = [](std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  if (comma == std::string_view::npos) {
    count = 1;
    return parse(text, start);
  }
  return parse(text.substr(0, comma), start) && parse(text.substr(comma + 1), count);
}

class Builder {
 public:
  void begin_file(std::string_view header) {
    finish_file();
    current_.emplace();
    if (auto paths = header_paths(header)) {
      current_->old_path = paths->first;
      current_->path = paths->second;
    }
  }

  void header_line(std::string_view line) {
    if (!current_) return;
    FileDelta& d = *current_;
    if (starts_with(line, "new file mode")) {
      d.status = ChangeStatus::kAdded;
    } else if (starts_with(line, "deleted file mode")) {
      d.status = ChangeStatus::kDeleted;
    } else if (starts_with(line, "rename from ")) {
      std::size_t pos = 12;
      d.old_path = read_path_token(line, pos, true);
      d.status = ChangeStatus::kRenamed;
    } else if (starts_with(line, "rename to ")) {
      std::size_t pos = 10;
      d.path = read_path_token(line, pos, true);
      d.status = ChangeStatus::kRenamed;
    } else if (starts_with(line, "--- ")) {
      std::size_t pos = 4;
      std::string p = read_path_token(line, pos, true);
      if (p != "/dev/null") d.old_path = strip_prefix(p, "a/");
    } else if (starts_with(line, "+++ ")) {
      std::size_t pos = 4;
      std::string p = read_path_token(line, pos, true);
      if (p != "/dev/null") d.path = strip_prefix(p, "b/");
    } else if (starts_with(line, "Binary files ") || starts_with(line, "GIT binary patch")) {
      d.binary = true;
      if (starts_with(line, "Binary files ") && d.path.empty()) {
        // "Binary files a/X and b/Y differ"
        std::string_view body = line.substr(13);
        const auto sep = body.find(" and ");
        const auto tail = body.rfind(" differ");
        if (sep != std::string_view::npos && tail != std::string_view::npos && tail > sep) {
          std::string a(body.substr(0, sep));
          std::string b(body.substr(sep + 5, tail - sep - 5));
          if (a != "/dev/null") d.old_path = strip_prefix(a, "a/");
          if (b != "/dev/null") d.path = strip_prefix(b, "b/");
        }
      }
    }
  }

  void begin_hunk(std::string_view line) {
    if (!current_) throw DataError("diff: hunk outside a file section");
    flush_hunk();
    // "@@ -a[,b] +c[,d] @@ ..."
    const auto minus = line.find('-');
    const auto plus = line.find('+', minus);
    const auto close = line.find(" @@", plus);
    if (minus == std::string_view::npos || plus == std::string_view::npos || close == std::string_view::npos) {
      throw DataError("diff: malformed hunk header: " + std::string(line));
    }
    int old_start = 0, old_count = 0, new_start = 0, new_count = 0;
    if (!parse_range(line.substr(minus + 1, plus - minus - 2), old_start, old_count) ||
        !parse_range(line.substr(plus + 1, close - plus - 1), new_start, new_count)) {
      throw DataError("diff: malformed hunk header: " + std::string(line));
    }
    old_next_ = old_start;
    new_next_ = new_start;
    old_remaining_ = old_count;
    new_remaining_ = new_count;
  }

  bool in_hunk() const { return old_remaining_ > 0 || new_remaining_ > 0; }

  void hunk_line(std::string_view line) {
    const char tag = line.empty() ? ' ' : line.front();
    std::string_view text = line.empty() ? line : line.substr(1);
    if (tag == '-') {
      removed_numbers_.push_back(old_next_++);
      removed_text_.emplace_back(text);
      --old_remaining_;
    } else if (tag == '+') {
      added_numbers_.push_back(new_next_++);
      added_text_.emplace_back(text);
      --new_remaining_;
    } else if (tag == ' ') {
      flush_hunk();
      ++old_next_;
      ++new_next_;
      --old_remaining_;
      --new_remaining_;
    }
  }

  std::vector<FileDelta> finish() {
    finish_file();
    return std::move(files_);
  }

 private:
  void flush_hunk() {
    if (!current_ || (removed_text_.empty() && added_text_.empty())) return;
    const std::string& lang_path = current_->path.empty() ? current_->old_path : current_->path;
    std::vector<LineKind> removed_kinds, added_kinds;
    classify_hunk(comment_style_for(lang_path), removed_text_, added_text_, removed_kinds, added_kinds);
    for (std::size_t i = 0; i < removed_numbers_.size(); ++i) {
      current_->deleted_line_numbers.push_back(removed_numbers_[i]);
      current_->deleted_line_kinds[removed_numbers_[i]] = removed_kinds[i];
    }
    for (std::size_t i = 0; i < added_numbers_.size(); ++i) {
      current_->added_line_numbers.push_back(added_numbers_[i]);
      current_->line_kinds[added_numbers_[i]] = added_kinds[i];
    }
    removed_numbers_.clear();
    removed_text_.clear();
    added_numbers_.clear();
    added_text_.clear();
  }

  void finish_file() {
    flush_hunk();
    old_remaining_ = new_remaining_ = 0;
    if (!current_) return;
    FileDelta d = std::move(*current_);
    current_.reset();
    if (d.status == ChangeStatus::kAdded) {
      d.old_path.clear();
    } else if (d.status == ChangeStatus::kDeleted) {
      d.path = d.old_path;
    } else if (d.old_path.empty()) {
      d.old_path = d.path;
    }
    if (d.path.empty()) throw DataError("diff: file section without a path");
    if (d.binary) {
      d.added_line_numbers.clear();
      d.deleted_line_numbers.clear();
      d.line_kinds.clear();
      d.deleted_line_kinds.clear();
    }
    std::sort(d.added_line_numbers.begin(), d.added_line_numbers.end());
    std::sort(d.deleted_line_numbers.begin(), d.deleted_line_numbers.end());
    d.lines_added = static_cast<int>(d.added_line_numbers.size());
    d.lines_deleted = static_cast<int>(d.deleted_line_numbers.size());
    files_.push_back(std::move(d));
  }

  std::optional<FileDelta> current_;
  std::vector<FileDelta> files_;
  int old_next_ = 0, new_next_ = 0, old_remaining_ = 0, new_remaining_ = 0;
  std::vector<int> removed_numbers_, added_numbers_;
  std::vector<std::string> removed_text_, added_text_;
};

}  // namespace

std::string unquote_git_path(std::string_view quoted) {
  if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') return std::string(quoted);
  std::string out;
  for (std::size_t i = 1; i + 1 < quoted.size(); ++i) {
    char c = quoted[i];
    if (c != '\\' || i + 2 >= quoted.size()) {
      out.push_back(c);
      continue;
    }
    const char e = quoted[++i];
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'a': out.push_back('\a'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 'v': out.push_back('\v'); break;
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      default:
        if (e >= '0' && e <= '7' && i + 2 < quoted.size()) {
          const int value = (e - '0') * 64 + (quoted[i + 1] - '0') * 8 + (quoted[i + 2] - '0');
          out.push_back(static_cast<char>(value));
          i += 2;
        } else {
          out.push_back(e);
        }
    }
  }
  return out;
}

std::vector<FileDelta> parse_unified_diff(std::string_view diff_text) {
  Builder builder;
  std::size_t pos = 0;
  while (pos < diff_text.size()) {
    auto eol = diff_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = diff_text.size();
    std::string_view line = diff_text.substr(pos, eol - pos);
    pos = eol + 1;

    if (builder.in_hunk()) {
      if (!line.empty() && line.front() == '\\') continue;  // "\ No newline at end of file"
      builder.hunk_line(line);
      continue;
    }
    if (starts_with(line, "diff --git ")) {
      builder.begin_file(line);
    } else if (starts_with(line, "@@ ")) {
      builder.begin_hunk(line);
    } else if (!line.empty() && line.front() == '\\') {
      continue;
    } else {
      builder.header_line(line);
    }
  }
  return builder.finish();
}

}  // namespace jitlab::vcs
