#include "jitlab/vcs/line_kind.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <unordered_map>

#include "jitlab/core/error.hpp"

namespace jitlab::vcs {
namespace {

const CommentStyle kNone{};
const CommentStyle kCFamily{{"//"}, "/*", "*/", true, true};
const CommentStyle kRustLike{{"//"}, "/*", "*/", true, false};
const CommentStyle kHash{{"#"}, "", "", false, true};
const CommentStyle kDashDash{{"--"}, "", "", false, true};
const CommentStyle kSemicolon{{";"}, "", "", false, false};
const CommentStyle kPercent{{"%"}, "", "", false, false};
const CommentStyle kMarkup{{}, "<!--", "-->", false, false};
const CommentStyle kCss{{}, "/*", "*/", true, true};
const CommentStyle kBang{{"!"}, "", "", false, true};

const std::unordered_map<std::string_view, const CommentStyle*>& extension_table() {
  static const std::unordered_map<std::string_view, const CommentStyle*> table = {
      {".c", &kCFamily},     {".h", &kCFamily},     {".cc", &kCFamily},    {".cpp", &kCFamily},
      {".cxx", &kCFamily},   {".hh", &kCFamily},    {".hpp", &kCFamily},   {".hxx", &kCFamily},
      {".ipp", &kCFamily},   {".java", &kCFamily},  {".js", &kCFamily},    {".jsx", &kCFamily},
      {".mjs", &kCFamily},   {".ts", &kCFamily},    {".tsx", &kCFamily},   {".go", &kCFamily},
      {".cs", &kCFamily},    {".swift", &kCFamily}, {".kt", &kCFamily},    {".kts", &kCFamily},
      {".scala", &kCFamily}, {".m", &kCFamily},     {".mm", &kCFamily},    {".php", &kCFamily},
      {".groovy", &kCFamily}, {".dart", &kCFamily}, {".proto", &kCFamily}, {".rs", &kRustLike},
      {".css", &kCss},       {".scss", &kCFamily},  {".less", &kCFamily},  {".py", &kHash},
      {".pyi", &kHash},      {".sh", &kHash},       {".bash", &kHash},     {".zsh", &kHash},
      {".rb", &kHash},       {".pl", &kHash},       {".pm", &kHash},       {".r", &kHash},
      {".yaml", &kHash},     {".yml", &kHash},      {".toml", &kHash},     {".cfg", &kHash},
      {".conf", &kHash},     {".cmake", &kHash},    {".tf", &kHash},       {".ps1", &kHash},
      {".mk", &kHash},       {".sql", &kDashDash},  {".lua", &kDashDash},  {".hs", &kDashDash},
      {".lisp", &kSemicolon}, {".el", &kSemicolon}, {".clj", &kSemicolon}, {".asm", &kSemicolon},
      {".s", &kSemicolon},   {".tex", &kPercent},   {".erl", &kPercent},   {".html", &kMarkup},
      {".htm", &kMarkup},    {".xml", &kMarkup},    {".xsd", &kMarkup},    {".svg", &kMarkup},
      {".f90", &kBang},      {".f95", &kBang},
  };
  return table;
}

const std::unordered_map<std::string_view, const CommentStyle*>& filename_table() {
  static const std::unordered_map<std::string_view, const CommentStyle*> table = {
      {"CMakeLists.txt", &kHash}, {"Makefile", &kHash},    {"makefile", &kHash},
      {"Dockerfile", &kHash},     {"Jenkinsfile", &kCFamily}, {".gitignore", &kHash},
  };
  return table;
}

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view token) {
  return !token.empty() && text.substr(pos, token.size()) == token;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Walks one line, updating block-comment state. Returns whether any code
// character lies outside comments; appends those characters (minus
// whitespace) to `signature` when given.
bool scan_line(const CommentStyle& style, std::string_view line, bool& in_block, std::string* signature) {
  bool has_code = false;
  char quote = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    if (in_block) {
      const auto close = line.find(style.block_close, i);
      if (close == std::string_view::npos) return has_code;
      in_block = false;
      i = close + style.block_close.size();
      continue;
    }
    const char c = line[i];
    if (quote) {
      if (signature) signature->push_back(c);
      if (c == '\\' && i + 1 < line.size()) {
        if (signature) signature->push_back(line[i + 1]);
        i += 2;
        continue;
      }
      if (c == quote) quote = 0;
      ++i;
      continue;
    }
    if (std::any_of(style.line_markers.begin(), style.line_markers.end(),
                    [&](std::string_view m) { return starts_with_at(line, i, m); })) {
      return has_code;
    }
    if (starts_with_at(line, i, style.block_open)) {
      in_block = true;
      i += style.block_open.size();
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) {
      has_code = true;
      if (signature) signature->push_back(c);
      if (c == '"' || (c == '\'' && style.hash_strings_single_quote)) quote = c;
    }
    ++i;
  }
  return has_code;
}

bool is_star_continuation(std::string_view trimmed) {
  if (trimmed.empty() || trimmed.front() != '*') return false;
  return trimmed.size() == 1 || trimmed[1] == ' ' || trimmed[1] == '\t' || trimmed[1] == '/' ||
         trimmed[1] == '*';
}

}  // namespace

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::kCode: return "code";
    case LineKind::kComment: return "comment";
    case LineKind::kWhitespace: return "whitespace";
  }
  return "code";
}

LineKind line_kind_from_string(std::string_view text) {
  if (text == "code") return LineKind::kCode;
  if (text == "comment") return LineKind::kComment;
  if (text == "whitespace") return LineKind::kWhitespace;
  throw DataError("unknown line kind '" + std::string(text) + "'");
}

const CommentStyle& comment_style_for(std::string_view path) {
  const std::filesystem::path p{std::string(path)};
  const std::string name = p.filename().string();
  if (auto it = filename_table().find(name); it != filename_table().end()) return *it->second;
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (auto it = extension_table().find(ext); it != extension_table().end()) return *it->second;
  return kNone;
}

LineKind LineClassifier::classify(std::string_view line) {
  const std::string_view t = trim(line);
  if (t.empty() && !in_block_) return LineKind::kWhitespace;
  if (style_.empty()) return LineKind::kCode;
  if (t.empty()) return LineKind::kComment;  // blank line inside a block comment
  if (!in_block_ && style_.star_continuation && is_star_continuation(t)) {
    // Tail of a block whose opening line was not part of this hunk.
    if (const auto close = t.find(style_.block_close); close != std::string_view::npos) {
      bool dummy = false;
      return scan_line(style_, t.substr(close + style_.block_close.size()), dummy, nullptr)
                 ? LineKind::kCode
                 : LineKind::kComment;
    }
    return LineKind::kComment;
  }
  return scan_line(style_, t, in_block_, nullptr) ? LineKind::kCode : LineKind::kComment;
}

std::string LineClassifier::code_signature(std::string_view line) const {
  std::string sig;
  bool in_block = false;
  scan_line(style_, line, in_block, &sig);
  return sig;
}

std::string strip_whitespace(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

void classify_hunk(const CommentStyle& style, const std::vector<std::string>& removed,
                   const std::vector<std::string>& added, std::vector<LineKind>& removed_kinds,
                   std::vector<LineKind>& added_kinds) {
  removed_kinds.assign(removed.size(), LineKind::kCode);
  added_kinds.assign(added.size(), LineKind::kCode);

  LineClassifier removed_side(style);
  for (std::size_t i = 0; i < removed.size(); ++i) removed_kinds[i] = removed_side.classify(removed[i]);
  LineClassifier added_side(style);
  for (std::size_t i = 0; i < added.size(); ++i) added_kinds[i] = added_side.classify(added[i]);

  std::vector<bool> paired(removed.size(), false);
  std::vector<std::string> removed_stripped(removed.size());
  for (std::size_t j = 0; j < removed.size(); ++j) removed_stripped[j] = strip_whitespace(removed[j]);

  auto pair_by = [&](auto&& key_of_removed, auto&& key_of_added, LineKind as) {
    for (std::size_t i = 0; i < added.size(); ++i) {
      if (added_kinds[i] != LineKind::kCode) continue;
      const std::string key = key_of_added(i);
      if (key.empty()) continue;
      for (std::size_t j = 0; j < removed.size(); ++j) {
        if (paired[j] || removed_kinds[j] != LineKind::kCode) continue;
        if (key_of_removed(j) == key) {
          paired[j] = true;
          added_kinds[i] = as;
          removed_kinds[j] = as;
          break;
        }
      }
    }
  };

  pair_by([&](std::size_t j) { return removed_stripped[j]; },
          [&](std::size_t i) { return strip_whitespace(added[i]); }, LineKind::kWhitespace);
  if (!style.empty()) {
    LineClassifier sig(style);
    std::vector<std::string> removed_sigs(removed.size());
    for (std::size_t j = 0; j < removed.size(); ++j) removed_sigs[j] = sig.code_signature(removed[j]);
    pair_by([&](std::size_t j) { return removed_sigs[j]; },
            [&](std::size_t i) { return sig.code_signature(added[i]); }, LineKind::kComment);
  }
}

}  // namespace jitlab::vcs
