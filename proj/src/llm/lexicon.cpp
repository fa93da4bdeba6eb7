#include "polarsim/llm/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "polarsim/core/error.hpp"

namespace polarsim {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Lexicon::Lexicon(std::vector<std::string> pro, std::vector<std::string> contra)
    : pro_(std::move(pro)), contra_(std::move(contra)) {
  for (auto& w : pro_) w = lower(w);
  for (auto& w : contra_) w = lower(w);
  if (pro_.empty() || contra_.empty()) {
    throw Error(ErrorCode::InvalidConfig, "lexicon needs at least one keyword per side");
  }
}

Lexicon Lexicon::builtin() {
  return Lexicon({"support", "benefit", "fair", "security", "dignity", "freedom", "empowerment",
                  "solidarity"},
                 {"oppose", "costly", "unaffordable", "burden", "dependency", "wasteful",
                  "inflation", "disincentive"});
}

Lexicon Lexicon::parse(std::string_view text) {
  std::vector<std::string> pro;
  std::vector<std::string> contra;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string_view word = trim(line.substr(1));
    if (word.empty() || (line.front() != '+' && line.front() != '-')) {
      throw Error(ErrorCode::InvalidConfig,
                  "lexicon line " + std::to_string(line_no) + ": expected '+word' or '-word'");
    }
    (line.front() == '+' ? pro : contra).emplace_back(word);
  }
  return Lexicon(std::move(pro), std::move(contra));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Lexicon::Hits Lexicon::count(std::string_view text) const {
  Hits hits;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    hits.pro += static_cast<int>(std::count(pro_.begin(), pro_.end(), word));
    hits.contra += static_cast<int>(std::count(contra_.begin(), contra_.end(), word));
    word.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '\'' || c == '-') {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return hits;
}

double Lexicon::score(std::string_view text) const {
  const Hits h = count(text);
  return static_cast<double>(h.pro - h.contra) / std::max(1, h.pro + h.contra);
}

}  // namespace polarsim
