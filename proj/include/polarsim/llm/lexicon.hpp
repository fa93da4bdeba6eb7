#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace polarsim {

/// Stance keyword lists used by the offline gateway. File format: one
/// keyword per line, prefixed '+' (pro) or '-' (contra); blank lines and
/// lines starting with '#' are ignored.
class Lexicon {
 public:
  Lexicon(std::vector<std::string> pro, std::vector<std::string> contra);

  static Lexicon builtin();
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::string_view text);

  const std::vector<std::string>& pro() const noexcept { return pro_; }
  const std::vector<std::string>& contra() const noexcept { return contra_; }
  const std::vector<std::string>& for_side(int side) const noexcept {
    return side > 0 ? pro_ : contra_;
  }

  struct Hits {
    int pro = 0;
    int contra = 0;
  };
  /// Whole-word, case-insensitive matches.
  Hits count(std::string_view text) const;

  /// (pro - contra) / max(1, pro + contra).
  double score(std::string_view text) const;

 private:
  std::vector<std::string> pro_;
  std::vector<std::string> contra_;
};

}  // namespace polarsim
