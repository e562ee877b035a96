#include "bp/tags.hpp"

#include <cctype>

namespace bp {

namespace {

bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

}  // namespace

LanguageTag::LanguageTag(std::string_view language, std::string_view script) {
  if (language.size() != 3 || !is_ascii_lower(language[0]) || !is_ascii_lower(language[1]) ||
      !is_ascii_lower(language[2])) {
    throw TagError("invalid ISO 639-3 language code '" + std::string(language) +
                   "' (expected three lowercase ASCII letters)");
  }
  if (script.size() != 4 || !is_ascii_alpha(script[0]) || !is_ascii_alpha(script[1]) ||
      !is_ascii_alpha(script[2]) || !is_ascii_alpha(script[3])) {
    throw TagError("invalid ISO 15924 script code '" + std::string(script) +
                   "' (expected four ASCII letters)");
  }
  language_.assign(language);
  script_.reserve(4);
  for (char c : script) script_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
}

LanguageTag LanguageTag::parse(std::string_view text) {
  auto sep = text.find('_');
  if (sep == std::string_view::npos) {
    throw TagError("invalid language tag '" + std::string(text) +
                   "' (expected '<iso639-3>_<iso15924>', e.g. 'eng_latn')");
  }
  return LanguageTag(text.substr(0, sep), text.substr(sep + 1));
}

}  // namespace bp
