#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "bp/errors.hpp"

namespace bp {

// ISO 639-3 language code plus ISO 15924 script code. The canonical string
// form is "<language>_<script>" with the script lowercased, e.g. "mya_mymr".
// Script codes are matched case-insensitively on input.
class LanguageTag {
public:
  // "und_zzzz": undetermined language, uncoded script.
  LanguageTag() : language_("und"), script_("zzzz") {}

  LanguageTag(std::string_view language, std::string_view script);

  // Parses "lang_script" (e.g. "kat_geor", "kat_Geor").
  static LanguageTag parse(std::string_view text);

  const std::string& language() const { return language_; }
  const std::string& script() const { return script_; }  // lowercased
  std::string canonical() const { return language_ + "_" + script_; }

  auto operator<=>(const LanguageTag&) const = default;

private:
  std::string language_;
  std::string script_;
};

}  // namespace bp
