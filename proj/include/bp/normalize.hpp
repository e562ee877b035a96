#pragma once

#include <string>
#include <string_view>

namespace bp {

// Canonical composition (NFC) of valid UTF-8 text. Off the loading path by
// default: byte and character counts are taken over text as distributed,
// and normalizing first would change them. Opt in via the CLI's
// --normalize nfc.
std::string nfc(std::string_view text);

}  // namespace bp
