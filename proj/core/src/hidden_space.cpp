#include "rbminit/hidden_space.hpp"

#include <algorithm>
#include <cctype>

#include "rbminit/errors.hpp"

namespace rbminit {

std::string_view to_string(HiddenSpace hidden) noexcept {
  return hidden == HiddenSpace::Ising ? "ising" : "binary";
}

HiddenSpace parse_hidden_space(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "ising") {
    return HiddenSpace::Ising;
  }
  if (lower == "binary") {
    return HiddenSpace::Binary;
  }
  throw DomainError("unknown hidden space '" + std::string(text) + "' (expected ising or binary)");
}

}  // namespace rbminit
