#pragma once

#include <string>
#include <string_view>

namespace rbminit {

/// Sample space of a hidden unit: Ising = {-1, +1}, Binary = {0, 1}.
enum class HiddenSpace { Ising, Binary };

std::string_view to_string(HiddenSpace hidden) noexcept;

/// Accepts "ising" / "binary" (case-insensitive). Throws DomainError otherwise.
HiddenSpace parse_hidden_space(std::string_view text);

}  // namespace rbminit
