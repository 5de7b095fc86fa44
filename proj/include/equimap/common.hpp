#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equimap {

/// Thrown for invalid user input: malformed documents, bad moduli,
/// mismatched dimensions. The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

enum class GroupKind { PTorus, Torus };

inline bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(std::uint32_t p) {
    if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
}

} // namespace equimap
