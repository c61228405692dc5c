#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sivhs {

// (-1)^exponent. Every sign in the library is produced here.
int sign_of(long exponent);

// Sign of reordering graded factors: entry k of perm names the original
// position placed at k. Counts crossings of odd pairs.
int koszul_sign(const std::vector<int>& parities, const std::vector<int>& perm);

// Number of sign_of evaluations on this thread.
std::uint64_t sign_call_count();

// Replaces the sign function on this thread for the lifetime of the guard.
class ScopedSignHook {
public:
    explicit ScopedSignHook(std::function<int(long)> hook);
    ~ScopedSignHook();
    ScopedSignHook(const ScopedSignHook&) = delete;
    ScopedSignHook& operator=(const ScopedSignHook&) = delete;

private:
    std::function<int(long)> hook_;
    std::function<int(long)>* previous_;
};

} // namespace sivhs
