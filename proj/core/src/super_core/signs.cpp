#include "sivhs/signs.hpp"

#include "sivhs/errors.hpp"

namespace sivhs {

namespace {
thread_local std::function<int(long)>* active_hook = nullptr;
thread_local std::uint64_t calls = 0;
}

int sign_of(long exponent) {
    ++calls;
    if (active_hook) return (*active_hook)(exponent);
    return (exponent % 2 == 0) ? 1 : -1;
}

int koszul_sign(const std::vector<int>& parities, const std::vector<int>& perm) {
    const auto n = parities.size();
    if (perm.size() != n) throw ArgumentError("super_core", "permutation length mismatch");
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p])
            throw ArgumentError("super_core", "malformed permutation");
        seen[p] = 1;
    }
    long crossings = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (perm[i] > perm[j] && (parities[perm[i]] & 1) && (parities[perm[j]] & 1)) ++crossings;
    return sign_of(crossings);
}

std::uint64_t sign_call_count() { return calls; }

ScopedSignHook::ScopedSignHook(std::function<int(long)> hook)
    : hook_(std::move(hook)), previous_(active_hook) {
    active_hook = &hook_;
}

ScopedSignHook::~ScopedSignHook() { active_hook = previous_; }

} // namespace sivhs
