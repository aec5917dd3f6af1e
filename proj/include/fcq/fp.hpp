#ifndef FCQ_FP_HPP
#define FCQ_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fcq {

/// Thrown when a read or write falls outside the stored h-window.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for arguments outside a function's domain (non-units, bad shapes).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool supported_prime(int p) { return p == 3 || p == 5 || p == 7; }

inline void require_prime(int p) {
    if (!supported_prime(p)) throw DomainError("p must be one of 3, 5, 7; got " + std::to_string(p));
}

// Small prime field helpers. Values are kept in [0, p).
inline uint32_t fp_norm(long long a, int p) {
    long long r = a % p;
    return static_cast<uint32_t>(r < 0 ? r + p : r);
}
inline uint32_t fp_add(uint32_t a, uint32_t b, int p) { return (a + b) % p; }
inline uint32_t fp_sub(uint32_t a, uint32_t b, int p) { return (a + p - b) % p; }
inline uint32_t fp_mul(uint32_t a, uint32_t b, int p) { return (a * b) % p; }
inline uint32_t fp_neg(uint32_t a, int p) { return (p - a) % p; }

inline uint32_t fp_pow(uint32_t a, unsigned e, int p) {
    uint32_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline uint32_t fp_inv(uint32_t a, int p) {
    if (a % p == 0) throw DomainError("division by zero in F_p");
    return fp_pow(a, p - 2, p);
}

/// n! mod p (zero once n >= p).
inline uint32_t fp_fact(int n, int p) {
    uint32_t r = 1;
    for (int i = 2; i <= n; ++i) r = fp_mul(r, static_cast<uint32_t>(i % p), p);
    return r;
}

inline uint32_t fp_binom(int n, int k, int p) {
    if (k < 0 || k > n) return 0;
    // Lucas: digits are < p for the sizes used here, fall back to Lucas generally.
    uint32_t r = 1;
    while (n || k) {
        int a = n % p, b = k % p;
        if (b > a) return 0;
        r = fp_mul(r, fp_mul(fp_fact(a, p), fp_inv(fp_mul(fp_fact(b, p), fp_fact(a - b, p), p), p), p), p);
        n /= p;
        k /= p;
    }
    return r;
}

/// Falling factorial n(n-1)...(n-k+1) mod p.
inline uint32_t fp_falling(int n, int k, int p) {
    uint32_t r = 1;
    for (int i = 0; i < k; ++i) r = fp_mul(r, fp_norm(n - i, p), p);
    return r;
}

}  // namespace fcq

#endif
