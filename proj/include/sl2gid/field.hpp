#ifndef SL2GID_FIELD_HPP
#define SL2GID_FIELD_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sl2gid {

/// Element of GF(p^k), stored as the base-p integer code sum c_i p^i of its
/// polynomial representative c_0 + c_1 t + ... + c_{k-1} t^{k-1}.
/// Elements are only meaningful together with the Field that produced them.
struct Elem {
    std::uint32_t v = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint32_t code) : v(code) {}

    constexpr bool is_zero() const noexcept { return v == 0; }
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

// Remainder of `num` modulo the monic polynomial `den` over GF(p). Both are
// coefficient lists, lowest degree first.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> num, const std::vector<std::uint32_t> &den,
                                           std::uint32_t p)
{
    const std::size_t dd = den.size() - 1;
    while (num.size() > dd) {
        const std::uint32_t lead = num.back();
        const std::size_t shift = num.size() - 1 - dd;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dd; ++i) {
                num[shift + i] = static_cast<std::uint32_t>((num[shift + i] + (p - lead) * std::uint64_t{den[i]}) % p);
            }
        }
        num.pop_back();
    }
    return num;
}

inline bool is_irreducible(const std::vector<std::uint32_t> &f, std::uint32_t p)
{
    const std::size_t k = f.size() - 1;
    for (std::size_t d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) {
            count *= p;
        }
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> g(d + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            auto r = poly_mod(f, g, p);
            bool zero = true;
            for (auto x : r) {
                zero = zero && x == 0;
            }
            if (zero) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

/// The finite field GF(p^k) with p > 3 prime.
///
/// For k > 1 elements are residues modulo a monic irreducible polynomial of
/// degree k; by default the smallest one in base-p code order (constant term
/// least significant) is used, so the representation is reproducible.
/// Reduction is computed on the fly, no lookup tables are built.
class Field {
public:
    static constexpr unsigned max_degree = 8;

    explicit Field(std::uint32_t p, unsigned k = 1) : p_(p), k_(k)
    {
        check_params();
        if (k_ == 1) {
            modulus_ = {0, 1};
        } else {
            const std::uint64_t count = q_;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::uint32_t> f(k_ + 1);
                std::uint64_t c = code;
                for (unsigned i = 0; i < k_; ++i) {
                    f[i] = static_cast<std::uint32_t>(c % p_);
                    c /= p_;
                }
                f[k_] = 1;
                if (f[0] != 0 && detail::is_irreducible(f, p_)) {
                    modulus_ = std::move(f);
                    break;
                }
            }
        }
    }

    Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus) : p_(p), k_(k), modulus_(std::move(modulus))
    {
        check_params();
        if (k_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        if (modulus_.size() != k_ + 1 || modulus_.back() != 1) {
            throw InvalidField("modulus must be monic of degree k");
        }
        for (auto c : modulus_) {
            if (c >= p_) {
                throw InvalidField("modulus coefficient out of range");
            }
        }
        if (!detail::is_irreducible(modulus_, p_)) {
            throw InvalidField("modulus is reducible over GF(p)");
        }
    }

    /// Field of order q = p^k, q a prime power with p > 3.
    static Field of_order(std::uint64_t q)
    {
        for (std::uint64_t p = 2; p <= q; ++p) {
            if (q % p == 0) {
                unsigned k = 0;
                std::uint64_t r = q;
                while (r % p == 0) {
                    r /= p;
                    ++k;
                }
                if (r != 1) {
                    throw InvalidField("field order " + std::to_string(q) + " is not a prime power");
                }
                return Field(static_cast<std::uint32_t>(p), k);
            }
        }
        throw InvalidField("field order must be at least 2");
    }

    std::uint32_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t> &modulus() const noexcept { return modulus_; }

    static constexpr Elem zero() noexcept { return Elem{0}; }
    static constexpr Elem one() noexcept { return Elem{1}; }

    /// i-th element in the fixed enumeration order, 0 <= i < q.
    Elem element(std::uint32_t i) const noexcept { return Elem{i}; }

    /// Image of an integer in the prime subfield.
    Elem from_int(long long n) const noexcept
    {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) {
            r += p_;
        }
        return Elem{static_cast<std::uint32_t>(r)};
    }

    std::vector<std::uint32_t> coeffs(Elem a) const
    {
        std::vector<std::uint32_t> out(k_);
        std::uint32_t v = a.v;
        for (unsigned i = 0; i < k_; ++i) {
            out[i] = v % p_;
            v /= p_;
        }
        return out;
    }

    Elem from_coeffs(std::span<const std::uint32_t> c) const
    {
        if (c.size() != k_) {
            throw AmbientMismatch("coefficient vector length differs from extension degree");
        }
        std::uint32_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= p_) {
                throw InvalidField("coefficient out of range");
            }
            v = v * p_ + c[i];
        }
        return Elem{v};
    }

    Elem add(Elem a, Elem b) const noexcept
    {
        if (k_ == 1) {
            const std::uint32_t s = a.v + b.v;
            return Elem{s >= p_ ? s - p_ : s};
        }
        std::uint32_t out = 0, mul = 1, x = a.v, y = b.v;
        for (unsigned i = 0; i < k_; ++i) {
            out += ((x % p_ + y % p_) % p_) * mul;
            x /= p_;
            y /= p_;
            mul *= p_;
        }
        return Elem{out};
    }

    Elem neg(Elem a) const noexcept
    {
        if (k_ == 1) {
            return Elem{a.v == 0 ? 0 : p_ - a.v};
        }
        std::uint32_t out = 0, mul = 1, x = a.v;
        for (unsigned i = 0; i < k_; ++i) {
            const std::uint32_t c = x % p_;
            out += (c == 0 ? 0 : p_ - c) * mul;
            x /= p_;
            mul *= p_;
        }
        return Elem{out};
    }

    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const noexcept
    {
        if (k_ == 1) {
            return Elem{static_cast<std::uint32_t>((std::uint64_t{a.v} * b.v) % p_)};
        }
        std::array<std::uint64_t, 2 * max_degree> prod{};
        std::array<std::uint32_t, max_degree> ca{}, cb{};
        std::uint32_t x = a.v, y = b.v;
        for (unsigned i = 0; i < k_; ++i) {
            ca[i] = x % p_;
            cb[i] = y % p_;
            x /= p_;
            y /= p_;
        }
        for (unsigned i = 0; i < k_; ++i) {
            for (unsigned j = 0; j < k_; ++j) {
                prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
            }
        }
        for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
            const std::uint64_t lead = prod[d];
            if (lead != 0) {
                for (unsigned i = 0; i < k_; ++i) {
                    prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - lead) * modulus_[i]) % p_;
                }
                prod[d] = 0;
            }
        }
        std::uint32_t out = 0;
        for (unsigned i = k_; i-- > 0;) {
            out = out * p_ + static_cast<std::uint32_t>(prod[i]);
        }
        return Elem{out};
    }

    Elem pow(Elem a, std::uint64_t e) const noexcept
    {
        Elem result = one();
        Elem base = a;
        while (e > 0) {
            if (e & 1U) {
                result = mul(result, base);
            }
            base = mul(base, base);
            e >>= 1U;
        }
        return result;
    }

    Elem inv(Elem a) const
    {
        if (a.is_zero()) {
            throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
        }
        return pow(a, q_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_square(Elem a) const noexcept { return a.is_zero() || pow(a, (q_ - 1) / 2) == one(); }

    /// Decimal residue for prime fields; polynomial in `t` otherwise.
    std::string to_string(Elem a) const
    {
        if (k_ == 1) {
            return std::to_string(a.v);
        }
        if (a.is_zero()) {
            return "0";
        }
        const auto c = coeffs(a);
        std::ostringstream os;
        bool first = true;
        for (unsigned i = k_; i-- > 0;) {
            if (c[i] == 0) {
                continue;
            }
            if (!first) {
                os << '+';
            }
            first = false;
            if (i == 0) {
                os << c[i];
            } else {
                if (c[i] != 1) {
                    os << c[i];
                }
                os << 't';
                if (i > 1) {
                    os << '^' << i;
                }
            }
        }
        return os.str();
    }

    friend bool operator==(const Field &a, const Field &b) noexcept
    {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    void check_params()
    {
        if (!detail::is_prime(p_)) {
            throw InvalidField("characteristic " + std::to_string(p_) + " is not prime");
        }
        if (p_ <= 3) {
            throw InvalidField("characteristic must exceed 3");
        }
        if (k_ < 1 || k_ > max_degree) {
            throw InvalidField("extension degree out of range");
        }
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k_; ++i) {
            q *= p_;
        }
        if (q > (std::uint64_t{1} << 24)) {
            throw InvalidField("field too large for exhaustive tooling");
        }
        q_ = static_cast<std::uint32_t>(q);
    }

    std::uint32_t p_;
    unsigned k_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
};

/// Smallest nonzero element (in enumeration order) that is not a square.
inline Elem find_nonsquare(const Field &f)
{
    for (std::uint32_t i = 1; i < f.q(); ++i) {
        if (!f.is_square(f.element(i))) {
            return f.element(i);
        }
    }
    throw InvalidField("no non-square found"); // unreachable for odd q
}

} // namespace sl2gid

#endif
