#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cdd/errors.hpp"

namespace cdd {

/// Arithmetic context for GF(2^B), 1 <= B <= 8.
///
/// The field is represented in polynomial basis: an element is a bitmask of
/// the coefficients of a degree < B polynomial over GF(2). Multiplication is
/// carried out through log/antilog tables built once at construction. The
/// constructor rejects any modulus that is not a primitive polynomial of
/// degree exactly B (checked by verifying that x has multiplicative order
/// 2^B - 1).
class FieldSpec {
public:
    FieldSpec(int bits, unsigned primitive_poly);

    /// Shared instance with the default primitive polynomial for this width.
    static std::shared_ptr<const FieldSpec> make(int bits);
    static std::shared_ptr<const FieldSpec> make(int bits, unsigned primitive_poly);

    /// x+1, x^2+x+1, x^3+x+1, x^4+x+1, ... up to B=8.
    static unsigned default_poly(int bits);

    int bits() const { return bits_; }
    int order() const { return 1 << bits_; }
    unsigned poly() const { return poly_; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }
    uint8_t mul(uint8_t a, uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        int e = log_[a] + log_[b];
        if (e >= order() - 1) e -= order() - 1;
        return exp_[e];
    }
    uint8_t inv(uint8_t a) const;
    /// a^e for e >= 0.
    uint8_t pow(uint8_t a, unsigned e) const;

    bool operator==(const FieldSpec& other) const {
        return bits_ == other.bits_ && poly_ == other.poly_;
    }
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

private:
    int bits_;
    unsigned poly_;
    std::vector<uint8_t> exp_; // exp_[i] = x^i, i in [0, 2^B-2]
    std::vector<int> log_;     // log_[v] = i with x^i = v, v nonzero
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Element of GF(2^B) tagged with its field.
class GFElement {
public:
    GFElement(uint8_t value, FieldPtr spec);

    uint8_t value() const { return value_; }
    const FieldPtr& spec() const { return spec_; }

    bool operator==(const GFElement& other) const {
        return value_ == other.value_ && *spec_ == *other.spec_;
    }

private:
    uint8_t value_;
    FieldPtr spec_;
};

/// Fixed-length vector over one GF(2^B).
class GFVector {
public:
    GFVector(std::vector<uint8_t> values, FieldPtr spec);
    static GFVector zeros(size_t length, FieldPtr spec);

    size_t size() const { return values_.size(); }
    uint8_t operator[](size_t i) const { return values_[i]; }
    uint8_t& operator[](size_t i) { return values_[i]; }
    const std::vector<uint8_t>& values() const { return values_; }
    const FieldPtr& spec() const { return spec_; }
    GFElement at(size_t i) const { return GFElement(values_[i], spec_); }

    bool operator==(const GFVector& other) const {
        return values_ == other.values_ && *spec_ == *other.spec_;
    }

private:
    std::vector<uint8_t> values_;
    FieldPtr spec_;
};

GFElement gf_add(const GFElement& a, const GFElement& b);
GFElement gf_mul(const GFElement& a, const GFElement& b);

/// Inner product sum_k a_k * g_k over the common field.
GFElement gf_dot(const GFVector& a, const GFVector& g);

/// Number of positions where the two vectors differ (symbol-level).
int hamming_distance(const GFVector& u, const GFVector& v);

/// Number of nonzero entries.
int hamming_weight(const GFVector& u);

GFVector operator+(const GFVector& a, const GFVector& b);

} // namespace cdd
