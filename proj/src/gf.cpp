#include "cdd/gf.hpp"

#include <array>
#include <mutex>

namespace cdd {

namespace {

// Multiply by x and reduce modulo the field polynomial.
inline unsigned mul_x(unsigned v, int bits, unsigned poly)
{
    v <<= 1;
    if (v & (1u << bits)) v ^= poly;
    return v;
}

} // namespace

FieldSpec::FieldSpec(int bits, unsigned primitive_poly) : bits_(bits), poly_(primitive_poly)
{
    if (bits < 1 || bits > 8)
        throw ConstructionError("field width must satisfy 1 <= B <= 8, got B=" + std::to_string(bits));
    if (primitive_poly < (1u << bits) || primitive_poly >= (2u << bits))
        throw ConstructionError("modulus 0x" + std::to_string(primitive_poly) +
                                " does not have degree " + std::to_string(bits));

    const int q = 1 << bits;
    exp_.assign(q - 1, 0);
    log_.assign(q, -1);

    // Walk the powers of x; x is primitive iff the first return to 1
    // happens after exactly q-1 steps.
    unsigned v = 1;
    for (int i = 0; i < q - 1; ++i) {
        exp_[i] = static_cast<uint8_t>(v);
        if (log_[v] >= 0)
            throw ConstructionError("polynomial is not primitive: x has order " + std::to_string(i));
        log_[v] = i;
        v = mul_x(v, bits, primitive_poly);
        if (v == 0)
            throw ConstructionError("polynomial is reducible (x is a zero divisor)");
    }
    if (v != 1)
        throw ConstructionError("polynomial is not primitive over GF(2)");
}

unsigned FieldSpec::default_poly(int bits)
{
    static constexpr std::array<unsigned, 9> polys = {
        0,
        0b11,        // x + 1
        0b111,       // x^2 + x + 1
        0b1011,      // x^3 + x + 1
        0b10011,     // x^4 + x + 1
        0b100101,    // x^5 + x^2 + 1
        0b1000011,   // x^6 + x + 1
        0b10001001,  // x^7 + x^3 + 1
        0b100011101, // x^8 + x^4 + x^3 + x^2 + 1
    };
    if (bits < 1 || bits > 8)
        throw ConstructionError("no default polynomial for B=" + std::to_string(bits));
    return polys[static_cast<size_t>(bits)];
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int bits)
{
    // Default-polynomial fields are shared; they are immutable and hot.
    static std::array<std::shared_ptr<const FieldSpec>, 9> cache;
    static std::mutex mtx;
    if (bits < 1 || bits > 8)
        throw ConstructionError("field width must satisfy 1 <= B <= 8, got B=" + std::to_string(bits));
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[static_cast<size_t>(bits)];
    if (!slot) slot = std::make_shared<const FieldSpec>(bits, default_poly(bits));
    return slot;
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int bits, unsigned primitive_poly)
{
    if (primitive_poly == default_poly(bits)) return make(bits);
    return std::make_shared<const FieldSpec>(bits, primitive_poly);
}

uint8_t FieldSpec::inv(uint8_t a) const
{
    if (a == 0) throw ContractError("0 has no multiplicative inverse");
    const int n = order() - 1;
    return exp_[(n - log_[a]) % n];
}

uint8_t FieldSpec::pow(uint8_t a, unsigned e) const
{
    if (a == 0) return e == 0 ? 1 : 0;
    const int n = order() - 1;
    return exp_[(static_cast<unsigned long long>(log_[a]) * e) % n];
}

GFElement::GFElement(uint8_t value, FieldPtr spec) : value_(value), spec_(std::move(spec))
{
    if (!spec_) throw ConstructionError("GFElement requires a field");
    if (value_ >= spec_->order())
        throw ConstructionError("value " + std::to_string(value_) + " outside GF(2^" +
                                std::to_string(spec_->bits()) + ")");
}

GFVector::GFVector(std::vector<uint8_t> values, FieldPtr spec)
    : values_(std::move(values)), spec_(std::move(spec))
{
    if (!spec_) throw ConstructionError("GFVector requires a field");
    for (uint8_t v : values_)
        if (v >= spec_->order())
            throw ConstructionError("vector entry " + std::to_string(v) + " outside GF(2^" +
                                    std::to_string(spec_->bits()) + ")");
}

GFVector GFVector::zeros(size_t length, FieldPtr spec)
{
    return GFVector(std::vector<uint8_t>(length, 0), std::move(spec));
}

namespace {

inline void require_same_field(const FieldSpec& a, const FieldSpec& b, const char* op)
{
    if (a != b)
        throw FieldMismatchError(std::string(op) + ": operands from GF(2^" +
                                 std::to_string(a.bits()) + ")/poly " + std::to_string(a.poly()) +
                                 " and GF(2^" + std::to_string(b.bits()) + ")/poly " +
                                 std::to_string(b.poly()));
}

} // namespace

GFElement gf_add(const GFElement& a, const GFElement& b)
{
    require_same_field(*a.spec(), *b.spec(), "gf_add");
    return GFElement(a.spec()->add(a.value(), b.value()), a.spec());
}

GFElement gf_mul(const GFElement& a, const GFElement& b)
{
    require_same_field(*a.spec(), *b.spec(), "gf_mul");
    return GFElement(a.spec()->mul(a.value(), b.value()), a.spec());
}

GFElement gf_dot(const GFVector& a, const GFVector& g)
{
    require_same_field(*a.spec(), *g.spec(), "gf_dot");
    if (a.size() != g.size())
        throw DimensionError("gf_dot: lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(g.size()));
    const FieldSpec& f = *a.spec();
    uint8_t acc = 0;
    for (size_t k = 0; k < a.size(); ++k) acc = f.add(acc, f.mul(a[k], g[k]));
    return GFElement(acc, a.spec());
}

int hamming_distance(const GFVector& u, const GFVector& v)
{
    require_same_field(*u.spec(), *v.spec(), "hamming_distance");
    if (u.size() != v.size())
        throw DimensionError("hamming_distance: lengths " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    int d = 0;
    for (size_t i = 0; i < u.size(); ++i) d += (u[i] != v[i]);
    return d;
}

int hamming_weight(const GFVector& u)
{
    int w = 0;
    for (size_t i = 0; i < u.size(); ++i) w += (u[i] != 0);
    return w;
}

GFVector operator+(const GFVector& a, const GFVector& b)
{
    require_same_field(*a.spec(), *b.spec(), "vector add");
    if (a.size() != b.size())
        throw DimensionError("vector add: lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    std::vector<uint8_t> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return GFVector(std::move(out), a.spec());
}

} // namespace cdd
