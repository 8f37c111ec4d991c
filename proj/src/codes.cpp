#include "cdd/codes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cdd {

GeneratorMatrix::GeneratorMatrix(int rows, int cols, std::vector<uint8_t> entries, FieldPtr spec)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), spec_(std::move(spec))
{
    if (!spec_) throw ConstructionError("generator matrix requires a field");
    if (rows_ < 1 || cols_ < 1)
        throw ConstructionError("generator matrix needs K >= 1 and N >= 1, got K=" +
                                std::to_string(rows_) + " N=" + std::to_string(cols_));
    if (entries_.size() != static_cast<size_t>(rows_) * cols_)
        throw DimensionError("generator matrix: " + std::to_string(entries_.size()) +
                             " entries for a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " matrix");
    for (uint8_t v : entries_)
        if (v >= spec_->order())
            throw ConstructionError("matrix entry " + std::to_string(v) + " outside GF(2^" +
                                    std::to_string(spec_->bits()) + ")");
}

GFVector GeneratorMatrix::column(int c) const
{
    std::vector<uint8_t> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return GFVector(std::move(v), spec_);
}

GFVector GeneratorMatrix::row(int r) const
{
    std::vector<uint8_t> v(entries_.begin() + static_cast<size_t>(r) * cols_,
                           entries_.begin() + static_cast<size_t>(r + 1) * cols_);
    return GFVector(std::move(v), spec_);
}

GFVector GeneratorMatrix::encode(const GFVector& message) const
{
    if (*message.spec() != *spec_)
        throw FieldMismatchError("encode: message field does not match generator field");
    if (static_cast<int>(message.size()) != rows_)
        throw DimensionError("encode: message length " + std::to_string(message.size()) +
                             ", generator has K=" + std::to_string(rows_));
    const FieldSpec& f = *spec_;
    std::vector<uint8_t> out(cols_, 0);
    for (int r = 0; r < rows_; ++r) {
        const uint8_t a = message[r];
        if (a == 0) continue;
        for (int c = 0; c < cols_; ++c)
            out[c] = f.add(out[c], f.mul(a, at(r, c)));
    }
    return GFVector(std::move(out), spec_);
}

bool GeneratorMatrix::has_zero_column() const
{
    for (int c = 0; c < cols_; ++c) {
        bool all_zero = true;
        for (int r = 0; r < rows_ && all_zero; ++r) all_zero = (at(r, c) == 0);
        if (all_zero) return true;
    }
    return false;
}

bool GeneratorMatrix::operator==(const GeneratorMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_ &&
           *spec_ == *other.spec_;
}

std::string GeneratorMatrix::to_text() const
{
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << ' ' << spec_->bits() << ' ' << spec_->poly() << '\n';
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (c) out << ' ';
            out << static_cast<int>(at(r, c));
        }
        out << '\n';
    }
    return out.str();
}

GeneratorMatrix GeneratorMatrix::from_text(std::istream& in)
{
    int K = 0, N = 0, B = 0;
    unsigned poly = 0;
    if (!(in >> K >> N >> B >> poly))
        throw ConstructionError("generator text: bad header, expected 'K N B poly'");
    if (K < 1 || N < 1)
        throw ConstructionError("generator text: bad dimensions K=" + std::to_string(K) +
                                " N=" + std::to_string(N));
    auto spec = FieldSpec::make(B, poly);
    std::vector<uint8_t> entries(static_cast<size_t>(K) * N);
    for (size_t i = 0; i < entries.size(); ++i) {
        int v = 0;
        if (!(in >> v))
            throw ConstructionError("generator text: expected " + std::to_string(entries.size()) +
                                    " entries");
        if (v < 0 || v >= spec->order())
            throw ConstructionError("generator text: entry " + std::to_string(v) +
                                    " outside GF(2^" + std::to_string(B) + ")");
        entries[i] = static_cast<uint8_t>(v);
    }
    return GeneratorMatrix(K, N, std::move(entries), std::move(spec));
}

GeneratorMatrix GeneratorMatrix::from_text(const std::string& text)
{
    std::istringstream in(text);
    return from_text(in);
}

namespace {

long long ipow_ll(long long base, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Digits of value in base q, MSB first, fixed width.
std::vector<uint8_t> base_q_digits(long long value, int q, int width)
{
    std::vector<uint8_t> d(width);
    for (int i = width - 1; i >= 0; --i) {
        d[i] = static_cast<uint8_t>(value % q);
        value /= q;
    }
    return d;
}

} // namespace

GeneratorMatrix simplex_generator(int K, FieldPtr spec)
{
    if (K < 1) throw ConstructionError("simplex code needs K >= 1");
    const int q = spec->order();
    if (static_cast<long long>(K) * spec->bits() > 24)
        throw ConstructionError("simplex code with K*B > 24 is too large to enumerate");
    const long long total = ipow_ll(q, K);
    std::vector<std::vector<uint8_t>> cols;
    for (long long v = 1; v < total; ++v) {
        auto digits = base_q_digits(v, q, K);
        int first = 0;
        while (digits[first] == 0) ++first;
        if (digits[first] == 1) cols.push_back(std::move(digits));
    }
    const int N = static_cast<int>(cols.size()); // (q^K - 1)/(q - 1)
    std::vector<uint8_t> entries(static_cast<size_t>(K) * N);
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < K; ++r) entries[static_cast<size_t>(r) * N + c] = cols[c][r];
    return GeneratorMatrix(K, N, std::move(entries), std::move(spec));
}

GeneratorMatrix rm1_generator(int K, FieldPtr spec)
{
    if (K < 2) throw ConstructionError("first-order Reed-Muller code needs K >= 2");
    const int q = spec->order();
    if (static_cast<long long>(K - 1) * spec->bits() > 24)
        throw ConstructionError("Reed-Muller code with (K-1)*B > 24 is too large to enumerate");
    const long long N = ipow_ll(q, K - 1);
    std::vector<uint8_t> entries(static_cast<size_t>(K) * N);
    for (long long c = 0; c < N; ++c) {
        entries[static_cast<size_t>(c)] = 1; // top row all ones
        auto digits = base_q_digits(c, q, K - 1);
        for (int r = 1; r < K; ++r)
            entries[static_cast<size_t>(r) * N + c] = digits[r - 1];
    }
    return GeneratorMatrix(K, static_cast<int>(N), std::move(entries), std::move(spec));
}

GeneratorMatrix scrs_generator(int N, int K, FieldPtr spec)
{
    if (K < 1) throw ConstructionError("SCRS code needs K >= 1");
    if (N < K)
        throw ConstructionError("SCRS code needs N >= K, got N=" + std::to_string(N) +
                                " K=" + std::to_string(K));
    GeneratorMatrix simplex = simplex_generator(K, spec);
    const int n_out = simplex.cols();
    std::vector<uint8_t> entries(static_cast<size_t>(K) * N);
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < K; ++r)
            entries[static_cast<size_t>(r) * N + c] = simplex.at(r, c % n_out);
    return GeneratorMatrix(K, N, std::move(entries), std::move(spec));
}

GeneratorMatrix naive_generator(int N, int K, FieldPtr spec)
{
    if (K < 1 || N < 1) throw ConstructionError("naive rules need K >= 1 and N >= 1");
    std::vector<uint8_t> entries(static_cast<size_t>(K) * N, 0);
    for (int c = 0; c < N; ++c) entries[static_cast<size_t>(c % K) * N + c] = 1;
    return GeneratorMatrix(K, N, std::move(entries), std::move(spec));
}

Code build_code(const GeneratorMatrix& G)
{
    const int K = G.rows();
    const int B = G.spec()->bits();
    if (static_cast<long long>(K) * B > 24)
        throw ConstructionError("refusing to enumerate 2^" + std::to_string(K * B) + " codewords");
    const int q = G.spec()->order();
    const long long M = ipow_ll(q, K);
    Code code{{}, 0, G};
    code.codewords.reserve(static_cast<size_t>(M));
    for (long long m = 0; m < M; ++m)
        code.codewords.push_back(G.encode(GFVector(base_q_digits(m, q, K), G.spec())));
    code.d_min = min_distance(code);
    return code;
}

int min_distance(const Code& code)
{
    int best = code.generator.cols() + 1;
    for (size_t m = 1; m < code.codewords.size(); ++m)
        best = std::min(best, hamming_weight(code.codewords[m]));
    return code.codewords.size() > 1 ? best : 0;
}

int pairwise_min_distance(const std::vector<GFVector>& words)
{
    if (words.size() < 2) return 0;
    int best = static_cast<int>(words[0].size()) + 1;
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            best = std::min(best, hamming_distance(words[i], words[j]));
    return best;
}

namespace {

// Unsigned big integer, little-endian base 2^32. Only what the metric-ball
// comparisons need.
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(unsigned long long v)
    {
        while (v) {
            limbs_.push_back(static_cast<uint32_t>(v));
            v >>= 32;
        }
    }

    BigUint& operator+=(const BigUint& o)
    {
        limbs_.resize(std::max(limbs_.size(), o.limbs_.size()), 0);
        unsigned long long carry = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            unsigned long long s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
        return *this;
    }

    BigUint& mul_small(uint32_t m)
    {
        unsigned long long carry = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            unsigned long long s = static_cast<unsigned long long>(limbs_[i]) * m + carry;
            limbs_[i] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<uint32_t>(carry));
            carry >>= 32;
        }
        if (m == 0) limbs_.clear();
        return *this;
    }

    bool operator<=(const BigUint& o) const
    {
        size_t n = std::max(limbs_.size(), o.limbs_.size());
        for (size_t i = n; i-- > 0;) {
            uint32_t a = i < limbs_.size() ? limbs_[i] : 0;
            uint32_t b = i < o.limbs_.size() ? o.limbs_[i] : 0;
            if (a != b) return a < b;
        }
        return true;
    }

private:
    std::vector<uint32_t> limbs_;
};

// Volume of the radius-t Hamming ball in GF(q)^n.
BigUint metric_ball_volume(int n, int t, int q)
{
    BigUint vol;
    if (t < 0) return vol;
    t = std::min(t, n);
    for (int i = 0; i <= t; ++i) {
        // C(n, i) fits in 64 bits for n <= 64.
        unsigned long long binom = 1;
        for (int j = 0; j < i; ++j) binom = binom * (n - j) / (j + 1);
        BigUint term(binom);
        for (int j = 0; j < i; ++j) term.mul_small(static_cast<uint32_t>(q - 1));
        vol += term;
    }
    return vol;
}

BigUint big_pow(uint32_t base, int e)
{
    BigUint r(1);
    for (int i = 0; i < e; ++i) r.mul_small(base);
    return r;
}

} // namespace

long long griesmer_min_length(int K, int B, int d)
{
    long long sum = 0;
    for (int i = 0; i < K; ++i) {
        long long div = ipow_ll(2, i * B);
        sum += (d + div - 1) / div;
    }
    return sum;
}

int griesmer_max_dmin(int K, int B, int N)
{
    int lo = 0, hi = N; // the i = 0 term alone forces d <= N
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (griesmer_min_length(K, B, mid) <= N)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

BoundReport griesmer_report(int K, const FieldPtr& spec, int d, int N)
{
    if (d < 1) throw ConstructionError("bound report needs d >= 1");
    if (K < 1) throw ConstructionError("bound report needs K >= 1");
    if (N < 1 || N > 64)
        throw ConstructionError("bound report supports 1 <= N <= 64, got N=" + std::to_string(N));
    const int B = spec->bits();
    const int q = spec->order();

    BoundReport rep;
    rep.K = K;
    rep.B = B;
    rep.N = N;
    rep.d = d;
    rep.griesmer_min_length = griesmer_min_length(K, B, d);
    rep.griesmer_equality = (rep.griesmer_min_length == N);
    rep.max_dmin_at_length = griesmer_max_dmin(K, B, N);

    // M = q^K codewords; alphabet is q-ary, so the ball comparisons run
    // against q^N.
    BigUint qn = big_pow(static_cast<uint32_t>(q), N);
    unsigned long long M = 1;
    for (int i = 0; i < K; ++i) M *= static_cast<unsigned long long>(q);

    BigUint sp = metric_ball_volume(N, (d - 1) / 2, q);
    sp.mul_small(static_cast<uint32_t>(M));
    rep.sphere_packing_ok = sp <= qn;

    BigUint gv = metric_ball_volume(N - 1, d - 2, q);
    gv.mul_small(static_cast<uint32_t>(M));
    rep.gilbert_varshamov_exists = gv <= qn;

    long long num = static_cast<long long>(N) * ipow_ll(2, (K - 1) * B);
    long long den = (ipow_ll(q, K) - 1) / (q - 1);
    long long g = std::gcd(num, den);
    rep.dmin_upper_bound = Rational{num / g, den / g};

    if (B > 1)
        rep.notes.push_back(
            "metric-ball comparisons use the q-ary alphabet size q^N = 2^(N*B); "
            "the binary form 2^N is smaller and would reject more codes");
    return rep;
}

int scrs_dmin_formula(int N, int K, const FieldPtr& spec)
{
    const int q = spec->order();
    const long long n_out = (ipow_ll(q, K) - 1) / (q - 1);
    const long long alpha = N / n_out;
    if (K == 2) {
        const long long r = N % n_out;
        return static_cast<int>(r == 0 ? alpha * q : alpha * q + r - 1);
    }
    return static_cast<int>(alpha * ipow_ll(q, K - 1));
}

} // namespace cdd
